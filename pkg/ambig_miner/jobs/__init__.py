from .detect import run_detect
from .extract import run_extract
from .preprocess import run_preprocess
from .recall import run_recall
from .report import run_ratio, run_report
from .sample import run_agree, run_sample
from .tag import run_score, run_tag

STAGES = {
    "preprocess": run_preprocess,
    "detect": run_detect,
    "extract": run_extract,
    "report": run_report,
    "ratio": run_ratio,
    "sample": run_sample,
    "agree": run_agree,
    "tag": run_tag,
    "score": run_score,
    "recall": run_recall,
}

__all__ = [
    "STAGES",
    "run_detect",
    "run_extract",
    "run_preprocess",
    "run_recall",
    "run_ratio",
    "run_report",
    "run_agree",
    "run_sample",
    "run_score",
    "run_tag",
]
