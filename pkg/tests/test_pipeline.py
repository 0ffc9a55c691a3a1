"""
End-to-end runs of the command line on the bundled mini corpus.
"""

import json
import tracemalloc
from pathlib import Path
from typing import Callable

import pytest

from ambig_miner.core.config import settings
from ambig_miner.core.jsonl import write_jsonl
from ambig_miner.main import main
from ambig_miner.models.enums import GenderEnum, GenderTagEnum
from ambig_miner.schemas.corpus import ParallelSegment
from ambig_miner.schemas.labels import GenderedTerm, SegmentLabels
from tests.conftest import MINI, make_span

GOLDEN = json.loads((MINI / "golden_report.json").read_text(encoding="utf-8"))


def mine(out: Path, jobs: int = 1, method: str = "tc") -> None:
    common = ["--out", str(out), "--jobs", str(jobs)]
    assert main(
        ["preprocess", "--src", str(MINI / "src.txt"), "--tgt", str(MINI / "tgt.txt"),
         "--tgt-lang", "de", "--no-langid", *common]
    ) == 0
    assert main(
        ["detect", "--corpus", str(out / "corpus.jsonl"),
         "--ner-sidecar", str(MINI / "ner.jsonl"), "--method", method, *common]
    ) == 0
    assert main(
        ["extract", "--corpus", str(out / "corpus.jsonl"), "--spans", str(out / "spans.jsonl"),
         "--conllu", str(MINI / "tgt.conllu"), *common]
    ) == 0
    assert main(["report", "--labels", f"mini={out / 'labels.jsonl'}", *common]) == 0


def snapshot(out: Path) -> dict[str, bytes]:
    return {p.name: p.read_bytes() for p in sorted(out.iterdir()) if p.is_file()}


# ── Golden run ────────────────────────────────────────────────────────────────


def test_mini_corpus_matches_golden_report(tmp_path: Path):
    mine(tmp_path)

    report = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))

    assert report == GOLDEN
    assert "mini" in (tmp_path / "report.txt").read_text(encoding="utf-8")


def test_every_stage_writes_a_manifest(tmp_path: Path):
    mine(tmp_path)

    manifest = json.loads((tmp_path / "detect.manifest.json").read_text(encoding="utf-8"))

    assert {p.name for p in tmp_path.glob("*.manifest.json")} == {
        "preprocess.manifest.json",
        "detect.manifest.json",
        "extract.manifest.json",
        "report.manifest.json",
    }
    assert manifest["stage"] == "detect"
    assert manifest["seed"] == settings.SEED
    assert [Path(d["path"]).name for d in manifest["inputs"]] == ["corpus.jsonl", "ner.jsonl"]
    assert "jobs" not in manifest["config"]


def test_repeated_run_is_byte_identical(tmp_path: Path):
    mine(tmp_path)
    first = snapshot(tmp_path)

    mine(tmp_path)

    assert snapshot(tmp_path) == first


def test_job_count_does_not_change_output(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setattr(settings, "SHARD_SIZE", 3)
    monkeypatch.setattr(settings, "PROGRESS", False)
    mine(tmp_path, jobs=1)
    sequential = snapshot(tmp_path)

    mine(tmp_path, jobs=8)

    assert snapshot(tmp_path) == sequential


def test_detect_method_keeps_every_title_copy_span(tmp_path: Path):
    mine(tmp_path / "tc")
    mine(tmp_path / "sa", method="sa")

    report = json.loads((tmp_path / "sa" / "report.json").read_text(encoding="utf-8"))
    manifest = json.loads((tmp_path / "sa" / "detect.manifest.json").read_text(encoding="utf-8"))

    assert (tmp_path / "sa" / "spans.jsonl").read_bytes() == (tmp_path / "tc" / "spans.jsonl").read_bytes()
    assert report == GOLDEN
    assert report["mini"]["pct_tc"] > report["mini"]["pct_sa"]
    assert manifest["stats"]["selected"] == manifest["stats"]["spans_sa"]


# ── Downstream stages ─────────────────────────────────────────────────────────


def test_ratio_for_john(tmp_path: Path):
    mine(tmp_path)

    assert main(
        ["ratio", "--labels", str(tmp_path / "labels.jsonl"), "--spans", str(tmp_path / "spans.jsonl"),
         "--name", "John", "--out", str(tmp_path)]
    ) == 0

    [john] = json.loads((tmp_path / "ratio.json").read_text(encoding="utf-8"))["ratios"]
    assert (john["masc_count"], john["fem_count"], john["ratio"], john["segments"]) == (4, 1, 4.0, 3)


def test_sample_then_agree(tmp_path: Path):
    mine(tmp_path)
    args = ["sample", "--labels", str(tmp_path / "labels.jsonl"), "--corpus", str(tmp_path / "corpus.jsonl"),
            "--spans", str(tmp_path / "spans.jsonl"), "--n", "5", "--seed", "7", "--out", str(tmp_path)]
    assert main(args) == 0

    sheet = tmp_path / "detected-is-person-name-n5-s7.tsv"
    header, columns, *rows = sheet.read_text(encoding="utf-8").splitlines()
    assert columns == "idx\tsrc\ttgt\tsurface\tmark"
    assert len(rows) == 5

    first = sheet.read_bytes()
    assert main(args) == 0
    assert sheet.read_bytes() == first

    marked = [row + ("1" if i % 2 else "0") for i, row in enumerate(rows)]
    for name in ("a.tsv", "b.tsv"):
        (tmp_path / name).write_text("\n".join([header, columns, *marked]) + "\n", encoding="utf-8")
    assert main(["agree", "--a", str(tmp_path / "a.tsv"), "--b", str(tmp_path / "b.tsv"),
                 "--out", str(tmp_path)]) == 0

    agreement = json.loads((tmp_path / "agreement.json").read_text(encoding="utf-8"))
    assert agreement["kappa"] == pytest.approx(1.0)
    assert agreement["rate_a"] == pytest.approx(0.4)


def test_tag_and_score(tmp_path: Path):
    mine(tmp_path)

    assert main(["tag", "--labels", str(tmp_path / "labels.jsonl"), "--src", str(tmp_path / "src.txt"),
                 "--out", str(tmp_path)]) == 0
    assert main(["score", "--hyp-conllu", str(MINI / "tgt.conllu"), "--spans", str(tmp_path / "spans.jsonl"),
                 "--out", str(tmp_path)]) == 0

    tagged = (tmp_path / "src.tagged").read_text(encoding="utf-8").splitlines()
    assert tagged[0] == "<FEM> Anna is a good engineer."
    assert tagged[6] == "<MASC> John is a good teacher."
    assert tagged[43] == "<MIXED> John gives the teacher the ball."
    assert tagged[11] == "Julia is here."

    scores = [json.loads(line) for line in (tmp_path / "scores.jsonl").read_text(encoding="utf-8").splitlines()]
    assert len(scores) == 50
    assert scores[0] == {"line": 0, "score": 2, "names": 1}
    assert scores[11]["score"] == 0


def test_recall_of_bundled_names(tmp_path: Path):
    assert main(["recall", "--out", str(tmp_path)]) == 0

    result = json.loads((tmp_path / "recall.json").read_text(encoding="utf-8"))
    assert result["recall"] == 1.0
    assert result["policy"] == "default"


# ── Errors ────────────────────────────────────────────────────────────────────


def test_sp_without_sidecar_is_a_config_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    code = main(["detect", "--corpus", str(MINI / "missing.jsonl"), "--method", "sp", "--out", str(tmp_path)])

    assert code == 2
    assert "detect: detect --method sp requires --ner-sidecar" in capsys.readouterr().err
    assert not (tmp_path / "spans.jsonl").exists()


def test_missing_input_names_the_stage(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    code = main(["extract", "--corpus", str(tmp_path / "nope.jsonl"), "--spans", str(tmp_path / "nope"),
                 "--out", str(tmp_path)])

    assert code == 1
    err = capsys.readouterr().err
    assert any(line.startswith("ambig_miner: extract: ") for line in err.splitlines())


def test_report_requires_labels(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    assert main(["report", "--out", str(tmp_path)]) == 2
    assert "report requires --labels" in capsys.readouterr().err


# ── Memory ────────────────────────────────────────────────────────────────────

NAMES = ["Anna", "John", "Maria"]


def write_synthetic(root: Path, lines: int) -> Path:
    root.mkdir()
    write_jsonl(
        root / "corpus.jsonl",
        (
            ParallelSegment(index=i, src=f"{name} met Tom today.", tgt=f"{name} traf heute Tom .")
            for i, name in ((i, NAMES[i % 3]) for i in range(lines))
        ),
    )
    write_jsonl(
        root / "labels.jsonl",
        (
            SegmentLabels(
                line=i,
                has_tc=True,
                trg_gendered=True,
                gendered_terms=[GenderedTerm(token_id=3, form="eine", gender=GenderEnum.FEM)],
                tag=GenderTagEnum.FEM,
            )
            for i in range(lines)
        ),
    )
    write_jsonl(root / "spans.jsonl", (make_span(0, 1, NAMES[i % 3], line=i) for i in range(lines)))
    return root


def peak_memory(run: Callable[[], int]) -> int:
    tracemalloc.start()
    try:
        assert run() == 0
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


@pytest.mark.parametrize("stage", ["detect", "ratio"])
def test_peak_memory_does_not_grow_with_the_corpus(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, stage: str
):
    monkeypatch.setattr(settings, "SHARD_SIZE", 500)
    monkeypatch.setattr(settings, "PROGRESS", False)

    def run(root: Path) -> Callable[[], int]:
        if stage == "detect":
            args = ["detect", "--corpus", str(root / "corpus.jsonl")]
        else:
            args = ["ratio", "--labels", str(root / "labels.jsonl"), "--spans", str(root / "spans.jsonl"),
                    "--name", "John", "--top", "3"]
        return lambda: main([*args, "--out", str(root / "out")])

    small = write_synthetic(tmp_path / "small", 5_000)
    large = write_synthetic(tmp_path / "large", 25_000)

    peak_small = peak_memory(run(small))
    peak_large = peak_memory(run(large))

    assert peak_large - peak_small < 256 * 1024
