"""
Command-line front-end.

    python -m ambig_miner preprocess --src en.txt --tgt fr.txt --tgt-lang fr
    python -m ambig_miner detect --corpus out/corpus.jsonl --ner-sidecar ner.jsonl
    python -m ambig_miner extract --corpus out/corpus.jsonl --spans out/spans.jsonl --conllu fr.conllu
    python -m ambig_miner report --labels os-fr=out/labels.jsonl
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import sentry_sdk
import structlog
from pydantic import BaseModel, ValidationError

from ambig_miner import __version__
from ambig_miner.core.config import settings
from ambig_miner.core.exceptions import ConfigError, MinerError, StageError
from ambig_miner.core.logger import setup_logging
from ambig_miner.jobs import STAGES
from ambig_miner.models.enums import (
    LanguageEnum,
    NameMethodEnum,
    PopulationEnum,
    PronounSideEnum,
    QuestionEnum,
)
from ambig_miner.schemas.config import PipelineConfig, PreprocessConfig
from ambig_miner.services.stats import render_table

logger = structlog.get_logger()

QUESTIONS = {"name": QuestionEnum.NAME, "coref": QuestionEnum.COREF}


def _named_path(value: str) -> tuple[str, Path]:
    """NAME=PATH, or a bare PATH named after its stem."""
    name, sep, path = value.partition("=")
    if not sep:
        return Path(value).stem, Path(value)
    if not name or not path:
        raise argparse.ArgumentTypeError(f"expected NAME=PATH, got {value!r}")
    return name, Path(path)


# ── Parser ────────────────────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=settings.JOBS, help="worker processes")
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    common.add_argument("--seed", type=int, default=settings.SEED)

    parser = argparse.ArgumentParser(
        prog="ambig_miner",
        description="Mine parallel corpora for person names translated into gendered forms.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", parents=[common], help="dedup and filter a bitext")
    p.add_argument("--src", type=Path)
    p.add_argument("--tgt", type=Path)
    p.add_argument("--src-lang", type=LanguageEnum, default=LanguageEnum.EN)
    p.add_argument("--tgt-lang", type=LanguageEnum)
    p.add_argument("--max-ratio", type=float, default=settings.MAX_LENGTH_RATIO)
    p.add_argument("--min-langid-tokens", type=int, default=settings.MIN_TOKENS_FOR_LANGID)
    p.add_argument("--no-langid", action="store_true")
    p.add_argument("--no-ratio", action="store_true")

    p = sub.add_parser("detect", parents=[common], help="find name spans")
    p.add_argument("--corpus", type=Path)
    p.add_argument("--ner-sidecar", type=Path)
    p.add_argument("--method", choices=["tc", "sa", "sp"], default="tc")
    p.add_argument("--literal-regex", action="store_true", help="read '-_ as a range")

    p = sub.add_parser("extract", parents=[common], help="label gendered target terms")
    p.add_argument("--corpus", type=Path)
    p.add_argument("--spans", type=Path)
    p.add_argument("--conllu", type=Path, help="target parses, one sentence per line")
    p.add_argument("--include-head", action="store_true")
    p.add_argument("--subtree", action="store_true", help="search the head's whole subtree")
    p.add_argument(
        "--pronoun-side", type=PronounSideEnum, default=PronounSideEnum.SRC
    )

    p = sub.add_parser("report", parents=[common], help="dataset percentages")
    p.add_argument("--labels", type=_named_path, action="append", default=[])
    p.add_argument("--total", type=int, action="append", default=[])
    p.add_argument("--estimate", type=_named_path, action="append", default=[])

    p = sub.add_parser("ratio", parents=[common], help="masculine:feminine term ratio per name")
    p.add_argument("--labels", type=Path)
    p.add_argument("--spans", type=Path)
    p.add_argument("--name", action="append", default=[])
    p.add_argument("--top", type=int)

    p = sub.add_parser("sample", parents=[common], help="draw an annotation sheet")
    p.add_argument("--labels", type=Path)
    p.add_argument("--corpus", type=Path)
    p.add_argument("--spans", type=Path)
    p.add_argument(
        "--population", type=PopulationEnum, default=PopulationEnum.DETECTED
    )
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--question", choices=sorted(QUESTIONS), default="name")

    p = sub.add_parser("agree", parents=[common], help="Cohen's kappa of two sheets")
    p.add_argument("--a", type=Path)
    p.add_argument("--b", type=Path)

    p = sub.add_parser("tag", parents=[common], help="prefix source lines with gender tags")
    p.add_argument("--labels", type=Path)
    p.add_argument("--src", type=Path)
    p.add_argument("--tag-none", action="store_true")
    p.add_argument("--variants", action="store_true", help="also write one line per tag")

    p = sub.add_parser("score", parents=[common], help="gendered terms left in hypotheses")
    p.add_argument("--hyp-conllu", type=Path)
    p.add_argument("--spans", type=Path)
    p.add_argument("--include-head", action="store_true")
    p.add_argument("--subtree", action="store_true")

    p = sub.add_parser("recall", parents=[common], help="name-list recall of the TC character set")
    p.add_argument("--name-list", type=Path)
    p.add_argument("--literal-regex", action="store_true")

    return parser


# ── Config ────────────────────────────────────────────────────────────────────


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    values: dict[str, Any] = {
        "seed": args.seed,
        "jobs": args.jobs,
        "out_dir": args.out,
        "shard_size": settings.SHARD_SIZE,
    }
    command = args.command

    if command == "preprocess":
        values |= {
            "src": args.src,
            "tgt": args.tgt,
            "preprocess": PreprocessConfig(
                max_length_ratio=args.max_ratio,
                expected_src_lang=args.src_lang,
                expected_tgt_lang=args.tgt_lang,
                min_tokens_for_langid=args.min_langid_tokens,
                check_ratio=not args.no_ratio,
                check_langid=not args.no_langid,
            ),
        }
    elif command == "detect":
        values |= {
            "corpus": args.corpus,
            "ner": args.ner_sidecar,
            "method": NameMethodEnum(args.method.upper()),
            "literal_regex": args.literal_regex,
        }
    elif command in ("extract", "score"):
        values |= {
            "spans": args.spans,
            "include_head": args.include_head,
            "transitive": args.subtree,
        }
        if command == "extract":
            values |= {
                "corpus": args.corpus,
                "conllu": args.conllu,
                "pronoun_side": args.pronoun_side,
            }
        else:
            values["hyp_conllu"] = args.hyp_conllu
    elif command == "report":
        values |= {
            "dataset_names": [name for name, _ in args.labels],
            "labels": [path for _, path in args.labels],
            "totals": args.total,
            "estimates": args.estimate,
        }
    elif command == "ratio":
        values |= {
            "labels": [args.labels] if args.labels else [],
            "spans": args.spans,
            "names": args.name,
            "top_k": args.top,
        }
    elif command == "sample":
        values |= {
            "labels": [args.labels] if args.labels else [],
            "corpus": args.corpus,
            "spans": args.spans,
            "population": args.population,
            "sample_size": args.n,
            "question": QUESTIONS[args.question],
        }
    elif command == "agree":
        values |= {"sheet_a": args.a, "sheet_b": args.b}
    elif command == "tag":
        values |= {
            "labels": [args.labels] if args.labels else [],
            "src": args.src,
            "tag_none": args.tag_none,
            "variants": args.variants,
        }
    elif command == "recall":
        values |= {"name_list": args.name_list, "literal_regex": args.literal_regex}

    return PipelineConfig(**values)


# ── Run ───────────────────────────────────────────────────────────────────────


def _summary(command: str, result: Any) -> str:
    if command == "report":
        return render_table(result)
    if isinstance(result, BaseModel):
        return result.model_dump_json(indent=2)
    if isinstance(result, list):
        return json.dumps([r.model_dump(mode="json") for r in result], indent=2)
    return json.dumps(result, indent=2, sort_keys=True)


def run(config: PipelineConfig, subcommand: str) -> int:
    """Run one stage; returns the process exit status."""
    log = logger.bind(stage=subcommand)
    log.info("Stage started", out_dir=str(config.out_dir), jobs=config.jobs)
    try:
        result = STAGES[subcommand](config)
    except (MinerError, OSError) as e:
        error = StageError(subcommand, e)
        with sentry_sdk.new_scope() as scope:
            scope.set_tag("stage", subcommand)
            sentry_sdk.capture_exception(e)
        log.error("Stage failed", error=error.detail)
        print(f"ambig_miner: {error.detail}", file=sys.stderr)
        return error.exit_code
    log.info("Stage finished")
    print(_summary(subcommand, result), end="" if subcommand == "report" else "\n")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    setup_logging()
    if settings.SENTRY_DSN:
        sentry_sdk.init(
            dsn=settings.SENTRY_DSN,
            environment=settings.ENV,
            release=f"ambig_miner@{__version__}",
            send_default_pii=False,
        )

    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except ValidationError as e:
        error = StageError(args.command, ConfigError(e.errors()[0]["msg"]))
        print(f"ambig_miner: {error.detail}", file=sys.stderr)
        return error.exit_code
    return run(config, args.command)
