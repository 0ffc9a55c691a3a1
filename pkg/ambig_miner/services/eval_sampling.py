"""
Annotation samples and agreement statistics.

Samples are drawn with SplitMix64 so a (population, n, seed) triple gives the
same sheet on every platform and in any reimplementation.
"""

import csv
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import structlog
from sklearn.metrics import cohen_kappa_score

from ambig_miner.core.exceptions import EvaluationError
from ambig_miner.models.enums import PopulationEnum, QuestionEnum
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.sheet import AgreementStats, AnnotationSheet, SheetItem

logger = structlog.get_logger()

SHEET_COLUMNS = ("idx", "src", "tgt", "surface", "mark")

TRUE_MARKS = frozenset({"1", "y", "yes", "true", "t"})
FALSE_MARKS = frozenset({"0", "n", "no", "false", "f"})

_MASK64 = (1 << 64) - 1


# ── Generator ─────────────────────────────────────────────────────────────────


class SplitMix64:
    """Steele, Lea & Flood's SplitMix64: 64-bit state, golden-gamma increment."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection, no modulo bias."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound


# ── Populations ───────────────────────────────────────────────────────────────


def in_population(labels: SegmentLabels, kind: PopulationEnum) -> bool:
    if kind == PopulationEnum.DETECTED:
        return labels.has_tc
    if kind == PopulationEnum.NON_DETECTED:
        return not labels.has_tc
    if kind == PopulationEnum.TRG_GENDERED:
        return labels.trg_gendered
    if kind == PopulationEnum.TRG_GENDERED_NO_PRON:
        return labels.trg_gendered and not labels.has_binary_pronoun
    return labels.trg_gendered and labels.has_binary_pronoun


def population_indices(labels: Iterable[SegmentLabels], kind: PopulationEnum) -> list[int]:
    return [item.line for item in labels if in_population(item, kind)]


# ── Sampling ──────────────────────────────────────────────────────────────────


def draw(population: Sequence[int], n: int, seed: int) -> list[int]:
    """Partial Fisher-Yates: the first n slots of a seeded shuffle."""
    if n > len(population):
        raise EvaluationError(f"cannot draw {n} items from a population of {len(population)}")
    if n < 0:
        raise EvaluationError("sample size must be non-negative")
    items = list(population)
    rng = SplitMix64(seed)
    for i in range(n):
        j = i + rng.below(len(items) - i)
        items[i], items[j] = items[j], items[i]
    return items[:n]


def sample(
    population: Sequence[int],
    n: int,
    seed: int,
    question: QuestionEnum = QuestionEnum.NAME,
    population_kind: PopulationEnum = PopulationEnum.DETECTED,
    items_by_index: Mapping[int, SheetItem] | None = None,
) -> AnnotationSheet:
    drawn = draw(population, n, seed)
    lookup = items_by_index or {}
    items = [lookup.get(idx, SheetItem(idx=idx)) for idx in drawn]
    sheet = AnnotationSheet(
        sample_id=f"{population_kind.value}-{question.value}-n{n}-s{seed}",
        seed=seed,
        question=question,
        population=population_kind,
        items=items,
    )
    logger.info(
        "Drew annotation sample",
        sample_id=sheet.sample_id,
        population_size=len(population),
        n=n,
    )
    return sheet


# ── Metrics ───────────────────────────────────────────────────────────────────


def estimate_rate(sheet: AnnotationSheet) -> float:
    """Fraction marked true: precision on detected samples, FN rate otherwise."""
    if not sheet.items:
        raise EvaluationError(f"sheet {sheet.sample_id} has no items")
    if not sheet.is_complete:
        unmarked = [item.idx for item in sheet.items if item.mark is None]
        raise EvaluationError(
            f"sheet {sheet.sample_id} has {len(unmarked)} unmarked items "
            f"(first idx {unmarked[0]})"
        )
    return sum(1 for mark in sheet.marks if mark) / len(sheet.items)


def cohens_kappa(marks_a: Sequence[bool], marks_b: Sequence[bool]) -> AgreementStats:
    if len(marks_a) != len(marks_b):
        raise EvaluationError(
            f"annotations differ in length: {len(marks_a)} vs {len(marks_b)}"
        )
    n = len(marks_a)
    if n == 0:
        raise EvaluationError("no annotations to compare")
    p_o = sum(1 for a, b in zip(marks_a, marks_b) if a == b) / n
    pa = sum(1 for a in marks_a if a) / n
    pb = sum(1 for b in marks_b if b) / n
    p_e = pa * pb + (1 - pa) * (1 - pb)
    if p_e == 1.0:
        raise EvaluationError("kappa undefined: both annotators gave one constant mark")
    kappa = float(cohen_kappa_score(list(marks_a), list(marks_b)))
    return AgreementStats(p_o=p_o, p_e=p_e, kappa=kappa, n=n)


def agree(sheet_a: AnnotationSheet, sheet_b: AnnotationSheet) -> AgreementStats:
    """Kappa over two annotators' copies of the same sample, aligned by idx."""
    marks_b = {item.idx: item.mark for item in sheet_b.items}
    if set(marks_b) != {item.idx for item in sheet_a.items}:
        raise EvaluationError("sheets cover different items")
    if not (sheet_a.is_complete and sheet_b.is_complete):
        raise EvaluationError("both sheets must be fully marked")
    pairs = [(item.mark, marks_b[item.idx]) for item in sheet_a.items]
    return cohens_kappa([bool(a) for a, _ in pairs], [bool(b) for _, b in pairs])


# ── TSV sheets ────────────────────────────────────────────────────────────────


def _format_mark(mark: bool | None) -> str:
    if mark is None:
        return ""
    return "1" if mark else "0"


def _parse_mark(value: str, where: str) -> bool | None:
    value = value.strip().lower()
    if not value:
        return None
    if value in TRUE_MARKS:
        return True
    if value in FALSE_MARKS:
        return False
    raise EvaluationError(f"{where}: unreadable mark {value!r}")


def write_sheet(path: str | Path, sheet: AnnotationSheet) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(
            f"# sample_id={sheet.sample_id} seed={sheet.seed} "
            f"question={sheet.question.value} population={sheet.population.value}\n"
        )
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(SHEET_COLUMNS)
        for item in sheet.items:
            writer.writerow(
                [item.idx, item.src, item.tgt, item.surface, _format_mark(item.mark)]
            )


def read_sheet(path: str | Path) -> AnnotationSheet:
    with open(path, "r", encoding="utf-8", newline="") as f:
        first = f.readline()
        if not first.startswith("#"):
            raise EvaluationError(f"{path}: missing '# sample_id=...' header line")
        meta = dict(
            field.split("=", 1) for field in first[1:].split() if "=" in field
        )
        reader = csv.DictReader(f, delimiter="\t")
        if tuple(reader.fieldnames or ()) != SHEET_COLUMNS:
            raise EvaluationError(f"{path}: expected columns {'/'.join(SHEET_COLUMNS)}")
        try:
            items = [
                SheetItem(
                    idx=int(row["idx"]),
                    src=row["src"],
                    tgt=row["tgt"],
                    surface=row["surface"],
                    mark=_parse_mark(row["mark"] or "", f"{path}:{rowno}"),
                )
                for rowno, row in enumerate(reader, start=3)
            ]
        except (TypeError, ValueError) as e:
            raise EvaluationError(f"{path}: malformed sheet row ({e})") from e
    try:
        return AnnotationSheet(
            sample_id=meta["sample_id"],
            seed=int(meta["seed"]),
            question=QuestionEnum(meta["question"]),
            population=PopulationEnum(meta["population"]),
            items=items,
        )
    except (KeyError, ValueError) as e:
        raise EvaluationError(f"{path}: bad sheet header ({e})") from e
