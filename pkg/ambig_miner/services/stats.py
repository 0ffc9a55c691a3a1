from collections import Counter
from typing import Iterable, Mapping, Sequence

import structlog

from ambig_miner.core.exceptions import ReportError
from ambig_miner.models.enums import GenderEnum, GenderTagEnum
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.schemas.report import DatasetReport, NameGenderRatio, ReportCounts
from ambig_miner.services.corpus import group_by_line

logger = structlog.get_logger()


class ReportCounter:
    """Counter bag over SegmentLabels; merging is associative and commutative."""

    def __init__(self, counts: ReportCounts | None = None):
        self.counts = counts or ReportCounts()

    # ── Accumulation ──────────────────────────────────────────────────────────

    def add(self, labels: SegmentLabels) -> None:
        c = self.counts
        c.labelled_lines += 1
        c.tc += labels.has_tc
        c.sa += labels.has_sa
        c.sp += labels.has_sp
        c.pronoun += labels.has_binary_pronoun
        c.name_and_pronoun += labels.has_tc and labels.has_binary_pronoun
        c.lines_without_parse += not labels.has_parse
        c.comma_flanked_lines += labels.comma_flanked
        if labels.trg_gendered:
            c.trg_gendered_tc += 1
            c.trg_gendered_sa += labels.has_sa
            c.trg_gendered_sp += labels.has_sp
            if labels.has_binary_pronoun:
                c.trg_gendered_with_pron += 1
            else:
                c.trg_gendered_no_pron += 1
        c.tagged_masc += labels.tag == GenderTagEnum.MASC
        c.tagged_fem += labels.tag == GenderTagEnum.FEM
        c.tagged_mixed += labels.tag == GenderTagEnum.MIXED

    def add_all(self, labels: Iterable[SegmentLabels]) -> "ReportCounter":
        for item in labels:
            self.add(item)
        return self

    def merge(self, other: "ReportCounter") -> "ReportCounter":
        merged = {
            field: getattr(self.counts, field) + getattr(other.counts, field)
            for field in ReportCounts.model_fields
        }
        return ReportCounter(ReportCounts(**merged))

    # ── Output ────────────────────────────────────────────────────────────────

    def to_report(self, total: int) -> DatasetReport:
        if total <= 0:
            raise ReportError("total line count must be positive")
        if total < self.counts.labelled_lines:
            raise ReportError(
                f"total {total} is smaller than the {self.counts.labelled_lines} "
                "labelled lines"
            )
        return DatasetReport(total_lines=total, counts=self.counts.model_copy())


def build_report(labels: Sequence[SegmentLabels], total: int) -> DatasetReport:
    return ReportCounter().add_all(labels).to_report(total)


# ── Text rendering ────────────────────────────────────────────────────────────

TABLE_COLUMNS: tuple[tuple[str, str], ...] = (
    ("%TC", "pct_tc"),
    ("%SA", "pct_sa"),
    ("%SP", "pct_sp"),
    ("%P", "pct_pronoun"),
    ("%N∩P", "pct_name_and_pronoun"),
    ("%TrgG", "pct_trg_gendered_tc"),
    ("%TrgG-P", "pct_trg_gendered_no_pron"),
    ("%TrgG+P", "pct_trg_gendered_with_pron"),
)


def render_table(reports: Mapping[str, DatasetReport]) -> str:
    """Fixed-width table, one row per dataset, percentages to one decimal."""
    estimate_keys = sorted({key for r in reports.values() for key in r.estimates})
    name_width = max([len("Dataset"), *(len(name) for name in reports)])
    header = (
        f"{'Dataset':<{name_width}}  {'Lines(M)':>9}"
        + "".join(f"  {label:>8}" for label, _ in TABLE_COLUMNS)
        + "".join(f"  {key:>6}" for key in estimate_keys)
        + f"  {'NoParse':>8}"
    )
    rows = [header, "-" * len(header)]
    for name, report in reports.items():
        row = f"{name:<{name_width}}  {report.total_lines / 1e6:>9.2f}"
        row += "".join(f"  {getattr(report, attr):>8.1f}" for _, attr in TABLE_COLUMNS)
        row += "".join(
            f"  {report.estimates[key]:>6.2f}" if key in report.estimates else f"  {'-':>6}"
            for key in estimate_keys
        )
        row += f"  {report.lines_without_parse:>8d}"
        rows.append(row)
    return "\n".join(rows) + "\n"


# ── Name / gender co-occurrence ───────────────────────────────────────────────


def _gender_counts(labels: SegmentLabels) -> Counter[GenderEnum]:
    return Counter(term.gender for term in labels.gendered_terms)


def name_gender_ratio(
    labels: Iterable[SegmentLabels],
    spans: Iterable[NameSpan],
    name: str,
) -> NameGenderRatio:
    """Labels and spans are both streamed and must ascend by line."""
    if not name:
        raise ReportError("name must be non-empty")
    ratio = NameGenderRatio(name=name)
    for item, own in group_by_line(((labelled.line, labelled) for labelled in labels), spans):
        if not any(span.surface == name for span in own):
            continue
        genders = _gender_counts(item)
        ratio.masc_count += genders[GenderEnum.MASC]
        ratio.fem_count += genders[GenderEnum.FEM]
        ratio.segments += 1
    return ratio


def name_gender_table(
    labels: Iterable[SegmentLabels],
    spans: Iterable[NameSpan],
    top_k: int,
    min_count: int = 1,
) -> list[NameGenderRatio]:
    """Ratios for the `top_k` names with the most gendered terms."""
    ratios: dict[str, NameGenderRatio] = {}
    for item, own in group_by_line(((labelled.line, labelled) for labelled in labels), spans):
        genders = _gender_counts(item)
        for name in sorted({span.surface for span in own}):
            ratio = ratios.setdefault(name, NameGenderRatio(name=name))
            ratio.masc_count += genders[GenderEnum.MASC]
            ratio.fem_count += genders[GenderEnum.FEM]
            ratio.segments += 1

    ranked = sorted(
        (r for r in ratios.values() if r.masc_count + r.fem_count >= min_count),
        key=lambda r: (-(r.masc_count + r.fem_count), r.name),
    )
    return ranked[:top_k]
