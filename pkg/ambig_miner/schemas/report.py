from pydantic import BaseModel, Field, computed_field

# ── Counter bag ───────────────────────────────────────────────────────────────


class ReportCounts(BaseModel):
    labelled_lines: int = Field(0, ge=0)
    tc: int = Field(0, ge=0)
    sa: int = Field(0, ge=0)
    sp: int = Field(0, ge=0)
    pronoun: int = Field(0, ge=0)
    name_and_pronoun: int = Field(0, ge=0)
    trg_gendered_tc: int = Field(0, ge=0)
    trg_gendered_sa: int = Field(0, ge=0)
    trg_gendered_sp: int = Field(0, ge=0)
    trg_gendered_no_pron: int = Field(0, ge=0)
    trg_gendered_with_pron: int = Field(0, ge=0)
    tagged_masc: int = Field(0, ge=0)
    tagged_fem: int = Field(0, ge=0)
    tagged_mixed: int = Field(0, ge=0)
    lines_without_parse: int = Field(0, ge=0)
    comma_flanked_lines: int = Field(0, ge=0)


# ── Reports ───────────────────────────────────────────────────────────────────


def _pct(count: int, total: int) -> float:
    return 100.0 * count / total


class DatasetReport(BaseModel):
    total_lines: int = Field(..., gt=0)
    counts: ReportCounts
    # precision / false-negative estimates keyed like "P" or "FN"
    estimates: dict[str, float] = Field(default_factory=dict)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_tc(self) -> float:
        return _pct(self.counts.tc, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_sa(self) -> float:
        return _pct(self.counts.sa, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_sp(self) -> float:
        return _pct(self.counts.sp, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_pronoun(self) -> float:
        return _pct(self.counts.pronoun, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_name_and_pronoun(self) -> float:
        return _pct(self.counts.name_and_pronoun, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_trg_gendered_tc(self) -> float:
        return _pct(self.counts.trg_gendered_tc, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_trg_gendered_no_pron(self) -> float:
        return _pct(self.counts.trg_gendered_no_pron, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def pct_trg_gendered_with_pron(self) -> float:
        return _pct(self.counts.trg_gendered_with_pron, self.total_lines)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def lines_without_parse(self) -> int:
        return self.counts.lines_without_parse


class NameGenderRatio(BaseModel):
    name: str = Field(..., min_length=1)
    masc_count: int = Field(0, ge=0)
    fem_count: int = Field(0, ge=0)
    segments: int = Field(0, ge=0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def ratio(self) -> float | None:
        if self.fem_count == 0:
            return None
        return self.masc_count / self.fem_count


class SegmentScore(BaseModel):
    """Gendered terms left on the named entities of one hypothesis sentence."""

    line: int = Field(..., ge=0)
    score: int = Field(..., ge=0)
    names: int = Field(0, ge=0)
