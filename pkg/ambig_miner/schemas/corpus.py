from pydantic import BaseModel, ConfigDict, Field, model_validator

from ambig_miner.models.enums import GenderEnum

# ── Target parses ─────────────────────────────────────────────────────────────


class ParsedToken(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=1)
    form: str
    upos: str
    feats: dict[str, str] = Field(default_factory=dict)
    head: int = Field(..., ge=0)
    deprel: str
    space_after: bool = True

    @model_validator(mode="after")
    def head_is_not_self(self) -> "ParsedToken":
        if self.head == self.id:
            raise ValueError(f"token {self.id} is its own head")
        return self

    @property
    def gender(self) -> GenderEnum | None:
        value = self.feats.get("Gender")
        if value == GenderEnum.MASC.value:
            return GenderEnum.MASC
        if value == GenderEnum.FEM.value:
            return GenderEnum.FEM
        return None


# ── NER sidecar ───────────────────────────────────────────────────────────────


class NerSpan(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int = Field(..., ge=0)
    end: int
    label: str

    @model_validator(mode="after")
    def non_empty_extent(self) -> "NerSpan":
        if self.end <= self.start:
            raise ValueError(f"empty NER span [{self.start}, {self.end})")
        return self

    def overlaps(self, start: int, end: int) -> bool:
        return self.start < end and start < self.end


class NerRecord(BaseModel):
    line: int = Field(..., ge=0)
    spans: list[NerSpan] = Field(default_factory=list)


# ── Segments ──────────────────────────────────────────────────────────────────


class ParallelSegment(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    src: str
    tgt: str
    tgt_parse: list[ParsedToken] | None = None
    ner_spans: list[NerSpan] | None = None

    @model_validator(mode="after")
    def ner_spans_within_src(self) -> "ParallelSegment":
        for span in self.ner_spans or []:
            if span.end > len(self.src):
                raise ValueError(
                    f"NER span [{span.start}, {span.end}) exceeds source length "
                    f"{len(self.src)} on line {self.index}"
                )
        return self
