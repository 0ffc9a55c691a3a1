from pydantic import BaseModel, ConfigDict, Field, model_validator

from ambig_miner.models.enums import GenderEnum, GenderTagEnum, TermRelationEnum


class GenderedTerm(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    token_id: int = Field(..., ge=1, alias="id")
    form: str
    gender: GenderEnum
    relation: TermRelationEnum = Field(TermRelationEnum.DEPENDENT, alias="rel")


class SegmentLabels(BaseModel):
    """Per-line classification, one JSONL record per retained segment."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    line: int = Field(..., ge=0)
    has_tc: bool = Field(False, alias="tc")
    has_sa: bool = Field(False, alias="sa")
    has_sp: bool = Field(False, alias="sp")
    has_binary_pronoun: bool = Field(False, alias="pron")
    trg_gendered: bool = False
    gendered_terms: list[GenderedTerm] = Field(default_factory=list, alias="terms")
    tag: GenderTagEnum = GenderTagEnum.NONE
    has_parse: bool = Field(True, alias="parsed")
    comma_flanked: bool = False

    @model_validator(mode="after")
    def consistent_flags(self) -> "SegmentLabels":
        if self.trg_gendered != bool(self.gendered_terms):
            raise ValueError("trg_gendered must equal 'gendered terms present'")
        if self.has_sp and not self.has_sa:
            raise ValueError("SP implies SA")
        if self.has_sa and not self.has_tc:
            raise ValueError("SA implies TC")
        return self
