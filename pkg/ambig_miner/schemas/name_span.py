from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ambig_miner.models.enums import NameMethodEnum

METHOD_ORDER = (NameMethodEnum.TC, NameMethodEnum.SA, NameMethodEnum.SP)


class NameSpan(BaseModel):
    """A person-name candidate over the whitespace tokens of a source line."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    segment_index: int = Field(..., ge=0, alias="line")
    start_tok: int = Field(..., ge=0)
    end_tok: int
    surface: str = Field(..., min_length=1)
    methods: list[NameMethodEnum] = Field(
        default_factory=lambda: [NameMethodEnum.TC]
    )

    @field_validator("methods")
    @classmethod
    def canonical_order(cls, value: list[NameMethodEnum]) -> list[NameMethodEnum]:
        return [m for m in METHOD_ORDER if m in value]

    @model_validator(mode="after")
    def method_chain(self) -> "NameSpan":
        if self.end_tok <= self.start_tok:
            raise ValueError("empty token range")
        if NameMethodEnum.TC not in self.methods:
            raise ValueError("every name span carries TC")
        if NameMethodEnum.SP in self.methods and NameMethodEnum.SA not in self.methods:
            raise ValueError("SP implies SA")
        return self

    @property
    def src_token_range(self) -> tuple[int, int]:
        return self.start_tok, self.end_tok

    def has(self, method: NameMethodEnum) -> bool:
        return method in self.methods
