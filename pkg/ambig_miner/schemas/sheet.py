from pydantic import BaseModel, Field, model_validator

from ambig_miner.models.enums import PopulationEnum, QuestionEnum


class SheetItem(BaseModel):
    idx: int = Field(..., ge=0)
    src: str = ""
    tgt: str = ""
    surface: str = ""
    mark: bool | None = None


class AnnotationSheet(BaseModel):
    sample_id: str
    seed: int
    question: QuestionEnum
    population: PopulationEnum
    items: list[SheetItem] = Field(default_factory=list)

    @model_validator(mode="after")
    def drawn_without_replacement(self) -> "AnnotationSheet":
        indices = [item.idx for item in self.items]
        if len(indices) != len(set(indices)):
            raise ValueError("sheet items must be distinct segments")
        return self

    @property
    def marks(self) -> list[bool | None]:
        return [item.mark for item in self.items]

    @property
    def is_complete(self) -> bool:
        return all(mark is not None for mark in self.marks)


class AgreementStats(BaseModel):
    p_o: float = Field(..., ge=0.0, le=1.0)
    p_e: float = Field(..., ge=0.0, le=1.0)
    kappa: float
    n: int = Field(..., gt=0)
