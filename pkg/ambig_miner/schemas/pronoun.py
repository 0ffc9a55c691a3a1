from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

BinaryPronoun = Literal["she", "her", "hers", "herself", "he", "him", "his", "himself"]


class PronounHit(BaseModel):
    model_config = ConfigDict(frozen=True)

    pronoun: BinaryPronoun
    token_index: int = Field(..., ge=0)
