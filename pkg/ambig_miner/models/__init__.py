from .enums import (
    GenderEnum,
    GenderTagEnum,
    LanguageEnum,
    NameMethodEnum,
    PopulationEnum,
    PronounSideEnum,
    QuestionEnum,
    TermRelationEnum,
)

__all__ = [
    "LanguageEnum",
    "NameMethodEnum",
    "GenderEnum",
    "TermRelationEnum",
    "GenderTagEnum",
    "QuestionEnum",
    "PopulationEnum",
    "PronounSideEnum",
]
