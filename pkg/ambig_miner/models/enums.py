import enum
from typing import Iterable


class LanguageEnum(str, enum.Enum):
    EN = "en"
    FR = "fr"
    DE = "de"
    ES = "es"
    UNKNOWN = "unknown"


class NameMethodEnum(str, enum.Enum):
    TC = "TC"
    SA = "SA"
    SP = "SP"


class GenderEnum(str, enum.Enum):
    MASC = "Masc"
    FEM = "Fem"


class TermRelationEnum(str, enum.Enum):
    DEPENDENT = "dependent-of-head"
    HEAD = "head-itself"


class GenderTagEnum(str, enum.Enum):
    MASC = "MASC"
    FEM = "FEM"
    MIXED = "MIXED"
    NONE = "NONE"

    @classmethod
    def from_genders(cls, genders: Iterable[GenderEnum]) -> "GenderTagEnum":
        seen = set(genders)
        if GenderEnum.MASC in seen and GenderEnum.FEM in seen:
            return cls.MIXED
        if GenderEnum.MASC in seen:
            return cls.MASC
        if GenderEnum.FEM in seen:
            return cls.FEM
        return cls.NONE


class QuestionEnum(str, enum.Enum):
    NAME = "is-person-name"
    COREF = "is-coreferent"


class PopulationEnum(str, enum.Enum):
    DETECTED = "detected"
    NON_DETECTED = "non-detected"
    TRG_GENDERED = "trg-gendered"
    TRG_GENDERED_NO_PRON = "trg-gendered-no-pron"
    TRG_GENDERED_WITH_PRON = "trg-gendered-with-pron"


class PronounSideEnum(str, enum.Enum):
    SRC = "src"
    TGT = "tgt"
