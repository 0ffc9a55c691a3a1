from .config import (
    STAGE_REQUIREMENTS,
    ArtifactDigest,
    Manifest,
    PipelineConfig,
    PreprocessConfig,
)
from .corpus import NerRecord, NerSpan, ParallelSegment, ParsedToken
from .labels import GenderedTerm, SegmentLabels
from .name_span import METHOD_ORDER, NameSpan
from .pronoun import BinaryPronoun, PronounHit
from .report import DatasetReport, NameGenderRatio, ReportCounts, SegmentScore
from .sheet import AgreementStats, AnnotationSheet, SheetItem

__all__ = [
    "STAGE_REQUIREMENTS",
    "ArtifactDigest",
    "Manifest",
    "PipelineConfig",
    "PreprocessConfig",
    "NerRecord",
    "NerSpan",
    "ParallelSegment",
    "ParsedToken",
    "GenderedTerm",
    "SegmentLabels",
    "METHOD_ORDER",
    "NameSpan",
    "BinaryPronoun",
    "PronounHit",
    "DatasetReport",
    "NameGenderRatio",
    "SegmentScore",
    "ReportCounts",
    "AgreementStats",
    "AnnotationSheet",
    "SheetItem",
]
