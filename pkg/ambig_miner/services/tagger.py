import re
from itertools import zip_longest
from typing import Iterable, Iterator, Sequence

from ambig_miner.core.exceptions import AlignmentError
from ambig_miner.models.enums import GenderTagEnum
from ambig_miner.schemas.corpus import ParsedToken
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.services.gender_extract import collect_terms

VARIANT_TAGS = (GenderTagEnum.MASC, GenderTagEnum.FEM)

_TAG_PREFIX = re.compile(r"^<(?:MASC|FEM|MIXED|NONE)> ")


def gender_tag(labels: SegmentLabels) -> GenderTagEnum:
    return GenderTagEnum.from_genders(term.gender for term in labels.gendered_terms)


def tag_token(tag: GenderTagEnum) -> str:
    return f"<{tag.value}>"


def tag_line(line: str, tag: GenderTagEnum, tag_none: bool = False) -> str:
    # a line that already looks tagged gets an explicit <NONE> so strip_tags
    # removes only what was added
    if tag == GenderTagEnum.NONE and not tag_none and not _TAG_PREFIX.match(line):
        return line
    return f"{tag_token(tag)} {line}"


def strip_tags(line: str) -> str:
    return _TAG_PREFIX.sub("", line, count=1)


def emit_tagged_corpus(
    src_lines: Iterable[str],
    labels: Iterable[SegmentLabels],
    tag_none: bool = False,
) -> Iterator[str]:
    """Source lines prefixed with their segment's gender tag; labels must align."""
    for index, (line, item) in enumerate(zip_longest(src_lines, labels)):
        if line is None or item is None:
            raise AlignmentError(f"labels and source lines differ in count at line {index}")
        if item.line != index:
            raise AlignmentError(f"label for line {item.line} found at source line {index}")
        yield tag_line(line, gender_tag(item), tag_none)


def tag_variants(line: str) -> list[str]:
    """One copy per gender tag, for multi-output or user-selected inference."""
    return [tag_line(line, tag) for tag in VARIANT_TAGS]


def neutralization_score(
    hyp_parse: Sequence[ParsedToken],
    spans: Sequence[NameSpan],
    include_head: bool = False,
    transitive: bool = False,
) -> int:
    """Gendered terms attached to the named entities; 0 means neutral."""
    if not spans or not hyp_parse:
        return 0
    return len(collect_terms(hyp_parse, spans, include_head, transitive))
