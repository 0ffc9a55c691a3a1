from pathlib import Path
from typing import Iterable, Sequence

import pytest
import structlog

from ambig_miner.models.enums import NameMethodEnum
from ambig_miner.schemas.corpus import NerSpan, ParallelSegment, ParsedToken
from ambig_miner.schemas.name_span import NameSpan

FIXTURES = Path(__file__).resolve().parent / "fixtures"
MINI = FIXTURES / "mini"


# ── Logging ───────────────────────────────────────────────────────────────────


@pytest.fixture(autouse=True)
def quiet_logging():
    """Drop log events below WARNING so test output stays readable."""
    structlog.configure(wrapper_class=structlog.make_filtering_bound_logger(30))
    yield
    structlog.reset_defaults()


# ── Builders ──────────────────────────────────────────────────────────────────


def make_token(
    id: int,
    form: str,
    head: int,
    deprel: str = "dep",
    gender: str | None = None,
    upos: str = "X",
    space_after: bool = True,
) -> ParsedToken:
    return ParsedToken(
        id=id,
        form=form,
        upos=upos,
        feats={"Gender": gender} if gender else {},
        head=head,
        deprel=deprel,
        space_after=space_after,
    )


def make_segment(
    src: str,
    tgt: str,
    index: int = 0,
    parse: Sequence[ParsedToken] | None = None,
    ner: Iterable[tuple[int, int, str]] | None = None,
) -> ParallelSegment:
    return ParallelSegment(
        index=index,
        src=src,
        tgt=tgt,
        tgt_parse=list(parse) if parse is not None else None,
        ner_spans=[NerSpan(start=s, end=e, label=label) for s, e, label in ner]
        if ner is not None
        else None,
    )


def make_span(
    start: int,
    end: int,
    surface: str,
    line: int = 0,
    methods: Sequence[NameMethodEnum] = (NameMethodEnum.TC,),
) -> NameSpan:
    return NameSpan(
        segment_index=line,
        start_tok=start,
        end_tok=end,
        surface=surface,
        methods=list(methods),
    )


def copula_parse(name: str, det: str, adj: str, noun: str, gender: str) -> list[ParsedToken]:
    """`<name> ist <det> <adj> <noun> .` with the noun as root."""
    return [
        make_token(1, name, 5, "nsubj", upos="PROPN"),
        make_token(2, "ist", 5, "cop", upos="AUX"),
        make_token(3, det, 5, "det", gender, upos="DET"),
        make_token(4, adj, 5, "amod", gender, upos="ADJ"),
        make_token(5, noun, 0, "root", gender, upos="NOUN"),
        make_token(6, ".", 5, "punct", upos="PUNCT"),
    ]


def write_lines(path: Path, lines: Iterable[str]) -> Path:
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return path


# ── Mini corpus ───────────────────────────────────────────────────────────────


@pytest.fixture()
def mini() -> Path:
    return MINI
