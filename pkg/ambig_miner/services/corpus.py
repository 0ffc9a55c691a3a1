"""
Bitext, CoNLL-U and NER sidecar I/O.

Everything is aligned strictly by line index: target line i, CoNLL-U sentence i
and the NER record with "line": i all describe ParallelSegment i.
"""

from itertools import zip_longest
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TypeVar

import structlog
from conllu.exceptions import ParseException
from conllu.parser import DEFAULT_FIELDS, parse_line
from pydantic import ValidationError

from ambig_miner.core.exceptions import AlignmentError, CorpusFormatError
from ambig_miner.core.jsonl import iter_jsonl, write_jsonl
from ambig_miner.schemas.corpus import NerRecord, NerSpan, ParallelSegment, ParsedToken
from ambig_miner.schemas.name_span import NameSpan

logger = structlog.get_logger()

CONLLU_COLUMNS = 10

T = TypeVar("T")


# ── Bitext ────────────────────────────────────────────────────────────────────


def _decode(raw: bytes, path: str | Path, lineno: int) -> str:
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise CorpusFormatError(f"{path}:{lineno}: invalid UTF-8 ({e.reason})") from e
    if text.endswith("\n"):
        text = text[:-1]
    if text.endswith("\r"):
        text = text[:-1]
    return text


def iter_parallel_corpus(
    src_path: str | Path, tgt_path: str | Path
) -> Iterator[ParallelSegment]:
    """Pair line i of both files. The count check fires when the shorter file ends."""
    with open(src_path, "rb") as fs, open(tgt_path, "rb") as ft:
        for index, (raw_src, raw_tgt) in enumerate(zip_longest(fs, ft)):
            if raw_src is None or raw_tgt is None:
                raise CorpusFormatError(
                    f"line count mismatch: {src_path} and {tgt_path} differ "
                    f"from line {index + 1}"
                )
            yield ParallelSegment(
                index=index,
                src=_decode(raw_src, src_path, index + 1),
                tgt=_decode(raw_tgt, tgt_path, index + 1),
            )


def iter_text_lines(path: str | Path) -> Iterator[str]:
    with open(path, "rb") as f:
        for lineno, raw in enumerate(f, start=1):
            yield _decode(raw, path, lineno)


def load_parallel_corpus(
    src_path: str | Path, tgt_path: str | Path
) -> list[ParallelSegment]:
    corpus = list(iter_parallel_corpus(src_path, tgt_path))
    logger.info("Loaded parallel corpus", src=str(src_path), lines=len(corpus))
    return corpus


# ── CoNLL-U ───────────────────────────────────────────────────────────────────


def validate_tree(tokens: Sequence[ParsedToken], where: str) -> None:
    """Single root, heads within the sentence, no cycles."""
    by_id = {t.id: t for t in tokens}
    if len(by_id) != len(tokens):
        raise CorpusFormatError(f"{where}: duplicate token ids")
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise CorpusFormatError(f"{where}: expected one root, found {len(roots)}")
    for token in tokens:
        if token.head and token.head not in by_id:
            raise CorpusFormatError(
                f"{where}: token {token.id} points to missing head {token.head}"
            )
    for token in tokens:
        steps, current = 0, token
        while current.head != 0:
            current = by_id[current.head]
            steps += 1
            if steps > len(tokens):
                raise CorpusFormatError(f"{where}: cycle through token {token.id}")


def _parse_token(line: str, path: str | Path, lineno: int) -> ParsedToken | None:
    columns = line.split("\t")
    if len(columns) != CONLLU_COLUMNS:
        raise CorpusFormatError(
            f"{path}:{lineno}: expected {CONLLU_COLUMNS} columns, got {len(columns)}"
        )
    # multiword ranges (1-2) and empty nodes (1.1) carry no basic tree
    if "-" in columns[0] or "." in columns[0]:
        return None
    try:
        fields = parse_line(line, fields=DEFAULT_FIELDS)
        head = fields["head"]
        if not isinstance(head, int):
            raise CorpusFormatError(f"{path}:{lineno}: non-integer head {columns[6]!r}")
        misc = fields["misc"] or {}
        return ParsedToken(
            id=fields["id"],
            form=fields["form"],
            upos=fields["upos"] or "_",
            feats=fields["feats"] or {},
            head=head,
            deprel=fields["deprel"] or "_",
            space_after=misc.get("SpaceAfter") != "No",
        )
    except ParseException as e:
        raise CorpusFormatError(f"{path}:{lineno}: {e}") from e
    except ValidationError as e:
        raise CorpusFormatError(f"{path}:{lineno}: {e.errors()[0]['msg']}") from e


def iter_conllu(path: str | Path) -> Iterator[list[ParsedToken]]:
    """
    Stream sentences from a CoNLL-U file.

    A block holding only comment lines yields an empty sentence: the target
    line exists but was not parsed.
    """
    tokens: list[ParsedToken] = []
    in_block = False
    block_start = 0
    sentence_no = 0

    def finish() -> list[ParsedToken]:
        if tokens:
            validate_tree(tokens, f"{path}: sentence {sentence_no + 1} (line {block_start})")
        return list(tokens)

    with open(path, "r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                if in_block:
                    yield finish()
                    sentence_no += 1
                    tokens.clear()
                    in_block = False
                continue
            if not in_block:
                in_block, block_start = True, lineno
            if line.startswith("#"):
                continue
            token = _parse_token(line, path, lineno)
            if token is not None:
                tokens.append(token)
    if in_block:
        yield finish()


def parse_conllu(path: str | Path) -> list[list[ParsedToken]]:
    return list(iter_conllu(path))


def reconstruct_text(tokens: Sequence[ParsedToken]) -> str:
    parts: list[str] = []
    for token in tokens:
        parts.append(token.form)
        if token.space_after:
            parts.append(" ")
    return "".join(parts).strip()


def _with_parse(segment: ParallelSegment, parse: list[ParsedToken]) -> ParallelSegment:
    return segment.model_copy(update={"tgt_parse": parse or None})


def attach_parses(
    corpus: Sequence[ParallelSegment], parses: Sequence[list[ParsedToken]]
) -> list[ParallelSegment]:
    if len(corpus) != len(parses):
        raise AlignmentError(
            f"{len(corpus)} segments but {len(parses)} parsed sentences"
        )
    return [_with_parse(seg, parse) for seg, parse in zip(corpus, parses)]


def attach_parses_stream(
    segments: Iterable[ParallelSegment], parses: Iterable[list[ParsedToken]]
) -> Iterator[ParallelSegment]:
    for seg, parse in zip_longest(segments, parses):
        if seg is None or parse is None:
            raise AlignmentError("segment and parsed sentence counts differ")
        yield _with_parse(seg, parse)


# ── NER sidecar ───────────────────────────────────────────────────────────────


def load_ner_sidecar(path: str | Path, n_lines: int) -> list[list[NerSpan]]:
    """Read NER records in any order; lines without a record get no spans."""
    spans: list[list[NerSpan] | None] = [None] * n_lines
    for record in iter_jsonl(path, NerRecord):
        if record.line >= n_lines:
            raise CorpusFormatError(
                f"{path}: record for line {record.line} beyond corpus of {n_lines}"
            )
        if spans[record.line] is not None:
            raise CorpusFormatError(f"{path}: duplicate record for line {record.line}")
        spans[record.line] = record.spans
    return [s or [] for s in spans]


def iter_ner_sidecar(path: str | Path) -> Iterator[NerRecord]:
    """Records in strictly ascending line order (required for streaming)."""
    last = -1
    for record in iter_jsonl(path, NerRecord):
        if record.line <= last:
            raise CorpusFormatError(
                f"{path}: line {record.line} out of order (after {last}); "
                "sort the sidecar by line"
            )
        last = record.line
        yield record


def _with_ner(segment: ParallelSegment, spans: list[NerSpan]) -> ParallelSegment:
    try:
        return ParallelSegment(
            index=segment.index,
            src=segment.src,
            tgt=segment.tgt,
            tgt_parse=segment.tgt_parse,
            ner_spans=spans,
        )
    except ValidationError as e:
        raise CorpusFormatError(e.errors()[0]["msg"]) from e


def attach_ner(
    corpus: Sequence[ParallelSegment], ner: Sequence[list[NerSpan]]
) -> list[ParallelSegment]:
    if len(corpus) != len(ner):
        raise AlignmentError(f"{len(corpus)} segments but {len(ner)} NER span lists")
    return [_with_ner(seg, spans) for seg, spans in zip(corpus, ner)]


def attach_ner_stream(
    segments: Iterable[ParallelSegment], records: Iterable[NerRecord]
) -> Iterator[ParallelSegment]:
    pending = iter(records)
    record = next(pending, None)
    for seg in segments:
        if record is not None and record.line == seg.index:
            yield _with_ner(seg, record.spans)
            record = next(pending, None)
        else:
            yield _with_ner(seg, [])
    if record is not None:
        raise AlignmentError(f"NER record for line {record.line} has no segment")


# ── Interchange corpus ────────────────────────────────────────────────────────


def write_corpus_jsonl(path: str | Path, corpus: Iterable[ParallelSegment]) -> int:
    return write_jsonl(path, corpus)


def read_corpus_jsonl(path: str | Path) -> Iterator[ParallelSegment]:
    yield from iter_jsonl(path, ParallelSegment)


# ── Spans by line ─────────────────────────────────────────────────────────────


def group_by_line(
    items: Iterable[tuple[int, T]], spans: Iterable[NameSpan]
) -> Iterator[tuple[T, list[NameSpan]]]:
    """Pair each (line, item) with that line's spans; both streams ascend by line."""
    pending = iter(spans)
    span = next(pending, None)
    for line, item in items:
        own: list[NameSpan] = []
        while span is not None and span.segment_index == line:
            own.append(span)
            span = next(pending, None)
        if span is not None and span.segment_index < line:
            raise AlignmentError(
                f"span for line {span.segment_index} out of order (reached line {line})"
            )
        yield item, own
    if span is not None:
        raise AlignmentError(f"span for line {span.segment_index} has no segment")
