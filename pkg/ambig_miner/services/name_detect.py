"""
Title-Copy name detection and its NER-confirmed subsets.

TC keeps titlecase source tokens from a restricted character set whose
surface is copied verbatim into the target. SA/SP are the TC spans that an
external NER annotation also covers (any label / PERSON label).
"""

import re
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from ambig_miner.core.exceptions import EvaluationError
from ambig_miner.models.enums import NameMethodEnum
from ambig_miner.schemas.corpus import NerSpan, ParallelSegment
from ambig_miner.schemas.name_span import NameSpan

NAME_LIST_PATH = Path(__file__).resolve().parent.parent / "data" / "names_sample.txt"

PERSON_LABELS = frozenset({"PERSON"})

_TOKEN = re.compile(r"\S+")


# ── Character policy ──────────────────────────────────────────────────────────


class NameCharPolicy(BaseModel):
    model_config = ConfigDict(frozen=True)

    ranges: tuple[tuple[str, str], ...]
    extras: str = ""

    @classmethod
    def default(cls) -> "NameCharPolicy":
        """ASCII letters, U+00C0-U+017E, and the literal characters ' - _ ."""
        return cls(
            ranges=(("A", "Z"), ("a", "z"), ("À", "ž")),
            extras="'-_.",
        )

    @classmethod
    def literal(cls) -> "NameCharPolicy":
        """The class read with '-_ as a range (U+0027-U+005F), for auditing."""
        return cls(
            ranges=(("A", "Z"), ("a", "z"), ("À", "ž"), ("'", "_")),
            extras=".",
        )

    def _class(self) -> str:
        return _char_class(self.ranges, self.extras)

    def allows(self, ch: str) -> bool:
        return _allowed_re(self._class()).fullmatch(ch) is not None

    @staticmethod
    def is_titlecase(ch: str) -> bool:
        return ch.isupper() or ch.istitle()

    def trim(self, token: str) -> str:
        """
        Drop leading/trailing characters outside the allowed set.

        Trailing periods are punctuation unless the token holds another period
        (initials such as "J.R.R." keep theirs).
        """
        token = _trim_re(self._class()).sub("", token)
        core = token.rstrip(".")
        if "." not in core:
            token = core
        return token

    def all_allowed(self, token: str) -> bool:
        return _allowed_re(self._class()).fullmatch(token) is not None


@lru_cache
def _char_class(ranges: tuple[tuple[str, str], ...], extras: str) -> str:
    parts = [f"{re.escape(lo)}-{re.escape(hi)}" for lo, hi in ranges]
    parts.extend(re.escape(ch) for ch in extras)
    return "".join(parts)


@lru_cache
def _allowed_re(char_class: str) -> re.Pattern[str]:
    return re.compile(f"[{char_class}]+")


@lru_cache
def _trim_re(char_class: str) -> re.Pattern[str]:
    return re.compile(f"^[^{char_class}]+|[^{char_class}]+$")


DEFAULT_POLICY = NameCharPolicy.default()


def tc_token_ok(token: str, policy: NameCharPolicy = DEFAULT_POLICY) -> bool:
    return bool(token) and policy.all_allowed(token) and policy.is_titlecase(token[0])


# ── Title-Copy ────────────────────────────────────────────────────────────────


def _raw_tokens(text: str) -> list[re.Match[str]]:
    return list(_TOKEN.finditer(text))


def _eligible_runs(eligible: Sequence[bool]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    start: int | None = None
    for i, ok in enumerate(eligible):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(eligible)))
    return runs


def _occurs(needle: Sequence[str], haystack: Sequence[str], first: dict[str, list[int]]) -> bool:
    n = len(needle)
    for pos in first.get(needle[0], ()):
        if list(haystack[pos : pos + n]) == list(needle):
            return True
    return False


def tc_spans(
    seg: ParallelSegment, policy: NameCharPolicy = DEFAULT_POLICY
) -> list[NameSpan]:
    src_tokens = [policy.trim(m.group()) for m in _raw_tokens(seg.src)]
    tgt_tokens = [policy.trim(t) for t in seg.tgt.split()]
    positions: dict[str, list[int]] = {}
    for pos, token in enumerate(tgt_tokens):
        positions.setdefault(token, []).append(pos)

    candidates: list[tuple[int, int]] = []
    eligible = [tc_token_ok(t, policy) for t in src_tokens]
    for run_start, run_end in _eligible_runs(eligible):
        for a in range(run_start, run_end):
            for b in range(a + 1, run_end + 1):
                if _occurs(src_tokens[a:b], tgt_tokens, positions):
                    candidates.append((a, b))

    # longest match wins, then leftmost; kept spans never overlap
    candidates.sort(key=lambda ab: (ab[0] - ab[1], ab[0]))
    chosen: list[tuple[int, int]] = []
    for a, b in candidates:
        if all(b <= c or a >= d for c, d in chosen):
            chosen.append((a, b))

    return [
        NameSpan(
            segment_index=seg.index,
            start_tok=a,
            end_tok=b,
            surface=" ".join(src_tokens[a:b]),
        )
        for a, b in sorted(chosen)
    ]


def span_char_extent(
    span: NameSpan, src: str, policy: NameCharPolicy = DEFAULT_POLICY
) -> tuple[int, int]:
    """Character extent of the trimmed surface within `src`."""
    raw = _raw_tokens(src)
    first, last = raw[span.start_tok], raw[span.end_tok - 1]
    first_trimmed = policy.trim(first.group())
    last_trimmed = policy.trim(last.group())
    start = first.start() + first.group().find(first_trimmed)
    end = last.start() + last.group().find(last_trimmed) + len(last_trimmed)
    return start, end


# ── NER refinement ────────────────────────────────────────────────────────────


def refine_with_ner(
    spans: Sequence[NameSpan],
    ner: Sequence[NerSpan],
    src: str,
    policy: NameCharPolicy = DEFAULT_POLICY,
) -> list[NameSpan]:
    refined: list[NameSpan] = []
    for span in spans:
        start, end = span_char_extent(span, src, policy)
        hits = [e for e in ner if e.overlaps(start, end)]
        methods = [NameMethodEnum.TC]
        if hits:
            methods.append(NameMethodEnum.SA)
            if any(e.label in PERSON_LABELS for e in hits):
                methods.append(NameMethodEnum.SP)
        refined.append(span.model_copy(update={"methods": methods}))
    return refined


def detect_names(
    seg: ParallelSegment, policy: NameCharPolicy = DEFAULT_POLICY
) -> list[NameSpan]:
    spans = tc_spans(seg, policy)
    if seg.ner_spans is None:
        return spans
    return refine_with_ner(spans, seg.ner_spans, seg.src, policy)


def select_spans(spans: Iterable[NameSpan], method: NameMethodEnum) -> list[NameSpan]:
    return [span for span in spans if span.has(method)]


def comma_flanked(span: NameSpan, src: str) -> bool:
    """Name set off by commas: an appositive or a direct address."""
    raw = [m.group() for m in _raw_tokens(src)]
    if span.start_tok == 0 or not raw[span.end_tok - 1].endswith(","):
        return False
    return raw[span.start_tok - 1].endswith(",")


# ── Recall of the character policy ───────────────────────────────────────────


def load_name_list(path: str | Path = NAME_LIST_PATH) -> list[str]:
    with open(path, "r", encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip()]


def regex_recall(policy: NameCharPolicy, name_list: Sequence[str]) -> float:
    if not name_list:
        raise EvaluationError("name list is empty")
    passed = sum(
        1
        for name in name_list
        if name.split() and all(tc_token_ok(t, policy) for t in name.split())
    )
    return passed / len(name_list)
