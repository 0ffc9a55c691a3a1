import hashlib
import string
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import structlog
from pydantic import BaseModel

from ambig_miner.models.enums import LanguageEnum
from ambig_miner.schemas.config import PreprocessConfig
from ambig_miner.schemas.corpus import ParallelSegment

logger = structlog.get_logger()

STOPWORD_DIR = Path(__file__).resolve().parent.parent / "data" / "stopwords"

# classification order doubles as the tie-break for equal non-zero coverage
LANGID_LANGUAGES = (LanguageEnum.EN, LanguageEnum.FR, LanguageEnum.DE, LanguageEnum.ES)

_STRIP = string.punctuation + "¿¡«»“”„‘’…"


class PreprocessStats(BaseModel):
    input_lines: int = 0
    duplicates: int = 0
    ratio_dropped: int = 0
    langid_dropped: int = 0
    output_lines: int = 0


# ── Dedup ─────────────────────────────────────────────────────────────────────


def pair_digest(src: str, tgt: str) -> bytes:
    """128-bit content hash of a pair, compared after trailing-whitespace trim."""
    payload = src.rstrip().encode("utf-8") + b"\x00" + tgt.rstrip().encode("utf-8")
    return hashlib.blake2b(payload, digest_size=16).digest()


def dedup_exact_pairs(corpus: Iterable[ParallelSegment]) -> list[ParallelSegment]:
    seen: set[bytes] = set()
    kept: list[ParallelSegment] = []
    for seg in corpus:
        digest = pair_digest(seg.src, seg.tgt)
        if digest in seen:
            continue
        seen.add(digest)
        kept.append(seg)
    return kept


# ── Length ratio ──────────────────────────────────────────────────────────────


def length_ratio_ok(seg: ParallelSegment, cfg: PreprocessConfig) -> bool:
    n_src, n_tgt = len(seg.src.split()), len(seg.tgt.split())
    if n_src == 0 or n_tgt == 0:
        return False
    return max(n_src, n_tgt) / min(n_src, n_tgt) <= cfg.max_length_ratio


# ── Language id ───────────────────────────────────────────────────────────────


@lru_cache
def stopwords(lang: LanguageEnum) -> frozenset[str]:
    path = STOPWORD_DIR / f"{lang.value}.txt"
    with open(path, "r", encoding="utf-8") as f:
        return frozenset(
            word.strip().lower()
            for word in f
            if word.strip() and not word.startswith("#")
        )


def _langid_tokens(text: str) -> list[str]:
    tokens = (t.strip(_STRIP).lower() for t in text.split())
    return [t for t in tokens if t]


def langid_scores(text: str) -> dict[LanguageEnum, float]:
    tokens = _langid_tokens(text)
    if not tokens:
        return {lang: 0.0 for lang in LANGID_LANGUAGES}
    return {
        lang: sum(1 for t in tokens if t in stopwords(lang)) / len(tokens)
        for lang in LANGID_LANGUAGES
    }


def langid_of(text: str) -> LanguageEnum:
    scores = langid_scores(text)
    best = max(scores.values())
    if best == 0.0:
        return LanguageEnum.UNKNOWN
    return next(lang for lang in LANGID_LANGUAGES if scores[lang] == best)


def _lang_ok(text: str, expected: LanguageEnum | None, min_tokens: int) -> bool:
    if expected is None or len(text.split()) < min_tokens:
        return True
    detected = langid_of(text)
    # unknown means no evidence either way, not a different language
    return detected in (expected, LanguageEnum.UNKNOWN)


def langid_ok(seg: ParallelSegment, cfg: PreprocessConfig) -> bool:
    return _lang_ok(
        seg.src, cfg.expected_src_lang, cfg.min_tokens_for_langid
    ) and _lang_ok(seg.tgt, cfg.expected_tgt_lang, cfg.min_tokens_for_langid)


# ── Pipeline ──────────────────────────────────────────────────────────────────


def screen(seg: ParallelSegment, cfg: PreprocessConfig) -> str | None:
    """Name of the first filter `seg` fails, or None when it is kept."""
    if cfg.check_ratio and not length_ratio_ok(seg, cfg):
        return "ratio"
    if cfg.check_langid and not langid_ok(seg, cfg):
        return "langid"
    return None


Screened = tuple[ParallelSegment, bytes, str | None]


def screen_all(segments: Iterable[ParallelSegment], cfg: PreprocessConfig) -> list[Screened]:
    return [(seg, pair_digest(seg.src, seg.tgt), screen(seg, cfg)) for seg in segments]


def select_screened(
    screened: Iterable[Screened], stats: PreprocessStats
) -> Iterator[ParallelSegment]:
    """Sequential half of preprocessing: dedup on digests, apply verdicts, re-index."""
    seen: set[bytes] = set()
    for seg, digest, verdict in screened:
        stats.input_lines += 1
        if digest in seen:
            stats.duplicates += 1
            continue
        seen.add(digest)
        if verdict == "ratio":
            stats.ratio_dropped += 1
            continue
        if verdict == "langid":
            stats.langid_dropped += 1
            continue
        yield seg.model_copy(update={"index": stats.output_lines})
        stats.output_lines += 1


def iter_preprocess(
    corpus: Iterable[ParallelSegment],
    cfg: PreprocessConfig,
    stats: PreprocessStats | None = None,
) -> Iterator[ParallelSegment]:
    stats = stats if stats is not None else PreprocessStats()
    screened = ((seg, pair_digest(seg.src, seg.tgt), screen(seg, cfg)) for seg in corpus)
    yield from select_screened(screened, stats)


def preprocess(
    corpus: Sequence[ParallelSegment], cfg: PreprocessConfig
) -> list[ParallelSegment]:
    stats = PreprocessStats()
    kept = list(iter_preprocess(corpus, cfg, stats))
    logger.info("Preprocessed corpus", **stats.model_dump())
    return kept
