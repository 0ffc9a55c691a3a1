import bisect
import re

from ambig_miner.schemas.pronoun import PronounHit

BINARY_PRONOUNS = ("she", "her", "hers", "herself", "he", "him", "his", "himself")


def _caseless(word: str) -> str:
    # ASCII-only folding; re.IGNORECASE would also match "ſhe" (long s)
    return "".join(f"[{ch}{ch.upper()}]" for ch in word)


# str patterns are Unicode-aware: accented letters are word characters.
# Combining marks count too, so decomposed "he\u0301" stays one word.
_WORD = r"\w\u0300-\u036f\u1ab0-\u1aff\u1dc0-\u1dff\u20d0-\u20ff\ufe20-\ufe2f"
_PRONOUN_RE = re.compile(
    rf"(?<![{_WORD}])(" + "|".join(map(_caseless, BINARY_PRONOUNS)) + rf")(?![{_WORD}])"
)
_TOKEN_RE = re.compile(r"\S+")


def binary_pronouns(text: str) -> list[PronounHit]:
    starts = [m.start() for m in _TOKEN_RE.finditer(text)]
    hits: list[PronounHit] = []
    for match in _PRONOUN_RE.finditer(text):
        token_index = bisect.bisect_right(starts, match.start()) - 1
        hits.append(
            PronounHit(pronoun=match.group(1).lower(), token_index=token_index)  # type: ignore[arg-type]
        )
    return hits


def has_binary_pronoun(text: str) -> bool:
    return _PRONOUN_RE.search(text) is not None
