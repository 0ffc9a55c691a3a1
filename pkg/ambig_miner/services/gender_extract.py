"""
Target-side gendered language attached to a source name.

The name is located in the target parse, its syntactic head found, and the
head's dependents carrying Gender=Masc|Fem collected.
"""

from typing import Sequence

from ambig_miner.models.enums import GenderTagEnum, NameMethodEnum, PronounSideEnum, TermRelationEnum
from ambig_miner.schemas.corpus import ParallelSegment, ParsedToken
from ambig_miner.schemas.labels import GenderedTerm, SegmentLabels
from ambig_miner.schemas.name_span import NameSpan
from ambig_miner.services.name_detect import (
    DEFAULT_POLICY,
    NameCharPolicy,
    comma_flanked,
)
from ambig_miner.services.pronoun import has_binary_pronoun


def locate_in_target(
    span: NameSpan,
    tokens: Sequence[ParsedToken],
    policy: NameCharPolicy = DEFAULT_POLICY,
) -> list[int]:
    """
    Ids of the first token run spelling the span surface, or [].

    Both sides are trimmed with `policy`, so a surface detected under a looser
    policy ("Jax?") still finds a parser-split target token ("Jax").
    """
    parts = [policy.trim(part) for part in span.surface.split(" ")]
    if not all(parts):
        return []
    forms = [policy.trim(t.form) for t in tokens]
    for start in range(len(tokens)):
        if forms[start] != parts[0]:
            continue
        matched, pos = 1, start + 1
        while matched < len(parts) and pos < len(tokens):
            if forms[pos] == parts[matched]:
                matched += 1
            elif forms[pos]:
                break
            pos += 1
        if matched == len(parts):
            return [t.id for t in tokens[start:pos]]
    return []


def _descendants(head_id: int, children: dict[int, list[ParsedToken]]) -> list[ParsedToken]:
    found: list[ParsedToken] = []
    stack = list(children.get(head_id, []))
    while stack:
        token = stack.pop()
        found.append(token)
        stack.extend(children.get(token.id, []))
    return found


def extract_gendered_terms(
    name_token_ids: Sequence[int],
    tokens: Sequence[ParsedToken],
    include_head: bool = False,
    transitive: bool = False,
) -> list[GenderedTerm]:
    if not name_token_ids:
        return []
    by_id = {t.id: t for t in tokens}
    name_ids = set(name_token_ids)

    # the name token whose governor lies outside the name
    top = next(
        (by_id[i] for i in sorted(name_ids) if i in by_id and by_id[i].head not in name_ids),
        None,
    )
    if top is None:
        return []
    head = top if top.head == 0 else by_id[top.head]

    children: dict[int, list[ParsedToken]] = {}
    for token in tokens:
        children.setdefault(token.head, []).append(token)

    candidates = (
        _descendants(head.id, children) if transitive else children.get(head.id, [])
    )
    terms = [
        GenderedTerm(token_id=t.id, form=t.form, gender=t.gender)
        for t in sorted(candidates, key=lambda t: t.id)
        if t.id not in name_ids and t.gender is not None
    ]
    if include_head and head.id not in name_ids and head.gender is not None:
        terms.append(
            GenderedTerm(
                token_id=head.id,
                form=head.form,
                gender=head.gender,
                relation=TermRelationEnum.HEAD,
            )
        )
    return terms


def collect_terms(
    tokens: Sequence[ParsedToken],
    spans: Sequence[NameSpan],
    include_head: bool = False,
    transitive: bool = False,
) -> list[GenderedTerm]:
    """Union of the terms of every span, one entry per target token."""
    by_token: dict[int, GenderedTerm] = {}
    for span in spans:
        ids = locate_in_target(span, tokens)
        for term in extract_gendered_terms(ids, tokens, include_head, transitive):
            by_token.setdefault(term.token_id, term)
    return [by_token[i] for i in sorted(by_token)]


def label_segment(
    seg: ParallelSegment,
    spans: Sequence[NameSpan],
    include_head: bool = False,
    transitive: bool = False,
    pronoun_side: PronounSideEnum = PronounSideEnum.SRC,
) -> SegmentLabels:
    """Label one segment from all of its TC spans; SA/SP are read off their flags."""
    terms: list[GenderedTerm] = []
    if spans and seg.tgt_parse:
        terms = collect_terms(seg.tgt_parse, spans, include_head, transitive)
    pronoun_text = seg.src if pronoun_side == PronounSideEnum.SRC else seg.tgt
    return SegmentLabels(
        line=seg.index,
        has_tc=bool(spans),
        has_sa=any(s.has(NameMethodEnum.SA) for s in spans),
        has_sp=any(s.has(NameMethodEnum.SP) for s in spans),
        has_binary_pronoun=has_binary_pronoun(pronoun_text),
        trg_gendered=bool(terms),
        gendered_terms=terms,
        tag=GenderTagEnum.from_genders(t.gender for t in terms),
        has_parse=bool(seg.tgt_parse),
        comma_flanked=any(comma_flanked(s, seg.src) for s in spans),
    )
