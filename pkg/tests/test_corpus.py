"""
Tests for ambig_miner/services/corpus.py

Bitext pairing, CoNLL-U reading and tree validation, NER sidecar loading.
"""

from pathlib import Path

import pytest

from ambig_miner.core.exceptions import AlignmentError, CorpusFormatError
from ambig_miner.models.enums import GenderEnum
from ambig_miner.schemas.corpus import NerSpan
from ambig_miner.services.corpus import (
    attach_ner,
    attach_ner_stream,
    attach_parses,
    iter_ner_sidecar,
    iter_parallel_corpus,
    load_ner_sidecar,
    load_parallel_corpus,
    parse_conllu,
    read_corpus_jsonl,
    reconstruct_text,
    validate_tree,
    write_corpus_jsonl,
)
from tests.conftest import make_segment, make_token, write_lines

ROW = "{id}\t{form}\t_\tX\t_\t{feats}\t{head}\tdep\t_\t{misc}"


def conllu_row(id, form, head, feats="_", misc="_") -> str:
    return ROW.format(id=id, form=form, head=head, feats=feats, misc=misc)


# ── Bitext ────────────────────────────────────────────────────────────────────


def test_parallel_corpus_pairs_lines_by_index(tmp_path: Path):
    src = write_lines(tmp_path / "src", ["Anna is here.", "", "Tom sleeps."])
    tgt = write_lines(tmp_path / "tgt", ["Anna ist hier .", "", "Tom schläft ."])

    corpus = load_parallel_corpus(src, tgt)

    assert [s.index for s in corpus] == [0, 1, 2]
    assert corpus[1].src == "" and corpus[1].tgt == ""
    assert corpus[2].tgt == "Tom schläft ."


def test_parallel_corpus_strips_crlf_only(tmp_path: Path):
    (tmp_path / "src").write_bytes(b"Anna is here. \r\n")
    (tmp_path / "tgt").write_bytes(b"Anna ist hier .\n")

    [seg] = load_parallel_corpus(tmp_path / "src", tmp_path / "tgt")

    assert seg.src == "Anna is here. "


def test_line_count_mismatch_raises(tmp_path: Path):
    src = write_lines(tmp_path / "src", ["a", "b", "c"])
    tgt = write_lines(tmp_path / "tgt", ["a", "b"])

    with pytest.raises(CorpusFormatError, match="line count mismatch"):
        list(iter_parallel_corpus(src, tgt))


def test_invalid_utf8_names_the_line(tmp_path: Path):
    (tmp_path / "src").write_bytes(b"fine\nbroken \xff\n")
    (tmp_path / "tgt").write_bytes(b"ok\nok\n")

    with pytest.raises(CorpusFormatError, match=r"src:2: invalid UTF-8"):
        load_parallel_corpus(tmp_path / "src", tmp_path / "tgt")


# ── CoNLL-U ───────────────────────────────────────────────────────────────────


def test_mini_conllu_reads_every_sentence(mini: Path):
    parses = parse_conllu(mini / "tgt.conllu")

    assert len(parses) == 50
    first = parses[0]
    assert [t.form for t in first] == ["Anna", "ist", "eine", "gute", "Ingenieurin", "."]
    assert first[2].gender == GenderEnum.FEM
    assert first[0].gender is None
    assert first[4].head == 0


def test_space_after_no_is_honoured(mini: Path):
    parse = parse_conllu(mini / "tgt.conllu")[41]

    assert parse[0].form == "O'" and parse[0].space_after is False
    assert reconstruct_text(parse) == "O'Neil ist eine gute Ingenieurin ."


def test_multiword_ranges_and_empty_nodes_are_skipped(tmp_path: Path):
    path = write_lines(
        tmp_path / "x.conllu",
        [
            "1-2\tzum\t_\t_\t_\t_\t_\t_\t_\t_",
            conllu_row(1, "zu", 3),
            conllu_row(2, "dem", 3, feats="Gender=Masc"),
            conllu_row(3, "Haus", 0),
            "3.1\tist\t_\t_\t_\t_\t_\t_\t_\t_",
            "",
        ],
    )

    [parse] = parse_conllu(path)

    assert [t.id for t in parse] == [1, 2, 3]
    assert parse[1].gender == GenderEnum.MASC


def test_comment_only_block_is_an_unparsed_line(tmp_path: Path):
    path = write_lines(
        tmp_path / "x.conllu",
        [
            "# text = Anna ist hier .",
            conllu_row(1, "Anna", 0),
            "",
            "# text = skipped by the parser",
            "",
        ],
    )
    parses = parse_conllu(path)
    corpus = [make_segment("a", "Anna", index=0), make_segment("b", "x", index=1)]

    attached = attach_parses(corpus, parses)

    assert len(parses) == 2 and parses[1] == []
    assert attached[0].tgt_parse is not None
    assert attached[1].tgt_parse is None


def test_wrong_column_count_reports_file_line(tmp_path: Path):
    path = write_lines(tmp_path / "x.conllu", ["# c", "1\tAnna\t_\tX\t0", ""])

    with pytest.raises(CorpusFormatError, match=r"x.conllu:2: expected 10 columns"):
        parse_conllu(path)


def test_non_integer_head_raises(tmp_path: Path):
    path = write_lines(tmp_path / "x.conllu", [conllu_row(1, "Anna", "_"), ""])

    with pytest.raises(CorpusFormatError):
        parse_conllu(path)


def test_cycle_is_rejected():
    tokens = [make_token(1, "a", 2), make_token(2, "b", 1), make_token(3, "c", 0)]

    with pytest.raises(CorpusFormatError, match="cycle"):
        validate_tree(tokens, "s1")


def test_two_roots_are_rejected():
    tokens = [make_token(1, "a", 0), make_token(2, "b", 0)]

    with pytest.raises(CorpusFormatError, match="expected one root"):
        validate_tree(tokens, "s1")


def test_head_outside_sentence_is_rejected():
    tokens = [make_token(1, "a", 0), make_token(2, "b", 7)]

    with pytest.raises(CorpusFormatError, match="missing head 7"):
        validate_tree(tokens, "s1")


def test_parse_count_mismatch_is_alignment_error():
    corpus = [make_segment("a", "b")]

    with pytest.raises(AlignmentError):
        attach_parses(corpus, [])


# ── NER sidecar ───────────────────────────────────────────────────────────────


def test_ner_sidecar_any_order_and_gaps(tmp_path: Path):
    path = write_lines(
        tmp_path / "ner.jsonl",
        [
            '{"line": 2, "spans": [{"start": 0, "end": 4, "label": "PERSON"}]}',
            '{"line": 0, "spans": []}',
        ],
    )

    spans = load_ner_sidecar(path, 3)

    assert spans[0] == [] and spans[1] == []
    assert spans[2][0].label == "PERSON"


def test_ner_sidecar_duplicate_line_raises(tmp_path: Path):
    path = write_lines(tmp_path / "ner.jsonl", ['{"line": 0}', '{"line": 0}'])

    with pytest.raises(CorpusFormatError, match="duplicate"):
        load_ner_sidecar(path, 2)


def test_ner_sidecar_line_beyond_corpus_raises(tmp_path: Path):
    path = write_lines(tmp_path / "ner.jsonl", ['{"line": 5}'])

    with pytest.raises(CorpusFormatError, match="beyond corpus"):
        load_ner_sidecar(path, 2)


def test_streaming_sidecar_requires_ascending_lines(tmp_path: Path):
    path = write_lines(tmp_path / "ner.jsonl", ['{"line": 3}', '{"line": 1}'])

    with pytest.raises(CorpusFormatError, match="out of order"):
        list(iter_ner_sidecar(path))


def test_ner_span_beyond_source_raises():
    corpus = [make_segment("Tom", "Tom")]

    with pytest.raises(CorpusFormatError, match="exceeds source length"):
        attach_ner(corpus, [[NerSpan(start=0, end=10, label="PERSON")]])


def test_stream_attach_matches_mini_sidecar(mini: Path):
    corpus = load_parallel_corpus(mini / "src.txt", mini / "tgt.txt")

    attached = list(attach_ner_stream(corpus, iter_ner_sidecar(mini / "ner.jsonl")))

    assert all(seg.ner_spans is not None for seg in attached)
    assert attached[38].ner_spans[0].end == 6
    assert attached[11].ner_spans == []


# ── Interchange ───────────────────────────────────────────────────────────────


def test_corpus_jsonl_keeps_parses(tmp_path: Path):
    seg = make_segment(
        "Tom sleeps.", "Tom schläft .", parse=[make_token(1, "Tom", 2), make_token(2, "schläft", 0)]
    )

    write_corpus_jsonl(tmp_path / "c.jsonl", [seg])

    assert list(read_corpus_jsonl(tmp_path / "c.jsonl")) == [seg]
