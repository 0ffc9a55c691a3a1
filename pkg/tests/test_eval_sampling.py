"""
Tests for ambig_miner/services/eval_sampling.py

Seeded sampling, sheet TSV files, rates, and Cohen's kappa.
"""

from pathlib import Path

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ambig_miner.core.exceptions import EvaluationError
from ambig_miner.models.enums import PopulationEnum, QuestionEnum
from ambig_miner.schemas.labels import SegmentLabels
from ambig_miner.schemas.sheet import AnnotationSheet, SheetItem
from ambig_miner.services.eval_sampling import (
    SplitMix64,
    agree,
    cohens_kappa,
    draw,
    estimate_rate,
    population_indices,
    read_sheet,
    sample,
    write_sheet,
)

Y, N = True, False


def marked_sheet(marks, sample_id="s", population=PopulationEnum.DETECTED) -> AnnotationSheet:
    return AnnotationSheet(
        sample_id=sample_id,
        seed=0,
        question=QuestionEnum.NAME,
        population=population,
        items=[SheetItem(idx=i, mark=m) for i, m in enumerate(marks)],
    )


# ── Generator ─────────────────────────────────────────────────────────────────


def test_splitmix_reference_output():
    assert SplitMix64(0).next_u64() == 0xE220A8397B1DCDAF


def test_below_stays_in_range():
    rng = SplitMix64(42)

    assert all(0 <= rng.below(7) < 7 for _ in range(1000))


# ── Sampling ──────────────────────────────────────────────────────────────────


def test_exhaustive_sample_is_a_permutation():
    drawn = draw(range(10), 10, seed=3)

    assert sorted(drawn) == list(range(10))


def test_same_seed_same_sheet():
    population = list(range(100, 200))

    assert sample(population, 20, 11) == sample(population, 20, 11)
    assert draw(population, 20, 11) != draw(population, 20, 12)


def test_empty_sample():
    sheet = sample([1, 2, 3], 0, 5)

    assert sheet.items == []
    assert sheet.sample_id == "detected-is-person-name-n0-s5"


def test_sample_larger_than_population_raises():
    with pytest.raises(EvaluationError):
        draw([1, 2], 3, 0)


def test_sample_fills_known_items():
    items = {7: SheetItem(idx=7, src="Anna sleeps.", tgt="Anna schläft .", surface="Anna")}

    sheet = sample([7], 1, 0, question=QuestionEnum.COREF, items_by_index=items)

    assert sheet.items[0].surface == "Anna"
    assert sheet.question == QuestionEnum.COREF


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(0, 10_000), unique=True, max_size=60),
    st.integers(0, 2**64 - 1),
    st.data(),
)
def test_draw_is_a_subset_without_duplicates(population, seed, data):
    n = data.draw(st.integers(0, len(population)))

    drawn = draw(population, n, seed)

    assert len(drawn) == len(set(drawn)) == n
    assert set(drawn) <= set(population)
    assert draw(population, n, seed) == drawn


# ── Populations ───────────────────────────────────────────────────────────────


def test_population_filters():
    labels = [
        SegmentLabels(line=0, has_tc=True),
        SegmentLabels(line=1),
        SegmentLabels(
            line=2,
            has_tc=True,
            has_binary_pronoun=True,
            trg_gendered=True,
            gendered_terms=[{"id": 3, "form": "eine", "gender": "Fem"}],
        ),
    ]

    assert population_indices(labels, PopulationEnum.DETECTED) == [0, 2]
    assert population_indices(labels, PopulationEnum.NON_DETECTED) == [1]
    assert population_indices(labels, PopulationEnum.TRG_GENDERED) == [2]
    assert population_indices(labels, PopulationEnum.TRG_GENDERED_NO_PRON) == []
    assert population_indices(labels, PopulationEnum.TRG_GENDERED_WITH_PRON) == [2]


# ── Rates ─────────────────────────────────────────────────────────────────────


def test_precision_estimate():
    assert estimate_rate(marked_sheet([Y] * 81 + [N] * 19)) == 0.81


def test_false_negative_estimate():
    sheet = marked_sheet([N] * 100, population=PopulationEnum.NON_DETECTED)

    assert estimate_rate(sheet) == 0.0


def test_all_true():
    assert estimate_rate(marked_sheet([Y, Y, Y])) == 1.0


def test_unmarked_items_raise():
    with pytest.raises(EvaluationError, match="unmarked"):
        estimate_rate(marked_sheet([Y, None]))


# ── Kappa ─────────────────────────────────────────────────────────────────────


def test_kappa_hand_computed():
    stats = cohens_kappa([Y, Y, N, N], [Y, N, N, N])

    assert stats.p_o == pytest.approx(0.75)
    assert stats.p_e == pytest.approx(0.5)
    assert stats.kappa == pytest.approx(0.5)


def test_identical_marks():
    assert cohens_kappa([Y, N, Y], [Y, N, Y]).kappa == pytest.approx(1.0)


def test_total_disagreement():
    assert cohens_kappa([Y, N], [N, Y]).kappa == pytest.approx(-1.0)


def test_length_mismatch_raises():
    with pytest.raises(EvaluationError):
        cohens_kappa([Y], [Y, N])


def test_constant_identical_marks_raise():
    with pytest.raises(EvaluationError, match="undefined"):
        cohens_kappa([Y, Y], [Y, Y])


def test_empty_marks_raise():
    with pytest.raises(EvaluationError):
        cohens_kappa([], [])


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.booleans(), st.booleans()), min_size=1, max_size=40))
def test_kappa_matches_chance_corrected_formula_and_is_symmetric(pairs):
    a = [x for x, _ in pairs]
    b = [y for _, y in pairs]
    assume(len(set(a)) > 1 or len(set(b)) > 1 or a != b)

    stats = cohens_kappa(a, b)

    assert stats.kappa == pytest.approx((stats.p_o - stats.p_e) / (1 - stats.p_e))
    assert cohens_kappa(b, a).kappa == pytest.approx(stats.kappa)


# ── Sheets ────────────────────────────────────────────────────────────────────


def test_sheet_file_round_trip(tmp_path: Path):
    items = {
        3: SheetItem(idx=3, src='She said "hi"\tthen left', tgt="Sie sagte", surface="Anna | Tom"),
        8: SheetItem(idx=8, src="x", tgt="y", surface="Jax"),
    }
    sheet = sample([3, 8], 2, 4, items_by_index=items)

    write_sheet(tmp_path / "s.tsv", sheet)

    assert read_sheet(tmp_path / "s.tsv") == sheet


def test_filled_marks_are_read(tmp_path: Path):
    path = tmp_path / "s.tsv"
    path.write_text(
        "# sample_id=x seed=1 question=is-coreferent population=trg-gendered\n"
        "idx\tsrc\ttgt\tsurface\tmark\n"
        "4\ta\tb\tc\tYes\n"
        "9\ta\tb\tc\t0\n"
        "2\ta\tb\tc\t\n",
        encoding="utf-8",
    )

    sheet = read_sheet(path)

    assert sheet.marks == [True, False, None]
    assert sheet.question == QuestionEnum.COREF
    assert sheet.is_complete is False


def test_unreadable_mark_names_the_row(tmp_path: Path):
    path = tmp_path / "s.tsv"
    path.write_text(
        "# sample_id=x seed=1 question=is-person-name population=detected\n"
        "idx\tsrc\ttgt\tsurface\tmark\n"
        "4\ta\tb\tc\tmaybe\n",
        encoding="utf-8",
    )

    with pytest.raises(EvaluationError, match=r"s.tsv:3: unreadable mark"):
        read_sheet(path)


def test_sheet_without_header_raises(tmp_path: Path):
    path = tmp_path / "s.tsv"
    path.write_text("idx\tsrc\ttgt\tsurface\tmark\n", encoding="utf-8")

    with pytest.raises(EvaluationError, match="header"):
        read_sheet(path)


# ── Agreement ─────────────────────────────────────────────────────────────────


def test_agree_aligns_by_index():
    a = marked_sheet([Y, Y, N, N])
    b = AnnotationSheet(
        sample_id="s",
        seed=0,
        question=QuestionEnum.NAME,
        population=PopulationEnum.DETECTED,
        items=[SheetItem(idx=i, mark=m) for i, m in reversed(list(enumerate([Y, N, N, N])))],
    )

    assert agree(a, b).kappa == pytest.approx(0.5)


def test_agree_on_different_items_raises():
    b = AnnotationSheet(
        sample_id="s",
        seed=0,
        question=QuestionEnum.NAME,
        population=PopulationEnum.DETECTED,
        items=[SheetItem(idx=9, mark=Y)],
    )

    with pytest.raises(EvaluationError, match="different items"):
        agree(marked_sheet([Y]), b)


def test_agree_on_partly_marked_sheets_raises():
    with pytest.raises(EvaluationError, match="fully marked"):
        agree(marked_sheet([Y, None]), marked_sheet([Y, N]))


def test_agree_checks_the_second_sheet_too():
    with pytest.raises(EvaluationError, match="fully marked"):
        agree(marked_sheet([Y, N]), marked_sheet([Y, None]))


def test_sheet_completeness():
    assert marked_sheet([Y, N]).is_complete
    assert not marked_sheet([Y, None]).is_complete
    assert marked_sheet([]).is_complete
