"""Questionnaire scoring: worked examples, exhaustive oracle, properties."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cinnamon.assessment import (
    GfiResponse,
    PssuqResponse,
    score_gfi,
    score_pssuq,
)
from cinnamon.errors import ValidationError


class TestGfi:
    def test_all_zeros(self):
        result = score_gfi(GfiResponse(items=(0,) * 15))
        assert result.total == 0 and result.frail is False

    def test_all_ones(self):
        result = score_gfi(GfiResponse(items=(1,) * 15))
        assert result.total == 15 and result.frail is True

    def test_exactly_four_ones_crosses_threshold(self):
        items = (1, 1, 1, 1) + (0,) * 11
        result = score_gfi(GfiResponse(items=items))
        assert result.total == 4 and result.frail is True

    def test_three_ones_is_not_frail(self):
        items = (1, 1, 1) + (0,) * 12
        assert score_gfi(GfiResponse(items=items)).frail is False

    def test_wrong_item_count_rejected(self):
        with pytest.raises(ValidationError, match="15"):
            GfiResponse(items=(0,) * 14)

    def test_out_of_domain_value_rejected(self):
        with pytest.raises(ValidationError, match="0 or 1"):
            GfiResponse(items=(2,) + (0,) * 14)

    def test_exhaustive_all_32768_vectors(self):
        # Independent oracle: enumerate every answer vector via its bit
        # pattern and compare popcount >= 4 with the scorer's verdict.
        mismatches = 0
        for bits in range(2**15):
            items = tuple((bits >> i) & 1 for i in range(15))
            expected_total = bin(bits).count("1")
            result = score_gfi(GfiResponse(items=items))
            if result.total != expected_total or result.frail != (expected_total >= 4):
                mismatches += 1
        assert mismatches == 0


class TestPssuqWorkedExamples:
    def test_all_ones_best_score(self):
        result = score_pssuq(PssuqResponse(items=(1,) * 16))
        assert result.overall == 1.0
        assert result.sysuse == 1.0
        assert result.infoqual == 1.0
        assert result.interqual == 1.0

    def test_mixed_case_overall_5_125(self):
        items = (2,) * 6 + (7,) * 10
        result = score_pssuq(PssuqResponse(items=items))
        assert result.sysuse == pytest.approx(2.0)
        assert result.infoqual == pytest.approx(7.0)
        assert result.interqual == pytest.approx(7.0)
        assert result.overall == pytest.approx(82 / 16)  # 5.125

    def test_unanswered_subscale_is_undefined(self):
        items = (4,) * 6 + (None,) * 6 + (4,) * 4
        result = score_pssuq(PssuqResponse(items=items))
        assert result.infoqual is None
        assert result.answered_counts["infoqual"] == 0
        assert result.overall == pytest.approx(4.0)
        assert result.answered_counts["overall"] == 10

    def test_fully_unanswered_rejected(self):
        with pytest.raises(ValidationError, match="no answered"):
            score_pssuq(PssuqResponse(items=(None,) * 16))

    def test_out_of_range_item_rejected(self):
        with pytest.raises(ValidationError, match="1, 7"):
            PssuqResponse(items=(8,) + (4,) * 15)


answered_item = st.one_of(st.none(), st.integers(1, 7))


class TestPssuqProperties:
    @settings(max_examples=200, deadline=None)
    @given(items=st.lists(answered_item, min_size=16, max_size=16))
    def test_defined_scores_bounded(self, items):
        if all(v is None for v in items):
            return
        result = score_pssuq(PssuqResponse(items=tuple(items)))
        for value in (result.overall, result.sysuse, result.infoqual, result.interqual):
            if value is not None:
                assert 1.0 <= value <= 7.0

    @settings(max_examples=200, deadline=None)
    @given(
        items=st.lists(st.integers(1, 7), min_size=16, max_size=16),
        index=st.integers(0, 15),
    )
    def test_raising_an_item_never_lowers_containing_subscales(self, items, index):
        if items[index] == 7:
            return
        raised = list(items)
        raised[index] += 1
        before = score_pssuq(PssuqResponse(items=tuple(items)))
        after = score_pssuq(PssuqResponse(items=tuple(raised)))
        for name in ("overall", "sysuse", "infoqual", "interqual"):
            b, a = getattr(before, name), getattr(after, name)
            assert a >= b - 1e-12

    @settings(max_examples=100, deadline=None)
    @given(items=st.lists(st.integers(1, 7), min_size=16, max_size=16), seed=st.integers(0, 999))
    def test_permutation_within_subscale_preserves_it(self, items, seed):
        rng = np.random.default_rng(seed)
        permuted = list(items)
        lo, hi = 6, 12  # infoqual block, 0-based [6, 12)
        block = [permuted[i] for i in range(lo, hi)]
        rng.shuffle(block)
        permuted[lo:hi] = block
        before = score_pssuq(PssuqResponse(items=tuple(items)))
        after = score_pssuq(PssuqResponse(items=tuple(permuted)))
        assert after.infoqual == pytest.approx(before.infoqual)
        assert after.overall == pytest.approx(before.overall)
