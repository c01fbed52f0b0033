import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.base import clone

from conftest import POWER, PRINTED_SN, brute_force_sn
from robustwheel.exceptions import ArityError, NonPositiveResponse, ShapeMismatch, ValidationError
from robustwheel.taguchi import (
    Factor,
    ResponseMatrix,
    SmallerTheBetterSN,
    build_l9,
    read_plan_csv,
    snr_column,
    snr_smaller_better,
)

positive = st.floats(0.01, 1e4)


class TestL9:
    def test_layout_matches_published_columns(self, study_plan):
        assert study_plan.runs.tolist() == [
            [1, 1, 1], [1, 2, 2], [1, 3, 3],
            [2, 1, 2], [2, 2, 3], [2, 3, 1],
            [3, 1, 3], [3, 2, 1], [3, 3, 2],
        ]
        assert tuple(study_plan.runs[4]) == (2, 2, 3)
        assert study_plan.run_values(5) == (260, 45, 20)

    def test_balance_by_counting(self, study_plan):
        for j in range(3):
            counts = [int(np.sum(study_plan.runs[:, j] == lv)) for lv in (1, 2, 3)]
            assert counts == [3, 3, 3]
        assert study_plan.is_balanced()

    def test_pairwise_orthogonality_by_enumeration(self, study_plan):
        for i, j in itertools.combinations(range(3), 2):
            pairs = sorted((int(a), int(b)) for a, b in study_plan.runs[:, [i, j]])
            assert pairs == sorted(itertools.product((1, 2, 3), repeat=2))
        assert study_plan.is_orthogonal()

    def test_runs_immutable(self, study_plan):
        with pytest.raises(ValueError):
            study_plan.runs[0, 0] = 3

    def test_factor_lookup(self, study_plan):
        assert study_plan.factor_index("B") == 1
        assert study_plan.factor_index("Number of Child Circles") == 2
        with pytest.raises(KeyError):
            study_plan.factor_index("nope")

    def test_wrong_factor_count(self, study_factors):
        with pytest.raises(ArityError):
            build_l9(study_factors[:2])

    def test_two_level_factor_rejected_by_l9(self, study_factors):
        with pytest.raises(ArityError):
            build_l9([study_factors[0], study_factors[1], Factor("x", (1, 2))])

    @pytest.mark.parametrize("levels", [(1,), (1, 2, 3, 4), (1, 1, 2)])
    def test_factor_level_validation(self, levels):
        with pytest.raises(ArityError):
            Factor("x", levels)

    def test_csv_round_trip(self, study_plan, study_factors):
        text = study_plan.to_csv()
        lines = text.splitlines()
        assert lines[0] == "run,A,B,C,A_value_mm,B_value_mm,C_value"
        assert lines[5] == "5,2,2,3,260.000000,45.000000,20.000000"
        again = read_plan_csv(text, study_factors)
        assert np.array_equal(again.runs, study_plan.runs)

    def test_csv_misnumbered_rejected(self, study_plan, study_factors):
        text = study_plan.to_csv().replace("\n2,", "\n7,", 1)
        with pytest.raises(ValidationError):
            read_plan_csv(text, study_factors)


class TestSignalToNoise:
    def test_run1(self):
        v = snr_smaller_better([4.02, 4.07, 5.19])
        assert v == pytest.approx(brute_force_sn([4.02, 4.07, 5.19]), abs=1e-12)
        assert v == pytest.approx(-12.98, abs=0.01)

    def test_run5(self):
        assert snr_smaller_better([2.99, 2.99, 3.08]) == pytest.approx(-9.61, abs=0.01)

    def test_unit_response(self):
        assert snr_smaller_better([1.0]) == 0.0

    @pytest.mark.parametrize("bad", [[1.0, 0.0], [-2.0, 3.0]])
    def test_nonpositive(self, bad):
        with pytest.raises(NonPositiveResponse):
            snr_smaller_better(bad)

    def test_empty(self):
        with pytest.raises(ShapeMismatch):
            snr_smaller_better([])

    def test_column_matches_definition(self, study_plan):
        col = snr_column(study_plan, ResponseMatrix(POWER))
        assert col == pytest.approx([brute_force_sn(r) for r in POWER], abs=1e-12)

    def test_column_against_printed_values_where_reproducible(self, study_plan):
        # the printed column is off by more than rounding for runs 2, 4 and 6;
        # those rows are covered (and reported) by the acceptance suite
        col = snr_column(study_plan, POWER)
        for i in (0, 2, 4, 6, 7, 8):
            assert col[i] == pytest.approx(PRINTED_SN[i], abs=0.01)

    def test_constant_responses_give_constant_column(self, study_plan):
        col = snr_column(study_plan, np.full((9, 3), 3.3))
        assert np.ptp(col) == 0

    def test_scaling_by_ten_drops_twenty_db(self, study_plan):
        base = snr_column(study_plan, POWER)
        scaled = snr_column(study_plan, POWER * 10)
        assert scaled == pytest.approx(base - 20, abs=1e-12)

    def test_row_count_mismatch(self, study_plan):
        with pytest.raises(ShapeMismatch):
            snr_column(study_plan, POWER[:8])

    @given(st.lists(positive, min_size=1, max_size=6), st.floats(1e-3, 1e3))
    def test_scaling_identity(self, y, k):
        y = np.array(y)
        assert snr_smaller_better(k * y) == pytest.approx(
            snr_smaller_better(y) - 20 * math.log10(k), abs=1e-9
        )

    @given(st.lists(positive, min_size=1, max_size=6), st.integers(0, 5), st.floats(1e-3, 10))
    def test_strictly_decreasing_in_each_replicate(self, y, idx, bump):
        idx %= len(y)
        bigger = list(y)
        bigger[idx] = y[idx] + bump
        assert snr_smaller_better(bigger) < snr_smaller_better(y)


class TestEstimator:
    def test_fit_transform(self):
        out = SmallerTheBetterSN().fit_transform(POWER)
        assert out.shape == (9, 1)
        assert out[0, 0] == pytest.approx(brute_force_sn(POWER[0]))

    def test_clone_and_params(self):
        est = clone(SmallerTheBetterSN())
        assert est.get_params() == {}

    def test_replicate_count_checked(self):
        est = SmallerTheBetterSN().fit(POWER)
        with pytest.raises(ShapeMismatch):
            est.transform(POWER[:, :2])

    def test_feature_names(self):
        est = SmallerTheBetterSN().fit(POWER)
        assert list(est.get_feature_names_out()) == ["sn_ratio_db"]

    def test_response_matrix_rejects_nonpositive(self):
        with pytest.raises(NonPositiveResponse):
            ResponseMatrix([[1.0, -1.0]])
