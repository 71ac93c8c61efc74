"""Tests for the segments game, brute-force solutions, and core machinery."""

import numpy as np
import pytest

import tollshare as ts
from tollshare import SegmentsGame, TollMatrix

from helpers import (
    all_coalitions,
    coalition_value_by_enumeration,
    perturbed_allocation,
    seeded_matrices,
)


class TestGameValues:
    def test_example_values(self, example3):
        game = SegmentsGame(example3)
        assert game.value([1, 2]) == 1.0
        assert game.value([2, 3]) == 0.0
        assert game.value([1, 3]) == 0.0
        assert game.grand_value == 2.0
        assert game.value([]) == 0.0

    def test_unstable_example_pair_value(self, example61):
        assert SegmentsGame(example61).value([1, 2]) == pytest.approx(7.5)

    def test_value_matches_trip_enumeration(self):
        for matrix in seeded_matrices(12, sizes=(2, 4, 6)):
            game = SegmentsGame(matrix)
            for members in all_coalitions(matrix.n):
                expected = coalition_value_by_enumeration(matrix, members)
                assert game.value(members) == pytest.approx(expected, abs=1e-9)

    def test_block_decomposition(self):
        for matrix in seeded_matrices(10, sizes=(5, 6, 7, 8)):
            game = SegmentsGame(matrix)
            for members in all_coalitions(matrix.n):
                runs, current = [], []
                for i in sorted(members):
                    if current and i != current[-1] + 1:
                        runs.append(current)
                        current = []
                    current.append(i)
                if current:
                    runs.append(current)
                split = sum(game.interval_value(r[0], r[-1]) for r in runs)
                assert game.value(members) == pytest.approx(split, abs=1e-9)

    def test_monotone(self):
        matrix = ts.random_matrix(6, density=0.6, seed=5)
        game = SegmentsGame(matrix)
        values = game.mask_values()
        for mask in range(1 << 6):
            for i in range(6):
                if not mask >> i & 1:
                    assert values[mask | 1 << i] >= values[mask] - 1e-12

    def test_out_of_range_member(self, example3):
        with pytest.raises(ts.SegmentIndexError):
            SegmentsGame(example3).value([4])


class TestShapley:
    def test_example(self, example3):
        shapley = ts.shapley_value(SegmentsGame(example3))
        assert np.allclose(shapley, [5 / 6, 5 / 6, 1 / 3], atol=1e-12)

    def test_single_player(self):
        game = SegmentsGame(TollMatrix(1, {(1, 1): 4.0}))
        assert np.array_equal(ts.shapley_value(game), [4.0])

    def test_matches_equal_sharing(self):
        for matrix in seeded_matrices(40):
            game = SegmentsGame(matrix)
            assert np.allclose(ts.shapley_value(game), ts.ses(matrix), atol=1e-9)

    def test_size_limit(self):
        game = SegmentsGame(TollMatrix.zero(20))
        with pytest.raises(ts.OracleSizeError):
            ts.shapley_value(game)
        with pytest.raises(ts.OracleSizeError):
            ts.tau_value(game)
        with pytest.raises(ts.OracleSizeError):
            ts.compromise_bounds(game, limit=8)


class TestTau:
    def test_example(self, example3):
        tau = ts.tau_value(SegmentsGame(example3))
        assert np.allclose(tau, [4 / 5, 4 / 5, 2 / 5], atol=1e-12)

    def test_unstable_example(self, example61):
        assert np.allclose(
            ts.tau_value(SegmentsGame(example61)), ts.sps(example61), atol=1e-9
        )

    def test_diagonal_only(self):
        matrix = TollMatrix(3, {(1, 1): 1.0, (2, 2): 2.0, (3, 3): 3.0})
        assert np.allclose(ts.tau_value(SegmentsGame(matrix)), [1.0, 2.0, 3.0])

    def test_matches_proportional_sharing(self):
        for matrix in seeded_matrices(40):
            game = SegmentsGame(matrix)
            assert np.allclose(ts.tau_value(game), ts.sps(matrix), atol=1e-9)

    def test_utopia_equals_involvement(self):
        for matrix in seeded_matrices(15):
            bounds = ts.compromise_bounds(SegmentsGame(matrix))
            expected = [matrix.involvement(i) for i in range(1, matrix.n + 1)]
            assert np.allclose(bounds.utopia, expected, atol=1e-9)

    def test_undefined_for_coinciding_inefficient_bounds(self):
        class StubGame:
            # worth 1 for singletons, 1.5 for pairs, 2.5 for all three:
            # utopia and minimal rights coincide at 1 but sum past 2.5
            n = 3

            def mask_values(self):
                worth = {0: 0.0, 7: 2.5}
                values = np.zeros(8)
                for mask in range(1, 8):
                    values[mask] = worth.get(mask, 1.0 if mask.bit_count() == 1 else 1.5)
                return values

            @property
            def grand_value(self):
                return 2.5

        with pytest.raises(ts.TauUndefinedError):
            ts.tau_value(StubGame())


class TestAverageTree:
    def test_example(self, example3):
        at = ts.average_tree_value(SegmentsGame(example3))
        assert np.allclose(at, [2 / 3, 1.0, 1 / 3], atol=1e-12)

    def test_single_player(self):
        game = SegmentsGame(TollMatrix(1, {(1, 1): 2.5}))
        assert np.array_equal(ts.average_tree_value(game), [2.5])

    def test_matches_compensated_sharing(self):
        for matrix in seeded_matrices(40, sizes=(2, 3, 4, 5, 6, 7, 8, 9, 10)):
            game = SegmentsGame(matrix)
            assert np.allclose(ts.average_tree_value(game), ts.scs(matrix), atol=1e-9)


class TestCoreCheck:
    def test_equal_sharing_is_stable(self, example3):
        game = SegmentsGame(example3)
        report = ts.core_check(game, ts.ses(example3))
        assert report.is_member and report.efficient and not report.violations

    def test_unstable_example_report(self, example61):
        game = SegmentsGame(example61)
        report = ts.core_check(game, ts.sps(example61))
        assert not report.is_member
        assert report.efficient
        worst = report.violations[0]
        assert (worst.start, worst.end) == (1, 2)
        assert worst.value == pytest.approx(7.5)
        assert worst.allocated == pytest.approx(7.318, abs=1e-3)
        assert worst.deficit == pytest.approx(7.5 - 7.318, abs=1e-3)

    def test_zero_matrix(self):
        game = SegmentsGame(TollMatrix.zero(3))
        assert ts.core_check(game, np.zeros(3)).is_member

    def test_inefficient_vector(self, example3):
        game = SegmentsGame(example3)
        report = ts.core_check(game, np.array([1.0, 1.0, 1.0]))
        assert not report.is_member and not report.efficient

    def test_length_mismatch(self, example3):
        with pytest.raises(ts.LengthMismatchError):
            ts.core_check(SegmentsGame(example3), np.zeros(4))

    def test_negative_vector_rejected(self, example3):
        with pytest.raises(ValueError):
            ts.core_check(SegmentsGame(example3), np.array([-0.1, 1.1, 1.0]))

    def test_json_shape(self, example61):
        report = ts.core_check(SegmentsGame(example61), ts.sps(example61))
        payload = report.to_json_dict()
        assert payload["is_member"] is False
        assert payload["violations"][0]["interval"] == [1, 2]

    def test_interval_check_agrees_with_exhaustive(self):
        rng = np.random.default_rng(99)
        checked_violating = 0
        for matrix in seeded_matrices(24, sizes=(2, 3, 4, 5, 6)):
            game = SegmentsGame(matrix)
            candidates = [ts.ses(matrix), ts.scs(matrix), ts.sps(matrix)]
            candidates.append(perturbed_allocation(ts.ses(matrix), rng))
            for x in candidates:
                full, _ = ts.core_check_exhaustive(game, x)
                assert ts.core_check(game, x).is_member == full
                checked_violating += not full
        assert checked_violating > 0


class TestSpsCoreCriterion:
    def test_unstable_example(self, example61):
        crit = ts.sps_core_criterion(example61)
        assert not crit.satisfied
        assert crit.worst_interval == (1, 2)
        assert crit.beta < crit.rhs_max

    def test_small_problems_always_satisfy(self):
        for matrix in seeded_matrices(60, sizes=(3, 4)):
            assert ts.sps_core_criterion(matrix).satisfied

    def test_degenerate_diagonal_matrix(self):
        crit = ts.sps_core_criterion(TollMatrix(3, {(1, 1): 1.0}))
        assert crit.satisfied and crit.beta is None

    def test_agrees_with_direct_core_check(self):
        for matrix in seeded_matrices(60, sizes=(2, 3, 4, 5, 6, 7, 8)):
            game = SegmentsGame(matrix)
            direct = ts.core_check(game, ts.sps(matrix)).is_member
            assert ts.sps_core_criterion(matrix).satisfied == direct


class TestCoreSchemeCheck:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_equal_and_compensated_certify(self, n):
        assert ts.core_scheme_check(ts.builtin_scheme("ses"), n)
        assert ts.core_scheme_check(ts.builtin_scheme("scs"), n)

    def test_proportional_does_not(self):
        assert not ts.core_scheme_check(ts.builtin_scheme("sps"), 5)

    def test_scheme_with_bad_sums(self):
        lopsided = ts.WeightScheme("lopsided", True, lambda m: lambda h, k, i: 1.0)
        assert ts.core_scheme_check(lopsided, 1)
        assert not ts.core_scheme_check(lopsided, 3)

    def test_certified_schemes_yield_core_members(self):
        for matrix in seeded_matrices(20):
            game = SegmentsGame(matrix)
            for name in ("ses", "scs"):
                shares = ts.family_allocate(matrix, ts.builtin_scheme(name))
                assert ts.core_check(game, shares).is_member
