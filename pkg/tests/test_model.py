"""Tests for the toll matrix data model, generators, and file round-trips."""

import math

import numpy as np
import pytest

import tollshare as ts
from tollshare import TollMatrix, Trip


class TestValidation:
    def test_dense_example_grid(self):
        grid = [[0.0, 1.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
        matrix = TollMatrix.from_dense(grid)
        assert matrix.n == 3
        assert matrix.total == 2.0
        assert matrix.toll(1, 2) == 1.0
        assert matrix.toll(2, 3) == 0.0

    def test_dense_all_zero(self):
        matrix = TollMatrix.from_dense(np.zeros((4, 4)))
        assert matrix.total == 0.0
        assert list(matrix.trips()) == []

    def test_dense_lower_triangular_nonzero(self):
        grid = [[0.0, 0.0], [1.0, 0.0]]
        with pytest.raises(ts.LowerTriangularNonzeroError) as err:
            TollMatrix.from_dense(grid)
        assert (err.value.entry, err.value.exit) == (2, 1)

    def test_dense_negative(self):
        with pytest.raises(ts.NegativeTollError):
            TollMatrix.from_dense([[-1.0]])

    def test_dense_non_finite(self):
        with pytest.raises(ts.NonFiniteError):
            TollMatrix.from_dense([[math.inf]])
        with pytest.raises(ts.NonFiniteError):
            TollMatrix.from_dense([[math.nan]])

    def test_dense_not_square(self):
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.from_dense([[0.0, 1.0]])

    def test_constructor_rejects_bad_trip(self):
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix(3, {(2, 1): 1.0})
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix(3, {(1, 4): 1.0})
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix(0, {})

    def test_zero_entries_are_dropped(self):
        matrix = TollMatrix(3, {(1, 2): 0.0, (1, 3): 1.0})
        assert len(list(matrix.trips())) == 1

    def test_entries_are_read_only(self):
        matrix = TollMatrix(2, {(1, 2): 1.0})
        with pytest.raises(TypeError):
            matrix.entries[Trip(1, 1)] = 5.0


class TestTriplets:
    def test_example_rows(self, example3):
        built = TollMatrix.from_triplets([(1, 2, 1.0), (1, 3, 1.0)], n=3)
        assert built == example3

    def test_empty_with_explicit_n(self):
        matrix = TollMatrix.from_triplets([], n=5)
        assert matrix.n == 5 and matrix.total == 0.0

    def test_empty_without_n(self):
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.from_triplets([])

    def test_duplicate_trip(self):
        with pytest.raises(ts.DuplicateTripError) as err:
            TollMatrix.from_triplets([(1, 2, 1.0), (1, 2, 2.0)])
        assert (err.value.entry, err.value.exit) == (1, 2)

    def test_n_inferred_from_max_exit(self):
        assert TollMatrix.from_triplets([(2, 4, 1.0)]).n == 4

    def test_out_of_range(self):
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.from_triplets([(0, 2, 1.0)])
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.from_triplets([(3, 2, 1.0)])
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.from_triplets([(1, 4, 1.0)], n=3)


class TestAlgebra:
    def test_total_is_additive(self):
        a = ts.random_matrix(6, density=0.5, seed=1)
        b = ts.random_matrix(6, density=0.8, seed=2)
        assert (a + b).total == pytest.approx(a.total + b.total, abs=1e-12)

    def test_add_requires_same_size(self):
        with pytest.raises(ts.SegmentIndexError):
            TollMatrix.zero(2) + TollMatrix.zero(3)

    def test_scaled(self):
        matrix = TollMatrix(2, {(1, 2): 3.0})
        assert matrix.scaled(2.0).toll(1, 2) == 6.0
        assert matrix.scaled(0.0).total == 0.0
        with pytest.raises(ts.NegativeTollError):
            matrix.scaled(-1.0)

    def test_involvement(self, example3):
        assert example3.involvement(1) == 2.0
        assert example3.involvement(2) == 2.0
        assert example3.involvement(3) == 1.0

    def test_unit_and_diagonal(self):
        unit = TollMatrix.unit(2, 3, 4)
        assert ts.is_unit_matrix(unit)
        assert not ts.is_unit_matrix(unit.scaled(2.0))
        assert not ts.is_unit_matrix(TollMatrix.zero(3))
        diag = TollMatrix(3, {(1, 1): 2.0, (3, 3): 1.0})
        assert list(diag.diagonal()) == [2.0, 0.0, 1.0]

    def test_inessential_segments(self):
        matrix = TollMatrix(4, {(1, 2): 1.0, (4, 4): 1.0})
        assert ts.inessential_segments(matrix) == [3]


class TestRandomGenerators:
    def test_deterministic_in_seed(self):
        a = ts.random_matrix(5, density=1.0, max_toll=10.0, seed=7)
        b = ts.random_matrix(5, density=1.0, max_toll=10.0, seed=7)
        assert a == b
        assert a != ts.random_matrix(5, density=1.0, max_toll=10.0, seed=8)

    def test_single_segment(self):
        matrix = ts.random_matrix(1, density=1.0, max_toll=1.0, seed=0)
        toll = matrix.toll(1, 1)
        assert 0.0 < toll <= 1.0

    def test_values_in_range(self):
        matrix = ts.random_matrix(6, density=1.0, max_toll=5.0, seed=3)
        assert all(0.0 < t <= 5.0 for _, t in matrix.trips())
        assert len(list(matrix.trips())) == 21

    def test_invalid_density(self):
        with pytest.raises(ts.InvalidDensityError):
            ts.random_matrix(3, density=0.0, seed=0)
        with pytest.raises(ts.InvalidDensityError):
            ts.random_matrix(3, density=1.5, seed=0)

    def test_block_structure_forces_zeros(self):
        matrix = ts.block_structured_matrix([{1, 2}, {3}], seed=11)
        assert matrix.toll(1, 3) == 0.0
        assert matrix.toll(2, 3) == 0.0

    def test_single_block_is_unconstrained_shape(self):
        matrix = ts.block_structured_matrix([range(1, 5)], seed=2, density=1.0)
        assert len(list(matrix.trips())) == 10

    def test_bad_blocks(self):
        with pytest.raises(ts.BlocksNotPartitionError):
            ts.block_structured_matrix([{1, 3}], seed=0)
        with pytest.raises(ts.BlocksNotPartitionError):
            ts.block_structured_matrix([{1, 2}, {2, 3}], seed=0)
        with pytest.raises(ts.BlocksNotPartitionError):
            ts.block_structured_matrix([{1, 2}, {4}], seed=0)


class TestRoundTrips:
    def test_triplet_csv(self, tmp_path):
        matrix = ts.random_matrix(7, density=0.4, seed=42)
        path = tmp_path / "m.csv"
        ts.write_triplet_csv(matrix, path)
        assert ts.read_triplet_csv(path, n=7) == matrix

    def test_triplet_csv_needs_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2,3.0\n")
        with pytest.raises(ts.TollValidationError):
            ts.read_triplet_csv(path)

    def test_dense_csv(self, tmp_path):
        matrix = ts.random_matrix(5, density=0.6, seed=9)
        path = tmp_path / "m.csv"
        ts.write_dense_csv(matrix, path)
        assert ts.read_dense_csv(path) == matrix

    def test_json(self, tmp_path):
        matrix = ts.random_matrix(6, density=0.5, seed=13)
        path = tmp_path / "m.json"
        ts.write_json(matrix, path)
        assert ts.read_json(path) == matrix

    def test_segments_override(self, tmp_path, example3):
        path = tmp_path / "m.csv"
        ts.write_triplet_csv(example3, path)
        widened = ts.read_triplet_csv(path, n=5)
        assert widened.n == 5
        assert widened.total == example3.total
