"""Distance matrix construction and classical MDS projection."""

import numpy as np
import pytest

from chronolex.errors import DimensionMismatch, EmptyInput, KeyMismatch
from chronolex.mds import (
    PointKey,
    classical_mds,
    distance_matrix,
    evaluate_stress,
)

from oracles import (
    procrustes_rmse,
    reference_classical_mds,
    reference_stress,
)


def keys(n):
    return [PointKey(i, 0) for i in range(n)]


def dm(vectors):
    ks = keys(len(vectors))
    return distance_matrix([(k, np.asarray(v, dtype=float)) for k, v in zip(ks, vectors)])


class TestDistanceMatrix:
    def test_three_four_five(self):
        matrix = dm([[0.0, 0.0], [3.0, 4.0]])
        assert np.array_equal(matrix.flat, [[0.0, 5.0], [5.0, 0.0]])

    def test_identical_vectors(self):
        matrix = dm([[1.0, 2.0], [1.0, 2.0]])
        assert matrix.flat[0, 1] == 0.0

    def test_one_dimensional_points(self):
        matrix = dm([[0.0], [1.0], [3.0]])
        assert matrix.flat[0, 2] == 3.0
        assert matrix.flat[0, 1] == 1.0
        assert matrix.flat[1, 2] == 2.0

    def test_exact_symmetry_and_zero_diagonal(self):
        rng = np.random.default_rng(0)
        matrix = dm(list(rng.normal(size=(40, 7))))
        assert np.array_equal(matrix.flat, matrix.flat.T)
        assert np.all(np.diag(matrix.flat) == 0.0)
        assert np.all(matrix.flat >= 0.0)
        assert np.all(np.isfinite(matrix.flat))

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            distance_matrix([])

    def test_ragged_rejected(self):
        with pytest.raises(DimensionMismatch):
            distance_matrix(
                [(PointKey(0, 0), np.zeros(2)), (PointKey(1, 0), np.zeros(3))]
            )

    def test_single_point(self):
        matrix = dm([[1.0, 2.0]])
        assert matrix.flat.shape == (1, 1)
        assert matrix.flat[0, 0] == 0.0

    def test_rigid_transform_leaves_distances_unchanged(self):
        rng = np.random.default_rng(1)
        points = rng.normal(size=(12, 3))
        theta = 0.7
        rot = np.array(
            [
                [np.cos(theta), -np.sin(theta), 0.0],
                [np.sin(theta), np.cos(theta), 0.0],
                [0.0, 0.0, 1.0],
            ]
        )
        moved = points @ rot.T + np.array([5.0, -2.0, 0.5])
        a = dm(list(points))
        b = dm(list(moved))
        np.testing.assert_allclose(b.flat, a.flat, atol=1e-12, rtol=0)


class TestClassicalMds:
    def test_collinear_distances_recovered(self):
        # points on a line at mutual distances {1, 2, 3}
        matrix = dm([[0.0], [1.0], [3.0]])
        result = classical_mds(matrix)
        coords = np.array([result.coords[k] for k in matrix.keys])
        out = np.sqrt(((coords[:, None, :] - coords[None, :, :]) ** 2).sum(-1))
        np.testing.assert_allclose(out, matrix.flat, atol=1e-8, rtol=0)
        # effectively one-dimensional output
        assert result.eigenvalues[1] <= 1e-8 * result.eigenvalues[0]
        # independent double-centering oracle agrees on the spectrum
        _, ref_eigs = reference_classical_mds(matrix.flat)
        np.testing.assert_allclose(result.eigenvalues, ref_eigs, atol=1e-9, rtol=0)
        # top eigenvalue is the centered squared norm 14/3 (hand computed)
        assert abs(result.eigenvalues[0] - 14.0 / 3.0) < 1e-9

    def test_recovery_matches_oracle_coordinates(self):
        rng = np.random.default_rng(8)
        points = rng.uniform(-3, 3, size=(15, 2))
        matrix = dm(list(points))
        result = classical_mds(matrix)
        got = np.array([result.coords[k] for k in matrix.keys])
        ref_coords, _ = reference_classical_mds(matrix.flat)
        assert procrustes_rmse(got, ref_coords) < 1e-9

    def test_single_point_at_origin(self):
        matrix = dm([[4.0, 5.0, 6.0]])
        result = classical_mds(matrix)
        assert result.coords[PointKey(0, 0)] == (0.0, 0.0)
        assert result.stress == 0.0

    def test_coincident_points_all_at_origin(self):
        matrix = dm([[1.0, 1.0]] * 3)
        result = classical_mds(matrix)
        for key in matrix.keys:
            assert result.coords[key] == (0.0, 0.0)
        assert result.stress == 0.0

    def test_two_points(self):
        matrix = dm([[0.0], [5.0]])
        result = classical_mds(matrix)
        coords = np.array([result.coords[k] for k in matrix.keys])
        assert abs(np.linalg.norm(coords[0] - coords[1]) - 5.0) < 1e-9

    def test_output_centered(self):
        rng = np.random.default_rng(2)
        points = rng.uniform(0, 10, size=(30, 2))
        matrix = dm(list(points))
        result = classical_mds(matrix)
        coords = np.array([result.coords[k] for k in matrix.keys])
        diameter = matrix.flat.max()
        assert np.all(np.abs(coords.mean(axis=0)) <= 1e-9 * diameter)

    def test_sign_convention_first_nonzero_loading_positive(self):
        rng = np.random.default_rng(3)
        points = rng.normal(size=(10, 2))
        matrix = dm(list(points))
        result = classical_mds(matrix)
        coords = np.array([result.coords[k] for k in matrix.keys])
        for axis in range(2):
            column = coords[:, axis]
            nonzero = column[column != 0.0]
            if nonzero.size:
                assert nonzero[0] > 0.0

    def test_deterministic_bitwise(self):
        rng = np.random.default_rng(4)
        points = rng.normal(size=(25, 6))
        matrix = dm(list(points))
        a = classical_mds(matrix)
        b = classical_mds(matrix)
        assert a.coords == b.coords
        assert a.eigenvalues.tobytes() == b.eigenvalues.tobytes()
        assert a.stress == b.stress

    def test_eigenvalues_descending_full_spectrum(self):
        rng = np.random.default_rng(5)
        matrix = dm(list(rng.normal(size=(9, 4))))
        result = classical_mds(matrix)
        assert len(result.eigenvalues) == 9
        assert np.all(np.diff(result.eigenvalues) <= 1e-12)

    def test_pads_extra_axes_with_zeros(self):
        # two points span one dimension; the second output axis must be zero
        matrix = dm([[0.0], [5.0]])
        result = classical_mds(matrix)
        coords = np.array([result.coords[k] for k in matrix.keys])
        assert np.all(coords[:, 1] == 0.0)

    def test_psd_up_to_noise_on_genuine_vectors(self):
        rng = np.random.default_rng(6)
        matrix = dm(list(rng.normal(size=(50, 8))))
        result = classical_mds(matrix)
        lam_max = result.eigenvalues[0]
        assert np.all(result.eigenvalues >= -1e-8 * lam_max)


class TestStress:
    def test_perfect_recovery_near_zero(self):
        rng = np.random.default_rng(7)
        points = rng.uniform(-1, 1, size=(20, 2))
        matrix = dm(list(points))
        result = classical_mds(matrix)
        scale = float(np.sum(matrix.flat**2))
        assert result.stress <= 1e-12 * scale

    def test_two_point_hand_value(self):
        matrix = dm([[0.0], [5.0]])
        coords = {PointKey(0, 0): (0.0, 0.0), PointKey(1, 0): (3.0, 0.0)}
        assert evaluate_stress(coords, matrix) == 8.0  # 2 * (3-5)^2

    def test_coincident_against_unit_distance(self):
        matrix = dm([[0.0], [1.0]])
        coords = {PointKey(0, 0): (0.0, 0.0), PointKey(1, 0): (0.0, 0.0)}
        assert evaluate_stress(coords, matrix) == 2.0

    def test_key_mismatch(self):
        matrix = dm([[0.0], [5.0]])
        with pytest.raises(KeyMismatch):
            evaluate_stress({PointKey(9, 9): (0.0, 0.0)}, matrix)

    def test_matches_loop_reference(self):
        rng = np.random.default_rng(9)
        points = rng.normal(size=(8, 3))
        matrix = dm(list(points))
        coords2d = rng.normal(size=(8, 2))
        coord_map = {k: tuple(coords2d[i]) for i, k in enumerate(matrix.keys)}
        got = evaluate_stress(coord_map, matrix)
        want = reference_stress(coords2d, np.asarray(matrix.flat))
        assert abs(got - want) <= 1e-9 * max(1.0, want)


class TestRecoveryProperty:
    def test_procrustes_recovery_2d(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            m = int(rng.integers(3, 60))
            points = rng.uniform(-5, 5, size=(m, 2))
            matrix = dm(list(points))
            result = classical_mds(matrix)
            coords = np.array([result.coords[k] for k in matrix.keys])
            diameter = matrix.flat.max()
            if diameter == 0.0:
                continue
            assert procrustes_rmse(coords, points) <= 1e-8 * diameter
