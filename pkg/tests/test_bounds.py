import math

import numpy as np
import pytest

from cutdepth.bounds import (
    Disjunction,
    integer_hull_depth_bound,
    integer_hull_depth_bound_weak,
    intersection_cut_bound,
    lattice_integer_hull_bound,
    split_depth_bound,
    split_point_depth_bound,
    steepest_edge_lengths,
)
from cutdepth.corner import CornerData, build_corner, corner_cut_depth
from cutdepth.depth import DepthKind
from cutdepth.errors import (
    AllZeroAlpha,
    DimensionTooSmall,
    OnDisjunctionBoundary,
    RankDeficientBasis,
)
from cutdepth.polyhedron import AffineSpace


class TestSplitDepthBound:
    def test_full_space_diagonal(self):
        b = split_depth_bound(AffineSpace.full_space(2), Disjunction([1, 1], 0))
        assert b.value == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)

    def test_unit_direction_gives_one(self):
        for n in (2, 3, 6):
            pi = np.zeros(n, dtype=int)
            pi[0] = 1
            b = split_depth_bound(AffineSpace.full_space(n), Disjunction(pi, 0))
            assert b.value == pytest.approx(1.0, abs=1e-15)

    def test_covers_hull(self):
        space = AffineSpace([[1.0, 1.0]], [0.0])
        b = split_depth_bound(space, Disjunction([1, 1], 0))
        assert b.is_covers_hull

    def test_full_space_equals_inverse_norm_exactly(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            pi = rng.integers(-3, 4, n)
            if not pi.any():
                continue
            b = split_depth_bound(AffineSpace.full_space(n), Disjunction(pi, 0))
            assert b.value == 1.0 / np.linalg.norm(pi.astype(float))


class TestSplitPointDepthBound:
    def test_simple_fraction(self):
        space = AffineSpace.full_space(2)
        d = Disjunction([1, 0], 2)
        v = split_point_depth_bound(space, d, [2.3, 9.0])
        assert v == pytest.approx(0.7, abs=1e-12)

    def test_scaled_disjunction(self):
        space = AffineSpace.full_space(2)
        v = split_point_depth_bound(space, Disjunction([2, 1], 0), [0.25, 0.0])
        assert v == pytest.approx(0.5 / math.sqrt(5.0), abs=1e-12)

    def test_symmetric_fraction(self):
        space = AffineSpace.full_space(2)
        v = split_point_depth_bound(space, Disjunction([1, 0], 0), [0.5, 0.0])
        assert v == pytest.approx(0.5, abs=1e-12)

    def test_integral_value_refused(self):
        space = AffineSpace.full_space(2)
        with pytest.raises(OnDisjunctionBoundary):
            split_point_depth_bound(space, Disjunction([1, 0], 0), [2.0, 0.3])

    def test_orthogonal_disjunction_is_unbounded(self):
        space = AffineSpace([[1.0, 1.0]], [0.5])
        v = split_point_depth_bound(space, Disjunction([1, 1], 0), [0.25, 0.25])
        assert v == math.inf


class TestDisjunction:
    def test_non_integer_rejected(self):
        with pytest.raises(ValueError):
            Disjunction([0.5, 1.0], 0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Disjunction([0, 0], 1)


class TestIntersectionCutBound:
    def test_two_columns(self):
        v = intersection_cut_bound([[1.0, -1.0]], [2.0, 2.0])
        assert v == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-12)

    def test_only_positive_coefficients_eligible(self):
        v = intersection_cut_bound([[1.0, 0.0], [0.0, 2.0]], [0.0, 4.0])
        assert v == pytest.approx(math.sqrt(5.0) / 4.0, abs=1e-12)

    def test_zero_tableau(self):
        v = intersection_cut_bound(np.zeros((1, 1)), [1.0])
        assert v == pytest.approx(1.0, abs=1e-15)

    def test_all_zero_coeffs(self):
        with pytest.raises(AllZeroAlpha):
            intersection_cut_bound([[1.0, 2.0]], [0.0, 0.0])

    def test_negative_coeffs_rejected(self):
        with pytest.raises(ValueError):
            intersection_cut_bound([[1.0, 2.0]], [1.0, -1.0])

    def test_edge_lengths(self):
        lengths = steepest_edge_lengths([[1.0, 0.0], [0.0, 2.0]])
        np.testing.assert_allclose(lengths, [math.sqrt(2.0), math.sqrt(5.0)])

    def test_dominates_corner_cut_depth(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            m = int(rng.integers(1, 4))
            n = int(rng.integers(2, 6))
            while True:
                tableau = rng.integers(-16, 17, (m, n)) / 8.0
                base = rng.integers(-16, 17, m) / 8.0
                frac = np.abs(base - np.round(base)) > 1e-9
                ok = frac & (np.abs(tableau).max(axis=1) > 0)
                if ok.any():
                    break
            i = int(np.nonzero(ok)[0][0])
            f = base[i] - math.floor(base[i])
            r = tableau[i]
            coeffs = np.where(r >= 0, r / (1.0 - f), -r / f)
            cone = build_corner(CornerData(base, tableau))
            from cutdepth.polyhedron import Cut

            res = corner_cut_depth(cone, Cut(coeffs, 1.0))
            assert res.kind == DepthKind.FINITE
            assert res.value <= intersection_cut_bound(tableau, coeffs) + 1e-7


class TestIntegerHullBounds:
    def test_values(self):
        assert integer_hull_depth_bound(2) == pytest.approx(math.sqrt(1.5), abs=1e-12)
        assert integer_hull_depth_bound(3) == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert integer_hull_depth_bound(4) == pytest.approx(math.sqrt(2.5), abs=1e-12)

    def test_weak_bound(self):
        assert integer_hull_depth_bound_weak(3) == pytest.approx(math.sqrt(3.0), abs=1e-12)

    def test_strong_dominates_weak(self):
        for n in range(2, 65):
            assert integer_hull_depth_bound(n) <= integer_hull_depth_bound_weak(n)
            # exact integer comparison underlying the two radicands
            assert n + 1 <= 2 * n

    def test_too_small(self):
        with pytest.raises(DimensionTooSmall):
            integer_hull_depth_bound(1)


class TestLatticeBound:
    def test_identity_reduces_to_dimensional_bound(self):
        assert lattice_integer_hull_bound(np.eye(2)) == pytest.approx(
            math.sqrt(1.5), abs=1e-9
        )

    def test_scaled_identity(self):
        assert lattice_integer_hull_bound(2.0 * np.eye(2)) == pytest.approx(
            2.0 * math.sqrt(1.5), abs=1e-9
        )

    def test_shear_basis(self):
        lam = (3.0 + math.sqrt(5.0)) / 2.0
        expected = math.sqrt(lam) * math.sqrt(1.5)
        got = lattice_integer_hull_bound([[1.0, 1.0], [0.0, 1.0]])
        assert got == pytest.approx(expected, abs=1e-7)
        assert got == pytest.approx(1.98167, abs=1e-5)

    def test_rank_deficient(self):
        with pytest.raises(RankDeficientBasis):
            lattice_integer_hull_bound([[1.0, 1.0], [2.0, 2.0]])

    def test_too_small(self):
        with pytest.raises(DimensionTooSmall):
            lattice_integer_hull_bound([[1.0], [0.0]])
