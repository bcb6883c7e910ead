import math

import numpy as np
import pytest

from cutdepth.corner import (
    CornerData,
    build_corner,
    corner_cut_depth,
    standard_form_model,
)
from cutdepth.depth import DepthKind, cut_depth_standard_form
from cutdepth.polyhedron import Cut, shrink

SQ6 = math.sqrt(6.0)


def orthant(n):
    return build_corner(CornerData(np.zeros(0), np.zeros((0, n))))


class TestCornerData:
    def test_integral_base_point_rejected(self):
        with pytest.raises(ValueError):
            CornerData([1.0, 2.0], [[1.0, 0.0], [0.0, 1.0]])

    def test_empty_base_point_allowed(self):
        data = CornerData(np.zeros(0), np.zeros((0, 3)))
        assert data.num_basic == 0
        assert data.num_nonbasic == 3


class TestBuildCorner:
    def test_orthant(self):
        cone = orthant(2)
        np.testing.assert_allclose(cone.vertex, [0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(cone.depth_direction, [1.0, 1.0], atol=1e-12)

    def test_two_column_corner(self):
        cone = build_corner(CornerData([0.5], [[1.0, -1.0]]))
        np.testing.assert_allclose(cone.vertex, [0.5, 0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(
            cone.depth_direction, [0.0, 2.0 / SQ6, 2.0 / SQ6], atol=1e-12
        )

    def test_single_column_corner(self):
        cone = build_corner(CornerData([0.5], [[1.0]]))
        np.testing.assert_allclose(cone.vertex, [0.5, 0.0], atol=1e-12)
        np.testing.assert_allclose(
            cone.depth_direction, [math.sqrt(0.5), math.sqrt(0.5)], atol=1e-12
        )

    def test_invariants(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            m = int(rng.integers(1, 4))
            n = int(rng.integers(2, 5))
            data = _random_corner(rng, m, n)
            cone = build_corner(data)
            body = cone.body
            # all rows tight at the vertex
            tight = body.offsets - body.normals @ cone.vertex
            assert np.abs(tight).max() <= 1e-8
            # normals @ q = -1 and equalities @ q = 0
            np.testing.assert_allclose(
                body.normals @ cone.depth_direction, -np.ones(n), atol=1e-8
            )
            assert np.abs(body.space.A @ cone.depth_direction).max() <= 1e-8
            # q is a nonnegative combination of the rays: its s-part is the
            # coefficient vector
            s_part = cone.depth_direction[m:]
            assert s_part.min() >= -1e-7
            np.testing.assert_allclose(
                cone.rays @ s_part, cone.depth_direction, atol=1e-7
            )

    def test_shrunken_vertex_moves_linearly(self):
        cone = build_corner(CornerData([0.5], [[1.0, -1.0]]))
        for lam in (0.1, 1.0, 10.0):
            body = shrink(cone.body, lam)
            v = cone.vertex + lam * cone.depth_direction
            assert np.abs(body.offsets - body.normals @ v).max() <= 1e-8


class TestCornerCutDepth:
    def test_orthant_diagonal_cut(self):
        res = corner_cut_depth(orthant(2), Cut([1.0, 1.0], 1.0))
        assert res.kind == DepthKind.FINITE
        assert res.value == pytest.approx(0.5, abs=1e-12)
        np.testing.assert_allclose(res.point, [0.5, 0.5], atol=1e-12)

    def test_orthant_single_coordinate_cut(self):
        # the other axis ray is orthogonal to the cut, not decreasing on it
        res = corner_cut_depth(orthant(2), Cut([1.0, 0.0], 1.0))
        assert res.kind == DepthKind.FINITE
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_worked_example(self):
        cone = build_corner(CornerData([0.5], [[1.0, -1.0]]))
        res = corner_cut_depth(cone, Cut([2.0, 2.0], 1.0))
        assert res.kind == DepthKind.FINITE
        assert res.value == pytest.approx(SQ6 / 8.0, abs=1e-12)

    def test_decreasing_ray_unbounded(self):
        res = corner_cut_depth(orthant(2), Cut([-1.0, 0.0], 1.0))
        assert res.kind == DepthKind.UNBOUNDED
        assert res.ray is not None

    def test_vertex_past_cut_not_violated(self):
        res = corner_cut_depth(orthant(2), Cut([1.0, 1.0], -1.0))
        assert res.kind == DepthKind.NOT_VIOLATED

    def test_flat_direction_unbounded(self):
        # zero tableau row: the cut on the basic variable never tightens
        cone = build_corner(CornerData([0.5], [[0.0, 0.0]]))
        res = corner_cut_depth(cone, Cut([1.0, 0.0, 0.0], 1.0))
        assert res.kind == DepthKind.UNBOUNDED

    def test_full_space_cut_accepted(self):
        cone = build_corner(CornerData([0.5], [[1.0, -1.0]]))
        res = corner_cut_depth(cone, Cut([0.0, 2.0, 2.0], 1.0))
        assert res.value == pytest.approx(SQ6 / 8.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            corner_cut_depth(orthant(2), Cut([1.0, 0.0, 0.0, 0.0], 1.0))


class TestAgainstDepthLp:
    def test_random_corners_agree(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            m = int(rng.integers(1, 5))
            n = int(rng.integers(2, 7))
            data = _random_corner(rng, m, n)
            cone = build_corner(data)
            cut = _valid_cut(rng, data)
            closed = corner_cut_depth(cone, cut)
            full = Cut(np.concatenate([np.zeros(m), cut.coeffs]), cut.rhs)
            via_lp = cut_depth_standard_form(standard_form_model(data), full)
            assert closed.kind == via_lp.kind
            if closed.kind == DepthKind.FINITE:
                assert closed.value == pytest.approx(via_lp.value, abs=1e-7)


def _random_corner(rng, m, n):
    while True:
        tableau = rng.integers(-16, 17, (m, n)) / 8.0
        base = rng.integers(-16, 17, m) / 8.0
        frac = np.abs(base - np.round(base)) > 1e-9
        rows_ok = frac & (np.abs(tableau).max(axis=1) > 0)
        if rows_ok.any():
            return CornerData(base, tableau)


def _valid_cut(rng, data):
    """Single-row rounding cut: valid for the corner's mixed-integer set."""
    frac = np.abs(data.base_point - np.round(data.base_point)) > 1e-9
    rows = np.nonzero(frac & (np.abs(data.tableau).max(axis=1) > 0))[0]
    i = int(rng.choice(rows))
    f = data.base_point[i] - math.floor(data.base_point[i])
    r = data.tableau[i]
    coeffs = np.where(r >= 0, r / (1.0 - f), -r / f)
    return Cut(coeffs, 1.0)
