import math
from fractions import Fraction

import pytest

from diampart.geometry import (
    BarycentricPoint,
    Homothet,
    Norm,
    Simplex,
    VPolytope,
    apply_homothet,
    barycentric_coords,
    centroid,
    circumradius,
    cross_polytope,
    cube,
    diameter_finite,
    dual_exponent,
    gauge_eval,
    minkowski_symmetry,
    pnorm_eval,
    point_in_vpolytope,
    polytope_diameter,
    vsub,
)
from diampart.numbers import INF

F = Fraction


def regular_tetrahedron_edge1():
    s = 1.0 / (2.0 * math.sqrt(2.0))
    pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return Simplex(tuple(tuple(s * c for c in p) for p in pts))


class TestPNorm:
    def test_euclidean(self):
        assert pnorm_eval((1, 1, 4), 2) == pytest.approx(math.sqrt(18), rel=1e-12)

    def test_l1_exact(self):
        assert pnorm_eval((-2, 8, -2), 1) == 12

    def test_linf_exact(self):
        assert pnorm_eval((4, 4, 4), INF) == 4

    def test_halving_identity(self):
        for p in (1, 1.3, 2, 3.7, INF):
            lhs = pnorm_eval((-2, 8, -2), p)
            rhs = 2 * pnorm_eval((1, 1, 4), p)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_p_below_one_rejected(self):
        with pytest.raises(ValueError):
            pnorm_eval((1, 2), 0.5)

    def test_large_p_stable(self):
        # naive powering overflows; the scaled evaluation must not
        v = pnorm_eval((3.0, 1.0, 3.0), 800.0)
        assert v == pytest.approx(3.0, rel=1e-3)


class TestDualExponent:
    def test_basics(self):
        assert dual_exponent(2) == 2
        assert dual_exponent(1) == INF
        assert dual_exponent(INF) == 1
        assert dual_exponent(4) == F(4, 3)

    def test_involution(self):
        for p in (F(3, 2), F(5, 4), 3):
            assert dual_exponent(dual_exponent(p)) == p


class TestGauge:
    def test_vertex_has_gauge_one(self):
        body = cross_polytope(3)
        for v in body.vertices:
            assert gauge_eval(v, body) == 1

    def test_zero(self):
        assert gauge_eval((0, 0, 0), cube(3)) == 0

    def test_cube_gauge_is_linf(self):
        g = gauge_eval((1, -2, 0.5), cube(3))
        assert g == pytest.approx(2, abs=1e-9)
        g2 = gauge_eval((1, -2, F(1, 2)), cube(3))
        assert g2 == 2

    def test_asymmetric_body_rejected(self):
        with pytest.raises(ValueError):
            Norm.gauge([(1, 0), (0, 1), (-1, -1)])

    def test_flat_body_rejected(self):
        with pytest.raises(ValueError):
            Norm.gauge([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)])


class TestDiameter:
    def test_cube_linf(self):
        assert diameter_finite(cube(3).vertices, Norm.lp(INF)) == 2

    def test_cross_section_square(self):
        pts = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        d = diameter_finite(pts, Norm.lp(2))
        assert d == pytest.approx(2.0)

    def test_triangle_with_midpoints(self):
        a, b, c = (0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)
        mids = [
            tuple((x + y) / 2 for x, y in zip(a, b)),
            tuple((x + y) / 2 for x, y in zip(b, c)),
            tuple((x + y) / 2 for x, y in zip(a, c)),
        ]
        n2 = Norm.lp(2)
        for i in range(3):
            for j in range(i + 1, 3):
                d = pnorm_eval(vsub(mids[i], mids[j]), 2)
                assert d == pytest.approx(0.5, rel=1e-12)
        assert diameter_finite([a, b, c] + mids, n2) == pytest.approx(1.0)

    def test_single_point(self):
        assert diameter_finite([(1, 2, 3)], Norm.lp(1)) == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            diameter_finite([], Norm.lp(2))

    def test_cube_l1(self):
        assert polytope_diameter(cube(3), Norm.lp(1)) == 6

    def test_homothety_scaling_exact(self):
        P = VPolytope(((0, 0), (1, 0), (F(1, 3), F(3, 4))))
        lam = F(-5, 7)
        Q = P.scale(lam).translate((F(1, 9), 2))
        for norm in (Norm.lp(1), Norm.lp(INF)):
            assert polytope_diameter(Q, norm) == abs(lam) * polytope_diameter(P, norm)


class TestBarycentric:
    def setup_method(self):
        self.T = Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def test_centroid(self):
        g = centroid(self.T.vertices)
        assert barycentric_coords(self.T, g) == (F(1, 4),) * 4

    def test_vertex(self):
        assert barycentric_coords(self.T, (1, 0, 0)) == (0, 1, 0, 0)

    def test_roundtrip_exact(self):
        lam = BarycentricPoint((F(1, 7), F(2, 7), F(3, 7), F(1, 7)))
        x = lam.realize(self.T)
        assert barycentric_coords(self.T, x) == lam.lambdas

    def test_outside_gives_signed(self):
        lam = barycentric_coords(self.T, (2, 0, 0))
        assert min(lam) < 0
        assert sum(lam) == 1

    def test_degenerate_simplex_rejected(self):
        with pytest.raises(ValueError):
            Simplex(((0, 0), (1, 0), (2, 0)))

    def test_barycentric_point_validation(self):
        with pytest.raises(ValueError):
            BarycentricPoint((F(1, 2), F(3, 4)))
        with pytest.raises(ValueError):
            BarycentricPoint((F(3, 2), F(-1, 2)))


class TestContainment:
    def test_vertices_and_centroid(self):
        P = cube(3)
        for v in P.vertices:
            assert point_in_vpolytope(P, v)
        assert point_in_vpolytope(P, (0, 0, 0))

    def test_just_outside(self):
        assert not point_in_vpolytope(cube(3), (1.0001, 0.0, 0.0))

    def test_exact_boundary(self):
        assert point_in_vpolytope(cube(3), (1, 1, F(1, 3)), mode="exact")


class TestCircumradius:
    def test_cube_linf(self):
        res = circumradius(cube(3), Norm.lp(INF))
        assert res.radius == 1
        assert res.center == (0, 0, 0)
        assert res.certified

    def test_unpacks(self):
        R, c = circumradius(cube(2), Norm.lp(INF))
        assert R == 1 and c == (0, 0)

    def test_cross_polytope_l1(self):
        res = circumradius(cross_polytope(3), Norm.lp(1))
        assert res.radius == 1
        assert res.certified

    def test_regular_tetrahedron_l2(self):
        res = circumradius(regular_tetrahedron_edge1(), Norm.lp(2))
        assert res.radius == pytest.approx(math.sqrt(3.0 / 8.0), rel=1e-9)
        for v in regular_tetrahedron_edge1().vertices:
            d = pnorm_eval(vsub(v, res.center), 2)
            assert d <= res.radius + 1e-9

    def test_degenerate_rejected(self):
        flat = VPolytope(((0, 0, 0), (1, 0, 0), (0, 1, 0)))
        with pytest.raises(ValueError):
            circumradius(flat, Norm.lp(2))

    def test_gauge_norm(self):
        T = Simplex(((0, 0), (1, 0), (0, 1)))
        res = circumradius(T.as_polytope(), Norm.gauge(cube(2)))
        # under l_inf the optimal center is (1/2, 1/2) with radius 1/2
        assert res.radius == F(1, 2)
        assert res.certified


class TestSymmetry:
    def test_cube_symmetric(self):
        assert minkowski_symmetry(cube(2)) == 1

    def test_triangle(self):
        T = Simplex(((0, 0), (1, 0), (0, 1)))
        s = minkowski_symmetry(T)
        assert s == 2

    def test_tetrahedron(self):
        T = Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
        s = minkowski_symmetry(T)
        assert s == 3

    def test_range_invariant(self):
        P = VPolytope(((0, 0), (2, 0), (1, 3), (-1, 1)))
        s = minkowski_symmetry(P)
        assert 1 <= s <= 2

    def test_completeness_identity_for_cube(self):
        # for the cube under l_inf: s = 1 and R/d = 1/2, s = (R/d)/(1-R/d)
        P = cube(3)
        s = minkowski_symmetry(P)
        R = circumradius(P, Norm.lp(INF)).radius
        d = polytope_diameter(P, Norm.lp(INF))
        ratio = F(R) / F(d)
        assert s == ratio / (1 - ratio) == 1


class TestHomothet:
    def test_identity(self):
        P = cube(2)
        H = Homothet(1, (0, 0), P)
        assert apply_homothet(H).vertices == P.vertices

    def test_vertex_piece(self):
        T = Simplex(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
        v1 = T.vertices[1]
        H = Homothet(F(9, 16), tuple(F(7, 16) * c for c in v1), T)
        img = apply_homothet(H)
        assert img.vertices[1] == v1  # fixed point of the homothety
        assert polytope_diameter(img, Norm.lp(1)) == F(9, 16) * polytope_diameter(
            T.as_polytope(), Norm.lp(1)
        )

    def test_negative_ratio_diameter(self):
        P = cube(2)
        H = Homothet(F(-3, 4), (5, 5), P)
        assert polytope_diameter(apply_homothet(H), Norm.lp(INF)) == F(3, 2)

    def test_compose(self):
        P = cube(2)
        H1 = Homothet(F(1, 2), (1, 0), P)
        H2 = Homothet(F(-3, 4), (0, 1), P)
        both = H2.compose(H1)
        direct = [H2.apply_point(H1.apply_point(v)) for v in P.vertices]
        assert apply_homothet(both).vertices == tuple(direct)

    def test_zero_ratio_rejected(self):
        with pytest.raises(ValueError):
            Homothet(0, (0, 0), cube(2))
