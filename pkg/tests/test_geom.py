import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import lattice_points
from oracles import area_2d, extreme_points, hull_2d, in_convex_hull, scipy_volume, shoelace
from detmaps.geom import (
    MAX_DIM,
    GeometryError,
    LatticePolytope,
    ResourceError,
    cube,
    embed,
    format_polytope,
    hull_vertices,
    integer_det,
    linear_image,
    minkowski_sum,
    newton_polytope,
    parse_polytope,
    project,
    scale,
    simplex,
    translate,
    volume,
)
from detmaps.poly import VarContext, parse_poly

S2 = simplex(2)
HEX_GEN = LatticePolytope.from_points([(1, 1), (1, 0), (0, 1)])


def verts(P):
    return set(P.vertices)


class TestNewton:
    def test_symbol_entry(self):
        c = VarContext(("x1", "x2", "y1", "y2"))
        P = newton_polytope(parse_poly("1 - x1*y1", c))
        assert verts(P) == {(0, 0, 0, 0), (1, 0, 1, 0)}

    def test_simplex(self):
        c = VarContext(("x1", "x2"))
        assert newton_polytope(parse_poly("x1 + x2 + 1", c)) == S2

    def test_triangle(self):
        c = VarContext(("x1", "x2"))
        assert verts(newton_polytope(parse_poly("x1*x2 + x1 + x2", c))) == {(1, 1), (1, 0), (0, 1)}

    def test_zero(self):
        with pytest.raises(GeometryError):
            newton_polytope(parse_poly("0", VarContext(("x1",))))


class TestHull:
    def test_duplicates(self):
        assert set(hull_vertices([(0, 0), (1, 0), (0, 1), (0, 0), (1, 0)])) == verts(S2)

    def test_midpoint(self):
        assert set(hull_vertices([(0, 0), (2, 0), (1, 0)])) == {(0, 0), (2, 0)}

    def test_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            hull_vertices([(0, 0), (1, 0, 0)])

    @pytest.mark.parametrize("seed", range(5))
    def test_random_3d_against_lp(self, seed):
        rng = random.Random(seed)
        pts = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(20)]
        V = set(hull_vertices(pts))
        assert V == extreme_points(pts)
        for q in set(pts) - V:
            assert in_convex_hull(q, sorted(V))

    def test_lower_dimensional_in_space(self):
        pts = [(0, 0, 0), (2, 2, 2), (1, 1, 1), (0, 2, 0), (1, 2, 1)]
        assert set(hull_vertices(pts)) == {(0, 0, 0), (2, 2, 2), (0, 2, 0)}

    @given(lattice_points(3, max_size=8))
    def test_idempotent(self, pts):
        V = hull_vertices(pts)
        assert sorted(hull_vertices(V)) == sorted(V)

    @given(lattice_points(2, max_size=10))
    def test_planar_vertices_against_monotone_chain(self, pts):
        assert set(hull_vertices(pts)) == set(hull_2d(pts))

    def test_caps(self):
        with pytest.raises(ResourceError):
            LatticePolytope.from_points([(0,) * (MAX_DIM + 1)])


class TestMinkowski:
    def test_simplex_doubling(self):
        assert minkowski_sum(S2, S2) == scale(S2, 2)

    def test_square(self):
        a = LatticePolytope.from_points([(0, 0), (1, 0)])
        b = LatticePolytope.from_points([(0, 0), (0, 1)])
        assert minkowski_sum(a, b) == cube(2)

    def test_point_translates(self):
        t = LatticePolytope.from_points([(3, -1)])
        assert minkowski_sum(HEX_GEN, t) == translate(HEX_GEN, (3, -1))

    def test_dimension_mismatch(self):
        with pytest.raises(GeometryError):
            minkowski_sum(S2, simplex(3))

    @given(lattice_points(2), lattice_points(2), lattice_points(2))
    def test_commutative_associative(self, a, b, c):
        A, B, C = (LatticePolytope.from_points(x) for x in (a, b, c))
        assert A + B == B + A
        assert (A + B) + C == A + (B + C)


class TestScaleEmbed:
    def test_scale(self):
        assert verts(scale(S2, 3)) == {(0, 0), (3, 0), (0, 3)}
        assert scale(HEX_GEN, 1) == HEX_GEN
        assert verts(scale(HEX_GEN, 0)) == {(0, 0)}

    def test_embed(self):
        assert verts(embed(S2, 4, 0)) == {(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)}
        assert verts(embed(S2, 4, 2)) == {(0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}
        pt = LatticePolytope.from_points([(5,)])
        assert embed(pt, 3, 1).is_point()

    def test_embed_bounds(self):
        with pytest.raises(GeometryError):
            embed(S2, 3, 2)

    def test_project(self):
        assert project(embed(S2, 4, 2), [2, 3]) == S2


class TestVolume:
    def test_examples(self):
        assert volume(S2) == Fraction(1, 2)
        assert volume(cube(2)) == 1
        hexagon = minkowski_sum(S2, HEX_GEN)
        explicit = [(1, 0), (2, 0), (2, 1), (1, 2), (0, 2), (0, 1)]
        assert verts(hexagon) == set(explicit)
        assert volume(hexagon) == shoelace(explicit) == 3

    def test_flat_is_zero(self):
        assert volume(embed(S2, 3, 0)) == 0

    @pytest.mark.parametrize("d", range(1, 7))
    def test_simplex_and_cube(self, d):
        assert volume(simplex(d)) == Fraction(1, factorial(d))
        assert volume(cube(d)) == 1

    @given(lattice_points(2, min_size=3, max_size=8))
    def test_planar_area_against_shoelace(self, pts):
        assert volume(LatticePolytope.from_points(pts)) == area_2d(pts)

    @given(lattice_points(3, min_size=4, max_size=10), st.integers(0, 3))
    def test_scaling(self, pts, lam):
        P = LatticePolytope.from_points(pts)
        assert volume(scale(P, lam)) == lam ** 3 * volume(P)

    @given(lattice_points(3, min_size=4, max_size=10))
    def test_against_scipy(self, pts):
        assert float(volume(LatticePolytope.from_points(pts))) == pytest.approx(scipy_volume(pts), abs=1e-9)

    @given(lattice_points(3, min_size=4, max_size=8), st.integers(0, 10**6))
    def test_translation_and_unimodular_invariance(self, pts, seed):
        P = LatticePolytope.from_points(pts)
        rng = random.Random(seed)
        t = [rng.randint(-5, 5) for _ in range(3)]
        assert volume(translate(P, t)) == volume(P)
        U = random_unimodular(rng, 3)
        assert abs(integer_det(U)) == 1
        assert volume(linear_image(P, U)) == volume(P)

    def test_four_dimensional_against_scipy(self):
        rng = random.Random(7)
        pts = [tuple(rng.randint(-3, 3) for _ in range(4)) for _ in range(25)]
        assert float(volume(LatticePolytope.from_points(pts))) == pytest.approx(scipy_volume(pts))


def random_unimodular(rng: random.Random, d: int):
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(6):
        i, j = rng.sample(range(d), 2)
        c = rng.randint(-2, 2)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    if rng.random() < 0.5:
        U[0] = [-a for a in U[0]]
    return U


class TestLiterals:
    def test_round_trip(self):
        P = parse_polytope("{(0,0);(1,0);(0,1);(0,0)}")
        assert P == S2
        assert parse_polytope(format_polytope(P)) == P

    @pytest.mark.parametrize("bad", ["(0,0);(1,0)", "{}", "{(0,0);(1)}", "{(a,0)}", "{(0,0);1,0}"])
    def test_malformed(self, bad):
        with pytest.raises(GeometryError):
            parse_polytope(bad)
