import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_form
from oracles import projective_points_bruteforce, vanishing_count_bruteforce
from detmaps.detmap import tau_matrix
from detmaps.ffprobe import (
    EnumerationCap,
    FFConfig,
    codim_estimate,
    codim_probe,
    proj_points,
    vanishing_count,
)
from detmaps.poly import Polynomial, VarContext, minors, parse_poly

C2 = VarContext.standard(2)
C4 = VarContext.standard(4)


def xs(ctx):
    return [Polynomial.var(ctx, i) for i in range(len(ctx))]


class TestPoints:
    @pytest.mark.parametrize("p,n,count", [(2, 1, 3), (5, 2, 31), (3, 4, 121)])
    def test_counts(self, p, n, count):
        assert len(proj_points(p, n)) == count

    @pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (5, 1), (3, 3)])
    def test_matches_bruteforce(self, p, n):
        got = {tuple(map(int, r)) for r in proj_points(p, n)}
        assert got == set(projective_points_bruteforce(p, n))

    def test_cap(self):
        with pytest.raises(EnumerationCap):
            proj_points(31, 5)


class TestVanishing:
    def test_examples(self):
        assert vanishing_count(xs(C2), 5) == 0
        assert vanishing_count(xs(C4)[1:4], 5) == 6
        assert vanishing_count([], 5, n=2) == 31

    def test_denominator(self):
        with pytest.raises(ZeroDivisionError):
            vanishing_count([parse_poly("x0/5 + x1", C2)], 5)
        assert vanishing_count([parse_poly("x0/2 + x1", C2)], 5) == vanishing_count(
            [parse_poly("x0 + 2*x1", C2)], 5)

    @given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
    def test_against_bruteforce(self, seed, p):
        rng = random.Random(seed)
        c = VarContext.standard(3)
        polys = [random_form(rng, c, rng.randint(1, 2), coeff=4) for _ in range(rng.randint(1, 3))]
        assert vanishing_count(polys, p) == vanishing_count_bruteforce(polys, p, 3)


class TestCodim:
    def test_empty(self):
        assert codim_estimate(xs(C2), 2) == 3

    def test_line_in_p4(self):
        assert codim_estimate(xs(C4)[1:4], 4) == 3

    def test_tau2_entries(self):
        assert codim_estimate(minors(tau_matrix(2).entries, 1), 2) == 3

    def test_hypersurface_and_point(self):
        c = VarContext.standard(3)
        assert codim_estimate([parse_poly("x0*x1 - x2*x3", c)], 3) == 1
        assert codim_estimate(xs(c)[:3], 3) == 3

    def test_empty_detection_is_exact(self):
        est = codim_probe(xs(C2), 2, FFConfig(primes=(2, 3, 5, 7)))
        assert est.codim == 3 and set(est.points.values()) == {0}
        assert all(g == -1 for g in est.dim_guess.values())

    def test_deterministic(self):
        polys = [parse_poly("x0*x1 - x2^2", C2)]
        cfg = FFConfig(seed=11)
        assert codim_probe(polys, 2, cfg) == codim_probe(polys, 2, cfg)

    @given(st.integers(0, 10**6))
    def test_monotone_under_adding_generators(self, seed):
        rng = random.Random(seed)
        c = VarContext.standard(3)
        polys = [random_form(rng, c, rng.randint(1, 2), coeff=3) for _ in range(3)]
        cfg = FFConfig(primes=(3, 5), trials=3, seed=seed)
        values = [codim_estimate(polys[:k], 3, cfg) for k in range(1, 4)]
        assert values == sorted(values)

    def test_needs_polynomials(self):
        with pytest.raises(ValueError):
            codim_estimate([], 2)


class TestConfig:
    @pytest.mark.parametrize("kwargs", [{"primes": (4,)}, {"primes": (37,)}, {"primes": ()},
                                        {"trials": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            FFConfig(**kwargs)

    def test_defaults(self):
        cfg = FFConfig()
        assert cfg.primes == (5, 7, 11) and cfg.trials == 5
