import json
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_hb_matrix
from oracles import elementary_symmetric_bruteforce
from detmaps.degrees import (
    EXACT,
    UPPER_BOUND,
    DegreeVector,
    SplitError,
    almost_linear_closed_form,
    binomial_vector,
    decomposed_degree_vector,
    detect_split,
    is_palindromic,
    koszul_multidegree,
    koszul_numerator,
    kunneth,
    mv_degree_vector,
    sigma_bound_vector,
    split_blocks,
)
from detmaps.detmap import (
    GluingSpec,
    almost_linear_family,
    block_glue,
    general_glue,
    koszul_check,
    sample_factors,
    tau_matrix,
)
from detmaps.ffprobe import FFConfig
from detmaps.poly import HilbertBurchMatrix, Polynomial, VarContext

C2 = VarContext.standard(2)
ds_lists = st.lists(st.integers(1, 5), min_size=1, max_size=6)


def g_matrix():
    return HilbertBurchMatrix.from_strings([["x2", "0"], ["x1", "x0*x2"], ["0", "x1^2"]], C2)


def linear_spec(seed):
    x = [Polynomial.var(C2, i) for i in range(3)]
    return GluingSpec(1, 1, ((x[0], x[1]), (x[1], x[2])), seed)


class TestVector:
    def test_json(self):
        v = DegreeVector((1, 2, 1), UPPER_BOUND)
        assert json.loads(json.dumps(v.to_dict())) == {"entries": [1, 2, 1], "exactness": "upper_bound"}
        assert v.n == 2 and str(v) == "(1,2,1)"

    @pytest.mark.parametrize("bad", [(), (1, -1)])
    def test_invalid(self, bad):
        with pytest.raises(ValueError):
            DegreeVector(bad)

    def test_bad_tag(self):
        with pytest.raises(ValueError):
            DegreeVector((1,), "maybe")


class TestSigma:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_ones(self, n):
        assert tuple(sigma_bound_vector([1] * n)) == tuple(comb(n, k) for k in range(n + 1))

    def test_examples(self):
        assert tuple(sigma_bound_vector([1, 2])) == (2, 3, 1)
        assert tuple(sigma_bound_vector([1, 1, 1, 2])) == (2, 7, 9, 5, 1)

    @given(ds_lists)
    def test_against_bruteforce(self, ds):
        n = len(ds)
        want = tuple(elementary_symmetric_bruteforce(ds, n - k) for k in range(n + 1))
        assert tuple(sigma_bound_vector(ds)) == want

    def test_invalid(self):
        with pytest.raises(ValueError):
            sigma_bound_vector([1, 0])


class TestKoszulMultidegree:
    def test_numerator(self):
        num = koszul_numerator([1, 2])
        assert str(num) == "T0^3*T1^2 - T0^2*T1 - T0*T1 + 1"

    def test_examples(self):
        assert tuple(koszul_multidegree([1, 1])) == (1, 2, 1)
        assert tuple(koszul_multidegree([1, 2])) == (2, 3, 1)

    @given(ds_lists)
    def test_equals_sigma(self, ds):
        assert koszul_multidegree(ds) == sigma_bound_vector(ds)


class TestKunneth:
    def test_examples(self):
        assert tuple(kunneth((1, 1), (1, 1))) == (1, 2, 1)
        assert tuple(kunneth((1, 3, 1), (1, 3, 1))) == (1, 6, 11, 6, 1)

    @given(st.lists(st.integers(0, 9), min_size=1, max_size=5),
           st.lists(st.integers(0, 9), min_size=1, max_size=5))
    def test_commutative_with_identity(self, a, b):
        assert kunneth(a, b) == kunneth(b, a)
        assert tuple(kunneth(a, (1,))) == tuple(a)

    def test_exactness_propagates(self):
        assert kunneth(DegreeVector((1, 1), UPPER_BOUND), (1, 1)).exactness == UPPER_BOUND
        assert kunneth((1, 1), (1, 1)).exactness == EXACT


class TestClosedForm:
    def test_examples(self):
        assert tuple(almost_linear_closed_form(1, 1)) == (1, 3, 3, 1)
        assert tuple(almost_linear_closed_form(2, 2)) == (1, 5, 8, 5, 1)

    @pytest.mark.parametrize("m", range(1, 9))
    @pytest.mark.parametrize("d", range(1, 9))
    def test_palindromic_and_convolution(self, m, d):
        v = almost_linear_closed_form(m, d)
        assert is_palindromic(v)
        assert v == kunneth(binomial_vector(m), (1, d + 1, 1))

    def test_palindromic(self):
        assert is_palindromic((1, 3, 3, 1)) and is_palindromic((1, 6, 10, 6, 1))
        assert not is_palindromic((2, 3, 1))


class TestMixedVolumeDegrees:
    def test_tau2(self):
        v = mv_degree_vector(tau_matrix(2))
        assert tuple(v) == (1, 2, 1) and v.exactness == UPPER_BOUND
        assert mv_degree_vector(tau_matrix(2), assume_exact=True).exactness == EXACT

    def test_counterexample_sandwich(self):
        v = mv_degree_vector(g_matrix())
        assert v.dominated_by(sigma_bound_vector((1, 2)))
        assert DegreeVector((1, 3, 1)).dominated_by(v)

    @pytest.mark.parametrize("dehomog", [(0, 0), (1, 2), (2, 1)])
    def test_dehomogenisation_choice(self, dehomog):
        assert tuple(mv_degree_vector(tau_matrix(2), dehomog)) == (1, 2, 1)
        assert mv_degree_vector(g_matrix(), dehomog) == mv_degree_vector(g_matrix())

    def test_bad_dehomog(self):
        with pytest.raises(ValueError):
            mv_degree_vector(tau_matrix(2), (3, 0))

    @given(st.integers(0, 10**6))
    def test_sandwich_on_koszul_inputs(self, seed):
        M = random_hb_matrix(random.Random(seed), 2)
        if not koszul_check(M, FFConfig(primes=(5, 7), trials=3)).ok:
            return
        v = mv_degree_vector(M)
        assert v.dominated_by(sigma_bound_vector(M.column_degrees))
        assert v[M.n] == 1 and v[0] >= 1


class TestDecomposed:
    def test_tau_blocks(self):
        T = block_glue(tau_matrix(2), tau_matrix(2, start=2))
        assert tuple(decomposed_degree_vector(T)) == (1, 4, 6, 4, 1)

    def test_family(self):
        assert tuple(decomposed_degree_vector(almost_linear_family(2, 2))) == (1, 5, 8, 5, 1)

    def test_no_split_is_direct(self):
        assert detect_split(g_matrix()) is None
        assert decomposed_degree_vector(g_matrix()) == mv_degree_vector(g_matrix())
        assert decomposed_degree_vector(tau_matrix(2), split=2) == mv_degree_vector(tau_matrix(2))

    def test_split_violation(self):
        M = almost_linear_family(1, 1)
        with pytest.raises(SplitError):
            decomposed_degree_vector(M, split=2)
        with pytest.raises(SplitError):
            decomposed_degree_vector(M, split=0)

    def test_blocks(self):
        A, B = split_blocks(almost_linear_family(2, 1), 2)
        assert A.shape == (3, 2) and B.shape == (3, 2)
        assert B.ctx == C2

    def test_non_recursive(self):
        T = tau_matrix(3)
        assert decomposed_degree_vector(T, recursive=False) == decomposed_degree_vector(T)

    @given(st.integers(0, 2**32))
    def test_matches_direct_on_linear_gluing(self, seed):
        M = general_glue(linear_spec(seed))
        assert detect_split(M) == 1
        assert decomposed_degree_vector(M) == mv_degree_vector(M)

    def test_tau2_from_tau1_copies(self):
        T = block_glue(tau_matrix(1), tau_matrix(1, start=1))
        assert decomposed_degree_vector(T, split=1) == mv_degree_vector(T)

    def test_conjecture_rows_for_linear_gluing(self):
        spec = linear_spec(3)
        g, g2 = sample_factors(spec)
        rhs = kunneth(mv_degree_vector(g), mv_degree_vector(g2))
        assert tuple(rhs) == tuple(mv_degree_vector(general_glue(spec))) == (1, 2, 1)
