import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from detmaps.geom import LatticePolytope, embed
from detmaps.poly import HilbertBurchMatrix, Polynomial, VarContext

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def ctx(n: int) -> VarContext:
    return VarContext.standard(n)


@st.composite
def polynomials(draw, nvars=3, max_terms=4, max_deg=3, coeff=5, homogeneous_deg=None):
    c = VarContext.standard(nvars - 1)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        if homogeneous_deg is None:
            e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        else:
            e = draw(st.sampled_from(_compositions(homogeneous_deg, nvars)))
        terms[e] = terms.get(e, 0) + draw(st.integers(-coeff, coeff))
    return Polynomial(c, terms)


def _compositions(d: int, k: int) -> list[tuple[int, ...]]:
    if k == 1:
        return [(d,)]
    return [(i,) + rest for i in range(d + 1) for rest in _compositions(d - i, k - 1)]


def random_form(rng: random.Random, c: VarContext, deg: int, coeff: int = 9) -> Polynomial:
    terms = {e: rng.randint(-coeff, coeff) for e in _compositions(deg, len(c))
             if rng.random() < 0.6}
    f = Polynomial(c, terms)
    if f.is_zero():
        f = Polynomial.monomial(c, rng.choice(_compositions(deg, len(c))), rng.randint(1, coeff))
    return f


def random_hb_matrix(rng: random.Random, n: int, max_deg: int = 2) -> HilbertBurchMatrix:
    """Random (n+1) x n matrix of forms with per-column degrees."""
    c = VarContext.standard(n)
    degs = [rng.randint(1, max_deg) for _ in range(n)]
    rows = tuple(tuple(random_form(rng, c, degs[j]) for j in range(n)) for _ in range(n + 1))
    return HilbertBurchMatrix(c, rows)


@st.composite
def lattice_points(draw, dim, min_size=1, max_size=6, lo=-3, hi=3):
    return draw(st.lists(st.tuples(*[st.integers(lo, hi)] * dim),
                         min_size=min_size, max_size=max_size))


def random_polytope(rng: random.Random, d: int, max_points: int = 6, spread: int = 2):
    k = rng.randint(1, max_points)
    return LatticePolytope.from_points(
        [tuple(rng.randint(0, spread) for _ in range(d)) for _ in range(k)], ambient_dim=d)


def random_product_instance(rng: random.Random, n: int, n2: int):
    """Polytopes for the projection formula: n flagged ones in R^n x 0, the rest
    arbitrary; returns (polytopes in shuffled order, flagged indices)."""
    d = n + n2
    flagged = [embed(random_polytope(rng, n), d, 0) for _ in range(n)]
    rest = [random_polytope(rng, d) for _ in range(n2)]
    order = list(range(d))
    rng.shuffle(order)
    pool = flagged + rest
    polys = [pool[i] for i in order]
    return polys, [pos for pos, i in enumerate(order) if i < n]
