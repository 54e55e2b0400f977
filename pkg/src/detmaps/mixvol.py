"""Mixed volumes of lattice polytopes.

Normalisation: MV(S_d, ..., S_d) = 1, i.e. MV is the coefficient of
``l_1 * ... * l_d`` in ``Vol_d(l_1 P_1 + ... + l_d P_d)``.

Two independent routes are provided:

* :func:`mixed_volume` -- inclusion-exclusion over Minkowski sums of subsets;
* :func:`mixed_volume_oracle` -- interpolate the volume polynomial on an
  integer grid and read off the square-free coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, prod
from typing import Sequence

from .geom import GeometryError, LatticePolytope, minkowski_sum, newton_polytope, project, scale
from .poly import Polynomial


class MixedVolumeError(ArithmeticError):
    """The computation produced something a mixed volume cannot be."""


@dataclass(frozen=True)
class MixedVolumeQuery:
    polytopes: tuple[LatticePolytope, ...]

    def __post_init__(self):
        polys = tuple(self.polytopes)
        object.__setattr__(self, "polytopes", polys)
        if not polys:
            raise GeometryError("a mixed volume needs at least one polytope")
        d = polys[0].ambient_dim
        if any(P.ambient_dim != d for P in polys):
            raise GeometryError("polytopes live in different dimensions")
        if len(polys) != d:
            raise GeometryError(f"need exactly {d} polytopes in dimension {d}, got {len(polys)}")

    @property
    def ambient_dim(self) -> int:
        return len(self.polytopes)


def _query(q) -> MixedVolumeQuery:
    return q if isinstance(q, MixedVolumeQuery) else MixedVolumeQuery(tuple(q))


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1 or value < 0:
        raise MixedVolumeError(f"{what} evaluated to {value}, expected a nonnegative integer")
    return int(value)


def mixed_volume(q: MixedVolumeQuery | Sequence[LatticePolytope]) -> int:
    """Inclusion-exclusion over the 2^d - 1 nonempty subset sums.

    Identical arguments are grouped, so each distinct multiset of summands is
    built (incrementally, from a memoised smaller sum) and measured once.
    """
    q = _query(q)
    d = q.ambient_dim
    groups: list[LatticePolytope] = []
    mult: list[int] = []
    for P in q.polytopes:
        for g, G in enumerate(groups):
            if G == P:
                mult[g] += 1
                break
        else:
            groups.append(P)
            mult.append(1)

    sums: dict[tuple[int, ...], LatticePolytope] = {}
    total = Fraction(0)
    for counts in sorted(product(*(range(m + 1) for m in mult)), key=sum):
        k = sum(counts)
        if k == 0:
            continue
        g = next(i for i, c in enumerate(counts) if c)
        prev = counts[:g] + (counts[g] - 1,) + counts[g + 1:]
        S = groups[g] if sum(prev) == 0 else minkowski_sum(sums[prev], groups[g])
        sums[counts] = S
        weight = prod(comb(m, c) for m, c in zip(mult, counts))
        sign = -1 if (d - k) % 2 else 1
        total += sign * weight * S.volume
    return _as_integer(total, "mixed volume")


def _square_solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    n = len(A)
    M = [row[:] + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def _monomials(d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(d), d):
        e = [0] * d
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out)


def _eval_row(lam: Sequence[int], monos) -> list[Fraction]:
    return [Fraction(prod(l ** a for l, a in zip(lam, m))) for m in monos]


def _greedy_grid(d: int, monos) -> list[tuple[int, ...]]:
    # fallback: lexicographic scan of {0..d}^d keeping rank-increasing points
    chosen: list[tuple[int, ...]] = []
    basis: list[tuple[int, list[Fraction]]] = []
    for lam in product(range(d + 1), repeat=d):
        v = _eval_row(lam, monos)
        for piv, row in basis:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [x - f * y for x, y in zip(v, row)]
        j = next((j for j, x in enumerate(v) if x), None)
        if j is not None:
            basis.append((j, v))
            chosen.append(lam)
            if len(chosen) == len(monos):
                break
    return chosen


def mixed_volume_oracle(q: MixedVolumeQuery | Sequence[LatticePolytope]) -> int:
    """Mixed volume straight from its definition, by exact interpolation.

    ``Vol_d(l_1 P_1 + ... + l_d P_d)`` is evaluated at the integer points of
    ``{0..d}^d`` with coordinate sum ``d`` (a unisolvent set for degree-d
    forms); the linear system for the form's coefficients is solved exactly.
    """
    q = _query(q)
    d = q.ambient_dim
    if d > 4:
        raise GeometryError("the interpolation oracle is limited to dimension <= 4")
    monos = _monomials(d)
    target = monos.index((1,) * d)
    simplex_grid = [lam for lam in product(range(d + 1), repeat=d) if sum(lam) == d]
    for grid in (simplex_grid, None):
        if grid is None:
            grid = _greedy_grid(d, monos)
        A = [_eval_row(lam, monos) for lam in grid]
        b = []
        for lam in grid:
            acc = None
            for l, P in zip(lam, q.polytopes):
                if l == 0:
                    continue
                term = scale(P, l)
                acc = term if acc is None else minkowski_sum(acc, term)
            b.append(acc.volume)
        if len(A) == len(monos):
            sol = _square_solve(A, b)
            if sol is not None:
                return _as_integer(sol[target], "interpolated mixed volume")
    raise MixedVolumeError("interpolation system is singular even on the enlarged grid")


def split_mixed_volume(q: MixedVolumeQuery | Sequence[LatticePolytope],
                       flagged: Sequence[int]) -> int:
    """Mixed volume through the projection formula.

    The ``n = len(flagged)`` flagged polytopes must lie in ``R^n x {0}``.
    The result is ``MV_n(flagged, read in the first n coordinates)`` times
    ``MV_{d-n}(the others, projected onto the last d-n coordinates)``.
    """
    q = _query(q)
    d = q.ambient_dim
    flagged = list(flagged)
    if len(set(flagged)) != len(flagged) or any(not 0 <= i < d for i in flagged):
        raise GeometryError(f"invalid flagged indices {flagged}")
    n = len(flagged)
    for i in flagged:
        P = q.polytopes[i]
        if any(any(v[n:]) for v in P.vertices):
            raise GeometryError(f"polytope {i} does not lie in the first {n} coordinates")
    rest = [i for i in range(d) if i not in flagged]
    first = [project(q.polytopes[i], range(n)) for i in flagged]
    last = [project(q.polytopes[i], range(n, d)) for i in rest]
    a = mixed_volume(first) if first else 1
    b = mixed_volume(last) if last else 1
    return a * b


def bkk_bound(system: Sequence[Polynomial]) -> int:
    """Bernstein bound on isolated common zeros in the torus (C*)^d.

    Equal to the number of such zeros when each polynomial is generic for its
    Newton polytope.
    """
    system = list(system)
    if not system:
        raise GeometryError("empty system")
    d = len(system[0].ctx)
    if len(system) != d:
        raise GeometryError(f"need {d} polynomials in {d} variables, got {len(system)}")
    return mixed_volume([newton_polytope(p) for p in system])
