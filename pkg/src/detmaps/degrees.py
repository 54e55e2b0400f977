"""Projective degree vectors: bounds, multidegrees and mixed-volume estimates.

Entry ``k`` of a degree vector of a map P^n --> P^n is the k-th projective
degree ``d^k``; for a Cremona map entry 0 equals 1.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

from .geom import LatticePolytope, embed, newton_polytope, simplex
from .mixvol import mixed_volume
from .poly import HilbertBurchMatrix, Polynomial, VarContext, dehomogenize
from .detmap import symbol_row

EXACT = "exact"
UPPER_BOUND = "upper_bound"


class SplitError(ValueError):
    pass


@dataclass(frozen=True)
class DegreeVector:
    entries: tuple[int, ...]
    exactness: str = EXACT

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("a degree vector has at least one entry")
        if any(e < 0 for e in entries):
            raise ValueError(f"negative entry in {entries}")
        if self.exactness not in (EXACT, UPPER_BOUND):
            raise ValueError(f"unknown exactness tag {self.exactness!r}")

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, k: int) -> int:
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def dominated_by(self, other: "DegreeVector | Sequence[int]") -> bool:
        other = tuple(other)
        return len(other) == len(self.entries) and all(a <= b for a, b in zip(self.entries, other))

    def to_dict(self) -> dict:
        return {"entries": list(self.entries), "exactness": self.exactness}

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def _as_vector(v) -> DegreeVector:
    return v if isinstance(v, DegreeVector) else DegreeVector(tuple(v))


def _check_degrees(ds: Sequence[int]) -> list[int]:
    ds = [int(d) for d in ds]
    if not ds or any(d < 1 for d in ds):
        raise ValueError(f"column degrees must be positive, got {ds}")
    return ds


def elementary_symmetric(values: Sequence[int]) -> list[int]:
    """[e_0, e_1, ..., e_len] of the given values."""
    e = [1]
    for v in values:
        e = [a + v * b for a, b in zip(e + [0], [0] + e)]
    return e


def sigma_bound_vector(ds: Sequence[int]) -> DegreeVector:
    """Entry k is the elementary symmetric polynomial of degree n-k in ds."""
    ds = _check_degrees(ds)
    e = elementary_symmetric(ds)
    n = len(ds)
    return DegreeVector(tuple(e[n - k] for k in range(n + 1)))


_T = VarContext(("T0", "T1"))


def koszul_numerator(ds: Sequence[int]) -> Polynomial:
    """Hilbert numerator prod_j (1 - T0^d_j * T1) of the Koszul complex."""
    num = Polynomial.constant(_T, 1)
    for d in _check_degrees(ds):
        num = num * (1 - Polynomial.monomial(_T, (d, 1)))
    return num


def koszul_multidegree(ds: Sequence[int]) -> DegreeVector:
    """Bidegree-n part of the numerator after T -> 1 - T, read as a vector."""
    n = len(_check_degrees(ds))
    t0, t1 = Polynomial.var(_T, 0), Polynomial.var(_T, 1)
    shifted = koszul_numerator(ds).substitute([1 - t0, 1 - t1])
    out = []
    for k in range(n + 1):
        c = shifted.terms.get((n - k, k), 0)
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer multidegree coefficient {c}")
        out.append(int(c))
    return DegreeVector(tuple(out))


def binomial_vector(m: int) -> DegreeVector:
    return DegreeVector(tuple(comb(m, k) for k in range(m + 1)))


def kunneth(a, b) -> DegreeVector:
    """Convolution: entry k = sum_p a_p * b_(k-p)."""
    a, b = _as_vector(a), _as_vector(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    tag = EXACT if a.exactness == b.exactness == EXACT else UPPER_BOUND
    return DegreeVector(tuple(out), tag)


def _binom(j: int, i: int) -> int:
    return comb(j, i) if 0 <= i <= j else 0


def almost_linear_closed_form(m: int, d: int) -> DegreeVector:
    """C(m,m-k) + (d+1) C(m,m-k+1) + C(m,m-k+2) for k = 0..m+2."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be >= 1")
    return DegreeVector(tuple(
        _binom(m, m - k) + (d + 1) * _binom(m, m - k + 1) + _binom(m, m - k + 2)
        for k in range(m + 3)
    ))


def is_palindromic(v) -> bool:
    e = tuple(v)
    return e == e[::-1]


# -- mixed-volume degrees ----------------------------------------------------

def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DETMAP_THREADS", "1")))
    except ValueError:
        return 1


def _parallel_map(fn: Callable, items: list) -> list:
    workers = min(_workers(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def symbol_polytopes(M: HilbertBurchMatrix, dehomog: tuple[int, int] = (0, 0)) -> list[LatticePolytope]:
    """Newton polytopes in R^n x R^n of the bi-dehomogenised symbol row."""
    n = M.n
    i, j = dehomog
    if not (0 <= i <= n and 0 <= j <= n):
        raise ValueError(f"dehomogenisation indices {dehomog} out of range 0..{n}")
    nx = n + 1
    drop = (i, nx + j)
    blocks = (range(nx), range(nx, 2 * nx))
    return [newton_polytope(dehomogenize(phi, drop, blocks)) for phi in symbol_row(M)]


def _mv_entry(args) -> int:
    k, n, P = args
    sx = embed(simplex(n), 2 * n, 0)
    sy = embed(simplex(n), 2 * n, n)
    return mixed_volume([sx] * k + list(P) + [sy] * (n - k))


def mv_degree_vector(M: HilbertBurchMatrix, dehomog: tuple[int, int] = (0, 0),
                     assume_exact: bool = False) -> DegreeVector:
    """Entry k = MV_2n(S^x (k times), P_1, ..., P_n, S^y (n-k times)).

    The P_l are Newton polytopes of the symbol-row entries.  The result
    bounds the projective degrees from above; it is tagged exact only when
    the caller vouches for it.
    """
    n = M.n
    P = tuple(symbol_polytopes(M, dehomog))
    entries = _parallel_map(_mv_entry, [(k, n, P) for k in range(n + 1)])
    return DegreeVector(tuple(entries), EXACT if assume_exact else UPPER_BOUND)


def _split_ok(M: HilbertBurchMatrix, m: int) -> bool:
    left, right = set(range(m + 1)), set(range(m, M.n + 1))
    return (all(M.column_support(j) <= left for j in range(m))
            and all(M.column_support(j) <= right for j in range(m, M.n)))


def detect_split(M: HilbertBurchMatrix) -> int | None:
    """Smallest m in 1..n-1 such that the first m columns only involve
    x_0..x_m and the remaining ones only x_m..x_n."""
    return next((m for m in range(1, M.n) if _split_ok(M, m)), None)


def split_blocks(M: HilbertBurchMatrix, m: int) -> tuple[HilbertBurchMatrix, HilbertBurchMatrix]:
    """Top-left block over x_0..x_m and bottom-right block over x_m..x_n,
    the latter renamed to x_0..x_(n-m)."""
    n = M.n
    A = M.submatrix(range(m + 1), range(m), VarContext(M.ctx.names[: m + 1]))
    B = M.submatrix(range(m, n + 1), range(m, n), VarContext(M.ctx.names[m:]))
    return A, B.rename(VarContext.standard(n - m))


def decomposed_degree_vector(M: HilbertBurchMatrix, split: int | None = None,
                             recursive: bool = True) -> DegreeVector:
    """Degree vector of a glued matrix as the convolution of its blocks' vectors.

    ``split`` defaults to the detected one; with no split (or ``split == n``)
    this is :func:`mv_degree_vector`.
    """
    n = M.n
    if split is None:
        split = detect_split(M)
    if split is None or split == n:
        return mv_degree_vector(M)
    if not 1 <= split < n:
        raise SplitError(f"split {split} outside 1..{n}")
    if not _split_ok(M, split):
        raise SplitError(f"columns do not respect the x-support split at m={split}")
    A, B = split_blocks(M, split)
    part = (lambda X: decomposed_degree_vector(X)) if recursive else mv_degree_vector
    return kunneth(part(A), part(B))
