"""Probabilistic codimension estimates over small prime fields.

The variety of a set of homogeneous polynomials is enumerated exhaustively
over P^n(F_p); its dimension is then guessed by slicing with random
hyperplanes.  Results are heuristics: a variety without F_p-points can make
the codimension look larger than it is, which is why several primes are
used.  Nothing here is a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .poly import Polynomial

MAX_POINTS = 10**6


class EnumerationCap(RuntimeError):
    pass


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class FFConfig:
    primes: tuple[int, ...] = (5, 7, 11)
    trials: int = 5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(self.primes))
        if not self.primes:
            raise ValueError("at least one prime is required")
        for p in self.primes:
            if not _is_prime(p) or p > 31:
                raise ValueError(f"{p} is not a prime <= 31")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


def proj_points(p: int, n: int) -> np.ndarray:
    """One representative per point of P^n(F_p), first nonzero coordinate 1."""
    count = (p ** (n + 1) - 1) // (p - 1)
    if count > MAX_POINTS:
        raise EnumerationCap(f"P^{n}(F_{p}) has {count} points (cap {MAX_POINTS})")
    blocks = []
    for lead in range(n + 1):
        free = n - lead
        block = np.zeros((p**free, n + 1), dtype=np.int64)
        block[:, lead] = 1
        if free:
            grid = np.indices((p,) * free).reshape(free, -1).T
            block[:, lead + 1:] = grid
        blocks.append(block)
    return np.concatenate(blocks)


def _mod_p(poly: Polynomial, p: int) -> list[tuple[tuple[int, ...], int]]:
    terms = []
    for e, c in poly.terms.items():
        if c.denominator % p == 0:
            raise ZeroDivisionError(f"coefficient {c} has a denominator divisible by {p}")
        v = c.numerator * pow(c.denominator, -1, p) % p
        if v:
            terms.append((e, v))
    return terms


class _Evaluator:
    """Vectorised evaluation of polynomials mod p over a fixed point array."""

    def __init__(self, points: np.ndarray, p: int):
        self.points = points
        self.p = p
        self._pow: dict[tuple[int, int], np.ndarray] = {}

    def power(self, i: int, k: int) -> np.ndarray:
        key = (i, k)
        if key not in self._pow:
            if k == 1:
                self._pow[key] = self.points[:, i] % self.p
            else:
                self._pow[key] = self.power(i, k - 1) * self.points[:, i] % self.p
        return self._pow[key]

    def __call__(self, terms) -> np.ndarray:
        p = self.p
        acc = np.zeros(len(self.points), dtype=np.int64)
        for e, c in terms:
            t = np.full(len(self.points), c, dtype=np.int64)
            for i, k in enumerate(e):
                if k:
                    t = t * self.power(i, k) % p
            acc = (acc + t) % p
        return acc


def vanishing_points(polys: Sequence[Polynomial], p: int, n: int | None = None) -> np.ndarray:
    """Points of P^n(F_p) where every polynomial vanishes."""
    polys = list(polys)
    if n is None:
        if not polys:
            raise ValueError("n is required for an empty polynomial list")
        n = len(polys[0].ctx) - 1
    pts = proj_points(p, n)
    reduced = [_mod_p(f, p) for f in polys]
    for terms in sorted(reduced, key=len):
        if not len(pts):
            break
        pts = pts[_Evaluator(pts, p)(terms) == 0]
    return pts


def vanishing_count(polys: Sequence[Polynomial], p: int, n: int | None = None) -> int:
    return len(vanishing_points(polys, p, n))


def _hyperplanes(seed: int, p: int, t: int, trial: int, n: int) -> np.ndarray:
    rng = np.random.default_rng([seed & (2**64 - 1), p, t, trial])
    rows = []
    while len(rows) < t:
        h = rng.integers(0, p, size=n + 1)
        if h.any():
            rows.append(h)
    return np.array(rows, dtype=np.int64)


@dataclass
class CodimEstimate:
    codim: int
    n: int
    # per prime: number of F_p points, and dimension guess (-1 for empty)
    points: dict[int, int] = field(default_factory=dict)
    dim_guess: dict[int, int] = field(default_factory=dict)
    trials: int = 0
    probabilistic: bool = True


def codim_probe(polys: Sequence[Polynomial], n: int, cfg: FFConfig = FFConfig()) -> CodimEstimate:
    """Codimension estimate with the per-prime evidence behind it."""
    polys = list(polys)
    if not polys:
        raise ValueError("codim_estimate needs at least one polynomial")
    est = CodimEstimate(codim=n + 1, n=n, trials=cfg.trials)
    best = -1
    for p in cfg.primes:
        V = vanishing_points(polys, p, n)
        est.points[p] = len(V)
        r = -1
        if len(V):
            r = 0
            for t in range(1, n + 1):
                hits = 0
                for trial in range(cfg.trials):
                    H = _hyperplanes(cfg.seed, p, t, trial, n)
                    if ((V @ H.T) % p == 0).all(axis=1).any():
                        hits += 1
                if 2 * hits > cfg.trials:
                    r = t
        est.dim_guess[p] = r
        best = max(best, r)
    est.codim = n + 1 if best < 0 else n - best
    return est


def codim_estimate(polys: Sequence[Polynomial], n: int, cfg: FFConfig = FFConfig()) -> int:
    """Estimated codimension of V(polys) in P^n, in 0..n+1 (n+1 means empty)."""
    return codim_probe(polys, n, cfg).codim
