"""Determinantal maps from their Hilbert-Burch matrices.

A determinantal map P^n --> P^n is given by the signed maximal minors of an
(n+1) x n matrix.  This module extracts base ideals, builds the symbol row
``(y_0 ... y_n) * M``, runs the Koszul codimension checks and constructs the
standard Cremona matrices and the gluing constructions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

from .ffprobe import FFConfig, codim_probe
from .poly import (
    HilbertBurchMatrix,
    Polynomial,
    PolyError,
    VarContext,
    maximal_minors,
    minors,
    is_coprime,
    parse_poly,
)

COEFF_POOL = range(1, 98)
MAX_RESAMPLES = 32
MAX_MINORS = 5000


class DegenerateMatrix(PolyError):
    """All maximal minors vanish identically."""


class GluingError(RuntimeError):
    pass


class MinorCapExceeded(RuntimeError):
    pass


def base_ideal(M: HilbertBurchMatrix) -> tuple[list[Polynomial], bool]:
    """Signed maximal minors and whether they share no common factor."""
    gens = maximal_minors(M)
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        raise DegenerateMatrix("all maximal minors vanish")
    return gens, is_coprime(nonzero)


def doubled_context(ctx: VarContext, prefix: str = "y") -> VarContext:
    ys = tuple(f"{prefix}{i}" for i in range(len(ctx)))
    if set(ys) & set(ctx.names):
        raise PolyError(f"matrix variables clash with the {prefix}-variables")
    return VarContext(ctx.names + ys)


def symbol_row(M: HilbertBurchMatrix) -> list[Polynomial]:
    """Entries of ``(y_0 ... y_n) M`` in the doubled ring k[x, y]."""
    S = doubled_context(M.ctx)
    nx = len(M.ctx)
    ys = [Polynomial.var(S, nx + i) for i in range(len(M.entries))]
    out = []
    for j in range(M.n):
        phi = Polynomial.zero(S)
        for i, row in enumerate(M.entries):
            if not row[j].is_zero():
                phi = phi + ys[i] * row[j].embed(S)
        out.append(phi)
    return out


# -- Koszul checks --------------------------------------------------------------

@dataclass
class KCodim:
    k: int
    codim: int
    required: int
    passed: bool
    points: dict[int, int] = field(default_factory=dict)


@dataclass
class KoszulReport:
    codim2_ok: bool
    per_k: list[KCodim]
    primes: tuple[int, ...]
    trials: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.codim2_ok and all(e.passed for e in self.per_k)

    def first_failure(self) -> KCodim | None:
        return next((e for e in self.per_k if not e.passed), None)

    def to_dict(self) -> dict:
        return {
            "codim2_ok": self.codim2_ok,
            "codim2_method": "exact (gcd of maximal minors)",
            "per_k": [
                {"k": e.k, "codim_estimate": e.codim, "required": e.required,
                 "pass": e.passed, "fp_points": {str(p): c for p, c in e.points.items()}}
                for e in self.per_k
            ],
            "per_k_method": "probabilistic (finite-field enumeration)",
            "primes": list(self.primes),
            "trials": self.trials,
            "seed": self.seed,
            "ok": self.ok,
        }


def koszul_check(M: HilbertBurchMatrix, cfg: FFConfig = FFConfig()) -> KoszulReport:
    """Check codim V(I_k(M)) >= n+1-k for k = 1..n-1 plus the codim-2 condition.

    The codim-2 part is exact; the per-k parts are finite-field estimates.
    """
    n = M.n
    _, ok2 = base_ideal(M)
    per_k = []
    for k in range(1, n):
        count = comb(n + 1, k) * comb(n, k)
        if count > MAX_MINORS:
            raise MinorCapExceeded(f"{count} minors of size {k} exceed cap {MAX_MINORS}")
        gens = minors(M.entries, k)
        if gens:
            est = codim_probe(gens, n, cfg)
            codim, pts = est.codim, est.points
        else:
            codim, pts = 0, {}
        need = n + 1 - k
        per_k.append(KCodim(k, codim, need, codim >= need, pts))
    return KoszulReport(ok2, per_k, cfg.primes, cfg.trials, cfg.seed)


# -- constructions ----------------------------------------------------------------

def tau_matrix(n: int, start: int = 0) -> HilbertBurchMatrix:
    """Bidiagonal matrix of the standard Cremona map over x_start..x_{start+n}."""
    if n < 1:
        raise ValueError("tau_matrix needs n >= 1")
    ctx = VarContext.standard(n, start=start)
    zero = Polynomial.zero(ctx)
    rows = [[zero] * n for _ in range(n + 1)]
    for j in range(n):
        rows[j][j] = Polynomial.var(ctx, j)
        rows[j + 1][j] = -Polynomial.var(ctx, j + 1)
    return HilbertBurchMatrix(ctx, tuple(tuple(r) for r in rows))


def relabel(M: HilbertBurchMatrix, start: int, prefix: str = "x") -> HilbertBurchMatrix:
    """Rename the variables positionally to prefix{start}, prefix{start+1}, ..."""
    return M.rename(VarContext.standard(len(M.ctx) - 1, prefix, start))


def block_glue(A: HilbertBurchMatrix, B: HilbertBurchMatrix) -> HilbertBurchMatrix:
    """Block-diagonal gluing sharing the last row of A with the first row of B.

    A lives over x_0..x_m and B over x_m..x_{m+m'}; the contexts must overlap
    in exactly that one variable.
    """
    shared = set(A.ctx.names) & set(B.ctx.names)
    if shared != {A.ctx.names[-1]} or B.ctx.names[0] != A.ctx.names[-1]:
        raise PolyError(f"contexts must overlap exactly in {A.ctx.names[-1]!r} "
                        f"(last of A, first of B); shared: {sorted(shared)}")
    ctx = VarContext(A.ctx.names + B.ctx.names[1:])
    m, mp = A.n, B.n
    zero = Polynomial.zero(ctx)
    rows = [[zero] * (m + mp) for _ in range(m + mp + 1)]
    for i, r in enumerate(A.entries):
        for j, e in enumerate(r):
            rows[i][j] = e.embed(ctx)
    for i, r in enumerate(B.entries):
        for j, e in enumerate(r):
            if not e.is_zero():
                rows[m + i][m + j] = e.embed(ctx)
    return HilbertBurchMatrix(ctx, tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class GluingSpec:
    """Column generators for a general gluing.

    Columns 1..m take generators over x_0..x_m, columns m+1..m+m' over
    x_m..x_{m+m'}; every entry of column j is a random combination of its
    generators with coefficients drawn from 1..97.
    """

    m: int
    mprime: int
    columns: tuple[tuple[Polynomial, ...], ...]
    seed: int = 0

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if self.m < 1 or self.mprime < 1:
            raise ValueError("m and m' must be positive")
        n = self.m + self.mprime
        if len(cols) != n:
            raise ValueError(f"expected {n} columns, got {len(cols)}")
        ctx = self.ctx
        for j, gens in enumerate(cols):
            if not gens:
                raise ValueError(f"column {j + 1} has no generators")
            allowed = set(range(self.m + 1)) if j < self.m else set(range(self.m, n + 1))
            degs = set()
            for g in gens:
                if g.ctx != ctx:
                    raise ValueError(f"column {j + 1}: generator outside x0..x{n}")
                if g.is_zero() or not g.is_homogeneous():
                    raise ValueError(f"column {j + 1}: generator {g} is not a nonzero form")
                if not g.support() <= allowed:
                    raise ValueError(f"column {j + 1}: generator {g} leaves its sub-ring")
                degs.add(g.degree())
            if len(degs) != 1 or degs == {0}:
                raise ValueError(f"column {j + 1}: generators must share a positive degree")

    @property
    def ctx(self) -> VarContext:
        return VarContext.standard(self.m + self.mprime)

    @classmethod
    def from_dict(cls, data: dict) -> "GluingSpec":
        try:
            m, mp = int(data["m"]), int(data["mprime"])
            ctx = VarContext.standard(m + mp)
            cols = tuple(tuple(parse_poly(str(g), ctx) for g in c["generators"])
                         for c in data["columns"])
            seed = int(data.get("seed", 0))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed gluing spec: {exc}") from None
        return cls(m, mp, cols, seed)

    @classmethod
    def from_json(cls, text: str) -> "GluingSpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"m": self.m, "mprime": self.mprime, "seed": self.seed,
                "columns": [{"generators": [str(g) for g in c]} for c in self.columns]}

    def with_seed(self, seed: int) -> "GluingSpec":
        return GluingSpec(self.m, self.mprime, self.columns, seed)


def random_combination_matrix(ctx: VarContext, columns: Sequence[Sequence[Polynomial]],
                              rows: int, rng: random.Random) -> HilbertBurchMatrix:
    """``rows`` x len(columns) matrix; entry (i, j) combines column j's generators
    with coefficients drawn from the pool."""
    out = []
    for _ in range(rows):
        row = []
        for gens in columns:
            e = Polynomial.zero(ctx)
            for g in gens:
                e = e + g.restrict(ctx).scale(rng.choice(COEFF_POOL))
            row.append(e)
        out.append(tuple(row))
    return HilbertBurchMatrix(ctx, tuple(out))


def sample_glue(spec: GluingSpec, attempt: int = 0) -> HilbertBurchMatrix:
    """One draw of the glued matrix; a pure function of (spec, seed, attempt)."""
    rng = random.Random(f"glue:{spec.seed}:{attempt}")
    return random_combination_matrix(spec.ctx, spec.columns, spec.m + spec.mprime + 1, rng)


def sample_factors(spec: GluingSpec) -> tuple[HilbertBurchMatrix, HilbertBurchMatrix]:
    """Independent general matrices for the two factors of a gluing.

    The first is (m+1) x m over x_0..x_m, the second (m'+1) x m' over
    x_m..x_(m+m') renamed to x_0..x_m'.  Each is resampled like
    :func:`general_glue` until its minors are coprime.
    """
    m = spec.m
    names = spec.ctx.names
    parts = []
    for tag, names_, cols in (("left", names[: m + 1], spec.columns[:m]),
                              ("right", names[m:], spec.columns[m:])):
        ctx = VarContext(names_)
        for attempt in range(MAX_RESAMPLES):
            rng = random.Random(f"{tag}:{spec.seed}:{attempt}")
            M = random_combination_matrix(ctx, cols, len(cols) + 1, rng)
            try:
                if base_ideal(M)[1]:
                    break
            except DegenerateMatrix:
                pass
        else:
            raise GluingError(f"{tag} factor: no draw passed the codim-2 check")
        parts.append(M.rename(VarContext.standard(len(cols))))
    return parts[0], parts[1]


def general_glue(spec: GluingSpec, validate: bool = True) -> HilbertBurchMatrix:
    """Glued matrix whose maximal minors share no common factor.

    Up to 32 draws are tried; ``validate=False`` returns the first draw
    without the codim-2 certificate.
    """
    for attempt in range(MAX_RESAMPLES if validate else 1):
        M = sample_glue(spec, attempt)
        if not validate:
            return M
        try:
            if base_ideal(M)[1]:
                return M
        except DegenerateMatrix:
            continue
    raise GluingError(f"no draw out of {MAX_RESAMPLES} passed the codim-2 check; the "
                      "generators are probably not general enough")


def family_column_generators(m: int, d: int) -> list[list[Polynomial]]:
    """Generator lists of the almost-linear family on x_0..x_{m+2}."""
    if m < 1 or d < 1:
        raise ValueError("m and d must be >= 1")
    ctx = VarContext.standard(m + 2)
    x = [Polynomial.var(ctx, i) for i in range(m + 3)]
    cols = [list(x[: m + 1]) for _ in range(m)]
    cols.append([x[m + 1], x[m + 2]])
    last = set()
    for a in (x[m], x[m + 1], x[m + 2]):
        for combo in combinations_with_replacement((x[m + 1], x[m + 2]), d - 1):
            mono = a
            for factor in combo:
                mono = mono * factor
            last.add(mono)
    # distinct monomials of (x_m, x_{m+1}, x_{m+2}) * (x_{m+1}, x_{m+2})^(d-1)
    cols.append(sorted(last, key=lambda p: p.exponents(), reverse=True))
    return cols


def almost_linear_family(m: int, d: int, seed: int = 0) -> HilbertBurchMatrix:
    """(m+3) x (m+2) almost-linear glued matrix with column degrees (1,...,1,d)."""
    cols = family_column_generators(m, d)
    return general_glue(GluingSpec(m, 2, tuple(tuple(c) for c in cols), seed))
