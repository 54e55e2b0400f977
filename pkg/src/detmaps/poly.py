"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives in a :class:`VarContext` (an ordered tuple of variable
names) and stores a mapping from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients.  Everything here is immutable and
exact; no floating point is involved anywhere.

Example (context ``x0, x1``)::

    x0^2*x1 + 3   ->   {(2, 1): Fraction(1), (0, 0): Fraction(3)}
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class PolyError(ValueError):
    """Malformed input or an operation outside a polynomial's domain."""


class ContextMismatch(PolyError):
    pass


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise PolyError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise PolyError(f"invalid variable name {name!r}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x", start: int = 0) -> "VarContext":
        """Context ``x{start}, ..., x{start+n}`` (n+1 variables)."""
        return cls(tuple(f"{prefix}{i}" for i in range(start, start + n + 1)))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PolyError(f"unknown variable {name!r}") from None

    def without(self, indices: Iterable[int]) -> "VarContext":
        drop = set(indices)
        return VarContext(tuple(n for i, n in enumerate(self.names) if i not in drop))

    def __add__(self, other: "VarContext") -> "VarContext":
        return VarContext(self.names + other.names)


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        nv = len(ctx)
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nv:
                raise PolyError(f"exponent {exp} does not match {nv} variables")
            if any(e < 0 for e in exp):
                raise PolyError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.ctx = ctx
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ctx: VarContext, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # trusted path: terms already canonical
        p = object.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ctx: VarContext) -> "Polynomial":
        return cls._raw(ctx, {})

    @classmethod
    def constant(cls, ctx: VarContext, value: Scalar) -> "Polynomial":
        value = Fraction(value)
        return cls._raw(ctx, {(0,) * len(ctx): value} if value else {})

    @classmethod
    def var(cls, ctx: VarContext, name_or_index: str | int) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else ctx.index(name_or_index)
        exp = [0] * len(ctx)
        exp[i] = 1
        return cls._raw(ctx, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VarContext, exp: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(ctx, {tuple(exp): coeff})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def degree_in_block(self, indices: Sequence[int]) -> set[int]:
        return {sum(e[i] for i in indices) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_bihomogeneous(self, block_a: Sequence[int], block_b: Sequence[int]) -> bool:
        return (len(self.degree_in_block(block_a)) <= 1
                and len(self.degree_in_block(block_b)) <= 1)

    def support(self) -> set[int]:
        """Indices of the variables that actually occur."""
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def exponents(self) -> list[Exponent]:
        return sorted(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatch(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError(f"exponent must be a nonnegative integer, got {k!r}")
        result = Polynomial.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial._raw(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # -- orderings and normalisation ----------------------------------------

    def lex_leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = reduce(gcd, (c.numerator for c in self.terms.values()))
        dens = reduce(lcm, (c.denominator for c in self.terms.values()))
        return Fraction(abs(nums), dens)

    def primitive(self) -> "Polynomial":
        """Integer content 1 and positive lex-leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lex_leading()[1] < 0:
            c = -c
        return self.scale(1 / c)

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, values: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= Fraction(v) ** k
            total += t
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable i by ``images[i]`` (all images share one context)."""
        if len(images) != len(self.ctx):
            raise PolyError("need one image per variable")
        target = images[0].ctx
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        out = Polynomial.zero(target)
        for e, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def embed(self, ctx: VarContext) -> "Polynomial":
        """Re-express in a larger context containing all our variable names."""
        pos = [ctx.index(n) for n in self.ctx.names]
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(ctx)
            for i, k in zip(pos, e):
                new[i] = k
            out[tuple(new)] = c
        return Polynomial._raw(ctx, out)

    def restrict(self, ctx: VarContext) -> "Polynomial":
        """Move into a smaller context; every used variable must be present there."""
        used = {self.ctx.names[i] for i in self.support()}
        missing = used - set(ctx.names)
        if missing:
            raise PolyError(f"variables {sorted(missing)} not in target context")
        pos = {n: ctx.index(n) for n in self.ctx.names if n in ctx.names}
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(ctx)
            for name, k in zip(self.ctx.names, e):
                if k:
                    new[pos[name]] = k
            out[tuple(new)] = c
        return Polynomial._raw(ctx, out)

    def rename(self, ctx: VarContext) -> "Polynomial":
        """Same exponents, new variable names (positional)."""
        if len(ctx) != len(self.ctx):
            raise PolyError("rename needs a context with the same number of variables")
        return Polynomial._raw(ctx, dict(self.terms))

    def coefficients_in(self, i: int) -> dict[int, "Polynomial"]:
        """View as univariate in variable i: power -> coefficient polynomial."""
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            k = e[i]
            rest = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[rest] = c
        return {k: Polynomial._raw(self.ctx, t) for k, t in parts.items()}

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"Polynomial({to_string(self)!r}, vars={','.join(self.ctx.names)})"


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _monomial_str(names: Sequence[str], e: Exponent) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def to_string(p: Polynomial) -> str:
    """Canonical text form, terms in descending graded-lex order."""
    if not p.terms:
        return "0"
    chunks = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        mono = _monomial_str(p.ctx.names, e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not chunks:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"unexpected character at position {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append("^" if tok == "**" else tok)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise PolyError(f"malformed expression {self.text!r}: expected "
                            f"{expected or 'a token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolyError("empty expression")
        p = self.expr()
        if self.peek() is not None:
            raise PolyError(f"malformed expression {self.text!r}: trailing {self.peek()!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyError("division only by nonzero constants")
                p = p.scale(1 / q.constant_value())
        return p

    def unary(self) -> Polynomial:
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                raise PolyError(f"negative exponent in {self.text!r}")
            tok = self.take()
            if not tok.isdigit():
                raise PolyError(f"exponent must be a nonnegative integer literal, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok == "(":
            p = self.expr()
            self.take(")")
            return p
        if tok.isdigit():
            return Polynomial.constant(self.ctx, int(tok))
        if tok[0].isalpha() or tok[0] == "_":
            if tok not in self.ctx.names:
                raise PolyError(f"unknown identifier {tok!r}")
            return Polynomial.var(self.ctx, tok)
        raise PolyError(f"malformed expression {self.text!r}: unexpected {tok!r}")


def parse_poly(text: str, ctx: VarContext) -> Polynomial:
    """Parse ``+ - * / ^`` expressions over integer/rational literals."""
    return _Parser(text, ctx).parse()


def poly_arith(kind: str, a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise PolyError(f"unknown arithmetic kind {kind!r}")


# -- division and gcd -------------------------------------------------------

def divide_exact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient a/b, raising PolyError when b does not divide a."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lb, cb = b.lex_leading()
    rem = dict(a.terms)
    quot: dict[Exponent, Fraction] = {}
    while rem:
        lr = max(rem)
        diff = tuple(x - y for x, y in zip(lr, lb))
        if any(d < 0 for d in diff):
            raise PolyError("division is not exact")
        c = rem[lr] / cb
        quot[diff] = c
        for e, v in b.terms.items():
            key = tuple(x + y for x, y in zip(e, diff))
            s = rem.get(key, 0) - c * v
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return Polynomial._raw(a.ctx, quot)


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        divide_exact(a, b)
    except PolyError:
        return False
    return True


def _from_coeffs(coeffs: dict[int, Polynomial], i: int, ctx: VarContext) -> Polynomial:
    out: dict[Exponent, Fraction] = {}
    for k, c in coeffs.items():
        for e, v in c.terms.items():
            out[e[:i] + (k,) + e[i + 1:]] = v
    return Polynomial._raw(ctx, out)


def _content_in(p: Polynomial, i: int) -> Polynomial:
    return reduce(_gcd2, p.coefficients_in(i).values())


def _prem(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    """Sparse pseudo-remainder of a by b as univariate polynomials in x_i."""
    db = b.degree_in(i)
    bc = b.coefficients_in(i)
    lcb = bc[db]
    r = a
    while not r.is_zero() and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lcr = r.coefficients_in(i)[dr]
        shift = [0] * len(a.ctx)
        shift[i] = dr - db
        r = r * lcb - lcr * Polynomial.monomial(a.ctx, shift) * b
    return r


def _gcd2(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(a.ctx, 1)
    variables = a.support() | b.support()
    # main variable: highest degree across both inputs
    v = max(sorted(variables), key=lambda i: max(a.degree_in(i), b.degree_in(i)))
    if a.degree_in(v) <= 0:
        return _gcd2(a, _content_in(b, v))
    if b.degree_in(v) <= 0:
        return _gcd2(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa, pb = divide_exact(a, ca), divide_exact(b, cb)
    c = _gcd2(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            break
        if r.degree_in(v) <= 0:
            pb = Polynomial.constant(a.ctx, 1)
            break
        pa, pb = pb, divide_exact(r, _content_in(r, v))
    g = divide_exact(pb, _content_in(pb, v)) if pb.degree_in(v) > 0 else pb
    return (c * g).primitive()


def multivariate_gcd(a: Polynomial, *rest: Polynomial) -> Polynomial:
    """Normalised gcd (integer content 1, positive lex-leading coefficient)."""
    polys = (a,) + rest
    for p in rest:
        a._check(p)
    if all(p.is_zero() for p in polys):
        raise PolyError("gcd of zero polynomials is undefined")
    return reduce(_gcd2, polys, Polynomial.zero(a.ctx))


def _ugcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    # coefficient lists, lowest degree first, no trailing zeros
    while b:
        r = a[:]
        while len(r) >= len(b):
            f = r[-1] / b[-1]
            off = len(r) - len(b)
            for i, c in enumerate(b):
                r[off + i] -= f * c
            while r and r[-1] == 0:
                r.pop()
        a, b = b, r
    return a


def _on_line(p: Polynomial, a: Sequence[int], b: Sequence[int]) -> list[Fraction]:
    line = VarContext(("s",))
    s = Polynomial.var(line, 0)
    images = [s.scale(ai) + bi for ai, bi in zip(a, b)]
    q = p.substitute(images)
    out = [Fraction(0)] * (q.degree() + 1)
    for e, c in q.terms.items():
        out[e[0]] = c
    return out


def is_coprime(polys: Sequence[Polynomial], tries: int = 3) -> bool:
    """Whether the polynomials have no nonconstant common factor.

    For homogeneous inputs a common factor h survives restriction to the line
    ``s*a + b`` with its full degree whenever some input is nonzero at ``a``,
    so a constant gcd of the restrictions certifies coprimality.  Lines are
    drawn from a fixed-seed generator; if none certifies, the exact
    multivariate gcd decides.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise PolyError("gcd of zero polynomials is undefined")
    if any(p.is_constant() for p in polys):
        return True
    if all(p.is_homogeneous() for p in polys):
        rng = random.Random(len(polys))
        nv = len(polys[0].ctx)
        for _ in range(tries):
            a = [rng.randint(-50, 50) for _ in range(nv)]
            b = [rng.randint(-50, 50) for _ in range(nv)]
            if all(p.evaluate(a) == 0 for p in polys):
                continue
            g: list[Fraction] = []
            for p in polys:
                g = _ugcd(g, _on_line(p, a, b)) if g else _on_line(p, a, b)
                if len(g) == 1:
                    return True
    return multivariate_gcd(*polys).is_constant()


# -- homogenisation ---------------------------------------------------------

def dehomogenize(p: Polynomial, drop: int | Sequence[int],
                 blocks: Sequence[Sequence[int]] | None = None) -> Polynomial:
    """Set the dropped variable(s) to 1 and remove them from the context.

    A single index requires ``p`` homogeneous.  An index pair ``(i, j)``
    requires bihomogeneity with respect to ``blocks`` (default: the first and
    second halves of the context, as for the doubled ``x, y`` ring).
    """
    if isinstance(drop, int):
        if not p.is_homogeneous():
            raise PolyError(f"{p} is not homogeneous")
        idx = [drop]
    else:
        idx = list(drop)
        if blocks is None:
            half = len(p.ctx) // 2
            blocks = (range(half), range(half, len(p.ctx)))
        if not p.is_bihomogeneous(*blocks):
            raise PolyError(f"{p} is not bihomogeneous")
    keep = [i for i in range(len(p.ctx)) if i not in set(idx)]
    out: dict[Exponent, Fraction] = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in keep)
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Polynomial._raw(p.ctx.without(idx), out)


# -- matrices ---------------------------------------------------------------

Grid = Sequence[Sequence[Polynomial]]


def determinant(rows: Grid) -> Polynomial:
    """Cofactor expansion along columns, memoised over row subsets."""
    n = len(rows)
    if n == 0:
        raise PolyError("empty matrix")
    if any(len(r) != n for r in rows):
        raise PolyError("determinant needs a square matrix")
    ctx = rows[0][0].ctx
    return _minor_table(rows, ctx)(tuple(range(n)), 0)


def _minor_table(rows: Grid, ctx: VarContext, cols: Sequence[int] | None = None):
    """Return det(rowset, start): determinant on ``rowset`` x ``cols[start:]``."""
    cols = list(range(len(rows[0]))) if cols is None else list(cols)
    memo: dict[tuple[tuple[int, ...], int], Polynomial] = {}
    one = Polynomial.constant(ctx, 1)

    def det(rowset: tuple[int, ...], start: int) -> Polynomial:
        if start == len(cols):
            return one
        key = (rowset, start)
        if key in memo:
            return memo[key]
        c = cols[start]
        total = Polynomial.zero(ctx)
        for pos, r in enumerate(rowset):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            sub = det(rowset[:pos] + rowset[pos + 1:], start + 1)
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[key] = total
        return total

    return det


def maximal_minors_of(rows: Grid) -> list[Polynomial]:
    """Signed maximal minors of an (n+1) x n grid.

    Entry i is (-1)^i det(M without row i), so that the row vector of
    minors annihilates the matrix.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if nrows != ncols + 1:
        raise PolyError(f"expected an (n+1) x n matrix, got {nrows} x {ncols}")
    ctx = rows[0][0].ctx
    det = _minor_table(rows, ctx)
    out = []
    all_rows = tuple(range(nrows))
    for i in range(nrows):
        m = det(all_rows[:i] + all_rows[i + 1:], 0)
        out.append(-m if i % 2 else m)
    return out


def minors(rows: Grid, k: int) -> list[Polynomial]:
    """All k x k minors (row subsets x column subsets), zeros dropped."""
    nrows, ncols = len(rows), len(rows[0])
    ctx = rows[0][0].ctx
    out = []
    for cset in combinations(range(ncols), k):
        det = _minor_table(rows, ctx, cset)
        for rset in combinations(range(nrows), k):
            m = det(rset, 0)
            if not m.is_zero():
                out.append(m)
    return out


def column_degrees(rows: Grid) -> list[int]:
    """Common homogeneous degree of each column's nonzero entries."""
    if not rows or not rows[0]:
        raise PolyError("empty matrix")
    ncols = len(rows[0])
    degs = []
    for j in range(ncols):
        entries = [r[j] for r in rows if not r[j].is_zero()]
        if not entries:
            raise PolyError(f"column {j + 1} is entirely zero")
        found = set()
        for e in entries:
            if not e.is_homogeneous():
                raise PolyError(f"entry {e} in column {j + 1} is not homogeneous")
            found.add(e.degree())
        if len(found) != 1:
            raise PolyError(f"column {j + 1} mixes degrees {sorted(found)}")
        d = found.pop()
        if d < 1:
            raise PolyError(f"column {j + 1} has constant entries")
        degs.append(d)
    return degs


@dataclass(frozen=True, eq=False)
class HilbertBurchMatrix:
    """An (n+1) x n column-homogeneous polynomial matrix."""

    ctx: VarContext
    entries: tuple[tuple[Polynomial, ...], ...]
    column_degrees: tuple[int, ...] = ()

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries or not entries[0]:
            raise PolyError("empty matrix")
        if any(len(r) != len(entries[0]) for r in entries):
            raise PolyError("ragged matrix rows")
        if len(entries) != len(entries[0]) + 1:
            raise PolyError(f"Hilbert-Burch matrix must be (n+1) x n, got "
                            f"{len(entries)} x {len(entries[0])}")
        for r in entries:
            for e in r:
                if e.ctx != self.ctx:
                    raise ContextMismatch("matrix entry outside the matrix context")
        object.__setattr__(self, "column_degrees", tuple(column_degrees(entries)))

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], ctx: VarContext) -> "HilbertBurchMatrix":
        return cls(ctx, tuple(tuple(parse_poly(s, ctx) for s in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.entries]

    def column_support(self, j: int) -> set[int]:
        return set().union(*(e.support() for e in self.column(j)))

    def rename(self, ctx: VarContext) -> "HilbertBurchMatrix":
        return HilbertBurchMatrix(ctx, tuple(tuple(e.rename(ctx) for e in r) for r in self.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int],
                  ctx: VarContext) -> "HilbertBurchMatrix":
        return HilbertBurchMatrix(
            ctx, tuple(tuple(self.entries[i][j].restrict(ctx) for j in cols) for i in rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, HilbertBurchMatrix):
            return NotImplemented
        return self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.ctx, self.entries))

    def to_text(self) -> str:
        lines = ["vars: " + ",".join(self.ctx.names)]
        lines += [" | ".join(str(e) for e in r) for r in self.entries]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.to_text()


def maximal_minors(M: HilbertBurchMatrix) -> list[Polynomial]:
    return maximal_minors_of(M.entries)


def parse_matrix(text: str) -> HilbertBurchMatrix:
    """Read the ``vars:`` / ``a | b | ...`` matrix text format."""
    ctx = None
    rows: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ctx is None:
            if not line.startswith("vars:"):
                raise PolyError(f"line {lineno}: expected 'vars: x0,x1,...'")
            names = [n.strip() for n in line[5:].split(",") if n.strip()]
            if not names:
                raise PolyError(f"line {lineno}: no variables declared")
            ctx = VarContext(tuple(names))
            continue
        rows.append([cell.strip() for cell in line.split("|")])
    if ctx is None:
        raise PolyError("missing 'vars:' header")
    if not rows:
        raise PolyError("matrix has no rows")
    return HilbertBurchMatrix.from_strings(rows, ctx)
