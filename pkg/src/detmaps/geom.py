"""Lattice polytopes with exact hulls and volumes.

Hulls are computed by an integer beneath-beyond (placing) triangulation:
every visible boundary simplex spawns a new simplex with the inserted point,
so the volume comes out of the same pass that builds the facets.  All
arithmetic is on Python integers; the only division is the final ``1/d!``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product as iproduct
from math import factorial, gcd
from typing import Iterable, Sequence

from .poly import Polynomial

Point = tuple[int, ...]

MAX_DIM = 8
MAX_POINTS = 4096


class GeometryError(ValueError):
    pass


class ResourceError(RuntimeError):
    """A hull or enumeration would exceed the configured caps."""


# -- exact integer linear algebra --------------------------------------------

def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def integer_det(m: Sequence[Sequence[int]]) -> int:
    return _bareiss_det([list(r) for r in m])


def _normalize(v: list[int]) -> list[int]:
    g = reduce(gcd, v, 0)
    return [x // g for x in v] if g > 1 else v


class _Echelon:
    """Incremental integer row echelon basis (used for ranks and pivots)."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row)

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        for piv, row in self.rows:
            if v[piv]:
                a, b = row[piv], v[piv]
                v = _normalize([a * x - b * y for x, y in zip(v, row)])
        return v

    def add(self, v: Sequence[int]) -> bool:
        v = self.reduce(v)
        for j, x in enumerate(v):
            if x:
                self.rows.append((j, v))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(p for p, _ in self.rows)


def rank(vectors: Iterable[Sequence[int]], width: int) -> int:
    ech = _Echelon(width)
    for v in vectors:
        ech.add(v)
        if ech.rank == width:
            break
    return ech.rank


# -- hull kernel ----------------------------------------------------------------

def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _cofactor_normal(pts: Sequence[Point]) -> list[int]:
    """Generalised cross product of the d-1 edge vectors of a (d-1)-simplex."""
    base = pts[0]
    rows = [[a - b for a, b in zip(q, base)] for q in pts[1:]]
    d = len(base)
    normal = []
    for j in range(d):
        minor = [r[:j] + r[j + 1:] for r in rows]
        c = _bareiss_det(minor)
        normal.append(-c if j % 2 else c)
    return normal


@dataclass
class _Hull:
    vertices: list[Point]
    facets: list[tuple[tuple[int, ...], int]]   # primitive outward normal, offset
    volume_dfact: int                            # d! * volume
    dim: int


def _hull_full(pts: list[Point], d: int, simplex: list[int]) -> _Hull:
    if d == 1:
        lo, hi = min(p[0] for p in pts), max(p[0] for p in pts)
        return _Hull([(lo,), (hi,)], [((-1,), -lo), ((1,), hi)], hi - lo, 1)

    interior = [sum(pts[i][k] for i in simplex) for k in range(d)]  # scaled by d+1
    scale = d + 1

    facets: dict[int, tuple[tuple[int, ...], list[int], int]] = {}
    ridges: dict[frozenset, list[int]] = {}
    next_id = 0

    def add_facet(verts: tuple[int, ...]) -> None:
        nonlocal next_id
        normal = _cofactor_normal([pts[i] for i in verts])
        offset = _dot(normal, pts[verts[0]])
        if _dot(normal, interior) > scale * offset:
            normal = [-x for x in normal]
            offset = -offset
        fid = next_id
        next_id += 1
        facets[fid] = (verts, normal, offset)
        for k in range(len(verts)):
            ridges.setdefault(frozenset(verts[:k] + verts[k + 1:]), []).append(fid)

    for k in range(d + 1):
        add_facet(tuple(simplex[:k] + simplex[k + 1:]))
    base = pts[simplex[0]]
    vol = abs(_bareiss_det([[a - b for a, b in zip(pts[i], base)] for i in simplex[1:]]))

    # far points first keeps the placing triangulation small
    centre = [x * len(pts) for x in [sum(c) for c in zip(*pts)]]
    in_simplex = set(simplex)
    order = sorted((i for i in range(len(pts)) if i not in in_simplex),
                   key=lambda i: -sum((len(pts) * a - c) ** 2 for a, c in zip(pts[i], centre)))

    for pi in order:
        p = pts[pi]
        visible = []
        for fid, (verts, normal, offset) in facets.items():
            h = _dot(normal, p) - offset
            if h > 0:
                visible.append(fid)
                vol += h
        if not visible:
            continue
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = facets[fid][0]
            for k in range(len(verts)):
                key = frozenset(verts[:k] + verts[k + 1:])
                owners = ridges[key]
                other = owners[0] if owners[1] == fid else owners[1]
                if other not in vis:
                    horizon.append(verts[:k] + verts[k + 1:])
        for fid in visible:
            verts = facets.pop(fid)[0]
            for k in range(len(verts)):
                key = frozenset(verts[:k] + verts[k + 1:])
                owners = ridges[key]
                owners.remove(fid)
                if not owners:
                    del ridges[key]
        for r in horizon:
            add_facet(r + (pi,))

    planes = set()
    for verts, normal, offset in facets.values():
        g = reduce(gcd, normal, 0)
        planes.add((tuple(x // g for x in normal), offset // g))
    planes_list = sorted(planes)

    vertices = []
    for p in pts:
        tight = [n for n, b in planes_list if _dot(n, p) == b]
        if len(tight) >= d and rank(tight, d) == d:
            vertices.append(p)
    return _Hull(sorted(vertices), planes_list, vol, d)


def _affine_frame(pts: list[Point], d: int) -> tuple[list[int], list[int]]:
    """Indices of an affinely independent subset and the pivot coordinates."""
    ech = _Echelon(d)
    chosen = [0]
    base = pts[0]
    for i in range(1, len(pts)):
        if ech.add([a - b for a, b in zip(pts[i], base)]):
            chosen.append(i)
            if ech.rank == d:
                break
    return chosen, ech.pivots


def compute_hull(points: Iterable[Sequence[int]]) -> _Hull:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise GeometryError("hull of an empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise GeometryError("points of mixed dimension")
    if d > MAX_DIM:
        raise ResourceError(f"ambient dimension {d} exceeds cap {MAX_DIM}")
    if len(pts) > MAX_POINTS:
        raise ResourceError(f"{len(pts)} candidate points exceed cap {MAX_POINTS}")
    if len(pts) == 1 or d == 0:
        return _Hull(list(pts), [], 0, 0)
    simplex, pivots = _affine_frame(pts, d)
    r = len(simplex) - 1
    if r == d:
        return _hull_full(pts, d, simplex)
    if r == 0:
        return _Hull(pts[:1], [], 0, 0)
    # lower-dimensional: a coordinate projection injective on the affine hull
    proj = [tuple(p[j] for j in pivots) for p in pts]
    back = dict(zip(proj, pts))
    sub_simplex, _ = _affine_frame(proj, r)
    inner = _hull_full(proj, r, sub_simplex)
    return _Hull(sorted(back[v] for v in inner.vertices), [], 0, r)


# -- polytopes ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LatticePolytope:
    """Convex hull of finitely many integer points.

    ``vertices`` (the extreme points), ``dim`` and the exact volume are
    computed once at construction, so instances are immutable.
    """

    ambient_dim: int
    points: tuple[Point, ...]
    vertices: tuple[Point, ...] = field(init=False)
    dim: int = field(init=False)
    _volume: Fraction = field(init=False, repr=False)

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(x) for x in p) for p in self.points}))
        if not pts:
            raise GeometryError("a polytope needs at least one point")
        if any(len(p) != self.ambient_dim for p in pts):
            raise GeometryError(f"points must have length {self.ambient_dim}")
        hull = compute_hull(pts)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "vertices", tuple(hull.vertices))
        object.__setattr__(self, "dim", hull.dim)
        vol = Fraction(hull.volume_dfact, factorial(self.ambient_dim)) \
            if hull.dim == self.ambient_dim else Fraction(0)
        object.__setattr__(self, "_volume", vol)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], ambient_dim: int | None = None):
        pts = [tuple(p) for p in points]
        if ambient_dim is None:
            if not pts:
                raise GeometryError("a polytope needs at least one point")
            ambient_dim = len(pts[0])
        return cls(ambient_dim, tuple(pts))

    @property
    def volume(self) -> Fraction:
        return self._volume

    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        return minkowski_sum(self, other)

    def __rmul__(self, lam: int) -> "LatticePolytope":
        return scale(self, lam)

    def __repr__(self) -> str:
        return f"LatticePolytope(dim={self.ambient_dim}, vertices={list(self.vertices)})"


def hull_vertices(points: Iterable[Sequence[int]]) -> list[Point]:
    """Extreme points of the convex hull, in sorted order."""
    return list(compute_hull(points).vertices)


def newton_polytope(p: Polynomial) -> LatticePolytope:
    if p.is_zero():
        raise GeometryError("the zero polynomial has no Newton polytope")
    return LatticePolytope(len(p.ctx), tuple(p.terms))


def simplex(d: int) -> LatticePolytope:
    """The unit simplex S_d = conv(0, e_1, ..., e_d)."""
    pts = [(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return LatticePolytope(d, tuple(pts))


def cube(d: int) -> LatticePolytope:
    return LatticePolytope(d, tuple(iproduct((0, 1), repeat=d)))


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise GeometryError("Minkowski sum of polytopes in different dimensions")
    n = len(P.vertices) * len(Q.vertices)
    if n > MAX_POINTS:
        raise ResourceError(f"Minkowski sum needs {n} candidate points (cap {MAX_POINTS})")
    pts = {tuple(a + b for a, b in zip(u, v)) for u in P.vertices for v in Q.vertices}
    return LatticePolytope(P.ambient_dim, tuple(pts))


def scale(P: LatticePolytope, lam: int) -> LatticePolytope:
    if lam < 0:
        raise GeometryError("scale factor must be nonnegative")
    return LatticePolytope(P.ambient_dim, tuple(tuple(lam * x for x in v) for v in P.vertices))


def translate(P: LatticePolytope, t: Sequence[int]) -> LatticePolytope:
    return LatticePolytope(P.ambient_dim,
                           tuple(tuple(a + b for a, b in zip(v, t)) for v in P.vertices))


def linear_image(P: LatticePolytope, matrix: Sequence[Sequence[int]]) -> LatticePolytope:
    """Image under x -> A x for a square integer matrix A."""
    return LatticePolytope(len(matrix), tuple(
        tuple(_dot(row, v) for row in matrix) for v in P.vertices))


def embed(P: LatticePolytope, target_dim: int, offset: int) -> LatticePolytope:
    if offset < 0 or offset + P.ambient_dim > target_dim:
        raise GeometryError(f"cannot place a {P.ambient_dim}-dim polytope at offset "
                            f"{offset} in dimension {target_dim}")
    pad_l, pad_r = (0,) * offset, (0,) * (target_dim - offset - P.ambient_dim)
    return LatticePolytope(target_dim, tuple(pad_l + v + pad_r for v in P.vertices))


def project(P: LatticePolytope, coords: Sequence[int]) -> LatticePolytope:
    """Coordinate projection onto the listed coordinates."""
    return LatticePolytope(len(coords), tuple(tuple(v[j] for j in coords) for v in P.vertices))


def volume(P: LatticePolytope) -> Fraction:
    return P.volume


def parse_polytope(text: str) -> LatticePolytope:
    """Parse ``{(a,b,..);(c,d,..);...}``."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise GeometryError(f"polytope literal must be enclosed in braces: {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise GeometryError("empty polytope literal")
    pts = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise GeometryError(f"malformed point {chunk!r}")
        try:
            pts.append(tuple(int(x) for x in chunk[1:-1].split(",")))
        except ValueError:
            raise GeometryError(f"malformed point {chunk!r}") from None
    if len({len(p) for p in pts}) != 1:
        raise GeometryError("points of mixed dimension in polytope literal")
    return LatticePolytope.from_points(pts)


def format_polytope(P: LatticePolytope) -> str:
    return "{" + ";".join("(" + ",".join(map(str, v)) + ")" for v in P.vertices) + "}"
