"""Exact convex geometry over the rationals in ambient dimension <= 6.

Hulls, faces, Minkowski sums, Euclidean volumes, and normalized mixed
volumes, all decided by exact rational determinants; no tolerances anywhere.
The hull is an incremental beneath-beyond construction over a simplicial
facet complex, with coplanar pieces merged afterwards through canonical
primitive facet hyperplanes.  Volume accumulates during construction as the
sum of the initial simplex and the pyramids swept out by each insertion,
which is also how mixed volumes get their exact subset volumes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import Vector, det, dot, gram_solve, mat_rank, to_vec, vec_sub

MAX_DIM = 6

Point = Vector


def point(*coords) -> Point:
    return to_vec(coords)


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class FacetNormal:
    """Inner normal of a lower facet, scaled so the last coordinate is 1."""

    normal: Vector
    is_lower: bool = True


@dataclass(frozen=True)
class Polytope:
    """Convex hull given by its extreme points, lexicographically sorted."""

    vertices: tuple[Point, ...]
    ambient_dim: int
    affine_dim: int

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("empty polytopes are not constructed")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def to_json_obj(self) -> list[list[str]]:
        from .arith import format_rational

        return [[format_rational(c) for c in v] for v in self.vertices]

    @classmethod
    def from_json_obj(cls, obj: Sequence[Sequence[str]]) -> "Polytope":
        pts = [to_vec([Fraction(c) for c in v]) for v in obj]
        return convex_hull(pts)


# ---------------------------------------------------------------------------
# Affine coordinates
# ---------------------------------------------------------------------------


def _affine_dim(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return mat_rank([vec_sub(p, base) for p in points[1:]])


def _affine_basis(points: Sequence[Point]) -> tuple[Point, list[Vector]]:
    """Origin and a greedy independent set of difference vectors."""
    base = points[0]
    basis: list[Vector] = []
    rank = 0
    for p in points[1:]:
        candidate = basis + [vec_sub(p, base)]
        if mat_rank(candidate) > rank:
            basis = candidate
            rank += 1
    return base, basis


def _local_coords(points: Sequence[Point], base: Point, basis: list[Vector]) -> list[Vector]:
    """Coordinates t with x = base + B t, for x in the affine hull of basis."""
    from .linalg import solve_square

    d = len(basis)
    # pick d rows of B forming an invertible submatrix
    cols = basis
    ambient = len(base)
    rows_idx: list[int] = []
    for r in range(ambient):
        candidate = rows_idx + [r]
        sub = [[cols[j][i] for j in range(d)] for i in candidate]
        if mat_rank(sub) > len(rows_idx):
            rows_idx.append(r)
        if len(rows_idx) == d:
            break
    sub = [[cols[j][i] for j in range(d)] for i in rows_idx]
    out = []
    for p in points:
        diff = vec_sub(p, base)
        rhs = [diff[i] for i in rows_idx]
        t = solve_square(sub, rhs)
        if t is None:
            raise ArithmeticError("affine basis submatrix unexpectedly singular")
        out.append(tuple(t))
    return out


# ---------------------------------------------------------------------------
# Full-dimensional incremental hull
# ---------------------------------------------------------------------------


def _primitive(normal: Sequence[Fraction], offset: Fraction) -> tuple[tuple[int, ...], Fraction]:
    lcm = 1
    for x in normal:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in normal]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g == 0:
        raise ArithmeticError("zero facet normal")
    scale = Fraction(lcm, g)
    return tuple(v // g for v in ints), offset * scale


def _hyperplane(pts: Sequence[Point]) -> tuple[Vector, Fraction] | None:
    """Normal and offset of the hyperplane through d points in Q^d."""
    d = len(pts)
    rows = [vec_sub(p, pts[0]) for p in pts[1:]]
    normal = []
    for j in range(d):
        minor = [[row[i] for i in range(d) if i != j] for row in rows]
        sign = -1 if j % 2 else 1
        normal.append(sign * det(minor) if minor else Fraction(1))
    nvec = to_vec(normal)
    if all(x == 0 for x in nvec):
        return None
    return nvec, dot(nvec, pts[0])


@dataclass
class _Facet:
    verts: tuple[int, ...]
    normal: tuple[int, ...]
    offset: Fraction


class _Hull:
    """Exact hull of a full-dimensional point set in Q^d, d >= 1.

    Exposes ``vertex_ids``, canonical ``facets`` as (normal, offset,
    vertex-id frozenset) with normal.x >= offset over the hull, and the
    Euclidean ``volume``.
    """

    def __init__(self, pts: Sequence[Point], dim: int):
        self.pts = [to_vec(p) for p in pts]
        self.dim = dim
        if dim < 1:
            raise DimensionError("hull requires dimension >= 1")
        if dim == 1:
            self._build_1d()
        else:
            self._build()

    def _build_1d(self) -> None:
        xs = [(p[0], i) for i, p in enumerate(self.pts)]
        lo = min(xs)
        hi = max(xs)
        self.vertex_ids = [lo[1]] if lo[0] == hi[0] else sorted({lo[1], hi[1]})
        self.volume = hi[0] - lo[0]
        self.facets = [
            ((1,), lo[0], frozenset({lo[1]})),
            ((-1,), -hi[0], frozenset({hi[1]})),
        ]

    def _initial_simplex(self) -> list[int]:
        idx = [0]
        basis: list[Vector] = []
        for i in range(1, len(self.pts)):
            cand = basis + [vec_sub(self.pts[i], self.pts[0])]
            if mat_rank(cand) > len(basis):
                basis = cand
                idx.append(i)
            if len(idx) == self.dim + 1:
                return idx
        raise DimensionError("point set is not full-dimensional")

    def _oriented(self, verts: tuple[int, ...]) -> _Facet | None:
        hp = _hyperplane([self.pts[v] for v in verts])
        if hp is None:
            return None
        normal, offset = hp
        side = dot(normal, self._interior) - offset
        if side == 0:
            raise ArithmeticError("interior reference point on a facet hyperplane")
        if side < 0:
            normal = tuple(-x for x in normal)
            offset = -offset
        pn, po = _primitive(normal, offset)
        return _Facet(tuple(sorted(verts)), pn, po)

    def _build(self) -> None:
        d = self.dim
        simplex = self._initial_simplex()
        spts = [self.pts[i] for i in simplex]
        self._interior = tuple(
            sum(p[j] for p in spts) / Fraction(d + 1) for j in range(d)
        )
        self.volume = abs(det([vec_sub(p, spts[0]) for p in spts[1:]])) / math.factorial(d)
        facets: list[_Facet] = []
        for drop in range(d + 1):
            verts = tuple(v for k, v in enumerate(simplex) if k != drop)
            f = self._oriented(verts)
            if f is None:
                raise ArithmeticError("degenerate initial simplex facet")
            facets.append(f)

        in_simplex = set(simplex)
        for i, q in enumerate(self.pts):
            if i in in_simplex:
                continue
            visible = [f for f in facets if dot(f.normal, q) < f.offset]
            if not visible:
                continue
            for f in visible:
                self.volume += abs(
                    det([vec_sub(self.pts[v], q) for v in f.verts])
                ) / math.factorial(d)
            ridge_count: dict[tuple[int, ...], int] = {}
            for f in visible:
                for drop in range(d):
                    ridge = tuple(v for k, v in enumerate(f.verts) if k != drop)
                    ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
            horizon = [r for r, cnt in ridge_count.items() if cnt == 1]
            visible_set = {id(f) for f in visible}
            facets = [f for f in facets if id(f) not in visible_set]
            for ridge in horizon:
                nf = self._oriented(ridge + (i,))
                if nf is None:
                    raise ArithmeticError("degenerate facet from horizon ridge")
                facets.append(nf)

        self._finalize(facets)

    def _finalize(self, facets: list[_Facet]) -> None:
        by_plane: dict[tuple[tuple[int, ...], Fraction], None] = {}
        for f in facets:
            by_plane[(f.normal, f.offset)] = None
        geo: list[tuple[tuple[int, ...], Fraction, frozenset[int]]] = []
        for normal, offset in sorted(by_plane, key=lambda k: (k[0], k[1])):
            on = frozenset(
                i for i, p in enumerate(self.pts) if dot(to_vec(normal), p) == offset
            )
            geo.append((normal, offset, on))
        # a point is extreme iff its incident facet normals span the space
        incident: dict[int, list[tuple[int, ...]]] = {}
        for normal, _offset, on in geo:
            for i in on:
                incident.setdefault(i, []).append(normal)
        vertex_ids = [
            i
            for i, normals in incident.items()
            if mat_rank([to_vec(n) for n in normals]) == self.dim
        ]
        self.vertex_ids = sorted(vertex_ids)
        vset = set(self.vertex_ids)
        self.facets = [
            (normal, offset, on & vset) for normal, offset, on in geo
        ]


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    pts = [to_vec(p) for p in points]
    if not pts:
        raise ValueError("convex hull of an empty point list")
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise DimensionError("points of mixed ambient dimension")
    if ambient > MAX_DIM:
        raise DimensionError(f"ambient dimension {ambient} exceeds the cap {MAX_DIM}")
    pts = sorted(set(pts))
    adim = _affine_dim(pts)
    if adim == 0:
        return Polytope((pts[0],), ambient, 0)
    if adim == ambient:
        hull = _Hull(pts, ambient)
        verts = tuple(sorted(pts[i] for i in hull.vertex_ids))
        return Polytope(verts, ambient, adim)
    base, basis = _affine_basis(pts)
    local = _local_coords(pts, base, basis)
    hull = _Hull(local, adim)
    verts = tuple(sorted(pts[i] for i in hull.vertex_ids))
    return Polytope(verts, ambient, adim)


@lru_cache(maxsize=None)
def _structure(p: Polytope) -> _Hull:
    """Hull structure of P computed inside its own affine hull."""
    pts = list(p.vertices)
    if p.affine_dim == p.ambient_dim:
        return _Hull(pts, p.ambient_dim)
    base, basis = _affine_basis(pts)
    return _Hull(_local_coords(pts, base, basis), p.affine_dim)


def face(p: Polytope, w: Sequence) -> Polytope:
    """Sub-polytope of P minimizing the linear functional w.x."""
    wv = to_vec(w)
    if len(wv) != p.ambient_dim:
        raise DimensionError("functional dimension does not match the polytope")
    vals = [dot(wv, v) for v in p.vertices]
    mn = min(vals)
    sel = tuple(v for v, val in zip(p.vertices, vals) if val == mn)
    return Polytope(sel, p.ambient_dim, _affine_dim(sel))


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.ambient_dim != q.ambient_dim:
        raise DimensionError("Minkowski sum of polytopes in different dimensions")
    return convex_hull(
        tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices
    )


def project_pi(p: Polytope) -> Polytope:
    """Forget the last coordinate."""
    if p.ambient_dim < 2:
        raise DimensionError("projection requires ambient dimension >= 2")
    return convex_hull(v[:-1] for v in p.vertices)


def edges(p: Polytope) -> tuple[tuple[Point, Point], ...]:
    """All 1-dimensional faces, as sorted vertex pairs."""
    if p.affine_dim <= 0:
        return ()
    if p.affine_dim == 1:
        return ((p.vertices[0], p.vertices[-1]),)
    hull = _structure(p)
    nverts = len(p.vertices)
    out = []
    for i in range(nverts):
        for j in range(i + 1, nverts):
            shared = [f for f in hull.facets if i in f[2] and j in f[2]]
            if not shared:
                continue
            common = frozenset.intersection(*(f[2] for f in shared))
            if common == {i, j}:
                out.append((p.vertices[i], p.vertices[j]))
    return tuple(out)


def edge_count(p: Polytope) -> int:
    return len(edges(p))


def _full_dim_volume(pts: Sequence[Point], dim: int) -> Fraction:
    return _Hull(pts, dim).volume


@lru_cache(maxsize=None)
def volume(p: Polytope) -> Fraction:
    """Exact Euclidean volume in the ambient dimension; 0 when degenerate."""
    if p.affine_dim < p.ambient_dim:
        return Fraction(0)
    if p.ambient_dim == 0:
        return Fraction(0)
    return _full_dim_volume(list(p.vertices), p.ambient_dim)


def mixed_volume(polytopes: Sequence[Polytope]) -> Fraction:
    """Normalized mixed volume of n polytopes in R^n.

    Inclusion-exclusion over Minkowski sums of subsets, with the
    normalization fixed by the standard-simplex tuple having mixed volume 1;
    equivalently mixed_volume(P, ..., P) = n! volume(P).
    """
    ps = list(polytopes)
    n = len(ps)
    if n == 0:
        raise ValueError("mixed volume of an empty tuple")
    if n > MAX_DIM:
        raise DimensionError(f"mixed volume capped at dimension {MAX_DIM}")
    if any(p.ambient_dim != n for p in ps):
        raise DimensionError("mixed volume requires n polytopes in R^n")
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = 1 if (n - size) % 2 == 0 else -1
        for subset in itertools.combinations(range(n), size):
            pts = {
                tuple(sum(cs) for cs in zip(*combo))
                for combo in itertools.product(*(ps[i].vertices for i in subset))
            }
            pts_list = sorted(pts)
            if _affine_dim(pts_list) < n:
                continue
            total += sign * _full_dim_volume(pts_list, n)
    if total < 0:
        raise ArithmeticError(f"negative mixed volume {total}; hull computation broken")
    return total


# ---------------------------------------------------------------------------
# Lower facets
# ---------------------------------------------------------------------------


def _min_norm_preimage(basis: list[Vector], target: Sequence[Fraction]) -> Vector:
    """Minimum-norm r with B^T r = target, for independent columns B."""
    y = gram_solve(basis, target)
    n = len(basis[0])
    return tuple(
        sum(y[k] * basis[k][i] for k in range(len(basis))) for i in range(n)
    )


def lower_facets(p: Polytope) -> list[tuple[FacetNormal, Polytope]]:
    """Maximal faces of the lower hull, with inner normals scaled to (r, 1).

    The lower hull of P in R^(n+1) is the graph of the largest convex
    function under the vertex lifts; its maximal linearity regions are the
    returned facets.  For degenerate P the normal component r is the unique
    representative inside the span of the projected directions.
    """
    if p.ambient_dim < 2:
        raise DimensionError("lower facets require ambient dimension >= 2")
    n = p.ambient_dim - 1
    lowest: dict[Point, Point] = {}
    for v in p.vertices:
        u = v[:-1]
        if u not in lowest or v[-1] < lowest[u][-1]:
            lowest[u] = v
    kept = sorted(lowest.values())
    projs = [v[:-1] for v in kept]

    du = _affine_dim(projs)
    if du == 0:
        normal = FacetNormal(to_vec([0] * n + [1]))
        return [(normal, Polytope((kept[0],), p.ambient_dim, 0))]

    base_u, basis_u = _affine_basis(projs)
    t_coords = _local_coords(projs, base_u, basis_u)
    lifted = [t + (v[-1],) for t, v in zip(t_coords, kept)]

    results: list[tuple[FacetNormal, Polytope]] = []
    if _affine_dim(lifted) < du + 1:
        # single linearity region: heights are an affine function of t
        h0 = kept[0][-1]
        alpha: list[Fraction] = []
        seen = {tuple(t): v[-1] for t, v in zip(t_coords, kept)}
        for k in range(du):
            ek = tuple(Fraction(1 if i == k else 0) for i in range(du))
            alpha.append(seen[ek] - h0)
        r = _min_norm_preimage(basis_u, [-a for a in alpha])
        facet = convex_hull(kept)
        results.append((FacetNormal(r + (Fraction(1),)), facet))
        return results

    hull = _Hull(lifted, du + 1)
    for normal, _offset, on_ids in hull.facets:
        if normal[-1] <= 0:
            continue
        last = Fraction(normal[-1])
        s_local = [Fraction(normal[i]) / last for i in range(du)]
        r = _min_norm_preimage(basis_u, s_local)
        verts = tuple(sorted(kept[i] for i in on_ids))
        facet = Polytope(verts, p.ambient_dim, _affine_dim(verts))
        results.append((FacetNormal(r + (Fraction(1),)), facet))
    results.sort(key=lambda pair: pair[0].normal)
    return results
