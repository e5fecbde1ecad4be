"""p-adic Newton machinery for sparse Laurent polynomial systems.

A sparse polynomial lifts to the hull of its (exponent, coefficient
valuation) points; the lower facets of the aggregated system polytope
enumerate every valuation vector a torus root can have, and the mixed volume
of the projected faces at a given valuation bounds the number of roots
carrying it.  The shift f(1+x) and the scaled-simplex containment check at
the bottom of the file exercise the slow-valuation-decay phenomenon that
drives the near-one root bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import (
    Interval,
    UpperReal,
    euler_ratio,
    format_rational,
    log_base,
    natural_log,
    ord_p_value,
    require_prime,
)
from .linalg import dot, nonneg_solution_exists, to_vec
from .polyhedra import (
    Polytope,
    convex_hull,
    face,
    lower_facets,
    minkowski_sum,
    mixed_volume,
    project_pi,
)

MAX_SHIFT_DEGREE = 30
MAX_SHIFT_VARS = 3

Exponent = tuple[int, ...]


class CancellationError(ArithmeticError):
    """Summing the system's polynomials cancelled every coefficient."""


class CapExceededError(ValueError):
    """A desk-scale expansion cap was exceeded."""


@dataclass(frozen=True)
class SparsePolynomial:
    """Nonzero Laurent polynomial as a sorted (exponent, coefficient) tuple."""

    terms: tuple[tuple[Exponent, Fraction], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("polynomials must have at least one term")
        n = len(self.terms[0][0])
        for exp, coeff in self.terms:
            if len(exp) != n:
                raise ValueError("mixed exponent lengths in one polynomial")
            if coeff == 0:
                raise ValueError("zero coefficients must not be stored")

    @classmethod
    def from_dict(cls, terms: Mapping[Sequence[int], Fraction | int]) -> "SparsePolynomial":
        cleaned = []
        for exp, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff != 0:
                cleaned.append((tuple(int(e) for e in exp), coeff))
        return cls(tuple(sorted(cleaned)))

    @property
    def n(self) -> int:
        return len(self.terms[0][0])

    @property
    def m(self) -> int:
        return len(self.terms)

    @property
    def support(self) -> tuple[Exponent, ...]:
        return tuple(exp for exp, _ in self.terms)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def evaluate(self, xs: Sequence[Fraction]) -> Fraction:
        if len(xs) != self.n:
            raise ValueError("evaluation point has wrong dimension")
        total = Fraction(0)
        for exp, coeff in self.terms:
            term = coeff
            for x, e in zip(xs, exp):
                term *= Fraction(x) ** e
            total += term
        return total

    def total_degree(self) -> int:
        return max(sum(exp) for exp, _ in self.terms)


def poly_sum(polys: Iterable[SparsePolynomial]) -> SparsePolynomial:
    acc: dict[Exponent, Fraction] = {}
    for f in polys:
        for exp, coeff in f.terms:
            acc[exp] = acc.get(exp, Fraction(0)) + coeff
    cleaned = {e: c for e, c in acc.items() if c != 0}
    if not cleaned:
        raise CancellationError("coefficient-wise sum cancelled to the zero polynomial")
    return SparsePolynomial.from_dict(cleaned)


def laurent_normalize(f: SparsePolynomial) -> SparsePolynomial:
    """Divide out the full common monomial, making the minimum exponent zero
    in every variable.

    Torus roots and lower Newton structure are preserved up to a lattice
    translation of the lift.
    """
    mins = [min(exp[i] for exp, _ in f.terms) for i in range(f.n)]
    if all(v == 0 for v in mins):
        return f
    return SparsePolynomial(
        tuple(
            (tuple(e - m for e, m in zip(exp, mins)), coeff)
            for exp, coeff in f.terms
        )
    )


def clear_negative_exponents(f: SparsePolynomial) -> SparsePolynomial:
    """Multiply by the smallest monomial making every exponent nonnegative;
    nonnegative exponents are left untouched."""
    mins = [min(0, min(exp[i] for exp, _ in f.terms)) for i in range(f.n)]
    if all(v == 0 for v in mins):
        return f
    return SparsePolynomial(
        tuple(
            (tuple(e - m for e, m in zip(exp, mins)), coeff)
            for exp, coeff in f.terms
        )
    )


@dataclass(frozen=True)
class SparseSystem:
    polynomials: tuple[SparsePolynomial, ...]
    n: int

    def __post_init__(self) -> None:
        if not self.polynomials:
            raise ValueError("systems must contain at least one polynomial")
        for f in self.polynomials:
            if f.n != self.n:
                raise ValueError("polynomial variable count does not match system")

    @classmethod
    def of(cls, polys: Sequence[SparsePolynomial]) -> "SparseSystem":
        return cls(tuple(polys), polys[0].n)

    @property
    def k(self) -> int:
        return len(self.polynomials)

    @property
    def m(self) -> int:
        return len({exp for f in self.polynomials for exp in f.support})

    @property
    def m_counts(self) -> tuple[int, ...]:
        return tuple(f.m for f in self.polynomials)

    # JSON schema: {"n": int, "polynomials": [[{"exp": [...], "coeff": "num/den"}], ...]}

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "polynomials": [
                [
                    {"exp": list(exp), "coeff": format_rational(coeff)}
                    for exp, coeff in f.terms
                ]
                for f in self.polynomials
            ],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "SparseSystem":
        n = int(obj["n"])
        polys = []
        for terms in obj["polynomials"]:
            d = {tuple(int(e) for e in t["exp"]): Fraction(str(t["coeff"])) for t in terms}
            f = SparsePolynomial.from_dict(d)
            if f.n != n:
                raise ValueError("exponent length disagrees with declared n")
            polys.append(f)
        return cls(tuple(polys), n)


# ---------------------------------------------------------------------------
# Lifted polytopes
# ---------------------------------------------------------------------------


def newton_polytope(f: SparsePolynomial, p: int) -> Polytope:
    """Hull of the (exponent, coefficient valuation) lift in R^(n+1)."""
    require_prime(p)
    pts = [exp + (ord_p_value(coeff, p),) for exp, coeff in f.terms]
    return convex_hull(pts)


def system_polytope(F: SparseSystem, p: int) -> Polytope:
    """Aggregated lift: Newton polytope of the sum for k > n, else the
    Minkowski sum of the individual Newton polytopes."""
    if F.k < F.n:
        raise ValueError("aggregated polytope needs k >= n")
    if F.k > F.n:
        return newton_polytope(poly_sum(F.polynomials), p)
    acc = newton_polytope(F.polynomials[0], p)
    for f in F.polynomials[1:]:
        acc = minkowski_sum(acc, newton_polytope(f, p))
    return acc


def facet_count(F: SparseSystem, p: int) -> int:
    """Number of lower facets of the aggregated lift."""
    count = len(lower_facets(system_polytope(F, p)))
    from .bounds import valuation_vector_cap

    cap = valuation_vector_cap(F.m, F.n) if F.m >= 2 else 1
    if count > cap:
        raise ArithmeticError(
            f"lower facet count {count} exceeds the combinatorial cap {cap}"
        )
    return count


def candidate_valuations(F: SparseSystem, p: int) -> list[tuple[Fraction, ...]]:
    """All r with (r, 1) a lower facet normal of the aggregated lift and a
    positive mixed volume of the projected face tuple.

    Requires a square system; reduce overdetermined systems first.
    """
    if F.k != F.n:
        raise ValueError("candidate valuations require k = n (reduce the system first)")
    lifted = [newton_polytope(f, p) for f in F.polynomials]
    acc = lifted[0]
    for q in lifted[1:]:
        acc = minkowski_sum(acc, q)
    out = []
    for fn, _facet in lower_facets(acc):
        r = fn.normal[:-1]
        faces = [project_pi(face(q, fn.normal)) for q in lifted]
        if mixed_volume(faces) > 0:
            out.append(r)
    return sorted(set(out))


def valuation_face_bound(F: SparseSystem, p: int, r: Sequence[Fraction]) -> int:
    """Mixed volume of the projected faces at valuation vector r.

    Bounds the number of torus roots whose coordinatewise valuations equal
    r; an integer under the standard-simplex normalization, which is
    asserted rather than assumed.
    """
    if F.k != F.n:
        raise ValueError("face bound requires k = n")
    rv = to_vec(r)
    if len(rv) != F.n:
        raise ValueError("valuation vector has wrong dimension")
    w = rv + (Fraction(1),)
    faces = [project_pi(face(newton_polytope(f, p), w)) for f in F.polynomials]
    mv = mixed_volume(faces)
    if mv.denominator != 1:
        raise ArithmeticError(
            f"face mixed volume {mv} is not an integer; normalization broken"
        )
    return int(mv)


# ---------------------------------------------------------------------------
# Shifts
# ---------------------------------------------------------------------------


def _check_shift_caps(f: SparsePolynomial) -> SparsePolynomial:
    if f.n > MAX_SHIFT_VARS:
        raise CapExceededError(f"shift supports at most {MAX_SHIFT_VARS} variables")
    g = clear_negative_exponents(f)
    if g.total_degree() > MAX_SHIFT_DEGREE:
        raise CapExceededError(
            f"shift supports total degree <= {MAX_SHIFT_DEGREE}"
        )
    return g


def shift_polynomial(f: SparsePolynomial) -> SparsePolynomial:
    """Exact expansion of f(1+x_1, ..., 1+x_n) after clearing Laurent terms."""
    import itertools

    g = _check_shift_caps(f)
    acc: dict[Exponent, Fraction] = {}
    for exp, coeff in g.terms:
        for t in itertools.product(*(range(e + 1) for e in exp)):
            weight = coeff
            for a_i, t_i in zip(exp, t):
                weight *= math.comb(a_i, t_i)
            if weight != 0:
                acc[t] = acc.get(t, Fraction(0)) + weight
    cleaned = {e: c for e, c in acc.items() if c != 0}
    return SparsePolynomial.from_dict(cleaned)


def shift_system(F: SparseSystem) -> SparseSystem:
    return SparseSystem.of([shift_polynomial(f) for f in F.polynomials])


# ---------------------------------------------------------------------------
# Scaled simplex and the containment check
# ---------------------------------------------------------------------------

BORDERLINE_MARGIN = Fraction(1, 10**15)


@dataclass(frozen=True)
class ScaledSimplex:
    """Region t >= 0, sum r_j t_j <= radius, with the radius rounded upward.

    The radius is c(m-1)[sum r_j + log_p((m-1)^n / (r_1...r_n ln^n p))];
    upward rounding can only enlarge the region, which is the sound direction
    for containment testing.
    """

    m: int
    n: int
    r: tuple[Fraction, ...]
    p: int
    radius: UpperReal

    @classmethod
    def build(cls, m: int, n: int, r: Sequence[Fraction], p: int) -> "ScaledSimplex":
        require_prime(p)
        rv = to_vec(r)
        if len(rv) != n or any(x <= 0 for x in rv):
            raise ValueError("r must be a length-n vector of positive rationals")
        if m < 2:
            radius = Interval.exact(0).upper()
        else:
            prod_r = math.prod(rv, start=Fraction(1))
            arg = Interval.from_fraction(Fraction((m - 1) ** n) / prod_r) / (
                natural_log(Fraction(p)) ** n
            )
            s = sum(rv, Fraction(0))
            radius = (euler_ratio() * (m - 1) * (s + log_base(arg, p))).upper()
        return cls(m, n, rv, p, radius)

    def radius_fraction(self) -> Fraction:
        return self.radius.as_fraction()

    def contains(self, t: Sequence[Fraction | int]) -> bool:
        tv = to_vec(t)
        if any(x < 0 for x in tv):
            return False
        return dot(self.r, tv) <= self.radius_fraction()

    def is_borderline(self, t: Sequence[Fraction | int]) -> bool:
        return abs(dot(self.r, to_vec(t)) - self.radius_fraction()) <= BORDERLINE_MARGIN


def _pareto_minimal(points: dict[Exponent, Fraction]) -> list[Exponent]:
    """Points minimal for the product order on (exponent, weighted height)."""
    items = sorted(points.items())
    out = []
    for t, z in items:
        dominated = False
        for t2, z2 in items:
            if t2 != t and z2 <= z and all(a <= b for a, b in zip(t2, t)):
                dominated = True
                break
        if not dominated:
            out.append(t)
    return out


def _sloped_support(
    g: SparsePolynomial, p: int, r: tuple[Fraction, ...]
) -> list[Exponent]:
    """Support points of g on some lower face whose normal (s, 1) has s >= r.

    A point t qualifies exactly when there is y >= 0 with, for every support
    point t', y.(t'-t) >= z_t - z_{t'} where z is the r-weighted valuation
    lift; the weighted form absorbs the shift s = r + y.  Feasibility is
    decided exactly, with constraints reduced to the dominance staircase
    first (dominated constraints are implied by their dominators).
    """
    z = {
        exp: ord_p_value(coeff, p) + dot(to_vec(r), to_vec(exp))
        for exp, coeff in g.terms
    }
    staircase = _pareto_minimal(z)
    members = []
    for t, zt in sorted(z.items()):
        # cheap exclusion: a strictly lower staircase point below t
        strict_dom = any(
            z[t2] < zt and all(a <= b for a, b in zip(t2, t))
            for t2 in staircase
            if t2 != t
        )
        if strict_dom:
            continue
        rows = []
        rhs = []
        for t2 in staircase:
            if t2 == t:
                continue
            rows.append(to_vec(tuple(b - a for a, b in zip(t, t2))))
            rhs.append(zt - z[t2])
        if nonneg_solution_exists(rows, rhs):
            members.append(t)
    return members


@dataclass(frozen=True)
class ContainmentReport:
    ok: bool
    checked: int
    outside: tuple[tuple[int, Exponent], ...]
    borderline: tuple[tuple[int, Exponent], ...]


def containment_report(
    F: SparseSystem, p: int, r: Sequence[Fraction]
) -> ContainmentReport:
    """Check that every sloped support point of each shifted polynomial lies
    in the scaled simplex for its term count."""
    require_prime(p)
    rv = to_vec(r)
    if len(rv) != F.n or any(x <= 0 for x in rv):
        raise ValueError("r must be a positive vector of length n")
    outside = []
    borderline = []
    checked = 0
    for i, f in enumerate(F.polynomials):
        g = shift_polynomial(f)
        simplex = ScaledSimplex.build(f.m, F.n, rv, p)
        for t in _sloped_support(g, p, rv):
            checked += 1
            if not simplex.contains(t):
                outside.append((i, t))
            elif simplex.is_borderline(t):
                borderline.append((i, t))
    return ContainmentReport(
        ok=not outside,
        checked=checked,
        outside=tuple(outside),
        borderline=tuple(borderline),
    )


def containment_check(F: SparseSystem, p: int, r: Sequence[Fraction]) -> bool:
    return containment_report(F, p, r).ok
