"""Closed-form upper bounds for isolated torus roots of sparse systems.

Local bounds cover degree-d extensions of the p-adic rationals via the
ramification degree e and residue cardinality q = p^f; global bounds cover
degree-d number fields with roots of degree <= delta, reduced through the
2-adic embedding.  Every formula is evaluated with directed rounding, so the
reported decimal is >= the exact value of the bound expression and its
integer floor is still a valid bound for an integer root count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import (
    Interval,
    UpperReal,
    euler_ratio,
    format_rational,
    log_base,
    natural_log,
    require_prime,
)
from .linalg import to_vec
from .newton import SparseSystem, facet_count

FORMULA_THM1_LOCAL = "thm1_local"
FORMULA_THM1_GLOBAL = "thm1_global"
FORMULA_THM2_GENERAL = "thm2_general"
FORMULA_THM2_PER_EQ = "thm2_per_eq"
FORMULA_COR2_1 = "cor2_1"
FORMULA_COR3_1 = "cor3_1"
FORMULA_REMARK1_1 = "remark1_1"


@dataclass(frozen=True)
class FieldSpec:
    """Arithmetic context: a local field given by (p, e, f) with q = p^f and
    d = e*f, or a global field given by degree d and root-degree delta."""

    kind: str
    p: int
    e: int | None = None
    f: int | None = None
    d: int | None = None
    delta: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("local", "global"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        require_prime(self.p)
        if self.kind == "local":
            if not self.e or not self.f or self.e < 1 or self.f < 1:
                raise ValueError("local fields need ramification e >= 1 and residue degree f >= 1")
            if self.d is not None and self.d != self.e * self.f:
                raise ValueError("local degree must equal e*f; no factorization is guessed")
            object.__setattr__(self, "d", self.e * self.f)
        else:
            if not self.d or self.d < 1:
                raise ValueError("global fields need a degree d >= 1")
            if not self.delta or self.delta < 1:
                raise ValueError("global bounds need a root degree delta >= 1")

    @classmethod
    def local(cls, p: int, e: int = 1, f: int = 1) -> "FieldSpec":
        return cls(kind="local", p=p, e=e, f=f)

    @classmethod
    def global_field(cls, d: int, delta: int, p: int = 2) -> "FieldSpec":
        return cls(kind="global", p=p, d=d, delta=delta)

    @property
    def q(self) -> int:
        if self.kind != "local":
            raise ValueError("residue cardinality only exists for local fields")
        return self.p ** self.f


@dataclass(frozen=True)
class BoundReport:
    formula_id: str
    raw: UpperReal
    integer_bound: int
    inputs: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "raw": self.raw.to_decimal_string(30),
            "integer_bound": self.integer_bound,
            "inputs": {k: str(v) for k, v in sorted(self.inputs.items())},
            "notes": list(self.notes),
        }


def _report(
    formula_id: str, iv: Interval, inputs: dict, notes: tuple[str, ...] = ()
) -> BoundReport:
    raw = iv.upper()
    floor = raw.floor_int()
    if floor < 0:
        notes = notes + ("negative raw bound clamped to 0: no roots in this regime",)
        floor = 0
    return BoundReport(formula_id, raw, floor, inputs, notes)


def _zero_report(formula_id: str, inputs: dict, reason: str) -> BoundReport:
    return BoundReport(
        formula_id, Interval.exact(0).upper(), 0, inputs, (f"zero case: {reason}",)
    )


def valuation_vector_cap(m: int, n: int) -> int:
    """Combinatorial cap on the number of valuation vectors of torus roots:
    m-1, 4(m-1)^2, or (m(m-1)/2)^n according to n = 1, n = 2, n >= 3."""
    if m < 2:
        raise ValueError("the cap needs m >= 2")
    if n < 1:
        raise ValueError("the cap needs n >= 1")
    if n == 1:
        return m - 1
    if n == 2:
        return 4 * (m - 1) ** 2
    return (m * (m - 1) // 2) ** n


# ---------------------------------------------------------------------------
# Near-one root count bounds over the p-adic complex numbers
# ---------------------------------------------------------------------------


def _validate_r(r: Sequence, n: int) -> tuple[Fraction, ...]:
    rv = to_vec(r)
    if len(rv) != n:
        raise ValueError(f"r must have length {n}")
    if any(x <= 0 for x in rv):
        raise ValueError("r components must be positive")
    return rv


def _cp_general_interval(m: int, n: int, rv: tuple[Fraction, ...], p: int) -> Interval:
    s = sum(rv, Fraction(0))
    prod_r = math.prod(rv, start=Fraction(1))
    arg = Interval.from_fraction(Fraction((m - 1) ** n) / prod_r) / (
        natural_log(Fraction(p)) ** n
    )
    x = euler_ratio() * (m - 1) * (s + log_base(arg, p))
    return (x ** n) / prod_r


def _cp_per_equation_interval(
    m_list: Sequence[int], n: int, rv: tuple[Fraction, ...], p: int
) -> Interval:
    s = sum(rv, Fraction(0))
    prod_r = math.prod(rv, start=Fraction(1))
    ln_p_n = natural_log(Fraction(p)) ** n
    acc = euler_ratio() ** n
    for i, m_i in enumerate(m_list):
        arg = Interval.from_fraction(Fraction((m_i - 1) ** n) / prod_r) / ln_p_n
        acc = acc * ((m_i - 1) * (s + log_base(arg, p)) / rv[i])
    return acc


def cp_bound(m: int, n: int, r: Sequence, p: int) -> BoundReport:
    """Roots with every coordinate p-adically within r_i of 1: the general
    m-sparse form."""
    require_prime(p)
    rv = _validate_r(r, n)
    inputs = {"m": m, "n": n, "p": p, "r": tuple(format_rational(x) for x in rv)}
    if m <= n:
        return _zero_report(FORMULA_THM2_GENERAL, inputs, "m <= n")
    return _report(FORMULA_THM2_GENERAL, _cp_general_interval(m, n, rv, p), inputs)


def cp_bound_per_equation(
    m_list: Sequence[int], n: int, r: Sequence, p: int
) -> BoundReport:
    """Sharper near-one bound using the per-equation term counts."""
    require_prime(p)
    rv = _validate_r(r, n)
    m_list = tuple(int(m) for m in m_list)
    if len(m_list) != n:
        raise ValueError("need one term count per equation")
    inputs = {
        "m_list": m_list,
        "n": n,
        "p": p,
        "r": tuple(format_rational(x) for x in rv),
    }
    if any(m_i <= 1 for m_i in m_list):
        return _zero_report(FORMULA_THM2_PER_EQ, inputs, "some m_i <= 1")
    return _report(
        FORMULA_THM2_PER_EQ, _cp_per_equation_interval(m_list, n, rv, p), inputs
    )


# ---------------------------------------------------------------------------
# Local and global headline bounds
# ---------------------------------------------------------------------------


def _local_interval(fs: FieldSpec, m: int, n: int) -> Interval:
    p, d = fs.p, fs.d
    arg = Interval.from_fraction(Fraction(d * (m - 1))) / natural_log(Fraction(p))
    inner = (
        euler_ratio()
        * (m - 1)
        * n
        * (p**d - 1)
        * (1 + d * log_base(arg, p))
    )
    return valuation_vector_cap(m, n) * (inner ** n)


def local_bound(fs: FieldSpec, m: int, n: int, k: int) -> BoundReport:
    """Isolated torus roots in a degree-d extension of the p-adics."""
    if fs.kind != "local":
        raise ValueError("local bound requires a local field spec")
    inputs = {"m": m, "n": n, "k": k, "p": fs.p, "d": fs.d, "e": fs.e, "q": fs.q}
    if m <= n or k < n:
        return _zero_report(FORMULA_THM1_LOCAL, inputs, "m <= n or k < n")
    return _report(FORMULA_THM1_LOCAL, _local_interval(fs, m, n), inputs)


def _global_interval(fs: FieldSpec, m: int, n: int) -> Interval:
    d, delta = fs.d, fs.delta
    dd = d * delta
    arg = Interval.from_fraction(Fraction(d * d * delta * delta * (m - 1))) / natural_log(
        Fraction(2)
    )
    inner = (
        euler_ratio()
        * (m - 1)
        * n
        * 2**dd
        * (1 + 2 * d * d * delta * delta * log_base(arg, 2))
    )
    return 2 * valuation_vector_cap(m, n) * (inner ** n)


def global_bound(fs: FieldSpec, m: int, n: int, k: int) -> BoundReport:
    """Isolated roots of degree <= delta over a degree-d number field."""
    if fs.kind != "global":
        raise ValueError("global bound requires a global field spec")
    inputs = {"m": m, "n": n, "k": k, "d": fs.d, "delta": fs.delta}
    notes = ("zero condition applied as k < n, matching the local statement",)
    if m <= n or k < n:
        return _zero_report(FORMULA_THM1_GLOBAL, inputs, "m <= n or k < n")
    return _report(FORMULA_THM1_GLOBAL, _global_interval(fs, m, n), inputs, notes)


def local_facet_bound_from_counts(
    facets: int,
    n: int,
    fs: FieldSpec,
    m: int | None = None,
    m_list: Sequence[int] | None = None,
) -> BoundReport:
    """Facet-count refinement of the local bound.

    Uses the per-equation near-one bound when per-equation term counts are
    supplied (valid for square systems), otherwise the general form with the
    total count m; the notes record which form was used.
    """
    if fs.kind != "local":
        raise ValueError("the facet refinement applies to local fields")
    r = tuple(Fraction(1, fs.e) for _ in range(n))
    inputs = {"facets": facets, "n": n, "p": fs.p, "e": fs.e, "q": fs.q}
    if m is not None:
        inputs["m"] = m
        if m <= n:
            return _zero_report(FORMULA_COR2_1, inputs, "m <= n")
    if m_list is not None:
        inputs["m_list"] = tuple(m_list)
        if any(m_i <= 1 for m_i in m_list):
            return _zero_report(FORMULA_COR2_1, inputs, "some m_i <= 1")
        cp = _cp_per_equation_interval(tuple(m_list), n, r, fs.p)
        note = "per-equation near-one form"
    else:
        if m is None:
            raise ValueError("need m or m_list")
        cp = _cp_general_interval(m, n, r, fs.p)
        note = "general near-one form"
    iv = facets * ((fs.q - 1) ** n) * cp
    return _report(FORMULA_COR2_1, iv, inputs, (note,))


def local_facet_bound(
    F: SparseSystem, fs: FieldSpec, use_general_cp: bool = False
) -> BoundReport:
    if F.k < F.n:
        raise ValueError("facet bound needs k >= n")
    facets = facet_count(F, fs.p)
    if F.k == F.n and not use_general_cp:
        return local_facet_bound_from_counts(
            facets, F.n, fs, m=F.m, m_list=F.m_counts
        )
    return local_facet_bound_from_counts(facets, F.n, fs, m=F.m)


def global_facet_sum_bound_from_counts(
    facets: int, m: int, n: int, d: int, delta: int
) -> BoundReport:
    """Facet-count refinement of the global bound: the sum over subgroup
    levels j of (2^j - 1)^n times the 2-adic near-one bound at radius
    1/(ceil(d*delta/j) * d*delta)."""
    dd = d * delta
    inputs = {"facets": facets, "m": m, "n": n, "d": d, "delta": delta}
    if m <= n:
        return _zero_report(FORMULA_COR3_1, inputs, "m <= n")
    total = Interval.exact(0)
    radii = []
    for j in range(1, dd + 1):
        denom = -(-dd // j) * dd
        r = tuple(Fraction(1, denom) for _ in range(n))
        radii.append(format_rational(Fraction(1, denom)))
        total = total + ((2**j - 1) ** n) * _cp_general_interval(m, n, r, 2)
    iv = facets * total
    notes = (
        "2-adic embedding fixes p = 2 for every summand",
        "per-level radii: " + ", ".join(radii),
    )
    return _report(FORMULA_COR3_1, iv, inputs, notes)


def global_facet_sum_bound(F: SparseSystem, d: int, delta: int) -> BoundReport:
    if F.k < F.n:
        raise ValueError("facet bound needs k >= n")
    facets = facet_count(F, 2)
    return global_facet_sum_bound_from_counts(facets, F.m, F.n, d, delta)


def affine_bound(base: str, fs: FieldSpec, m: int, n: int, k: int) -> BoundReport:
    """Bound off the torus: zero coordinates handled by summing the bound
    over all variable subsets, with the 2^n relaxation reported alongside."""
    if base == FORMULA_THM1_LOCAL:
        interval_at = lambda j: _local_interval(fs, m, j) if (m > j and k >= j) else Interval.exact(0)
    elif base == FORMULA_THM1_GLOBAL:
        interval_at = lambda j: _global_interval(fs, m, j) if (m > j and k >= j) else Interval.exact(0)
    else:
        raise ValueError("affine bound builds on thm1_local or thm1_global")
    exact = Interval.exact(1)
    for j in range(1, n + 1):
        exact = exact + math.comb(n, j) * interval_at(j)
    relaxed = Interval.exact(1) + (2**n) * interval_at(n)
    inputs = {"base": base, "m": m, "n": n, "k": k}
    notes = (
        f"relaxed form 1 + 2^n * B_n evaluates to {relaxed.upper().to_decimal_string(30)}",
        f"exact subset sum <= relaxation: {exact.hi <= relaxed.hi}",
    )
    return _report(FORMULA_REMARK1_1, exact, inputs, notes)


# ---------------------------------------------------------------------------
# The weighted-log implication used in the containment proof machinery
# ---------------------------------------------------------------------------


def log_inequality_check(
    r: Sequence, t: Sequence, m: int, p: int
) -> tuple[bool, bool]:
    """Evaluate the two sides of the slow-decay implication.

    Returns (hypothesis, conclusion) where the hypothesis is True only when
    it certainly holds and the conclusion is True unless it certainly fails;
    with those semantics, asserting hypothesis-implies-conclusion can only
    fail on a genuine violation beyond interval slack.
    """
    require_prime(p)
    rv = to_vec(r)
    tv = to_vec(t)
    if len(rv) != len(tv):
        raise ValueError("r and t must have equal length")
    if any(x <= 0 for x in rv) or any(x <= 0 for x in tv):
        raise ValueError("r and t must be positive")
    if m < 2:
        raise ValueError("m must be at least 2")
    n = len(rv)
    s_rt = sum((a * b for a, b in zip(rv, tv)), Fraction(0))
    s_r = sum(rv, Fraction(0))
    log_sum = Interval.exact(0)
    for x in tv:
        log_sum = log_sum + log_base(x, p)
    lhs_hyp = Interval.from_fraction(s_rt) - (m - 1) * log_sum
    hypothesis = lhs_hyp.certainly_le(Fraction(m - 1) * s_r)

    prod_r = math.prod(rv, start=Fraction(1))
    arg = Interval.from_fraction(Fraction((m - 1) ** n) / prod_r) / (
        natural_log(Fraction(p)) ** n
    )
    rhs = euler_ratio() * (m - 1) * (s_r + log_base(arg, p))
    conclusion = Interval.from_fraction(s_rt).possibly_le(rhs)
    return hypothesis, conclusion
