import math
import random
from decimal import Decimal
from fractions import Fraction

import pytest

from rootbounds.bounds import (
    FORMULA_COR2_1,
    FORMULA_COR3_1,
    FORMULA_REMARK1_1,
    FORMULA_THM1_GLOBAL,
    FORMULA_THM1_LOCAL,
    FORMULA_THM2_GENERAL,
    FORMULA_THM2_PER_EQ,
    FieldSpec,
    affine_bound,
    cp_bound,
    cp_bound_per_equation,
    global_bound,
    global_facet_sum_bound_from_counts,
    local_bound,
    local_facet_bound,
    local_facet_bound_from_counts,
    log_inequality_check,
    valuation_vector_cap,
)
from rootbounds.newton import SparsePolynomial, SparseSystem

SEED = 0xB0B


Q2 = FieldSpec.local(2, 1, 1)


def test_field_spec_validation():
    fs = FieldSpec.local(3, 2, 2)
    assert fs.d == 4 and fs.q == 9
    assert fs.e <= fs.d and fs.q <= fs.p**fs.d
    with pytest.raises(ValueError):
        FieldSpec.local(4, 1, 1)  # not prime
    with pytest.raises(ValueError):
        FieldSpec.local(2, 0, 1)
    with pytest.raises(ValueError):
        FieldSpec(kind="local", p=2, e=2, f=1, d=3)  # inconsistent degree
    with pytest.raises(ValueError):
        FieldSpec.global_field(0, 1)
    with pytest.raises(ValueError):
        FieldSpec(kind="other", p=2)


def test_valuation_vector_cap():
    assert valuation_vector_cap(5, 2) == 64
    assert valuation_vector_cap(2, 1) == 1
    assert valuation_vector_cap(4, 3) == 216
    with pytest.raises(ValueError):
        valuation_vector_cap(1, 1)


# ---------------------------------------------------------------------------
# near-one bounds
# ---------------------------------------------------------------------------


def test_cp_zero_case():
    rep = cp_bound(2, 2, (Fraction(1), Fraction(1)), 3)
    assert rep.integer_bound == 0
    assert rep.raw.value == 0


def test_cp_trinomial_reference_value():
    rep = cp_bound(3, 1, (Fraction(1),), 2)
    assert abs(rep.raw.value - Decimal("8.0009")) < Decimal("0.001")
    assert rep.integer_bound == 8


def test_cp_doubling_r_never_increases_small_radii():
    rep1 = cp_bound(4, 2, (Fraction(1, 8), Fraction(1, 8)), 2)
    rep2 = cp_bound(4, 2, (Fraction(1, 4), Fraction(1, 4)), 2)
    assert rep2.raw.value <= rep1.raw.value


def test_cp_per_equation_reference_value():
    rep = cp_bound_per_equation((3, 3), 2, (Fraction(1), Fraction(1)), 2)
    assert abs(rep.raw.value - Decimal("256.05")) < Decimal("0.05")


def test_cp_per_equation_zero_case():
    rep = cp_bound_per_equation((3, 1), 2, (Fraction(1), Fraction(1)), 2)
    assert rep.integer_bound == 0


def test_cp_equal_term_counts_match_general_form():
    rng = random.Random(SEED)
    for _ in range(10):
        n = rng.randint(1, 3)
        m = rng.randint(n + 1, n + 5)
        r = tuple(Fraction(rng.randint(1, 8), rng.randint(1, 8)) for _ in range(n))
        p = rng.choice([2, 3, 5])
        a = cp_bound(m, n, r, p)
        b = cp_bound_per_equation((m,) * n, n, r, p)
        assert a.integer_bound == b.integer_bound
        rel = abs(a.raw.value - b.raw.value) / max(a.raw.value, Decimal(1))
        assert rel < Decimal("1e-25")


# ---------------------------------------------------------------------------
# local bounds
# ---------------------------------------------------------------------------


def test_local_bound_zero_cases():
    assert local_bound(Q2, 3, 3, 5).integer_bound == 0
    assert local_bound(Q2, 5, 2, 1).integer_bound == 0


def test_local_bound_headline_value():
    rep = local_bound(Q2, 5, 2, 2)
    assert abs(rep.integer_bound - 127645) / 127645 < 0.001


def test_local_bound_cross_checked_by_float_evaluation():
    fs = FieldSpec.local(3, 1, 1)
    rep = local_bound(fs, 2, 1, 1)
    c = math.e / (math.e - 1)
    inner = c * 1 * 1 * (3 - 1) * (1 + math.log(1 * 1 / math.log(3), 3))
    expected = valuation_vector_cap(2, 1) * inner
    assert expected > 0
    assert abs(float(rep.raw.value) - expected) / expected < 1e-12


def test_local_facet_bound_reference_2304():
    rep = local_facet_bound_from_counts(9, 2, Q2, m_list=(3, 3))
    assert rep.integer_bound in (2303, 2304, 2305)
    assert "per-equation" in rep.notes[0]


def test_local_facet_bound_matches_simplified_expression():
    for mu in range(4, 9):
        rep = local_facet_bound_from_counts(6 * mu, 2, Q2, m_list=(3, mu))
        ref = 304 * (mu - 1) * mu * (1 + math.log2((mu - 1) / 0.693))
        assert abs(float(rep.raw.value) - ref) / ref < 0.01


def test_local_facet_bound_binomial_system_dominates_count():
    f1 = SparsePolynomial.from_dict({(2, 0): Fraction(1), (0, 0): Fraction(-4)})
    f2 = SparsePolynomial.from_dict({(0, 2): Fraction(1), (0, 0): Fraction(-4)})
    system = SparseSystem.of([f1, f2])
    rep = local_facet_bound(system, Q2)
    assert rep.formula_id == FORMULA_COR2_1
    assert rep.integer_bound >= 4  # SNF count of the system


def test_local_facet_bound_general_flag():
    f1 = SparsePolynomial.from_dict({(2, 0): Fraction(1), (0, 0): Fraction(-4)})
    f2 = SparsePolynomial.from_dict({(0, 2): Fraction(1), (0, 0): Fraction(-4)})
    system = SparseSystem.of([f1, f2])
    rep = local_facet_bound(system, Q2, use_general_cp=True)
    assert "general" in rep.notes[0]


# ---------------------------------------------------------------------------
# global bounds
# ---------------------------------------------------------------------------


def test_global_bound_zero_and_value():
    gfs = FieldSpec.global_field(1, 1)
    assert global_bound(gfs, 2, 2, 2).integer_bound == 0
    rep = global_bound(gfs, 3, 1, 1)
    assert abs(rep.raw.value - Decimal("102.7")) < Decimal("0.1")


def test_global_sum_single_term_collapse():
    rep = global_facet_sum_bound_from_counts(1, 3, 1, 1, 1)
    single = cp_bound(3, 1, (Fraction(1),), 2)
    assert abs(rep.raw.value - single.raw.value) < Decimal("1e-20")


def test_global_sum_term_radii():
    rep = global_facet_sum_bound_from_counts(1, 3, 1, 1, 2)
    assert "1/4, 1/2" in rep.notes[-1]


def test_global_sum_dominated_by_headline_bound():
    rng = random.Random(SEED + 1)
    for _ in range(100):
        d = rng.randint(1, 3)
        delta = rng.randint(1, 3)
        n = rng.randint(1, 3)
        m = rng.randint(n + 1, n + 6)
        cap = valuation_vector_cap(m, n)
        refined = global_facet_sum_bound_from_counts(cap, m, n, d, delta)
        headline = global_bound(FieldSpec.global_field(d, delta), m, n, n)
        assert refined.raw.value <= headline.raw.value


# ---------------------------------------------------------------------------
# affine variant
# ---------------------------------------------------------------------------


def test_affine_bound_n1():
    rep = affine_bound(FORMULA_THM1_LOCAL, Q2, 3, 1, 1)
    base = local_bound(Q2, 3, 1, 1)
    assert abs(rep.raw.value - (1 + base.raw.value)) < Decimal("1e-18")


def test_affine_bound_all_zero_base():
    rep = affine_bound(FORMULA_THM1_LOCAL, Q2, 1, 3, 3)
    assert rep.integer_bound == 1


def test_affine_bound_exact_below_relaxation():
    rep = affine_bound(FORMULA_THM1_LOCAL, Q2, 5, 2, 2)
    relaxed = 1 + 4 * local_bound(Q2, 5, 2, 2).raw.value
    assert rep.raw.value < relaxed
    assert "exact subset sum <= relaxation: True" in rep.notes[1]


def test_affine_bound_global_base():
    gfs = FieldSpec.global_field(1, 1)
    rep = affine_bound(FORMULA_THM1_GLOBAL, gfs, 3, 1, 1)
    assert rep.formula_id == FORMULA_REMARK1_1
    assert rep.integer_bound >= 1


# ---------------------------------------------------------------------------
# the weighted-log implication
# ---------------------------------------------------------------------------


def test_log_inequality_reference_case():
    hyp, concl = log_inequality_check((Fraction(1),), (Fraction(1),), 2, 2)
    assert hyp and concl


def test_log_inequality_never_violated_bulk():
    rng = random.Random(SEED + 2)
    for _ in range(2000):
        n = rng.randint(1, 3)
        m = rng.randint(2, 10)
        p = rng.choice([2, 3, 5])
        r = tuple(Fraction(rng.randint(1, 200), rng.randint(1, 50)) for _ in range(n))
        t = tuple(Fraction(rng.randint(1, 200), rng.randint(1, 50)) for _ in range(n))
        hyp, concl = log_inequality_check(r, t, m, p)
        assert (not hyp) or concl


def test_geometry_reproduces_per_equation_product_form():
    # replacing the transcendental simplex radii by exact rationals, the
    # mixed volume of the scaled corner simplices is the product of the
    # radii over the product of the weights, mirroring the per-equation form
    from rootbounds.polyhedra import convex_hull, mixed_volume

    rng = random.Random(SEED + 4)
    for _ in range(12):
        n = rng.randint(1, 3)
        r = [Fraction(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(n)]
        lams = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]
        simplices = []
        for lam in lams:
            pts = [tuple(Fraction(0) for _ in range(n))] + [
                tuple(lam / r[j] if j == i else Fraction(0) for j in range(n))
                for i in range(n)
            ]
            simplices.append(convex_hull(pts))
        expected = math.prod(lams, start=Fraction(1)) / math.prod(
            r, start=Fraction(1)
        )
        assert mixed_volume(simplices) == expected


def test_monotone_in_each_radius_on_small_grid():
    grid = [Fraction(1, 10), Fraction(1, 5), Fraction(3, 10), Fraction(2, 5), Fraction(1, 2)]
    rng = random.Random(SEED + 3)
    for _ in range(10):
        n = rng.randint(1, 3)
        m = rng.randint(n + 1, n + 6)
        p = rng.choice([2, 3, 5])
        m_list = tuple(rng.randint(2, m) for _ in range(n))
        others = [rng.choice(grid) for _ in range(n)]
        for i in range(n):
            prev = None
            prev_eq = None
            for g in grid:
                r = list(others)
                r[i] = g
                val = cp_bound(m, n, r, p).raw.value
                val_eq = cp_bound_per_equation(m_list, n, r, p).raw.value
                if prev is not None:
                    assert val <= prev
                    assert val_eq <= prev_eq
                prev, prev_eq = val, val_eq


def test_formula_ids_and_json():
    rep = local_bound(Q2, 5, 2, 2)
    obj = rep.to_json_obj()
    assert obj["formula_id"] == FORMULA_THM1_LOCAL
    assert obj["integer_bound"] == 127645
    assert "raw" in obj and "inputs" in obj
    assert cp_bound(3, 1, (Fraction(1),), 2).formula_id == FORMULA_THM2_GENERAL
    assert (
        cp_bound_per_equation((3, 3), 2, (Fraction(1), Fraction(1)), 2).formula_id
        == FORMULA_THM2_PER_EQ
    )
    assert (
        global_facet_sum_bound_from_counts(1, 3, 1, 1, 1).formula_id == FORMULA_COR3_1
    )
    assert (
        global_bound(FieldSpec.global_field(1, 1), 3, 1, 1).formula_id
        == FORMULA_THM1_GLOBAL
    )
