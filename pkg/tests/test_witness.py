import random

import numpy as np
import pytest

from dillon.gf2field import build_field
from dillon.witness import (POSITIVE, ZERO, c1, coefficient_table, coefficients_c, coefficients_d,
                            convention_discrepancy, d1, eval_c, eval_d, finito_sides, poly_g,
                            reduce_exponent, reduce_general, theorem_five_chain,
                            theorem_six_condition, vanishing_implies_zero, verify_d1_rewrite,
                            verify_finito_identity, verify_trace_identities)

import oracles


def test_reduce_exponent():
    assert reduce_exponent(7, 3) == 2 == 2 ** 7 % 7
    assert reduce_exponent(2, 3) == 4
    for k in range(1, 7):
        for s in range(40):
            r = reduce_exponent(s, k)
            assert r % ((1 << k) - 1) == pow(2, s, (1 << k) - 1) % ((1 << k) - 1)
            assert 1 <= r <= 1 << (k - 1)


def test_reduce_general_conventions():
    assert reduce_general(3, 2) == 3
    assert reduce_general(3, 2, ZERO) == 0
    assert reduce_general(5, 3) == 5
    assert reduce_general(14, 3) == 7 and reduce_general(14, 3, ZERO) == 0
    with pytest.raises(ValueError):
        reduce_general(3, 2, "other")


@pytest.mark.parametrize("k", [2, 3])
def test_eval_at_zero_vanishes(k):
    f = build_field(3 * k)
    for a in range(0, f.order, 5):
        assert eval_c(f, a, 0, 3 * k, k) == 0
        assert eval_d(f, a, 0, 3 * k, k) == 0


@pytest.mark.parametrize("k", [2, 3])
def test_c_is_trace_and_d_is_subtrace(k):
    f = build_field(3 * k)
    m = 3 * k
    for z in f.subfield(k).elements.tolist():
        for b in range(f.order):
            bz = f.mul(b, z)
            assert eval_c(f, b, z, m, k) == oracles.trace(bz, m, f.modulus)
            assert eval_d(f, b, z, m, k) == oracles.subtrace(bz, m, f.modulus)


@pytest.mark.parametrize("k", [2, 3])
def test_trace_identity_report(k):
    assert verify_trace_identities(k).ok


def test_coefficient_vector_closed_forms():
    for k in (2, 3, 4):
        f = build_field(3 * k)
        rng = random.Random(k)
        for a in [0, 1] + [rng.randrange(f.order) for _ in range(40)]:
            cv = coefficients_c(f, a, 3 * k, k)
            dv = coefficients_d(f, a, 3 * k, k)
            closed_c = f.pow(a, 1) ^ f.pow(a, 1 << k) ^ f.pow(a, 1 << (2 * k))
            closed_d = 0
            for i in range(1, 4):
                for j in range(i + 1, 4):
                    closed_d ^= f.pow(a, (1 << (i * k - 1)) + (1 << (j * k - 1)))
            assert cv[1] == closed_c == c1(f, a, k)
            assert dv[1] == closed_d == d1(f, a, k)
            assert cv[0] == 0


@pytest.mark.parametrize("k", [2, 3])
def test_coefficient_vector_evaluates_like_eval(k):
    f = build_field(3 * k)
    rng = random.Random(k)
    us = f.subfield(k).nonzero.tolist()
    for a in rng.sample(range(f.order), 30):
        cv, dv = coefficients_c(f, a, 3 * k, k), coefficients_d(f, a, 3 * k, k)
        for _ in range(20):
            u = rng.choice(us)
            assert cv.evaluate(f, u) == eval_c(f, a, u, 3 * k, k)
            assert dv.evaluate(f, u) == eval_d(f, a, u, 3 * k, k)


@pytest.mark.parametrize("k", [2, 3])
def test_coefficient_table_matches_scalar(k):
    f = build_field(3 * k)
    a = f.elements()
    ct = coefficient_table(f, a, 3 * k, k, "C")
    dt = coefficient_table(f, a, 3 * k, k, "D")
    for x in range(0, f.order, 7):
        assert ct[x].tolist() == coefficients_c(f, x, 3 * k, k).entries.tolist()
        assert dt[x].tolist() == coefficients_d(f, x, 3 * k, k).entries.tolist()


def test_d_exponent_collisions_are_summed():
    # k = 2, m = 6: 15 pairs share three exponents
    f = build_field(6)
    dv = coefficients_d(f, f.generator, 6, 2)
    manual = [0] * 4
    for i in range(6):
        for j in range(i + 1, 6):
            e = reduce_general((1 << i) + (1 << j), 2)
            manual[e] ^= f.pow(f.generator, (1 << i) + (1 << j))
    assert dv.entries.tolist() == manual


def test_poly_g_small_values():
    for k in (2, 3, 4):
        f = build_field(3 * k)
        assert poly_g(f, 0, k) == 0
        assert poly_g(f, 1, k) == 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_d1_is_power_of_g(k):
    f = build_field(3 * k)
    a = f.elements()
    assert np.array_equal(d1(f, a, k), f.frobenius_vec(poly_g(f, a, k), k - 1))
    assert verify_d1_rewrite(k).ok


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_finito_identity(k):
    rep = verify_finito_identity(k)
    assert rep.ok, rep.counterexamples[:5]


def test_finito_small_points():
    f = build_field(9)
    lhs, rhs = finito_sides(f, np.array([0, 1]), 3)
    assert lhs.tolist() == rhs.tolist() == [0, 0]


@pytest.mark.parametrize("k", [2, 3])
def test_vanishing_on_subfield_forces_zero_coefficients(k):
    f = build_field(3 * k)
    for role in ("C", "D"):
        res = vanishing_implies_zero(f, 3 * k, k, role)
        assert res["violations"] == []
        assert res["vanishing"] >= 1


def test_convention_discrepancy_reported_for_k2():
    d = convention_discrepancy(2)
    assert all(v == 0 for v in d[POSITIVE].values())
    # with representatives in [0, 2^k - 2] the D identity breaks at z = 0 only
    assert d[ZERO]["D_at_0"] > 0
    assert d[ZERO]["C_at_0"] == d[ZERO]["C_nonzero_z"] == d[ZERO]["D_nonzero_z"] == 0


def test_theorem_five_chain_k3():
    rep = theorem_five_chain(3)
    assert rep.ok
    links = rep.details
    assert links["L1"]["all_zero_cosets"] == 0
    assert links["L4"]["gcd_3"] == 1 and links["L4"]["index_identity"]
    assert links["C1D1_in_subfield"]["violations"] == []


def test_l4_literal_k3():
    f = build_field(9)
    for a in range(1, 512):
        t = f.pow(a, 7)
        if f.is_in_subfield(t, 3):
            assert f.is_in_subfield(a, 3)


def test_theorem_five_rejects_even_k():
    with pytest.raises(ValueError):
        theorem_five_chain(2)


def test_theorem_six_k2():
    rep = theorem_six_condition(2)
    assert rep.ok
    f = build_field(6)
    roots = sorted(a for a in range(1, 64) if f.pow(a, 6) ^ f.pow(a, 3) ^ 1 == 0)
    assert rep.details["bent"] == [format(a, "x") for a in roots]
    assert all(f.pow(a, 9) == 1 for a in roots)
    assert "1" in rep.details["satisfying_not_bent"]
    assert rep.details["exponent"] == 9


def test_theorem_six_k4():
    assert theorem_six_condition(4).ok
