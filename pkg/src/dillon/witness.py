"""Pointwise checks of the polynomial argument for m = 3k.

For b in F_{2^m} and z in F_{2^k}:

    C(b, z) = sum_{i<m}      b^(2^i)       z^(2^i mod (2^k-1))       = T(bz)
    D(b, z) = sum_{i<j<m}    b^(2^i+2^j)   z^((2^i+2^j) mod (2^k-1)) = S(bz)

Everything is evaluated over field elements; nothing is symbolic in A.
Exponent representatives are taken in [1, 2^k - 1] ("positive") unless the
"zero" convention ([0, 2^k - 2]) is requested explicitly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd

import numpy as np

from .bent import search_bent_dillon
from .gf2field import Field, FieldError, build_field, to_hex
from .kloosterman import build_table
from .report import Report

POSITIVE = "positive"
ZERO = "zero"


def reduce_exponent(s: int, k: int) -> int:
    """2^s mod (2^k - 1) as a power of two: 2^(s mod k)."""
    return 1 << (s % k)


def reduce_general(e: int, k: int, convention: str = POSITIVE) -> int:
    """Representative of e mod (2^k - 1); in [1, 2^k-1] or [0, 2^k-2]."""
    r = e % ((1 << k) - 1)
    if convention == POSITIVE:
        return r if r else (1 << k) - 1
    if convention == ZERO:
        return r
    raise ValueError(f"unknown convention {convention!r}")


def _terms_c(m, k, convention):
    return [(1 << i, reduce_general(1 << i, k, convention)) for i in range(m)]


def _terms_d(m, k, convention):
    return [((1 << i) + (1 << j), reduce_general((1 << i) + (1 << j), k, convention))
            for i in range(m) for j in range(i + 1, m)]


def _eval(field, terms, a, u):
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros(np.broadcast(a, np.asarray(u)).shape, dtype=np.int64)
    for ea, eu in terms:
        out ^= field.mul_vec(field.pow_vec(a, ea), field.pow_vec(u, eu))
    return out


def _check_setting(field, m, k):
    if field.n % m:
        raise FieldError(f"F_2^{m} is not a subfield of F_2^{field.n}")
    if k < 1 or m % k:
        raise FieldError(f"k={k} does not divide m={m}")


def eval_c(field: Field, a, u, m: int, k: int, convention: str = POSITIVE):
    _check_setting(field, m, k)
    out = _eval(field, _terms_c(m, k, convention), a, u)
    return int(out) if out.ndim == 0 else out


def eval_d(field: Field, a, u, m: int, k: int, convention: str = POSITIVE):
    _check_setting(field, m, k)
    out = _eval(field, _terms_d(m, k, convention), a, u)
    return int(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """u-coefficients of C(a, u) or D(a, u), indexed by exponent value."""

    k: int
    entries: np.ndarray
    role: str   # "C" or "D"

    def __getitem__(self, e: int) -> int:
        return int(self.entries[e])

    def evaluate(self, field: Field, u) -> np.ndarray | int:
        u = np.asarray(u, dtype=np.int64)
        out = np.zeros(u.shape, dtype=np.int64)
        for e, c in enumerate(self.entries.tolist()):
            if c:
                out ^= field.mul_vec(c, field.pow_vec(u, e))
        return int(out) if out.ndim == 0 else out

    def is_zero(self) -> bool:
        return not self.entries.any()


def _coefficients(field, terms, a, k, role):
    entries = np.zeros(1 << k, dtype=np.int64)
    for ea, eu in terms:
        entries[eu] ^= field.pow(a, ea)   # colliding exponents add up
    return CoefficientVector(k, entries, role)


def coefficients_c(field: Field, a: int, m: int, k: int,
                   convention: str = POSITIVE) -> CoefficientVector:
    _check_setting(field, m, k)
    return _coefficients(field, _terms_c(m, k, convention), a, k, "C")


def coefficients_d(field: Field, a: int, m: int, k: int,
                   convention: str = POSITIVE) -> CoefficientVector:
    _check_setting(field, m, k)
    return _coefficients(field, _terms_d(m, k, convention), a, k, "D")


def coefficient_table(field: Field, a, m: int, k: int, role: str,
                      convention: str = POSITIVE) -> np.ndarray:
    """Coefficient vectors for an array of a, shape (len(a), 2^k)."""
    _check_setting(field, m, k)
    terms = _terms_c(m, k, convention) if role == "C" else _terms_d(m, k, convention)
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros((a.size, 1 << k), dtype=np.int64)
    for ea, eu in terms:
        out[:, eu] ^= field.pow_vec(a, ea)
    return out


# closed forms at u-exponent 1 (m = 3k)

def c1(field: Field, a, k: int):
    a = np.asarray(a, dtype=np.int64)
    out = a ^ field.pow_vec(a, 1 << k) ^ field.pow_vec(a, 1 << (2 * k))
    return int(out) if out.ndim == 0 else out


def d1(field: Field, a, k: int):
    a = np.asarray(a, dtype=np.int64)
    out = np.zeros_like(a)
    for i in range(1, 4):
        for j in range(i + 1, 4):
            out ^= field.pow_vec(a, (1 << (i * k - 1)) + (1 << (j * k - 1)))
    return int(out) if out.ndim == 0 else out


def poly_g(field: Field, a, k: int):
    """G(A) = A^(2^k+1) + A^(2^2k+1) + A^(2^2k+2^k)."""
    a = np.asarray(a, dtype=np.int64)
    q, q2 = 1 << k, 1 << (2 * k)
    out = field.pow_vec(a, q + 1) ^ field.pow_vec(a, q2 + 1) ^ field.pow_vec(a, q2 + q)
    return int(out) if out.ndim == 0 else out


def finito_sides(field: Field, a, k: int) -> tuple[np.ndarray, np.ndarray]:
    """(G + A^(2^k) C1,  A^(2^k+1) (A^(2^k-1) + (A^(2^k-1))^(2^k)))."""
    a = np.asarray(a, dtype=np.int64)
    q = 1 << k
    lhs = poly_g(field, a, k) ^ field.mul_vec(field.pow_vec(a, q), c1(field, a, k))
    t = field.pow_vec(a, q - 1)
    t = np.where(a == 0, 0, t)
    rhs = field.mul_vec(field.pow_vec(a, q + 1), t ^ field.frobenius_vec(t, k))
    return lhs, rhs


def _field_3k(k, field):
    field = field or build_field(3 * k)
    if field.n != 3 * k:
        raise FieldError(f"expected F_2^{3 * k}")
    return field


def verify_d1_rewrite(k: int, field: Field | None = None) -> Report:
    """D1 = G^(2^(k-1)) on every element of F_{2^{3k}}."""
    t0 = time.perf_counter()
    field = _field_3k(k, field)
    rep = Report("eq-d1-rew", {"k": k, "field": field.describe()})
    a = field.elements()
    lhs = d1(field, a, k)
    rhs = field.frobenius_vec(poly_g(field, a, k), k - 1)
    # also against the aggregated coefficient at exponent 1
    coef = coefficient_table(field, a, 3 * k, k, "D")[:, 1]
    bad = (lhs != rhs) | (coef != lhs)
    rep.counterexamples = [to_hex(x) for x in a[bad]]
    rep.details = {"domain": f"F_2^{3 * k}", "swept": int(a.size)}
    return rep.finish(t0)


def verify_finito_identity(k: int, field: Field | None = None) -> Report:
    if not 1 <= k <= 5:
        raise ValueError("k must be in 1..5")
    t0 = time.perf_counter()
    field = _field_3k(k, field)
    rep = Report("eq-finito", {"k": k, "field": field.describe()})
    a = field.elements()
    lhs, rhs = finito_sides(field, a, k)
    rep.counterexamples = [to_hex(x) for x in a[lhs != rhs]]
    # corollary: C1(a) = G(a) = 0, a != 0  =>  a^(2^k-1) in F_{2^k}^*
    both = (c1(field, a, k) == 0) & (poly_g(field, a, k) == 0) & (a != 0)
    t = field.pow_vec(a[both], (1 << k) - 1)
    fails = a[both][field.frobenius_vec(t, k) != t]
    rep.counterexamples += [{"corollary": to_hex(x)} for x in fails]
    rep.details = {"domain": f"F_2^{3 * k}", "swept": int(a.size),
                   "corollary_premise_count": int(both.sum())}
    return rep.finish(t0)


def verify_trace_identities(k: int, field: Field | None = None) -> Report:
    """C(b, z) = T(bz) and D(b, z) = S(bz) for every b in F_{2^{3k}}, z in F_{2^k}."""
    t0 = time.perf_counter()
    field = _field_3k(k, field)
    m = 3 * k
    rep = Report("trace-identities", {"k": k, "field": field.describe()})
    b = field.elements()
    for z in field.subfield(k).elements.tolist():
        bz = field.mul_vec(b, z)
        bad_c = eval_c(field, b, z, m, k) != field.relative_trace_vec(bz, m, 1)
        bad_d = eval_d(field, b, z, m, k) != field.subtrace_vec(bz, m)
        rep.counterexamples += [{"identity": "C", "b": to_hex(x), "z": to_hex(z)} for x in b[bad_c]]
        rep.counterexamples += [{"identity": "D", "b": to_hex(x), "z": to_hex(z)} for x in b[bad_d]]
    rep.details = {"pairs": int(b.size) << k}
    return rep.finish(t0)


def vanishing_implies_zero(field: Field, m: int, k: int, role: str = "C") -> dict:
    """a with C(a, z) = 0 at every z in F_{2^k}^* must have all coefficients zero."""
    a = np.arange(1 << m, dtype=np.int64) if field.n == m else field.subfield(m).elements
    ev = eval_c if role == "C" else eval_d
    vanish = np.ones(a.size, dtype=bool)
    for z in field.subfield(k).nonzero.tolist():
        vanish &= ev(field, a, z, m, k) == 0
    coef = coefficient_table(field, a[vanish], m, k, role)
    nonzero = a[vanish][coef.any(axis=1)]
    return {"vanishing": int(vanish.sum()), "violations": [to_hex(x) for x in nonzero]}


def convention_discrepancy(k: int, field: Field | None = None) -> dict:
    """Compare the two exponent conventions on the identities at m = 3k.

    Returns which identities fail under each convention, at z = 0 and z != 0.
    """
    field = _field_3k(k, field)
    m = 3 * k
    b = field.elements()
    out = {}
    for conv in (POSITIVE, ZERO):
        fails = {"C_at_0": 0, "D_at_0": 0, "C_nonzero_z": 0, "D_nonzero_z": 0}
        for z in field.subfield(k).elements.tolist():
            bz = field.mul_vec(b, z)
            c_bad = int((eval_c(field, b, z, m, k, conv) != field.relative_trace_vec(bz, m, 1)).sum())
            d_bad = int((eval_d(field, b, z, m, k, conv) != field.subtrace_vec(bz, m)).sum())
            where = "at_0" if z == 0 else "nonzero_z"
            fails[f"C_{where}"] += c_bad
            fails[f"D_{where}"] += d_bad
        out[conv] = fails
    return out


# ---------------------------------------------------------------------------

def _in_subfield_vec(field, x, k):
    return field.frobenius_vec(x, k) == x


def theorem_five_chain(k: int, field: Field | None = None) -> Report:
    """Check every step from 'coset of zeros' to a contradiction, for odd k."""
    if k % 2 == 0 or k < 3:
        raise ValueError("k must be odd and >= 3")
    if k > 5:
        raise ValueError("k > 5 is beyond desk scale")
    t0 = time.perf_counter()
    field = _field_3k(k, field)
    m = 3 * k
    q = 1 << k
    rep = Report("thm5", {"k": k, "m": m, "field": field.describe()})
    links = {}
    a = field.elements()[1:]

    # L1: all-zero cosets give T(az) = S(az) = 0 on F_{2^k}
    table = build_table(field, m)
    zero = table.is_zero_vec(a)
    n_cosets = ((1 << m) - 1) // (q - 1)
    coset_id = field.log[a] % n_cosets
    all_zero = np.ones(n_cosets, dtype=bool)
    np.logical_and.at(all_zero, coset_id, zero)
    reps = field.exp[np.flatnonzero(all_zero)]
    l1_bad = []
    for r in reps.tolist():
        for z in field.subfield(k).elements.tolist():
            az = field.mul(r, z)
            if field.absolute_trace(az, m) or field.subtrace(az, m):
                l1_bad.append(to_hex(r))
                break
    links["L1"] = {"all_zero_cosets": int(all_zero.sum()), "cosets": n_cosets,
                   "kloosterman_zeros": int(zero.sum()), "violations": l1_bad}

    # L2: all C_i, D_i zero => C1 = D1 = 0; and vanishing on F_{2^k} => all zero
    cc = coefficient_table(field, a, m, k, "C")
    dd = coefficient_table(field, a, m, k, "D")
    all_coef_zero = ~cc.any(axis=1) & ~dd.any(axis=1)
    c1v, d1v = c1(field, a, k), d1(field, a, k)
    closed_ok = (cc[:, 1] == c1v) & (dd[:, 1] == d1v)
    l2_bad = a[(all_coef_zero & ((c1v != 0) | (d1v != 0))) | ~closed_ok]
    van = [vanishing_implies_zero(field, m, k, r) for r in ("C", "D")]
    links["L2"] = {"all_coefficients_zero": int(all_coef_zero.sum()),
                   "violations": [to_hex(x) for x in l2_bad] + van[0]["violations"] + van[1]["violations"]}

    # L3: C1 = D1 = 0, a != 0 => a^(2^k-1) in F_{2^k}^*
    premise = (c1v == 0) & (d1v == 0)
    t = field.pow_vec(a, q - 1)
    l3_bad = a[premise & ~_in_subfield_vec(field, t, k)]
    links["L3"] = {"premise_count": int(premise.sum()), "violations": [to_hex(x) for x in l3_bad]}

    # L4: k odd, a^(2^k-1) in F_{2^k}^* => a in F_{2^k}
    idx = (1 << (3 * k)) - 1
    index_ok = idx // (q - 1) == (q + 2) * (q - 1) + 3 and gcd(3, q - 1) == 1
    l4_premise = _in_subfield_vec(field, t, k)
    l4_bad = a[l4_premise & ~_in_subfield_vec(field, a, k)]
    links["L4"] = {"index_identity": bool(index_ok), "gcd_3": gcd(3, q - 1),
                   "premise_count": int(l4_premise.sum()),
                   "violations": [to_hex(x) for x in l4_bad] + ([] if index_ok else ["index"])}

    # L5: a in F_{2^k}^* => K_{2^m}(a) != 0
    sub = field.subfield(k).nonzero
    l5_bad = sub[table.value_vec(sub) == 0]
    links["L5"] = {"subfield_elements": int(sub.size), "violations": [to_hex(x) for x in l5_bad]}

    # end-to-end: {a != 0 : C1 = D1 = 0} is inside F_{2^k}
    e2e_bad = a[premise & ~_in_subfield_vec(field, a, k)]
    links["C1D1_in_subfield"] = {"solutions": [to_hex(x) for x in a[premise]],
                                 "violations": [to_hex(x) for x in e2e_bad]}

    for name, info in links.items():
        rep.counterexamples += [{"link": name, "a": v} for v in info["violations"]]
    if all_zero.any():
        rep.counterexamples += [{"link": "conclusion", "coset_of": to_hex(r)} for r in reps.tolist()]
    rep.details = links
    return rep.finish(t0)


def theorem_six_condition(k: int, field: Field | None = None) -> Report:
    """Even k: C1 = D1 = 0 => a^(3(2^k-1)) = 1, and every bent coefficient obeys it."""
    if k not in (2, 4):
        raise ValueError("k must be 2 or 4")
    t0 = time.perf_counter()
    field = _field_3k(k, field)
    m = 3 * k
    e = 3 * ((1 << k) - 1)
    rep = Report("thm6", {"k": k, "m": m, "field": field.describe()})
    a = field.elements()[1:]
    premise = (c1(field, a, k) == 0) & (d1(field, a, k) == 0)
    cond = field.pow_vec(a, e) == 1
    rep.counterexamples += [{"link": "C1D1", "a": to_hex(x)} for x in a[premise & ~cond]]
    bent = search_bent_dillon(m, k, field)
    bent_bad = [x for x in bent if field.pow(x, e) != 1]
    rep.counterexamples += [{"link": "bent", "a": to_hex(x)} for x in bent_bad]
    satisfying = a[cond].tolist()
    non_bent = sorted(set(satisfying) - set(bent))
    strict = 1 in non_bent
    if not strict:
        rep.counterexamples.append({"link": "strict", "a": "1"})
    rep.details = {"exponent": e, "premise_count": int(premise.sum()),
                   "condition_count": len(satisfying),
                   "bent": [to_hex(x) for x in bent],
                   "satisfying_not_bent": [to_hex(x) for x in non_bent]}
    return rep.finish(t0)
