"""Vectorial Boolean maps, Walsh spectra and Dillon-type monomials.

A map f: F_{2^n} -> F_{2^k} is stored as a truth table of k-bit codes.
Codes are coordinates in a fixed basis of F_{2^k} (a subfield of the domain
field); the component functions Tr^k_1(b f(x)) are computed in-field, so the
choice of basis never changes a spectrum.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Iterator

import numpy as np

from .fwht import fwht, signs
from .gf2field import Field, FieldError, parity, span
from .kloosterman import KloostermanTable, build_table, coset_all_zeros


@dataclass(frozen=True, eq=False)
class BooleanMap:
    field: Field
    k: int
    table: np.ndarray
    out_basis: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        f = self.field
        if f.n % self.k:
            raise FieldError(f"F_2^{self.k} is not a subfield of F_2^{f.n}")
        if self.table.shape != (f.order,):
            raise ValueError(f"table must have 2^{f.n} entries")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= 1 << self.k):
            raise ValueError(f"table entries must be {self.k}-bit")
        if not self.out_basis:
            object.__setattr__(self, "out_basis", tuple(f.subfield(self.k).basis))

    @property
    def n(self) -> int:
        return self.field.n

    @classmethod
    def from_values(cls, field: Field, k: int, values) -> "BooleanMap":
        """Encode F_{2^k}-valued outputs (given as field elements)."""
        sub = field.subfield(k)
        order = np.argsort(sub.by_coords)
        sorted_elems = sub.by_coords[order]
        values = np.asarray(values, dtype=np.int64)
        pos = np.searchsorted(sorted_elems, values)
        pos = np.minimum(pos, sorted_elems.size - 1)
        if np.any(sorted_elems[pos] != values):
            raise ValueError(f"some values are not in F_2^{k}")
        return cls(field, k, order[pos].astype(np.int64), tuple(sub.basis))

    def values(self) -> np.ndarray:
        """Outputs as field elements."""
        return span(self.out_basis)[self.table]

    def output_nonzero(self) -> np.ndarray:
        """The b range of the Walsh transform: F_{2^k}^*."""
        return self.field.subfield(self.k).nonzero

    def component(self, b: int) -> np.ndarray:
        """Tr^k_1(b f(x)) for every x, as 0/1."""
        f = self.field
        mask = 0
        for i, e in enumerate(self.out_basis):
            mask |= f.relative_trace(f.mul(b, e), self.k, 1) << i
        return parity(self.table & mask)

    def compose_power(self, d: int) -> "BooleanMap":
        """x -> f(x^d)."""
        xs = self.field.pow_vec(self.field.elements(), d)
        return BooleanMap(self.field, self.k, self.table[xs], self.out_basis)


@dataclass(frozen=True, eq=False)
class DualBasis:
    primal: tuple[int, ...]
    dual: tuple[int, ...]

    def pairing(self, field: Field) -> np.ndarray:
        return np.array([[field.absolute_trace(field.mul(p, d)) for d in self.dual]
                         for p in self.primal], dtype=np.int64)


def _gf2_inverse(rows: list[int], n: int) -> list[int]:
    """Invert an n x n GF(2) matrix given as row bitmasks (bit j = column j)."""
    a = [r | (1 << (n + i)) for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r] >> col & 1), None)
        if piv is None:
            raise ArithmeticError("singular trace form; field arithmetic is broken")
        a[col], a[piv] = a[piv], a[col]
        for r in range(n):
            if r != col and a[r] >> col & 1:
                a[r] ^= a[col]
    return [r >> n for r in a]


def dual_basis(field: Field, basis=None) -> DualBasis:
    """Basis d_j with Tr(e_i d_j) = delta_ij; default primal is 1, x, ..., x^(n-1)."""
    n = field.n
    basis = tuple(basis) if basis is not None else tuple(1 << i for i in range(n))
    gram = [sum(field.absolute_trace(field.mul(basis[i], basis[j])) << j for j in range(n))
            for i in range(n)]
    inv = _gf2_inverse(gram, n)
    dual = []
    for j in range(n):
        d = 0
        for l in range(n):
            if inv[j] >> l & 1:
                d ^= basis[l]
        dual.append(d)
    return DualBasis(basis, tuple(dual))


def walsh_direct(f: BooleanMap, a: int, b: int) -> int:
    """W_f(a, b) by direct summation over the domain."""
    if b == 0:
        raise ValueError("b must be nonzero")
    fld = f.field
    if not fld.is_in_subfield(b, f.k):
        raise FieldError(f"b = 0x{b:x} is not in F_2^{f.k}")
    xs = fld.elements()
    bf = fld.mul_vec(f.values(), b)
    e = fld.relative_trace_vec(bf, f.k, 1) ^ fld.trace_vec(fld.mul_vec(xs, a))
    return int(signs(e).sum())


@dataclass
class WalshSpectrum:
    n: int
    k: int
    values: dict[int, np.ndarray]   # b -> W(., b) indexed by element a
    max_abs: int
    min_abs: int
    is_bent: bool

    def parseval_ok(self) -> dict[int, bool]:
        target = 1 << (2 * self.n)
        return {b: int((w * w).sum()) == target for b, w in self.values.items()}


def _index_to_element(field: Field) -> np.ndarray:
    return span(dual_basis(field).dual)


def component_spectrum(f: BooleanMap, b: int, a_of_index: np.ndarray | None = None) -> np.ndarray:
    """W_f(., b) indexed by element a, via one fast transform."""
    if a_of_index is None:
        a_of_index = _index_to_element(f.field)
    w = fwht(signs(f.component(b)))
    out = np.empty_like(w)
    out[a_of_index] = w
    return out


def iter_spectrum(f: BooleanMap) -> Iterator[tuple[int, np.ndarray]]:
    idx = _index_to_element(f.field)
    for b in f.output_nonzero().tolist():
        yield b, component_spectrum(f, b, idx)


def full_walsh_spectrum(f: BooleanMap) -> WalshSpectrum:
    if f.n > 20:
        raise ValueError("spectra are limited to n <= 20")
    values = dict(iter_spectrum(f))
    absmax = max(int(np.abs(w).max()) for w in values.values())
    absmin = min(int(np.abs(w).min()) for w in values.values())
    bent = f.n % 2 == 0 and absmax == absmin == 1 << (f.n // 2)
    return WalshSpectrum(f.n, f.k, values, absmax, absmin, bent)


def is_bent(f: BooleanMap) -> bool:
    if f.n % 2:
        raise ValueError("bentness needs an even input degree")
    target = 1 << (f.n // 2)
    for b in f.output_nonzero().tolist():
        w = fwht(signs(f.component(b)))
        if np.any(np.abs(w) != target):
            return False
    return True


def cyclotomic_representatives(n: int, units_only: bool = True) -> list[int]:
    """Smallest member of each cyclotomic coset mod 2^n - 1."""
    N = (1 << n) - 1
    if N == 1:
        return [1]
    seen = bytearray(N)
    reps = []
    for d in range(1, N):
        if seen[d]:
            continue
        e = d
        for _ in range(n):
            seen[e] = 1
            e = 2 * e % N
        if not units_only or gcd(d, N) == 1:
            reps.append(d)
    return reps


def is_hyperbent_direct(f: BooleanMap) -> bool:
    """Bent after x -> x^d for every d coprime to 2^n - 1 (one d per cyclotomic coset)."""
    if f.n > 12:
        raise ValueError("direct hyperbent sweep is limited to n <= 12")
    for d in cyclotomic_representatives(f.n):
        if not is_bent(f.compose_power(d)):
            return False
    return True


# ---------------------------------------------------------------------------
# Dillon monomials  f(x) = Tr^{2m}_k(a x^(2^m - 1))

def _check_dillon(field: Field, m: int, k: int, a: int):
    if field.n != 2 * m:
        raise FieldError(f"Dillon maps for m={m} live in F_2^{2 * m}, not F_2^{field.n}")
    if k < 1 or m % k:
        raise FieldError(f"k={k} does not divide m={m}")
    if a == 0:
        raise FieldError("coefficient must be nonzero")


def evaluate_dillon(field: Field, m: int, k: int, a: int) -> BooleanMap:
    _check_dillon(field, m, k, a)
    y = field.mul_vec(field.pow_vec(field.elements(), (1 << m) - 1), a)
    return BooleanMap.from_values(field, k, field.relative_trace_vec(y, 2 * m, k))


def normalize_coefficient(field: Field, a: int, m: int) -> int:
    """The F_{2^m}^* part of a: the square root of a^(2^m + 1).

    a and the result differ by a (2^m + 1)-th root of unity, which a linear
    substitution x -> cx absorbs, so bentness is unchanged.
    """
    if a == 0:
        raise FieldError("coefficient must be nonzero")
    if field.n != 2 * m:
        raise FieldError(f"expected F_2^{2 * m}")
    return field.frobenius(field.pow(a, (1 << m) + 1), field.n - 1)


def is_bent_via_coset(field: Field, m: int, k: int, a: int,
                      table: KloostermanTable | None = None) -> bool:
    """Bentness of the Dillon map from Kloosterman zeros on a F_{2^k}^*."""
    if a == 0:
        raise FieldError("coefficient must be nonzero")
    if not field.is_in_subfield(a, m):
        raise FieldError(f"0x{a:x} is not in F_2^{m}; normalize it first")
    return coset_all_zeros(field, a, m, k, table)


def is_hyperbent_dillon_scalar(field: Field, m: int, a: int,
                               table: KloostermanTable | None = None) -> bool:
    """Tr^{2m}_1(a x^(2^m-1)) is hyperbent iff K_{2^m}(a) = 0."""
    if a == 0:
        raise FieldError("coefficient must be nonzero")
    if not field.is_in_subfield(a, m):
        raise FieldError(f"0x{a:x} is not in F_2^{m}")
    return coset_all_zeros(field, a, m, 1, table)


@dataclass(frozen=True, eq=False)
class DillonMonomial:
    """Tr^{2m}_k(a x^(2^m - 1)) over the ambient field F_{2^{2m}}."""

    field: Field
    m: int
    k: int
    a: int
    raw: int = 0

    @classmethod
    def make(cls, field: Field, m: int, k: int, a: int) -> "DillonMonomial":
        _check_dillon(field, m, k, a)
        return cls(field, m, k, normalize_coefficient(field, a, m), a)

    def evaluate(self) -> BooleanMap:
        return evaluate_dillon(self.field, self.m, self.k, self.a)

    def is_bent(self) -> bool:
        return is_bent(self.evaluate())

    def is_bent_via_coset(self, table: KloostermanTable | None = None) -> bool:
        return is_bent_via_coset(self.field, self.m, self.k, self.a, table)


def coset_representatives(field: Field, m: int, k: int) -> list[int]:
    """One element per coset of F_{2^k}^* in F_{2^m}^*: h^i for the smallest logs i."""
    powers = field.subfield(m).powers
    return [int(x) for x in powers[: ((1 << m) - 1) // ((1 << k) - 1)]]


def search_bent_cosets(m: int, k: int, field: Field, jobs: int = 1,
                       table: KloostermanTable | None = None) -> list[list[int]]:
    """All cosets a F_{2^k}^* in F_{2^m}^* giving bent Dillon maps."""
    if k < 1 or m % k:
        raise FieldError(f"k={k} does not divide m={m}")
    if m > 12:
        raise ValueError("search is limited to m <= 12")
    table = table if table is not None else build_table(field, m)
    reps = coset_representatives(field, m, k)

    def test(a):
        return coset_all_zeros(field, a, m, k, table)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            hits = list(pool.map(test, reps))
    else:
        hits = [test(a) for a in reps]
    cosets = [field.coset(a, k) for a, ok in zip(reps, hits) if ok]
    return sorted(cosets)


def search_bent_dillon(m: int, k: int, field: Field, jobs: int = 1,
                       table: KloostermanTable | None = None) -> list[int]:
    """Sorted list of every a in F_{2^m}^* whose Dillon map is bent.

    ``field`` is the one the coefficients are written in: F_{2^m} itself or
    any extension of it (e.g. the ambient F_{2^{2m}}).
    """
    return sorted(x for c in search_bent_cosets(m, k, field, jobs, table) for x in c)
