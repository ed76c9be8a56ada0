"""Arithmetic in binary fields GF(2^n) with subfield towers.

Elements are plain ints: bit i is the coefficient of x^i in the polynomial
basis representative. A :class:`Field` object interprets them. Addition is
xor. Subfields F_{2^k} are the Frobenius fixed points inside the same
ambient field, so no embedding maps are ever needed.

Most operations come in a scalar form (ints) and a vectorized form
(numpy arrays, suffix ``_vec``) used by the exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

MAX_DEGREE = 24
LOG_TABLE_THRESHOLD = 20


class FieldError(ValueError):
    """Bad field parameters or a domain error (e.g. inverting zero)."""


# ---------------------------------------------------------------------------
# GF(2)[x] on int bitmasks

def clmul(a: int, b: int) -> int:
    """Carryless product of two bit polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(clmul(a, b), m)


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's test over GF(2)."""
    n = poly.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True

    def x_pow_2k(k):
        r = 0b10
        for _ in range(k):
            r = poly_mulmod(r, r, poly)
        return r

    if x_pow_2k(n) != 0b10:
        return False
    for p in prime_factors(n):
        if poly_gcd(poly, x_pow_2k(n // p) ^ 0b10) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(n: int) -> int:
    for poly in range(1 << n, 1 << (n + 1)):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {n}")  # unreachable


# ---------------------------------------------------------------------------
# vectorized helpers

def parity(arr) -> np.ndarray:
    return (np.bitwise_count(np.asarray(arr, dtype=np.int64)) & 1).astype(np.int64)


def span(basis, dtype=np.int64) -> np.ndarray:
    """All 2^len(basis) xor-combinations; entry c combines basis[i] for bits i of c."""
    out = np.zeros(1, dtype=dtype)
    for b in basis:
        out = np.concatenate([out, out ^ b])
    return out


def _clmul_reduce_vec(a: np.ndarray, b, n: int, modulus: int) -> np.ndarray:
    """Vectorized carryless multiply-and-reduce (no tables)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.broadcast_to(np.asarray(b, dtype=np.int64), a.shape)
    r = np.zeros(a.shape, dtype=np.int64)
    top = 1 << n
    for i in range(n):
        r ^= np.where((b >> i) & 1, a, 0)
        a = a << 1
        a = np.where(a & top, a ^ modulus, a)
    return r


# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Field:
    """GF(2^n) = GF(2)[x]/(modulus) with a fixed multiplicative generator.

    Build instances with :func:`build_field`.
    """

    n: int
    modulus: int
    generator: int
    exp: np.ndarray | None = dc_field(default=None, repr=False)
    log: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def group_order(self) -> int:
        return (1 << self.n) - 1

    @property
    def has_tables(self) -> bool:
        return self.exp is not None

    def describe(self) -> dict:
        return {"n": self.n, "modulus": format(self.modulus, "x"),
                "generator": to_hex(self.generator)}

    def __repr__(self):
        return f"Field(n={self.n}, modulus=0x{self.modulus:x}, generator=0x{self.generator:x})"

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- scalar arithmetic -------------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.exp is not None:
            return int(self.exp[(int(self.log[x]) + int(self.log[y])) % self.group_order])
        return poly_mulmod(x, y, self.modulus)

    def square(self, x: int) -> int:
        return self.mul(x, x)

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("zero has no inverse")
            return 0
        e %= self.group_order
        if self.exp is not None:
            return int(self.exp[(int(self.log[x]) * e) % self.group_order])
        r = 1
        while e:
            if e & 1:
                r = poly_mulmod(r, x, self.modulus)
            x = poly_mulmod(x, x, self.modulus)
            e >>= 1
        return r

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no inverse")
        return self.pow(x, -1)

    def frobenius(self, x: int, j: int = 1) -> int:
        """x^(2^j), with j taken mod n."""
        j %= self.n
        for _ in range(j):
            x = self.square(x)
        return x

    def relative_trace(self, x: int, s: int, t: int) -> int:
        """Tr^s_t(x) = sum of x^(2^(it)) for 0 <= i < s/t."""
        if s % t or s < 1 or t < 1:
            raise FieldError(f"trace Tr^{s}_{t} needs t | s")
        r = 0
        y = x
        for _ in range(s // t):
            r ^= y
            y = self.frobenius(y, t)
        return r

    def absolute_trace(self, a: int, t: int | None = None) -> int:
        t = self.n if t is None else t
        r = self.relative_trace(a, t, 1)
        if r not in (0, 1):
            raise FieldError(f"Tr^{t}_1 of 0x{a:x} left F_2; is it in F_2^{t}?")
        return r

    def subtrace(self, a: int, t: int | None = None) -> int:
        """Sum of a^(2^i + 2^j) over 0 <= i < j < t; always 0 or 1."""
        t = self.n if t is None else t
        conj = []
        y = a
        for _ in range(t):
            conj.append(y)
            y = self.square(y)
        r = 0
        for i in range(t):
            for j in range(i + 1, t):
                r ^= self.mul(conj[i], conj[j])
        if r not in (0, 1):
            raise AssertionError(f"subtrace of 0x{a:x} over F_2^{t} is 0x{r:x}, not a bit")
        return r

    def discrete_log(self, x: int) -> int:
        if x == 0:
            raise FieldError("log of zero")
        if self.log is None:
            raise FieldError(f"no log tables for n={self.n}")
        return int(self.log[x])

    def order_of(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no multiplicative order")
        q1 = self.group_order
        d = q1
        for p in prime_factors(q1):
            while d % p == 0 and self.pow(x, d // p) == 1:
                d //= p
        return d

    # -- subfields --------------------------------------------------------

    def _check_divisor(self, k: int):
        if k < 1 or self.n % k:
            raise FieldError(f"{k} does not divide {self.n}")

    def is_in_subfield(self, x: int, k: int) -> bool:
        self._check_divisor(k)
        return self.frobenius(x, k) == x

    def subfield(self, k: int) -> "Subfield":
        self._check_divisor(k)
        return _subfield(self, k)

    def subfield_elements(self, k: int) -> np.ndarray:
        return self.subfield(k).elements

    def coset(self, a: int, k: int) -> list[int]:
        """The coset a * F_{2^k}^* as a sorted list."""
        if a == 0:
            raise FieldError("coset of zero")
        sub = self.subfield(k)
        return sorted({self.mul(a, int(u)) for u in sub.nonzero})

    # -- vectorized -------------------------------------------------------

    def mul_vec(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.exp is None:
            x, y = np.broadcast_arrays(x, y)
            return _clmul_reduce_vec(x, y, self.n, self.modulus)
        s = (self.log[x] + self.log[y]) % self.group_order
        return np.where((x == 0) | (y == 0), 0, self.exp[s])

    def pow_vec(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.exp is None:
            out = np.ones_like(x)
            base = x.copy()
            ee = e % self.group_order if e else 0
            if e < 0 and np.any(x == 0):
                raise FieldError("zero has no inverse")
            while ee:
                if ee & 1:
                    out = self.mul_vec(out, base)
                base = self.mul_vec(base, base)
                ee >>= 1
            return np.where(x == 0, 1 if e == 0 else 0, out)
        if e < 0 and np.any(x == 0):
            raise FieldError("zero has no inverse")
        s = (self.log[x] * (e % self.group_order)) % self.group_order
        return np.where(x == 0, 1 if e == 0 else 0, self.exp[s])

    def inv_vec(self, x) -> np.ndarray:
        """Inverse with the convention 0 -> 0."""
        x = np.asarray(x, dtype=np.int64)
        safe = np.where(x == 0, 1, x)
        return np.where(x == 0, 0, self.pow_vec(safe, -1))

    def square_vec(self, x) -> np.ndarray:
        return self.mul_vec(x, x)

    def frobenius_vec(self, x, j: int = 1) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        j %= self.n
        if self.exp is not None:
            s = (self.log[x] << j) % self.group_order
            return np.where(x == 0, 0, self.exp[s])
        for _ in range(j):
            x = self.square_vec(x)
        return x

    @cached_property
    def trace_mask(self) -> int:
        """Bit i set iff Tr^n_1(x^i) = 1; Tr^n_1 is then a masked parity."""
        return sum(self.absolute_trace(1 << i) << i for i in range(self.n))

    def trace_vec(self, x) -> np.ndarray:
        """Absolute trace Tr^n_1 over the whole ambient field."""
        return parity(np.asarray(x, dtype=np.int64) & self.trace_mask)

    def relative_trace_vec(self, x, s: int, t: int) -> np.ndarray:
        if s % t or s < 1 or t < 1:
            raise FieldError(f"trace Tr^{s}_{t} needs t | s")
        x = np.asarray(x, dtype=np.int64)
        if t == 1 and s == self.n:
            return self.trace_vec(x)
        r = np.zeros_like(x)
        y = x
        for _ in range(s // t):
            r ^= y
            y = self.frobenius_vec(y, t)
        return r

    def subtrace_vec(self, a, t: int | None = None) -> np.ndarray:
        """Second elementary symmetric function of the F_2^t conjugates."""
        t = self.n if t is None else t
        y = np.asarray(a, dtype=np.int64)
        e1 = np.zeros_like(y)
        e2 = np.zeros_like(y)
        for _ in range(t):
            e2 ^= self.mul_vec(e1, y)
            e1 ^= y
            y = self.square_vec(y)
        if np.any(e2 > 1):
            raise AssertionError("subtrace left F_2; input not in F_2^t?")
        return e2


@dataclass(frozen=True, eq=False)
class Subfield:
    """F_{2^k} realized as Frobenius fixed points of a parent field."""

    parent: Field
    k: int
    generator: int
    elements: np.ndarray = dc_field(repr=False)

    @property
    def nonzero(self) -> np.ndarray:
        return self.elements[1:]

    @property
    def size(self) -> int:
        return 1 << self.k

    @cached_property
    def powers(self) -> np.ndarray:
        """generator^i for 0 <= i < 2^k - 1."""
        f = self.parent
        if f.exp is not None:
            return f.exp[:: f.group_order // (self.size - 1)].copy()
        out = [1]
        for _ in range(self.size - 2):
            out.append(f.mul(out[-1], self.generator))
        return np.array(out, dtype=np.int64)

    @cached_property
    def basis(self) -> list[int]:
        """{h^0, ..., h^(k-1)} for the subfield generator h."""
        return [int(v) for v in self.powers[: self.k]] if self.k > 1 else [1]

    @cached_property
    def by_coords(self) -> np.ndarray:
        """Element with basis coordinates c, indexed by c."""
        return span(self.basis)

    @cached_property
    def coords_of(self) -> dict[int, int]:
        return {int(e): c for c, e in enumerate(self.by_coords)}

    def contains(self, x: int) -> bool:
        return self.parent.frobenius(x, self.k) == x


@lru_cache(maxsize=None)
def _subfield(f: Field, k: int) -> Subfield:
    step = f.group_order // ((1 << k) - 1)
    h = f.pow(f.generator, step)
    if f.exp is not None:
        nonzero = f.exp[::step]
    else:
        nonzero = [1]
        for _ in range((1 << k) - 2):
            nonzero.append(f.mul(nonzero[-1], h))
    elems = np.sort(np.concatenate([[0], np.asarray(nonzero, dtype=np.int64)]))
    return Subfield(f, k, h, elems)


def _smallest_generator(n: int, modulus: int) -> int:
    q1 = (1 << n) - 1
    if q1 == 1:
        return 1
    ps = prime_factors(q1)
    for g in range(2, 1 << n):
        if all(_pow_plain(g, q1 // p, modulus) != 1 for p in ps):
            return g
    raise FieldError("no generator found")  # unreachable for irreducible moduli


def _pow_plain(x, e, modulus):
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, x, modulus)
        x = poly_mulmod(x, x, modulus)
        e >>= 1
    return r


def _build_tables(n, modulus, g):
    q1 = (1 << n) - 1
    exp = np.empty(q1, dtype=np.int64)
    exp[0] = 1
    filled = 1
    step = g  # g^filled
    while filled < q1:
        take = min(filled, q1 - filled)
        exp[filled:filled + take] = _clmul_reduce_vec(exp[:take], step, n, modulus)
        filled += take
        step = _pow_plain(g, filled, modulus)
    log = np.zeros(1 << n, dtype=np.int64)
    log[exp] = np.arange(q1, dtype=np.int64)
    return exp, log


@lru_cache(maxsize=None)
def build_field(n: int, modulus: int | None = None,
                table_threshold: int = LOG_TABLE_THRESHOLD) -> Field:
    """GF(2^n) with the given modulus, or the smallest irreducible of degree n."""
    if not 1 <= n <= MAX_DEGREE:
        raise FieldError(f"degree {n} outside 1..{MAX_DEGREE}")
    if modulus is None:
        modulus = smallest_irreducible(n)
    elif modulus.bit_length() - 1 != n:
        raise FieldError(f"modulus 0x{modulus:x} does not have degree {n}")
    elif not is_irreducible(modulus):
        raise FieldError(f"modulus 0x{modulus:x} is reducible")
    g = _smallest_generator(n, modulus)
    exp = log = None
    if n <= table_threshold:
        exp, log = _build_tables(n, modulus, g)
    return Field(n, modulus, g, exp, log)


def to_hex(x: int) -> str:
    return format(int(x), "x")


def from_hex(s: str) -> int:
    return int(s, 16)
