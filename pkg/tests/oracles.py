"""Slow, independent reference computations used to freeze expected values.

Nothing here imports the package: plain shift-and-add arithmetic, trial
division and dense sums.
"""

from itertools import product


def mul(a, b, modulus):
    """Shift-and-add multiplication reducing after every shift."""
    n = modulus.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= modulus
    return r


def power(a, e, modulus):
    r = 1
    for _ in range(e):
        r = mul(r, a, modulus)
    return r


def inverse(a, modulus):
    n = modulus.bit_length() - 1
    for y in range(1, 1 << n):
        if mul(a, y, modulus) == 1:
            return y
    raise ZeroDivisionError


def poly_divides(d, p):
    while p.bit_length() >= d.bit_length():
        p ^= d << (p.bit_length() - d.bit_length())
    return p == 0


def irreducible_by_trial_division(p):
    n = p.bit_length() - 1
    if n < 1:
        return False
    for d in range(2, 1 << (n // 2 + 1)):
        if 1 <= d.bit_length() - 1 <= n // 2 and poly_divides(d, p):
            return False
    return True


def conjugates(x, t, modulus):
    out = [x]
    for _ in range(t - 1):
        out.append(mul(out[-1], out[-1], modulus))
    return out


def trace(x, t, modulus):
    r = 0
    for c in conjugates(x, t, modulus):
        r ^= c
    return r


def subtrace(x, t, modulus):
    cs = conjugates(x, t, modulus)
    r = 0
    for i in range(t):
        for j in range(i + 1, t):
            r ^= mul(cs[i], cs[j], modulus)
    return r


def kloosterman(a, m, modulus):
    """Defining sum over the standalone field GF(2)[x]/(modulus), m = deg."""
    total = 1
    for x in range(1, 1 << m):
        total += (-1) ** trace(inverse(x, modulus) ^ mul(a, x, modulus), m, modulus)
    return total


def hadamard(values):
    """Dense O(N^2) Walsh-Hadamard transform."""
    N = len(values)
    return [sum(v * (-1) ** bin(u & c).count("1") for c, v in enumerate(values)) for u in range(N)]


def cyclotomic_unit_cosets(n):
    from math import gcd
    N = (1 << n) - 1
    cosets = {frozenset(d * (1 << j) % N for j in range(n)) for d in range(1, N) if gcd(d, N) == 1}
    return cosets


def all_polys(n):
    """Every polynomial of exact degree n, as bitmasks, ascending."""
    return [(1 << n) | low for low in range(1 << n)]


def bits(n):
    return product((0, 1), repeat=n)
