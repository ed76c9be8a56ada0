"""Fast Walsh-Hadamard transform on +-1 (or integer) vectors."""

import numpy as np


def fwht(values) -> np.ndarray:
    """Return W[v] = sum_c values[c] * (-1)^popcount(v & c).

    Length must be a power of two. Works on a copy; int64 throughout.
    """
    a = np.array(values, dtype=np.int64)
    size = a.shape[0]
    if size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        lo = a[:, 0, :]
        hi = a[:, 1, :]
        a = np.stack((lo + hi, lo - hi), axis=1)
        h *= 2
    return a.reshape(size)


def signs(bits) -> np.ndarray:
    """(-1)^bits for a 0/1 array."""
    return 1 - 2 * np.asarray(bits, dtype=np.int64)
