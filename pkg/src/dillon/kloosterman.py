"""Kloosterman sums over F_{2^m}, zero tables and the mod-16 filter.

``K(a) = 1 + sum_{x != 0} (-1)^Tr(1/x + a x)``, with the trace taken down to
F_2. The field F_{2^m} may be the ambient field or a subfield of it.

A whole table is one Walsh-Hadamard transform: with 1/0 := 0 the x = 0 term
contributes the leading 1, so K is the Walsh spectrum of ``Tr(1/x)``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .fwht import fwht, signs
from .gf2field import Field, FieldError, build_field, to_hex
from .report import Report

CACHE_ENV = "DILLON_CACHE_DIR"


def _degree(field: Field, m: int | None) -> int:
    m = field.n if m is None else m
    if m < 1 or field.n % m:
        raise FieldError(f"F_2^{m} is not a subfield of F_2^{field.n}")
    return m


def kloosterman_sum(field: Field, a: int, m: int | None = None) -> int:
    """K_{2^m}(a) by the defining sum."""
    m = _degree(field, m)
    if not field.is_in_subfield(a, m):
        raise FieldError(f"0x{a:x} is not in F_2^{m}")
    xs = field.subfield(m).nonzero
    arg = field.inv_vec(xs) ^ field.mul_vec(xs, a)
    tr = field.relative_trace_vec(arg, m, 1)
    return int(1 + signs(tr).sum())


@dataclass(frozen=True, eq=False)
class KloostermanTable:
    """K_{2^m}(a) for every a in F_{2^m}, sorted by element bitmask."""

    field: Field
    m: int
    elements: np.ndarray
    values: np.ndarray

    def __getitem__(self, a: int) -> int:
        i = int(np.searchsorted(self.elements, a))
        if i >= len(self.elements) or self.elements[i] != a:
            raise KeyError(f"0x{a:x} is not in F_2^{self.m}")
        return int(self.values[i])

    def value_vec(self, a) -> np.ndarray:
        return self.values[np.searchsorted(self.elements, np.asarray(a, dtype=np.int64))]

    def zeros(self) -> list[int]:
        """Kloosterman zeros: nonzero a with K(a) = 0 (K(0) = 0 is not counted)."""
        mask = (self.values == 0) & (self.elements != 0)
        return [int(x) for x in self.elements[mask]]

    def is_zero_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (self.value_vec(a) == 0) & (a != 0)

    # -- persistence ------------------------------------------------------

    def header(self) -> dict:
        return {"m": self.m, "n": self.field.n, "modulus": format(self.field.modulus, "x")}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        h = self.header()
        w.writerow(["m", "n", "modulus"])
        w.writerow([h["m"], h["n"], h["modulus"]])
        w.writerow(["element", "K"])
        for e, v in zip(self.elements.tolist(), self.values.tolist()):
            w.writerow([to_hex(e), v])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, field: Field | None = None) -> "KloostermanTable":
        rows = list(csv.reader(io.StringIO(text)))
        m, n, modulus = int(rows[1][0]), int(rows[1][1]), int(rows[1][2], 16)
        if field is None:
            field = build_field(n, modulus)
        elif (field.n, field.modulus) != (n, modulus):
            raise ValueError("table was built for a different field")
        body = rows[3:]
        elements = np.array([int(r[0], 16) for r in body], dtype=np.int64)
        values = np.array([int(r[1]) for r in body], dtype=np.int64)
        return cls(field, m, elements, values)


def build_table(field: Field, m: int | None = None) -> KloostermanTable:
    """Every K_{2^m}(a), via one fast Walsh-Hadamard transform."""
    m = _degree(field, m)
    sub = field.subfield(m)
    ys = sub.by_coords                      # element with coordinates c
    s = signs(field.relative_trace_vec(field.inv_vec(ys), m, 1))
    spectrum = fwht(s)
    elems = sub.elements
    idx = np.zeros_like(elems)
    for i, h in enumerate(sub.basis):
        idx |= field.relative_trace_vec(field.mul_vec(elems, h), m, 1) << i
    return KloostermanTable(field, m, elems, spectrum[idx])


def cache_path(field: Field, m: int, cache_dir: str | os.PathLike | None = None) -> Path:
    cache_dir = Path(cache_dir or os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "dillon")
    key = f"kloosterman:m={m}:n={field.n}:modulus={field.modulus:x}"
    digest = hashlib.sha256(key.encode()).hexdigest()[:16]
    return cache_dir / f"kloosterman-m{m}-n{field.n}-{digest}.csv"


def load_or_build(field: Field, m: int | None = None,
                  cache_dir: str | os.PathLike | None = None) -> tuple[KloostermanTable, Path, bool]:
    """Cached table; returns (table, path, was_cached)."""
    m = _degree(field, m)
    path = cache_path(field, m, cache_dir)
    if path.exists():
        return KloostermanTable.from_csv(path.read_text(), field), path, True
    table = build_table(field, m)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(table.to_csv())
    tmp.replace(path)
    return table, path, False


# ---------------------------------------------------------------------------
# mod 16

def mod16_necessary(field: Field, a: int, m: int | None = None) -> bool:
    """T(a) = 0 and S(a) = 0 over F_{2^m}.

    If this is False, K_{2^m}(a) is not divisible by 16 (so a is not a zero).
    Not a sufficient condition.
    """
    m = _degree(field, m)
    if m < 4:
        raise FieldError("the mod-16 condition needs m >= 4")
    if a == 0:
        raise FieldError("a must be nonzero")
    return field.absolute_trace(a, m) == 0 and field.subtrace(a, m) == 0


def mod16_necessary_vec(field: Field, a, m: int | None = None) -> np.ndarray:
    m = _degree(field, m)
    if m < 4:
        raise FieldError("the mod-16 condition needs m >= 4")
    a = np.asarray(a, dtype=np.int64)
    return (field.relative_trace_vec(a, m, 1) == 0) & (field.subtrace_vec(a, m) == 0)


def filter_stats(table: KloostermanTable) -> dict:
    """How the mod-16 filter performs on a full table (m >= 4)."""
    nz = table.elements[1:]
    vals = table.values[1:]
    passes = mod16_necessary_vec(table.field, nz, table.m)
    div16 = vals % 16 == 0
    return {
        "nonzero_elements": int(nz.size),
        "pass_filter": int(passes.sum()),
        "divisible_by_16": int(div16.sum()),
        "zeros": int((vals == 0).sum()),
        "violations": int((div16 & ~passes).sum()),
    }


def check_mod16(m: int, field: Field | None = None) -> Report:
    """K(a) = 0 mod 16 implies T(a) = S(a) = 0, for all a in F_{2^m}^*."""
    t0 = time.perf_counter()
    field = field or build_field(m)
    rep = Report("prop4", {"m": m, "field": field.describe()})
    table = build_table(field, m)
    nz = table.elements[1:]
    bad = (table.values[1:] % 16 == 0) & ~mod16_necessary_vec(field, nz, m)
    rep.counterexamples = [{"m": m, "a": to_hex(x)} for x in nz[bad]]
    rep.details = filter_stats(table)
    return rep.finish(t0)


# ---------------------------------------------------------------------------

def proper_divisors(m: int) -> list[int]:
    return [k for k in range(1, m) if m % k == 0]


def check_subfield_zero_theorem(max_m: int, min_m: int = 2) -> Report:
    """No Kloosterman zero of F_{2^m} lies in a proper subfield, except a = 1 at m = 4."""
    if max_m > 20:
        raise FieldError("max_m must be <= 20")
    t0 = time.perf_counter()
    rep = Report("thm1", {"min_m": min_m, "max_m": max_m})
    exceptional = []
    tested = 0
    for m in range(max(min_m, 2), max_m + 1):
        field = build_field(m)
        table = build_table(field, m)
        seen = set()
        for k in proper_divisors(m):
            for a in field.subfield(k).nonzero.tolist():
                if a in seen:
                    continue
                seen.add(a)
                tested += 1
                if table[a] == 0:
                    hit = {"m": m, "k": k, "a": to_hex(a)}
                    if (m, a) == (4, 1):
                        exceptional.append(hit)
                    else:
                        rep.counterexamples.append(hit)
    if [(e["m"], e["a"]) for e in exceptional] != [(4, "1")] and max_m >= 4 and min_m <= 4:
        rep.counterexamples.append({"missing_exception": "m=4, a=1"})
    rep.details = {"elements_tested": tested, "exceptional": exceptional}
    return rep.finish(t0)


def coset_all_zeros(field: Field, a: int, m: int, k: int,
                    table: KloostermanTable | None = None) -> bool:
    """True iff every u in a F_{2^k}^* is a Kloosterman zero of F_{2^m}."""
    m = _degree(field, m)
    if a == 0:
        raise FieldError("a must be nonzero")
    if m % k:
        raise FieldError(f"{k} does not divide {m}")
    if not field.is_in_subfield(a, m):
        raise FieldError(f"0x{a:x} is not in F_2^{m}")
    coset = field.coset(a, k)
    if m >= 4 and not all(mod16_necessary(field, u, m) for u in coset):
        return False
    if table is not None:
        return all(table[u] == 0 for u in coset)
    return all(kloosterman_sum(field, u, m) == 0 for u in coset)
