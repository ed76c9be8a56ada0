"""Command-line entry point: ``dillon verify|search|kloosterman|spectrum|field-info``.

Exit codes: 0 verified / success, 1 counterexample, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import gzip
import io
import json
import logging
import os
import shutil
import sys
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import claims
from .bent import DillonMonomial, iter_spectrum, search_bent_cosets
from .gf2field import Field, FieldError, build_field, from_hex, to_hex
from .kloosterman import CACHE_ENV, filter_stats, load_or_build
from .report import Report

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

VerificationReport = Report


@dataclass
class RunConfig:
    field_overrides: dict[int, int] = dc_field(default_factory=dict)
    cache_dir: Path | None = None
    jobs: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")

    def field(self, n: int) -> Field:
        return build_field(n, self.field_overrides.get(n))


class UsageError(Exception):
    pass


def _hex(s: str) -> int:
    try:
        return from_hex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex string: {s!r}")


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x]


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _render(payload: dict, fmt: str, rows: list[list] | None = None, header=None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(rows or [])
        return buf.getvalue()
    lines = []
    for key, val in payload.items():
        if isinstance(val, (dict, list)):
            val = json.dumps(val)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args, cfg: RunConfig) -> int:
    params = {"m": args.m, "k": args.k, "direct_walsh": args.direct_walsh,
              "sample": args.sample, "seed": args.seed}
    if isinstance(params["m"], list) and len(params["m"]) == 1 and args.claim not in ("thm3", "thm4", "prop4"):
        params["m"] = params["m"][0]
    rep = claims.run_claim(args.claim, fields=cfg.field, jobs=cfg.jobs, **params)
    rows = [[rep.claim, rep.status, json.dumps(c, sort_keys=True)] for c in rep.counterexamples] \
        or [[rep.claim, rep.status, ""]]
    _emit(_render(rep.to_dict(), cfg.output_format, rows, ["claim", "status", "counterexample"]), args.out)
    return EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_search(args, cfg: RunConfig) -> int:
    m, k = args.m, args.k
    if m is None or k is None:
        raise UsageError("search needs --m and --k")
    m = m[0] if isinstance(m, list) else m
    if k < 1 or m % k or m > 12:
        raise UsageError(f"invalid (m, k) = ({m}, {k}); need k | m and m <= 12")
    field = cfg.field(2 * m) if args.ambient else cfg.field(m)
    t0 = time.perf_counter()
    cosets = search_bent_cosets(m, k, field, cfg.jobs)
    payload = {
        "m": m, "k": k, "field": field.describe(),
        "coefficients": [to_hex(x) for c in cosets for x in c],
        "cosets": [[to_hex(x) for x in c] for c in cosets],
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
    }
    payload["coefficients"].sort(key=lambda h: int(h, 16))
    rows = [[i, to_hex(x)] for i, c in enumerate(cosets) for x in c]
    _emit(_render(payload, cfg.output_format, rows, ["coset", "coefficient"]), args.out)
    return EXIT_OK


def cmd_kloosterman(args, cfg: RunConfig) -> int:
    m = args.m[0] if isinstance(args.m, list) else args.m
    if m is None or not 1 <= m <= 20:
        raise UsageError("kloosterman needs --m in 1..20")
    field = cfg.field(m)
    table, path, cached = load_or_build(field, m, cfg.cache_dir)
    if args.out:
        shutil.copyfile(path, args.out)
    payload = {"m": m, "field": field.describe(), "table": str(path), "cached": cached,
               "zeros": [to_hex(x) for x in table.zeros()]}
    if m >= 4:
        payload["mod16_filter"] = filter_stats(table)
    text = _render(payload, cfg.output_format if not args.zeros_only else "json")
    if args.zeros_only:
        text = "\n".join(payload["zeros"]) + ("\n" if payload["zeros"] else "")
    elif cfg.output_format == "csv":
        text = table.to_csv()
    sys.stdout.write(text)
    return EXIT_OK


def cmd_spectrum(args, cfg: RunConfig) -> int:
    m = args.m[0] if isinstance(args.m, list) else args.m
    if m is None or args.k is None or args.a is None:
        raise UsageError("spectrum needs --m, --k and --a")
    if 2 * m > 20:
        raise UsageError("spectrum needs 2m <= 20")
    field = cfg.field(2 * m)
    if args.a == 0 or args.a >= field.order:
        raise UsageError("--a must be a nonzero element of F_2^{2m}")
    mono = DillonMonomial.make(field, m, args.k, args.a)
    f = mono.evaluate()
    target = 1 << m
    parseval = {}
    max_abs, min_abs = 0, None
    sink = None
    if args.out:
        raw = gzip.open(args.out, "wt", newline="") if args.out.endswith(".gz") \
            else open(args.out, "w", newline="")
        sink = (raw, csv.writer(raw, lineterminator="\n"))
        sink[1].writerow(["a", "b", "W"])
    try:
        for b, w in iter_spectrum(f):
            parseval[to_hex(b)] = int((w * w).sum()) == 1 << (4 * m)
            aw = abs(w)
            max_abs = max(max_abs, int(aw.max()))
            min_abs = int(aw.min()) if min_abs is None else min(min_abs, int(aw.min()))
            if sink:
                hb = to_hex(b)
                sink[1].writerows([to_hex(a), hb, int(v)] for a, v in enumerate(w.tolist()))
    finally:
        if sink:
            sink[0].close()
    payload = {"m": m, "k": args.k, "field": field.describe(), "a": to_hex(args.a),
               "normalized_a": to_hex(mono.a), "max_abs": max_abs, "min_abs": min_abs,
               "bent": max_abs == min_abs == target, "parseval": parseval}
    if args.out:
        payload["out"] = args.out
    sys.stdout.write(_render(payload, "json" if cfg.output_format == "csv" else cfg.output_format))
    return EXIT_OK


def cmd_field_info(args, cfg: RunConfig) -> int:
    n = args.n or (args.m[0] if isinstance(args.m, list) else args.m)
    if n is None:
        raise UsageError("field-info needs --n")
    field = cfg.field(n)
    payload = dict(field.describe(), log_tables=field.has_tables,
                   trace_mask=to_hex(field.trace_mask),
                   subfields={str(k): {"generator": to_hex(field.subfield(k).generator)}
                              for k in range(1, n + 1) if n % k == 0})
    sys.stdout.write(_render(payload, "json" if cfg.output_format == "csv" else cfg.output_format))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=_int_list, help="degree m (comma list where a claim allows)")
    common.add_argument("--k", type=int)
    common.add_argument("--a", type=_hex, help="coefficient as hex bitmask")
    common.add_argument("--modulus", type=_hex, action="append", default=[],
                        help="irreducible modulus (hex); applies to fields of its degree")
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV))
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="dillon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a desk-scale claim check")
    v.add_argument("claim", choices=sorted(claims.REGISTRY))
    v.add_argument("--direct-walsh", action="store_true")
    v.add_argument("--sample", type=int)
    v.add_argument("--seed", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="list bent Dillon coefficients")
    s.add_argument("--ambient", action="store_true",
                   help="write coefficients in F_2^{2m} instead of F_2^m")
    s.set_defaults(func=cmd_search)

    kl = sub.add_parser("kloosterman", parents=[common], help="Kloosterman table and zeros")
    kl.add_argument("--zeros-only", action="store_true")
    kl.set_defaults(func=cmd_kloosterman)

    sp = sub.add_parser("spectrum", parents=[common], help="Walsh spectrum of a Dillon map")
    sp.set_defaults(func=cmd_spectrum)

    fi = sub.add_parser("field-info", parents=[common], help="describe GF(2^n)")
    fi.add_argument("--n", type=int)
    fi.set_defaults(func=cmd_field_info)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        overrides = {}
        for mod in args.modulus:
            overrides[mod.bit_length() - 1] = mod
        cfg = RunConfig(overrides, Path(args.cache_dir) if args.cache_dir else None,
                        args.jobs, args.format)
        return args.func(args, cfg)
    except (UsageError, FieldError, ValueError, KeyError) as e:
        print(f"dillon: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
