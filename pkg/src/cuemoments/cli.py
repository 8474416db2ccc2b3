"""Command-line front end.

Exit codes: 0 ok, 2 usage error, 3 route disagreement, 4 fixture or cache
mismatch, 5 Monte Carlo check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .exactnum import format_rational, parse_rational
from .fixtures import PRESETS
from .momentcoeffs import (
    CoeffResult,
    Family,
    MomentSpec,
    Route,
    RouteDisagreement,
    coeff,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREE = 3
EXIT_MISMATCH = 4
EXIT_MC_FAIL = 5

CACHE_ENV = "CUEMOMENTS_CACHE"
CACHE_SCHEMA = 1
SPOT_CHECK_FRACTION = 0.05

DEFAULTS = {
    "cutoff": 10**6,
    "tol": 1e-30,
    "rel_slack": 0.05,
    "sigmas": 3.0,
    "samples": 10_000,
    "seed": 0,
    "workers": 1,
    "N": 64,
    "cache": None,
}
_CONVERT = {
    "cutoff": int,
    "tol": float,
    "rel_slack": float,
    "sigmas": float,
    "samples": int,
    "seed": int,
    "workers": int,
    "N": int,
    "cache": str,
}

CSV_HEADER = ["family", "k", "M", "n1", "n2", "value", "exponent"]


class UsageError(Exception):
    pass


class CacheMismatch(Exception):
    pass


# ---------------------------------------------------------------- config


def read_config(path) -> dict:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CONVERT:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _CONVERT[key](value)
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return out


def _settings(args) -> dict:
    merged = dict(DEFAULTS)
    if os.environ.get(CACHE_ENV):
        merged["cache"] = os.environ[CACHE_ENV]
    if getattr(args, "config", None):
        merged.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    return merged


# ---------------------------------------------------------------- cache


def _key(family, spec: MomentSpec) -> tuple:
    return (Family(family).value, spec.k, spec.M, spec.n1, spec.n2)


class CoefficientCache:
    """File-backed map ``(family, k, M, n1, n2) -> coefficient record``."""

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path) if path else None
        self.records: dict[tuple, dict] = {}
        self.dirty = False

    @classmethod
    def load(cls, path: Optional[str], spot_check: bool = True, rng_seed: int = 0) -> "CoefficientCache":
        cache = cls(path)
        if cache.path is None or not cache.path.exists():
            return cache
        doc = json.loads(cache.path.read_text())
        if doc.get("schema") != CACHE_SCHEMA:
            raise CacheMismatch(f"{cache.path}: unsupported cache schema {doc.get('schema')!r}")
        for rec in doc.get("records", []):
            cache.records[(rec["family"], rec["k"], rec["M"], rec["n1"], rec["n2"])] = rec
        if spot_check:
            cache.spot_check(rng_seed)
        return cache

    def spot_check(self, rng_seed: int = 0) -> list:
        """Recompute a random 5% of the entries (at least one) on a single route."""
        keys = sorted(self.records)
        if not keys:
            return []
        count = max(1, math.ceil(SPOT_CHECK_FRACTION * len(keys)))
        picked = random.Random(rng_seed).sample(keys, count)
        for key in picked:
            fam, k, M, n1, n2 = key
            fresh = coeff(fam, MomentSpec(k, M, n1, n2), cross_check=False)
            if format_rational(fresh.value) != self.records[key]["value"]:
                raise CacheMismatch(
                    f"cache entry {key} holds {self.records[key]['value']}, "
                    f"fresh value {format_rational(fresh.value)}"
                )
        return picked

    def get(self, family, spec: MomentSpec) -> Optional[dict]:
        return self.records.get(_key(family, spec))

    def put(self, result: CoeffResult):
        key = _key(result.family, result.spec)
        rec = result.to_record()
        if self.records.get(key) != rec:
            self.records[key] = rec
            self.dirty = True

    def dumps(self) -> str:
        recs = [self.records[k] for k in sorted(self.records)]
        return json.dumps({"schema": CACHE_SCHEMA, "records": recs}, indent=1, sort_keys=True) + "\n"

    def save(self):
        if self.path is not None and self.dirty:
            self.path.write_text(self.dumps())
            self.dirty = False


def _compute(family, spec, cache: Optional[CoefficientCache], route=None, cross_check=True) -> dict:
    if cache is not None:
        hit = cache.get(family, spec)
        if hit is not None:
            return hit
    res = coeff(family, spec, route=route, cross_check=cross_check)
    if cache is not None:
        cache.put(res)
    return res.to_record()


# ---------------------------------------------------------------- commands


def _spec_from(args) -> MomentSpec:
    try:
        return MomentSpec(args.k, args.M, args.n1, args.n2)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _open_cache(settings) -> Optional[CoefficientCache]:
    if not settings["cache"]:
        return None
    return CoefficientCache.load(settings["cache"])


def cmd_coeff(args, out) -> int:
    settings = _settings(args)
    spec = _spec_from(args)
    cache = _open_cache(settings)
    rec = _compute(args.family, spec, cache, route=args.route, cross_check=not args.single_route)
    if cache is not None:
        cache.save()
    print(json.dumps(rec), file=out)
    return EXIT_OK


def _parse_grid(items: Sequence[str]) -> list[tuple]:
    keys = []
    for item in items:
        parts = item.split(":")
        if len(parts) != 5 or parts[0] not in ("a", "b"):
            raise UsageError(f"grid entry {item!r} is not family:k:M:n1:n2")
        try:
            k, M, n1, n2 = (int(p) for p in parts[1:])
            MomentSpec(k, M, n1, n2)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"grid entry {item!r}: {exc}") from exc
        keys.append((parts[0], k, M, n1, n2))
    return keys


def format_table(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([r[c] for c in CSV_HEADER])
    return buf.getvalue()


def cmd_table(args, out) -> int:
    settings = _settings(args)
    if args.preset and args.grid:
        raise UsageError("give a preset or --grid entries, not both")
    if args.preset:
        fixtures = PRESETS[args.preset]
        keys = list(fixtures)
    elif args.grid:
        fixtures = {}
        keys = _parse_grid(args.grid)
    else:
        raise UsageError("table needs a preset or --grid entries")
    if args.verify and not fixtures:
        raise UsageError("--verify needs a preset")
    cache = _open_cache(settings)
    records = []
    mismatches = []
    for key in keys:
        fam, k, M, n1, n2 = key
        rec = _compute(fam, MomentSpec(k, M, n1, n2), cache, route=args.route,
                       cross_check=not args.single_route)
        records.append(rec)
        if args.verify and parse_rational(rec["value"]) != parse_rational(fixtures[key]):
            mismatches.append((key, rec["value"], fixtures[key]))
    if cache is not None:
        cache.save()
    text = format_table(records, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    if args.verify:
        for key, got, want in mismatches:
            print(f"MISMATCH {key}: computed {got}, table {want}", file=sys.stderr)
        print(f"verify {args.preset}: {len(keys) - len(mismatches)}/{len(keys)} match", file=sys.stderr)
        if mismatches:
            return EXIT_MISMATCH
    return EXIT_OK


def mc_target(family: str, spec: MomentSpec, N: int) -> dict:
    """Reference values for a Monte Carlo run: the asymptotic coefficient and, at k=1, the exact finite-N value."""
    from .cuesim import exact_k1_second_moment, exact_k1_z_second_moment

    target = {"asymptotic": coeff(family, spec, cross_check=False).value}
    if spec.k == 1:
        n = spec.n1 if spec.M == 1 else spec.n2
        exact = exact_k1_second_moment(N, n) if family == "a" else exact_k1_z_second_moment(N, n)
        target["finite_n_exact"] = Fraction(exact) / N**spec.exponent
    return target


def mc_verdict(estimate: float, stderr: float, reference: float, sigmas: float, rel_slack: float) -> bool:
    return abs(estimate - reference) <= max(sigmas * stderr, rel_slack * abs(reference))


def cmd_mc(args, out) -> int:
    from .cuesim import mc_moment

    settings = _settings(args)
    spec = _spec_from(args)
    if settings["samples"] < 2 or settings["N"] < 1:
        raise UsageError("need --samples >= 2 and --N >= 1")
    report = mc_moment(spec, settings["N"], settings["samples"], settings["seed"],
                       family=args.family, workers=settings["workers"])
    target = mc_target(args.family, spec, settings["N"])
    ref_name = "finite_n_exact" if "finite_n_exact" in target else "asymptotic"
    reference = float(target[ref_name])
    ok = mc_verdict(report.estimate, report.stderr, reference, settings["sigmas"], settings["rel_slack"])
    doc = json.loads(report.to_json())
    doc["target"] = {k: format_rational(v) for k, v in target.items()}
    doc["compared_with"] = ref_name
    doc["verdict"] = "PASS" if ok else "FAIL"
    print(json.dumps(doc, sort_keys=True), file=out)
    return EXIT_OK if ok else EXIT_MC_FAIL


def cmd_ck(args, out) -> int:
    from .numbertheory import arithmetic_factor

    settings = _settings(args)
    k = args.k
    if k < 1:
        raise UsageError("k must be >= 1")
    cutoff = args.cutoff_pos if args.cutoff_pos is not None else settings["cutoff"]
    tol = args.tol_pos if args.tol_pos is not None else settings["tol"]
    if cutoff < 2 or not tol > 0:
        raise UsageError("need cutoff >= 2 and tol > 0")
    res = arithmetic_factor(k, cutoff, tol, method=args.method)
    print(json.dumps(res.to_record()), file=out)
    return EXIT_OK


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _spec_args(p):
    p.add_argument("family", choices=["a", "b"])
    for name in ("k", "M", "n1", "n2"):
        p.add_argument(name, type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value defaults file (flags override it)")
    common.add_argument("--cache", default=None, help=f"coefficient cache file (or ${CACHE_ENV})")

    routes = _Parser(add_help=False)
    routes.add_argument("--route", choices=[r.value for r in Route], default=None)
    routes.add_argument("--single-route", action="store_true",
                        help="evaluate one route only instead of cross-checking all of them")

    p = _Parser(prog="cuemoments", description="Joint moments of derivatives of CUE characteristic polynomials.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    pc = sub.add_parser("coeff", parents=[common, routes], help="one exact coefficient as a JSON record")
    _spec_args(pc)
    pc.set_defaults(func=cmd_coeff)

    pt = sub.add_parser("table", parents=[common, routes], help="emit or verify a table of coefficients")
    pt.add_argument("preset", nargs="?", choices=sorted(PRESETS))
    pt.add_argument("--grid", action="append", metavar="FAMILY:k:M:n1:n2")
    pt.add_argument("--format", choices=["csv", "json"], default="csv")
    pt.add_argument("--verify", action="store_true", help="compare with the embedded published values")
    pt.add_argument("--output", "-o")
    pt.set_defaults(func=cmd_table)

    pm = sub.add_parser("mc", parents=[common], help="Monte Carlo estimate against the exact coefficient")
    _spec_args(pm)
    pm.add_argument("--N", type=int, default=None)
    pm.add_argument("--samples", type=int, default=None)
    pm.add_argument("--seed", type=int, default=None)
    pm.add_argument("--workers", type=int, default=None)
    pm.add_argument("--sigmas", type=float, default=None)
    pm.add_argument("--rel-slack", dest="rel_slack", type=float, default=None)
    pm.set_defaults(func=cmd_mc)

    pk = sub.add_parser("ck", parents=[common], help="arithmetic factor c_k over primes up to a cutoff")
    pk.add_argument("k", type=int)
    pk.add_argument("cutoff_pos", nargs="?", type=int, metavar="cutoff")
    pk.add_argument("tol_pos", nargs="?", type=float, metavar="tol")
    pk.add_argument("--method", choices=["closed", "series"], default="closed")
    pk.set_defaults(func=cmd_ck)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command (coeff, table, mc, ck)")
        return args.func(args, out)
    except UsageError as exc:
        print(f"cuemoments: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RouteDisagreement as exc:
        print(f"cuemoments: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except CacheMismatch as exc:
        print(f"cuemoments: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
