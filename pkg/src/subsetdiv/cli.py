"""Command-line front end: reproducible batch runs with CSV/JSON output.

Subcommands
-----------
l-of-n      minimal covering-set sizes over a range of n
verify      named verification sweeps (lemma1, lemma2, thm2, thm3, thm4,
            construction, diffcount)
conjecture  maximal property-preserving cardinality per universe exponent z
tau-diag    cumulative n/tau(n) diagnostic table
check-set   ad-hoc verdicts for a comma-separated element list

Exit codes: 0 all pass, 1 a verification sweep found a counterexample,
2 usage or resource error.  All randomness is seeded; identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from . import arith, cover, mfree
from .errors import ResourceLimitError
from .sums import (
    ElementSet,
    count_positive_differences,
    subset_differences,
    subset_sums,
)

VERIFY_ITEMS = ("lemma1", "lemma2", "thm2", "thm3", "thm4", "construction",
                "diffcount")


@dataclass
class RunConfig:
    command: str
    seed: int = 42
    time_limit_ms: int | None = None
    node_limit: int = 10_000_000
    output_format: str = "csv"
    output_path: str | None = None

    def search_config(self) -> cover.SearchConfig:
        return cover.SearchConfig(node_limit=self.node_limit,
                                  time_limit_ms=self.time_limit_ms)


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"expected A..B, got {text!r}")
    a, b = int(lo), int(hi)
    if a > b:
        raise ValueError(f"empty range {text!r}")
    return a, b


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _witness_field(witness) -> str:
    return " ".join(str(a) for a in witness)


def _certificate_dict(cert: mfree.Certificate | None):
    if cert is None:
        return None
    return {
        "kind": cert.kind,
        "subset_a": list(cert.subset_a),
        "subset_b": list(cert.subset_b),
        "sum_a": cert.sum_a,
        "sum_b": cert.sum_b,
        "exponent": cert.exponent,
    }


def _plot_path(out: str) -> str:
    return str(Path(out).with_suffix(".png"))


# ---------------------------------------------------------------- l-of-n


def cmd_l_of_n(ns: tuple[int, int], config: RunConfig, plot: bool = False) -> int:
    results = [cover.l_exact(n, config.search_config())
               for n in range(ns[0], ns[1] + 1)]
    rows = [
        {
            "n": r.n,
            "l": r.l,
            "lower_bound": r.lower_bound,
            "log2_floor": r.log2_floor,
            "witness": list(r.witness),
            "status": r.status,
            "nodes_explored": r.nodes_explored,
        }
        for r in results
    ]
    if config.output_format == "json":
        text = _json_text({"command": "l-of-n", "results": rows})
    else:
        text = _csv_text(
            ["n", "l", "lower_bound", "log2_floor", "witness", "status"],
            [[r["n"], r["l"], r["lower_bound"], r["log2_floor"],
              _witness_field(r["witness"]), r["status"]] for r in rows],
        )
    _emit(text, config.output_path)
    if plot:
        from . import report

        report.save_l_growth_figure(rows, _plot_path(config.output_path))
    return 0


# ---------------------------------------------------------------- verify


def _verify_lemma1(args, config: RunConfig) -> dict:
    lo, hi = _parse_range(args.range_) if args.range_ else (3, 100_000)
    lo = max(lo, 2)
    margins = arith.divisor_ratio_margins_upto(hi)
    counterexamples = []
    boundary = []
    instances = 0
    for n in range(lo, hi + 1):
        m = margins[n]
        instances += 1
        if m <= 0:
            # n = 2 ties exactly; anything else would be a real violation
            (boundary if n == 2 and m == 0 else counterexamples).append(
                {"n": n, "margin": str(m)}
            )
    if lo > 2:
        # the strict inequality ties at n = 2; report it even when the sweep
        # starts above it
        boundary.append({"n": 2, "margin": str(margins[2])})
    return {
        "item": "lemma1",
        "parameters": {"range": [lo, hi]},
        "instances": instances,
        "counterexamples": counterexamples,
        "boundary_cases": boundary,
    }


def _verify_lemma2(args, config: RunConfig) -> dict:
    trials = args.trials or 10_000
    rng = random.Random(config.seed)
    counterexamples = []
    for _ in range(trials):
        x = rng.randint(1, 1000)
        v = (x + 1) // 2 + 1
        seq = [rng.randint(1, x) for _ in range(v)]
        if mfree.find_power2_pair(seq, x) is None:
            counterexamples.append({"x": x, "seq": seq})
    return {
        "item": "lemma2",
        "parameters": {"trials": trials, "seed": config.seed, "x_max": 1000},
        "instances": trials,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


def _verify_thm2(args, config: RunConfig) -> dict:
    lo, hi = _parse_range(args.range_) if args.range_ else (1, 10)
    counterexamples = []
    instances = 0
    for z in range(lo, hi + 1):
        for v in mfree.adjunction_check(z):
            instances += 1
            if not v.fails_r:
                counterexamples.append({"z": z, "c": v.c, "mode": v.mode})
            if v.mode == "identity" and not (v.identity.verify()
                                             and v.certificate.verify()):
                counterexamples.append(
                    {"z": z, "c": v.c, "mode": "identity-reverify"}
                )
    return {
        "item": "thm2",
        "parameters": {"z_range": [lo, hi]},
        "instances": instances,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


def _enumerate_r_star_sets(universe: int, k_cap: int):
    for k in range(1, k_cap + 1):
        for combo in combinations(range(1, universe + 1), k):
            es = ElementSet.of(combo)
            if mfree.is_r_star(es).holds:
                yield es


def _verify_thm3(args, config: RunConfig) -> dict:
    universe = args.n or 24
    counterexamples = []
    instances = 0
    for es in _enumerate_r_star_sets(universe, 4):
        instances += 1
        verdict = mfree.min_total_check(es)
        if not verdict.holds:
            counterexamples.append({"elements": list(es.elements),
                                    "total": verdict.total,
                                    "bound": verdict.bound})
    return {
        "item": "thm3",
        "parameters": {"universe": universe, "k_cap": 4},
        "instances": instances,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


def _verify_thm4(args, config: RunConfig) -> dict:
    universe = args.n or 24
    counterexamples = []
    instances = 0
    for es in _enumerate_r_star_sets(universe, 4):
        instances += 1
        verdict = mfree.difference_exclusion_check(es)
        if not verdict.holds:
            counterexamples.append({"elements": list(es.elements),
                                    "common_value": verdict.common_value})
    return {
        "item": "thm4",
        "parameters": {"universe": universe, "k_cap": 4},
        "instances": instances,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


def _verify_construction(args, config: RunConfig) -> dict:
    lo, hi = _parse_range(args.range_) if args.range_ else (1, 14)
    counterexamples = []
    for z in range(lo, hi + 1):
        verdict = mfree.is_multiple_free(mfree.construction(z))
        if not verdict.holds:
            counterexamples.append(
                {"z": z, "certificate": _certificate_dict(verdict.certificate)}
            )
    return {
        "item": "construction",
        "parameters": {"z_range": [lo, hi]},
        "instances": hi - lo + 1,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


def random_ssd_set(rng: random.Random, k_cap: int = 8) -> ElementSet:
    """A random set with all subset sums distinct, by rejection."""
    while True:
        k = rng.randint(1, k_cap)
        hi = max(4 * k, 2**k)
        elements = rng.sample(range(1, hi + 1), k)
        es = ElementSet.of(elements)
        if subset_sums(es).count == 2**k - 1:
            return es


def _verify_diffcount(args, config: RunConfig) -> dict:
    trials = args.trials or 500
    rng = random.Random(config.seed)
    counterexamples = []
    for _ in range(trials):
        es = random_ssd_set(rng)
        diff = subset_differences(es, with_multiplicity=True)
        expected = count_positive_differences(len(es))
        if len(diff.values) != expected:
            counterexamples.append({"elements": list(es.elements),
                                    "got": len(diff.values),
                                    "expected": expected})
    return {
        "item": "diffcount",
        "parameters": {"trials": trials, "seed": config.seed, "k_cap": 8},
        "instances": trials,
        "counterexamples": counterexamples,
        "boundary_cases": [],
    }


_VERIFY_DISPATCH = {
    "lemma1": _verify_lemma1,
    "lemma2": _verify_lemma2,
    "thm2": _verify_thm2,
    "thm3": _verify_thm3,
    "thm4": _verify_thm4,
    "construction": _verify_construction,
    "diffcount": _verify_diffcount,
}


def cmd_verify(args, config: RunConfig) -> int:
    report = _VERIFY_DISPATCH[args.item](args, config)
    report["passed"] = not report["counterexamples"]
    _emit(_json_text(report), config.output_path)
    return 0 if report["passed"] else 1


# ---------------------------------------------------------------- conjecture


def cmd_conjecture(zs: tuple[int, int], prop: str, config: RunConfig,
                   incumbent_ok: bool, plot: bool = False) -> int:
    prop_name = mfree.PROPERTY_R if prop == "r" else mfree.PROPERTY_R_STAR
    rows = []
    for z in range(zs[0], zs[1] + 1):
        r = mfree.max_property_set(z, prop_name, config.search_config())
        if not r.exhaustive and not incumbent_ok:
            print(
                f"error: search for z={z} hit its limit before certifying "
                "maximality; pass --incumbent-ok to accept incumbents",
                file=sys.stderr,
            )
            return 2
        rows.append({
            "z": r.z,
            "property": r.property_name,
            "k_max": r.k_max,
            "k_minus_z": r.k_minus_z,
            "exhaustive": r.exhaustive,
            "witness": list(r.witness),
        })
    if config.output_format == "json":
        text = _json_text({"command": "conjecture", "results": rows})
    else:
        text = _csv_text(
            ["z", "property", "k_max", "k_minus_z", "exhaustive", "witness"],
            [[r["z"], r["property"], r["k_max"], r["k_minus_z"],
              r["exhaustive"], _witness_field(r["witness"])] for r in rows],
        )
    _emit(text, config.output_path)
    if plot:
        from . import report

        report.save_conjecture_figure(rows, _plot_path(config.output_path))
    return 0


# ---------------------------------------------------------------- tau-diag


def cmd_tau_diag(checkpoints: list[int], config: RunConfig,
                 plot: bool = False) -> int:
    rows = []
    table = arith.tau_table(max(checkpoints)) if checkpoints else None
    for x in sorted(checkpoints):
        total = arith.weighted_inv_tau_sum(x, table=table)
        comp = arith.partial_sum_comparator(x)
        ratio = total / comp if comp == comp and comp != 0 else float("nan")
        rows.append({"x": x, "sum": total, "comparator": comp, "ratio": ratio})
    text = _csv_text(
        ["x", "sum_n_over_tau", "x2_over_2sqrtlogx", "ratio"],
        [[r["x"], repr(r["sum"]), repr(r["comparator"]), repr(r["ratio"])]
         for r in rows],
    )
    _emit(text, config.output_path)
    if plot:
        from . import report

        report.save_tau_diag_figure(rows, _plot_path(config.output_path))
    return 0


# ---------------------------------------------------------------- check-set


def cmd_check_set(elements: list[int], n: int | None, config: RunConfig) -> int:
    es = ElementSet.of(elements, bound=max(elements) if n is None else max(n, max(elements)))
    n = n if n is not None else max(elements)
    r = mfree.is_multiple_free(es)
    rstar = mfree.is_r_star(es)
    coverage = cover.is_multiple_of(es, n)
    bound = mfree.min_total_check(es)
    excl = mfree.difference_exclusion_check(es)
    doc = {
        "command": "check-set",
        "elements": list(es.elements),
        "n": n,
        "multiple_free": {"holds": r.holds,
                          "certificate": _certificate_dict(r.certificate)},
        "no_power_of_2_quotient": {"holds": rstar.holds,
                                   "certificate": _certificate_dict(rstar.certificate)},
        "coverage": {
            "fully_covered": coverage.fully_covered,
            "first_uncovered": coverage.first_uncovered,
        },
        "total_bound": {
            "applicable": bound.applicable,
            "bound": bound.bound,
            "total": bound.total,
            "holds": bound.holds,
        },
        "difference_exclusion": {
            "applicable": excl.applicable,
            "holds": excl.holds,
            "common_value": excl.common_value,
        },
    }
    _emit(_json_text(doc), config.output_path)
    return 0


# ---------------------------------------------------------------- parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--time-limit-ms", type=int, default=None)
    p.add_argument("--node-limit", type=int, default=10_000_000)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subsetdiv",
        description="Exact search and verification for subset-sum divisibility problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("l-of-n", help="minimal covering-set sizes")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--range", dest="range_", default=None, metavar="A..B")
    p.add_argument("--plot", action="store_true")
    _add_common(p)

    p = sub.add_parser("verify", help="named verification sweeps")
    p.add_argument("item", choices=VERIFY_ITEMS)
    p.add_argument("--range", dest="range_", default=None, metavar="A..B")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("conjecture", help="maximal property-preserving sets")
    p.add_argument("--z", type=int, default=None)
    p.add_argument("--range", dest="range_", default=None, metavar="A..B")
    p.add_argument("--property", choices=("r", "rstar"), default="rstar")
    p.add_argument("--incumbent-ok", action="store_true")
    p.add_argument("--plot", action="store_true")
    _add_common(p)

    p = sub.add_parser("tau-diag", help="cumulative n/tau(n) diagnostic CSV")
    p.add_argument("--x", default="", metavar="X1,X2,...")
    p.add_argument("--plot", action="store_true")
    _add_common(p)

    p = sub.add_parser("check-set", help="verdicts for an explicit element list")
    p.add_argument("--elements", required=True, metavar="A1,A2,...")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt_default = "json" if args.command in ("verify", "check-set") else "csv"
    config = RunConfig(
        command=args.command,
        seed=args.seed,
        time_limit_ms=args.time_limit_ms,
        node_limit=args.node_limit,
        output_format=args.format or fmt_default,
        output_path=args.out,
    )
    plot = getattr(args, "plot", False)
    if plot and not config.output_path:
        print("error: --plot requires --out", file=sys.stderr)
        return 2
    try:
        if args.command == "l-of-n":
            if (args.n is None) == (args.range_ is None):
                print("error: give exactly one of --n or --range", file=sys.stderr)
                return 2
            ns = (args.n, args.n) if args.n is not None else _parse_range(args.range_)
            return cmd_l_of_n(ns, config, plot)
        if args.command == "verify":
            return cmd_verify(args, config)
        if args.command == "conjecture":
            if (args.z is None) == (args.range_ is None):
                print("error: give exactly one of --z or --range", file=sys.stderr)
                return 2
            zs = (args.z, args.z) if args.z is not None else _parse_range(args.range_)
            return cmd_conjecture(zs, args.property, config, args.incumbent_ok, plot)
        if args.command == "tau-diag":
            checkpoints = [int(v) for v in args.x.split(",") if v.strip()]
            return cmd_tau_diag(checkpoints, config, plot)
        if args.command == "check-set":
            elements = [int(v) for v in args.elements.split(",") if v.strip()]
            if not elements:
                print("error: empty element list", file=sys.stderr)
                return 2
            return cmd_check_set(elements, args.n, config)
    except (ValueError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
