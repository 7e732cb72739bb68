"""Command-line interface: ``ordhyp <command> [options]``."""

import argparse
import sys
import time

from . import serialize as io_
from .construct import acnodal_coset, near_pencil, off_coset_probe
from .curve import ProjectionCenter, UnsupportedCenter, classify, sylvester_decompose
from .enumeration import spectrum, through_point_exactly
from .groupmodel import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CosetSpec,
    FiniteAbelianGroup,
    closed_form_max,
    closed_form_min,
    dplus1_predict,
    maximize_dplus1,
    minimize_ordinary,
    ordinary_predict,
)
from .projective import GeneralPositionError
from .scalar import BackendMismatch, NonRealError
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2  # argparse's own code
EXIT_PARSE = 3
EXIT_BUDGET = 4
EXIT_GENERAL_POSITION = 5
EXIT_DOMAIN = 6


def cmd_construct(args):
    t0 = time.perf_counter()
    params = {"type": args.type, "d": args.d, "n": args.n, "offset": args.offset}
    if args.type == "near-pencil":
        cfg = near_pencil(args.d, args.n)
    else:
        cfg, meta = acnodal_coset(args.d, args.n, args.offset)
        if args.type == "acnodal-probe":
            if args.angle is None:
                raise ValueError("--angle is required for acnodal-probe")
            params["angle"] = args.angle
            q = off_coset_probe(meta, args.angle)
            manifest = io_.make_manifest("construct", params, None, round(time.perf_counter() - t0, 6), io_.POINTS_SCHEMA)
            io_.write_text(args.out, io_.dumps(io_.point_to_json(q, manifest)))
            return EXIT_OK
        params["c"] = meta.c
        params["modulus"] = meta.modulus
    manifest = io_.make_manifest("construct", params, None, round(time.perf_counter() - t0, 6), io_.POINTS_SCHEMA)
    io_.write_text(args.out, io_.dumps(io_.config_to_json(cfg, manifest)))
    return EXIT_OK


def cmd_count(args):
    t0 = time.perf_counter()
    cfg = io_.read_config(args.input)
    params = {"input": args.input, "workers": args.workers}
    if args.through is not None:
        if args.exactly is None:
            raise io_.ParseError("--through needs --exactly")
        q = io_.point_from_json(io_.load_json(args.through))
        value = through_point_exactly(cfg, q, args.exactly)
        params.update(through=args.through, exactly=args.exactly)
        body = {"n": cfg.n, "d": cfg.dim, "t": args.exactly, "through_point_exactly": value}
        header, rows = ["t", "count"], [[args.exactly, value]]
    else:
        rep = spectrum(cfg, args.workers)
        body = rep.to_json()
        header = ["incidence", "hyperplanes"]
        rows = [[i, m] for i, m in sorted(rep.counts.items())]
    elapsed = round(time.perf_counter() - t0, 6)
    if args.format == "csv":
        manifest = io_.make_manifest("count", params, None, elapsed, io_.REPORT_SCHEMA)
        io_.write_text(args.out, io_.csv_text(header, rows, manifest))
    else:
        body["manifest"] = io_.make_manifest("count", params, None, elapsed, io_.REPORT_SCHEMA)
        io_.write_text(args.out, io_.dumps(body))
    return EXIT_OK


def _group(kind, n):
    return FiniteAbelianGroup.product(n) if kind == "product" else FiniteAbelianGroup.cyclic(n)


def cmd_predict(args):
    t0 = time.perf_counter()
    params = {"d": args.d, "n": args.n, "budget": args.budget}
    body = {"d": args.d, "n": args.n}
    if args.c is not None or args.offset is not None:
        g = _group(args.group, args.n)
        c = args.c if args.c is not None else (-args.offset) % args.n
        spec = CosetSpec(g, args.d, c)
        params.update(group=args.group, c=c)
        body["coset"] = {
            "group": g.label,
            "c": c,
            "ordinary": ordinary_predict(spec, args.budget),
            "dplus1": dplus1_predict(spec, args.budget),
        }
    lo = minimize_ordinary(args.d, args.n, args.budget)
    hi = maximize_dplus1(args.d, args.n, args.budget)
    body["min_ordinary"] = {"group": lo.group.label, "c": lo.c, "value": lo.value}
    body["max_dplus1"] = {"group": hi.group.label, "c": hi.c, "value": hi.value}
    if args.d in (4, 5, 6):
        body["closed_form_min"] = closed_form_min(args.d, args.n)
        body["closed_form_max"] = closed_form_max(args.d, args.n)
    manifest = io_.make_manifest("predict", params, None, round(time.perf_counter() - t0, 6), io_.REPORT_SCHEMA)
    body["manifest"] = manifest
    io_.write_text(args.out, io_.dumps(body))
    return EXIT_OK


def cmd_classify(args):
    t0 = time.perf_counter()
    center = ProjectionCenter.from_values(io_.parse_vector(args.p))
    cls = classify(center)
    body = cls.to_json()
    body.update({"L1": None, "L2": None, "sign": None, "scale": None, "kind": None})
    try:
        dec = sylvester_decompose(center)
    except UnsupportedCenter:
        pass
    else:
        body.update(dec.to_json())
    body["p"] = [io_.fmt_fraction(x) for x in center.p]
    manifest = io_.make_manifest("classify", {"p": args.p}, None, round(time.perf_counter() - t0, 6), io_.REPORT_SCHEMA)
    body["manifest"] = manifest
    io_.write_text(args.out, io_.dumps(body))
    return EXIT_OK


TABLE_HEADER = ["d", "n", "group", "c", "min_ordinary", "closed_form_min", "max_dplus1", "closed_form_max", "match"]


def table_rows(d, n_min, n_max, budget=DEFAULT_BUDGET):
    rows = []
    for n in range(n_min, n_max + 1):
        lo = minimize_ordinary(d, n, budget)
        hi = maximize_dplus1(d, n, budget)
        cf_lo = closed_form_min(d, n) if d in (4, 5, 6) else None
        cf_hi = closed_form_max(d, n) if d in (4, 5, 6) else None
        match = cf_lo is not None and lo.value == cf_lo and hi.value == cf_hi
        rows.append([d, n, lo.group.label, lo.c, lo.value, cf_lo, hi.value, cf_hi, match])
    return rows


def cmd_table(args):
    t0 = time.perf_counter()
    if args.n_min > args.n_max:
        raise io_.ParseError("--n-min exceeds --n-max")
    rows = table_rows(args.d, args.n_min, args.n_max, args.budget)
    params = {"d": args.d, "n_min": args.n_min, "n_max": args.n_max, "budget": args.budget}
    manifest = io_.make_manifest("table", params, None, round(time.perf_counter() - t0, 6), io_.TABLE_SCHEMA)
    if args.format == "json":
        body = {"rows": [dict(zip(TABLE_HEADER, r)) for r in rows], "manifest": manifest}
        io_.write_text(args.out, io_.dumps(body))
    else:
        io_.write_text(args.out, io_.csv_text(TABLE_HEADER, rows, manifest))
    return EXIT_OK if all(r[-1] for r in rows) else EXIT_VERIFY_FAILED


def cmd_verify(args):
    t0 = time.perf_counter()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(name, args.trials, args.seed, args.workers) for name in names]
    for r in results:
        print(f"{r.name}: {r.passed}/{r.passed + r.failed} pass", file=sys.stderr)
    body = {"suites": [r.to_json() for r in results], "all_passed": all(r.ok for r in results)}
    params = {"suite": args.suite, "trials": args.trials, "workers": args.workers}
    manifest = io_.make_manifest("verify", params, args.seed, round(time.perf_counter() - t0, 6), io_.REPORT_SCHEMA)
    body["manifest"] = manifest
    io_.write_text(args.out, io_.dumps(body))
    return EXIT_OK if body["all_passed"] else EXIT_VERIFY_FAILED


def build_parser():
    parser = argparse.ArgumentParser(prog="ordhyp", description="Ordinary hyperplanes of point sets on rational curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a configuration and write it as JSON")
    p.add_argument("--type", required=True, choices=["near-pencil", "acnodal-coset", "acnodal-probe"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--offset", type=int, default=0, help="coset offset j")
    p.add_argument("--angle", type=int, help="angle index of the probe point (acnodal-probe)")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count", help="hyperplane spectrum of a points file")
    p.add_argument("--input", required=True)
    p.add_argument("--through", help="point file; count hyperplanes through it")
    p.add_argument("--exactly", type=int, help="number of configuration points on those hyperplanes")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("predict", help="coset counts from the group model")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, help="target element c")
    p.add_argument("--offset", type=int, help="coset offset j (c = -j mod n)")
    p.add_argument("--group", choices=["cyclic", "product"], default="cyclic")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("classify", help="singularity type and Sylvester decomposition of a center")
    p.add_argument("--p", required=True, help="comma-separated coordinates p_0,...,p_{d+1}")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", help="extremal values against closed forms")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run seeded verification suites")
    p.add_argument("--suite", required=True, choices=list(SUITES) + ["all"])
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io_.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GeneralPositionError as exc:
        print(f"general position violated: {exc} (witness {list(exc.subset)})", file=sys.stderr)
        return EXIT_GENERAL_POSITION
    except (ValueError, BackendMismatch, NonRealError, UnsupportedCenter) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
