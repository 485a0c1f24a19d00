"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure,
3 I/O error.
"""

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__, known_values
from .counts import (EdagCountProvider, NotCovered, count_cdags, count_dags, count_edags,
                     exact_cdag_dag_ratio, render_decimal)
from .estimator import DegenerateSample, estimate
from .mcmc import ChainConfig, SampleRecord, chain_seed, default_threads, run_ensemble
from .oracle import CapExceeded, census
from .verify import SUITES, run_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3
SCHEMA_VERSION = 1
PAPER_CHAINS = 10_000
PAPER_STEPS = 1_000_000


class UsageError(Exception):
    pass


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _provider(path):
    return EdagCountProvider.from_file(path) if path else EdagCountProvider.default()


def cmd_count(args) -> int:
    n = args.nodes
    if not 1 <= n <= 64:
        raise UsageError("--nodes must be in [1, 64]")
    if args.what == "dags":
        print(count_dags(n))
    elif args.what == "cdags":
        print(count_cdags(n))
    elif args.what == "edags":
        print(count_edags(n, _provider(args.edag_table)))
    else:
        if args.csv:
            print("n,dags,cdags,cdag_dag")
        else:
            print(f"{'NODES':>5} | {'#CDAGs/#DAGs':>12}")
        for k in range(2, n + 1):
            ratio = exact_cdag_dag_ratio(k).render(args.places)
            if args.csv:
                print(f"{k},{count_dags(k)},{count_cdags(k)},{ratio}")
            else:
                print(f"{k:>5} | {ratio:>12}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    c = census(args.nodes)
    obj = c.to_json()
    obj["eg_dag"] = render_decimal(Fraction(c.n_egs, c.n_dags))
    obj["edag_eg"] = render_decimal(Fraction(c.n_edags, c.n_egs))
    obj["cdag_dag"] = render_decimal(Fraction(c.n_cdags, c.n_dags))
    obj["ceg_cdag"] = render_decimal(Fraction(c.n_cegs, c.n_cdags))
    obj["ceg_eg"] = render_decimal(Fraction(c.n_cegs, c.n_egs))
    if args.json:
        Path(args.json).write_text(json.dumps(obj, indent=2) + "\n")
    for key in ("n", "n_dags", "n_cdags", "n_egs", "n_cegs", "n_edags"):
        print(f"{key:>10}: {obj[key]}")
    print(f"{'histogram':>10}: " + ", ".join(f"{s}:{k}" for s, k in obj["class_size_histogram"]))
    for key in ("eg_dag", "edag_eg", "cdag_dag", "ceg_cdag", "ceg_eg"):
        print(f"{key:>10}: {obj[key]}")
    return EXIT_OK


def paper_preset(n: int):
    """(chains, steps) of the reference protocol; chain length doubles at n=31."""
    return PAPER_CHAINS, (2 * PAPER_STEPS if n == 31 else PAPER_STEPS)


def cmd_sample(args) -> int:
    chains, steps = args.chains, args.steps
    if args.paper_preset:
        chains, steps = paper_preset(args.nodes)
    if chains is None or steps is None:
        raise UsageError("--chains and --steps are required unless --paper-preset is given")
    cfg = ChainConfig(n=args.nodes, steps=steps, chains=chains, seed=args.seed,
                      record_graphs=args.emit_graphs)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "software_version": __version__,
        "command": sys.argv,
        "config": {"n": cfg.n, "steps": cfg.steps, "chains": cfg.chains, "seed": cfg.seed,
                   "record_graphs": cfg.record_graphs, "paper_preset": args.paper_preset},
        "chain_seeds": [chain_seed(cfg.seed, i) for i in range(cfg.chains)],
        "started": _now(),
    }
    manifest_path = Path(args.out + ".manifest.json") if args.out else None
    if manifest_path:
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    else:
        print(json.dumps({k: v for k, v in manifest.items() if k != "chain_seeds"}), file=sys.stderr)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in run_ensemble(cfg, threads=args.threads):
            out.write(rec.to_json() + "\n")
    finally:
        if args.out:
            out.close()
    if manifest_path:
        manifest["finished"] = _now()
        manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")
    return EXIT_OK


def read_records(path):
    records = []
    with open(path) as fh:
        for line in fh:
            if line.strip():
                records.append(SampleRecord.from_json(line))
    return records


def cmd_estimate(args) -> int:
    records = read_records(args.input)
    if not records:
        raise UsageError(f"{args.input}: no sample records")
    n = records[0].n
    provider = _provider(args.edag_table)
    report = estimate(records, count_edags(n, provider), count_dags(n), count_cdags(n),
                      strict_connected=args.strict_connected)
    manifest_path = Path(args.input + ".manifest.json")
    meta = {"software_version": __version__, "edag_source": provider.source}
    if manifest_path.exists():
        cfg = json.loads(manifest_path.read_text())["config"]
        meta.update(seed=cfg["seed"], steps=cfg["steps"], chains=cfg["chains"])
    report.metadata = meta
    if args.json:
        Path(args.json).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    row = report.table_row()
    print(f"NODES {n}  sample {report.sample_size}  (EDAGs {report.edag_records}, "
          f"connected {report.connected_records})")
    print(f"  #EGs/#DAGs     {row['eg_dag']}  (se {report.se_eg_dag or 0:.5f})")
    print(f"  #EDAGs/#EGs    {row['edag_eg']}  (se {report.se_r or 0:.5f})")
    print(f"  #CEGs/#CDAGs   {row['ceg_cdag']}")
    print(f"  #CEGs/#EGs     {row['ceg_eg']}  (se {report.se_ceg_eg or 0:.5f})")
    print(f"  #CDAGs/#DAGs   {row['cdag_dag']}  (exact)")
    print(f"  approx #EGs    {float(report.est_n_egs):.6g}")
    print(f"  approx #CEGs   {float(report.est_n_cegs):.6g}")
    print(f"  mean changed fraction {report.mean_changed_fraction:.4f}")
    if n in known_values.EXACT_EG_DAG:
        print(f"  exact #EGs/#DAGs {known_values.EXACT_EG_DAG[n]}, "
              f"#EDAGs/#EGs {known_values.EXACT_EDAG_EG[n]}")
    if report.low_count_warning:
        print("  warning: fewer than 30 records behind some ratio", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    start = time.perf_counter()
    checks = run_suite(args.suite, args.nodes, seed=args.seed)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print(f"{args.suite}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - start:.1f}s)")
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="egcount", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="exact counts and the exact #CDAGs/#DAGs column")
    c.add_argument("--nodes", type=int, required=True)
    c.add_argument("--what", choices=("dags", "cdags", "edags", "table"), default="table")
    c.add_argument("--edag-table")
    c.add_argument("--places", type=int, default=5)
    c.add_argument("--csv", action="store_true")
    c.set_defaults(func=cmd_count)

    o = sub.add_parser("oracle", help="brute-force census (n <= 5)")
    o.add_argument("--nodes", type=int, required=True)
    o.add_argument("--json")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("sample", help="run independent chains, write JSON Lines")
    s.add_argument("--nodes", type=int, required=True)
    s.add_argument("--chains", type=int)
    s.add_argument("--steps", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.add_argument("--emit-graphs", action="store_true")
    s.add_argument("--paper-preset", action="store_true",
                   help=f"{PAPER_CHAINS} chains of {PAPER_STEPS} steps (doubled at n=31)")
    s.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $EG_CENSUS_THREADS or all cores)")
    s.set_defaults(func=cmd_sample)

    e = sub.add_parser("estimate", help="ratio estimates from a sample file")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--edag-table")
    e.add_argument("--json")
    e.add_argument("--strict-connected", action="store_true",
                   help="count only connected EDAGs in R'")
    e.set_defaults(func=cmd_estimate)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--nodes", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "threads", None) is None and args.command == "sample":
        args.threads = default_threads()
    try:
        return args.func(args)
    except (UsageError, CapExceeded, NotCovered, DegenerateSample, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
