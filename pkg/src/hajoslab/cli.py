"""``hajoslab`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

from .coloring import chromatic_number
from .complex import FIELDS, betti_numbers, neighborhood_complex
from .experiments import run_batch, run_gnp
from .generators import CraConfig, GenerationError, UraConfig, cra, ura
from .graph import CapacityError, GraphError
from .graphio import read_graph, to_graph6
from .recipe import RecipeError, load_recipe
from .verify import KNOWN, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

CRA_GRID_K = (3, 4, 5, 6)
CRA_GRID_P = (0.02, 0.1, 0.5)
URA_GRID_K = (3, 4, 5, 6)


class UsageError(Exception):
    pass


def _seed(args) -> int:
    # record a fresh seed when none is given so the run stays replayable
    return args.seed if args.seed is not None else secrets.randbits(32)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args):
    given = [x for x in (args.input, args.graph6, args.recipe) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of INPUT, --graph6 or --recipe")
    try:
        if args.recipe is not None:
            return load_recipe(_read_text(args.recipe))
        if args.graph6 is not None:
            return read_graph(args.graph6)
        return read_graph(_read_text(args.input))
    except (RecipeError, GraphError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_construct(args) -> int:
    try:
        g = load_recipe(_read_text(args.recipe))
    except RecipeError as exc:
        raise UsageError(f"{args.recipe}: {exc}") from None
    print(to_graph6(g.compacted()))
    stats = {"order": g.order, "size": g.size}
    if args.chromatic:
        stats["chromatic_number"] = chromatic_number(g)
    print(json.dumps(stats), file=sys.stderr)
    return EXIT_OK


def cmd_betti(args) -> int:
    g = _load_graph(args)
    b = betti_numbers(neighborhood_complex(g), args.max_dim, args.field, cap=args.cap)
    print(b.to_json())
    return EXIT_OK


def _print_summary(summary, out_dir) -> None:
    d = summary.to_json_dict()
    print(json.dumps({k: d[k] for k in ("count", "skipped", "zero_betti_fraction",
                                        "zero_betti_fraction_float")} | {"out_dir": str(out_dir)}))


def cmd_cra(args) -> int:
    cfg = CraConfig(args.k, args.p, args.t, _seed(args), args.round_cap)
    _, summary = run_batch(cra(cfg), args.field, args.out_dir, args.workers)
    _print_summary(summary, args.out_dir)
    return EXIT_OK


def cmd_ura(args) -> int:
    cfg = UraConfig(args.k, args.t, args.m, args.n, _seed(args), args.retry_cap,
                    density=args.density)
    _, summary = run_batch(ura(cfg), args.field, args.out_dir, args.workers)
    _print_summary(summary, args.out_dir)
    return EXIT_OK


def cmd_gnp(args) -> int:
    _, summary = run_gnp(args.n, args.p, args.samples, _seed(args), args.field, args.out_dir, args.workers)
    _print_summary(summary, args.out_dir)
    return EXIT_OK


def _write_table(out_dir: Path, header: list[str], rows: list[list]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "table.csv", "w") as fh:
        fh.write(",".join(header) + "\n")
        fh.writelines(",".join(str(x) for x in r) + "\n" for r in rows)


def cmd_cra_grid(args) -> int:
    seed, out = _seed(args), Path(args.out_dir)
    rows = []
    for k in args.k:
        for p in args.p:
            _, s = run_batch(cra(CraConfig(k, p, args.t, seed)), args.field, out / f"k{k}_p{p}", args.workers)
            f = s.zero_betti_fraction
            rows.append([k, p, s.count, f"{f.numerator}/{f.denominator}", f"{float(f):.4f}"])
            print(f"k={k} p={p} zero_betti_fraction={float(f):.4f}")
    _write_table(out, ["k", "p", "count", "zero_betti_fraction", "zero_betti_fraction_float"], rows)
    return EXIT_OK


def cmd_ura_grid(args) -> int:
    seed, out = _seed(args), Path(args.out_dir)
    rows = []
    for k in args.k:
        cfg = UraConfig(k, args.t, args.m, args.n, seed, density=args.density)
        _, s = run_batch(ura(cfg), args.field, out / f"k{k}", args.workers)
        f = s.zero_betti_fraction
        rows.append([k, s.count, f"{f.numerator}/{f.denominator}", f"{float(f):.4f}"])
        print(f"k={k} zero_betti_fraction={float(f):.4f}")
    _write_table(out, ["k", "count", "zero_betti_fraction", "zero_betti_fraction_float"], rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in KNOWN:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(KNOWN)}")
    rep = run_suite(args.suite, args.trials, _seed(args), args.max_order)
    print(json.dumps(rep.to_json_dict()) if args.json else rep.line())
    if not args.json:
        for f in rep.failures:
            print("  " + json.dumps(f))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _add_experiment(p: argparse.ArgumentParser, out_required: bool = True) -> None:
    p.add_argument("--seed", type=int, help="master seed (a random one is recorded if omitted)")
    p.add_argument("--out-dir", required=out_required)
    p.add_argument("--field", choices=FIELDS, default="gf2")
    p.add_argument("--workers", type=int, help="worker processes (default: HAJOSLAB_THREADS or CPU count)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hajoslab", description="Hajós-type constructions and neighborhood complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="replay a JSON recipe and print graph6")
    p.add_argument("--recipe", required=True)
    p.add_argument("--chromatic", action="store_true", help="also report the chromatic number")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("betti", help="reduced Betti numbers of N(G)")
    p.add_argument("input", nargs="?", help="file with graph6 or JSON ('-' for stdin)")
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--recipe", help="recipe file")
    p.add_argument("--max-dim", type=int, default=1)
    p.add_argument("--field", choices=FIELDS, default="gf2")
    p.add_argument("--cap", type=int, default=5_000_000, help="face-count bound")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("cra", help="Hajós-step random sampler")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--round-cap", type=int)
    _add_experiment(p)
    p.set_defaults(func=cmd_cra)

    p = sub.add_parser("ura", help="Urquhart-step random sampler")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--retry-cap", type=int, default=50)
    p.add_argument("--density", type=float, default=0.5)
    _add_experiment(p)
    p.set_defaults(func=cmd_ura)

    p = sub.add_parser("gnp", help="G(n, p) baseline")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    _add_experiment(p)
    p.set_defaults(func=cmd_gnp)

    p = sub.add_parser("cra-grid", help="CRA grid over k and p")
    p.add_argument("--k", type=int, nargs="+", default=list(CRA_GRID_K))
    p.add_argument("--p", type=float, nargs="+", default=list(CRA_GRID_P))
    p.add_argument("--t", type=int, default=500)
    _add_experiment(p)
    p.set_defaults(func=cmd_cra_grid)

    p = sub.add_parser("ura-grid", help="URA grid over k")
    p.add_argument("--k", type=int, nargs="+", default=list(URA_GRID_K))
    p.add_argument("--m", type=int, default=12)
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--t", type=int, default=200)
    p.add_argument("--density", type=float, default=0.5)
    _add_experiment(p)
    p.set_defaults(func=cmd_ura_grid)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", help=f"one of: {', '.join(KNOWN)}")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-order", type=int, default=7, help="largest order for the exhaustive suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"hajoslab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, GenerationError) as exc:
        print(f"hajoslab {args.command}: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
