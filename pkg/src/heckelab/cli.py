"""Command-line entry point.

Subcommands orchestrate the library modules and emit deterministic CSV or
JSON: identical configuration and seed always produce byte-identical bodies
(headers carry a timestamp only when --timestamps is passed).  Exit codes:
0 success, 1 argument error, 2 computation error.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import lvalue as lvalue_mod
from . import mult as mult_mod
from . import smooth as smooth_mod
from . import walk as walk_mod
from .cache import cached_eigensystem, cached_graph, default_cache_dir, fmt_float, spectra_csv_lines
from .errors import HeckelabError
from .modpoly import SUPPORTED_LEVELS, regenerate_data
from .ntutils import level_ladder
from .plancherel import UPoly
from .verify import ReportRow, eq_one_check, thm1_check, thm2_check

LADDER_DEFAULT_BOUND = 2000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def _emit(lines: list[str], out: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config_header(args) -> str:
    cfg = {
        k: v
        for k, v in vars(args).items()
        if k not in ("out", "timestamps") and v is not None
    }
    return "# config: " + json.dumps(cfg, sort_keys=True, default=str)


def _csv(args, header: str, rows: list[list]) -> list[str]:
    lines = [_config_header(args)]
    if args.timestamps:
        lines.append(f"# generated: {datetime.datetime.now().isoformat()}")
    lines.append(header)
    lines.extend(",".join(_fmt_value(v) for v in row) for row in rows)
    return lines


def _report_rows(rows: list[ReportRow]) -> list[list]:
    out = []
    for r in rows:
        f = r.csv_fields()
        out.append([f["p"], f["m"], f["n"], f["lhs"], f["main"], f["residual"], f["scale"], f["ratio"]])
    return out


def _levels(args) -> list[int]:
    if args.ladder is not None:
        return level_ladder(args.ladder)
    if args.p is None:
        raise ValueError("either --p or --ladder is required")
    return [args.p]


def _add_common(sp, level: bool = True):
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cache-dir", type=Path, default=None)
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--timestamps", action="store_true")
    if level:
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--ladder", type=int, nargs="?", const=LADDER_DEFAULT_BOUND, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="heckelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("graph", help="build an isogeny graph, write JSON")
    _add_common(sp)
    sp.add_argument("--ell", type=int, required=True)

    sp = sub.add_parser("spectra", help="Hecke eigensystem table")
    _add_common(sp)
    sp.add_argument("--primes", type=str, default="2,3,5,7,11,13")

    sp = sub.add_parser("eq1", help="trace-average residual report")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("thm1", help="second-moment average report")
    _add_common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("thm2", help="Plancherel-convergence report for U_t")
    _add_common(sp)
    sp.add_argument("--primes", type=str, default="2")
    sp.add_argument("--ut", type=str, default="1", help="comma list of U-degrees per prime")
    sp.add_argument("--eta", type=float, default=0.1)

    sp = sub.add_parser("prop31", help="inner-product table: closed form vs quadrature")
    _add_common(sp, level=False)
    sp.add_argument("--pmax", type=int, default=11)
    sp.add_argument("--degmax", type=int, default=12)
    sp.add_argument("--nodes", type=int, default=256)

    sp = sub.add_parser("walk", help="non-backtracking walk variance profile")
    _add_common(sp)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--tmax", type=int, default=8)

    sp = sub.add_parser("smooth", help="smooth-number counts and HT estimate")
    _add_common(sp, level=False)
    sp.add_argument("--y", type=int, required=True)
    sp.add_argument("--X", type=int, required=True)
    sp.add_argument("--psi", action="store_true", help="print the exact count only")

    sp = sub.add_parser("mult", help="tuple multiplicities / degree stats / bounds")
    _add_common(sp)
    sp.add_argument("--y", type=int, default=13)
    sp.add_argument("--bound", choices=("thm3", "thm4", "thm5"), default=None)
    sp.add_argument("--beta", type=float, default=0.25)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--T", type=int, default=1)

    sp = sub.add_parser("lvalue", help="truncated sym^2 L-values and weights")
    _add_common(sp)
    sp.add_argument("--x", type=int, default=169)

    sp = sub.add_parser("regen-modpoly", help="re-derive modular polynomial data files")
    sp.add_argument("--levels", type=str, default=",".join(str(x) for x in SUPPORTED_LEVELS))
    sp.add_argument("--out-dir", type=Path, default=Path("modpoly-data"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--timestamps", action="store_true")

    return parser


def _cmd_graph(args) -> list[str]:
    graph = cached_graph(args.p, args.ell, args.seed, args.cache_dir)
    payload = {
        "config": {"command": "graph", "p": args.p, "ell": args.ell, "seed": args.seed},
        "p": graph.p,
        "ell": graph.ell,
        "vertices": [str(v) for v in graph.vertices],
        "adjacency": graph.adjacency.tolist(),
    }
    return [json.dumps(payload, sort_keys=True)]


def _cmd_spectra(args) -> list[str]:
    primes = tuple(int(q) for q in args.primes.split(","))
    lines: list[str] = []
    for p in _levels(args):
        es = cached_eigensystem(p, primes, args.seed, args.cache_dir)
        lines.extend(spectra_csv_lines(es))
    return lines


def _verify_lines(args, maker) -> list[str]:
    rows = []
    for p in _levels(args):
        es = cached_eigensystem(p, seed=args.seed, cache_dir=args.cache_dir)
        if es.s == 0:  # nothing to average at p = 13
            continue
        rows.append(maker(es))
    if args.format == "json":
        payload = [dict(r.csv_fields(), flags=r.flags) for r in rows]
        return [_config_header(args), json.dumps(payload, sort_keys=True, default=str)]
    return _csv(args, "p,m,n,lhs,main,residual,scale,ratio", _report_rows(rows))


def _cmd_eq1(args) -> list[str]:
    return _verify_lines(args, lambda es: eq_one_check(es, args.n))


def _cmd_thm1(args) -> list[str]:
    return _verify_lines(args, lambda es: thm1_check(es, args.m, args.n))


def _cmd_thm2(args) -> list[str]:
    primes = tuple(int(q) for q in args.primes.split(","))
    degrees = tuple(int(t) for t in args.ut.split(","))
    if len(degrees) != len(primes):
        raise ValueError("--ut must list one U-degree per prime")
    poly = UPoly({degrees: 1.0})
    return _verify_lines(args, lambda es: thm2_check(es, primes, poly, eta=args.eta))


def _cmd_prop31(args) -> list[str]:
    from .ntutils import primes_upto
    from .plancherel import inner_UU_closed, inner_UU_quad

    rows = []
    for p in primes_upto(args.pmax):
        for m in range(args.degmax + 1):
            for n in range(args.degmax + 1):
                closed = inner_UU_closed(m, n, p)
                quad = inner_UU_quad(m, n, p, nodes=args.nodes)
                rows.append([m, n, p, closed, quad, abs(quad - float(closed))])
    return _csv(args, "m,n,p,closed,quad,abs_err", rows)


def _cmd_walk(args) -> list[str]:
    rows = []
    for p in _levels(args):
        es = cached_eigensystem(p, seed=args.seed, cache_dir=args.cache_dir, with_graphs=True)
        walks = walk_mod.nb_counts(es.graphs[args.ell], args.tmax)
        for t in range(1, args.tmax + 1):
            w2s = walk_mod.variance_spectral(es, args.ell, t)
            w2c = walk_mod.variance_combinatorial(walks, t)
            nt = walk_mod.walk_count_total(args.ell, t)
            rows.append([p, args.ell, t, w2s, w2c, nt, w2s / nt])
    return _csv(args, "p,ell,t,W2_spectral,W2_combinatorial,N_t,ratio", rows)


def _cmd_smooth(args) -> list[str]:
    psi = smooth_mod.psi_exact(args.y, args.X)
    if args.psi:
        return [str(psi)]
    asym = smooth_mod.ht_approx(args.X, args.y, "asymptotic")
    sad = smooth_mod.ht_approx(args.X, args.y, "saddle")
    log_ratio = sad.log_psi - math.log(psi) if psi > 0 else float("nan")
    rows = [[args.X, args.y, psi, asym.alpha, sad.alpha, sad.psi_estimate, log_ratio]]
    return _csv(args, "X,y,psi_exact,alpha_asym,alpha_saddle,psi_ht,log_ratio", rows)


def _key_hash(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:12]


def _cmd_mult(args) -> list[str]:
    if args.bound:
        params = {"N": args.p or 10**6, "beta": args.beta, "d": args.d, "T": args.T}
        report = mult_mod.bound_eval(args.bound, params)
        body = dict(vars(report))
        return [_config_header(args), json.dumps(body, sort_keys=True, default=str)]
    rows = []
    for p in _levels(args):
        es = cached_eigensystem(p, seed=args.seed, cache_dir=args.cache_dir, with_graphs=True)
        partition = mult_mod.degree_partition(es)
        counts = mult_mod.multiplicities(es, args.y)
        degree_of_key: dict = {}
        if partition.conclusive:
            keys = mult_mod.tuple_keys(es, args.y)
            for k, d in zip(keys, partition.degree_of_form):
                degree_of_key[k] = d
        for key in sorted(counts, key=repr):
            rows.append([p, args.y, _key_hash(key), counts[key], degree_of_key.get(key, "")])
    return _csv(args, "level,y,tuple_key_hash,count,degree", rows)


def _cmd_lvalue(args) -> list[str]:
    rows = []
    for p in _levels(args):
        es = cached_eigensystem(p, seed=args.seed, cache_dir=args.cache_dir)
        if es.s == 0:
            continue
        weights = lvalue_mod.harmonic_weights(es, args.x)
        for f in es.forms:
            rows.append([p, f.id, args.x, lvalue_mod.l_sym2_smoothed(f, args.x), weights[f.id]])
    return _csv(args, "level,form_id,x,L_sym2,weight", rows)


def _cmd_regen(args) -> list[str]:
    levels = tuple(int(x) for x in args.levels.split(","))
    paths = regenerate_data(levels, args.out_dir)
    return [str(p) for p in paths]


_COMMANDS = {
    "graph": _cmd_graph,
    "spectra": _cmd_spectra,
    "eq1": _cmd_eq1,
    "thm1": _cmd_thm1,
    "thm2": _cmd_thm2,
    "prop31": _cmd_prop31,
    "walk": _cmd_walk,
    "smooth": _cmd_smooth,
    "mult": _cmd_mult,
    "lvalue": _cmd_lvalue,
    "regen-modpoly": _cmd_regen,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "cache_dir", None) is None and hasattr(args, "cache_dir"):
        args.cache_dir = default_cache_dir()
    try:
        lines = _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except HeckelabError as exc:
        sys.stderr.write(f"computation error: {exc}\n")
        return 2
    _emit(lines, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
