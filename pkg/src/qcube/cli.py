"""Command-line front end.

Exit codes: 0 success, 1 invalid coloring or infeasible request, 2 usage
or input-format error.
"""
from __future__ import annotations

import argparse
import sys

from . import bounds as bd
from . import codes, coloring as col, exact
from .cube import Mode, format_vertex, unrank
from .field import field_from_q, field_new, prime_power


class UsageError(Exception):
    pass


def _field(args):
    if args.q is not None:
        try:
            p, m = prime_power(args.q)
        except ValueError as exc:
            raise UsageError(str(exc))
        if args.p is not None and args.p != p or args.m is not None and args.m != m:
            raise UsageError(f"--q {args.q} disagrees with --p/--m")
        return field_new(p, m)
    if args.p is None:
        raise UsageError("give --q or --p [--m]")
    try:
        return field_new(args.p, args.m or 1)
    except ValueError as exc:
        raise UsageError(str(exc))


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")


def _spec(args, mode_default="atmost"):
    _need(args, "n", "d")
    try:
        return col.ProblemSpec(_field(args), args.n, args.d, Mode(args.mode or mode_default))
    except ValueError as exc:
        raise UsageError(str(exc))


def _add_common(p):
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--mode", choices=[m.value for m in Mode])


def _vertices(vs, q):
    return " ".join(format_vertex(v, q) for v in vs)


def cmd_bounds(args, out):
    if args.grid:
        return _bounds_grid(args, out)
    spec = _spec(args)
    rep = bd.bounds_report(spec, witness=args.witness, exact=args.exact,
                           a_value=args.a_value, max_nodes=args.max_nodes)
    for e in rep.entries:
        line = f"{e.direction}\t{e.value}\t{e.source}"
        if args.witness and e.witness is not None:
            line += "\t" + _vertices(e.witness, spec.q)
        out.write(line + "\n")
    lo, hi = rep.best_lower(), rep.best_upper()
    out.write(f"RANGE\t{lo.value}\t{hi.value}\n")
    if not rep.consistent():
        print("error: inconsistent bounds report", file=sys.stderr)
        return 1
    return 0


def grid_rows(qmax, nmax, modes):
    rows = []
    for q in range(2, qmax + 1):
        try:
            f = field_from_q(q)
        except ValueError:
            continue
        for n in range(1, nmax + 1):
            for mode in modes:
                for d in range(1, n + 1):
                    rep = bd.bounds_report(col.ProblemSpec(f, n, d, mode))
                    lo, hi = rep.best_lower(), rep.best_upper()
                    rows.append(dict(q=q, n=n, d=d, mode=mode.value, lower=lo.value,
                                     lower_source=lo.source, upper=hi.value,
                                     upper_source=hi.source, consistent=rep.consistent()))
    return rows


def _bounds_grid(args, out):
    qmax, nmax = args.grid
    modes = [Mode(args.mode)] if args.mode else [Mode.ATMOST, Mode.EXACTLY]
    rows = grid_rows(qmax, nmax, modes)
    cols = ["q", "n", "d", "mode", "lower", "lower_source", "upper", "upper_source"]
    out.write("\t".join(cols) + "\n")
    for r in rows:
        out.write("\t".join(str(r[c]) for c in cols) + "\n")
    if args.plot:
        from .plotting import plot_bound_grid
        plot_bound_grid(rows, args.plot, d=args.d or 2)
    return 0 if all(r["consistent"] for r in rows) else 1


def _build_coloring(args):
    f = _field(args)
    method = args.method
    if method in ("hamming", "simplex"):
        _need(args, "r")
        code = (codes.hamming_code if method == "hamming" else codes.simplex_code)(f, args.r)
        if args.n is not None and args.n != code.n:
            raise UsageError(f"--n {args.n} does not match code length {code.n}")
        d = 2 if method == "hamming" else f.q ** (args.r - 1) - 1
        spec = col.ProblemSpec(f, code.n, args.d or d, Mode(args.mode or "atmost"))
        return col.coset_coloring(code, spec)
    _need(args, "n")
    n = args.n
    if method == "gv":
        _need(args, "d")
        spec = col.ProblemSpec(f, n, args.d, Mode(args.mode or "atmost"))
        return col.coset_coloring(codes.gv_greedy(f, n, args.d), spec)
    if method == "forbidden":
        _need(args, "d")
        spec = col.ProblemSpec(f, n, args.d, Mode(args.mode or "exactly"))
        return col.coset_coloring(codes.forbidden_greedy(f, n, args.d), spec)
    if method == "m-matrix":
        base = col.m_matrix_coloring(f, n)
        default = (2, "atmost")
    elif method == "exact-d1":
        base = col.exact_d1_coloring(f, n)
        default = (1, "exactly")
    else:
        base = col.slab_coloring(f, n)
        default = (n, "exactly")
    spec = col.ProblemSpec(f, n, args.d or default[0], Mode(args.mode or default[1]))
    return col.Coloring(spec, base.colors, compact=False)


def cmd_color(args, out):
    try:
        c = _build_coloring(args)
    except codes.ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.out:
        try:
            with open(args.out, "w") as fh:
                col.write_coloring(c, fh)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}")
        out.write(f"colors\t{c.palette_size}\n")
    else:
        col.write_coloring(c, out)
    return 0


def cmd_verify(args, out):
    try:
        with open(args.infile) as fh:
            c = col.read_coloring(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.infile}: {exc}")
    except col.ColoringFormatError as exc:
        raise UsageError(f"{args.infile}: {exc}")
    try:
        res = col.verify_coloring(c, budget=args.budget, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc))
    if res.valid:
        out.write(f"VALID colors={c.palette_size}\n")
        return 0
    a, b, dist = res.violation
    q, n = c.spec.q, c.spec.n
    out.write(f"INVALID colors={c.palette_size}\n")
    out.write(f"VIOLATION\t{format_vertex(unrank(a, q, n), q)}\t{format_vertex(unrank(b, q, n), q)}\t{dist}\n")
    return 1


def cmd_exact(args, out):
    budget = exact.SearchBudget(args.max_nodes)
    try:
        if args.kind == "codesize":
            _need(args, "n", "d")
            f = _field(args)
            res = exact.max_code_size(f, args.n, args.d, budget)
            q = f.q
        else:
            spec = _spec(args)
            q = spec.q
            if args.kind == "clique":
                res = exact.max_clique(spec, budget)
            else:
                res = exact.chromatic_number(spec, budget, max_vertices=args.max_vertices)
    except ValueError as exc:
        raise UsageError(str(exc))
    if res.exact:
        out.write(f"EXACT {res.value}\n")
    else:
        out.write(f"BRACKET {res.lower} {res.upper}\n")
    if args.witness and res.witness:
        for v in res.witness:
            out.write(format_vertex(v, q) + "\n")
    return 0


def cmd_code_info(args, out):
    f = _field(args)
    try:
        if args.method in ("hamming", "simplex"):
            _need(args, "r")
            code = (codes.hamming_code if args.method == "hamming" else codes.simplex_code)(f, args.r)
        else:
            _need(args, "n", "d")
            code = (codes.gv_greedy if args.method == "gv" else codes.forbidden_greedy)(f, args.n, args.d)
    except codes.ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(str(exc))
    out.write(f"n\t{code.n}\n")
    out.write(f"k\t{code.k}\n")
    out.write(f"min_distance\t{code.min_distance()}\n")
    out.write("spectrum\t" + "\t".join(str(x) for x in code.weight_spectrum()) + "\n")
    for name, mat in (("generator", code.generator), ("parity", code.parity)):
        out.write(f"{name}\t{mat.shape[0]}\t{mat.shape[1]}\n")
        for row in mat:
            out.write(" ".join(str(x) for x in row) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="qcube", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="evaluate lower and upper bounds")
    _add_common(p)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--exact", action="store_true", help="add clique and code-size searches")
    p.add_argument("--a-value", type=int, help="known A_q(n, >= d+1) for the partition bound")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--grid", type=int, nargs=2, metavar=("QMAX", "NMAX"))
    p.add_argument("--plot", metavar="FILE", help="with --grid, render a figure")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("color", help="build a coloring")
    _add_common(p)
    p.add_argument("--method", required=True,
                   choices=["hamming", "simplex", "gv", "forbidden", "m-matrix", "exact-d1", "slab"])
    p.add_argument("--r", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("verify", help="verify a coloring file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=col.VERIFY_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact search at desk scale")
    p.add_argument("kind", choices=["chromatic", "clique", "codesize"])
    _add_common(p)
    p.add_argument("--max-nodes", type=int, default=exact.DEFAULT_NODES)
    p.add_argument("--max-vertices", type=int, default=exact.CHROMATIC_CAP)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("code-info", help="parameters and spectrum of a code")
    _add_common(p)
    p.add_argument("--method", required=True, choices=["hamming", "simplex", "gv", "forbidden"])
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_code_info)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
