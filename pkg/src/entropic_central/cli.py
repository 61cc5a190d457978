"""Command-line interface.

Commands::

    bound    central bound and its components for one angular state
    entropy  entropies of one hydrogenic or oscillator state
    verify   inequality margins over all analytic states up to --max-n
    solve    numeric state of a potential expression, with margins
    figure   tables behind the bound and ratio figures (1, 2 or 3)

Exit codes: 0 success, 2 invalid input, 3 quadrature did not converge,
4 no bound state or an inequality failed.
"""

import argparse
import csv
import io
import math
import os
import sys

from .bounds import central_bound
from .errors import ExpressionError, NoBoundState, NonConvergence
from .hyperangular import AngularState
from .quadrature import QuadConfig
from .states import HYDROGENIC, OSCILLATOR, QuantumStateSpec, entropy_report, sweep

OUTPUT_DIR_ENV = "ENTROPIC_CENTRAL_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3
EXIT_PHYSICS = 4

MARGIN_NAMES = ("bbm", "radial_shannon", "logarithmic", "central")


class PhysicsFailure(Exception):
    """An inequality failed; the table is still written before exiting."""


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def mu_columns(D):
    """Header names of the quantum numbers after ``l``: ``mu2 .. mu{D-2}, m``."""
    if D == 2:
        return []
    return [f"mu{j}" for j in range(2, D - 1)] + ["m"]


def render(header, rows, fmt):
    """CSV (``\\n`` line endings, header first) or an aligned text table."""
    cells = [[_fmt(v) for v in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(cells)
        return buf.getvalue()
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _angular(args):
    D, l = args.dim, args.l
    if D == 2:
        if args.mu:
            raise argparse.ArgumentTypeError("D=2 has no quantum numbers besides l")
        return AngularState(2, (l,))
    if args.mu is not None:
        tail = tuple(args.mu)
    else:
        m = args.m
        tail = (abs(m),) * (D - 3) + (m,)
    return AngularState(D, (l, *tail))


def _quad(args):
    return QuadConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol)


def _bound_row(state, cfg):
    b = central_bound(state, cfg)
    return [state.D, state.mu[0], *state.mu[1:], b.radial_shannon, b.logarithmic,
            b.angular_entropy, b.central, b.bbm]


def cmd_bound(args):
    state = _angular(args)
    header = ["D", "l", *mu_columns(state.D), "C_prime", "log_bound", "S_Y", "B", "BBM"]
    return header, [_bound_row(state, _quad(args))]


def entropy_header(D):
    return ["family", "D", "n", "l", *mu_columns(D), "lambda", "S_w", "S_wt", "ln_r", "ln_p",
            "S_Y", "S_rho", "S_gamma", "sum", "B", "ratio"]


def entropy_row(report):
    a = report.angular
    return [report.family, a.D, report.n, a.mu[0], *a.mu[1:], float(report.lam), report.S_w,
            report.S_wt, report.ln_r, report.ln_p, report.S_Y, report.S_rho, report.S_gamma,
            report.sum, report.bound.central, report.ratio]


def _spec(args):
    state = _angular(args)
    return QuantumStateSpec(args.family, args.n, state, args.lam)


def cmd_entropy(args):
    spec = _spec(args)
    report = entropy_report(spec, _quad(args))
    return entropy_header(spec.D), [entropy_row(report)]


def angular_states(D, l):
    """Every admissible ``(l, mu_2, ..., m)`` chain for one ``l``, lexicographic."""
    if D == 2:
        return [AngularState(2, (l,))] if l == 0 else [AngularState(2, (-l,)), AngularState(2, (l,))]
    chains = [(l,)]
    for _ in range(D - 3):
        chains = [c + (k,) for c in chains for k in range(c[-1] + 1)]
    out = [c + (m,) for c in chains for m in range(-c[-1], c[-1] + 1)]
    return [AngularState(D, c) for c in sorted(out)]


def analytic_specs(family, D, max_n, max_l=None, m_nonnegative=False, lam=1.0):
    specs = []
    first = 1 if family == HYDROGENIC else 0
    for n in range(first, max_n + 1):
        top = n - 1 if family == HYDROGENIC else max_l
        for l in range(0, top + 1):
            for state in angular_states(D, l):
                if m_nonnegative and state.mu[-1] < 0:
                    continue
                specs.append(QuantumStateSpec(family, n, state, lam))
    return specs


def cmd_verify(args):
    max_l = args.max_l if args.max_l is not None else args.max_n
    specs = analytic_specs(args.family, args.dim, args.max_n, max_l, lam=args.lam)
    rows_out = sweep(specs, _quad(args), args.workers)
    header = entropy_header(args.dim) + [f"margin_{k}" for k in MARGIN_NAMES] + ["pass"]
    rows = []
    failed = False
    for row in rows_out:
        if not row.ok:
            if row.error.startswith("NonConvergence"):
                raise NonConvergence(f"{row.spec}: {row.error}")
            raise ValueError(row.error)
        margins = row.report.margins()
        ok = all(v >= -args.tolerance for v in margins.values())
        failed |= not ok
        rows.append(entropy_row(row.report) + [margins[k] for k in MARGIN_NAMES] + [ok])
    if failed:
        raise PhysicsFailure((header, rows))
    return header, rows


def cmd_solve(args):
    from .radial import SolverConfig, parse_potential, solve_radial, verify_state

    pot = parse_potential(args.potential, args.dim, args.r_max)
    state = _angular(args)
    solver_cfg = SolverConfig(points=args.points)
    numeric = solve_radial(pot, state.l, args.nr, solver_cfg)
    result = verify_state(numeric, state, _quad(args), tolerance=args.tolerance)
    header = entropy_header(args.dim) + ["energy"] + [f"margin_{k}" for k in MARGIN_NAMES] + ["pass"]
    row = entropy_row(result.report) + [result.energy] + [result.margins[k] for k in MARGIN_NAMES]
    row.append(result.all_passed)
    if not result.all_passed:
        raise PhysicsFailure((header, [row]))
    return header, [row]


def figure_table(fig, cfg, workers=None):
    """Rows of figure ``fig`` with ``m >= 0``, sorted by quantum numbers."""
    if fig == 1:
        rows = []
        for l in range(0, 6):
            for m in range(0, l + 1):
                b = central_bound(AngularState(3, (l, m)), cfg)
                rows.append([l, m, b.central, b.bbm])
        return ["l", "m", "B", "BBM"], rows
    if fig == 2:
        specs = analytic_specs(HYDROGENIC, 3, 4, m_nonnegative=True)
        name = "Xi"
    elif fig == 3:
        specs = analytic_specs(OSCILLATOR, 3, 3, 3, m_nonnegative=True)
        name = "Phi"
    else:
        raise ValueError(f"unknown figure id {fig}; expected 1, 2 or 3")
    rows = []
    for row in sweep(specs, cfg, workers):
        if not row.ok:
            raise NonConvergence(row.error)
        s = row.spec
        rows.append([s.n, s.l, s.angular.m, row.report.ratio])
    return ["n", "l", "m", name], rows


def cmd_figure(args):
    return figure_table(args.id, _quad(args), args.workers)


def _positive(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=_positive, default=1e-10, help="relative quadrature tolerance")
    common.add_argument("--abs-tol", type=_positive, default=1e-12, help="absolute quadrature tolerance")
    common.add_argument("--output", "-o", help="write the table here instead of stdout")
    common.add_argument("--format", choices=("csv", "pretty"), default="csv")

    angular = argparse.ArgumentParser(add_help=False)
    angular.add_argument("--dim", "-D", type=int, default=3, help="spatial dimension D >= 2")
    angular.add_argument("--l", type=int, default=0, help="grand angular momentum l")
    angular.add_argument("--m", type=int, default=0,
                         help="magnetic number; intermediate mu_j default to |m|")
    angular.add_argument("--mu", type=int, nargs="+",
                         help="all quantum numbers after l: mu_2 ... mu_{D-2} m")

    parser = argparse.ArgumentParser(
        prog="entropic-central",
        description="Entropic uncertainty bounds and entropies for central potentials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common, angular], help="central bound of one angular state")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("entropy", parents=[common, angular], help="entropies of one analytic state")
    p.add_argument("--family", choices=(HYDROGENIC, OSCILLATOR), default=HYDROGENIC)
    p.add_argument("--n", type=int, default=1, help="principal (hydrogenic) or radial (oscillator) number")
    p.add_argument("--lam", type=_positive, default=1.0, help="oscillator frequency")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("verify", parents=[common], help="inequality margins over analytic states")
    p.add_argument("--dim", "-D", type=int, default=3)
    p.add_argument("--family", choices=(HYDROGENIC, OSCILLATOR), default=HYDROGENIC)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-l", type=int, help="largest l for oscillator states (default --max-n)")
    p.add_argument("--lam", type=_positive, default=1.0)
    p.add_argument("--tolerance", type=float, default=1e-7, help="allowed negative margin")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common, angular], help="numeric state of a potential")
    p.add_argument("--potential", required=True, help='expression in r, e.g. "-1/r"')
    p.add_argument("--nr", type=int, default=0, help="number of radial nodes")
    p.add_argument("--r-max", type=_positive, default=40.0, help="initial radial box size")
    p.add_argument("--points", type=int, default=4001, help="radial grid points")
    p.add_argument("--tolerance", type=float, default=1e-6, help="allowed negative margin")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("figure", parents=[common], help="figure tables as CSV")
    p.add_argument("id", type=int, choices=(1, 2, 3))
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_figure)
    return parser


def _destination(args):
    if args.output:
        return args.output
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory and args.command == "figure":
        return os.path.join(directory, f"fig{args.id}.csv")
    return None


def _emit(args, header, rows):
    text = render(header, rows, args.format)
    path = _destination(args)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def _glue_expression(argv):
    # "--potential -1/r" would read -1/r as an option; bind the value explicitly.
    out = []
    it = iter(argv)
    for token in it:
        if token == "--potential":
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_expression(argv))
    try:
        header, rows = args.func(args)
    except PhysicsFailure as exc:
        header, rows = exc.args[0]
        _emit(args, header, rows)
        print("error: an entropic inequality failed; see the margin columns", file=sys.stderr)
        return EXIT_PHYSICS
    except NoBoundState as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ExpressionError as exc:
        print(f"error: potential expression: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _emit(args, header, rows)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
