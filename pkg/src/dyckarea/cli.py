"""Deterministic command-line surface.

Subcommands: eval, scan, enumerate, scaling, partition, validate.
Exit codes: 0 success, 1 verification mismatch, 2 domain error,
3 non-convergence, 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .asymptotics import ScalingQuery, g_scaling, g_uniform, q_m_asymptotic
from .datasets import (
    scan_g_vs_t,
    scan_partition,
    scan_phase_boundary,
    scan_scaling_fn,
    write_dataset,
)
from .enumeration import (
    build_area_polynomials,
    brute_force_area_polynomial,
    eval_G_truncated,
    partition_series,
    table_to_csv,
    table_to_json,
)
from .errors import DomainError, DyckAreaError, NonConvergenceError
from .qseries import (
    EvalSettings,
    contour_h,
    euler_maclaurin_check,
    g_cfrac,
    g_ratio,
    h_series,
    t_infinity,
)
from .special_functions import scaling_F, scaling_F_series

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_DOMAIN = 2
EXIT_NONCONVERGENCE = 3
EXIT_USAGE = 64
EXIT_IO = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class _UsageError(Exception):
    """Flag conflicts detected after parsing; maps to exit code 64."""


def _resolve_q(args) -> float:
    if getattr(args, "q", None) is not None and getattr(args, "eps", None) is not None:
        raise _UsageError("--q and --eps are mutually exclusive")
    if getattr(args, "eps", None) is not None:
        return math.exp(-args.eps)
    if getattr(args, "q", None) is not None:
        return args.q
    raise _UsageError("one of --q or --eps is required")


def _settings(args, q: float) -> EvalSettings:
    return EvalSettings(
        q=q,
        t=getattr(args, "t", None),
        tol=getattr(args, "tol", None) or 1e-12,
        precision_bits=getattr(args, "precision_bits", None),
    )


def _cmd_eval(args) -> int:
    q = _resolve_q(args)
    t = args.t
    method = args.method
    if method == "series":
        # the truncated double series also accepts the q = 1 Catalan limit
        value = eval_G_truncated(t, q, args.n_max)
        provenance = f"method=series truncation_n={args.n_max}"
        print(f"{value!r}")
        print(f"# {provenance}")
        return EXIT_OK
    settings = _settings(args, q)
    if method == "ratio":
        res = g_ratio(t, settings, full_output=True)
        value = res.value
        provenance = (
            f"method=ratio terms={res.terms_used} "
            f"cancellation_bits={res.bits_lost:.1f} precision_bits={settings.bits_for(t)}"
        )
    elif method == "cfrac":
        value, depth = g_cfrac(t, settings, full_output=True)
        provenance = f"method=cfrac depth={depth} tol={settings.tol:g}"
    elif method == "uniform":
        value = g_uniform(t, q)
        provenance = f"method=uniform eps={-math.log(q):g}"
    elif method == "scaling":
        query = ScalingQuery.from_t_q(t, q)
        value = g_scaling(query)
        provenance = f"method=scaling s={query.s:.6g} eps={query.epsilon:g}"
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown method {method!r}")
    print(f"{value!r}")
    print(f"# {provenance}")
    return EXIT_OK


def _cmd_scan(args) -> int:
    kind = args.kind
    if kind == "g_vs_t":
        q = _resolve_q(args)
        ds = scan_g_vs_t(q, args.t_min, args.t_max, args.steps,
                         tol=args.tol or 1e-12, stamp=args.stamp)
    elif kind == "phase_boundary":
        ds = scan_phase_boundary(args.q_min, args.q_max, args.steps,
                                 tol=args.tol or 1e-10, stamp=args.stamp)
    elif kind == "scaling_fn":
        if not args.eps_list:
            raise _UsageError("--eps-list is required for scaling_fn scans")
        eps_list = [float(x) for x in args.eps_list.split(",")]
        ds = scan_scaling_fn(eps_list, args.s_min, args.s_max, args.steps,
                             tol=args.tol or 1e-12, stamp=args.stamp)
    elif kind == "partition":
        if args.m_list:
            m_values = [int(x) for x in args.m_list.split(",")]
        else:
            m_values = list(range(10, (args.m_max or 40) + 1, 10))
        ds = scan_partition(args.t, m_values, n_max=args.n_max,
                            j_max=args.j_max, stamp=args.stamp)
    else:  # pragma: no cover
        raise DomainError(f"unknown scan kind {kind!r}")
    write_dataset(ds, args.out, args.format)
    print(f"wrote {ds.n_rows} rows ({kind}) to {args.out}")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    table = build_area_polynomials(args.n_max)
    text = table_to_json(table) if args.format == "json" else table_to_csv(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote table n <= {args.n_max} to {args.out}")
    else:
        sys.stdout.write(text)
    if args.verify_brute_force is not None:
        cap = args.verify_brute_force
        for n in range(cap + 1):
            oracle = brute_force_area_polynomial(n)
            if table.row(n).coeffs != oracle.coeffs:
                for m, (a, b) in enumerate(zip(table.row(n).coeffs, oracle.coeffs)):
                    if a != b:
                        print(f"FAIL row n={n}: first differing entry m={m} ({a} != {b})")
                        return EXIT_MISMATCH
                print(f"FAIL row n={n}: length mismatch")
                return EXIT_MISMATCH
            print(f"PASS row n={n} ({oracle.total()} paths)")
    return EXIT_OK


def _cmd_scaling(args) -> int:
    value = scaling_F(args.s)
    print(f"F({args.s:g}) = {value!r}")
    series, bound = scaling_F_series(args.s, args.j_max, full_output=True)
    print(f"series(j_max={args.j_max}) = {series!r}  truncation_bound={bound:.3e}")
    if args.eps is not None:
        query = ScalingQuery.from_s_eps(args.s, args.eps)
        print(f"G_scaling(s={args.s:g}, eps={args.eps:g}) = {g_scaling(query)!r}  (t={query.t:.8f})")
    return EXIT_OK


def _cmd_partition(args) -> int:
    peak = (2 * args.m - 1) / max(0.2, -math.log(max(args.t, 1e-6)))
    n_max = args.n_max or int(peak + 5.0 * math.sqrt(max(peak, 4.0))) + 20
    table = build_area_polynomials(n_max, m_max=args.m)
    res = partition_series(table, args.m, args.t)
    asym = q_m_asymptotic(args.m, args.t, j_max=args.j_max) if args.m >= 10 else None
    print(f"Q_{args.m}({args.t:g}) = {res.value!r}  (n <= {n_max}, tail ~ {res.tail_estimate:.2e}, ok={res.tail_ok})")
    if asym is not None:
        print(f"asymptotic m^(-4/3) phi(s) = {asym!r}  ratio = {res.value / asym:.4f}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    failures = 0

    def report(name: str, ok: bool, detail: str):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1

    # Euler-Maclaurin remainder bound on a complex grid
    worst = 0.0
    for q in (0.9, 0.99):
        for x in (-0.5, 0.0, 0.3, 0.6, 0.9):
            for y in (-1.0, -0.3, 0.3, 1.0):
                rc = euler_maclaurin_check(complex(x, y), q)
                worst = max(worst, abs(rc.remainder) / rc.bound)
    report("euler_maclaurin_bound", worst <= 1.0, f"max |R|/bound = {worst:.4f} on 40 points")

    # contour representation against the series
    worst = 0.0
    for t in (0.1, 0.2):
        for q in (0.3, 0.5):
            hs = h_series(t, EvalSettings(q=q))
            ch = contour_h(t, q)
            worst = max(worst, abs(ch.real - hs) / abs(hs), abs(ch.imag))
    report("contour_vs_series", worst < 1e-8, f"max deviation {worst:.2e} (tol 1e-8)")

    # cross-method agreement and functional equation on the standard grid
    worst_cm, worst_fe = 0.0, 0.0
    for q in (0.3, 0.5, 0.7, 0.9):
        settings = EvalSettings(q=q)
        top = 0.9 * t_infinity(q, settings)
        ts = [0.05 * k for k in range(1, 40) if 0.05 * k <= top]
        for t in ts:
            G = g_cfrac(t, settings)
            worst_cm = max(worst_cm, abs(g_ratio(t, settings) - G) / abs(G))
            worst_fe = max(worst_fe, abs(G - 1.0 - t * G * g_cfrac(q * t, settings)))
    report("cross_method", worst_cm < 1e-9, f"max rel diff {worst_cm:.2e} (tol 1e-9)")
    report("functional_equation", worst_fe < 1e-8, f"max residual {worst_fe:.2e} (tol 1e-8)")

    # scaling identity (series against Airy ratio inside the disk)
    worst = 0.0
    for s in np.linspace(-2.0, 2.0, 21):
        worst = max(worst, abs(scaling_F_series(float(s), 100) - scaling_F(float(s))))
    report("scaling_identity", worst < 1e-6, f"max |series - ratio| = {worst:.2e} (j_max=100)")

    print(f"{'OK' if failures == 0 else 'FAILED'}: {5 - failures}/5 checks passed")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def build_parser() -> _Parser:
    parser = _Parser(prog="dyckarea", description=__doc__)
    parser.add_argument("--version", action="version", version=f"dyckarea {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate G(t, q) by one method")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--method", choices=["series", "ratio", "cfrac", "uniform", "scaling"],
                   required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--precision-bits", dest="precision_bits", type=int)
    p.add_argument("--n-max", dest="n_max", type=int, default=60)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("scan", help="write a figure-reproduction dataset")
    p.add_argument("--kind", choices=["g_vs_t", "phase_boundary", "scaling_fn", "partition"],
                   required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--eps-list", dest="eps_list")
    p.add_argument("--t", type=float, default=0.25)
    p.add_argument("--t-min", dest="t_min", type=float, default=0.01)
    p.add_argument("--t-max", dest="t_max", type=float, default=0.45)
    p.add_argument("--q-min", dest="q_min", type=float, default=0.3)
    p.add_argument("--q-max", dest="q_max", type=float, default=0.99)
    p.add_argument("--s-min", dest="s_min", type=float, default=-2.0)
    p.add_argument("--s-max", dest="s_max", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--m-list", dest="m_list")
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--j-max", dest="j_max", type=int, default=24)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--stamp", action="store_true",
                   help="include a timestamp in metadata (breaks byte-for-byte determinism)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("enumerate", help="write the exact coefficient table")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.add_argument("--verify-brute-force", dest="verify_brute_force", type=int)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("scaling", help="evaluate the scaling function F(s)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--j-max", dest="j_max", type=int, default=40)
    p.add_argument("--eps", type=float)
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("partition", help="exact vs asymptotic fixed-area series")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--j-max", dest="j_max", type=int, default=24)
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("validate", help="run the numerical validation suites")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DomainError, DyckAreaError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    raise SystemExit(main())
