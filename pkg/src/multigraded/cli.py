"""Command-line front end.

Commands: ideal info | system eval/invariants/cones/verify | repro
thm1/thm2/appendix.  Exit codes: 0 success, 1 verification failure,
2 input error.  All output is a pure function of the inputs; CSV files
are written atomically (write-then-rename).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from math import lcm

from .cones import (
    ConeRep,
    abs_sum_cone,
    cone_compare,
    eff_points,
    halton,
    lattice_window,
    nef_points,
    ray_hull,
)
from .errors import MonotonicityError, MultigradedError, NotCofinite
from .invariants import (
    ceiling_closed_forms,
    diff_quotient_scan,
    geometric_invariants,
    sequence_invariant,
    thm2_crossing,
    thm2_kink_locations,
    thm2_ord0,
)
from .monomial import MonomialIdeal
from .regions import appendix_boundary
from .systems import (
    CeilingSystem,
    Truncate,
    box_window,
    kinked_intersection_system,
    verify_gradedness,
)
from .textio import (
    ParseError,
    csv_text,
    fmt_dec,
    fmt_q,
    format_ideal,
    format_polyhedron,
    load_cone,
    load_ideal,
    parse_q,
    parse_system,
    write_text_atomic,
)


def _print_rat(label: str, value, decimals: bool) -> str:
    if decimals:
        return f"{label} = {fmt_q(value)} ({fmt_dec(value)})"
    return f"{label} = {fmt_q(value)}"


# -- ideal ------------------------------------------------------------------


def cmd_ideal_info(args) -> int:
    ideal = load_ideal(args.path)
    dec = args.decimals
    out = [f"k={ideal.dim}"]
    if ideal.is_zero:
        out.append("zero ideal: all invariants undefined")
        print("\n".join(out))
        return 0
    out.append(f"generators: {len(ideal.gens)}")
    out.append(_print_rat("ord0", ideal.ord0(), dec))
    out.append(_print_rat("arn", ideal.arn(), dec))
    lct = ideal.lct()
    out.append("lct = infinite" if lct is None else _print_rat("lct", lct, dec))
    try:
        out.append(_print_rat("mult", ideal.multiplicity(), dec))
        out.append(f"colength = {ideal.colength()}")
    except NotCofinite:
        out.append("mult = infinite (not cofinite)")
        out.append("colength = infinite (not cofinite)")
    out.append(format_polyhedron(ideal.newton()).rstrip("\n"))
    print("\n".join(out))
    return 0


# -- system -----------------------------------------------------------------


def _parse_index(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


def cmd_system_eval(args) -> int:
    system = parse_system(args.path)
    ideal = system.eval(_parse_index(args.at))
    sys.stdout.write(format_ideal(ideal))
    return 0


def cmd_system_invariants(args) -> int:
    system = parse_system(args.path)
    v = _parse_index(args.direction)
    quantities = ("ord0", "arn", "mult") if args.quantity == "all" else (args.quantity,)
    rows = []
    lines = [f"direction: ({', '.join(str(x) for x in v)})"]
    failed = False
    for q in quantities:
        if args.method in ("sequence", "both"):
            bracket = sequence_invariant(
                system, v, q, schedule=args.schedule, steps=args.max,
                with_geometry=args.method == "both",
            )
            lines.append(f"{q} samples ({args.schedule}):")
            for n, val in bracket.samples:
                lines.append(f"  n={n} value={fmt_q(val)} ({fmt_dec(val)})")
                rows.append((q, n, fmt_q(val), fmt_dec(val)))
            if args.method == "both":
                if bracket.geometric is None:
                    lines.append(f"{q} geometric = unavailable")
                else:
                    lines.append(_print_rat(f"{q} geometric", bracket.geometric, True))
                lines.append(f"{q} certified = {'yes' if bracket.certified else 'no'}")
                if not bracket.certified:
                    failed = True
        else:
            body = system.restrict(v).limit_body()
            geo = getattr(geometric_invariants(body, system.ambient_dim), q)
            if geo is None:
                lines.append(f"{q} geometric = unavailable (unbounded complement)")
            else:
                lines.append(_print_rat(f"{q} geometric", geo, True))
                rows.append((q, "geometric", fmt_q(geo), fmt_dec(geo)))
    print("\n".join(lines))
    if args.out:
        write_text_atomic(args.out, csv_text(("quantity", "n", "value", "decimal"), rows))
    return 1 if failed else 0


def cmd_system_cones(args) -> int:
    system = parse_system(args.path)
    nef = nef_points(system, args.radius)
    eff = eff_points(system, args.radius)
    lines = [f"nef points ({len(nef)}):"]
    lines.extend("  " + " ".join(str(x) for x in v) for v in nef)
    lines.append(f"eff points ({len(eff)}):")
    lines.extend("  " + " ".join(str(x) for x in v) for v in eff)
    if nef:
        hull = ray_hull(nef, system.rank)
        if hull.fullspace:
            lines.append("nef hull: full space")
        else:
            lines.append("nef hull rays:")
            lines.extend("  " + " ".join(str(x) for x in r) for r in hull.rays)
    print("\n".join(lines))
    if args.out:
        rows = [("nef", *v) for v in nef] + [("eff", *v) for v in eff]
        width = max(len(r) for r in rows) - 1 if rows else system.rank
        header = ("cone", *(f"v{i + 1}" for i in range(width)))
        write_text_atomic(args.out, csv_text(header, rows))
    return 0


def cmd_system_verify(args) -> int:
    system = parse_system(args.path)
    lo, hi = (int(t) for t in args.window.split(":"))
    report = verify_gradedness(system, box_window([(lo, hi)] * system.rank))
    print(f"pairs checked: {report.pairs_checked}")
    print(f"violations: {len(report.violations)}")
    for v, w in report.violations:
        print(f"  {v} + {w}")
    return 0 if report.ok else 1


# -- repro ------------------------------------------------------------------


def _pass(lines, ok: bool, label: str) -> bool:
    lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}")
    return ok


def _thm1_directions(radius: int, count: int):
    window = [v for v in lattice_window(3, radius) if any(x != 0 for x in v)]
    step = max(1, len(window) // count)
    return window[::step][:count]


def cmd_repro_thm1(args) -> int:
    cone = load_cone(args.cone) if args.cone else abs_sum_cone()
    base = load_ideal(args.base) if args.base else MonomialIdeal.maximal(2)
    system = CeilingSystem(cone, base)
    lines, rows = [], []
    ok = True

    nef = nef_points(system, args.radius)
    expected = [v for v in lattice_window(cone.rank, args.radius) if cone.contains(v)]
    ok &= _pass(
        lines,
        nef == expected,
        f"nef lattice points within radius {args.radius} equal the cone's "
        f"({len(nef)} points)",
    )
    hull = ray_hull(nef, cone.rank)
    if not hull.fullspace:
        lines.append("nef hull rays: " + "; ".join(" ".join(map(str, r)) for r in hull.rays))
    report = cone_compare(hull, cone, samples=args.samples, radius=args.radius)
    ok &= _pass(
        lines,
        report.agrees,
        f"ray hull of nef points agrees with the cone on {report.samples_tested} "
        f"sample directions and {report.lattice_tested} lattice points",
    )

    grid_ok = True
    for v in _thm1_directions(2, args.directions):
        closed = ceiling_closed_forms(system, v)
        for q in ("ord0", "arn", "mult"):
            want = getattr(closed, q)
            bracket = sequence_invariant(system, v, q, steps=args.max)
            exact = all(val == want for _, val in bracket.samples)
            exact &= bracket.geometric == want
            grid_ok &= exact
        rows.append(
            (
                " ".join(map(str, v)),
                fmt_q(closed.ord0),
                fmt_q(closed.arn),
                fmt_q(closed.mult),
                fmt_dec(closed.ord0),
            )
        )
    ok &= _pass(
        lines,
        grid_ok,
        f"closed forms match every schedule sample exactly at {args.directions} "
        "integral directions",
    )
    print("\n".join(lines))
    if args.out:
        write_text_atomic(
            args.out, csv_text(("direction", "ord0", "arn", "mult", "ord0_decimal"), rows)
        )
    return 0 if ok else 1


def cmd_repro_thm2(args) -> int:
    n_kinks = args.kinks
    r_fixed = parse_q(args.r)
    lines, grid_rows, kink_rows = [], [], []
    ok = True

    rmin, rmax, smin, smax = (parse_q(t) for t in args.grid[:4])
    steps = int(args.grid[4])
    if steps < 2 or rmax <= rmin or smax <= smin:
        raise ParseError("grid needs rmin < rmax, smin < smax and steps >= 2")
    grid_ok = True
    for i in range(steps):
        r = rmin + (rmax - rmin) * Fraction(i, steps - 1)
        for j in range(steps):
            s = smin + (smax - smin) * Fraction(j, steps - 1)
            vertex_route = thm2_ord0(r, s, n_kinks)
            crossing = thm2_crossing(r, s, n_kinks)
            agree = crossing is not None and crossing[1] == vertex_route
            grid_ok &= agree
            grid_rows.append(
                (fmt_q(r), fmt_q(s), fmt_q(vertex_route), fmt_dec(vertex_route),
                 "yes" if agree else "no")
            )
    ok &= _pass(
        lines,
        grid_ok,
        f"ord0 grid ({steps}x{steps}): vertex route equals s + x/2 formula at every cell",
    )

    kinks = thm2_kink_locations(r_fixed, n_kinks, parse_q(args.scan[0]), parse_q(args.scan[1]))
    scan_ok = bool(kinks)
    for s0, x0 in kinks:
        dq = diff_quotient_scan(lambda s: thm2_ord0(r_fixed, s, n_kinks), s0)
        scan_ok &= dq.stable and dq.gap != 0
        kink_rows.append(
            (fmt_q(s0), fmt_q(dq.left), fmt_q(dq.right), fmt_q(dq.gap), fmt_dec(dq.gap))
        )
        lines.append(
            f"kink at s0 = {fmt_q(s0)} (crossing x = {fmt_q(x0)}): "
            f"left {fmt_q(dq.left)}, right {fmt_q(dq.right)}, gap {fmt_q(dq.gap)}"
        )
    ok &= _pass(
        lines,
        scan_ok,
        f"kink scan at r = {fmt_q(r_fixed)} over s in [{fmt_q(parse_q(args.scan[0]))}, "
        f"{fmt_q(parse_q(args.scan[1]))}]: {len(kinks)} kink(s), every gap nonzero",
    )

    system = kinked_intersection_system(n_kinks)
    nef = nef_points(system, args.radius)
    expected = [
        v for v in lattice_window(2, args.radius) if v[0] <= 0 and v[1] <= 0
    ]
    ok &= _pass(
        lines,
        nef == expected,
        f"nef points within radius {args.radius} are exactly the third quadrant",
    )

    if args.truncate is not None:
        eps = parse_q(args.truncate)
        cone = ConeRep.from_halfspaces(2, [(-eps.numerator, eps.denominator)])
        truncated = Truncate(system, cone)
        eff = eff_points(truncated, args.trunc_radius)
        ok &= _pass(
            lines,
            all(cone.contains(v) for v in eff),
            f"truncated system: eff points within radius {args.trunc_radius} "
            f"lie in s >= {fmt_q(eps)} r",
        )
        trunc_ok = True
        for s0, _ in kinks:
            dq = diff_quotient_scan(
                lambda s: _system_ord0_rational(truncated, (r_fixed, s)), s0
            )
            base_dq = diff_quotient_scan(lambda s: thm2_ord0(r_fixed, s, n_kinks), s0)
            trunc_ok &= (dq.left, dq.right) == (base_dq.left, base_dq.right)
        ok &= _pass(lines, trunc_ok, "truncation leaves the kink table unchanged")

    print("\n".join(lines))
    if args.out:
        write_text_atomic(
            args.out,
            csv_text(("r", "s", "ord0", "ord0_decimal", "routes_agree"), grid_rows),
        )
    if args.kink_out:
        write_text_atomic(
            args.kink_out,
            csv_text(("s0", "left", "right", "gap", "gap_decimal"), kink_rows),
        )
    return 0 if ok else 1


def _system_ord0_rational(system, point) -> Fraction:
    """ord0 of a system at a rational index point, by homogeneity."""
    fracs = [Fraction(x) for x in point]
    scale = lcm(*(f.denominator for f in fracs))
    v = tuple(int(f * scale) for f in fracs)
    body = system.restrict(v).limit_body()
    return body.min_weighted((1,) * system.ambient_dim) / scale


def cmd_repro_appendix(args) -> int:
    boundary, body = appendix_boundary(args.kinks)
    lines, rows = [], []
    ok = True
    g10 = body.gauge((1, 0))
    g01 = body.gauge((0, 1))
    lines.append(f"gauge((1, 0)) = {fmt_q(g10)}")
    lines.append(f"gauge((0, 1)) = {fmt_q(g01)}")

    homog_ok = True
    convex_ok = True
    samples = []
    for i in range(1, args.samples + 1):
        p = (4 * halton(i, 2) - 2, 4 * halton(i, 3) - 2)
        lam = 3 * halton(i, 5) + Fraction(1, 8)
        samples.append(p)
        homog_ok &= body.gauge((lam * p[0], lam * p[1])) == lam * body.gauge(p)
    for p, q in zip(samples, samples[1:]):
        mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        convex_ok &= 2 * body.gauge(mid) <= body.gauge(p) + body.gauge(q)
    ok &= _pass(lines, homog_ok, f"gauge positively homogeneous on {args.samples} samples")
    ok &= _pass(lines, convex_ok, f"gauge midpoint-convex on {args.samples - 1} sample pairs")

    ray_ok = True
    for x, y in body.kink_vertices:
        t0 = y / x
        dq = diff_quotient_scan(lambda t: body.gauge((1, t)), t0)
        ray_ok &= dq.stable and dq.gap != 0
        rows.append((fmt_q(t0), fmt_q(dq.left), fmt_q(dq.right), fmt_q(dq.gap), fmt_dec(dq.gap)))
        lines.append(
            f"kink ray t = {fmt_q(t0)}: left {fmt_q(dq.left)}, "
            f"right {fmt_q(dq.right)}, gap {fmt_q(dq.gap)}"
        )
    ok &= _pass(
        lines, ray_ok, f"{len(body.kink_vertices)} kink ray(s) with nonzero slope gaps"
    )
    print("\n".join(lines))
    if args.out:
        write_text_atomic(
            args.out, csv_text(("t0", "left", "right", "gap", "gap_decimal"), rows)
        )
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multigraded",
        description="Exact invariants and cones of multigraded systems of monomial ideals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ideal = sub.add_parser("ideal", help="single-ideal commands")
    ideal_sub = p_ideal.add_subparsers(dest="subcommand", required=True)
    p_info = ideal_sub.add_parser("info", help="invariants and Newton polyhedron")
    p_info.add_argument("path")
    p_info.add_argument("--decimals", action="store_true", help="echo decimal values")
    p_info.set_defaults(func=cmd_ideal_info)

    p_system = sub.add_parser("system", help="graded-system commands")
    system_sub = p_system.add_subparsers(dest="subcommand", required=True)

    p_eval = system_sub.add_parser("eval", help="evaluate at an index vector")
    p_eval.add_argument("path")
    p_eval.add_argument("--at", required=True, help="index vector, e.g. '2,1'")
    p_eval.set_defaults(func=cmd_system_eval)

    p_inv = system_sub.add_parser("invariants", help="asymptotic invariants along a direction")
    p_inv.add_argument("path")
    p_inv.add_argument("--direction", required=True)
    p_inv.add_argument("--quantity", choices=("ord0", "arn", "mult", "all"), default="all")
    p_inv.add_argument("--method", choices=("sequence", "geometric", "both"), default="both")
    p_inv.add_argument("--schedule", choices=("factorial", "doubling"), default="factorial")
    p_inv.add_argument("--max", type=int, default=None, help="schedule length")
    p_inv.add_argument("--out", default=None, help="CSV output path")
    p_inv.set_defaults(func=cmd_system_invariants)

    p_cones = system_sub.add_parser("cones", help="nef/effective lattice points")
    p_cones.add_argument("path")
    p_cones.add_argument("--radius", type=int, required=True)
    p_cones.add_argument("--out", default=None)
    p_cones.set_defaults(func=cmd_system_cones)

    p_verify = system_sub.add_parser("verify", help="gradedness over a window")
    p_verify.add_argument("path")
    p_verify.add_argument("--window", default="-2:2", help="per-coordinate range lo:hi")
    p_verify.set_defaults(func=cmd_system_verify)

    p_repro = sub.add_parser("repro", help="reproduce the pathological constructions")
    repro_sub = p_repro.add_subparsers(dest="subcommand", required=True)

    p_t1 = repro_sub.add_parser("thm1", help="arbitrary cones as nef cones")
    p_t1.add_argument("--cone", default=None, help="cone file (default |x1|+|x2| epigraph)")
    p_t1.add_argument("--base", default=None, help="base ideal file (default maximal, k=2)")
    p_t1.add_argument("--radius", type=int, default=4)
    p_t1.add_argument("--samples", type=int, default=64)
    p_t1.add_argument("--directions", type=int, default=20)
    p_t1.add_argument("--max", type=int, default=4, help="factorial schedule length")
    p_t1.add_argument("--out", default=None)
    p_t1.set_defaults(func=cmd_repro_thm1)

    p_t2 = repro_sub.add_parser("thm2", help="non-differentiable ord0")
    p_t2.add_argument("--kinks", type=int, default=1)
    p_t2.add_argument("--r", default="1", help="fixed r for the kink scan")
    p_t2.add_argument(
        "--grid", nargs=5, default=("3/4", "3/2", "3/4", "3/2", "13"),
        metavar=("RMIN", "RMAX", "SMIN", "SMAX", "STEPS"),
    )
    p_t2.add_argument("--scan", nargs=2, default=("3/4", "2"), metavar=("SMIN", "SMAX"))
    p_t2.add_argument("--radius", type=int, default=6)
    p_t2.add_argument("--truncate", default=None, metavar="EPS",
                      help="also verify truncation by s >= EPS * r")
    p_t2.add_argument("--trunc-radius", type=int, default=8)
    p_t2.add_argument("--out", default=None)
    p_t2.add_argument("--kink-out", default=None)
    p_t2.set_defaults(func=cmd_repro_thm2)

    p_ap = repro_sub.add_parser("appendix", help="nowhere-differentiable gauge")
    p_ap.add_argument("--kinks", type=int, default=1)
    p_ap.add_argument("--samples", type=int, default=50)
    p_ap.add_argument("--out", default=None)
    p_ap.set_defaults(func=cmd_repro_appendix)

    for sp in (p_info, p_eval, p_inv, p_cones, p_verify, p_t1, p_t2, p_ap):
        sp.add_argument(
            "--single-thread", action="store_true",
            help="accepted for compatibility; execution is always sequential",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MonotonicityError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except (MultigradedError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
