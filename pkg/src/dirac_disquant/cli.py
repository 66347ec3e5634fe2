"""Command-line front end.

Subcommands: verify, helix, rotator, rigidity, identify.  All numeric output
goes through deterministic serializers (17 significant digits, LF endings);
progress and timing go to stderr so files and stdout stay byte-reproducible.
Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

import argparse
import sys

import numpy as np

from . import particle, rotator
from .errors import DomainError, StabilityError, StepSizeError
from .report import RunConfig, csv_table, fmt, json_table
from .verification import SUITE_NAMES, run_suite


def _common_flags(sub):
    sub.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    sub.add_argument("--out", default=None,
                     help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     dest="out_format",
                     help="output format (default: json for verify/identify, csv otherwise)")
    sub.add_argument("--tol-scale", type=float, default=1.0,
                     help="multiply every tolerance by this factor")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dirac-disquant",
        description="Verification suites and data generators for the classical "
                    "Dirac particle and the relativistic rotator.")
    subs = ap.add_subparsers(dest="command", required=True)

    v = subs.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITE_NAMES)
    v.add_argument("--m", type=float, default=1.0)
    v.add_argument("--m0", type=float, default=1.0)
    v.add_argument("--hbar", type=float, default=1.0)
    v.add_argument("--c", type=float, default=1.0)
    v.add_argument("--e", type=float, default=1.0, dest="e_charge")
    _common_flags(v)

    h = subs.add_parser("helix", help="sample a helix worldline")
    h.add_argument("--b", type=float, required=True, help="y^2 integration constant")
    h.add_argument("--m", type=float, default=1.0)
    h.add_argument("--hbar", type=float, default=1.0)
    h.add_argument("--phase", type=float, default=0.0)
    h.add_argument("--tmax", type=float, default=None,
                   help="sampling horizon in coordinate time (default: one turn)")
    h.add_argument("--dt", type=float, default=None,
                   help="sampling step (default: tmax/256)")
    _common_flags(h)

    r = subs.add_parser("rotator", help="rotator worldlines with constraint columns")
    r.add_argument("--m0", type=float, default=1.0)
    r.add_argument("--a", type=float, required=True)
    r.add_argument("--P0", type=float, required=True)
    r.add_argument("--phase", type=float, default=0.0)
    r.add_argument("--mode", choices=("closed", "integrate"), default="closed")
    r.add_argument("--steps", type=int, default=2000)
    _common_flags(r)

    g = subs.add_parser("rigidity", help="sample the rigidity curve gamma(a)")
    g.add_argument("--m0", type=float, default=1.0)
    g.add_argument("--hbar", type=float, default=1.0)
    g.add_argument("--c", type=float, default=1.0)
    g.add_argument("--a-min", type=float, default=0.0)
    g.add_argument("--a-max", type=float, required=True)
    g.add_argument("--n", type=int, default=64)
    _common_flags(g)

    i = subs.add_parser("identify", help="map parameters between helix and rotator")
    i.add_argument("--direction", choices=("dcr_to_rr", "rr_to_dcr"), required=True)
    i.add_argument("--v", type=float, default=None)
    i.add_argument("--zeta", type=float, default=None)
    i.add_argument("--m", type=float, default=None)
    i.add_argument("--m0", type=float, default=None)
    i.add_argument("--hbar", type=float, default=1.0)
    i.add_argument("--c", type=float, default=1.0)
    i.add_argument("--e", type=float, default=1.0, dest="e_charge")
    _common_flags(i)

    return ap


def _emit(text, out_path):
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def cmd_verify(args) -> int:
    cfg = RunConfig(seed=args.seed, tol_scale=args.tol_scale,
                    out_format=args.out_format or "json", out_path=args.out,
                    m=args.m, m0=args.m0, hbar=args.hbar, c=args.c,
                    e_charge=args.e_charge)
    report = run_suite(args.suite, cfg)
    _emit(report.render(cfg.out_format), args.out)
    ok, total = report.counts
    print(f"suite {args.suite}: {ok}/{total} checks passed "
          f"in {report.wall_time:.2f} s", file=sys.stderr)
    if not report.passed:
        for rec in report.failures():
            print(f"FAIL {rec.check_id}: residual {fmt(rec.residual)} "
                  f"> tolerance {fmt(rec.tolerance)} ({rec.description})",
                  file=sys.stderr)
        return 1
    return 0


def cmd_helix(args) -> int:
    if args.dt is not None and args.dt <= 0:
        raise DomainError("dt must be positive")
    p = particle.DcParams(m=args.m, hbar=args.hbar)
    sol = particle.helix_solution(args.b, phase=args.phase, p=p)
    ob = sol.obs

    if args.tmax is None:
        tmax = 2.0 * np.pi / ob.omega_dcr if args.b > 0 else 1.0
    else:
        tmax = args.tmax
    dt = args.dt if args.dt is not None else tmax / 256.0
    n = int(np.floor(tmax / dt)) + 1
    times = np.arange(n) * dt

    meta = {
        "kind": "helix-trajectory",
        "b": float(args.b), "m": float(args.m), "hbar": float(args.hbar),
        "phase": float(args.phase),
        "m_dcr": ob.m_dcr, "a_dcr": ob.a_dcr, "v": ob.v,
        "omega_dcr": ob.omega_dcr, "zeta": ob.zeta, "beta": ob.beta,
        "w0": sol.w0, "units": "c=1",
    }
    columns = ["t", "x", "y_coord", "z_coord", "xi1", "xi2", "xi3"]
    rows = []
    for t in times:
        pos = sol.position_at_time(t)
        rows.append([t, pos[0], pos[1], pos[2], sol.xi[0], sol.xi[1], sol.xi[2]])

    fmt_kind = args.out_format or "csv"
    text = (json_table(meta, columns, rows) if fmt_kind == "json"
            else csv_table(meta, columns, rows))
    _emit(text, args.out)
    return 0


def cmd_rotator(args) -> int:
    pr = rotator.RotatorParams(m0=args.m0, a=args.a, P0=args.P0, phase=args.phase)
    cf = rotator.closed_form_rotator(pr)
    meta = {
        "kind": f"rotator-trajectory-{args.mode}",
        "m0": float(args.m0), "a": float(args.a), "P0": float(args.P0),
        "phase": float(args.phase),
        "omega": float(pr.omega), "omega0": float(pr.omega0), "units": "c=1",
    }
    columns = ["t", "x1_1", "x1_2", "x2_1", "x2_2",
               "res_xx", "res_px", "res_Pp", "res_pp", "res_Xdotx"]
    rows = []

    if args.mode == "closed":
        if pr.omega == 0.0:
            times = np.linspace(0.0, 1.0, args.steps + 1)
        else:
            times = np.linspace(0.0, 2.0 * np.pi / abs(pr.omega0), args.steps + 1)
        for t in times:
            one, two = cf.worldlines_at_time(t)
            tau = -4.0 * pr.m0 * t / pr.P0
            mon = rotator.constraint_monitors(cf.state(tau), pr)
            rows.append([t, one[1], one[2], two[1], two[2]] + list(mon.values()))
    else:
        if pr.omega == 0.0:
            dt = 0.05
        else:
            dt = cf.tau_period / args.steps
        traj = rotator.integrate_rotator(pr, cf.state(0.0), args.steps, dt)
        for st, mon in zip(traj.states, traj.monitors):
            one, two = st.worldlines()
            rows.append([st.X[0], one[1], one[2], two[1], two[2]] + list(mon))
        meta["zeta_drift"] = traj.zeta_drift
        meta["nu_max"] = traj.nu_max
        meta["pre_projection_drift"] = traj.pre_projection_drift

    fmt_kind = args.out_format or "csv"
    text = (json_table(meta, columns, rows) if fmt_kind == "json"
            else csv_table(meta, columns, rows))
    _emit(text, args.out)
    return 0


def cmd_rigidity(args) -> int:
    try:
        curve = rotator.RigidityCurve.sample(args.m0, args.hbar, args.c,
                                             args.a_min, args.a_max, args.n)
    except DomainError as exc:
        bound = rotator.rigidity_domain_bound(args.m0, args.hbar, args.c)
        raise DomainError(f"{exc} (domain bound {fmt(bound)})") from exc
    rows = [[a, g] for a, g in zip(curve.a, curve.gamma)]
    meta = {
        "kind": "rigidity-curve",
        "m0": float(args.m0), "hbar": float(args.hbar), "c": float(args.c),
        "domain_bound": curve.domain_bound,
    }
    fmt_kind = args.out_format or "csv"
    text = (json_table(meta, ["a", "gamma"], rows) if fmt_kind == "json"
            else csv_table(meta, ["a", "gamma"], rows))
    _emit(text, args.out)
    return 0


def cmd_identify(args) -> int:
    import json as _json

    if args.direction == "dcr_to_rr":
        if args.m is None or args.zeta is None:
            raise DomainError("dcr_to_rr needs --m and --zeta")
        result = rotator.identify_dcr_rr("dcr_to_rr", m=args.m, zeta=args.zeta,
                                         hbar=args.hbar, c=args.c,
                                         e_charge=args.e_charge)
        residual = abs(
            rotator.rigidity(result["a"], result["m0"], args.hbar, args.c)
            - rotator.mass_increase(result["v"], args.c))
    else:
        if args.m0 is None or args.v is None:
            raise DomainError("rr_to_dcr needs --m0 and --v")
        result = rotator.identify_dcr_rr("rr_to_dcr", m0=args.m0, v=args.v,
                                         hbar=args.hbar, c=args.c,
                                         e_charge=args.e_charge)
        residual = abs(rotator.rigidity(result["a"], args.m0, args.hbar, args.c)
                       - rotator.mass_increase(args.v, args.c))

    payload = {"schema": "dirac-disquant/1", "kind": "identification",
               "hbar": args.hbar, "c": args.c,
               "parameters": result, "consistency_residual": residual}
    _emit(_json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "helix": cmd_helix,
        "rotator": cmd_rotator,
        "rigidity": cmd_rigidity,
        "identify": cmd_identify,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, StabilityError, StepSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
