"""Command-line front end.

Subcommands: validate, enumerate-m, orbit, smoothness, slice, sample.
Domains come from --preset NAME or --config PATH (YAML).  Exit codes:
0 pass, 1 check failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis, autgrp, domain as domain_mod, weights
from .config import ConfigError, load_config, parse_config, preset_config
from .errors import ContractViolation
from .presets import PRESET_NAMES


def _add_common(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", help="YAML config file")
    src.add_argument(
        "--preset", choices=PRESET_NAMES, help="built-in preset domain"
    )
    p.add_argument("--seed", type=int, default=None, help="sampling seed override")
    p.add_argument("--samples", type=int, default=None, help="sample count override")
    p.add_argument("--out", help="output path (default stdout)")


def _build(args):
    if args.config:
        build = load_config(args.config)
    else:
        build = parse_config({"preset": args.preset or "ball"})
    if args.seed is not None:
        build.check.seed = args.seed
    if args.samples is not None:
        build.check.samples = args.samples
    return build


def _open_out(args):
    if args.out:
        return open(args.out, "w")
    return sys.stdout


def cmd_validate(args):
    build = _build(args)
    if build.probe_only:
        raise ConfigError("validate needs a full domain config, not a probe control")
    c = build.check
    out = _open_out(args)
    ok = True

    wrep = weights.validate_weights(build.ws)
    out.write("== weights ==\n%s\n" % wrep.render())
    ok &= wrep.passed

    tol = 1e-6 if build.quadrature else 1e-9
    res = analysis.check_homogeneity(
        build.psi, build.ws, samples=c.samples, seed=c.seed
    )
    hom_ok = res <= tol
    out.write(
        "== homogeneity ==\nmax residual %.3e (tolerance %.0e): %s\n"
        % (res, tol, "pass" if hom_ok else "FAIL")
    )
    ok &= hom_ok

    nrep = analysis.check_normalization(build.psi, build.ws)
    out.write("== normalization ==\n%s\n" % nrep.render())
    ok &= nrep.passed

    nn = analysis.check_nonnegativity(
        build.psi, build.ws, samples=c.samples, seed=c.seed
    )
    out.write("== non-negativity ==\n%s\n" % nn.render())
    ok &= nn.passed

    brep = domain_mod.check_bounded(build.domain, c.s1_samples, seed=c.seed)
    out.write("== boundedness ==\n%s\n" % brep.render(build.ws))
    ok &= brep.bounded

    out.write("== automorphism invariance ==\n")
    inv_tol = 1e-6 if build.quadrature else 1e-9
    for a in c.moebius_params:
        rep = autgrp.check_invariance(
            build.domain, autgrp.MoebiusParams(a),
            samples=c.samples, seed=c.seed,
        )
        good = rep.passed and rep.max_residual <= inv_tol
        out.write("a = %s: %s: %s\n" % (a, rep.render(), "pass" if good else "FAIL"))
        ok &= good

    out.write("overall: %s\n" % ("PASS" if ok else "FAIL"))
    if args.out:
        out.close()
    return 0 if ok else 1


def cmd_enumerate_m(args):
    build = _build(args)
    if build.probe_only:
        raise ConfigError("enumerate-m needs a weight system")
    M = weights.enumerate_admissible_set(build.ws)
    out = _open_out(args)
    out.write(M.canonical_text() + "\n")
    if args.out:
        out.close()
    return 0


def _parse_schedule(spec, steps_default=20):
    """Schedule spec: 'halving:M' for a_m = 1 - 2^-m, m = 1..M, or a
    comma-separated list of real parameters in [0, 1)."""
    if spec.startswith("halving"):
        m = int(spec.split(":", 1)[1]) if ":" in spec else steps_default
        return [1.0 - 2.0 ** (-i) for i in range(1, m + 1)]
    try:
        vals = [float(v) for v in spec.split(",")]
    except ValueError:
        raise ConfigError("bad schedule %r" % spec)
    return vals


def cmd_orbit(args):
    build = _build(args)
    if build.probe_only:
        raise ConfigError("orbit needs a full domain config")
    schedule = _parse_schedule(args.schedule)
    start = np.zeros(build.ws.n, complex)
    result = autgrp.orbit(build.domain, start, schedule)
    out = _open_out(args)
    result.write_csv(out)
    if args.out:
        out.close()
    if args.fig:
        from .figures import render_orbit

        render_orbit(result, args.fig, title="orbit of 0 in %s" % build.name)
    return 0


def cmd_smoothness(args):
    build = _build(args)
    if build.probe_function is None:
        raise ConfigError("smoothness probe unavailable for this config")
    cfg = build.probe_config(k=args.order)
    rep = analysis.smoothness_probe(build.probe_function, cfg)
    out = _open_out(args)
    out.write(rep.render() + "\n")
    if args.out:
        out.close()
    return 0 if rep.consistent else 1


def cmd_slice(args):
    build = _build(args)
    if build.probe_only:
        raise ConfigError("slice needs a full domain config")
    try:
        ia, ib = (int(v) for v in args.plane.split(","))
    except ValueError:
        raise ConfigError("plane must be two comma-separated group indices")
    table = domain_mod.slice_export(build.domain, (ia, ib), args.grid, hi=args.hi)
    out = _open_out(args)
    table.write_csv(out)
    if args.out:
        out.close()
    if args.fig:
        from .figures import render_slice

        render_slice(table, args.fig, title="%s slice (%d, %d)" % (build.name, ia, ib))
    return 0


def cmd_sample(args):
    build = _build(args)
    if build.probe_only:
        raise ConfigError("sample needs a full domain config")
    build.domain.verify(build.check.s1_samples, seed=build.check.seed)
    count = args.samples if args.samples is not None else 100
    pts = domain_mod.boundary_sample(build.domain, count, seed=build.check.seed)
    out = _open_out(args)
    n = build.ws.n
    out.write(",".join("z%d_re,z%d_im" % (j + 1, j + 1) for j in range(n)) + "\n")
    for row in pts:
        out.write(
            ",".join("%.17g,%.17g" % (v.real, v.imag) for v in row) + "\n"
        )
    if args.out:
        out.close()
    return 0


def make_parser():
    p = argparse.ArgumentParser(
        prog="reinhardt",
        description="Weighted-homogeneous defining functions and bounded "
        "Reinhardt domains with non-compact automorphism group: "
        "construction and numerical verification.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="run the full validation suite")
    _add_common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("enumerate-m", help="enumerate the admissible exponent set")
    _add_common(sp)
    sp.set_defaults(func=cmd_enumerate_m)

    sp = sub.add_parser("orbit", help="non-compactness witness orbit (CSV)")
    _add_common(sp)
    sp.add_argument(
        "--schedule", default="halving:20",
        help="'halving:M' or comma-separated parameters in [0,1)",
    )
    sp.add_argument("--fig", help="also render the gap decay figure to this path")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("smoothness", help="finite-difference smoothness probe")
    _add_common(sp)
    sp.add_argument("--order", type=int, default=None, help="probe order override")
    sp.set_defaults(func=cmd_smoothness)

    sp = sub.add_parser("slice", help="moduli-plane slice of the defining value (CSV)")
    _add_common(sp)
    sp.add_argument("--plane", default="1,2", help="two 1-based group indices")
    sp.add_argument("--grid", type=int, default=64)
    sp.add_argument("--hi", type=float, default=1.1, help="axis upper bound")
    sp.add_argument("--fig", help="also render the slice figure to this path")
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("sample", help="boundary points of a verified domain (CSV)")
    _add_common(sp)
    sp.set_defaults(func=cmd_sample)

    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ContractViolation) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
