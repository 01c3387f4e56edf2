"""Command-line entry point.

Suites:    spincert all | gamma | clifford | spin | factorize | u-embed |
           so-obstruction | dirac | weyl | mp       (JSON reports, exit 0/1)
Utilities: gamma --n N (emit matrices), spin-lift, monodromy, factorize
           --pprime/--epsprime, u-embed, so-obstruction, dirac-verify,
           weyl-verify, mp-verify, mp-monodromy, mp-factorize, bench.

Every long option can be preset through the environment as SPINC_<NAME>
(uppercased, dashes to underscores), e.g. SPINC_SEED=7, SPINC_JSON_LINES=1.
Exit codes: 0 all pass, 1 any failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import matio
from .errors import SpincertError
from .reports import RunConfig, all_passed, reports_to_text, run_suite

SUITE_NAMES = ("all", "gamma", "clifford", "spin", "factorize", "u-embed",
               "so-obstruction", "dirac", "weyl", "mp")


def _env(name: str, default=None):
    return os.environ.get("SPINC_" + name.upper().replace("-", "_"), default)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--tol", action="append", default=None, metavar="KEY=VAL",
                   help="tolerance override, repeatable")
    p.add_argument("--out", default=_env("out"), help="write the report to a file")
    p.add_argument("--json", action="store_true", default=bool(_env("json")),
                   help="pretty-printed JSON array")
    p.add_argument("--json-lines", action="store_true", default=bool(_env("json_lines")),
                   help="one JSON object per line")
    p.add_argument("--timings", action="store_true", default=bool(_env("timings")),
                   help="include runtimeMs in reports (breaks byte-determinism)")


def _suite_params(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=_env("n"))
    p.add_argument("--modes", type=int, default=_env("modes"))
    p.add_argument("--cutoff", type=int, default=_env("cutoff"))
    p.add_argument("--count", type=int, default=_env("count"))
    p.add_argument("--degree", type=int, default=_env("degree"))
    p.add_argument("--steps", type=int, default=_env("steps"))
    p.add_argument("--m", type=int, default=_env("m"))
    p.add_argument("--tmax", type=float, default=_env("tmax"))
    p.add_argument("--generators", default=_env("generators"),
                   help="comma list among osc,squeeze,shear")


def _config(args) -> RunConfig:
    overrides = {}
    env_tol = _env("tol")
    pairs = list(args.tol or []) + ([env_tol] if env_tol and not args.tol else [])
    for pair in pairs:
        for chunk in pair.split(","):
            if not chunk:
                continue
            key, _, val = chunk.partition("=")
            if not _:
                raise SystemExit(2)
            overrides[key] = float(val)
    params = {}
    for name in ("n", "modes", "cutoff", "count", "degree", "steps", "m", "tmax"):
        v = getattr(args, name, None)
        if v is not None:
            params[name] = type_cast(name, v)
    gens = getattr(args, "generators", None)
    if gens:
        params["generators"] = tuple(g.strip() for g in str(gens).split(",") if g.strip())
    return RunConfig(seed=args.seed, tol_overrides=overrides, output_path=args.out,
                     json_pretty=bool(args.json), json_lines=bool(args.json_lines),
                     include_timing=bool(args.timings), params=params)


def type_cast(name: str, v):
    return float(v) if name == "tmax" else int(v)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_suite_cmd(name: str, args) -> int:
    cfg = _config(args)
    reports = run_suite(name, cfg)
    _emit(reports_to_text(reports, cfg), cfg.output_path)
    ok = all_passed(reports)
    print(f"{name}: {sum(r.passed for r in reports)}/{len(reports)} checks passed",
          file=sys.stderr)
    return 0 if ok else 1


def _gamma_cmd(args) -> int:
    if args.n is None:
        return _run_suite_cmd("gamma", args)
    from .gamma import build_gamma
    branch = +1 if args.branch in (None, "+", "+1") else -1
    rep = build_gamma(args.n, branch)
    payload = json.dumps([matio.matrix_to_dict(g) for g in rep.gammas])
    _emit(payload + "\n", args.out)
    return 0


def _spin_lift_cmd(args) -> int:
    from .spin import lift_rotation
    r = matio.load_real_matrix(args.infile)
    if args.n is not None and r.shape[0] != args.n:
        print(f"matrix is {r.shape[0]}x{r.shape[0]}, expected n={args.n}", file=sys.stderr)
        return 2
    a = lift_rotation(r)
    _emit(a.mv.to_json() + "\n", args.out)
    return 0


def _monodromy_cmd(args) -> int:
    from .spin import path_monodromy, plane_rotation_loop
    i, j = (int(x) for x in args.plane.split(","))
    loop = plane_rotation_loop(args.n, (i - 1, j - 1), args.turns, args.steps)
    m = path_monodromy(loop)
    _emit(json.dumps({"monodromy": m}) + "\n", args.out)
    return 0


def _factorize_cmd(args) -> int:
    if args.pprime is None and args.epsprime is None:
        return _run_suite_cmd("factorize", args)
    if args.pprime is None or args.epsprime is None:
        print("--pprime and --epsprime are both required for file mode", file=sys.stderr)
        return 2
    from .gamma import build_gamma
    from .spinc import factorize
    p = matio.load_real_matrix(args.pprime)
    e = matio.load_matrix(args.epsprime)
    rep = build_gamma(p.shape[0], +1)
    res = factorize(rep, p, e)
    out = {
        "class": {"rotor": res.element.a.mv.to_json_dict(),
                  "scalar": {"re": res.element.c.real, "im": res.element.c.imag}},
        "scalarResidual": res.scalar_residual,
        "ok": res.ok,
    }
    if args.unitary:
        out["unitary"] = abs(abs(res.element.c) - 1.0) <= 1e-10
    _emit(json.dumps(out) + "\n", args.out)
    return 0 if res.ok and (not args.unitary or out["unitary"]) else 1


def _mp_factorize_cmd(args) -> int:
    from .weyl import build_hermite_model, mp_factorize
    s = matio.load_real_matrix(args.pprime)
    e = matio.load_matrix(args.epsprime)
    model = build_hermite_model(s.shape[0] // 2, e.shape[0])
    res = mp_factorize(model, s, e)
    out = {
        "path": [[label, t] for label, t in res.path],
        "scalar": {"re": res.c.real, "im": res.c.imag},
        "scalarResidual": res.scalar_residual,
        "ok": res.ok,
    }
    _emit(json.dumps(out) + "\n", args.out)
    return 0 if res.ok else 1


def _mp_monodromy_cmd(args) -> int:
    from .weyl import build_hermite_model, mp_monodromy
    model = build_hermite_model(1, args.cutoff or 32)
    out = mp_monodromy(model)
    _emit(json.dumps(out) + "\n", args.out)
    return 0 if out["pass"] else 1


def _bench_cmd(args) -> int:
    from .bench import run_benchmark
    run_benchmark(seed=args.seed, repeats=args.repeats)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="spincert", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    for name in SUITE_NAMES:
        if name in ("gamma", "factorize", "u-embed", "so-obstruction"):
            continue
        p = sub.add_parser(name, help=f"run the {name} suite")
        _add_common(p)
        _suite_params(p)
        p.set_defaults(func=lambda a, n=name: _run_suite_cmd(n, a))

    p = sub.add_parser("gamma", help="gamma suite, or emit matrices when --n is given")
    _add_common(p)
    _suite_params(p)
    p.add_argument("--branch", choices=["+", "-", "+1", "-1"])
    p.set_defaults(func=_gamma_cmd)

    p = sub.add_parser("factorize", help="factorize suite, or one sample from files")
    _add_common(p)
    _suite_params(p)
    p.add_argument("--pprime", help="rotation matrix JSON file")
    p.add_argument("--epsprime", help="representation matrix JSON file")
    p.add_argument("--unitary", action="store_true", help="require |c| = 1")
    p.set_defaults(func=_factorize_cmd)

    p = sub.add_parser("u-embed", help="unitary-group instance checks")
    _add_common(p)
    _suite_params(p)
    p.set_defaults(func=lambda a: _run_suite_cmd("u-embed", a))

    p = sub.add_parser("so-obstruction", help="rotation-group obstruction report")
    _add_common(p)
    _suite_params(p)
    p.set_defaults(func=lambda a: _run_suite_cmd("so-obstruction", a))

    p = sub.add_parser("spin-lift", help="lift a rotation matrix from JSON")
    _add_common(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--in", dest="infile", required=True, help="rotation matrix JSON")
    p.set_defaults(func=_spin_lift_cmd)

    p = sub.add_parser("monodromy", help="plane-rotation loop monodromy")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--plane", default="1,2", help="1-based coordinate pair, e.g. 1,2")
    p.add_argument("--turns", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=1000)
    p.set_defaults(func=_monodromy_cmd)

    p = sub.add_parser("dirac-verify", help="squared-operator identity checks")
    _add_common(p)
    _suite_params(p)
    p.add_argument("--paper-gammas", action="store_true",
                   help="restrict to the classical 2x2 triple (n = 3)")
    p.set_defaults(func=lambda a: _run_suite_cmd(
        "dirac", a) if not a.paper_gammas else _dirac_paper_cmd(a))

    p = sub.add_parser("weyl-verify", help="ladder-operator and commutator checks")
    _add_common(p)
    _suite_params(p)
    p.set_defaults(func=lambda a: _run_suite_cmd("weyl", a))

    p = sub.add_parser("mp-verify", help="quantized flow checks")
    _add_common(p)
    _suite_params(p)
    p.set_defaults(func=lambda a: _run_suite_cmd("mp", a))

    p = sub.add_parser("mp-monodromy", help="oscillator-loop sign flip")
    _add_common(p)
    p.add_argument("--cutoff", type=int, default=int(_env("cutoff", 32)))
    p.set_defaults(func=_mp_monodromy_cmd)

    p = sub.add_parser("mp-factorize", help="factor one symplectic sample from files")
    _add_common(p)
    p.add_argument("--pprime", required=True, help="symplectic matrix JSON file")
    p.add_argument("--epsprime", required=True, help="action matrix JSON file")
    p.set_defaults(func=_mp_factorize_cmd)

    p = sub.add_parser("bench", help="compare compiled and pure kernels")
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=_bench_cmd)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpincertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def _dirac_paper_cmd(args) -> int:
    """--paper-gammas: identity checks against the fixed classical triple."""
    from . import dirac as dr
    from .gamma import paper_gamma3
    cfg = _config(args)
    rng = cfg.stream("dirac.paper-cli")
    gam = dr.ExactGamma(paper_gamma3())
    count = int(cfg.param("count", 100))
    degree = int(cfg.param("degree", 5))
    failures = 0
    for _ in range(count):
        f = dr.random_poly_spinor(3, 2, degree, rng)
        if not dr.verify_square(gam, f):
            failures += 1
    out = {"check": "dirac.square-paper-cli",
           "params": {"count": count, "degree": degree, "failures": failures},
           "residual": None, "tol": None, "pass": failures == 0}
    _emit(json.dumps([out]) + "\n", cfg.output_path)
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
