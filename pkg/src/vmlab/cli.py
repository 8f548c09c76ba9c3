"""Batch command-line front end.

Reads JSON instances, runs one library operation, and writes a JSON report
(to ``--out`` or stdout). Exit codes: 0 success, 1 a ``verify`` check
failed, 2 validation or guard error, 64 unknown subcommand, 65 malformed
JSON input, 74 unreadable or unwritable file.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import acceptance, serialize
from .counterexamples import (KotheExampleConfig, PettisExampleConfig,
                              kothe_dual_witnesses, kothe_example,
                              pettis_example)
from .dunford import (averaging, bochner_norm, dunford_norm,
                      pair, sv_profile, zfp_ui_modulus)
from .errors import MalformedInput, VMLabError
from .normed import EXACT, MULTISTART
from .space import CAPACITY_TOL, MASS_TOL, lp_norm
from .summing import (CERT_TOL, compose_function, compose_measure, dual_sphere,
                      pi_p_lower, pietsch_lp_upper, primal_directions,
                      verify_composition_bound, verify_measure_bound)
from .thickness import (DEFAULT_GRID_EPS, thickness_chain_profile,
                        thickness_norm_bound, thickness_radius)
from .variation import p_semivariation, p_variation, semivariation_over_subset

__all__ = ["main", "run", "emit_csv", "SUBCOMMANDS",
           "EXIT_OK", "EXIT_FAILED", "EXIT_INVALID", "EXIT_UNKNOWN",
           "EXIT_MALFORMED", "EXIT_IO"]

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2
EXIT_UNKNOWN, EXIT_MALFORMED, EXIT_IO = 64, 65, 74

LP_ESTIMATE = "lp-estimate"
HEURISTIC_LOWER = "heuristic-lower-bound"

TOLERANCES = {"mass": MASS_TOL, "capacity": CAPACITY_TOL, "certificate": CERT_TOL}


def _flag(certified: str) -> str:
    return EXACT if certified == EXACT else HEURISTIC_LOWER


def _val(value, flag, **extra):
    out = {"value": float(value), "flag": flag}
    out.update(extra)
    return out


def emit_csv(profile, path) -> None:
    """Write ``index,value`` rows (index from 1, 17 significant digits)."""
    values = list(profile)
    if not values:
        raise VMLabError("cannot write an empty profile")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "value"])
        for i, v in enumerate(values, 1):
            w.writerow([i, "%.17g" % float(v)])


# -- subcommand handlers: each returns the results dict -------------------

def _cmd_dunford_norm(a):
    f = serialize.load_file(serialize.SimpleFunction, a.function)
    r = dunford_norm(f, a.p, seed=a.seed)
    return {"dunford_norm": _val(r.value, _flag(r.certified), witness=r.witness.tolist())}


def _cmd_bochner_norm(a):
    f = serialize.load_file(serialize.SimpleFunction, a.function)
    return {"bochner_norm": _val(bochner_norm(f, a.p), EXACT)}


def _cmd_svprofile(a):
    f = serialize.load_file(serialize.SimpleFunction, a.function)
    sv = sv_profile(f, a.p)
    if a.csv:
        emit_csv(sv, a.csv)
    return {"sv_profile": {"values": sv.tolist(), "flag": EXACT}}


def _cmd_defect(a):
    f = serialize.load_file(serialize.SimpleFunction, a.function)
    with open(a.partition, encoding="utf-8") as fh:
        P = serialize.partition_from_json(_parse(fh.read()), f.space.n)
    r = dunford_norm(f - averaging(f, P), a.p, seed=a.seed)
    return {"defect": _val(r.value, _flag(r.certified), witness=r.witness.tolist(),
                           partition=serialize.to_json(P))}


def _cmd_ui_modulus(a):
    f = serialize.load_file(serialize.SimpleFunction, a.function)
    deltas = a.delta if a.delta else [4.0 ** -k for k in range(1, f.space.n + 1)]
    rep = zfp_ui_modulus(f, a.p, deltas, seed=a.seed)
    flag = _flag(rep.certified)
    return {"ui_modulus": [
        _val(v, flag, delta=d, witness=w.tolist(), atoms=list(A))
        for d, v, (w, A) in zip(rep.deltas, rep.values, rep.witnesses)]}


def _cmd_variation(a):
    nu = serialize.load_file(serialize.VectorMeasure, a.measure)
    return {"variation": _val(p_variation(nu, a.p, a.method), EXACT, method=a.method)}


def _cmd_semivariation(a):
    nu = serialize.load_file(serialize.VectorMeasure, a.measure)
    out = {}
    r = p_semivariation(nu, a.p, seed=a.seed)
    out["semivariation"] = _val(r.value, _flag(r.certified), witness=r.witness.tolist())
    if a.functionals:
        with open(a.functionals, encoding="utf-8") as fh:
            F = _parse(fh.read())
        # the sup over a finite subset is itself exact; as an estimate of the
        # full semivariation it is a lower bound
        out["semivariation_over_subset"] = _val(semivariation_over_subset(nu, a.p, F), EXACT)
    return out


def _cmd_summing_lower(a):
    u = serialize.load_file(serialize.LinearOperator, a.operator)
    r = pi_p_lower(u, a.p, seed=a.seed)
    # each family ratio is certified, but the family search is heuristic
    return {"pi_p_lower": _val(r.value, HEURISTIC_LOWER, family=np.asarray(r.family).tolist())}


def _pietsch(u, p, a, extra_tests=None):
    sphere = dual_sphere(u.domain, a.grid_points, a.seed)
    tests = primal_directions(u.domain, a.tests, a.seed)
    if extra_tests is not None and len(extra_tests):
        tests = np.concatenate([np.asarray(extra_tests, dtype=float), tests])
    return pietsch_lp_upper(u, p, sphere, tests)


def _cmd_pietsch_lp(a):
    u = serialize.load_file(serialize.LinearOperator, a.operator)
    cert = _pietsch(u, a.p, a)
    return {"pietsch_constant": _val(cert.constant, LP_ESTIMATE),
            "max_violation": _val(cert.violation(u), EXACT),
            "certificate": serialize.to_json(cert)}


def _cmd_compose(a):
    u = serialize.load_file(serialize.LinearOperator, a.operator)
    p = a.p
    if (a.function is None) == (a.measure is None):
        raise VMLabError("compose needs exactly one of --function or --measure")
    if a.function is not None:
        f = serialize.load_file(serialize.SimpleFunction, a.function)
        rows = f.space.masses[:, None] ** (1 / p) * f.values
        cert = (serialize.load_file(serialize.PietschCertificate, a.certificate)
                if a.certificate else _pietsch(u, p, a, rows))
        rep = verify_composition_bound(u, f, p, cert)
        composed = serialize.to_json(compose_function(u, f))
        lhs_name = "bochner_norm_of_composition"
    else:
        nu = serialize.load_file(serialize.VectorMeasure, a.measure)
        rows = nu.atom_values / nu.space.masses[:, None] ** (1 - 1 / p)
        cert = (serialize.load_file(serialize.PietschCertificate, a.certificate)
                if a.certificate else _pietsch(u, p, a, rows))
        rep = verify_measure_bound(u, nu, p, cert)
        composed = serialize.to_json(compose_measure(u, nu))
        lhs_name = "variation_of_composition"
    return {lhs_name: _val(rep.lhs, EXACT),
            "dunford_side": _val(rep.dunford, _flag(rep.certified)),
            "constant": _val(rep.constant, LP_ESTIMATE),
            "rhs": _val(rep.rhs, LP_ESTIMATE),
            "holds": rep.holds, "slack": float(rep.slack),
            "composed": composed, "certificate": serialize.to_json(cert)}


def _cmd_counterexample(a):
    if a.which == "pettis":
        if a.levels is None:
            raise VMLabError("counterexample pettis needs --levels")
        f = pettis_example(PettisExampleConfig(a.levels, a.p))
        dn = dunford_norm(f, a.p, seed=a.seed)
        out = {"function": serialize.to_json(f),
               "dunford_norm": _val(dn.value, _flag(dn.certified)),
               "bochner_norm": _val(bochner_norm(f, a.p), EXACT)}
        if a.p == 2:
            out["sv_profile"] = {"values": sv_profile(f, 2).tolist(), "flag": EXACT}
        deltas = [4.0 ** -n for n in range(1, a.levels + 1)]
        rep = zfp_ui_modulus(f, a.p, deltas, seed=a.seed)
        out["ui_modulus"] = [_val(v, _flag(rep.certified), delta=d)
                             for d, v in zip(rep.deltas, rep.values)]
        return out
    masses = a.masses if a.masses else [0.25, 0.25, 0.25, 0.25]
    cfg = KotheExampleConfig(a.p, tuple(masses))
    phi = kothe_example(cfg)
    images = [pair(phi, g) for g in kothe_dual_witnesses(cfg)]
    dn = dunford_norm(phi, a.p, seed=a.seed)
    return {"function": serialize.to_json(phi),
            "dunford_norm": _val(dn.value, _flag(dn.certified)),
            "image_norms": [_val(lp_norm(phi.space, im, a.p), EXACT) for im in images],
            "images_disjoint": bool(np.all(np.count_nonzero(np.array(images), axis=0) <= 1))}


def _cmd_thickness(a):
    inst = serialize.load_file(serialize.ThicknessInstance, a.instance)
    eps = a.grid if a.grid is not None else DEFAULT_GRID_EPS
    r = thickness_radius(inst, eps)
    flag = EXACT if r.exact else "certified-interval"
    out = {"radius": {"lower": r.lower, "upper": r.upper, "flag": flag,
                      "witness": np.asarray(r.witness).tolist(), "grid_eps": eps}}
    if inst.chain is not None:
        out["chain_profile"] = {"values": thickness_chain_profile(inst, eps),
                                "flag": EXACT if inst.descriptor.dim <= 2 else "certified-lower-bound"}
    if a.function:
        f = serialize.load_file(serialize.SimpleFunction, a.function)
        rep = thickness_norm_bound(f, inst, a.p, eps, radius=r)
        out["norm_bound"] = {"level": rep.level, "bound": rep.bound,
                             "dunford": _val(rep.dunford, _flag(rep.certified)),
                             "holds": rep.holds}
    return out


def _cmd_verify(a):
    keys = None if a.suite == "all" else [k.strip() for k in a.suite.split(",") if k.strip()]
    if keys is not None:
        bad = [k for k in keys if k not in acceptance.CRITERIA]
        if bad:
            raise VMLabError(f"unknown criteria {bad}; choose from {list(acceptance.CRITERIA)}")
    outcomes = acceptance.run_criteria(keys)
    for o in outcomes:
        print(o.line(), file=sys.stderr)
    return {"criteria": [{"id": o.key, "title": o.title, "passed": o.passed,
                          "detail": _jsonable(o.detail)} for o in outcomes],
            "all_passed": all(o.passed for o in outcomes)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def _parse(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


# -- argument parsing -------------------------------------------------------

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, default=2.0, help="integrability exponent (default 2)")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    ap = argparse.ArgumentParser(prog="vmlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(handler=handler)
        return s

    for name, h, hp in [("dunford-norm", _cmd_dunford_norm, "sup of ||<f,x*>||_p over the dual ball"),
                        ("bochner-norm", _cmd_bochner_norm, "(int ||f||^p)^(1/p)")]:
        add(name, h, hp).add_argument("--function", required=True)
    s = add("svprofile", _cmd_svprofile, "singular values of x* -> <f,x*> (Hilbert codomain, p = 2)")
    s.add_argument("--function", required=True)
    s.add_argument("--csv", help="also write the profile as index,value CSV")
    s = add("defect", _cmd_defect, "Dunford norm of f minus its partition average")
    s.add_argument("--function", required=True)
    s.add_argument("--partition", required=True)
    s = add("ui-modulus", _cmd_ui_modulus, "uniform-integrability modulus of {|<f,x*>|^p}")
    s.add_argument("--function", required=True)
    s.add_argument("--delta", type=float, nargs="+")
    s = add("variation", _cmd_variation, "p-variation of a vector measure")
    s.add_argument("--measure", required=True)
    s.add_argument("--method", choices=["finest", "brute", "holder_dual"], default="finest")
    s = add("semivariation", _cmd_semivariation, "p-semivariation of a vector measure")
    s.add_argument("--measure", required=True)
    s.add_argument("--functionals", help="JSON list of dual vectors for a restricted sup")
    s = add("summing-lower", _cmd_summing_lower, "lower bound on the p-summing norm")
    s.add_argument("--operator", required=True)
    for name, h, hp in [("pietsch-lp", _cmd_pietsch_lp, "Pietsch-measure LP upper estimate"),
                        ("compose", _cmd_compose, "composition bound for a p-summing operator")]:
        s = add(name, h, hp)
        s.add_argument("--operator", required=True)
        s.add_argument("--grid-points", type=int, default=1000, help="dual-sphere sample size")
        s.add_argument("--tests", type=int, default=64, help="number of primal test directions")
    s.add_argument("--function")
    s.add_argument("--measure")
    s.add_argument("--certificate", help="reuse a Pietsch certificate JSON")
    s = add("counterexample", _cmd_counterexample, "build and measure a truncated classical example")
    s.add_argument("which", choices=["pettis", "kothe"])
    s.add_argument("--levels", type=int)
    s.add_argument("--masses", type=float, nargs="+", help="atom masses for the kothe example")
    s = add("thickness", _cmd_thickness, "norming radius of a finite set of functionals")
    s.add_argument("--instance", required=True)
    s.add_argument("--grid", type=float, help="sphere-net spacing for d = 3, 4")
    s.add_argument("--function", help="also bound the Dunford norm of this function")
    s = add("verify", _cmd_verify, "run the acceptance checks")
    s.add_argument("--suite", default="all", help='"all" or a comma list of criterion numbers')
    return ap, set(sub.choices)


_PARSER, SUBCOMMANDS = _build_parser()


def _input_echo(args):
    skip = {"handler", "out", "subcommand", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _write(report, path):
    text = json.dumps(report, indent=2, allow_nan=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind, exc, code):
    sys.stdout.write(json.dumps({"error": {"type": kind, "message": str(exc), "exit_code": code}}) + "\n")
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
        return _error("UnknownSubcommand", f"unknown subcommand {argv[0]!r}; "
                      f"choose from {sorted(SUBCOMMANDS)}", EXIT_UNKNOWN)
    try:
        args = _PARSER.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    t0 = time.perf_counter()
    try:
        results = args.handler(args)
    except MalformedInput as exc:
        return _error("MalformedInput", exc, EXIT_MALFORMED)
    except VMLabError as exc:
        return _error(type(exc).__name__, exc, EXIT_INVALID)
    except OSError as exc:
        return _error("IoError", exc, EXIT_IO)
    report = {
        "subcommand": args.subcommand,
        "inputs": _input_echo(args),
        "results": _jsonable(results),
        "provenance": {"seed": args.seed, "tolerances": TOLERANCES,
                       "multistart": MULTISTART,
                       "threads": os.environ.get("VMLAB_THREADS", "1"),
                       "flags": ["exact", HEURISTIC_LOWER, LP_ESTIMATE]},
        "wall_time": time.perf_counter() - t0,
    }
    try:
        _write(report, args.out)
    except OSError as exc:
        return _error("IoError", exc, EXIT_IO)
    if args.subcommand == "verify" and not results["all_passed"]:
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())
