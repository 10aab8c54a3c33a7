"""Command-line front end.

Exit codes: 0 certified / true, 1 not certified / false, 2 input error,
3 degenerate configuration.
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys

import numpy as np

from . import numeric
from .document import SCHEMA_VERSION, dumps, framework_document, load_framework, load_graph
from .errors import CertificateRefused, DegenerateConfigurationError, GenericityError, ParameterError
from .extension import certify_construction, random_construction, step_from_dict
from .fixtures import FIXTURE_NAMES, fixture
from .graph import is_k_connected, is_k_sparse, is_k_tight
from .rigidity import (
    certify_global_rigidity,
    configuration_matrix,
    equilibrium_stress_basis,
    is_redundantly_rigid,
    rigidity_rank,
    stress_rank,
    verify_equilibrium,
)
from .surface import Kind

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _mode(args):
    if getattr(args, "exact", False):
        return "exact"
    if getattr(args, "float", False):
        return "float"
    return "auto"


def _seed(args):
    if args.seed is None:
        args.seed = secrets.randbits(63)
        print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _emit(report):
    print(dumps(report))


def cmd_analyze(args):
    fw, given = load_framework(_read_json(args.file), _mode(args))
    tol = args.tol
    basis = equilibrium_stress_basis(fw, tol)
    r = rigidity_rank(fw, tol)
    report = {
        "schema": SCHEMA_VERSION,
        "exact": fw.exact,
        "n": fw.n,
        "m": fw.m,
        "surface": fw.kind.value,
        "ell": fw.family.ell,
        "mu": fw.family.mu,
        "rigidity_rank": r,
        "rigid_rank_target": 3 * fw.n - fw.family.ell,
        "infinitesimally_rigid": r == 3 * fw.n - fw.family.ell,
        "stress_space_dim": len(basis),
        "configuration_rank": numeric.rank(configuration_matrix(fw), tol),
        "fully_realised": numeric.rank(configuration_matrix(fw), tol) == fw.family.mu,
        "stress_ranks": [stress_rank(fw, s, tol) for s in basis],
        "max_stress_rank_target": 3 * fw.n - fw.family.mu,
    }
    if given is not None:
        report["given_stress"] = {
            "equilibrium": verify_equilibrium(fw, given, tol),
            "stress_rank": stress_rank(fw, given, tol),
        }
    _emit(report)
    return EXIT_OK


def cmd_certify(args):
    if args.base is None and args.file is None:
        raise InputError("certify needs a framework file or --base")
    seed = _seed(args)
    if args.base is not None:
        kind = Kind.parse(args.surface)
        base = fixture(args.base)
        if args.steps is not None:
            steps_doc = _read_json(args.steps)
            if isinstance(steps_doc, dict):
                steps_doc = steps_doc.get("steps", [])
            if not isinstance(steps_doc, list):
                raise InputError("steps file must hold a list of steps")
            steps = [step_from_dict(d) for d in steps_doc]
        elif args.random_steps:
            steps = random_construction(base.graph, np.random.default_rng(seed), args.random_steps, 1)
        else:
            steps = []
        cert = certify_construction(base.name, steps, kind, seed=seed, attempts=args.attempts, tol=args.tol)
        report = {"schema": SCHEMA_VERSION, **cert.to_dict()}
        _emit(report)
        return EXIT_OK if cert.passed else EXIT_FALSE
    fw, _ = load_framework(_read_json(args.file), _mode(args))
    route = args.route.replace("-", "_")
    if route == "max_rank":
        route = "max_rank_generic"
    cert = certify_global_rigidity(fw, attempts=args.attempts, route=route,
                                   genericity="asserted" if args.generic else None,
                                   seed=seed, tol=args.tol)
    report = {
        "schema": SCHEMA_VERSION,
        "surface": cert.kind.value,
        "n": cert.n,
        "m": cert.m,
        "theorem": cert.theorem.value,
        "certified": cert.certified,
        "stress_rank": cert.stress_rank,
        "target_stress_rank": cert.target_rank,
        "rigidity_rank": cert.rigidity_rank,
        "infinitesimally_rigid": cert.infinitesimally_rigid,
        "fully_realised": cert.fully_realised,
        "psd": cert.psd,
        "genericity": cert.genericity,
        "seed": cert.seed,
        "stress": {"omega": list(cert.stress.omega), "lambda": list(cert.stress.lam)},
        "notes": cert.notes,
    }
    _emit(report)
    return EXIT_OK if cert.certified else EXIT_FALSE


def cmd_sparsity(args):
    g = load_graph(_read_json(args.file))
    sparse = is_k_sparse(g, args.k)
    report = {"schema": SCHEMA_VERSION, "n": g.n, "m": g.m, "k": args.k,
              "sparse": sparse, "tight": is_k_tight(g, args.k)}
    _emit(report)
    return EXIT_OK if sparse else EXIT_FALSE


def cmd_hendrickson(args):
    g = load_graph(_read_json(args.file))
    kind = Kind.parse(args.surface)
    seed = _seed(args)
    k = 1 if kind is Kind.ELLIPSOID else 2
    connected = is_k_connected(g, k)
    redundant = is_redundantly_rigid(g, kind, np.random.default_rng(seed), tol=args.tol)
    passes = connected and redundant
    report = {"schema": SCHEMA_VERSION, "n": g.n, "m": g.m, "surface": kind.value, "seed": seed,
              "connectivity_required": k, "k_connected": connected,
              "redundantly_rigid": redundant, "passes": passes}
    _emit(report)
    return EXIT_OK if passes else EXIT_FALSE


def cmd_fixture(args):
    fx = fixture(args.name)
    doc = framework_document(fx.framework(), fx.stress, induced=args.induced)
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="surfrigid",
                                description="Rigidity tools for frameworks on concentric surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def numbers(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--exact", action="store_true", help="rational arithmetic")
        g.add_argument("--float", action="store_true", help="floating point arithmetic")
        sp.add_argument("--tol", type=float, default=numeric.DEFAULT_TOL, help="relative rank tolerance")

    a = sub.add_parser("analyze", help="ranks, stresses and realisation checks for a framework")
    a.add_argument("file")
    numbers(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("certify", help="global rigidity certificate for a framework or a construction")
    c.add_argument("file", nargs="?")
    c.add_argument("--base", help=f"base fixture ({', '.join(FIXTURE_NAMES)})")
    c.add_argument("--steps", help="JSON list of construction steps")
    c.add_argument("--random-steps", type=int, default=0, metavar="N",
                   help="N random 1-extensions plus one edge addition")
    c.add_argument("--surface", default="cylinder", choices=["cylinder", "ellipsoid", "cone"])
    c.add_argument("--route", default="auto", choices=["auto", "max-rank", "psd"])
    c.add_argument("--generic", action="store_true", help="assert the realization is generic")
    c.add_argument("--attempts", type=int, default=20)
    c.add_argument("--seed", type=int)
    numbers(c)
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("sparsity", help="(2,k)-sparsity via the pebble game")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True, choices=[1, 2, 3])
    s.set_defaults(func=cmd_sparsity)

    h = sub.add_parser("hendrickson", help="connectivity and redundant rigidity screen")
    h.add_argument("file")
    h.add_argument("--surface", default="cylinder", choices=["cylinder", "cone", "ellipsoid"])
    h.add_argument("--seed", type=int)
    h.add_argument("--tol", type=float, default=numeric.DEFAULT_TOL)
    h.set_defaults(func=cmd_hendrickson)

    f = sub.add_parser("fixture", help="emit a base framework as a JSON document")
    f.add_argument("name", choices=list(FIXTURE_NAMES))
    f.add_argument("--emit", action="store_true", help="write the document (default behaviour)")
    f.add_argument("--induced", action="store_true", help="write radii as 'induced'")
    f.add_argument("--output", "-o")
    f.set_defaults(func=cmd_fixture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegenerateConfigurationError as exc:
        print(f"error: degenerate configuration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except CertificateRefused as exc:
        print(f"error: refused: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
