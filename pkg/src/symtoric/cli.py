"""Batch front-end: JSON in, deterministic JSON report out.

Commands:
  check <file>                     stratum-by-stratum unimodularity report
  classify <file> --n N            Picard presentation + manifold classes
  torsor <file> --n N [--seed S]   torsor-axiom verification
  local --model k,l [...]          local-model numeric suite

Exit codes: 0 all checks pass, 1 a mathematical check fails, 2 bad input.
Set SYMTORIC_VERBOSE=1 for progress lines on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cohomology import CohomologyError
from .complexes import ComplexError, SimplicialComplex, abstract_complex, triangulate
from .domain import DomainError, PolyhedralDomain, check_unimodular_local_embedding
from .lattice import LatticeError
from .localmodels import run_suite
from .torsor import StmTorsor, TorsorError, picard_group, verify_torsor

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1000
DEFAULT_STEP = 1e-4

InputError = (
    DomainError,
    ComplexError,
    CohomologyError,
    LatticeError,
    TorsorError,
    json.JSONDecodeError,
    OSError,
    KeyError,
    TypeError,
    ValueError,
    ZeroDivisionError,
)


def _verbose(message: str) -> None:
    if os.environ.get("SYMTORIC_VERBOSE"):
        print(message, file=sys.stderr)


def _config(args) -> dict:
    return {
        "seed": getattr(args, "seed", DEFAULT_SEED),
        "samples": getattr(args, "samples", DEFAULT_SAMPLES),
        "h": getattr(args, "h", DEFAULT_STEP),
    }


def _load_input(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError("top-level JSON must be an object")
    if "cells" in data:
        return PolyhedralDomain.from_json(data)
    if "maximal_simplices" in data:
        return abstract_complex(data)
    raise DomainError("input is neither a polyhedral domain nor a complex")


def _check_report(domain: PolyhedralDomain) -> tuple[dict, bool]:
    reports = check_unimodular_local_embedding(domain)
    verdict = all(r.unimodular for r in reports)
    return {
        "ambient_dim": domain.ambient_dim,
        "strata": [r.as_json_dict() for r in reports],
        "stratum_count": len(reports),
        "all_unimodular": verdict,
    }, verdict


def cmd_check(args) -> int:
    space = _load_input(args.input)
    if not isinstance(space, PolyhedralDomain):
        raise DomainError("check expects a polyhedral domain input")
    _verbose(f"checking {len(space.cells)} cell(s)")
    body, verdict = _check_report(space)
    report = {"command": "check", "input": args.input, "config": _config(args), **body}
    _emit(report, args)
    return 0 if verdict else 1


def _classification(space, n: int):
    group = picard_group(space, n)
    torsor = StmTorsor(group)
    body = {
        "picard": group.presentation.as_json_dict(),
        "provenance": group.provenance,
        "stm_count": torsor.class_count(),
    }
    if group.is_finite and group.order <= 64:
        body["stm_classes"] = [
            cls.cls.coords_json() for cls in group.elements()
        ]
    return group, torsor, body


def cmd_classify(args) -> int:
    space = _load_input(args.input)
    report = {"command": "classify", "input": args.input, "n": args.n, "config": _config(args)}
    if isinstance(space, PolyhedralDomain):
        check_body, verdict = _check_report(space)
        report["unimodular_local_embedding"] = verdict
        if not verdict:
            report["strata"] = check_body["strata"]
            _emit(report, args)
            return 1
    _verbose("computing degree-2 cohomology")
    _, _, body = _classification(space, args.n)
    report.update(body)
    _emit(report, args)
    return 0


def cmd_torsor(args) -> int:
    space = _load_input(args.input)
    report = {"command": "torsor", "input": args.input, "n": args.n, "config": _config(args)}
    if isinstance(space, PolyhedralDomain):
        _, verdict = _check_report(space)
        report["unimodular_local_embedding"] = verdict
        if not verdict:
            _emit(report, args)
            return 1
    _, torsor, body = _classification(space, args.n)
    report.update(body)
    _verbose("verifying torsor axioms")
    verification = verify_torsor(torsor, seed=args.seed, samples=args.samples)
    report["torsor_axioms"] = verification["torsor_axioms"]
    report["witnesses"] = verification["witnesses"]
    report["base_orbit_bijective"] = verification["base_orbit_bijective"]
    report["mode"] = verification["mode"]
    report["all_pass"] = verification["all_pass"]
    _emit(report, args)
    return 0 if verification["all_pass"] else 1


def cmd_local(args) -> int:
    try:
        k_str, l_str = args.model.split(",")
        k, l = int(k_str), int(l_str)
    except ValueError as exc:
        raise DomainError(f"--model expects 'k,l' integers: {exc}") from exc
    if k + l < 1:
        raise DomainError("--model needs k + l >= 1")
    _verbose(f"running local-model suite for ({k},{l})")
    suite = run_suite(k, l, samples=args.samples, h=args.h, seed=args.seed)
    report = {"command": "local", "config": _config(args), **suite}
    _emit(report, args)
    return 0 if suite["all_pass"] else 1


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtoric",
        description="Unimodularity checks, cohomology classification, and "
        "torsor verification for symplectic toric data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="JSON domain or complex file")
        p.add_argument("--output", help="write the JSON report here instead of stdout")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        p.add_argument("--h", type=float, default=DEFAULT_STEP)

    p_check = sub.add_parser("check", help="unimodular local embedding check")
    common(p_check)
    p_check.set_defaults(func=cmd_check)

    p_classify = sub.add_parser("classify", help="Picard group and manifold classes")
    common(p_classify)
    p_classify.add_argument("--n", type=int, required=True, help="torus dimension")
    p_classify.set_defaults(func=cmd_classify)

    p_torsor = sub.add_parser("torsor", help="verify the torsor axioms")
    common(p_torsor)
    p_torsor.add_argument("--n", type=int, required=True, help="torus dimension")
    p_torsor.set_defaults(func=cmd_torsor)

    p_local = sub.add_parser("local", help="local-model numeric suite")
    common(p_local, needs_input=False)
    p_local.add_argument("--model", required=True, help="chart signature 'k,l'")
    p_local.set_defaults(func=cmd_local)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        error = {"command": args.command, "error": f"{type(exc).__name__}: {exc}"}
        sys.stdout.write(json.dumps(error, indent=2) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
