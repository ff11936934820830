"""Command-line surface: ``tauh {dual|transform|verify|catalog}``.

Targets are either catalog names (``affine:5``, ``heisenberg:3``,
``motion:4``, ``affine-continuum:default``) or paths to group-spec JSON
files.  Exit codes are scriptable: 0 success, 1 a verification check
failed, 2 bad input (malformed JSON, invalid spec, unknown name), 3
contract misuse (function side does not match the transform direction).
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import _kernels, affine, io, suites, transforms
from .affine import AffineGrid
from .catalog import families, get_entry, verify_dual_law
from .exceptions import DomainError, SideMismatchError, SpecFormatError, TauharmError
from .semidirect import TauSystem

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_CONTRACT = 3


def resolve_target(name: str):
    """Map a CLI target to (system-or-grid, catalog entry or None, display name)."""
    if name.startswith("affine-continuum:"):
        arg = name.split(":", 1)[1]
        if arg != "default":
            raise SpecFormatError(
                f"unknown continuum grid {arg!r}; only 'affine-continuum:default' is built in"
            )
        return AffineGrid.default(), None, name
    family = name.split(":", 1)[0]
    if family in families():
        entry = get_entry(name)
        return entry.system, entry, entry.name
    doc = io.load_json(name)
    return io.target_from_dict(doc), None, name


def _emit(doc, path, label):
    text = io.dump_json(doc, path)
    if path is None:
        print(text)
    else:
        print(f"{label} written to {path}")


def _format_cayley(system: TauSystem) -> list[str]:
    labels = [str(lab) for lab in system.labels]
    width = max(len(s) for s in labels) + 1
    lines = ["acting-group Cayley table:"]
    header = " " * width + "|" + "".join(s.rjust(width) for s in labels)
    lines.append("  " + header)
    lines.append("  " + "-" * len(header))
    for i, row_label in enumerate(labels):
        row = "".join(str(system.labels[system.cayley[i, j]]).rjust(width) for j in range(len(labels)))
        lines.append("  " + row_label.rjust(width) + "|" + row)
    return lines


def cmd_dual(args) -> int:
    target, entry, name = resolve_target(args.target)
    if isinstance(target, AffineGrid):
        print(f"tau-dual of {name}: underlying set (0, inf) x R with law (a, w)(a', w') = (aa', w + w'/a)")
        print("left Haar measure of the dual: da dw (weights 1/delta(a) = a against da/a)")
        _emit(io.grid_to_dict(target), args.output, "dual grid spec")
        return EXIT_OK

    system: TauSystem = target
    dual = system.dual()
    primal_fail = suites._axioms_failures(system, np.random.default_rng(0))
    dual_fail = suites._axioms_failures(dual, np.random.default_rng(0))
    print(f"tau-dual of {name}: |H| = {system.acting_order}, K = Z{list(system.normal_factor.divisors)}")
    print(f"group axioms (primal): {'OK' if primal_fail == 0 else f'{primal_fail} failures'}")
    print(f"group axioms (dual):   {'OK' if dual_fail == 0 else f'{dual_fail} failures'}")
    if entry is not None:
        pairs = verify_dual_law(entry)
        print(f"dual law vs closed-form oracle: OK ({pairs} pairs)")
    if system.acting_order <= 12:
        for line in _format_cayley(system):
            print(line)
    _emit(io.system_to_dict(dual), args.output, "dual group spec")
    return EXIT_OK if primal_fail == 0 and dual_fail == 0 else EXIT_CHECK_FAILED


def cmd_transform(args) -> int:
    target, _, name = resolve_target(args.target)
    doc = io.load_json(args.function)
    fn = io.function_from_dict(doc, target)

    if isinstance(target, TauSystem):
        if args.inverse:
            forward = transforms.tau_fourier_inverse if args.variant == "plain" else transforms.gen_tau_fourier_inverse
            out = forward(fn)
        else:
            forward = transforms.tau_fourier if args.variant == "plain" else transforms.gen_tau_fourier
            out = forward(fn).function
        in_norm, out_norm = fn.norm(), out.norm()
    else:
        if args.inverse:
            out = affine.reconstruct(fn, args.variant)
        else:
            forward = affine.tau_fourier if args.variant == "plain" else affine.gen_tau_fourier
            out = forward(fn)
        norm_of = lambda f: math.sqrt(
            affine.primal_norm_sq(f) if f.side == "primal" else affine.dual_norm_sq(f)
        )
        in_norm, out_norm = norm_of(fn), norm_of(out)

    print(f"{name}: {args.variant} {'inverse' if args.inverse else 'forward'} transform", file=sys.stderr)
    print(f"input  L2 norm ({fn.side} weights): {in_norm!r}", file=sys.stderr)
    print(f"output L2 norm ({out.side} weights): {out_norm!r}", file=sys.stderr)
    _emit(io.function_to_dict(out), args.output, "function file")
    return EXIT_OK


def cmd_verify(args) -> int:
    target, entry, name = resolve_target(args.target)
    results = suites.run_checks(entry or target, args.suite, args.trials, args.seed, args.tol)
    passed = all(r.passed for r in results)
    report = {
        "target": name,
        "suite": args.suite,
        "trials": args.trials,
        "seed": args.seed,
        "tolerance_override": args.tol,
        "backend": _kernels.backend_name(),
        "checks": [
            {"name": r.name, "residual": r.residual, "tolerance": r.tolerance, "passed": r.passed}
            for r in results
        ],
        "max_residual": max((r.residual for r in results), default=0.0),
        "passed": passed,
    }
    print(io.dump_json(report))
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def cmd_catalog(args) -> int:
    if args.name is None:
        print("built-in families (instantiate with <family>:<n>):")
        for family in families():
            entry = get_entry(f"{family}:4" if family != "heisenberg" else "heisenberg:3")
            print(f"  {family:<12} e.g. {entry.name:<14} |H|*|K| = {entry.system.order:<6} {entry.notes}")
        print("  affine-continuum:default   sampled (0, inf) x R grid for quadrature runs")
        return EXIT_OK
    target, entry, name = resolve_target(args.name)
    _emit(io.target_to_dict(target), args.output, f"group spec for {name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tauh",
        description="Dual groups and transforms on semi-direct products with abelian normal factor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dual = sub.add_parser("dual", help="construct the tau-dual group and report its validation")
    p_dual.add_argument("target", help="catalog name or group-spec JSON path")
    p_dual.add_argument("-o", "--output", help="write the dual group spec here (default: stdout)")
    p_dual.set_defaults(fn=cmd_dual)

    p_tr = sub.add_parser("transform", help="apply a transform to a function file")
    p_tr.add_argument("target", help="catalog name or group-spec JSON path")
    p_tr.add_argument("function", help="function-file JSON path")
    p_tr.add_argument("--variant", choices=("plain", "generalized"), default="plain")
    p_tr.add_argument("--inverse", action="store_true", help="apply the inverse transform")
    p_tr.add_argument("-o", "--output", help="write the transformed function here (default: stdout)")
    p_tr.set_defaults(fn=cmd_transform)

    p_ver = sub.add_parser("verify", help="run invariant suites and print a JSON report")
    p_ver.add_argument("target", help="catalog name or group-spec JSON path")
    p_ver.add_argument("--suite", choices=("all",) + suites.SUITES, default="all")
    p_ver.add_argument("--trials", type=int, default=100, help="randomized trials per check (0: empty report)")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    p_ver.set_defaults(fn=cmd_verify)

    p_cat = sub.add_parser("catalog", help="list built-in groups or dump one as a spec file")
    p_cat.add_argument("name", nargs="?", help="catalog name to dump (omit to list)")
    p_cat.add_argument("-o", "--output", help="write the spec here (default: stdout)")
    p_cat.set_defaults(fn=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SideMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (SpecFormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except TauharmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
