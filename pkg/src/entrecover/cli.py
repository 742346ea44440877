"""Command-line front end. Every command prints one JSON document on stdout.

Exit codes: 0 for any computed answer (including "no"), 2 for bad input,
3 when an internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import serialization as sz
from .applications import (
    concentration_bounds,
    multicopy_recover,
    multicopy_threshold,
    mutual_catalysis_check,
    verify_concentration,
)
from .decomposition import normal_decompose
from .errors import BadParameters, InputError, RecoveryError, UnsupportedStructure
from .general import Scheme, construct_auxiliary, witness_general
from .recovery import METHODS, recover
from .selftest import run_selftest
from .uniformity import entropy, indices
from .vectors import compact, majorize

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def _cmd_majorize(args):
    x, y = sz.load_state(args.x), sz.load_state(args.y)
    report = majorize(x, y)
    return {
        "majorized": report.majorized,
        "strict": report.strict,
        "delta": sorted(report.delta_set),
        "first_violation": report.first_violation,
    }


def _cmd_indices(args):
    x = sz.load_state(args.x)
    form = compact(x)
    return {
        **indices(x).as_dict(),
        "entropy": entropy(x),
        "compact": {"values": form.values, "multiplicities": form.multiplicities},
    }


def _cmd_entropy(args):
    return {"entropy": entropy(sz.load_state(args.x))}


def _cmd_decompose(args):
    nd = normal_decompose(sz.load_state(args.psi), sz.load_state(args.phi))
    return {
        "blocks": [
            {"psi": b.source.coefficients, "phi": b.target.coefficients, "tag": b.tag}
            for b in nd.blocks
        ],
        "I": nd.equal_indices,
        "D": nd.strict_indices,
        "I_grouped": list(nd.equal_groups),
        "D_grouped": list(nd.strict_groups),
    }


def _cmd_recover(args):
    if args.batch:
        return _run_batch(args)
    if not (args.psi and args.phi and args.chi):
        raise BadParameters("recover needs PSI PHI CHI state files or --batch FILE")
    states = [sz.load_state(p) for p in (args.psi, args.phi, args.chi)]
    return recover(*states, method=args.method, grid_depth=args.grid_depth)


def _batch_item(item, default_method, default_depth):
    try:
        if not isinstance(item, dict):
            raise BadParameters("each batch entry is an object with psi, phi and chi")
        states = [sz.state_from_json(item.get(key)) for key in ("psi", "phi", "chi")]
        result = recover(
            *states,
            method=item.get("method", default_method),
            grid_depth=item.get("grid_depth", default_depth),
        )
        return sz.to_jsonable(result), EXIT_OK
    except RecoveryError as exc:
        return _error_payload(exc), exc.exit_code


def _run_batch(args):
    items = sz.read_json(args.batch)
    if not isinstance(items, list):
        raise BadParameters("a batch file holds a JSON array of instances")
    work = lambda item: _batch_item(item, args.method, args.grid_depth)  # noqa: E731
    with ThreadPoolExecutor(max_workers=max(1, args.workers)) as pool:
        outcomes = list(pool.map(work, items))
    args.batch_status = max((code for _, code in outcomes), default=EXIT_OK)
    return [payload for payload, _ in outcomes]


def _cmd_construct(args):
    psi, phi = sz.load_state(args.psi), sz.load_state(args.phi)
    scheme = None if args.scheme == "auto" else Scheme(args.scheme)
    try:
        built = construct_auxiliary(psi, phi, scheme)
    except UnsupportedStructure as exc:
        return {"constructed": False, "reason": str(exc)}
    witness = witness_general(psi, phi, built.chi, built.partition)
    return {
        "constructed": True,
        "scheme": built.scheme,
        "chi": built.chi,
        "partition": {"layout": built.partition.layout, "block_dims": built.partition.block_dims},
        "parameters": built.parameters,
        "witness": {"omega": witness.omega, "epsilon": witness.epsilon},
    }


def _cmd_concentrate(args):
    states = [p for p in (args.psi, args.phi, args.chi) if p]
    if states:
        if len(states) != 3 or args.k is None:
            raise BadParameters("verification needs PSI PHI CHI and --k")
        psi, phi, chi = (sz.load_state(p) for p in states)
        return {"achievable": verify_concentration(psi, phi, chi, args.k)}
    if args.a is None or args.b is None or args.k is None:
        raise BadParameters("bounds need --a, --b and --k")
    bounds = concentration_bounds(args.a, args.b, args.k)
    return {
        "gamma_min": bounds.gamma_min,
        "gamma_max": bounds.gamma_max,
        "largest": {"above": bounds.largest_low, "at_most": bounds.largest_high},
        "feasible": bounds.feasible,
    }


def _cmd_mutual(args):
    states = [sz.load_state(p) for p in (args.psi, args.phi, args.alpha, args.beta)]
    flags = mutual_catalysis_check(*states)
    return {
        "psi_to_phi": flags.psi_to_phi,
        "alpha_to_beta": flags.alpha_to_beta,
        "joint": flags.joint,
        "trivial_cross": flags.trivial_cross,
        "is_mutual_catalysis": flags.is_mutual_catalysis,
    }


def _cmd_k0(args):
    return {"k0": multicopy_threshold(sz.load_state(args.chi), sz.load_state(args.phi))}


def _cmd_multicopy(args):
    states = [sz.load_state(p) for p in (args.psi, args.phi, args.chi)]
    verdict = multicopy_recover(*states, copies=args.copies, mode=args.mode)
    return {"feasible": verdict.feasible, "case": verdict.case, "copies": args.copies, "mode": args.mode}


def _cmd_selftest(args):
    results = run_selftest()
    if not all(r["passed"] for r in results):
        args.batch_status = EXIT_INTERNAL
    return results


def _format_options(default) -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    style = fmt.add_mutually_exclusive_group()
    style.add_argument("--json", dest="pretty", action="store_false", default=default, help="compact output (default)")
    style.add_argument("--pretty", dest="pretty", action="store_true", default=default, help="indented output")
    return fmt


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrecover",
        description="Exact majorization tools for recovering entanglement lost in LOCC conversions.",
        parents=[_format_options(False)],
    )
    # SUPPRESS keeps a flag given before the command from being reset by the subcommand
    fmt = _format_options(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text, parents=[fmt])
        p.set_defaults(handler=handler)
        return p

    p = command("majorize", _cmd_majorize, "compare two states under majorization")
    p.add_argument("x")
    p.add_argument("y")

    p = command("indices", _cmd_indices, "uniformity indices l_u, L_u, g_u")
    p.add_argument("x")

    p = command("entropy", _cmd_entropy, "entanglement entropy in bits")
    p.add_argument("x")

    p = command("decompose", _cmd_decompose, "split psi < phi into equal and strict blocks")
    p.add_argument("psi")
    p.add_argument("phi")

    p = command("recover", _cmd_recover, "decide whether an auxiliary state can be recovered")
    p.add_argument("psi", nargs="?")
    p.add_argument("phi", nargs="?")
    p.add_argument("chi", nargs="?")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--grid-depth", type=int, default=20)
    p.add_argument("--batch", metavar="FILE", help="JSON array of {psi, phi, chi[, method]} objects")
    p.add_argument("--workers", type=int, default=1)

    p = command("construct-aux", _cmd_construct, "build an auxiliary state that can be recovered")
    p.add_argument("psi")
    p.add_argument("phi")
    p.add_argument("--scheme", choices=["auto", *(s.value for s in Scheme)], default="auto")

    p = command("concentrate", _cmd_concentrate, "auxiliary window for concentrating a two-qubit state")
    p.add_argument("psi", nargs="?")
    p.add_argument("phi", nargs="?")
    p.add_argument("chi", nargs="?")
    p.add_argument("--a", type=str)
    p.add_argument("--b", type=str)
    p.add_argument("--k", type=int)

    p = command("mutual-catalysis", _cmd_mutual, "test a pair of conversions for mutual catalysis")
    for name in ("psi", "phi", "alpha", "beta"):
        p.add_argument(name)

    p = command("multicopy-k0", _cmd_k0, "copies of the target needed before recovery opens up")
    p.add_argument("chi")
    p.add_argument("phi")

    p = command("multicopy-recover", _cmd_multicopy, "recovery decision with several copies")
    p.add_argument("psi")
    p.add_argument("phi")
    p.add_argument("chi")
    p.add_argument("--copies", type=int, required=True)
    p.add_argument("--mode", choices=["target", "auxiliary"], default="target")

    command("selftest", _cmd_selftest, "re-check the bundled worked examples")
    return parser


def _error_payload(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
    except InputError as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return EXIT_INPUT
    except RecoveryError as exc:
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # anything unexpected is our bug
        print(json.dumps(_error_payload(exc)), file=sys.stderr)
        return EXIT_INTERNAL
    print(sz.dumps(result, pretty=args.pretty))
    return getattr(args, "batch_status", EXIT_OK)


if __name__ == "__main__":
    sys.exit(main())
