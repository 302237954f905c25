"""Command-line front end.

Every command reads and writes JSON.  Exit codes: 0 success, 1 input error,
2 internal-consistency failure (anticoherence criteria disagreeing).
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .angular import DEFAULT_CAP, SpinError, check_two_j, rotation_operator
from .anticoherence import DEFAULT_TOL, CriterionDisagreement, anticoherence_report
from .documents import (
    DocumentError,
    doc_to_state,
    doc_to_tensor,
    dumps,
    loads,
    matrix_to_json,
    metadata,
    state_to_doc,
    tensor_to_doc,
)
from .tensor import coordinates_of, random_density, reconstruct, reduced_density
from .weinberg import canonical, covariant_set, multiplicity

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    pass


def _read(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def cmd_weinberg(args):
    two_j = check_two_j(args.two_j, args.cap)
    cset = covariant_set(two_j, args.cap)
    if args.index is not None:
        idx = canonical(args.index)
        if len(idx) != two_j:
            raise InputError(f"--index must have {two_j} entries, got {len(idx)}")
        selected = [idx]
    else:
        selected = list(cset.indices)
    doc = {
        "two_j": two_j,
        "matrices": [
            {"index": list(idx), "multiplicity": multiplicity(idx), "matrix": matrix_to_json(cset[idx])}
            for idx in selected
        ],
        "metadata": metadata(args.cap),
    }
    return dumps(doc)


def cmd_coords(args):
    rho = doc_to_state(_read(args.state), args.cap)
    return dumps(tensor_to_doc(coordinates_of(rho), cap=args.cap))


def cmd_reconstruct(args):
    x = doc_to_tensor(_read(args.tensor), args.cap)
    return dumps(state_to_doc(reconstruct(x), cap=args.cap))


def cmd_anticoherence(args):
    doc = _read(args.state)
    rho = doc_to_state(doc, args.cap)
    out = {"two_j": rho.shape[0] - 1}
    if "label" in doc:
        out["label"] = doc["label"]
    try:
        report = anticoherence_report(rho, tol=args.tol)
    except CriterionDisagreement as exc:
        out.update(exc.report.as_dict())
        out["order"] = None
        out["error"] = str(exc)
        out["metadata"] = metadata(args.cap)
        return dumps(out), EXIT_INTERNAL
    out.update(report.as_dict())
    out["metadata"] = metadata(args.cap)
    return dumps(out)


def cmd_random(args):
    two_j = check_two_j(args.two_j, args.cap)
    if args.count < 1:
        raise InputError("--count must be positive")
    rng = np.random.default_rng(args.seed)
    lines = []
    for i in range(args.count):
        rho = random_density(two_j, rng)
        doc = state_to_doc(rho, label=f"random seed={args.seed} n={i}", cap=args.cap)
        lines.append(dumps(doc, compact=True))
    return "".join(lines)


def cmd_rotate(args):
    rho = doc_to_state(_read(args.state), args.cap)
    axis = np.asarray(args.axis, dtype=float)
    if axis.shape != (3,) or not np.linalg.norm(axis) > 0:
        raise InputError("--axis needs three components, not all zero")
    u = rotation_operator(rho.shape[0] - 1, axis / np.linalg.norm(axis), args.angle)
    rotated = u @ rho @ u.conj().T
    return dumps(state_to_doc(0.5 * (rotated + rotated.conj().T), cap=args.cap))


def cmd_reduce(args):
    rho = doc_to_state(_read(args.state), args.cap)
    two_j = rho.shape[0] - 1
    if not 0 <= args.two_k <= two_j:
        raise InputError(f"--two-k must lie in 0..{two_j}, got {args.two_k}")
    return dumps(state_to_doc(reduced_density(rho, args.two_k), cap=args.cap))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest two_j accepted")
    common.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="spintensor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weinberg", parents=[common], help="emit covariant matrices")
    p.add_argument("--two-j", type=int, required=True)
    p.add_argument("--index", type=_int_list, default=None, help="e.g. 1,2")
    p.set_defaults(func=cmd_weinberg)

    p = sub.add_parser("coords", parents=[common], help="state -> coordinate tensor")
    p.add_argument("state", help="StateDocument path or - for stdin")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("reconstruct", parents=[common], help="coordinate tensor -> state")
    p.add_argument("tensor", help="TensorDocument path or - for stdin")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("anticoherence", parents=[common], help="classify anticoherence order")
    p.add_argument("state")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_anticoherence)

    p = sub.add_parser("random", parents=[common], help="random density matrices (JSON lines)")
    p.add_argument("--two-j", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("rotate", parents=[common], help="apply an SU(2) rotation")
    p.add_argument("state")
    p.add_argument("--axis", type=_float_list, required=True, help="e.g. 0,0,1")
    p.add_argument("--angle", type=float, required=True, help="radians")
    p.set_defaults(func=cmd_rotate)

    p = sub.add_parser("reduce", parents=[common], help="partial trace to spin two_k/2")
    p.add_argument("state")
    p.add_argument("--two-k", type=int, required=True)
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (InputError, DocumentError, SpinError, ValueError) as exc:
        print(f"spintensor {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    _write(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
