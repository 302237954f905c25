"""JSON interchange documents for states and coordinate tensors.

Both document kinds are validated against the schemas shipped in
``spintensor/schemas`` on read and on write, and then against the numerical
invariants of the object they describe.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from .angular import DEFAULT_CAP, check_two_j
from .tensor import CoordinateTensor, check_density
from .weinberg import multi_indices


class DocumentError(ValueError):
    """A document failed schema or invariant validation."""


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("spintensor").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _validate(doc, name):
    try:
        jsonschema.validate(doc, load_schema(name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{name} document invalid at {path}: {exc.message}") from None


def metadata(cap=DEFAULT_CAP) -> dict:
    return {"library": "spintensor", "version": __version__, "two_j_cap": cap}


def complex_entry(z) -> dict:
    z = complex(z)
    # normalise -0.0 so output bytes do not depend on rounding sign
    return {"re": z.real + 0.0, "im": z.imag + 0.0}


def matrix_to_json(matrix) -> list:
    return [[complex_entry(z) for z in row] for row in np.asarray(matrix)]


def state_to_doc(rho, label=None, cap=DEFAULT_CAP) -> dict:
    rho = check_density(rho, cap)
    doc = {"two_j": rho.shape[0] - 1, "matrix": matrix_to_json(rho)}
    if label is not None:
        doc["label"] = label
    doc["metadata"] = metadata(cap)
    _validate(doc, "state")
    return doc


def doc_to_state(doc, cap=DEFAULT_CAP) -> np.ndarray:
    """Parse a StateDocument into a validated density matrix."""
    _validate(doc, "state")
    try:
        two_j = check_two_j(doc["two_j"], cap)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    rows = doc["matrix"]
    dim = two_j + 1
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise DocumentError(f"matrix must be {dim}x{dim} for two_j={two_j}")
    rho = np.array([[e["re"] + 1j * e["im"] for e in row] for row in rows])
    try:
        return check_density(rho, cap)
    except ValueError as exc:
        raise DocumentError(f"state invariant failed: {exc}") from None


def tensor_to_doc(x: CoordinateTensor, label=None, cap=DEFAULT_CAP) -> dict:
    entries = [
        {"index": list(idx), "value": float(v) + 0.0} for idx, v in zip(x.indices, x.values)
    ]
    doc = {"two_j": x.two_j, "entries": entries}
    if label is not None:
        doc["label"] = label
    doc["metadata"] = metadata(cap)
    _validate(doc, "tensor")
    return doc


def doc_to_tensor(doc, cap=DEFAULT_CAP) -> CoordinateTensor:
    _validate(doc, "tensor")
    try:
        two_j = check_two_j(doc["two_j"], cap)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    known = set(multi_indices(two_j))
    values = {}
    for entry in doc["entries"]:
        idx = tuple(entry["index"])
        if list(idx) != sorted(idx):
            raise DocumentError(f"index {list(idx)} is not sorted nondecreasing")
        if idx not in known:
            raise DocumentError(f"index {list(idx)} does not have rank {two_j}")
        if idx in values:
            raise DocumentError(f"index {list(idx)} appears more than once")
        values[idx] = entry["value"]
    return CoordinateTensor.from_dict(two_j, values)


def dumps(doc, compact=False) -> str:
    """Serialise with a fixed layout; NaN and Inf are refused.

    ``compact`` puts the whole document on one line (JSON Lines streams).
    """
    if compact:
        return json.dumps(doc, separators=(",", ":"), allow_nan=False) + "\n"
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def _reject_constant(name):
    raise DocumentError(f"non-finite number {name} is not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None
