"""Named test states and the shipped JSON fixtures built from them.

Run ``python -m spintensor.states DIR`` to regenerate the fixture files.
"""
from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .angular import coherent_state
from .documents import dumps, state_to_doc
from .tensor import projector, random_density

FIXTURE_TWO_J = (1, 2, 3, 4)
COHERENT_ANGLES = (1.1, 0.4)
RANDOM_SEED = 7

#: anticoherence order of each named state, as a function of two_j
EXPECTED_ORDER = {
    "coherent": lambda two_j: 0,
    "mixed": lambda two_j: two_j,
    "cat": lambda two_j: 1 if two_j >= 2 else 0,
    "m0": lambda two_j: 1,
    "tetrahedron": lambda two_j: 2,
    "random": lambda two_j: 0,
}


def cat_state(two_j: int) -> np.ndarray:
    psi = np.zeros(two_j + 1, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return psi


def m0_state(two_j: int) -> np.ndarray:
    """|j, 0> for integer j."""
    if two_j % 2:
        raise ValueError("|j,0> needs integer j")
    psi = np.zeros(two_j + 1, dtype=complex)
    psi[two_j // 2] = 1.0
    return psi


def tetrahedron_state() -> np.ndarray:
    """(|2,2> + sqrt(2)|2,-1>)/sqrt(3)."""
    psi = np.zeros(5, dtype=complex)
    psi[0] = 1 / np.sqrt(3)
    psi[3] = np.sqrt(2 / 3)
    return psi


def named_states(two_j: int) -> dict:
    """{name: density matrix} for every named state defined at this spin."""
    out = {
        "coherent": projector(coherent_state(two_j, *COHERENT_ANGLES)),
        "mixed": np.eye(two_j + 1, dtype=complex) / (two_j + 1),
        "cat": projector(cat_state(two_j)),
    }
    if two_j % 2 == 0:
        out["m0"] = projector(m0_state(two_j))
    if two_j == 4:
        out["tetrahedron"] = projector(tetrahedron_state())
    out["random"] = random_density(two_j, RANDOM_SEED + two_j)
    return out


def fixture_name(name: str, two_j: int) -> str:
    return f"{name}_2j{two_j}.json"


def render_fixtures() -> dict:
    """{filename: file text} for every shipped fixture."""
    files = {}
    for two_j in FIXTURE_TWO_J:
        for name, rho in named_states(two_j).items():
            label = f"{name} two_j={two_j}"
            if name == "coherent":
                label += " theta={} phi={}".format(*COHERENT_ANGLES)
            files[fixture_name(name, two_j)] = dumps(state_to_doc(rho, label=label))
    return files


def fixture_path(filename: str):
    return resources.files("spintensor").joinpath("fixtures", filename)


def write_fixtures(directory) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for filename, text in render_fixtures().items():
        (directory / filename).write_text(text)
        written.append(filename)
    return written


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).with_name("fixtures")
    for f in write_fixtures(target):
        print(f)
