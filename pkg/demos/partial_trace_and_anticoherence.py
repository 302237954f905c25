"""Reduced states and anticoherence read off the tensor.

A spin-j state is a symmetric state of 2j qubits.  Tracing out qubits leaves a
smaller spin, and in tensor form this just sets trailing indices to 0.  A state
is anticoherent to order t when its spin-t/2 reduction is maximally mixed; the
library checks this three independent ways and insists they agree.
"""
import numpy as np

from spintensor import (
    anticoherence_report,
    coordinates_of,
    order2_matrix,
    random_density,
    reduced_coordinates,
    reduced_density,
)
from spintensor.states import cat_state, m0_state, tetrahedron_state
from spintensor.tensor import projector

rng = np.random.default_rng(5)
rho = random_density(4, rng)
x = coordinates_of(rho)
for two_k in range(5):
    diff = reduced_coordinates(x, two_k).values - coordinates_of(reduced_density(rho, two_k)).values
    print(f"reduce to two_k={two_k}: tensor shortcut error {np.max(np.abs(diff)):.1e}")

states = {
    "random spin-2": rho,
    "|1,0>": projector(m0_state(2)),
    "spin-1 cat": projector(cat_state(2)),
    "tetrahedron": projector(tetrahedron_state()),
    "maximally mixed spin-3/2": np.eye(4) / 4,
}
print()
for name, state in states.items():
    report = anticoherence_report(state)
    print(f"{name:26s} order {report.order}  per criterion {report.orders}")

print("\ntetrahedron <S_mu nu 0 0>:\n", np.round(order2_matrix(projector(tetrahedron_state())), 12))
