"""From the Bloch vector to the Bloch tensor.

A spin-1/2 state is rho = (1 + x.sigma)/2.  For spin j = N/2 the same role is
played by a real symmetric rank-N tensor x with rho = 2^-N sum x_idx S_idx.
This script walks through the spin-1/2 and spin-1 cases and checks the round
trip on a random spin-3/2 state.
"""
import numpy as np

from spintensor import (
    coherent_state,
    coordinates_of,
    covariant_set,
    maximally_mixed_coordinates,
    purity,
    random_density,
    reconstruct,
)
from spintensor.tensor import projector

np.set_printoptions(precision=4, suppress=True)

# spin-1/2: the covariant matrices are the Pauli matrices
s = covariant_set(1)
for idx, mult, mat in s.items():
    print(idx, "\n", mat)

psi = coherent_state(1, theta=0.9, phi=2.1)
x = coordinates_of(projector(psi))
print("\nspin-1/2 coordinates (1, n):", x.values)

# spin-1: ten canonical coordinates, one linear relation between them
mixed = maximally_mixed_coordinates(2)
print("\nmaximally mixed spin-1:")
for idx, v in mixed.as_dict().items():
    if v:
        print(f"  x{idx} = {v:.4f}")
print("g-trace  -x00 + x11 + x22 + x33 =", float(mixed.g_trace()[()]))

# any spin: the tensor determines the state
rng = np.random.default_rng(3)
rho = random_density(3, rng)
x = coordinates_of(rho)
print(f"\nspin-3/2: {len(x.values)} stored coordinates, purity {purity(x):.4f}")
print("round-trip error:", np.linalg.norm(reconstruct(x) - rho))
