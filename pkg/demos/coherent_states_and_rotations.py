"""Coherent states have product tensors, and rotations act index by index.

For the coherent state pointing along n, every coordinate is the product
n_mu1 ... n_muN of the four-vector (1, n).  Rotating the state by U rotates
every index of its tensor by the corresponding 3x3 rotation R.
"""
import numpy as np

from spintensor import (
    coherent_coordinates,
    coherent_state,
    coordinates_of,
    random_density,
    rotate_tensor,
    rotation_matrix_3d,
    rotation_operator,
)
from spintensor.tensor import projector

two_j, theta, phi = 4, 1.1, 0.4
x = coordinates_of(projector(coherent_state(two_j, theta, phi)))
product = coherent_coordinates(two_j, theta, phi)
print("coherent state vs product tensor:", np.max(np.abs(x.values - product.values)))

# rotating about z only shifts phi
r = rotation_matrix_3d([0, 0, 1], 0.7)
moved = rotate_tensor(product, r)
print("rotated product vs product at phi+0.7:",
      np.max(np.abs(moved.values - coherent_coordinates(two_j, theta, phi + 0.7).values)))

# general states: x(U rho U^H) = R x R ... R
rng = np.random.default_rng(1)
axis = rng.standard_normal(3)
axis /= np.linalg.norm(axis)
angle = 2.3
rho = random_density(3, rng)
u = rotation_operator(3, axis, angle)
lhs = coordinates_of(u @ rho @ u.conj().T)
rhs = rotate_tensor(coordinates_of(rho), rotation_matrix_3d(axis, angle))
print("rotation covariance on a random spin-3/2 state:", np.max(np.abs(lhs.values - rhs.values)))

# half-integer spins change sign under a full turn
print("U(2 pi) for spin 3/2:\n", np.round(rotation_operator(3, axis, 2 * np.pi).real, 12) + 0.0)
