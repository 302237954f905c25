"""Generalized Bloch coordinates of spin-j density matrices.

A state rho of spin j = N/2 is represented by the real, symmetric, g-traceless
rank-N tensor x_idx = tr(rho S_idx), stored on canonical (sorted) indices.  The
inverse map is rho = 2^-N sum_idx x_idx S_idx, with the sum over all 4^N index
strings, i.e. weighted by multiplicity on canonical ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

import numpy as np

from .angular import DEFAULT_CAP, check_two_j, direction_of, two_j_of
from .weinberg import (
    CovariantMatrixSet,
    canonical,
    covariant_set,
    g_trace_residuals,
    index_positions,
    multi_indices,
    multiplicities,
    multiplicity,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class InvalidStateError(ValueError):
    """Input matrix violates a density-matrix invariant."""


class SpinMismatchError(ValueError):
    pass


def check_hermitian(matrix, tol=HERMITIAN_TOL) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {matrix.shape}")
    dev = np.max(np.abs(matrix - matrix.conj().T)) if matrix.size else 0.0
    if dev > tol:
        raise InvalidStateError(f"matrix is not Hermitian (max |A - A^H| = {dev:.3e})")
    return matrix


def check_density(rho, cap=DEFAULT_CAP) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD within tolerance.

    Returns the matrix as a complex array.  Failing inputs are rejected, never
    clipped.
    """
    rho = check_hermitian(rho)
    check_two_j(two_j_of(rho), cap)
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr.real:.15g}, expected 1")
    lo = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0]
    if lo < -PSD_TOL:
        raise InvalidStateError(f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})")
    return rho


def random_density(two_j: int, rng=None) -> np.ndarray:
    """Hilbert-Schmidt random state G G^H / tr(G G^H), G complex Gaussian."""
    rng = np.random.default_rng(rng)
    dim = check_two_j(two_j, cap=None) + 1
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_pure(two_j: int, rng=None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    dim = check_two_j(two_j, cap=None) + 1
    psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return psi / np.linalg.norm(psi)


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


@dataclass(frozen=True, eq=False)
class CoordinateTensor:
    """Real coordinates on canonical multi-indices of rank ``two_j``.

    ``values[p]`` belongs to ``multi_indices(two_j)[p]``.  Indexing accepts any
    ordering of a multi-index.
    """

    two_j: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (len(multi_indices(self.two_j)),):
            raise ValueError(
                f"expected {len(multi_indices(self.two_j))} values for two_j={self.two_j}, "
                f"got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other):
        if not isinstance(other, CoordinateTensor):
            return NotImplemented
        return self.two_j == other.two_j and np.array_equal(self.values, other.values)

    __hash__ = None

    @property
    def indices(self) -> tuple:
        return multi_indices(self.two_j)

    @property
    def multiplicities(self) -> np.ndarray:
        return multiplicities(self.two_j)

    def __getitem__(self, idx) -> float:
        return float(self.values[index_positions(self.two_j)[canonical(idx)]])

    def as_dict(self) -> dict:
        return dict(zip(self.indices, self.values.tolist()))

    @classmethod
    def from_dict(cls, two_j: int, mapping) -> "CoordinateTensor":
        """Build from {multi-index: value}; missing canonical entries are 0."""
        pos = index_positions(two_j)
        vals = np.zeros(len(pos))
        for idx, v in mapping.items():
            c = canonical(idx)
            if c not in pos:
                raise ValueError(f"index {idx} does not have rank {two_j}")
            vals[pos[c]] = v
        return cls(two_j, vals)

    @classmethod
    def from_function(cls, two_j: int, func) -> "CoordinateTensor":
        return cls(two_j, [func(idx) for idx in multi_indices(two_j)])

    def to_dense(self) -> np.ndarray:
        """Full symmetric array of shape (4,)*N.  Memory grows as 4^N."""
        n = self.two_j
        if n == 0:
            return np.array(self.values[0])
        grid = np.indices((4,) * n).reshape(n, -1).T
        grid.sort(axis=1)
        pos = index_positions(n)
        lookup = np.array([pos[tuple(row)] for row in grid.tolist()])
        return self.values[lookup].reshape((4,) * n)

    @classmethod
    def from_dense(cls, two_j: int, array) -> "CoordinateTensor":
        array = np.asarray(array)
        return cls(two_j, [array[idx] if two_j else array[()] for idx in multi_indices(two_j)])

    def g_trace(self) -> dict:
        """{suffix: -x_00s + x_11s + x_22s + x_33s} over canonical suffixes."""
        if self.two_j < 2:
            return {}
        return g_trace_residuals(self.as_dict(), self.two_j)


def _resolve_set(two_j, cset, cap=DEFAULT_CAP) -> CovariantMatrixSet:
    if cset is None:
        return covariant_set(two_j, cap)
    if cset.two_j != two_j:
        raise SpinMismatchError(f"covariant set is for two_j={cset.two_j}, state has two_j={two_j}")
    return cset


def coordinates_of(rho, cset: CovariantMatrixSet | None = None) -> CoordinateTensor:
    """x_idx = tr(rho S_idx) for a Hermitian operator rho.

    Unit trace and positivity are not required here, so the map also applies
    to differences of states and other Hermitian operators.
    """
    rho = check_hermitian(rho)
    two_j = two_j_of(rho)
    cset = _resolve_set(two_j, cset, cap=None)
    vals = np.einsum("ij,pji->p", rho, cset.matrices)
    imag = np.max(np.abs(vals.imag))
    if imag > 1e-12 * max(1.0, np.max(np.abs(vals.real))):
        raise InvalidStateError(f"coordinates have imaginary part {imag:.3e}")
    return CoordinateTensor(two_j, vals.real)


def reconstruct(x: CoordinateTensor, cset: CovariantMatrixSet | None = None) -> np.ndarray:
    """rho = 2^-N sum over all index strings of x_idx S_idx."""
    cset = _resolve_set(x.two_j, cset, cap=None)
    weights = x.multiplicities * x.values / 2.0**x.two_j
    rho = np.tensordot(weights, cset.matrices, axes=1)
    return 0.5 * (rho + rho.conj().T)


def _check_same_spin(x, y):
    if x.two_j != y.two_j:
        raise SpinMismatchError(f"two_j differs: {x.two_j} vs {y.two_j}")


def hs_inner(x: CoordinateTensor, y: CoordinateTensor) -> float:
    """Hilbert-Schmidt product tr(rho rho') computed from coordinates alone."""
    _check_same_spin(x, y)
    return float(np.sum(x.multiplicities * x.values * y.values) / 2.0**x.two_j)


def purity(x: CoordinateTensor) -> float:
    return hs_inner(x, x)


def _extended_rotation(rot) -> np.ndarray:
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3):
        raise ValueError(f"rotation must be 3x3, got {rot.shape}")
    if np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-10 or abs(np.linalg.det(rot) - 1) > 1e-10:
        raise ValueError("matrix is not a proper rotation")
    ext = np.eye(4)
    ext[1:, 1:] = rot
    return ext


def rotate_tensor(x: CoordinateTensor, rot) -> CoordinateTensor:
    """x_idx -> R_{mu1 nu1} ... R_{muN nuN} x_nu with R_00 = 1, R_0a = R_a0 = 0.

    This is the coordinate image of rho -> U rho U^H for the SU(2) element U
    that induces the rotation R.
    """
    ext = _extended_rotation(rot)
    dense = x.to_dense()
    for axis in range(x.two_j):
        dense = np.moveaxis(np.tensordot(ext, dense, axes=([1], [axis])), 0, axis)
    return CoordinateTensor.from_dense(x.two_j, dense)


def reduced_coordinates(x: CoordinateTensor, two_k: int) -> CoordinateTensor:
    """Coordinates of the spin-k reduction: pad each rank-2k index with zeros."""
    two_k = check_two_j(two_k, cap=None)
    if two_k > x.two_j:
        raise ValueError(f"cannot reduce two_j={x.two_j} to larger two_k={two_k}")
    pad = (0,) * (x.two_j - two_k)
    return CoordinateTensor.from_function(two_k, lambda idx: x[pad + idx])


def _split_coefficients(n: int, n_keep: int) -> np.ndarray:
    """coef[a, c] = sqrt(C(n_keep, a) C(n - n_keep, c) / C(n, a + c)).

    |D_n^(a+c)> = sum coef[a, c] |D_keep^(a)> |D_rest^(c)>.
    """
    rest = n - n_keep
    coef = np.zeros((n_keep + 1, rest + 1))
    for a in range(n_keep + 1):
        for c in range(rest + 1):
            coef[a, c] = np.sqrt(comb(n_keep, a) * comb(rest, c) / comb(n, a + c))
    return coef


def reduced_density(rho, two_k: int) -> np.ndarray:
    """Spin-k state left after tracing 2j - 2k of the 2j constituent qubits.

    Uses the Dicke decomposition of the symmetric subspace directly, so no
    2^N-dimensional operator is formed.
    """
    rho = check_hermitian(rho)
    n = two_j_of(rho)
    two_k = check_two_j(two_k, cap=None)
    if two_k > n:
        raise ValueError(f"cannot reduce two_j={n} to larger two_k={two_k}")
    if two_k == n:
        return rho.copy()
    coef = _split_coefficients(n, two_k)
    dicke = rho[::-1, ::-1]  # index = number of up-spins
    out = np.zeros((two_k + 1, two_k + 1), dtype=complex)
    for c in range(n - two_k + 1):
        block = dicke[c : c + two_k + 1, c : c + two_k + 1]
        w = coef[:, c]
        out += w[:, None] * block * w[None, :]
    return out[::-1, ::-1]


def coherent_coordinates(two_j: int, theta: float, phi: float) -> CoordinateTensor:
    """Product tensor n_mu1 ... n_muN of the direction four-vector n = (1, n)."""
    n = direction_of(theta, phi)
    return CoordinateTensor.from_function(two_j, lambda idx: prod(n[i] for i in idx))


def _mixed_coefficients(two_j: int) -> dict:
    """Exact symmetric coordinates of the maximally mixed state.

    Expands sum_k C(N, 2k)/(2k+1) q0^(N-2k) (q1^2 + q2^2 + q3^2)^k into
    monomials and divides every coefficient by the multiplicity of its index.
    """
    out = {}
    for k in range(two_j // 2 + 1):
        lead = Fraction(comb(two_j, 2 * k), 2 * k + 1)
        for a in range(k + 1):
            for b in range(k - a + 1):
                c = k - a - b
                multinom = factorial(k) // (factorial(a) * factorial(b) * factorial(c))
                idx = (0,) * (two_j - 2 * k) + (1,) * (2 * a) + (2,) * (2 * b) + (3,) * (2 * c)
                out[idx] = lead * multinom / multiplicity(idx)
    return out


def maximally_mixed_coordinates(two_j: int) -> CoordinateTensor:
    two_j = check_two_j(two_j, cap=None)
    return CoordinateTensor.from_dict(
        two_j, {idx: float(v) for idx, v in _mixed_coefficients(two_j).items()}
    )


def cat_coordinates(two_j: int) -> CoordinateTensor:
    """Coordinates of (|j,-j> + |j,j>)/sqrt(2) from the product formula.

    x = (prod n_minus + prod n_plus)/2 + Re prod c, where n_pm = (1, 0, 0, +-1)
    and c = (0, 1, -i, 0) carries the off-diagonal |down><up| coherence.
    """
    two_j = check_two_j(two_j, cap=None)
    if two_j < 1:
        raise ValueError("cat state needs two_j >= 1")
    n_minus = np.array([1.0, 0.0, 0.0, -1.0])
    n_plus = np.array([1.0, 0.0, 0.0, 1.0])
    cross = np.array([0.0, 1.0, -1j, 0.0])

    def value(idx):
        diag = 0.5 * (prod(n_minus[i] for i in idx) + prod(n_plus[i] for i in idx))
        return diag + prod(cross[i] for i in idx).real

    return CoordinateTensor.from_function(two_j, value)


@dataclass
class CanonicalReport:
    """Outcome of :func:`canonical_check`.

    ``g_trace`` holds the worst metric-contraction residual and the suffix
    where it occurs; ``recompute_deviation`` compares the values against
    tr(rho S) of the matrix they reconstruct.
    """

    trace_deviation: float
    g_trace: float
    worst_suffix: tuple | None
    recompute_deviation: float
    tol: float

    @property
    def violations(self) -> list:
        out = []
        if self.trace_deviation > self.tol:
            out.append(f"x_0...0 differs from 1 by {self.trace_deviation:.3e}")
        if self.g_trace > self.tol:
            out.append(f"g-trace violated by {self.g_trace:.3e} at suffix {self.worst_suffix}")
        return out

    @property
    def is_canonical(self) -> bool:
        return not self.violations


def canonical_check(x: CoordinateTensor, cset=None, tol=1e-10) -> CanonicalReport:
    """Check unit trace and g-tracelessness of a raw symmetric value table.

    Values passing both checks are the unique canonical coordinates of the
    matrix they reconstruct; the report measures that agreement directly.
    """
    residuals = x.g_trace()
    if residuals:
        worst = max(residuals, key=lambda s: abs(residuals[s]))
        g_dev, worst_suffix = abs(residuals[worst]), worst
    else:
        g_dev, worst_suffix = 0.0, None
    rho = reconstruct(x, cset)
    again = coordinates_of(rho, cset)
    return CanonicalReport(
        trace_deviation=abs(x[(0,) * x.two_j] - 1.0),
        g_trace=float(g_dev),
        worst_suffix=worst_suffix,
        recompute_deviation=float(np.max(np.abs(again.values - x.values))),
        tol=tol,
    )
