"""Weinberg covariant matrices S_{mu1...muN} for spin j = N/2.

The matrices are built by projecting N-fold Pauli strings onto the symmetric
subspace of N qubits (Dicke sandwich).  Two independent evaluations of the
generating polynomial Pi^(j)(q) are provided as cross-checks: the closed-form
polynomial in q.J and the exponential boost form.

Only sorted ("canonical") multi-indices are stored; sums over all 4^N index
strings become multiplicity-weighted sums over the C(N+3, 3) canonical ones.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial, prod

import numpy as np

from .angular import DEFAULT_CAP, check_two_j, coherent_state, direction_of, hermitian_expm, spin_operators

#: Minkowski metric diag(-, +, +, +)
METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])


def canonical(idx) -> tuple:
    """Sorted tuple form of a multi-index."""
    idx = tuple(int(i) for i in idx)
    if any(i not in (0, 1, 2, 3) for i in idx):
        raise ValueError(f"multi-index entries must lie in 0..3, got {idx}")
    return tuple(sorted(idx))


def multiplicity(idx) -> int:
    """Number of distinct orderings of ``idx``: N! / (p0! p1! p2! p3!)."""
    counts = Counter(idx)
    return factorial(len(idx)) // prod(factorial(c) for c in counts.values())


@lru_cache(maxsize=None)
def multi_indices(n: int) -> tuple:
    """All canonical rank-n multi-indices in lexicographic order."""
    return tuple(combinations_with_replacement(range(4), n))


@lru_cache(maxsize=None)
def multiplicities(n: int) -> np.ndarray:
    out = np.array([multiplicity(i) for i in multi_indices(n)], dtype=float)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def index_positions(n: int) -> dict:
    """Map canonical multi-index -> position in :func:`multi_indices`."""
    return {idx: pos for pos, idx in enumerate(multi_indices(n))}


# Dicke basis ---------------------------------------------------------------
#
# Qubit bitstrings are integers; bit i set means qubit i is spin-up.  The
# Dicke state |D_N^(k)> is the uniform superposition of weight-k strings and
# corresponds to |j, m = k - N/2>, i.e. row N - k in descending-m order.


@dataclass(frozen=True)
class DickeBasis:
    n: int
    supports: tuple  # supports[k]: sorted int array of weight-k bitstrings
    amplitudes: tuple  # amplitudes[k] = 1 / sqrt(C(N, k))

    def m_of(self, k: int) -> float:
        return k - self.n / 2

    def dense(self, k: int) -> np.ndarray:
        """Vector k materialised in the 2^N computational basis."""
        vec = np.zeros(2**self.n)
        vec[self.supports[k]] = self.amplitudes[k]
        return vec


@lru_cache(maxsize=None)
def _bit_table(n: int):
    strings = np.arange(2**n)
    bits = (strings[:, None] >> np.arange(n)) & 1
    weights = bits.sum(axis=1)
    bits.setflags(write=False)
    weights.setflags(write=False)
    return bits, weights


def dicke_basis(n: int, cap=DEFAULT_CAP) -> DickeBasis:
    n = check_two_j(n, cap)
    if n < 1:
        raise ValueError("dicke_basis needs at least one qubit")
    _, weights = _bit_table(n)
    supports = tuple(np.flatnonzero(weights == k) for k in range(n + 1))
    amps = tuple(1.0 / np.sqrt(comb(n, k)) for k in range(n + 1))
    return DickeBasis(n, supports, amps)


def _sandwich(n: int, idx: tuple) -> np.ndarray:
    """<D^(k)| sigma_idx |D^(l)>, returned in descending-m order."""
    dim = n + 1
    if n == 0:
        return np.ones((1, 1), dtype=complex)
    bits, weights = _bit_table(n)
    idx = np.asarray(idx)
    flip_mask = int(sum(1 << i for i in np.flatnonzero((idx == 1) | (idx == 2))))
    # sigma_2 |up> = i|down>, sigma_2 |down> = -i|up>; sigma_3 = +-1 on up/down
    phase = np.ones(2**n, dtype=complex)
    for pos in np.flatnonzero(idx == 2):
        phase *= np.where(bits[:, pos] == 1, 1j, -1j)
    for pos in np.flatnonzero(idx == 3):
        phase *= np.where(bits[:, pos] == 1, 1.0, -1.0)
    src = np.arange(2**n)
    k_out = weights[src ^ flip_mask]
    l_in = weights
    block = np.zeros((dim, dim), dtype=complex)
    np.add.at(block, (k_out, l_in), phase)
    norms = np.sqrt(np.array([comb(n, k) for k in range(dim)], dtype=float))
    block /= np.outer(norms, norms)
    return block[::-1, ::-1]


@lru_cache(maxsize=4096)
def _covariant_matrix(n: int, idx: tuple) -> np.ndarray:
    mat = _sandwich(n, idx)
    # Hermitian by construction; symmetrise away round-off
    mat = 0.5 * (mat + mat.conj().T)
    mat.setflags(write=False)
    return mat


def covariant_matrix(n: int, idx, cap=DEFAULT_CAP) -> np.ndarray:
    """The (N+1) x (N+1) matrix S_idx, independent of the order of ``idx``."""
    n = check_two_j(n, cap)
    idx = canonical(idx)
    if len(idx) != n:
        raise ValueError(f"multi-index {idx} has rank {len(idx)}, expected {n}")
    return _covariant_matrix(n, idx)


@dataclass(frozen=True)
class CovariantMatrixSet:
    """All canonical S matrices for one spin, with their multiplicities.

    ``matrices[p]`` belongs to ``indices[p]``; indexing the set with any
    ordering of a multi-index returns the same matrix.
    """

    two_j: int
    indices: tuple
    multiplicities: np.ndarray
    matrices: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.indices)

    def __getitem__(self, idx) -> np.ndarray:
        return self.matrices[self.position(idx)]

    def position(self, idx) -> int:
        return index_positions(self.two_j)[canonical(idx)]

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def items(self):
        return zip(self.indices, self.multiplicities, self.matrices)


@lru_cache(maxsize=None)
def _covariant_set(two_j: int) -> CovariantMatrixSet:
    indices = multi_indices(two_j)
    mats = np.array([_covariant_matrix(two_j, idx) for idx in indices])
    mats.setflags(write=False)
    return CovariantMatrixSet(two_j, indices, multiplicities(two_j), mats)


def covariant_set(two_j: int, cap=DEFAULT_CAP) -> CovariantMatrixSet:
    """Every canonical Weinberg matrix for spin ``two_j / 2``.

    The result is cached and read-only, so it may be shared freely.
    """
    return _covariant_set(check_two_j(two_j, cap))


def g_trace_residuals(values_by_index, n: int) -> dict:
    """Contract the first two slots of a symmetric rank-n object with the metric.

    ``values_by_index`` maps canonical multi-index -> value (scalar or array).
    Returns {suffix: -v_00s + v_11s + v_22s + v_33s} for every canonical
    suffix s of rank n - 2.
    """
    out = {}
    for suffix in multi_indices(n - 2):
        out[suffix] = sum(
            METRIC[nu, nu] * values_by_index[canonical((nu, nu) + suffix)] for nu in range(4)
        )
    return out


# Generating polynomial Pi^(j)(q) -------------------------------------------


def pi_from_set(cset: CovariantMatrixSet, q) -> np.ndarray:
    """(-1)^N sum_idx q_mu1...q_muN S_idx evaluated at a four-vector q."""
    q = np.asarray(q, dtype=float)
    monomials = np.array([prod(q[i] for i in idx) for idx in cset.indices])
    weights = cset.multiplicities * monomials
    return (-1) ** cset.two_j * np.tensordot(weights, cset.matrices, axes=1)


def pi_polynomial(two_j: int, q) -> np.ndarray:
    """Closed-form Pi^(j)(q) as a polynomial in q.J, for integer or half-integer j."""
    two_j = check_two_j(two_j, cap=None)
    q = np.asarray(q, dtype=float)
    q0, qv = q[0], q[1:]
    qsq = float(qv @ qv)
    dim = two_j + 1
    eye = np.eye(dim, dtype=complex)
    if two_j == 0:
        return eye
    qj2 = 2.0 * spin_operators(two_j, cap=None).dot(qv)  # 2 q.J
    qj2_sq = qj2 @ qj2
    mass_sq = q0 * q0 - qsq
    if two_j % 2 == 0:
        j = two_j // 2
        out = mass_sq**j * eye
        for k in range(1, j + 1):
            term = qj2.copy()
            for r in range(1, k):
                term = term @ (qj2_sq - (2 * r) ** 2 * qsq * eye)
            term = term @ (qj2 + 2 * k * q0 * eye)
            out = out + mass_sq ** (j - k) / factorial(2 * k) * term
        return out
    h = (two_j - 1) // 2  # j - 1/2
    out = mass_sq**h * (-q0 * eye - qj2)
    for k in range(1, h + 1):
        term = eye
        for r in range(1, k + 1):
            term = term @ (qj2_sq - (2 * r - 1) ** 2 * qsq * eye)
        term = term @ (qj2 + (2 * k + 1) * q0 * eye)
        out = out - mass_sq ** (h - k) / factorial(2 * k + 1) * term
    return out


class BoostDomainError(ValueError):
    """q lies outside q0 < 0, 0 < |q| < |q0|."""


def pi_boost(two_j: int, q) -> np.ndarray:
    """Pi^(j)(q) = (q0^2 - |q|^2)^j exp(-2 eta qhat.J) with eta = artanh(-|q|/q0).

    Only the branch q0 < 0, 0 < |q| < |q0| is accepted.
    """
    two_j = check_two_j(two_j, cap=None)
    q = np.asarray(q, dtype=float)
    q0, qv = q[0], q[1:]
    qnorm = float(np.linalg.norm(qv))
    if not (q0 < 0 and 0 < qnorm < -q0):
        raise BoostDomainError(f"pi_boost needs q0 < 0 and 0 < |q| < |q0|, got q={q.tolist()}")
    eta = np.arctanh(-qnorm / q0)
    gen = spin_operators(two_j, cap=None).dot(qv / qnorm)
    return (q0 * q0 - qnorm * qnorm) ** (two_j / 2) * hermitian_expm(gen, -2.0 * eta)


def husimi_check(cset: CovariantMatrixSet, theta: float, phi: float) -> float:
    """max_idx |<alpha|S_idx|alpha> - n_mu1...n_muN| for the coherent state at (theta, phi)."""
    alpha = coherent_state(cset.two_j, theta, phi)
    n = direction_of(theta, phi)
    expect = np.einsum("i,pij,j->p", alpha.conj(), cset.matrices, alpha)
    target = np.array([prod(n[i] for i in idx) for idx in cset.indices])
    return float(np.max(np.abs(expect - target)))


def pauli_string(idx) -> np.ndarray:
    """Dense 2^N operator sigma_mu1 (x) ... (x) sigma_muN in the bitstring basis.

    Qubit i is tensor factor i counted from the least significant bit, and
    bit value 1 means spin-up.  Intended for small-N checks only.
    """
    # single-qubit Paulis in the (down, up) ordering of bit values (0, 1)
    local = {
        0: np.eye(2, dtype=complex),
        1: np.array([[0, 1], [1, 0]], dtype=complex),
        2: np.array([[0, 1j], [-1j, 0]], dtype=complex),
        3: np.array([[-1, 0], [0, 1]], dtype=complex),
    }
    out = np.ones((1, 1), dtype=complex)
    for mu in idx:
        # kron places later factors on less significant bits; prepend instead
        out = np.kron(local[mu], out)
    return out


def span_rank(cset: CovariantMatrixSet, tol=1e-8) -> int:
    """Real dimension spanned by the matrices, counted by singular values."""
    flat = cset.matrices.reshape(len(cset), -1)
    real = np.hstack([flat.real, flat.imag])
    sv = np.linalg.svd(real, compute_uv=False)
    return int(np.sum(sv > tol * max(sv[0], 1.0)))


def g_null_pattern(n: int, suffix) -> dict:
    """Coefficients of the metric contraction at ``suffix`` on canonical indices.

    Adding any multiple of this pattern to coordinates leaves the frame
    expansion unchanged, because the multiplicity-weighted contraction of the
    S matrices vanishes.  Entries are already divided by multiplicity.
    """
    pattern = {}
    for nu in range(4):
        idx = canonical((nu, nu) + tuple(suffix))
        pattern[idx] = pattern.get(idx, 0.0) + METRIC[nu, nu]
    # each canonical entry stands for multiplicity(idx) full strings; spread
    # the weight so that sum_full g-pattern * S vanishes
    return {idx: v / multiplicity(idx) for idx, v in pattern.items()}


__all__ = [
    "METRIC",
    "BoostDomainError",
    "CovariantMatrixSet",
    "DickeBasis",
    "canonical",
    "covariant_matrix",
    "covariant_set",
    "dicke_basis",
    "g_null_pattern",
    "g_trace_residuals",
    "husimi_check",
    "index_positions",
    "multi_indices",
    "multiplicities",
    "multiplicity",
    "pauli_string",
    "pi_boost",
    "pi_from_set",
    "pi_polynomial",
    "span_rank",
]
