"""Angular-momentum primitives for arbitrary spin j.

A spin is carried everywhere as the integer ``two_j = 2j`` so that half-integer
values are exact.  All matrices use the basis |j, m> ordered m = j, j-1, ..., -j.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt
from typing import NamedTuple

import numpy as np

DEFAULT_CAP = 12
UNIT_TOL = 1e-12


class SpinError(ValueError):
    """Raised for invalid spin quantum numbers or out-of-range arguments."""


def check_two_j(two_j, cap=DEFAULT_CAP) -> int:
    """Validate ``two_j`` against the nonnegativity rule and the size cap."""
    if isinstance(two_j, bool) or int(two_j) != two_j:
        raise SpinError(f"two_j must be an integer, got {two_j!r}")
    two_j = int(two_j)
    if two_j < 0:
        raise SpinError(f"two_j must be nonnegative, got {two_j}")
    if cap is not None and two_j > cap:
        raise SpinError(f"two_j={two_j} exceeds the cap of {cap}")
    return two_j


def two_j_of(matrix) -> int:
    """Spin label of a square matrix acting on a (2j+1)-dimensional space."""
    return np.shape(matrix)[0] - 1


def m_values(two_j: int) -> np.ndarray:
    """Magnetic quantum numbers j, j-1, ..., -j."""
    return (two_j - 2 * np.arange(two_j + 1)) / 2.0


class SpinOperators(NamedTuple):
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def dot(self, vec) -> np.ndarray:
        """Return vec . J for a real 3-vector."""
        return vec[0] * self.jx + vec[1] * self.jy + vec[2] * self.jz


@lru_cache(maxsize=None)
def _spin_operators(two_j: int) -> SpinOperators:
    j = two_j / 2.0
    m = m_values(two_j)
    # <m+1|J+|m> sits just above the diagonal in descending-m order
    jp = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    jm = jp.conj().T
    ops = SpinOperators(0.5 * (jp + jm), -0.5j * (jp - jm), np.diag(m).astype(complex))
    for op in ops:
        op.setflags(write=False)
    return ops


def spin_operators(two_j: int, cap=DEFAULT_CAP) -> SpinOperators:
    """Spin matrices Jx, Jy, Jz for spin ``two_j / 2`` (Condon-Shortley phases).

    >>> ops = spin_operators(1)
    >>> np.allclose(ops.jz, np.diag([0.5, -0.5]))
    True
    """
    return _spin_operators(check_two_j(two_j, cap))


def coherent_state(two_j: int, theta: float, phi: float) -> np.ndarray:
    r"""Spin coherent state pointing along n(theta, phi).

    The amplitude on |j, m> is
    sqrt(C(2j, j+m)) [sin(theta/2)]^(j-m) [cos(theta/2) e^{-i phi}]^(j+m).
    """
    two_j = check_two_j(two_j, cap=None)
    s, c = np.sin(theta / 2), np.cos(theta / 2) * np.exp(-1j * phi)
    amps = np.empty(two_j + 1, dtype=complex)
    for i in range(two_j + 1):
        up = two_j - i  # j + m
        amps[i] = sqrt(comb(two_j, up)) * s**i * c**up
    return amps


def direction_of(theta: float, phi: float) -> np.ndarray:
    """Four-vector (1, sin t cos p, sin t sin p, cos t)."""
    return np.array(
        [1.0, np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )


def _unit_axis(axis) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,):
        raise ValueError(f"axis must be a 3-vector, got shape {axis.shape}")
    if abs(np.linalg.norm(axis) - 1.0) > UNIT_TOL:
        raise ValueError(f"axis must have unit norm, |axis| = {np.linalg.norm(axis)!r}")
    return axis


def hermitian_expm(generator: np.ndarray, scale: complex) -> np.ndarray:
    """exp(scale * H) for Hermitian H via its eigendecomposition."""
    w, v = np.linalg.eigh(generator)
    return (v * np.exp(scale * w)) @ v.conj().T


def rotation_operator(two_j: int, axis, angle: float) -> np.ndarray:
    """Unitary exp(-i angle (axis . J)) on the spin-j space."""
    axis = _unit_axis(axis)
    ops = spin_operators(two_j, cap=None)
    return hermitian_expm(ops.dot(axis), -1j * angle)


def rotation_matrix_3d(axis, angle: float) -> np.ndarray:
    """Active proper rotation by ``angle`` about ``axis`` (Rodrigues formula).

    Matches :func:`rotation_operator` in the sense
    U (a . J) U^dagger = (R a) . J.
    """
    axis = _unit_axis(axis)
    k = np.array(
        [[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def _doubled(x) -> int:
    """Return 2x as an int, rejecting values that are not half-integers."""
    d = Fraction(x).limit_denominator(4) * 2
    if d.denominator != 1 or abs(float(d) - 2 * float(x)) > 1e-9:
        raise SpinError(f"{x!r} is not a half-integer")
    return int(d)


@lru_cache(maxsize=65536)
def _cg_doubled(tj1, tm1, tj2, tm2, tJ, tM) -> float:
    if tM != tm1 + tm2:
        return 0.0
    if not (abs(tj1 - tj2) <= tJ <= tj1 + tj2) or (tj1 + tj2 + tJ) % 2:
        return 0.0
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tJ, tM)):
        if abs(tm) > tj or (tj + tm) % 2:
            return 0.0
    f = factorial
    # all arguments below are integers once halved
    a = (tJ + tj1 - tj2) // 2
    b = (tJ - tj1 + tj2) // 2
    c = (tj1 + tj2 - tJ) // 2
    d = (tj1 + tj2 + tJ) // 2 + 1
    norm_sq = Fraction((tJ + 1) * f(a) * f(b) * f(c), f(d))
    norm_sq *= (
        f((tJ + tM) // 2) * f((tJ - tM) // 2)
        * f((tj1 - tm1) // 2) * f((tj1 + tm1) // 2)
        * f((tj2 - tm2) // 2) * f((tj2 + tm2) // 2)
    )
    total = Fraction(0)
    for k in range(0, c + 1):
        den_args = (
            k,
            c - k,
            (tj1 - tm1) // 2 - k,
            (tj2 + tm2) // 2 - k,
            (tJ - tj2 + tm1) // 2 + k,
            (tJ - tj1 - tm2) // 2 + k,
        )
        if min(den_args) < 0:
            continue
        den = 1
        for arg in den_args:
            den *= f(arg)
        total += Fraction((-1) ** k, den)
    # exact up to one final square root
    return float(total) * sqrt(norm_sq)


def clebsch_gordan(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Condon-Shortley).

    Arguments may be ints, floats or Fractions holding half-integers.  Any
    combination violating the selection rules yields 0.
    """
    return _cg_doubled(*(_doubled(v) for v in (j1, m1, j2, m2, J, M)))


def tensor_operator(two_j: int, k: int, q: int) -> np.ndarray:
    """Irreducible tensor operator T_kq for spin j.

    Elements are <j m'|T_kq|j m> = sqrt((2k+1)/(2j+1)) <j m; k q | j m'>, so
    the family {T_kq} is orthonormal under the Hilbert-Schmidt product.
    """
    two_j = check_two_j(two_j, cap=None)
    if not (0 <= k <= two_j) or abs(q) > k:
        raise SpinError(f"need 0 <= k <= 2j and |q| <= k, got k={k}, q={q}, 2j={two_j}")
    return _tensor_operator(two_j, k, q)


@lru_cache(maxsize=None)
def _tensor_operator(two_j, k, q):
    dim = two_j + 1
    pref = sqrt((2 * k + 1) / dim)
    tm = two_j - 2 * np.arange(dim)  # doubled m, descending
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        row_tm = tm[col] + 2 * q
        if abs(row_tm) > two_j:
            continue
        row = (two_j - row_tm) // 2
        out[row, col] = pref * _cg_doubled(two_j, int(tm[col]), 2 * k, 2 * q, two_j, int(row_tm))
    out.setflags(write=False)
    return out
