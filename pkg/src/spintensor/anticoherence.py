"""Anticoherence order of spin states from three equivalent criteria.

A state is anticoherent to order t when <(n.J)^k> does not depend on the unit
vector n for every k <= t.  Equivalent tests:

* reduction: the spin-t/2 reduced state is maximally mixed;
* multipoles: every multipole coefficient rho_kq with 1 <= k <= t vanishes;
* moments: the direction spread of <(n.J)^k> vanishes for k <= t.

Every state passes at t = 0, so the reported minimum order is 0.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .angular import check_two_j, spin_operators, tensor_operator, two_j_of
from .tensor import check_density, coordinates_of, reduced_density
from .weinberg import covariant_matrix

DEFAULT_TOL = 1e-8
DIRECTION_SEED = 20150226


class CriterionDisagreement(RuntimeError):
    """The three anticoherence criteria returned different orders."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class MultipoleCoefficients:
    """rho_kq = tr(rho T_kq^H), stored in ``coeffs[(k, q)]``."""

    two_j: int
    coeffs: dict

    def __getitem__(self, kq) -> complex:
        return self.coeffs[kq]

    def reconstruct(self) -> np.ndarray:
        dim = self.two_j + 1
        out = np.zeros((dim, dim), dtype=complex)
        for (k, q), c in self.coeffs.items():
            out += c * tensor_operator(self.two_j, k, q)
        return out

    def rank_magnitude(self, k: int) -> float:
        return max(abs(self.coeffs[(k, q)]) for q in range(-k, k + 1))


def multipole_expand(rho) -> MultipoleCoefficients:
    rho = np.asarray(rho, dtype=complex)
    two_j = two_j_of(rho)
    coeffs = {}
    for k in range(two_j + 1):
        for q in range(-k, k + 1):
            coeffs[(k, q)] = complex(np.trace(rho @ tensor_operator(two_j, k, q).conj().T))
    return MultipoleCoefficients(two_j, coeffs)


def _order_from(residuals, tol) -> int:
    order = 0
    for t in range(1, len(residuals)):
        if residuals[t] >= tol:
            break
        order = t
    return order


def reduction_residuals(rho) -> np.ndarray:
    """||rho_(t/2) - 1/(t+1)||_F for t = 0 .. 2j."""
    rho = np.asarray(rho, dtype=complex)
    n = two_j_of(rho)
    out = np.zeros(n + 1)
    for t in range(n + 1):
        red = reduced_density(rho, t)
        out[t] = np.linalg.norm(red - np.eye(t + 1) / (t + 1))
    return out


def multipole_residuals(rho) -> np.ndarray:
    """max_q |rho_tq| for t = 1 .. 2j; entry 0 is fixed at 0."""
    mp = multipole_expand(rho)
    out = np.zeros(mp.two_j + 1)
    for k in range(1, mp.two_j + 1):
        out[k] = mp.rank_magnitude(k)
    return out


def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count) + 0.5
    z = 1 - 2 * i / count
    r = np.sqrt(1 - z * z)
    ang = np.pi * (1 + 5**0.5) * i
    return np.column_stack([r * np.cos(ang), r * np.sin(ang), z])


def default_directions(n_fib=20, n_random=20, seed=DIRECTION_SEED) -> np.ndarray:
    """Six axis directions, Fibonacci-sphere points and seeded random unit vectors."""
    axes = np.vstack([np.eye(3), -np.eye(3)])
    rnd = np.random.default_rng(seed).standard_normal((n_random, 3))
    rnd /= np.linalg.norm(rnd, axis=1, keepdims=True)
    return np.vstack([axes, fibonacci_sphere(n_fib), rnd])


def moment_residuals(rho, directions=None) -> np.ndarray:
    """max - min over directions of <(n.J)^k>, k = 0 .. 2j."""
    rho = np.asarray(rho, dtype=complex)
    n = two_j_of(rho)
    dirs = default_directions() if directions is None else np.asarray(directions, float)
    ops = spin_operators(n, cap=None)
    moments = np.empty((len(dirs), n + 1))
    for d, vec in enumerate(dirs):
        w, v = np.linalg.eigh(ops.dot(vec / np.linalg.norm(vec)))
        # populations of rho in the eigenbasis of n.J
        pops = np.einsum("ai,ab,bi->i", v.conj(), rho, v).real
        moments[d] = [pops @ w**k for k in range(n + 1)]
    return moments.max(axis=0) - moments.min(axis=0)


def order_by_reduction(rho, tol=DEFAULT_TOL) -> int:
    return _order_from(reduction_residuals(rho), tol)


def order_by_multipole(rho, tol=DEFAULT_TOL) -> int:
    return _order_from(multipole_residuals(rho), tol)


def order_by_moments(rho, tol=DEFAULT_TOL, directions=None) -> int:
    return _order_from(moment_residuals(rho, directions), tol)


@dataclass(frozen=True)
class AnticoherenceReport:
    order: int
    residuals: dict  # criterion name -> array indexed by t
    orders: dict  # criterion name -> order it alone implies
    tol: float

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "tol": self.tol,
            "orders": dict(self.orders),
            "residuals": {k: [float(r) for r in v] for k, v in self.residuals.items()},
        }


def anticoherence_report(rho, tol=DEFAULT_TOL, directions=None) -> AnticoherenceReport:
    """Evaluate all three criteria; raise if they disagree on the order."""
    rho = check_density(rho, cap=None)
    residuals = {
        "reduction": reduction_residuals(rho),
        "multipole": multipole_residuals(rho),
        "moments": moment_residuals(rho, directions),
    }
    orders = {name: _order_from(res, tol) for name, res in residuals.items()}
    distinct = set(orders.values())
    if len(distinct) != 1:
        partial = AnticoherenceReport(-1, residuals, orders, tol)
        raise CriterionDisagreement(f"anticoherence criteria disagree: {orders}", partial)
    return AnticoherenceReport(distinct.pop(), residuals, orders, tol)


def order1_vector(rho) -> np.ndarray:
    """<S_{mu 0...0}> for mu = 0..3; equals (1, 0, 0, 0) iff order >= 1."""
    rho = np.asarray(rho, dtype=complex)
    n = two_j_of(rho)
    check_two_j(n, cap=None)
    if n < 1:
        raise ValueError("order-1 vector needs two_j >= 1")
    pad = (0,) * (n - 1)
    return np.array([np.trace(rho @ covariant_matrix(n, pad + (mu,), cap=None)).real for mu in range(4)])


ORDER2_TARGET = np.diag([1.0, 1 / 3, 1 / 3, 1 / 3])


def order2_matrix(rho) -> np.ndarray:
    """A_{mu nu} = <S_{mu nu 0...0}>; equals diag(1, 1/3, 1/3, 1/3) at order >= 2."""
    rho = np.asarray(rho, dtype=complex)
    n = two_j_of(rho)
    if n < 2:
        raise ValueError("order-2 matrix needs two_j >= 2")
    pad = (0,) * (n - 2)
    out = np.empty((4, 4))
    for mu in range(4):
        for nu in range(mu, 4):
            val = np.trace(rho @ covariant_matrix(n, pad + (mu, nu), cap=None)).real
            out[mu, nu] = out[nu, mu] = val
    return out


# spin-1 family anticoherent to order 1 -----------------------------------


@dataclass(frozen=True)
class Spin1FamilyReport:
    matrix: np.ndarray
    minor_condition: bool  # a(1 + 2a) <= -|beta|^2
    determinant_condition: bool
    min_eigenvalue: float

    @property
    def conditions_hold(self) -> bool:
        return self.minor_condition and self.determinant_condition

    @property
    def is_psd(self) -> bool:
        return self.min_eigenvalue >= -1e-12

    @property
    def consistent(self) -> bool:
        """True when the two inequalities and the eigenvalue test agree."""
        return self.conditions_hold == self.is_psd


def spin1_family(a: float, beta: complex, gamma: complex, slack=1e-12) -> Spin1FamilyReport:
    """The general order-1 anticoherent spin-1 matrix and its positivity diagnostics.

    rho = [[1/2 + a, beta, gamma], [beta*, -2a, -beta], [gamma*, -beta*, 1/2 + a]]
    in the |1, m> basis with m = 1, 0, -1.
    """
    beta, gamma = complex(beta), complex(gamma)
    rho = np.array(
        [
            [0.5 + a, beta, gamma],
            [beta.conjugate(), -2 * a, -beta],
            [gamma.conjugate(), -beta.conjugate(), 0.5 + a],
        ],
        dtype=complex,
    )
    b2 = abs(beta) ** 2
    first = a * (1 + 2 * a) <= -b2 + slack
    second = (
        2 * a * (abs(gamma) ** 2 - b2 - 0.25 - a * (1 + a))
        >= b2 + 2 * (gamma * beta.conjugate() ** 2).real - slack
    )
    lo = float(np.linalg.eigvalsh(rho)[0])
    return Spin1FamilyReport(rho, bool(first), bool(second), lo)


def spin1_family_coordinates(a: float, beta: complex, gamma: complex) -> dict:
    """Closed-form nonzero coordinates of :func:`spin1_family` (canonical indices).

    Signs of the off-diagonal entries follow from the m = 1, 0, -1 ordering and
    Condon-Shortley spin matrices, e.g. x_12 = tr(rho (Jx Jy + Jy Jx)) =
    (tr(rho J+^2) - tr(rho J-^2)) / 2i = -2 Im(gamma).
    """
    beta, gamma = complex(beta), complex(gamma)
    r2 = np.sqrt(2.0)
    return {
        (0, 0): 1.0,
        (1, 1): 2 * (gamma.real - a),
        (1, 2): -2 * gamma.imag,
        (1, 3): 2 * r2 * beta.real,
        (2, 2): -2 * (gamma.real + a),
        (2, 3): -2 * r2 * beta.imag,
        (3, 3): 4 * a + 1,
    }


def spin1_family_check(a, beta, gamma) -> float:
    """Max deviation between the closed-form coordinates and tr(rho S)."""
    rep = spin1_family(a, beta, gamma)
    x = coordinates_of(rep.matrix)
    expected = spin1_family_coordinates(a, beta, gamma)
    return max(abs(x[idx] - expected.get(idx, 0.0)) for idx in x.indices)
