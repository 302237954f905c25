from math import sqrt

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from spintensor.angular import (
    SpinError,
    check_two_j,
    clebsch_gordan,
    coherent_state,
    direction_of,
    rotation_matrix_3d,
    rotation_operator,
    spin_operators,
    tensor_operator,
)

from .conftest import random_axis


def test_spin_half_is_pauli_over_two():
    ops = spin_operators(1)
    assert np.allclose(ops.jz, np.diag([0.5, -0.5]), atol=0)
    assert np.allclose(ops.jx, 0.5 * np.array([[0, 1], [1, 0]]), atol=0)
    assert np.allclose(ops.jy, 0.5 * np.array([[0, -1j], [1j, 0]]), atol=0)


def test_spin_one_jz():
    assert np.array_equal(spin_operators(2).jz, np.diag([1, 0, -1]))


@pytest.mark.parametrize("two_j", range(0, 13))
def test_commutators_and_casimir(two_j):
    jx, jy, jz = spin_operators(two_j)
    j = two_j / 2
    assert np.max(np.abs(jx @ jy - jy @ jx - 1j * jz)) < 1e-10
    assert np.max(np.abs(jy @ jz - jz @ jy - 1j * jx)) < 1e-10
    assert np.max(np.abs(jz @ jx - jx @ jz - 1j * jy)) < 1e-10
    cas = jx @ jx + jy @ jy + jz @ jz
    assert np.max(np.abs(cas - j * (j + 1) * np.eye(two_j + 1))) < 1e-10
    for op in (jx, jy, jz):
        assert np.allclose(op, op.conj().T, atol=1e-12)


def test_check_two_j_rejects_bad_values():
    with pytest.raises(SpinError):
        check_two_j(-1)
    with pytest.raises(SpinError):
        check_two_j(13)
    with pytest.raises(SpinError):
        check_two_j(1.5)
    assert check_two_j(20, cap=None) == 20


def test_coherent_state_poles_and_equator():
    assert np.allclose(coherent_state(2, 0, 0), [1, 0, 0])
    assert np.allclose(coherent_state(2, np.pi, 1.3), [0, 0, 1], atol=1e-15)
    assert np.allclose(coherent_state(1, np.pi / 2, 0), np.array([1, 1]) / sqrt(2))


@given(st.integers(0, 10), st.floats(0, np.pi), st.floats(0, 2 * np.pi))
def test_coherent_state_normalised(two_j, theta, phi):
    assert abs(np.linalg.norm(coherent_state(two_j, theta, phi)) - 1) < 1e-12


@pytest.mark.parametrize(
    "angles, expected",
    [((0, 0), (1, 0, 0, 1)), ((np.pi / 2, 0), (1, 1, 0, 0)), ((np.pi / 2, np.pi / 2), (1, 0, 1, 0))],
)
def test_direction_of(angles, expected):
    assert np.allclose(direction_of(*angles), expected, atol=1e-15)


def test_coherent_state_is_rotated_highest_weight(rng):
    # overlap with the rotated |j,j> is 1 up to a phase
    for two_j in range(0, 9):
        for _ in range(5):
            theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
            axis = np.array([-np.sin(phi), np.cos(phi), 0.0])
            top = np.zeros(two_j + 1)
            top[0] = 1
            rotated = rotation_operator(two_j, axis, theta) @ top
            assert abs(abs(np.vdot(rotated, coherent_state(two_j, theta, phi))) - 1) < 1e-10


def test_rotation_operator_basic_cases():
    assert np.allclose(rotation_operator(3, [0, 0, 1], 0.0), np.eye(4), atol=1e-14)
    theta = 0.77
    expected = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])
    assert np.allclose(rotation_operator(1, [0, 0, 1], theta), expected, atol=1e-14)


@pytest.mark.parametrize("two_j", range(0, 9))
def test_full_turn_gives_spinor_sign(two_j, rng):
    axis = random_axis(rng)
    ops = spin_operators(two_j)
    oracle = scipy.linalg.expm(-2j * np.pi * ops.dot(axis))
    u = rotation_operator(two_j, axis, 2 * np.pi)
    assert np.max(np.abs(u - oracle)) < 1e-10
    assert np.max(np.abs(u - (-1) ** two_j * np.eye(two_j + 1))) < 1e-10
    assert np.max(np.abs(u @ u.conj().T - np.eye(two_j + 1))) < 1e-12


def test_rotation_rejects_non_unit_axis():
    with pytest.raises(ValueError):
        rotation_operator(2, [1, 1, 0], 0.3)
    with pytest.raises(ValueError):
        rotation_matrix_3d([0, 0, 2], 0.3)


def test_rotation_matrix_3d():
    assert np.allclose(rotation_matrix_3d([0, 0, 1], 0), np.eye(3))
    r = rotation_matrix_3d([0, 0, 1], np.pi / 2)
    assert np.allclose(r @ [1, 0, 0], [0, 1, 0], atol=1e-15)


@settings(max_examples=50)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-7, 7))
def test_rotation_matrix_is_proper(x, y, z, angle):
    v = np.array([x, y, z])
    if np.linalg.norm(v) < 1e-3:
        v = np.array([0.0, 0.0, 1.0])
    r = rotation_matrix_3d(v / np.linalg.norm(v), angle)
    assert abs(np.linalg.det(r) - 1) < 1e-12
    assert np.max(np.abs(r @ r.T - np.eye(3))) < 1e-12


@pytest.mark.parametrize("two_j", range(1, 7))
def test_conjugation_rotates_spin_vector(two_j, rng):
    ops = spin_operators(two_j)
    for _ in range(5):
        axis, angle, a = random_axis(rng), rng.uniform(-np.pi, np.pi), random_axis(rng)
        u = rotation_operator(two_j, axis, angle)
        r = rotation_matrix_3d(axis, angle)
        lhs = u @ ops.dot(a) @ u.conj().T
        assert np.max(np.abs(lhs - ops.dot(r @ a))) < 1e-10


# Clebsch-Gordan ---------------------------------------------------------------


def lowering_oracle(tj1, tj2):
    """CG table from highest-weight states and repeated lowering.

    Returns {(tm1, tm2, tJ, tM): value} built only from spin matrices in the
    product space; the sign of each |J,J> is fixed by a positive coefficient on
    m1 = j1 (Condon-Shortley).
    """
    o1, o2 = spin_operators(tj1, cap=None), spin_operators(tj2, cap=None)
    d1, d2 = tj1 + 1, tj2 + 1
    jz = np.kron(o1.jz, np.eye(d2)) + np.kron(np.eye(d1), o2.jz)
    jp = np.kron(o1.jx + 1j * o1.jy, np.eye(d2)) + np.kron(np.eye(d1), o2.jx + 1j * o2.jy)
    jm = jp.conj().T
    tm1 = tj1 - 2 * np.arange(d1)
    tm2 = tj2 - 2 * np.arange(d2)
    tM_of = (tm1[:, None] + tm2[None, :]).ravel()
    table = {}
    for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
        sub = np.flatnonzero(tM_of == tJ)
        # |J,J> spans the kernel of J+ restricted to the M = J block
        _, s, vh = np.linalg.svd(jp[:, sub])
        vec = np.zeros(d1 * d2, dtype=complex)
        vec[sub] = vh[-1].conj()
        if len(sub) > 1:
            assert s[-1] < 1e-10
        lead = vec[sub[np.argmax(tm1[sub // d2])]]
        vec *= np.conj(lead) / abs(lead)
        for tM in range(tJ, -tJ - 1, -2):
            for flat in np.flatnonzero(np.abs(vec) > 1e-14):
                table[(int(tm1[flat // d2]), int(tm2[flat % d2]), tJ, tM)] = vec[flat].real
            if tM > -tJ:
                vec = jm @ vec
                vec /= np.linalg.norm(vec)
    return table


def test_cg_stretched_and_singlet_values():
    assert clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1, 1) == pytest.approx(1.0, abs=1e-15)
    assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) == pytest.approx(1 / sqrt(2), abs=1e-15)
    assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == pytest.approx(1 / sqrt(2), abs=1e-15)
    assert clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0, 0) == pytest.approx(-1 / sqrt(2), abs=1e-15)


def test_cg_selection_rules_give_zero():
    assert clebsch_gordan(1, 1, 1, 0, 2, 0) == 0.0
    assert clebsch_gordan(1, 0, 1, 0, 3, 0) == 0.0
    # half-integer plus integer cannot couple to an integer J
    assert clebsch_gordan(0.5, 0.5, 1, 0, 1, 0.5) == 0.0
    assert clebsch_gordan(0.5, 0.5, 1, 0, 1.5, 0.5) == pytest.approx(sqrt(2 / 3), abs=1e-15)
    with pytest.raises(SpinError):
        clebsch_gordan(0.25, 0.25, 1, 0, 1, 0.25)


@pytest.mark.parametrize("tj1,tj2", [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3), (6, 4)])
def test_cg_matches_lowering_oracle(tj1, tj2):
    table = lowering_oracle(tj1, tj2)
    for (tm1, tm2, tJ, tM), ref in table.items():
        got = clebsch_gordan(tj1 / 2, tm1 / 2, tj2 / 2, tm2 / 2, tJ / 2, tM / 2)
        assert got == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("tj1,tj2", [(1, 1), (2, 3), (4, 4), (6, 5), (6, 6)])
def test_cg_orthogonality_both_groupings(tj1, tj2):
    ms1 = range(-tj1, tj1 + 1, 2)
    ms2 = range(-tj2, tj2 + 1, 2)
    couples = [(tJ, tM) for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2) for tM in range(-tJ, tJ + 1, 2)]
    pairs = [(a, b) for a in ms1 for b in ms2]
    mat = np.array(
        [[clebsch_gordan(tj1 / 2, a / 2, tj2 / 2, b / 2, tJ / 2, tM / 2) for (tJ, tM) in couples] for (a, b) in pairs]
    )
    assert mat.shape[0] == mat.shape[1]
    assert np.max(np.abs(mat.T @ mat - np.eye(len(couples)))) < 1e-10
    assert np.max(np.abs(mat @ mat.T - np.eye(len(pairs)))) < 1e-10


# Tensor operators ---------------------------------------------------------------


def test_t00_is_scaled_identity():
    for two_j in range(0, 9):
        assert np.allclose(tensor_operator(two_j, 0, 0), np.eye(two_j + 1) / sqrt(two_j + 1), atol=1e-14)


def test_t10_is_proportional_to_jz():
    t10 = np.diag(tensor_operator(2, 1, 0)).real
    jz = np.diag(spin_operators(2).jz).real
    ratio = t10[[0, 2]] / jz[[0, 2]]
    assert ratio[0] > 0 and ratio[0] == pytest.approx(ratio[1], abs=1e-14)
    assert t10[1] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("two_j", range(0, 9))
def test_tensor_operators_orthonormal(two_j):
    ops = [tensor_operator(two_j, k, q) for k in range(two_j + 1) for q in range(-k, k + 1)]
    flat = np.array([t.ravel() for t in ops])
    gram = flat.conj() @ flat.T
    assert np.max(np.abs(gram - np.eye(len(ops)))) < 1e-10


def test_tensor_operator_range_checked():
    with pytest.raises(SpinError):
        tensor_operator(2, 3, 0)
    with pytest.raises(SpinError):
        tensor_operator(2, 1, 2)
