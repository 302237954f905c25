import numpy as np
import pytest

from spintensor.weinberg import dicke_basis, pauli_string

ACCEPTANCE_LINES = []


def record(name, ok, detail=""):
    """Remember an acceptance verdict for the end-of-run summary."""
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" :: {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(dim, rng):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (a + a.conj().T)


def random_axis(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


# Dense oracles ---------------------------------------------------------------
# These materialise the 2^N qubit space and are only used for small N.


def dicke_isometry(n):
    """2^N x (N+1) matrix whose columns are Dicke states in descending-m order."""
    basis = dicke_basis(n, cap=None)
    return np.column_stack([basis.dense(k) for k in range(n, -1, -1)])


def dense_projection(idx):
    """Symmetric-subspace block of the Pauli string, built with dense matrices."""
    v = dicke_isometry(len(idx))
    return v.conj().T @ pauli_string(idx) @ v


def dense_partial_trace(rho, two_k):
    """Embed rho in N qubits, trace out N - 2k of them, return the spin-k block."""
    n = rho.shape[0] - 1
    v = dicke_isometry(n)
    big = v @ rho @ v.conj().T
    keep = 2**two_k
    # low bits are the kept qubits: index = rest * keep + kept
    big = big.reshape(2 ** (n - two_k), keep, 2 ** (n - two_k), keep)
    small = np.einsum("akal->kl", big)
    if two_k == 0:
        return small
    w = dicke_isometry(two_k)
    return w.conj().T @ small @ w
