"""Shared independent oracles: dense operators built directly from numpy
Kronecker products, never through the package's own realization path."""

import numpy as np
import pytest
from functools import reduce

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": np.eye(2, dtype=complex), "X": SX, "Y": SY, "Z": SZ}


def clock_xz(Q):
    w = np.exp(2j * np.pi / Q)
    X = np.zeros((Q, Q), dtype=complex)
    for k in range(Q):
        X[(k - 1) % Q, k] = 1.0
    Z = np.diag(w ** np.arange(Q))
    return X, Z


def site_op(ops, L, Q=2):
    """Dense operator with `ops` = {site (1-based): matrix} via np.kron."""
    eye = np.eye(Q, dtype=complex)
    return reduce(np.kron, [ops.get(j, eye) for j in range(1, L + 1)])


def pauli_site_op(labels, L):
    """labels = {site (1-based): 'X'|'Y'|'Z'}."""
    return site_op({j: PAULI[l] for j, l in labels.items()}, L)


def dense_clock_string(term):
    """Independent dense realization of a ClockString via np.kron."""
    X, Z = clock_xz(term.Q)
    mats = [np.linalg.matrix_power(X, x) @ np.linalg.matrix_power(Z, z)
            for x, z in zip(term.x_exp, term.z_exp)]
    return term.coeff * reduce(np.kron, mats)


def dense_opsum(op):
    return sum(dense_clock_string(t) for t in op.terms)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
