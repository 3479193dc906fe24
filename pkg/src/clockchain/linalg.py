"""Dense complex linear algebra for operator realizations.

Matrices are plain numpy arrays (complex128, row-major).  The module adds
what numpy does not ship directly: realization of OperatorSums on
(C^Q)^(x N), tensor-slot embeddings, slot permutation operators, guarded
eigensolving / inversion, SVD null spaces, and debug dumps.
"""

from __future__ import annotations

import csv
import struct
from functools import lru_cache, reduce

import numpy as np

from .strings import OperatorSum, _omega_table

__all__ = [
    "DENSE_CAP",
    "DimensionCapError",
    "clock_matrices",
    "to_dense",
    "kron",
    "kron_all",
    "matmul",
    "frobenius_norm",
    "permutation_operator",
    "embed_slots",
    "hermitian_eigs",
    "inverse",
    "null_space",
    "dump_binary",
    "load_binary",
    "dump_csv",
]

DENSE_CAP = 2 ** 16


class DimensionCapError(RuntimeError):
    """Raised when a dense realization would exceed the configured cap."""


@lru_cache(maxsize=None)
def clock_matrices(Q: int):
    """Shift and phase matrices: X|k> = |k-1>, Z|k> = omega^k |k>."""
    X = np.zeros((Q, Q), dtype=complex)
    for k in range(Q):
        X[(k - 1) % Q, k] = 1.0
    Z = np.diag(np.array(_omega_table(Q)))
    return X, Z


@lru_cache(maxsize=32)
def _digit_table(Q: int, N: int):
    dim = Q ** N
    idx = np.arange(dim)
    digits = np.empty((N, dim), dtype=np.int64)
    for j in range(N - 1, -1, -1):
        digits[j] = idx % Q
        idx = idx // Q
    return digits


def to_dense(op: OperatorSum, cap: int = DENSE_CAP) -> np.ndarray:
    """Dense matrix of an OperatorSum on (C^Q)^(x N), site 1 leftmost.

    Each clock monomial is a generalized permutation matrix
    |k_1..k_N> -> omega^(sum z_j k_j) |k_1-x_1 .. k_N-x_N>, so the matrix
    is filled column-wise without forming Kronecker products.
    """
    Q, N = op.Q, op.N
    dim = Q ** N
    if dim > cap:
        raise DimensionCapError(f"Q^N = {dim} exceeds dense cap {cap}")
    digits = _digit_table(Q, N)
    phase_table = np.array(_omega_table(Q))
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    strides = Q ** np.arange(N - 1, -1, -1)
    for term in op.terms:
        x = np.array(term.x_exp, dtype=np.int64)
        z = np.array(term.z_exp, dtype=np.int64)
        rows = ((digits - x[:, None]) % Q * strides[:, None]).sum(axis=0)
        phases = phase_table[(z[:, None] * digits).sum(axis=0) % Q]
        out[rows, cols] += term.coeff * phases
    return out


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def kron_all(mats) -> np.ndarray:
    return reduce(np.kron, mats)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b


def frobenius_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def permutation_operator(dim: int, a: int, b: int, slots: int) -> np.ndarray:
    """Operator swapping tensor slots a and b (0-based) of dim^slots."""
    if not (0 <= a < slots and 0 <= b < slots):
        raise ValueError(f"slots {a},{b} out of range for {slots} slots")
    D = dim ** slots
    P = np.zeros((D, D))
    strides = dim ** np.arange(slots - 1, -1, -1)
    idx = np.arange(D)
    digits = (idx[None, :] // strides[:, None]) % dim
    swapped = digits.copy()
    swapped[[a, b]] = digits[[b, a]]
    rows = (swapped * strides[:, None]).sum(axis=0)
    P[rows, idx] = 1.0
    return P


def embed_slots(op: np.ndarray, positions, dims) -> np.ndarray:
    """Embed `op`, acting on the given tensor slots, into the full product.

    positions: slot indices (0-based, in the order op's factors are laid
    out); dims: dimension of every slot of the full space.
    """
    dims = list(dims)
    pos = list(positions)
    n = len(dims)
    rest = [i for i in range(n) if i not in pos]
    d_rest = int(np.prod([dims[i] for i in rest], dtype=object)) if rest else 1
    big = np.kron(op, np.eye(d_rest))
    order = pos + rest          # current slot layout of `big`
    perm = np.argsort(order)    # natural slot k sits at layout position perm[k]
    shape = [dims[i] for i in order]
    T = big.reshape(shape + shape)
    axes = list(perm) + [n + p for p in perm]
    D = int(np.prod(dims, dtype=object))
    return np.ascontiguousarray(T.transpose(axes)).reshape(D, D)


def hermitian_eigs(m: np.ndarray, check_tol: float = 1e-10):
    """Ascending eigenvalues and eigenvectors of a Hermitian matrix.

    Rejects input with ||m - m^dag|| > check_tol * ||m||.  The returned
    pairs satisfy ||m v - lam v|| <= 1e-8 ||m|| (checked in the test suite).
    """
    scale = max(frobenius_norm(m), 1e-300)
    herm_defect = frobenius_norm(m - m.conj().T)
    if herm_defect > check_tol * scale:
        raise ValueError(
            f"matrix is not Hermitian: defect {herm_defect:.3e} vs "
            f"{check_tol:.1e} * {scale:.3e}")
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def inverse(m: np.ndarray, cond_cap: float = 1e12) -> np.ndarray:
    c = np.linalg.cond(m)
    if not np.isfinite(c) or c >= cond_cap:
        raise np.linalg.LinAlgError(
            f"condition estimate {c:.3e} exceeds cap {cond_cap:.1e}")
    return np.linalg.inv(m)


def null_space(m: np.ndarray, rtol: float = 1e-10):
    """Orthonormal basis of {v : ||m v|| <= rtol * sigma_max * ||v||}.

    Returns a list of vectors; singular values <= rtol * sigma_max count
    as null.
    """
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    n_cols = vh.shape[0]
    basis = [vh[i].conj() for i in range(n_cols)
             if i >= s.size or s[i] <= rtol * smax]
    return basis


# -- debug dumps ------------------------------------------------------------
# Binary layout: two little-endian uint64 (rows, cols), then row-major
# float64 pairs (re, im) for every entry.

def dump_binary(m: np.ndarray, path) -> None:
    m = np.asarray(m, dtype=complex)
    with open(path, "wb") as fh:
        fh.write(struct.pack("<QQ", m.shape[0], m.shape[1]))
        inter = np.empty(m.size * 2)
        inter[0::2] = m.real.ravel()
        inter[1::2] = m.imag.ravel()
        fh.write(inter.astype("<f8").tobytes())


def load_binary(path) -> np.ndarray:
    with open(path, "rb") as fh:
        rows, cols = struct.unpack("<QQ", fh.read(16))
        data = np.frombuffer(fh.read(), dtype="<f8")
    return (data[0::2] + 1j * data[1::2]).reshape(rows, cols)


def dump_csv(m: np.ndarray, path) -> None:
    """CSV rows "row,col,re,im", one line per entry."""
    m = np.asarray(m, dtype=complex)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", "col", "re", "im"])
        for i in range(m.shape[0]):
            for j in range(m.shape[1]):
                writer.writerow([i, j, repr(float(m[i, j].real)),
                                 repr(float(m[i, j].imag))])
