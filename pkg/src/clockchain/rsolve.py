"""Numerical derivation of intertwiners from the Yang-Baxter constraint.

The relation R(u,v) L(u) L(v) = L(v) L(u) R(u,v) is linear in R, so R is
recovered as the null space of a stacked constraint matrix: for every
physical matrix unit (m, n) the aux-space blocks A_mn, B_mn of
A = L1 L2 and B = L2 L1 impose  R A_mn - B_mn R = 0.
"""

from __future__ import annotations

import cmath
import math
import time

import numpy as np

from . import linalg
from .integrability import LaxOperator, ybe_rrr_residual

__all__ = [
    "build_ybe_system",
    "solve_intertwiner",
    "match_to_reference",
    "theta_scan",
]


def build_ybe_system(lax: LaxOperator, u, v) -> np.ndarray:
    """Constraint matrix S with S vec(R) = 0 encoding the intertwining
    relation for the Lax family evaluated at (u, v).

    Rows are grouped in phys_dim^2 blocks, one per physical matrix unit;
    vec is row-major.  S has shape (p^2 D^2, D^2) with D = aux_dim^2.
    """
    d, p = lax.aux_dim, lax.phys_dim
    D = d * d
    dims = (d, d, p)
    L1 = linalg.embed_slots(lax.evaluate(u), (0, 2), dims)
    L2 = linalg.embed_slots(lax.evaluate(v), (1, 2), dims)
    A = (L1 @ L2).reshape(D, p, D, p)
    B = (L2 @ L1).reshape(D, p, D, p)
    eye = np.eye(D)
    blocks = []
    for m in range(p):
        for n in range(p):
            Amn = A[:, m, :, n]
            Bmn = B[:, m, :, n]
            # row-major vec: vec(R A) = (I x A^T) vec(R), vec(B R) = (B x I) vec(R)
            blocks.append(np.kron(eye, Amn.T) - np.kron(Bmn, eye))
    return np.vstack(blocks)


def solve_intertwiner(lax: LaxOperator, u, v, tol: float = 1e-10) -> dict:
    """Kernel of the YBE constraint system, reshaped to candidate matrices.

    Returns {"candidates": [...], "kernel_dim": k, "singular_values": s}.
    Candidates are normalized so the first entry above 1e-8 of the max
    modulus (row-major scan) equals 1.  An empty kernel is reported, not
    raised.
    """
    D = lax.aux_dim ** 2
    S = build_ybe_system(lax, u, v)
    basis = linalg.null_space(S, rtol=tol)
    _, s, _ = np.linalg.svd(S)
    candidates = [_normalize(vec.reshape(D, D)) for vec in basis]
    return {"candidates": candidates, "kernel_dim": len(basis),
            "singular_values": s}


def _normalize(mat: np.ndarray) -> np.ndarray:
    cut = 1e-8 * np.abs(mat).max()
    for val in mat.ravel():
        if abs(val) > cut:
            return mat / val
    return mat


def match_to_reference(candidate: np.ndarray, reference: np.ndarray) -> dict:
    """Least-squares scalar fit candidate = alpha * reference.

    Returns {"scalar": alpha, "residual": ||candidate - alpha ref|| / ||ref||}.
    """
    if candidate.shape != reference.shape:
        raise ValueError("shape mismatch")
    nref = linalg.frobenius_norm(reference)
    if nref == 0:
        raise ValueError("zero reference matrix")
    alpha = complex(np.vdot(reference, candidate)) / nref ** 2
    res = linalg.frobenius_norm(candidate - alpha * reference) / nref
    return {"scalar": alpha, "residual": res}


def theta_scan(theta_grid, sample_pairs: int = 3, seed: int = 0,
               tol: float = 1e-10) -> list:
    """Kernel statistics of the mixed range-2 family across mixing angles.

    For each theta, `sample_pairs` random (z, w, x) triples on the unit
    circle are drawn; the solver runs on each pair of legs, kernel
    dimensions are recorded, and for uniquely solved triples the residual
    of R12 R13 R23 = R23 R13 R12 is evaluated (scalar normalization drops
    out of the triple relation).

    Returns a list of dicts {theta, z, w, x, kernel_dims, ybe_residual,
    seed, wall_ms}, one per sampled triple.
    """
    from .integrability import lax_operator_fendley_mixed

    rng = np.random.default_rng(seed)
    rows = []
    for theta in theta_grid:
        lax = lax_operator_fendley_mixed(float(theta))
        for _ in range(sample_pairs):
            start = time.perf_counter()
            phis = rng.uniform(0.05, 0.9, size=3)
            z, w, x = (cmath.exp(1j * p) for p in phis)
            sols = [solve_intertwiner(lax, a, b, tol=tol)
                    for a, b in ((z, w), (z, x), (w, x))]
            dims = [s["kernel_dim"] for s in sols]
            resid = None
            if all(d == 1 for d in dims):
                resid = ybe_rrr_residual(sols[0]["candidates"][0],
                                         sols[1]["candidates"][0],
                                         sols[2]["candidates"][0],
                                         lax.aux_dim ** 2)
            rows.append({
                "theta": float(theta),
                "z": str(z), "w": str(w), "x": str(x),
                "kernel_dims": dims,
                "ybe_residual": resid,
                "seed": seed,
                "wall_ms": (time.perf_counter() - start) * 1e3,
            })
    return rows
