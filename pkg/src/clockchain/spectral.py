"""Exact diagonalization, degeneracy statistics and free-mode detection."""

from __future__ import annotations

import math
import time
import warnings

import numpy as np

from . import linalg
from .models import ModelSpec, commuting_charge, hamiltonian
from .reports import make_report

__all__ = [
    "spectrum",
    "degeneracies",
    "free_spectrum_decomposition",
    "charge_compatibility",
]

MAX_FREE_MODES = 14


def spectrum(model: ModelSpec, cap: int = linalg.DENSE_CAP) -> np.ndarray:
    """Ascending eigenvalues of the dense model Hamiltonian.

    Non-Hermitian Hamiltonians (open chains of the chiral clock kinds) are
    routed to the general eigensolver with a warning; eigenvalues are then
    returned sorted by real part and may be complex.
    """
    H = linalg.to_dense(hamiltonian(model), cap=cap)
    scale = max(linalg.frobenius_norm(H), 1e-300)
    if linalg.frobenius_norm(H - H.conj().T) <= 1e-10 * scale:
        vals, _ = linalg.hermitian_eigs(H)
        return vals
    warnings.warn(f"{model.kind} Hamiltonian is not Hermitian here; "
                  "returning general (complex) eigenvalues")
    vals = np.linalg.eigvals(H)
    return vals[np.lexsort((vals.imag, vals.real))]


def degeneracies(eigs, tol: float = None) -> list:
    """Cluster a sorted spectrum into (value, multiplicity) pairs.

    Neighbouring eigenvalues closer than `tol` join one cluster; the
    reported value is the cluster mean.  Default tol is 1e-8 * max(1, |E|max).
    """
    eigs = np.asarray(eigs)
    if eigs.size and np.any(np.diff(eigs.real) < -1e-12):
        raise ValueError("input spectrum must be sorted ascending")
    if tol is None:
        tol = 1e-8 * max(1.0, float(np.abs(eigs).max()) if eigs.size else 1.0)
    out = []
    members = []
    for e in eigs:
        if members and abs(e - members[-1]) > tol:
            out.append((float(np.mean(members).real), len(members)))
            members = []
        members.append(e)
    if members:
        out.append((float(np.mean(members).real), len(members)))
    return out


def free_spectrum_decomposition(eigs, modes: int, tol: float = 1e-8):
    """Mode energies eps_1..eps_modes >= 0 with {sum_k +-eps_k} = eigs,
    or None when no such decomposition exists.

    The ground state forces eps greedily: after fixing eps_1..eps_{k-1},
    the smallest spectrum value not generated by sign choices over the
    fixed modes must be E_0 + 2 eps_k.  The full 2^modes multiset is then
    validated, so a returned decomposition is certified and a None is an
    exhaustive refutation at this tolerance.
    """
    eigs = sorted(float(e) for e in eigs)
    if len(eigs) != 2 ** modes:
        raise ValueError(f"need exactly 2^{modes} eigenvalues, got {len(eigs)}")
    if modes > MAX_FREE_MODES:
        raise ValueError(f"modes capped at {MAX_FREE_MODES}")
    e0 = eigs[0]
    eps = []
    generated = [e0]
    for _ in range(modes):
        rest = _multiset_difference(eigs, generated, tol)
        if rest is None or not rest:
            return None
        nxt = rest[0]
        ek = (nxt - e0) / 2
        if ek < -tol:
            return None
        eps.append(max(ek, 0.0))
        generated = sorted(generated + [g + 2 * eps[-1] for g in generated])
    if _multiset_difference(eigs, generated, max(tol, 1e-6)) != []:
        return None
    return eps


def _multiset_difference(big, small, tol):
    """Sorted multiset big - small with tolerance matching; None if some
    element of small has no partner."""
    big = list(big)
    out = []
    i = 0
    for s in sorted(small):
        while i < len(big) and big[i] < s - tol:
            out.append(big[i])
            i += 1
        if i < len(big) and abs(big[i] - s) <= tol:
            i += 1
        else:
            return None
    out.extend(big[i:])
    return out


def charge_compatibility(model: ModelSpec, charges: dict,
                         tol: float = 1e-9,
                         cap: int = linalg.DENSE_CAP) -> list:
    """Commutator residuals between the Hamiltonian and a set of dense
    charges, plus the positive non-commutation statement for the quadratic
    H^(s,t) family (its members must NOT commute pairwise).

    charges: {name: dense matrix}; returns VerificationReports.
    """
    start = time.perf_counter()
    H = linalg.to_dense(hamiltonian(model), cap=cap)
    named = {"H": H}
    named.update(charges)
    reports = []
    keys = list(named)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            res = _comm_residual(named[a], named[b])
            reports.append(make_report(
                "spectral", f"commute[{a},{b}]", res, tol,
                params={"kind": model.kind, "L": model.L}))
    # quadratic charges do not commute among themselves
    if model.Q == 2 and model.r >= 2 and model.n_generators % (model.r + 1) == 0:
        pairs = [(s, t) for s in range(model.r + 1)
                 for t in range(s + 1, model.r + 1)]
        mats = {p: linalg.to_dense(commuting_charge(model, *p), cap=cap)
                for p in pairs}
        worst = 0.0
        for i, p in enumerate(pairs):
            for q in pairs[i + 1:]:
                worst = max(worst, _comm_residual(mats[p], mats[q]))
        # report passes when the family is genuinely non-commuting
        reports.append(make_report(
            "spectral", "quadratic_charges_noncommuting",
            0.0 if worst > 1e-6 else 1.0, 0.5,
            params={"max_pair_residual": worst}))
    wall = (time.perf_counter() - start) * 1e3
    return [make_report(r.suite, r.name, r.residual, r.tol, params=r.params,
                        wall_ms=wall / len(reports)) for r in reports]


def _comm_residual(a, b):
    return linalg.frobenius_norm(a @ b - b @ a) / max(
        linalg.frobenius_norm(a) * linalg.frobenius_norm(b) /
        max(math.sqrt(a.shape[0]), 1.0), 1e-300)
