"""Exact symbolic algebra of clock strings on a periodic chain.

A clock string is a monomial  coeff * prod_j X_j^{x_j} Z_j^{z_j}  in the
Z_Q shift/phase operators, normal-ordered as X^x Z^z on every site.  For
Q = 2 these are Pauli strings (sigma^x = X, sigma^z = Z, sigma^y = i X Z).
All products reduce to a single exchange rule per site,

    Z^z X^x = omega^(-z*x) X^x Z^z,    omega = exp(2*pi*i/Q),

so multiplication is exact up to one root-of-unity lookup per product.
"""

from __future__ import annotations

import cmath
import json
import math
from functools import lru_cache

__all__ = [
    "ClockString",
    "OperatorSum",
    "DimensionMismatchError",
    "multiply",
    "commutator",
    "anticommutator",
    "nested_commutator",
    "identity_string",
    "pauli_string",
    "omega",
]

DEFAULT_TOL = 1e-14


class DimensionMismatchError(ValueError):
    """Raised when operands live on different (Q, N)."""


@lru_cache(maxsize=None)
def _omega_table(Q: int) -> tuple[complex, ...]:
    if Q == 2:
        return (1.0 + 0j, -1.0 + 0j)
    if Q == 4:
        return (1.0 + 0j, 1j, -1.0 + 0j, -1j)
    return tuple(cmath.exp(2j * cmath.pi * k / Q) for k in range(Q))


def omega(Q: int, power: int = 1) -> complex:
    """omega^power for omega = exp(2*pi*i/Q), reduced mod Q."""
    return _omega_table(Q)[power % Q]


class ClockString:
    """A single clock monomial: per-site (X, Z) exponents and a coefficient.

    Exponents are reduced mod Q at construction; the coefficient must be
    finite.  Instances are immutable.
    """

    __slots__ = ("Q", "N", "x_exp", "z_exp", "coeff")

    def __init__(self, Q, N, x_exp, z_exp, coeff=1.0 + 0j):
        if Q < 2:
            raise ValueError(f"clock order Q must be >= 2, got {Q}")
        if N < 1:
            raise ValueError(f"site count N must be >= 1, got {N}")
        x = tuple(int(v) % Q for v in x_exp)
        z = tuple(int(v) % Q for v in z_exp)
        if len(x) != N or len(z) != N:
            raise ValueError("exponent arrays must have length N")
        c = complex(coeff)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("coefficient must be finite")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "x_exp", x)
        object.__setattr__(self, "z_exp", z)
        object.__setattr__(self, "coeff", c)

    def __setattr__(self, *_):
        raise AttributeError("ClockString is immutable")

    @property
    def key(self):
        return (self.x_exp, self.z_exp)

    def is_identity_monomial(self) -> bool:
        return not any(self.x_exp) and not any(self.z_exp)

    def __mul__(self, other):
        if isinstance(other, ClockString):
            return multiply(self, other)
        return ClockString(self.Q, self.N, self.x_exp, self.z_exp,
                           self.coeff * complex(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        out = identity_string(self.Q, self.N)
        for _ in range(n):
            out = multiply(out, self)
        return out

    def adjoint(self) -> "ClockString":
        """Hermitian conjugate; X -> X^(Q-1), Z -> Z^(Q-1) plus reorder phase."""
        Q = self.Q
        phase = 0
        for x, z in zip(self.x_exp, self.z_exp):
            # (X^x Z^z)^dag = Z^-z X^-x = omega^(-(-z)(-x)) X^-x Z^-z
            phase -= ((Q - z) % Q) * ((Q - x) % Q)
        x = tuple((Q - v) % Q for v in self.x_exp)
        z = tuple((Q - v) % Q for v in self.z_exp)
        return ClockString(Q, self.N, x, z,
                           self.coeff.conjugate() * omega(Q, phase))

    def translate(self, shift: int) -> "ClockString":
        """Shift every site index by `shift` (periodic)."""
        s = shift % self.N
        x = self.x_exp[-s:] + self.x_exp[:-s] if s else self.x_exp
        z = self.z_exp[-s:] + self.z_exp[:-s] if s else self.z_exp
        return ClockString(self.Q, self.N, x, z, self.coeff)

    def __repr__(self):
        parts = []
        for j, (x, z) in enumerate(zip(self.x_exp, self.z_exp)):
            if x or z:
                site = f"X{j+1}^{x}" * (x > 0) + f"Z{j+1}^{z}" * (z > 0)
                parts.append(site.replace("^1", ""))
        body = " ".join(parts) if parts else "id"
        return f"({self.coeff:.6g})*{body}"


def identity_string(Q: int, N: int, coeff=1.0 + 0j) -> ClockString:
    return ClockString(Q, N, (0,) * N, (0,) * N, coeff)


def multiply(a: ClockString, b: ClockString) -> ClockString:
    """Normal-ordered product of two clock strings.

    Site-wise (X^x1 Z^z1)(X^x2 Z^z2) = omega^(-z1*x2) X^(x1+x2) Z^(z1+z2)
    for the standard shift/phase matrices X|k> = |k-1>, Z|k> = omega^k |k>.
    """
    if a.Q != b.Q or a.N != b.N:
        raise DimensionMismatchError(
            f"operands on (Q={a.Q}, N={a.N}) vs (Q={b.Q}, N={b.N})")
    phase = 0
    for z1, x2 in zip(a.z_exp, b.x_exp):
        phase -= z1 * x2
    x = tuple((u + v) % a.Q for u, v in zip(a.x_exp, b.x_exp))
    z = tuple((u + v) % a.Q for u, v in zip(a.z_exp, b.z_exp))
    return ClockString(a.Q, a.N, x, z, a.coeff * b.coeff * omega(a.Q, phase))


_PAULI_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def pauli_string(N: int, sites: dict, coeff=1.0 + 0j) -> ClockString:
    """Q=2 Pauli monomial from {site_index (1-based): 'X'|'Y'|'Z'}.

    Convention sigma^y = i X Z, so each 'Y' contributes a factor i to the
    stored clock coefficient while the Pauli-level coefficient stays `coeff`.
    """
    x = [0] * N
    z = [0] * N
    c = complex(coeff)
    for site, label in sites.items():
        j = (site - 1) % N
        if x[j] or z[j]:
            raise ValueError(f"site {site} assigned twice")
        ex, ez = _PAULI_XZ[label.upper()]
        x[j], z[j] = ex, ez
        if label.upper() == "Y":
            c *= 1j
    return ClockString(2, N, x, z, c)


class OperatorSum:
    """Canonicalized linear combination of clock strings on shared (Q, N).

    Terms with identical exponent arrays are merged, coefficients below
    the pruning tolerance are dropped, and the term order is lexicographic
    in (x_exp, z_exp) so equality is structural.
    """

    __slots__ = ("Q", "N", "tol", "_terms")

    def __init__(self, terms, Q=None, N=None, tol=DEFAULT_TOL):
        terms = list(terms)
        if not terms and (Q is None or N is None):
            raise ValueError("empty OperatorSum needs explicit (Q, N)")
        if terms:
            Q = terms[0].Q if Q is None else Q
            N = terms[0].N if N is None else N
        merged = {}
        for t in terms:
            if t.Q != Q or t.N != N:
                raise DimensionMismatchError("mixed (Q, N) in term list")
            merged[t.key] = merged.get(t.key, 0j) + t.coeff
        pruned = {k: c for k, c in merged.items() if abs(c) > tol}
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "tol", float(tol))
        object.__setattr__(self, "_terms", dict(sorted(pruned.items())))

    def __setattr__(self, *_):
        raise AttributeError("OperatorSum is immutable")

    @classmethod
    def zero(cls, Q: int, N: int, tol=DEFAULT_TOL):
        return cls([], Q=Q, N=N, tol=tol)

    @classmethod
    def identity(cls, Q: int, N: int, coeff=1.0 + 0j):
        return cls([identity_string(Q, N, coeff)])

    @classmethod
    def from_string(cls, s: ClockString):
        return cls([s])

    @property
    def terms(self) -> tuple:
        """Canonically ordered ClockString terms."""
        return tuple(ClockString(self.Q, self.N, x, z, c)
                     for (x, z), c in self._terms.items())

    def n_terms(self) -> int:
        return len(self._terms)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self._terms.values()) \
            if tol else not self._terms

    def coefficient(self, x_exp, z_exp) -> complex:
        key = (tuple(int(v) % self.Q for v in x_exp),
               tuple(int(v) % self.Q for v in z_exp))
        return self._terms.get(key, 0j)

    def max_coeff(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def frobenius_norm(self) -> float:
        """Frobenius norm of the dense realization, computed exactly.

        Distinct clock monomials are orthogonal with squared norm Q^N,
        so no dense matrix is ever formed.
        """
        s = sum(abs(c) ** 2 for c in self._terms.values())
        return math.sqrt(s * self.Q ** self.N)

    def _check(self, other):
        if self.Q != other.Q or self.N != other.N:
            raise DimensionMismatchError(
                f"(Q={self.Q}, N={self.N}) vs (Q={other.Q}, N={other.N})")

    def __add__(self, other):
        if isinstance(other, ClockString):
            other = OperatorSum([other])
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0j) + c
        return self._rebuild(out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, OperatorSum):
            self._check(other)
            out = {}
            tab = _omega_table(self.Q)
            Q = self.Q
            for (x1, z1), c1 in self._terms.items():
                for (x2, z2), c2 in other._terms.items():
                    phase = 0
                    for za, xb in zip(z1, x2):
                        phase -= za * xb
                    x = tuple((u + v) % Q for u, v in zip(x1, x2))
                    z = tuple((u + v) % Q for u, v in zip(z1, z2))
                    k = (x, z)
                    out[k] = out.get(k, 0j) + c1 * c2 * tab[phase % Q]
            return self._rebuild(out)
        if isinstance(other, ClockString):
            return self * OperatorSum([other])
        c = complex(other)
        return self._rebuild({k: v * c for k, v in self._terms.items()})

    def __rmul__(self, other):
        # scalars commute; OperatorSum * OperatorSum handled by __mul__
        return self * other

    def _rebuild(self, term_dict):
        out = OperatorSum.zero(self.Q, self.N, self.tol)
        pruned = {k: c for k, c in sorted(term_dict.items())
                  if abs(c) > self.tol}
        object.__setattr__(out, "_terms", pruned)
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers not supported")
        out = OperatorSum.identity(self.Q, self.N)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "OperatorSum":
        return OperatorSum([t.adjoint() for t in self.terms],
                           Q=self.Q, N=self.N, tol=self.tol)

    def translate(self, shift: int) -> "OperatorSum":
        return OperatorSum([t.translate(shift) for t in self.terms],
                           Q=self.Q, N=self.N, tol=self.tol)

    def equals(self, other, tol: float) -> bool:
        """True iff the max coefficient deviation of self - other is <= tol."""
        self._check(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(k, 0j) - other._terms.get(k, 0j)) <= tol
                   for k in keys)

    def __eq__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return (self.Q, self.N) == (other.Q, other.N) \
            and self._terms == other._terms

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        if not self._terms:
            return f"OperatorSum<0 on Q={self.Q},N={self.N}>"
        body = " + ".join(repr(t) for t in self.terms[:4])
        more = f" + ... ({len(self._terms)} terms)" if len(self._terms) > 4 else ""
        return f"OperatorSum<{body}{more}>"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "Q": self.Q,
            "N": self.N,
            "terms": [
                {"x": list(x), "z": list(z), "re": c.real, "im": c.imag}
                for (x, z), c in self._terms.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "OperatorSum":
        terms = [ClockString(d["Q"], d["N"], t["x"], t["z"],
                             complex(t["re"], t["im"])) for t in d["terms"]]
        return cls(terms, Q=d["Q"], N=d["N"])

    @classmethod
    def from_json(cls, s: str) -> "OperatorSum":
        return cls.from_json_dict(json.loads(s))


def commutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return a * b - b * a


def anticommutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return a * b + b * a


def nested_commutator(a: OperatorSum, b: OperatorSum, depth: int) -> OperatorSum:
    """ad_a^depth (b) = [a, [a, ... [a, b]]]."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out = b
    for _ in range(depth):
        out = commutator(a, out)
    return out
