"""Jordan-Wigner Majorana operators and the monomial algebra they generate.

The 2n Majorana operators on n qubits are

    c_{2k-1} = Z_1 ... Z_{k-1} X_k        (mu odd)
    c_{2k}   = Z_1 ... Z_{k-1} Y_k        (mu even)

indexed mu = 1 .. 2n. They are Hermitian, unitary, odd under the total
parity Z^{(x)n}, and satisfy {c_mu, c_nu} = 2 delta_{mu nu} 1.

Monomials c_{mu_1} ... c_{mu_m} with mu_1 < ... < mu_m (4^n of them,
including the empty product) form a basis of the full matrix algebra.
A monomial is encoded as an integer bit mask, little-endian in mu:
bit 0 set means c_1 participates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    kron_all,
    n_qubits_of,
    norm_max,
)

Parity = Literal["even", "odd", "none"]


@lru_cache(maxsize=None)
def _jw_cached(n: int, mu: int) -> np.ndarray:
    k = (mu + 1) // 2
    letter = PAULI_X if mu % 2 == 1 else PAULI_Y
    factors = [PAULI_Z] * (k - 1) + [letter] + [PAULI_I] * (n - k)
    op = kron_all(*factors)
    op.setflags(write=False)
    return op


def jw_majorana(n: int, mu: int) -> np.ndarray:
    """The Jordan-Wigner Majorana operator c_mu on n qubits, mu in 1..2n."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    if not 1 <= mu <= 2 * n:
        raise ValueError(f"Majorana index {mu} out of range 1..{2 * n}")
    return _jw_cached(n, mu)


def jw_set(n: int) -> list[np.ndarray]:
    """All 2n Jordan-Wigner Majorana operators in index order."""
    return [jw_majorana(n, mu) for mu in range(1, 2 * n + 1)]


def mask_from_indices(indices) -> int:
    """Bit mask from 1-based Majorana indices; duplicates are rejected."""
    mask = 0
    for mu in indices:
        bit = 1 << (int(mu) - 1)
        if mask & bit:
            raise ValueError(f"duplicate Majorana index {mu}")
        mask |= bit
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    """Ascending 1-based Majorana indices of a bit mask."""
    return tuple(mu + 1 for mu in range(int(mask).bit_length()) if (mask >> mu) & 1)


def majorana_monomial(n: int, mask: int) -> np.ndarray:
    """Ordered product of the Majoranas selected by mask (empty mask gives 1)."""
    if mask < 0 or mask >= 1 << (2 * n):
        raise ValueError(f"mask {mask} out of range for {2 * n} Majorana modes")
    out = np.eye(2**n, dtype=complex)
    for mu in indices_from_mask(mask):
        out = out @ jw_majorana(n, mu)
    return out


@dataclass
class MajoranaPoly:
    """A complex linear combination of Majorana monomials.

    terms maps monomial masks to coefficients; absent masks mean zero.
    """

    n_modes: int
    terms: dict[int, complex] = field(default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return self.n_modes

    def prune(self, tol: float = DEFAULT_TOL.norm) -> "MajoranaPoly":
        """Drop coefficients below tol in magnitude."""
        kept = {m: c for m, c in self.terms.items() if abs(c) >= tol}
        return MajoranaPoly(self.n_modes, kept)

    def support(self) -> set[tuple[int, ...]]:
        """Monomial supports as tuples of 1-based indices."""
        return {indices_from_mask(m) for m in self.terms}

    def to_json(self) -> dict:
        """Stable JSON form: masks as ascending index lists, terms sorted by mask."""
        items = sorted(self.terms.items())
        return {
            "n": self.n_modes,
            "terms": [
                {"mask": list(indices_from_mask(m)), "re": float(c.real), "im": float(c.imag)}
                for m, c in items
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MajoranaPoly":
        n = int(data["n"])
        terms: dict[int, complex] = {}
        for entry in data["terms"]:
            mask = mask_from_indices(entry["mask"])
            terms[mask] = complex(float(entry["re"]), float(entry["im"]))
        return cls(n, terms)


def expand(op: np.ndarray, tol: float = DEFAULT_TOL.norm) -> MajoranaPoly:
    """Expand an operator over the Majorana monomial basis.

    Coefficients come from the trace inner product,
    alpha_m = tr(monomial(m)^dagger op) / 2^n; terms below tol are dropped.
    Cost grows as 4^n, intended for small n.
    """
    n = n_qubits_of(op)
    dim = 2**n
    terms: dict[int, complex] = {}
    for mask in range(4**n):
        mono = majorana_monomial(n, mask)
        coef = complex(np.trace(mono.conj().T @ op)) / dim
        if abs(coef) >= tol:
            terms[mask] = coef
    return MajoranaPoly(n, terms)


def poly_to_operator(poly: MajoranaPoly) -> np.ndarray:
    """Dense operator of a Majorana polynomial."""
    n = poly.n_modes
    out = np.zeros((2**n, 2**n), dtype=complex)
    for mask, coef in poly.terms.items():
        out += coef * majorana_monomial(n, mask)
    return out


@lru_cache(maxsize=None)
def total_parity(n: int) -> np.ndarray:
    """The total parity operator Z^{(x)n}."""
    op = kron_all(*([PAULI_Z] * n))
    op.setflags(write=False)
    return op


def parity_decompose(op: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split an operator into its parity-even and parity-odd parts.

    The even part commutes with Z^{(x)n}, the odd part anticommutes;
    their sum is the input.
    """
    n = n_qubits_of(op)
    z = total_parity(n)
    conj = z @ op @ z
    return (op + conj) / 2, (op - conj) / 2


def parity_of(op: np.ndarray, tol: float = DEFAULT_TOL.residual) -> Parity:
    """Classify an operator as parity even, odd, or neither."""
    even, odd = parity_decompose(op)
    if norm_max(odd) < tol:
        return "even"
    if norm_max(even) < tol:
        return "odd"
    return "none"


def state_parity(psi: np.ndarray, tol: float = DEFAULT_TOL.residual) -> Parity:
    """Classify a state vector by Z^{(x)n} psi = +/- psi."""
    n = n_qubits_of(psi)
    zpsi = total_parity(n) @ psi
    if float(np.linalg.norm(zpsi - psi)) < tol:
        return "even"
    if float(np.linalg.norm(zpsi + psi)) < tol:
        return "odd"
    return "none"


def parity_sign(parity: Parity) -> int:
    """+1 for even, -1 for odd; errors on 'none'."""
    if parity == "even":
        return 1
    if parity == "odd":
        return -1
    raise ValueError("operator has no definite parity")


@dataclass(frozen=True)
class CarReport:
    """Outcome of checking the canonical anticommutation relations."""

    n_modes: int
    max_pair_residual: float
    worst_pair: tuple[int, int]
    max_hermiticity: float
    passed: bool


def check_car(ops: list[np.ndarray], tol: float = DEFAULT_TOL.residual) -> CarReport:
    """Check {c_mu, c_nu} = 2 delta_{mu nu} 1 over all pairs of a candidate tuple.

    The tuple must contain exactly 2n operators of dimension 2^n.
    """
    if not ops:
        raise ValueError("empty operator tuple")
    n = n_qubits_of(ops[0])
    if len(ops) != 2 * n:
        raise ValueError(f"expected {2 * n} operators for {n} qubits, got {len(ops)}")
    dim = 2**n
    eye2 = 2 * np.eye(dim)
    worst = 0.0
    worst_pair = (1, 1)
    herm = 0.0
    for i, a in enumerate(ops):
        if a.shape != (dim, dim):
            raise ValueError(f"operator {i + 1} has shape {a.shape}, expected {(dim, dim)}")
        herm = max(herm, norm_max(a - a.conj().T))
        for j in range(i, len(ops)):
            anti = a @ ops[j] + ops[j] @ a
            target = eye2 if i == j else 0.0
            resid = norm_max(anti - target)
            if resid > worst:
                worst, worst_pair = resid, (i + 1, j + 1)
    return CarReport(n, worst, worst_pair, herm, worst < tol)
