"""Classification of fermionic gates into the matchgate hierarchy.

The first level consists of the unit-norm real combinations of Majorana
operators, sum_mu a_mu c_mu with a real and ||a|| = 1 (all parity odd).
A unitary U belongs to level k+1 when U c_mu U^dag is an odd gate of
level k for every mu. Level 2 is exactly the fermionic Gaussian gates,
those conjugating Majoranas linearly: U c_mu U^dag = sum_nu R[mu,nu] c_nu
with R in O(2n). The levels are nested and closed under phases (k >= 2),
under multiplication by Majoranas, and under tensor products.

Membership at level k is decided by direct recursion over conjugations,
costing about (2n)^(k-1) dense products; a guard refuses unreasonable
searches. For two qubits a closed form is available: with determinant
ratio det A / det B of the gate's parity blocks, a gate sits at level k
(k >= 2) exactly when the ratio is a 2^(k-2)-th root of unity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuits import build_G, phase_gate
from .linalg import (
    DEFAULT_TOL,
    PAULI_I,
    Tolerances,
    assert_unitary,
    kron,
    n_qubits_of,
    norm_max,
)
from .majorana import Parity, jw_set, parity_of, state_parity

# Refuse level searches needing more than this many dense conjugations.
COST_GUARD = 10**7


@lru_cache(maxsize=None)
def _jw_stack(n: int) -> np.ndarray:
    stack = np.stack(jw_set(n))
    stack.setflags(write=False)
    return stack


def first_level_coeffs(u: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray | None:
    """Real coefficient vector a with u = sum_mu a_mu c_mu, or None.

    Requires the coefficients to be real, the reconstruction to match
    within tol.residual, and ||a|| = 1 within tol.norm; phases other than
    -1 push a gate out of the first level.
    """
    n = n_qubits_of(u)
    stack = _jw_stack(n)
    a = np.einsum("kij,ji->k", stack, u) / 2**n
    if float(np.abs(a.imag).max()) > tol.residual:
        return None
    a = a.real.copy()
    recon = np.tensordot(a, stack, axes=1)
    if norm_max(u - recon) > tol.residual:
        return None
    if abs(float(np.linalg.norm(a)) - 1.0) > tol.norm:
        return None
    return a


def conjugate_majoranas(u: np.ndarray) -> list[np.ndarray]:
    """The tuple u c_mu u^dag for mu = 1 .. 2n."""
    n = n_qubits_of(u)
    udag = u.conj().T
    return [u @ c @ udag for c in jw_set(n)]


def extract_rotation(u: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> np.ndarray | None:
    """Dense-route rotation extraction.

    Returns the real 2n x 2n matrix R with u c_mu u^dag = sum_nu R[mu,nu] c_nu,
    or None when the conjugations fail to be linear in the Majoranas or R
    fails orthogonality. det R = +1 for proper Gaussian gates, -1 for the
    generalised ones.
    """
    n = n_qubits_of(u)
    stack = _jw_stack(n)
    dim = 2**n
    udag = u.conj().T
    r = np.zeros((2 * n, 2 * n))
    for mu in range(2 * n):
        v = u @ stack[mu] @ udag
        row = np.einsum("kij,ji->k", stack, v).real / dim
        r[mu] = row
        if norm_max(v - np.tensordot(row, stack, axes=1)) > tol.residual:
            return None
    if norm_max(r @ r.T - np.eye(2 * n)) > tol.residual:
        return None
    return r


def lambda_operator(n: int) -> np.ndarray:
    """The dense pairing operator sum_mu c_mu (x) c_mu on 2n qubits."""
    cs = jw_set(n)
    out = np.zeros((4**n, 4**n), dtype=complex)
    for c in cs:
        out += kron(c, c)
    return out


def is_gaussian_lambda(u: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Gaussian test via the pairing operator: [Lambda, U (x) U] = 0.

    Works term by term, never materializing Lambda. Requires a fermionic
    (parity even or odd) input; mixed-parity operators are rejected.
    """
    n = n_qubits_of(u)
    if parity_of(u, tol.residual) == "none":
        raise ValueError("operator has no definite parity; Gaussian test undefined")
    # Only the sum over mu commutes; individual terms do not.
    acc = np.zeros((4**n, 4**n), dtype=complex)
    for c in jw_set(n):
        cu = c @ u
        uc = u @ c
        acc += np.kron(cu, cu) - np.kron(uc, uc)
    return norm_max(acc) < tol.residual


def is_gaussian_state_lambda(psi: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Gaussian-state test: Lambda (psi (x) psi) = 0."""
    n = n_qubits_of(psi)
    acc = np.zeros(4**n, dtype=complex)
    for c in jw_set(n):
        cpsi = c @ psi
        acc += np.kron(cpsi, cpsi)
    return float(np.linalg.norm(acc)) < tol.residual


def level_membership(u: np.ndarray, k: int, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff u belongs to hierarchy level k (membership, not minimality)."""
    if k < 1:
        raise ValueError(f"level must be >= 1, got {k}")
    n = n_qubits_of(u)
    if (2 * n) ** (k - 1) > COST_GUARD:
        raise ValueError(
            f"level-{k} membership at n={n} needs about {(2 * n) ** (k - 1):.2e} "
            f"dense conjugations (guard {COST_GUARD:.0e})"
        )
    return _member(u, k, n, tol)


def _member(u: np.ndarray, k: int, n: int, tol: Tolerances) -> bool:
    if k == 1:
        return first_level_coeffs(u, tol) is not None
    udag = u.conj().T
    for c in jw_set(n):
        v = u @ c @ udag
        if parity_of(v, tol.residual) != "odd":
            return False
        if not _member(v, k - 1, n, tol):
            return False
    return True


def min_level(u: np.ndarray, k_max: int = 8, tol: Tolerances = DEFAULT_TOL) -> int | None:
    """Smallest hierarchy level containing u, or None if above k_max.

    Levels are nested, so ascending search returns the minimum.
    """
    for k in range(1, k_max + 1):
        if level_membership(u, k, tol):
            return k
    return None


@dataclass(frozen=True)
class TwoQubitBlocks:
    parity: Parity
    a: np.ndarray
    b: np.ndarray


def two_qubit_decompose(u: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> TwoQubitBlocks:
    """Blocks (A, B) of a fermionic two-qubit gate in G/J form."""
    if n_qubits_of(u) != 2:
        raise ValueError("block decomposition is defined for two-qubit gates")
    par = parity_of(u, tol.residual)
    if par == "none":
        raise ValueError("gate mixes parity sectors; it has no G/J block form")
    if par == "even":
        a = np.array([[u[0, 0], u[0, 3]], [u[3, 0], u[3, 3]]])
        b = np.array([[u[1, 1], u[1, 2]], [u[2, 1], u[2, 2]]])
    else:
        a = np.array([[u[0, 1], u[0, 2]], [u[3, 1], u[3, 2]]])
        b = np.array([[u[1, 0], u[1, 3]], [u[2, 0], u[2, 3]]])
    return TwoQubitBlocks(par, a, b)


def two_qubit_min_level(
    u: np.ndarray, tol: Tolerances = DEFAULT_TOL, k_cap: int = 30
) -> int | None:
    """Closed-form minimum level of a fermionic two-qubit gate.

    First level: odd gates J(A, A^dag) with det A = -1. Otherwise the gate
    sits at the smallest k >= 2 for which det A / det B is a 2^(k-2)-th
    root of unity (within tol.angle of the nearest root). Returns None for
    a generic phase with no dyadic root up to k_cap.
    """
    blocks = two_qubit_decompose(u, tol)
    det_a = complex(np.linalg.det(blocks.a))
    det_b = complex(np.linalg.det(blocks.b))
    if blocks.parity == "odd":
        if norm_max(blocks.b - blocks.a.conj().T) < tol.residual and abs(det_a + 1) < tol.residual:
            return 1
    theta = float(np.angle(det_a / det_b))
    for k in range(2, k_cap + 1):
        step = 2 * np.pi / 2 ** (k - 2)
        if abs(theta - round(theta / step) * step) < tol.angle:
            return k
    return None


@dataclass(frozen=True)
class EquivClass:
    """Matchgate-equivalence class data of a two-qubit fermionic gate.

    phi is the argument of det A / det B in [0, 2 pi); even gates with the
    same phi are related by matchgates on both sides, and the diagonal
    gate CPHASE(phi) = G(P(phi), 1) represents the class. Generalised
    equivalence (Majorana insertions allowed) folds phi and 2 pi - phi
    together, leaving generalised_phi in [0, pi].
    """

    phi: float
    generalised_phi: float
    representative: np.ndarray

    @property
    def representative_name(self) -> str:
        return f"CPHASE({self.phi!r})"


def equiv_class(u: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> EquivClass:
    """Equivalence-class phase of a fermionic two-qubit gate."""
    blocks = two_qubit_decompose(u, tol)
    ratio = complex(np.linalg.det(blocks.a)) / complex(np.linalg.det(blocks.b))
    phi = float(np.angle(ratio)) % (2 * np.pi)
    generalised = min(phi, 2 * np.pi - phi)
    return EquivClass(phi, generalised, build_G(phase_gate(phi), PAULI_I))


@dataclass(frozen=True)
class HierarchyReport:
    """Everything the classifier can say about one gate."""

    n_qubits: int
    parity: Parity
    is_gaussian: bool
    rotation: np.ndarray | None
    rotation_det: float | None
    min_level: int | None
    k_max: int
    two_qubit: dict | None

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "parity": self.parity,
            "is_gaussian": self.is_gaussian,
            "rotation": None if self.rotation is None else [[float(x) for x in row] for row in self.rotation],
            "rotation_det": None if self.rotation_det is None else float(self.rotation_det),
            "min_level": self.min_level,
            "k_max": self.k_max,
            "two_qubit": self.two_qubit,
        }


def classify_gate(u: np.ndarray, k_max: int = 8, tol: Tolerances = DEFAULT_TOL) -> HierarchyReport:
    """Full classification of a unitary: parity, Gaussianity, rotation,
    minimum hierarchy level, and (for two qubits) the closed-form data."""
    assert_unitary(u, tol.unitary, "gate")
    n = n_qubits_of(u)
    par = parity_of(u, tol.residual)
    rotation = extract_rotation(u, tol)
    rotation_det = None if rotation is None else float(np.linalg.det(rotation))
    gaussian = is_gaussian_lambda(u, tol) if par != "none" else False
    level = min_level(u, k_max, tol) if par != "none" else None
    two_qubit = None
    if n == 2 and par != "none":
        blocks = two_qubit_decompose(u, tol)
        cls = equiv_class(u, tol)
        two_qubit = {
            "detA": _c2j(np.linalg.det(blocks.a)),
            "detB": _c2j(np.linalg.det(blocks.b)),
            "phi": cls.phi,
            "generalised_phi": cls.generalised_phi,
            "level_closed_form": two_qubit_min_level(u, tol),
            "class_representative": cls.representative_name,
        }
    return HierarchyReport(n, par, gaussian, rotation, rotation_det, level, k_max, two_qubit)


def _c2j(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def class_phases(k: int) -> dict[str, list[float]]:
    """Representative phases of the two-qubit classes at level k.

    Even-gate classes carry phi = 2 pi j / 2^(k-2); the generalised
    relation folds phi with 2 pi - phi, leaving 2^(k-3) + 1 classes for
    k >= 3 (one class at k = 2).
    """
    if k < 2:
        raise ValueError("two-qubit class structure starts at level 2")
    count = 2 ** (k - 2)
    step = 2 * np.pi / count
    even = [j * step for j in range(count)]
    generalised = [j * step for j in range(count // 2 + 1)]
    return {"even": even, "generalised": generalised}
