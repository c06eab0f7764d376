"""Dense linear-algebra helpers shared by the rest of the package.

Conventions used throughout:

* Operators are complex numpy arrays of shape (2**n, 2**n), states are
  complex vectors of length 2**n, both stored dense and row-major.
* Qubit 1 is the most significant bit, so the basis vector |z1 ... zn>
  sits at index z1 * 2**(n-1) + ... + zn.
* "Time order" of gate lists is list order: the first gate listed is
  applied first, i.e. it is the rightmost factor of the matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Pauli matrices; modules elsewhere build everything from these.
PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

# Refuse kron results beyond this many qubits; 2**15 square matrices are
# already ~16 GiB and nothing in this package needs them.
MAX_QUBITS = 15


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by the classification routines.

    unitary:  max-norm threshold for ||U*U - 1||
    residual: reconstruction / residual threshold for algebraic identities
    norm:     threshold for norm and probability checks
    angle:    angular threshold when snapping phases to roots of unity
    """

    unitary: float = 1e-9
    residual: float = 1e-9
    norm: float = 1e-12
    angle: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("unitary", "residual", "norm", "angle"):
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name!r} must be strictly positive")


DEFAULT_TOL = Tolerances()


def n_qubits_of(a: np.ndarray) -> int:
    """Number of qubits of an operator or state vector; errors on non powers of two."""
    dim = a.shape[0]
    if a.ndim == 2 and a.shape[0] != a.shape[1]:
        raise ValueError(f"operator must be square, got shape {a.shape}")
    if a.ndim not in (1, 2):
        raise ValueError(f"expected a vector or a matrix, got ndim={a.ndim}")
    n = int(dim).bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def identity(n: int) -> np.ndarray:
    """Identity operator on n qubits."""
    return np.eye(2**n, dtype=complex)


def basis_state(n: int, bits) -> np.ndarray:
    """Computational basis vector |z1 ... zn> from a bit sequence or an index."""
    if isinstance(bits, (int, np.integer)):
        index = int(bits)
        if not 0 <= index < 2**n:
            raise ValueError(f"index {index} out of range for {n} qubits")
    else:
        bits = tuple(int(b) for b in bits)
        if len(bits) != n or any(b not in (0, 1) for b in bits):
            raise ValueError(f"need {n} bits, got {bits}")
        index = int("".join(map(str, bits)), 2) if bits else 0
    psi = np.zeros(2**n, dtype=complex)
    psi[index] = 1.0
    return psi


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with qubit-count overflow guard (first factor is most significant)."""
    total = n_qubits_of(a) + n_qubits_of(b)
    if total > MAX_QUBITS:
        raise ValueError(f"kron result would act on {total} qubits (limit {MAX_QUBITS})")
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    """Left-to-right tensor product; takes several arrays or one iterable."""
    if len(factors) == 1 and not isinstance(factors[0], np.ndarray):
        factors = tuple(factors[0])
    if not factors:
        raise ValueError("need at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = kron(out, f)
    return out


def embed_one_qubit(g: np.ndarray, k: int, n: int) -> np.ndarray:
    """Embed a one-qubit gate on wire k (1-based) into an n-qubit operator."""
    if g.shape != (2, 2):
        raise ValueError(f"expected a 2x2 gate, got shape {g.shape}")
    if not 1 <= k <= n:
        raise ValueError(f"wire {k} out of range for {n} qubits")
    return kron_all(identity(k - 1), g, identity(n - k))


def embed_two_qubit(g: np.ndarray, k: int, n: int) -> np.ndarray:
    """Embed a two-qubit gate on wires (k, k+1), 1-based, into an n-qubit operator."""
    if g.shape != (4, 4):
        raise ValueError(f"expected a 4x4 gate, got shape {g.shape}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"wire pair ({k},{k + 1}) out of range for {n} qubits")
    return kron_all(identity(k - 1), g, identity(n - k - 1))


def norm_max(a: np.ndarray) -> float:
    """Entrywise max-abs norm."""
    return float(np.abs(a).max()) if a.size else 0.0


def is_unitary(u: np.ndarray, tol: float = DEFAULT_TOL.unitary) -> bool:
    """True iff ||U*U - 1||_max < tol."""
    n_qubits_of(u)
    return norm_max(u.conj().T @ u - np.eye(u.shape[0])) < tol


def assert_unitary(u: np.ndarray, tol: float = DEFAULT_TOL.unitary, what: str = "operator") -> None:
    if not is_unitary(u, tol):
        resid = norm_max(u.conj().T @ u - np.eye(u.shape[0]))
        raise ValueError(f"{what} is not unitary (||U*U - 1|| = {resid:.3e}, tol {tol:.1e})")


@dataclass(frozen=True)
class PhaseMatch:
    """Result of comparing two objects up to a global phase."""

    equal: bool
    phase: complex | None
    residual: float


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL.residual) -> PhaseMatch:
    """Compare a and b up to a global phase.

    Finds the phase e^{i theta} minimizing ||a - e^{i theta} b|| in the
    2-norm (Frobenius for matrices); the minimizer is <b, a> / |<b, a>|.
    The residual is computed by explicit subtraction, which stays accurate
    when the two objects agree to machine precision.
    """
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    nb = float(np.linalg.norm(b))
    if nb < 1e-14:
        raise ValueError("second argument is numerically zero; phase comparison undefined")
    inner = complex(np.vdot(b, a))
    if abs(inner) < 1e-14:
        # Orthogonal objects: no meaningful phase, report plain distance.
        return PhaseMatch(False, None, float(np.linalg.norm(a - b)))
    phase = inner / abs(inner)
    residual = float(np.linalg.norm(a - phase * b))
    return PhaseMatch(residual < tol, phase, residual)


def canonical_phase(a: np.ndarray, tol_norm: float = DEFAULT_TOL.norm) -> np.ndarray:
    """Rescale by a global phase so the largest-magnitude entry is real positive.

    Ties within tol_norm of the maximum magnitude are broken by the lowest
    row-major index, which makes the choice stable under small perturbations
    of equal-magnitude entries.
    """
    flat = a.reshape(-1)
    mags = np.abs(flat)
    m = mags.max()
    if m < 1e-14:
        raise ValueError("cannot fix the phase of a numerically zero object")
    pivot = flat[np.flatnonzero(mags >= m - tol_norm)[0]]
    return a / (pivot / abs(pivot))
