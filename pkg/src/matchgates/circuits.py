"""Two-qubit gate builders, a small circuit IR with a text format, and
dense/compact backends for nearest-neighbour matchgate circuits.

Block conventions, with basis rows and columns ordered 00, 01, 10, 11:

    G(A, B) acts as A on the even-parity subspace spanned by |00>, |11>
    and as B on the odd-parity subspace spanned by |01>, |10>:

        [A11  0    0   A12]
        [ 0  B11  B12   0 ]
        [ 0  B21  B22   0 ]
        [A21  0    0   A22]

    J(A, B) maps between the parity subspaces (a parity-odd gate):

        [ 0  A11  A12   0 ]
        [B11  0    0   B12]
        [B21  0    0   B22]
        [ 0  A21  A22   0 ]

A gate G(A, B) or J(A, B) with unitary blocks is a (generalised)
matchgate exactly when det A = det B.

Circuit text format (case-insensitive, '#' starts a comment):

    qubits N
    allow freeform            # optional: admit non-matchgate gates
    G H H @ 1                 # explicit blocks, wires (1, 2)
    FSWAP @ 2                 # named two-qubit gate, wires (2, 3)
    X @ 1                     # named one-qubit gate
    CPHASE(pi/2) @ 1          # angles: decimal radians or [K]pi[/M]

Gate lists are in time order: the first gate listed acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    HADAMARD,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Tolerances,
    assert_unitary,
    embed_one_qubit,
    embed_two_qubit,
    identity,
    n_qubits_of,
    norm_max,
)
from .majorana import Parity, jw_set, parity_of

Pattern = tuple  # entries 0, 1, or None (None is the wildcard)


class CircuitError(ValueError):
    """Parse or validation failure, with 1-based line/column positions."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class NotGaussianError(ValueError):
    """Raised when the compact rotation backend meets a non-Gaussian gate."""


def build_G(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL.unitary) -> np.ndarray:
    """Parity-even two-qubit gate from blocks A (even subspace) and B (odd)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    assert_unitary(a, tol, "block A")
    assert_unitary(b, tol, "block B")
    g = np.zeros((4, 4), dtype=complex)
    g[0, 0], g[0, 3], g[3, 0], g[3, 3] = a[0, 0], a[0, 1], a[1, 0], a[1, 1]
    g[1, 1], g[1, 2], g[2, 1], g[2, 2] = b[0, 0], b[0, 1], b[1, 0], b[1, 1]
    return g


def build_J(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL.unitary) -> np.ndarray:
    """Parity-odd two-qubit gate from blocks A and B."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    assert_unitary(a, tol, "block A")
    assert_unitary(b, tol, "block B")
    g = np.zeros((4, 4), dtype=complex)
    g[0, 1], g[0, 2], g[3, 1], g[3, 2] = a[0, 0], a[0, 1], a[1, 0], a[1, 1]
    g[1, 0], g[1, 3], g[2, 0], g[2, 3] = b[0, 0], b[0, 1], b[1, 0], b[1, 1]
    return g


def phase_gate(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(complex)


def _rot(axis: np.ndarray, theta: float) -> np.ndarray:
    return np.cos(theta / 2) * PAULI_I - 1j * np.sin(theta / 2) * axis


# Named one-qubit gates usable both standalone and as G/J block tokens.
_ONE_QUBIT = {
    "I": (0, lambda: PAULI_I.copy()),
    "X": (0, lambda: PAULI_X.copy()),
    "Y": (0, lambda: PAULI_Y.copy()),
    "Z": (0, lambda: PAULI_Z.copy()),
    "H": (0, lambda: HADAMARD.copy()),
    "P": (1, phase_gate),
    "RX": (1, lambda t: _rot(PAULI_X, t)),
    "RY": (1, lambda t: _rot(PAULI_Y, t)),
    "RZ": (1, lambda t: _rot(PAULI_Z, t)),
}

# Named two-qubit gates and their block form.
_TWO_QUBIT = {
    "FSWAP": (0, lambda: (PAULI_Z.copy(), PAULI_X.copy())),
    "GHH": (0, lambda: (HADAMARD.copy(), HADAMARD.copy())),
    "SWAP": (0, lambda: (PAULI_I.copy(), PAULI_X.copy())),
    "CZ": (0, lambda: (PAULI_Z.copy(), PAULI_I.copy())),
    "CPHASE": (1, lambda phi: (phase_gate(phi), PAULI_I.copy())),
}

# One-qubit gates that are themselves parity-even or parity-odd; anything
# else (H, RX, RY) mixes parities and is only admitted as free-form.
_FERMIONIC_1Q = {"I", "X", "Y", "Z", "P", "RZ"}


def named_gate(name: str, params: tuple[float, ...] = ()) -> np.ndarray:
    """Dense matrix of a named gate (2x2 or 4x4), case-insensitive."""
    key = name.upper()
    if key in _ONE_QUBIT:
        arity, fn = _ONE_QUBIT[key]
        if len(params) != arity:
            raise ValueError(f"{key} takes {arity} parameter(s), got {len(params)}")
        return fn(*params)
    if key in _TWO_QUBIT:
        arity, fn = _TWO_QUBIT[key]
        if len(params) != arity:
            raise ValueError(f"{key} takes {arity} parameter(s), got {len(params)}")
        return build_G(*fn(*params))
    raise ValueError(f"unknown gate name {name!r}")


def pattern_weight(pattern: Pattern) -> int:
    """Number of constrained (non-wildcard) entries."""
    return sum(1 for p in pattern if p is not None)


def build_F(pattern: Pattern) -> np.ndarray:
    """Diagonal pattern gate: flips the sign of every basis state matching
    the pattern (wildcards match both bit values).

    The all-wildcard pattern matches everything and yields minus identity.
    A pattern of weight w is a level w+1 gate in the matchgate hierarchy.
    """
    n = len(pattern)
    if n < 1:
        raise ValueError("pattern must have at least one entry")
    for p in pattern:
        if p not in (0, 1, None):
            raise ValueError(f"pattern entries must be 0, 1, or None, got {p!r}")
    diag = np.ones(2**n, dtype=complex)
    for z in range(2**n):
        bits = [(z >> (n - 1 - k)) & 1 for k in range(n)]
        if all(p is None or p == bits[k] for k, p in enumerate(pattern)):
            diag[z] = -1.0
    return np.diag(diag)


def build_CnZ(n: int) -> np.ndarray:
    """Controlled-Z on n qubits: the all-ones pattern gate."""
    return build_F((1,) * n)


@dataclass(frozen=True)
class GateApp:
    """One gate application inside a circuit.

    kind is "G", "J" (explicit blocks), or "NAMED". pos is the 1-based wire
    of the gate (leftmost wire for two-qubit gates). blocks holds (A, B) for
    G/J kinds, block_names their canonical text tokens when available.
    freeform marks gates admitted only under the `allow freeform` directive.
    """

    kind: str
    pos: int
    name: str | None = None
    params: tuple[float, ...] = ()
    blocks: tuple[np.ndarray, np.ndarray] | None = None
    block_names: tuple[str, str] | None = None
    freeform: bool = False

    @property
    def n_wires(self) -> int:
        if self.kind in ("G", "J"):
            return 2
        return 1 if self.name.upper() in _ONE_QUBIT else 2

    def local_matrix(self) -> np.ndarray:
        if self.kind == "G":
            return build_G(*self.blocks)
        if self.kind == "J":
            return build_J(*self.blocks)
        return named_gate(self.name, self.params)

    def wires(self) -> tuple[int, ...]:
        return (self.pos,) if self.n_wires == 1 else (self.pos, self.pos + 1)


@dataclass(frozen=True)
class CircuitIR:
    """A nearest-neighbour circuit: qubit count plus gates in time order."""

    n_qubits: int
    gates: tuple[GateApp, ...] = ()
    allow_freeform: bool = False


_PI_RE = re.compile(r"^([+-]?)(\d+(?:\.\d+)?)?pi(?:/(\d+(?:\.\d+)?))?$", re.IGNORECASE)


def parse_angle(token: str) -> float:
    """Angle literal: decimal radians, or pi forms like pi, -pi/4, 3pi/2."""
    m = _PI_RE.match(token.strip())
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = float(m.group(2)) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        return sign * num * np.pi / den
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"cannot parse angle {token!r}") from None


_NAME_RE = re.compile(r"^([A-Za-z]+)(?:\((.*)\))?$")


def _parse_block_token(token: str, line: int, col: int) -> tuple[str, tuple[float, ...], np.ndarray]:
    """A one-qubit gate token such as H or P(pi/2); returns canonical form."""
    m = _NAME_RE.match(token)
    if not m:
        raise CircuitError(f"bad gate token {token!r}", line, col)
    name = m.group(1).upper()
    if name not in _ONE_QUBIT:
        raise CircuitError(f"unknown block gate {m.group(1)!r}", line, col)
    arity = _ONE_QUBIT[name][0]
    raw = m.group(2)
    if raw is None:
        params: tuple[float, ...] = ()
    else:
        try:
            params = tuple(parse_angle(p) for p in raw.split(",") if p.strip())
        except ValueError as exc:
            raise CircuitError(str(exc), line, col) from None
    if len(params) != arity:
        raise CircuitError(f"{name} takes {arity} parameter(s), got {len(params)}", line, col)
    return name, params, named_gate(name, params)


def _block_det(block: np.ndarray) -> complex:
    return complex(np.linalg.det(block))


def _matchgate_violation(a: np.ndarray, b: np.ndarray, tol: float) -> str | None:
    """None when det A = det B within tol, else a description of the mismatch."""
    da, db = _block_det(a), _block_det(b)
    if abs(da - db) < tol:
        return None
    return f"determinant mismatch: |A| = {da:.6g}, |B| = {db:.6g}"


def parse_circuit(text: str, tol: Tolerances = DEFAULT_TOL) -> CircuitIR:
    """Parse the circuit text format into a CircuitIR.

    Gates that are not (generalised) matchgates are rejected unless the
    file carries an `allow freeform` directive; offending determinants are
    reported in the error. Two-qubit gates must sit at nearest-neighbour
    positions (pos, pos+1) with pos in 1..n-1.
    """
    n_qubits: int | None = None
    allow_freeform = False
    gates: list[GateApp] = []

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        tokens = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        head, head_col = tokens[0]
        head_up = head.upper()

        if head_up == "QUBITS":
            if n_qubits is not None:
                raise CircuitError("duplicate qubits header", line_no, head_col)
            if len(tokens) != 2 or not tokens[1][0].isdigit():
                raise CircuitError("expected: qubits N", line_no, head_col)
            n_qubits = int(tokens[1][0])
            if n_qubits < 1:
                raise CircuitError("qubit count must be at least 1", line_no, tokens[1][1])
            continue

        if head_up == "ALLOW":
            if len(tokens) != 2 or tokens[1][0].upper() != "FREEFORM":
                raise CircuitError("expected: allow freeform", line_no, head_col)
            allow_freeform = True
            continue

        if n_qubits is None:
            raise CircuitError("gate before qubits header", line_no, head_col)

        # Gate line: <gate tokens> @ k
        at = next((i for i, (t, _) in enumerate(tokens) if t == "@"), None)
        if at is None or at != len(tokens) - 2:
            raise CircuitError("expected trailing '@ <wire>'", line_no, tokens[-1][1])
        pos_tok, pos_col = tokens[-1]
        try:
            pos = int(pos_tok)
        except ValueError:
            raise CircuitError(f"bad wire {pos_tok!r}", line_no, pos_col) from None
        gate_tokens = tokens[:at]

        gates.append(
            _parse_gate(gate_tokens, pos, n_qubits, allow_freeform, line_no, tol)
        )

    if n_qubits is None:
        raise CircuitError("missing qubits header", 1, 1)
    return CircuitIR(n_qubits, tuple(gates), allow_freeform)


def _parse_gate(gate_tokens, pos, n_qubits, allow_freeform, line_no, tol) -> GateApp:
    head, head_col = gate_tokens[0]
    head_up = head.upper()

    if head_up in ("G", "J"):
        if len(gate_tokens) != 3:
            raise CircuitError(f"{head_up} needs two block tokens", line_no, head_col)
        name_a, params_a, block_a = _parse_block_token(gate_tokens[1][0], line_no, gate_tokens[1][1])
        name_b, params_b, block_b = _parse_block_token(gate_tokens[2][0], line_no, gate_tokens[2][1])
        _check_two_qubit_pos(pos, n_qubits, line_no, head_col)
        violation = _matchgate_violation(block_a, block_b, tol.residual)
        if violation is not None and not allow_freeform:
            raise CircuitError(
                f"{violation} (not a matchgate; add 'allow freeform' to admit it)",
                line_no,
                head_col,
            )
        return GateApp(
            kind=head_up,
            pos=pos,
            blocks=(block_a, block_b),
            block_names=(_format_block(name_a, params_a), _format_block(name_b, params_b)),
            freeform=violation is not None,
        )

    if len(gate_tokens) != 1:
        raise CircuitError(f"unexpected token {gate_tokens[1][0]!r}", line_no, gate_tokens[1][1])
    m = _NAME_RE.match(head)
    if not m:
        raise CircuitError(f"bad gate token {head!r}", line_no, head_col)
    name = m.group(1).upper()
    raw = m.group(2)
    if name in _ONE_QUBIT:
        arity = _ONE_QUBIT[name][0]
    elif name in _TWO_QUBIT:
        arity = _TWO_QUBIT[name][0]
    else:
        raise CircuitError(f"unknown gate {m.group(1)!r}", line_no, head_col)
    try:
        params = tuple(parse_angle(p) for p in raw.split(",") if p.strip()) if raw else ()
    except ValueError as exc:
        raise CircuitError(str(exc), line_no, head_col) from None
    if len(params) != arity:
        raise CircuitError(f"{name} takes {arity} parameter(s), got {len(params)}", line_no, head_col)

    if name in _ONE_QUBIT:
        if not 1 <= pos <= n_qubits:
            raise CircuitError(f"wire {pos} out of range 1..{n_qubits}", line_no, head_col)
        freeform = name not in _FERMIONIC_1Q
        if freeform and not allow_freeform:
            raise CircuitError(
                f"{name} mixes parities (not a matchgate-circuit gate; "
                "add 'allow freeform' to admit it)",
                line_no,
                head_col,
            )
        return GateApp(kind="NAMED", pos=pos, name=name, params=params, freeform=freeform)

    _check_two_qubit_pos(pos, n_qubits, line_no, head_col)
    block_a, block_b = _TWO_QUBIT[name][1](*params)
    violation = _matchgate_violation(block_a, block_b, tol.residual)
    if violation is not None and not allow_freeform:
        raise CircuitError(
            f"{name}: {violation} (not a matchgate; add 'allow freeform' to admit it)",
            line_no,
            head_col,
        )
    return GateApp(kind="NAMED", pos=pos, name=name, params=params, freeform=violation is not None)


def _check_two_qubit_pos(pos: int, n_qubits: int, line_no: int, col: int) -> None:
    if not 1 <= pos <= n_qubits - 1:
        raise CircuitError(
            f"two-qubit gate at wires ({pos},{pos + 1}) out of range for {n_qubits} qubits "
            "(nearest-neighbour positions only)",
            line_no,
            col,
        )


def _format_block(name: str, params: tuple[float, ...]) -> str:
    if not params:
        return name
    return f"{name}({','.join(repr(float(p)) for p in params)})"


def circuit_to_text(circuit: CircuitIR) -> str:
    """Canonical text form; stable under re-parsing and re-emission."""
    lines = [f"qubits {circuit.n_qubits}"]
    if circuit.allow_freeform:
        lines.append("allow freeform")
    for g in circuit.gates:
        if g.kind in ("G", "J"):
            if g.block_names is None:
                raise ValueError(
                    "circuit holds raw matrix blocks; it has no canonical text form"
                )
            lines.append(f"{g.kind} {g.block_names[0]} {g.block_names[1]} @ {g.pos}")
        else:
            lines.append(f"{_format_block(g.name.upper(), g.params)} @ {g.pos}")
    return "\n".join(lines) + "\n"


def circuit_to_operator(circuit: CircuitIR) -> np.ndarray:
    """Dense unitary of the circuit (first-listed gate applied first)."""
    n = circuit.n_qubits
    u = identity(n)
    for g in circuit.gates:
        local = g.local_matrix()
        if g.n_wires == 1:
            emb = embed_one_qubit(local, g.pos, n)
        else:
            emb = embed_two_qubit(local, g.pos, n)
        u = emb @ u
    return u


@lru_cache(maxsize=None)
def _local_majoranas(w: int) -> tuple[np.ndarray, ...]:
    return tuple(jw_set(w))


def _local_rotation(g: np.ndarray, tol: Tolerances) -> tuple[np.ndarray, Parity] | None:
    """Rotation of a 1- or 2-qubit gate on its own wires, or None if the
    gate does not conjugate Majoranas linearly."""
    w = n_qubits_of(g)
    par = parity_of(g, tol.residual)
    if par == "none":
        return None
    cs = _local_majoranas(w)
    dim = 2**w
    r = np.zeros((2 * w, 2 * w))
    for mu in range(2 * w):
        v = g @ cs[mu] @ g.conj().T
        for nu in range(2 * w):
            r[mu, nu] = np.trace(cs[nu] @ v).real / dim
        if norm_max(v - sum(r[mu, nu] * cs[nu] for nu in range(2 * w))) > tol.residual:
            return None
    if norm_max(r @ r.T - np.eye(2 * w)) > tol.residual:
        return None
    return r, par


def gate_rotation(g: GateApp, n_qubits: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Embed the local rotation of one gate into the full 2n x 2n rotation.

    Majoranas on wires left of the gate are untouched; the gate's own block
    rotates; Majoranas to the right pick up the gate's parity sign, because
    their Pauli-Z strings cross the gate's wires.
    """
    local = g.local_matrix()
    got = _local_rotation(local, tol)
    if got is None:
        raise NotGaussianError(
            f"gate {g.name or g.kind} @ {g.pos} does not act linearly on Majorana operators"
        )
    r_loc, par = got
    w = g.n_wires
    r = np.eye(2 * n_qubits)
    lo = 2 * (g.pos - 1)
    r[lo : lo + 2 * w, lo : lo + 2 * w] = r_loc
    if par == "odd":
        for idx in range(lo + 2 * w, 2 * n_qubits):
            r[idx, idx] = -1.0
    return r


def circuit_to_rotation(circuit: CircuitIR, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Compact 2n x 2n rotation of a (generalised) matchgate circuit.

    Never forms the 2^n-dimensional unitary. The composed R satisfies
    U c_mu U^dag = sum_nu R[mu, nu] c_nu for the dense circuit unitary U,
    and det R = (-1)^(number of parity-odd gates). Free-form gates are
    refused: such circuits are not Gaussian.
    """
    for g in circuit.gates:
        if g.freeform:
            if g.blocks is not None:
                a, b = g.blocks
                detail = f" ({_matchgate_violation(a, b, tol.residual)})"
            else:
                detail = ""
            raise NotGaussianError(
                f"free-form gate {g.name or g.kind} @ {g.pos} has no rotation{detail}"
            )
    r = np.eye(2 * circuit.n_qubits)
    for g in circuit.gates:
        r = r @ gate_rotation(g, circuit.n_qubits, tol)
    return r


def build_bn(n: int) -> CircuitIR:
    """The 2n-qubit Bell-pair network used by the teleportation protocol.

    A column of G(H, H) on pairs (2k-1, 2k) prepares n Bell pairs; a
    triangular cascade of fermionic SWAPs then interleaves the wires so
    odd-numbered qubits end up listed first. Layer t (t = 1 .. n-1) holds
    fSWAPs at positions t+1, t+3, ..., 2n-t-1.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    gates = [GateApp(kind="NAMED", pos=2 * k - 1, name="GHH") for k in range(1, n + 1)]
    for t in range(1, n):
        for p in range(t + 1, 2 * n - t, 2):
            gates.append(GateApp(kind="NAMED", pos=p, name="FSWAP"))
    return CircuitIR(2 * n, tuple(gates))
