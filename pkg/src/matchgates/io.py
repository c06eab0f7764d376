"""JSON codecs for matrices, states, and operator tuples.

Matrix files: {"n": qubits, "re": [[...]], "im": [[...]]}, row-major,
qubit 1 most significant. Operator-tuple files are either a bare list of
matrix objects or {"n": ..., "operators": [...]}.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import n_qubits_of


def matrix_to_json(m: np.ndarray) -> dict:
    n = n_qubits_of(m)
    return {
        "n": n,
        "re": [[float(x) for x in row] for row in m.real],
        "im": [[float(x) for x in row] for row in m.imag],
    }


def matrix_from_json(data: dict) -> np.ndarray:
    re = np.array(data["re"], dtype=float)
    im = np.array(data["im"], dtype=float)
    if re.shape != im.shape or re.ndim != 2 or re.shape[0] != re.shape[1]:
        raise ValueError(f"matrix JSON has mismatched shapes {re.shape} vs {im.shape}")
    m = re + 1j * im
    n = n_qubits_of(m)
    if "n" in data and int(data["n"]) != n:
        raise ValueError(f"matrix JSON says n={data['n']} but dimension gives n={n}")
    return m


def state_to_json(psi: np.ndarray) -> dict:
    n = n_qubits_of(psi)
    return {"n": n, "re": [float(x) for x in psi.real], "im": [float(x) for x in psi.imag]}


def state_from_json(data: dict) -> np.ndarray:
    psi = np.array(data["re"], dtype=float) + 1j * np.array(data["im"], dtype=float)
    n_qubits_of(psi)
    return psi


def tuple_to_json(ops: list[np.ndarray]) -> dict:
    return {"n": n_qubits_of(ops[0]), "operators": [matrix_to_json(op) for op in ops]}


def tuple_from_json(data) -> list[np.ndarray]:
    if isinstance(data, list):
        entries = data
    elif isinstance(data, dict) and "operators" in data:
        entries = data["operators"]
    else:
        raise ValueError("expected a list of matrices or an object with 'operators'")
    ops = [matrix_from_json(entry) for entry in entries]
    if not ops:
        raise ValueError("empty operator tuple")
    return ops


def dumps_stable(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def load_json(path: str | Path):
    return json.loads(Path(path).read_text())


def save_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps_stable(obj))
