"""Build two-qubit gates from their blocks and walk them up the hierarchy.

A gate G(A, B) acts with A on span{|00>, |11>} and with B on span{|01>,
|10>}; it is a matchgate when det A = det B. The classifier reports
parity, Gaussianity, and the smallest hierarchy level containing the
gate. The determinant ratio det A / det B decides that level in closed
form: a 2^(k-2)-th root of unity lands at level k.
"""

import numpy as np

from matchgates import HADAMARD, PAULI_I, PAULI_X, build_G, classify_gate, named_gate, phase_gate


def describe(label, u):
    r = classify_gate(u)
    level = r.min_level if r.min_level is not None else f"> {r.k_max}"
    line = f"{label:<22} parity={r.parity:<5} gaussian={str(r.is_gaussian):<5} level={level}"
    if r.two_qubit is not None:
        line += f"  phi={r.two_qubit['phi']:.4f}"
    print(line)


print("canonical two-qubit gates")
describe("G(H, H)", build_G(HADAMARD, HADAMARD))
describe("fSWAP", named_gate("FSWAP"))
describe("SWAP", named_gate("SWAP"))
describe("CZ", named_gate("CZ"))
print()

print("the CPHASE ladder: halving the phase climbs one level")
for k in range(3, 7):
    phi = 2 * np.pi / 2 ** (k - 2)
    describe(f"CPHASE(2pi/{2 ** (k - 2)})", build_G(phase_gate(phi), PAULI_I))
print()

print("a generic phase never reaches a dyadic root")
theta = 1.0
r = classify_gate(build_G(phase_gate(theta), PAULI_I), k_max=6)
print(f"CPHASE(1.0) recursion up to 6: {r.min_level}, parity {r.parity}")

print()
print("odd gates: J(X, X) is the first Majorana operator")
from matchgates import build_J, jw_majorana

print("J(X,X) == c1:", np.allclose(build_J(PAULI_X, PAULI_X), jw_majorana(2, 1)))
describe("J(X, X)", build_J(PAULI_X, PAULI_X))
