"""Two independent routes to the rotation of a matchgate circuit.

A Gaussian unitary U conjugates each Majorana into a real combination,
U c_mu U* = sum_nu R_mu_nu c_nu, with R in O(2n). The dense route reads
R off the full 2^n x 2^n operator; the compact route multiplies small
per-gate rotations and never builds the big matrix. They must agree to
machine precision, and det R = +1 exactly when the circuit is parity
even.
"""

import numpy as np

from matchgates import (
    circuit_to_operator,
    circuit_to_rotation,
    extract_rotation,
    is_gaussian_lambda,
    is_gaussian_state_lambda,
    magic_state,
    named_gate,
    parse_circuit,
)

text = """
qubits 4
G H H @ 1
FSWAP @ 2
X @ 3
G P(pi/3) P(pi/3) @ 3
Z @ 1
J X X @ 2
"""

circ = parse_circuit(text)
u = circuit_to_operator(circ)

dense = extract_rotation(u)
compact = circuit_to_rotation(circ)
print(f"circuit on {circ.n_qubits} qubits, {len(circ.gates)} gates")
print(f"dense vs compact rotation:  {np.abs(dense - compact).max():.2e}")
print(f"orthogonality R R^T - 1:    {np.abs(compact @ compact.T - np.eye(8)).max():.2e}")
print(f"det R = {np.linalg.det(compact):+.6f}  (odd gate count flips the sign)")
print(f"pairing-operator test says Gaussian: {is_gaussian_lambda(u)}")
print()

print("the compact rotation of the circuit:")
with np.printoptions(precision=3, suppress=True):
    print(compact)
print()

swap = named_gate("SWAP")
print("SWAP is the standard counterexample:")
print(f"  extract_rotation(SWAP) -> {extract_rotation(swap)}")
print(f"  is_gaussian_lambda(SWAP) -> {is_gaussian_lambda(swap)}")
psi = magic_state(swap).psi
print(f"  its magic state is Gaussian -> {is_gaussian_state_lambda(psi)}")
