"""
Three free angles, one gate
===========================

The phases of the block unitary carry three free angles. Each choice gives
a different two-spin Hamiltonian, and all of them compute XOR into C.
"""

import numpy as np

from xorgate import verify_hamiltonian, xor_hamiltonian
from xorgate.pauli import weight_profile
from xorgate.xor_family import constrained_angles, p_matrix

rng = np.random.default_rng(7)

for alpha, beta, gamma in rng.uniform(0, 2 * np.pi, size=(4, 3)):
    h = xor_hamiltonian(alpha, beta, gamma)
    r = verify_hamiltonian(h)
    print(f"angles ({alpha:.3f}, {beta:.3f}, {gamma:.3f}): {len(h)} terms, "
          f"truth table {'PASS' if r.truth_table_pass else 'FAIL'}, fidelity {r.fidelity:.9f}")

# only weight-2 strings ever appear
print(weight_profile(xor_hamiltonian(0.3, 1.1, -0.7)))

# the constraint pins both quarter-phase sums, so the reduced logarithm of
# the A = 1 block always has the same spectrum
p = constrained_angles(0.3, 1.1, -0.7)
print("mu, nu =", p.mu / np.pi, p.nu / np.pi, "(units of pi)")
print("eig(p) =", np.round(np.linalg.eigvalsh(p_matrix(p)) / np.pi, 12), "(units of pi)")
