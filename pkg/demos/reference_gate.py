"""
The three-term XOR Hamiltonian
==============================

Build the smallest member of the family, look at its couplings, and watch
spin C pick up A xor B over one gate interval.
"""

import numpy as np

from xorgate import (
    EvolutionConfig,
    evolution_operator,
    functional_fidelity,
    reference_hamiltonian,
    verify_hamiltonian,
)
from xorgate.pauli import term_table
from xorgate.xor_family import BASIS_LABELS

cfg = EvolutionConfig(delta_t=1.0)  # hbar = 1
h = reference_hamiltonian(cfg)
print(term_table(h))

# every term couples exactly two spins
report = verify_hamiltonian(h, cfg)
print(report.to_text())

# the gate itself is a signed permutation of the eight basis states
u = evolution_operator(h.to_matrix(), cfg)
for col, label in enumerate(BASIS_LABELS):
    row = int(np.argmax(np.abs(u[:, col])))
    print(f"|{label}> -> {u[row, col].real:+.0f} |{BASIS_LABELS[row]}>")

# stopping early leaves C in a superposition
for frac in (0.25, 0.5, 0.75, 1.0):
    print(f"t = {frac:.2f} dt   worst-case fidelity {functional_fidelity(evolution_operator(h.to_matrix() * frac, cfg)):.6f}")
