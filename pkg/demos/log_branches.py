"""
Recovering a generator from a gate
==================================

A unitary has many Hermitian logarithms. The minimal-spread branch keeps
eigenphases as close together as possible, which is often a different
Hamiltonian from the one that produced the gate but always the same gate.
"""

import numpy as np

from xorgate import evolution_operator, reference_hamiltonian, unitary_log_min_spread
from xorgate.pauli import decompose, term_table, weight_profile
from xorgate.tensor_core import min_spread_phases

# phases straddling the cut at +-pi are shifted together
print(min_spread_phases(np.array([3.0, -3.0, 2.9])))

h = reference_hamiltonian().to_matrix()
u = evolution_operator(h)
h_log = unitary_log_min_spread(u)

print("eigenvalues of the design Hamiltonian:", np.round(np.linalg.eigvalsh(h), 6))
print("eigenvalues of the recovered one:    ", np.round(np.linalg.eigvalsh(h_log), 6))
print("same gate:", np.allclose(evolution_operator(h_log), u, atol=1e-12))

# here the eigenphases already span less than 2 pi, so nothing moves.
# Doubling the interval spreads them over 3 pi; the branch folds them back
# and returns a different, narrower generator of the same gate.
u2 = evolution_operator(2 * h)
h2 = unitary_log_min_spread(u2)
print("eigenvalues of the recovered one:    ", np.round(np.linalg.eigvalsh(h2), 6))
print("same gate:", np.allclose(evolution_operator(h2), u2, atol=1e-12))
print("same generator:", np.allclose(h2, 2 * h, atol=1e-9))

# and it need not stay two-spin
d = decompose(h2)
print(weight_profile(d))
print(term_table(d))
