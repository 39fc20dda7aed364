"""
Searching coupling templates
============================

Multi-start search over fixed interaction templates. The general two-spin
template finds an exact gate; the restricted ones report how close they get.
"""

from xorgate import CouplingModel, multi_start_search, verify_hamiltonian
from xorgate.pauli import term_table

for kind in ("ising", "xy", "heisenberg"):
    res = multi_start_search(CouplingModel(kind), n_restarts=8, seed=0)
    print(f"{kind:10s} best fidelity {res.best_fidelity:.6f} after {res.objective_evaluations} evaluations")

# fields on single spins add nine parameters to a template
res = multi_start_search(CouplingModel("heisenberg", include_fields=True), n_restarts=8, seed=0)
print(f"heisenberg+fields best fidelity {res.best_fidelity:.6f}")

# the general template, 27 couplings (takes a few seconds)
res = multi_start_search(CouplingModel("general"), n_restarts=4, seed=0)
print(res.to_text())
h = res.decomposition()
print(term_table(h))
# fidelity is quadratic in the leaked amplitude: 1 - 1e-15 in fidelity still
# leaves forbidden entries near 1e-8, above the default 1e-9 pattern tolerance
print(verify_hamiltonian(h).to_text())
print(verify_hamiltonian(h, tol=1e-6).to_text())
