"""
End-to-end checklist of the construction's claims.

Each check returns a :class:`ClaimResult` holding the measured error and
the tolerance it is judged against. Output is deterministic: random samples
come from fixed seeds and no timings are reported.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import pauli
from .gate_verify import functional_fidelity, pattern_check
from .ham_search import CouplingKind, CouplingModel, from_decomposition, make_objective, multi_start_search, nelder_mead
from .pauli import decompose, reconstruct
from .tensor_core import (
    EvolutionConfig,
    evolution_operator,
    evolution_operator_series,
    expm_taylor,
    format_cmatrix,
    parse_cmatrix,
)
from .xor_family import (
    a_diagonal_split,
    build_U,
    build_V,
    build_W,
    constrained_angles,
    p_matrix,
    p_minus_q,
    p_plus_q,
    q_matrix,
    reference_hamiltonian,
    xor_hamiltonian,
)

CFG = EvolutionConfig()
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def random_angles(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, TWO_PI, size=(n, 3))


def random_hermitian(rng: np.random.Generator, dim: int = 8, norm: float | None = None) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (a + a.conj().T)
    if norm is not None:
        h *= norm / np.linalg.norm(h, 2)
    return h


def global_phase_distance(a: np.ndarray, b: np.ndarray) -> float:
    """``min over phi of max|a - exp(i phi) b|``, phase taken from the largest entry of b."""
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[k] / b[k]
    phase /= abs(phase)
    return float(np.max(np.abs(a - phase * b)))


def assembled_hamiltonian(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """8x8 H from the closed-form P + Q and P - Q blocks."""
    p = constrained_angles(alpha, beta, gamma)
    return a_diagonal_split(p_plus_q(p, CFG), p_minus_q(p, CFG))


# ------------------------------------------------------------------ claims


def claim_special_case() -> ClaimResult:
    diff = xor_hamiltonian(0.0, 0.0, 0.0, CFG).max_difference(reference_hamiltonian(CFG))
    return ClaimResult("zero angles give the three-term reference Hamiltonian", diff <= 1e-12,
                       f"max coefficient difference {diff:.3e} (tol 1e-12)")


def claim_two_spin(n: int = 200, seed: int = 1) -> ClaimResult:
    worst = 0.0
    for a, b, g in random_angles(n, seed):
        for h in (reconstruct(xor_hamiltonian(a, b, g, CFG)), assembled_hamiltonian(a, b, g)):
            d = decompose(h)
            for label, c in d.items():
                if pauli.weight(label) != 2:
                    worst = max(worst, abs(c))
    return ClaimResult(f"only two-spin terms ({n} random angle triples)", worst <= 1e-12,
                       f"max weight-0/1/3 coefficient {worst:.3e} (tol 1e-12)")


def claim_xor(n: int = 200, seed: int = 1) -> ClaimResult:
    worst_pattern, worst_fid = 0.0, 0.0
    for a, b, g in random_angles(n, seed):
        u = evolution_operator(reconstruct(xor_hamiltonian(a, b, g, CFG)), CFG)
        worst_pattern = max(worst_pattern, pattern_check(u, 1e-9)[1])
        worst_fid = max(worst_fid, 1.0 - functional_fidelity(u))
    ok = worst_pattern <= 1e-9 and worst_fid <= 1e-9
    return ClaimResult(f"XOR into C ({n} random angle triples)", ok,
                       f"max pattern error {worst_pattern:.3e}, max 1-fidelity {worst_fid:.3e} (tol 1e-9)")


def claim_chain_closure(points: int = 5) -> ClaimResult:
    grid = np.arange(points) * TWO_PI / points
    worst = 0.0
    for a in grid:
        for b in grid:
            for g in grid:
                p = constrained_angles(a, b, g)
                target = build_U(build_V(p), build_W(p))
                u = evolution_operator(reconstruct(xor_hamiltonian(a, b, g, CFG)), CFG)
                worst = max(worst, global_phase_distance(u, target))
    return ClaimResult(f"exp(-iH dt) equals the block unitary ({points}^3 grid)", worst <= 1e-8,
                       f"max entry error after phase alignment {worst:.3e} (tol 1e-8)")


def claim_spectrum(n: int = 50, seed: int = 2) -> ClaimResult:
    expected = np.array([-0.75, -0.25, 0.25, 0.75]) * math.pi
    eig_err, exp_err = 0.0, 0.0
    for a, b, g in random_angles(n, seed):
        p = constrained_angles(a, b, g)
        for red, block in ((p_matrix(p), build_V(p)), (q_matrix(p), build_W(p))):
            eig_err = max(eig_err, float(np.max(np.abs(np.linalg.eigvalsh(red) - expected))))
            exp_err = max(exp_err, float(np.max(np.abs(expm_taylor(1j * red) - block))))
    ok = eig_err <= 1e-10 and exp_err <= 1e-9
    return ClaimResult("reduced logarithms have eigenvalues ±π/4, ±3π/4 and exponentiate to V, W", ok,
                       f"eigenvalue error {eig_err:.3e} (tol 1e-10), exponential error {exp_err:.3e} (tol 1e-9)")


def claim_linear_difference(n: int = 50, seed: int = 3) -> ClaimResult:
    worst = 0.0
    for a, b, g in random_angles(n, seed):
        d = p_minus_q(constrained_angles(a, b, g), CFG)
        residuals = [
            abs(d[0, 3]), abs(d[3, 0]), abs(d[1, 2]), abs(d[2, 1]),
            *np.abs(np.diag(d)),
            abs(d[0, 1] - d[2, 3]), abs(d[0, 2] - d[1, 3]),
            abs(d[1, 0] - d[3, 2]), abs(d[2, 0] - d[3, 1]),
        ]
        worst = max(worst, float(max(residuals)))
    return ClaimResult(f"P - Q is linear in σ_x, σ_y ({n} random angle triples)", worst <= 1e-12,
                       f"max template residual {worst:.3e} (tol 1e-12)")


def claim_exponential_oracle(n: int = 100, seed: int = 4) -> ClaimResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        h = random_hermitian(rng, norm=rng.uniform(0.0, 10.0))
        worst = max(worst, float(np.max(np.abs(evolution_operator(h, CFG) - evolution_operator_series(h, CFG)))))
    return ClaimResult(f"eigendecomposition and series exponentials agree ({n} matrices)", worst <= 1e-9,
                       f"max difference {worst:.3e} (tol 1e-9)")


def eq2_general_params() -> np.ndarray:
    return from_decomposition(CouplingModel(CouplingKind.GENERAL), reference_hamiltonian(CFG))


def local_perturbation(seed: int = 0) -> np.ndarray:
    n = CouplingModel(CouplingKind.GENERAL).n_params
    return 0.05 * np.random.default_rng(seed).choice([-1.0, 1.0], size=n)


def claim_search(n_restarts: int = 32, seed: int = 0) -> ClaimResult:
    model = CouplingModel(CouplingKind.GENERAL)
    result = multi_start_search(model, CFG, n_restarts=n_restarts, seed=seed)
    local = nelder_mead(make_objective(model, CFG), eq2_general_params() + local_perturbation())
    ok = result.best_fidelity >= 1 - 1e-4 and local.fun <= 1e-6
    return ClaimResult(f"coupling search recovers an XOR gate ({n_restarts} restarts, seed {seed})", ok,
                       f"best fidelity {result.best_fidelity:.9f} (tol 1-1e-4), "
                       f"local objective {local.fun:.3e} (tol 1e-6)")


def claim_round_trips(n: int = 20, seed: int = 5) -> ClaimResult:
    rng = np.random.default_rng(seed)
    failures = 0
    for a, b, g in random_angles(n, seed):
        d = xor_hamiltonian(a, b, g, CFG)
        if dict(pauli.parse_pauli_ham(pauli.format_pauli_ham(d)).items()) != dict(d.items()):
            failures += 1
        m = evolution_operator(reconstruct(d), CFG) + random_hermitian(rng) * 1e-3
        if not np.array_equal(parse_cmatrix(format_cmatrix(m)), m):
            failures += 1
    return ClaimResult(f"pauli-ham v1 and cmatrix v1 re-parse exactly ({2 * n} files)", failures == 0,
                       f"{failures} mismatches")


CLAIMS: tuple[Callable[[], ClaimResult], ...] = (
    claim_special_case,
    claim_two_spin,
    claim_xor,
    claim_chain_closure,
    claim_spectrum,
    claim_linear_difference,
    claim_exponential_oracle,
    claim_search,
    claim_round_trips,
)


def run_all(include_search: bool = True, out: io.TextIOBase | None = None) -> list[ClaimResult]:
    results = []
    for claim in CLAIMS:
        if claim is claim_search and not include_search:
            continue
        r = claim()
        results.append(r)
        if out is not None:
            out.write(r.line() + "\n")
            out.flush()
    return results
