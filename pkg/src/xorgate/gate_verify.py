"""
Decide whether an operator implements XOR into spin C, and by how much.

The check is independent of how the candidate was produced. Only the value
of C after the gate matters; the final states of A and B and the phase of C
are free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, FormatError, NotUnitary
from .pauli import PauliDecomposition, reconstruct, weight_profile
from .tensor_core import EvolutionConfig, as_matrix, evolution_operator, unitarity_error
from .xor_family import basis_bits, basis_index

DEFAULT_TOL = 1e-9
#: inputs must be unitary to this level before any verdict is given
INPUT_UNITARY_TOL = 1e-8


def _forbidden_mask() -> np.ndarray:
    mask = np.zeros((8, 8), dtype=bool)
    for col in range(8):
        a, b, _ = basis_bits(col)
        for row in range(8):
            if basis_bits(row)[2] != a ^ b:
                mask[row, col] = True
    return mask


#: True where U[row, col] must vanish: output C differs from A XOR B of the input column
FORBIDDEN = _forbidden_mask()
FORBIDDEN.setflags(write=False)

# For each input (A, B): the two columns (C = 0, 1) and the four rows with C = A XOR B.
_INPUT_BLOCKS = tuple(
    (
        [basis_index(a, b, 0), basis_index(a, b, 1)],
        [basis_index(x, y, a ^ b) for x in (1, 0) for y in (1, 0)],
    )
    for a in (1, 0)
    for b in (1, 0)
)


def _check_gate(u) -> np.ndarray:
    u = as_matrix(u)
    if u.shape != (8, 8):
        raise DimensionMismatch(f"expected an 8x8 operator, got {u.shape}")
    err = unitarity_error(u)
    if not err <= INPUT_UNITARY_TOL:
        raise NotUnitary(f"operator is not unitary: max|UU^dag - 1| = {err:.3e}")
    return u


def pattern_check(u, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Largest magnitude among the 32 structurally forbidden entries.

    Returns ``(passed, error)`` with ``passed = error <= tol``.
    """
    u = _check_gate(u)
    err = float(np.max(np.abs(u[FORBIDDEN])))
    return err <= tol, err


def functional_fidelity(u) -> float:
    """Worst-case probability of reading A XOR B from C after the gate.

    For each basis input (A, B), the 2x2 Gram matrix of the two C-columns
    projected onto the correct-C subspace is formed; its smallest
    eigenvalue is the worst case over all initial C superpositions. The
    minimum over the four inputs is returned, clipped to [0, 1].
    """
    u = _check_gate(u)
    return _fidelity(u)


def _fidelity(u: np.ndarray) -> float:
    worst = 1.0
    for cols, rows in _INPUT_BLOCKS:
        r = u[np.ix_(rows, cols)]
        g = r.conj().T @ r
        a, d = g[0, 0].real, g[1, 1].real
        off = abs(g[0, 1])
        lam = 0.5 * (a + d) - np.sqrt(0.25 * (a - d) ** 2 + off * off)
        worst = min(worst, lam)
    return float(min(1.0, max(0.0, worst)))


def leakage(u) -> float:
    """Mean wrong-output probability over the eight basis inputs.

    A smooth companion to :func:`functional_fidelity`: it is zero exactly
    when the forbidden entries vanish.
    """
    u = _check_gate(u)
    return _leakage(u)


def _leakage(u: np.ndarray) -> float:
    a = u[FORBIDDEN]
    return float((a.real @ a.real + a.imag @ a.imag) / 8.0)


@dataclass(frozen=True)
class GateReport:
    unitarity_error: float
    pattern_error: float
    truth_table_pass: bool
    fidelity: float
    weight_profile: dict[int, float] | None = field(default=None)
    two_spin_only: bool | None = None

    def to_text(self) -> str:
        lines = [
            f"unitarity_error={self.unitarity_error:.9g}",
            f"pattern_error={self.pattern_error:.9g}",
            f"truth_table={'PASS' if self.truth_table_pass else 'FAIL'}",
            f"fidelity={self.fidelity:.9f}",
        ]
        if self.weight_profile is not None:
            lines += [f"weight{w}={self.weight_profile[w]:.9g}" for w in range(4)]
        if self.two_spin_only is not None:
            lines.append(f"two_spin_only={'true' if self.two_spin_only else 'false'}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GateReport":
        fields = {}
        for line in text.splitlines():
            if not line.strip():
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise FormatError(f"bad report line {line!r}")
            fields[key.strip()] = value.strip()
        try:
            weights = None
            if "weight0" in fields:
                weights = {w: float(fields[f"weight{w}"]) for w in range(4)}
            two_spin = None
            if "two_spin_only" in fields:
                two_spin = {"true": True, "false": False}[fields["two_spin_only"]]
            return cls(
                unitarity_error=float(fields["unitarity_error"]),
                pattern_error=float(fields["pattern_error"]),
                truth_table_pass={"PASS": True, "FAIL": False}[fields["truth_table"]],
                fidelity=float(fields["fidelity"]),
                weight_profile=weights,
                two_spin_only=two_spin,
            )
        except (KeyError, ValueError) as exc:
            raise FormatError(f"incomplete or malformed report: {exc}") from None


def verify_unitary(u, tol: float = DEFAULT_TOL) -> GateReport:
    u = _check_gate(u)
    passed, err = pattern_check(u, tol)
    return GateReport(
        unitarity_error=unitarity_error(u),
        pattern_error=err,
        truth_table_pass=passed,
        fidelity=functional_fidelity(u),
    )


def verify_hamiltonian(h: PauliDecomposition, cfg: EvolutionConfig = EvolutionConfig(), tol: float = DEFAULT_TOL) -> GateReport:
    """Exponentiate ``h`` over one gate interval and check the result."""
    u = evolution_operator(reconstruct(h), cfg)
    base = verify_unitary(u, tol)
    profile = weight_profile(h, tol)
    return GateReport(
        unitarity_error=base.unitarity_error,
        pattern_error=base.pattern_error,
        truth_table_pass=base.truth_table_pass,
        fidelity=base.fidelity,
        weight_profile=profile,
        two_spin_only=all(profile[w] <= tol for w in (0, 1, 3)),
    )
