"""
A three-parameter family of two-spin Hamiltonians realizing XOR into spin C.

Spins A and B carry the inputs; after one gate interval spin C holds
A XOR B regardless of its initial state. The evolution operator is
block-diagonal in A::

    U = [[V, 0],
         [0, W]]        (V acts on B⊗C when A = 1, W when A = 0)

with V and W single-phase-per-row permutations. Their reduced logarithms
``p``, ``q`` (``V = exp(ip)``, ``W = exp(iq)``) are available in closed form,
and fixing five of the eight phases in terms of the free angles
``alpha, beta, gamma`` leaves a Hamiltonian with two-spin terms only.

Basis order is |ABC> = |111>, |110>, |101>, |100>, |011>, |010>, |001>, |000>,
with 1 the spin-up (σ_z = +1) state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .pauli import PAULI, PauliDecomposition
from .tensor_core import EvolutionConfig, as_matrix, kron

PI = math.pi
SQRT2 = math.sqrt(2.0)

# ------------------------------------------------------------------- basis

BASIS_LABELS = ("111", "110", "101", "100", "011", "010", "001", "000")


def basis_index(a: int, b: int, c: int) -> int:
    """Position of |abc> in the basis ordering."""
    for bit in (a, b, c):
        if bit not in (0, 1):
            raise ValueError(f"spin values must be 0 or 1, got {(a, b, c)}")
    return 7 - (4 * a + 2 * b + c)


def basis_bits(index: int) -> tuple[int, int, int]:
    """Inverse of :func:`basis_index`."""
    if not 0 <= index < 8:
        raise ValueError(f"basis index out of range: {index}")
    v = 7 - index
    return (v >> 2) & 1, (v >> 1) & 1, v & 1


def xor_truth_table() -> dict[tuple[int, int], int]:
    """Inputs (A, B) mapped to the value required in C."""
    return {(a, b): a ^ b for a in (1, 0) for b in (1, 0)}


# ------------------------------------------------------------------ angles


@dataclass(frozen=True)
class AngleParameters:
    """Phases of V (alpha, beta, gamma, delta) and W (rho, omega, xi, eta)."""

    alpha: float
    beta: float
    gamma: float
    delta: float
    rho: float
    omega: float
    xi: float
    eta: float

    @property
    def mu(self) -> float:
        """Quarter-sum of the V phases."""
        return (self.alpha + self.beta + self.gamma + self.delta) / 4.0

    @property
    def nu(self) -> float:
        """Quarter-sum of the W phases."""
        return (self.rho + self.omega + self.xi + self.eta) / 4.0

    @property
    def free(self) -> tuple[float, float, float]:
        return self.alpha, self.beta, self.gamma


def constrained_angles(alpha: float, beta: float, gamma: float) -> AngleParameters:
    """Derive the five dependent phases that make the Hamiltonian two-spin.

    Derived angles are left unreduced so that ``mu`` and ``nu`` both come
    out as ``-3π/4``.
    """
    total = alpha + beta + gamma
    return AngleParameters(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        delta=-3 * PI - total,
        rho=-PI + beta,
        omega=-2 * PI - total,
        xi=-PI + gamma,
        eta=PI + alpha,
    )


def _e(x: float) -> complex:
    return complex(math.cos(x), math.sin(x))


# -------------------------------------------------------------- unitaries


def build_V(p: AngleParameters) -> np.ndarray:
    v = np.zeros((4, 4), dtype=np.complex128)
    v[0, 2] = _e(p.delta)
    v[1, 0] = _e(p.alpha)
    v[2, 3] = _e(p.beta)
    v[3, 1] = _e(p.gamma)
    return v


def build_W(p: AngleParameters) -> np.ndarray:
    w = np.zeros((4, 4), dtype=np.complex128)
    w[0, 1] = _e(p.rho)
    w[1, 3] = _e(p.omega)
    w[2, 0] = _e(p.xi)
    w[3, 2] = _e(p.eta)
    return w


def build_U(v, w) -> np.ndarray:
    """Block-diagonal 8x8 operator: V on the A = 1 half, W on A = 0."""
    v, w = as_matrix(v), as_matrix(w)
    if v.shape != (4, 4) or w.shape != (4, 4):
        raise DimensionMismatch(f"V and W must be 4x4, got {v.shape} and {w.shape}")
    u = np.zeros((8, 8), dtype=np.complex128)
    u[:4, :4] = v
    u[4:, 4:] = w
    return u


def a_diagonal_split(sum_part, diff_part) -> np.ndarray:
    """Return ``(1 ⊗ S + σ_zA ⊗ D) / 2`` for 4x4 operators S, D on B⊗C.

    With ``S = V + W`` and ``D = V - W`` this is U; with ``S = P + Q`` and
    ``D = P - Q`` it is H.
    """
    return 0.5 * (kron(PAULI["I"], sum_part) + kron(PAULI["Z"], diff_part))


# ----------------------------------------------------- reduced logarithms


def p_matrix(p: AngleParameters) -> np.ndarray:
    """Closed-form Hermitian ``p`` with ``exp(i p) = V``.

    ``mu`` is recomputed from the V phases, so unconstrained angles work as
    well; under :func:`constrained_angles` the diagonal vanishes.
    """
    a, b, g, d, mu = p.alpha, p.beta, p.gamma, p.delta, p.mu
    diag = mu + 0.75 * PI
    k = PI / 4
    m = np.array([
        [0, -(1 + 1j) * _e(mu - a), -(1 - 1j) * _e(d - mu), -_e(2 * mu - a - g)],
        [-(1 - 1j) * _e(a - mu), 0, -_e(2 * mu - b - g), -(1 + 1j) * _e(mu - g)],
        [-(1 + 1j) * _e(mu - d), -_e(b + g - 2 * mu), 0, -(1 - 1j) * _e(b - mu)],
        [-_e(a + g - 2 * mu), -(1 - 1j) * _e(g - mu), -(1 + 1j) * _e(mu - b), 0],
    ], dtype=np.complex128)
    return k * m + diag * np.eye(4)


def q_matrix(p: AngleParameters) -> np.ndarray:
    """Closed-form Hermitian ``q`` with ``exp(i q) = W``."""
    r, w, x, h, nu = p.rho, p.omega, p.xi, p.eta, p.nu
    diag = nu + 0.75 * PI
    k = PI / 4
    m = np.array([
        [0, -(1 - 1j) * _e(r - nu), -(1 + 1j) * _e(nu - x), -_e(r + w - 2 * nu)],
        [-(1 + 1j) * _e(nu - r), 0, -_e(w + h - 2 * nu), -(1 - 1j) * _e(w - nu)],
        [-(1 - 1j) * _e(x - nu), -_e(2 * nu - w - h), 0, -(1 + 1j) * _e(nu - h)],
        [-_e(2 * nu - r - w), -(1 + 1j) * _e(nu - w), -(1 - 1j) * _e(h - nu), 0],
    ], dtype=np.complex128)
    return k * m + diag * np.eye(4)


def block_hamiltonians(p: AngleParameters, cfg: EvolutionConfig = EvolutionConfig()) -> tuple[np.ndarray, np.ndarray]:
    """``P = -(ħ/Δt) p`` and ``Q = -(ħ/Δt) q``."""
    return -cfg.energy_unit * p_matrix(p), -cfg.energy_unit * q_matrix(p)


def p_plus_q(p: AngleParameters, cfg: EvolutionConfig = EvolutionConfig()) -> np.ndarray:
    """Closed form of ``P + Q`` at constrained angles (free angles only)."""
    a, b, g = p.free
    s = a + b + g
    m = np.array([
        [0, _e(-a) + _e(b), _e(-s) - _e(-g), -SQRT2 * _e(-(a + g))],
        [-_e(a) - _e(-b), 0, -SQRT2 * _e(-(b + g)), _e(-g) - _e(-s)],
        [_e(g) - _e(s), SQRT2 * _e(b + g), 0, -_e(-a) - _e(b)],
        [SQRT2 * _e(a + g), _e(s) - _e(g), _e(a) + _e(-b), 0],
    ], dtype=np.complex128)
    return (-SQRT2 * PI * 1j / 4 * cfg.energy_unit) * m


def p_minus_q(p: AngleParameters, cfg: EvolutionConfig = EvolutionConfig()) -> np.ndarray:
    """Closed form of ``P - Q`` at constrained angles.

    Zero diagonal and zero anti-diagonal corners; linear in σ_x, σ_y of B
    and C.
    """
    a, b, g = p.free
    s = a + b + g
    x = _e(-a) - _e(b)
    y = _e(-s) + _e(-g)
    m = np.array([
        [0, x, y, 0],
        [-_e(a) + _e(-b), 0, 0, y],
        [-_e(s) - _e(g), 0, 0, x],
        [0, -_e(s) - _e(g), -_e(a) + _e(-b), 0],
    ], dtype=np.complex128)
    return (-SQRT2 * PI * 1j / 4 * cfg.energy_unit) * m


# ------------------------------------------------------------ Hamiltonians


def xor_hamiltonian(alpha: float, beta: float, gamma: float, cfg: EvolutionConfig = EvolutionConfig()) -> PauliDecomposition:
    """Two-spin XOR Hamiltonian for free angles ``alpha, beta, gamma``.

    Twelve terms, prefactor ``-π ħ / (8 Δt)``.
    """
    a, b, g = alpha, beta, gamma
    s = a + b + g
    sin, cos = math.sin, math.cos
    raw = {
        "ZIX": SQRT2 * (sin(a) + sin(b)),
        "ZIY": -SQRT2 * (cos(a) - cos(b)),
        "ZXI": SQRT2 * (sin(g) + sin(s)),
        "ZYI": -SQRT2 * (cos(g) + cos(s)),
        "IZX": SQRT2 * (sin(a) - sin(b)),
        "IZY": -SQRT2 * (cos(a) + cos(b)),
        "IXZ": -SQRT2 * (sin(g) - sin(s)),
        "IYZ": SQRT2 * (cos(g) - cos(s)),
        "IXX": -(sin(a + g) + sin(b + g)),
        "IXY": cos(a + g) - cos(b + g),
        "IYX": cos(a + g) + cos(b + g),
        "IYY": sin(a + g) - sin(b + g),
    }
    k = -PI / 8 * cfg.energy_unit
    return PauliDecomposition({label: k * c for label, c in raw.items() if k * c != 0.0})


def reference_hamiltonian(cfg: EvolutionConfig = EvolutionConfig()) -> PauliDecomposition:
    """The illustrative three-term member of the family (all free angles zero)."""
    e = cfg.energy_unit
    return PauliDecomposition({
        "ZYI": SQRT2 * PI / 4 * e,
        "IZY": SQRT2 * PI / 4 * e,
        "IYX": -PI / 4 * e,
    })


def xor_unitary(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """``build_U(build_V, build_W)`` at constrained angles."""
    p = constrained_angles(alpha, beta, gamma)
    return build_U(build_V(p), build_W(p))
