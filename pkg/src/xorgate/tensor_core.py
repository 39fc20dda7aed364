"""
Dense complex linear algebra for operators on a few spins.

Matrices are plain ``numpy`` complex128 arrays. Everything here is a pure
function of its inputs; nothing is modified in place.

Units: ħ defaults to 1 and Hamiltonian coefficients are per unit time, so
``H * delta_t / hbar`` is the dimensionless generator of one gate interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, TextIO

import numpy as np

from .errors import DimensionMismatch, FormatError, NotHermitian, NotNormal, NotUnitary

#: default tolerance for grouping nearly equal eigenvalues
DEGENERACY_TOL = 1e-8

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORMAL_TOL = 1e-10


@dataclass(frozen=True)
class EvolutionConfig:
    """Gate interval ``delta_t`` and Planck constant ``hbar``."""

    delta_t: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.delta_t > 0 and math.isfinite(self.delta_t)):
            raise ValueError(f"delta_t must be positive, got {self.delta_t!r}")
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ValueError(f"hbar must be positive, got {self.hbar!r}")

    @property
    def energy_unit(self) -> float:
        """ħ/Δt, the natural unit of Hamiltonian coefficients."""
        return self.hbar / self.delta_t


class Spectrum(NamedTuple):
    """Eigenvalues paired with the orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a square complex128 array, raising if it is not square."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(*factors) -> np.ndarray:
    """Left-to-right Kronecker product of several factors."""
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def hermitian_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m))))


def unitarity_error(u: np.ndarray) -> float:
    """Largest entry of ``|U U† - 1|``."""
    u = as_matrix(u)
    return float(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0]))))


def _check_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    # absolute for unit-scale inputs, relative for large ones
    scale = max(1.0, float(np.max(np.abs(m))))
    err = hermitian_error(m)
    if not err <= tol * scale:
        raise NotHermitian(f"matrix is not Hermitian: max|M - M^dag| = {err:.3e}")
    return 0.5 * (m + dagger(m))


def jacobi_eigh(m: np.ndarray, rtol: float = 1e-13, max_sweeps: int = 60):
    """Cyclic complex Jacobi diagonalization of a Hermitian matrix.

    Each 2x2 rotation first removes the phase of the pivot with a diagonal
    unitary and then applies an ordinary real Jacobi rotation. Sweeps stop
    when the off-diagonal Frobenius norm is at most ``rtol * ||m||_F``.

    Returns unsorted eigenvalues and the accumulated eigenvector matrix.
    """
    a = np.array(m, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    target = rtol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                j = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j
                a[idx, :] = dagger(j) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ j
    return np.real(np.diag(a)).copy(), v


def hermitian_eig(m, method: str = "lapack") -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Hermitian matrix (checked to ``1e-12``).
    method : {"lapack", "jacobi"}
        ``"lapack"`` calls ``numpy.linalg.eigh``; ``"jacobi"`` uses the
        cyclic complex Jacobi solver in this module.

    Returns
    -------
    Spectrum
        Real eigenvalues in ascending order, eigenvectors as columns.
    """
    h = _check_hermitian(m)
    if method == "lapack":
        w, v = np.linalg.eigh(h)
    elif method == "jacobi":
        w, v = jacobi_eigh(h)
        order = np.argsort(w, kind="stable")
        w, v = w[order], v[:, order]
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return Spectrum(w, v)


def _group_degenerate(values: np.ndarray, tol: float) -> list[np.ndarray]:
    """Split sorted ``values`` into runs whose consecutive gaps are <= tol."""
    breaks = np.flatnonzero(np.diff(values) > tol) + 1
    return np.split(np.arange(len(values)), breaks)


def normal_eig(u, degeneracy_tol: float = DEGENERACY_TOL, method: str = "lapack") -> Spectrum:
    """Eigendecomposition of a normal (in practice unitary) matrix.

    The commuting Hermitian pair ``H1 = (U + U†)/2`` and
    ``H2 = (U - U†)/(2i)`` share eigenvectors. ``H1`` is diagonalized first,
    then ``H2`` is diagonalized inside every degenerate eigenspace of ``H1``
    (eigenvalue gaps no larger than ``degeneracy_tol``).
    """
    u = as_matrix(u)
    ud = dagger(u)
    err = float(np.max(np.abs(u @ ud - ud @ u)))
    if not err <= NORMAL_TOL * max(1.0, float(np.max(np.abs(u))) ** 2):
        raise NotNormal(f"matrix is not normal: max|UU^dag - U^dag U| = {err:.3e}")
    h1 = 0.5 * (u + ud)
    h2 = -0.5j * (u - ud)
    w1, v1 = hermitian_eig(h1, method=method)
    vecs = np.empty_like(v1)
    for block in _group_degenerate(w1, degeneracy_tol):
        basis = v1[:, block]
        if len(block) == 1:
            vecs[:, block] = basis
            continue
        sub = dagger(basis) @ h2 @ basis
        _, rot = hermitian_eig(0.5 * (sub + dagger(sub)), method=method)
        vecs[:, block] = basis @ rot
    eigvals = np.einsum("ij,ik,kj->j", vecs.conj(), u, vecs)
    return Spectrum(eigvals, vecs)


def evolution_operator(h, cfg: EvolutionConfig = EvolutionConfig(), method: str = "lapack") -> np.ndarray:
    """``exp(-i h delta_t / hbar)`` for a time-independent Hermitian ``h``."""
    w, v = hermitian_eig(h, method=method)
    phases = np.exp(-1j * w * (cfg.delta_t / cfg.hbar))
    return (v * phases) @ dagger(v)


def expm_taylor(a, tol: float = 1e-18, max_terms: int = 60) -> np.ndarray:
    """Matrix exponential by truncated Taylor series with scaling and squaring.

    Independent of any eigendecomposition; used to cross-check
    :func:`evolution_operator`.
    """
    a = as_matrix(a)
    norm = float(np.max(np.sum(np.abs(a), axis=0)))  # 1-norm
    squarings = max(0, math.ceil(math.log2(norm / 0.25))) if norm > 0 else 0
    b = a / (2.0 ** squarings)
    n = a.shape[0]
    result = np.eye(n, dtype=np.complex128)
    term = np.eye(n, dtype=np.complex128)
    for k in range(1, max_terms + 1):
        term = term @ b / k
        result = result + term
        if np.max(np.abs(term)) < tol:
            break
    for _ in range(squarings):
        result = result @ result
    return result


def evolution_operator_series(h, cfg: EvolutionConfig = EvolutionConfig()) -> np.ndarray:
    """Same contract as :func:`evolution_operator`, computed by :func:`expm_taylor`."""
    h = _check_hermitian(h)
    return expm_taylor(-1j * h * (cfg.delta_t / cfg.hbar))


def min_spread_phases(phases, tie_tol: float = 1e-9) -> np.ndarray:
    """Shift eigenphases by multiples of 2π to minimize their spread.

    Among equally narrow arrangements, the one with the smallest
    ``max |theta|`` wins; remaining ties go to the arrangement whose cut
    falls earliest in sorted principal order.
    """
    theta = np.asarray(phases, dtype=float)
    n = len(theta)
    order = np.argsort(theta, kind="stable")
    s = theta[order]
    two_pi = 2.0 * math.pi

    candidates = []
    for k in range(n):
        shifted = np.concatenate([s[k:], s[:k] + two_pi])
        spread = shifted[-1] - shifted[0]
        center = 0.5 * (shifted[-1] + shifted[0])
        shifted = shifted - two_pi * round(center / two_pi)
        candidates.append((spread, float(np.max(np.abs(shifted))), k, shifted))

    best_spread = min(c[0] for c in candidates)
    tied = [c for c in candidates if c[0] <= best_spread + tie_tol]
    best_max = min(c[1] for c in tied)
    chosen = next(c for c in tied if c[1] <= best_max + tie_tol)

    k, shifted = chosen[2], chosen[3]
    sorted_idx = np.concatenate([order[k:], order[:k]])
    out = np.empty(n)
    out[sorted_idx] = shifted
    return out


def unitary_log_min_spread(u, cfg: EvolutionConfig = EvolutionConfig(), degeneracy_tol: float = DEGENERACY_TOL) -> np.ndarray:
    """Hermitian ``h`` with ``evolution_operator(h, cfg) == u``.

    The eigenphases of ``u`` are chosen on the branch of minimal spread
    (see :func:`min_spread_phases`), keeping the Hamiltonian spectrum as
    compact as possible.

    Raises
    ------
    NotUnitary
        If ``max|U U† - 1| > 1e-10``.
    """
    u = as_matrix(u)
    err = unitarity_error(u)
    if not err <= UNITARY_TOL:
        raise NotUnitary(f"matrix is not unitary: max|UU^dag - 1| = {err:.3e}")
    lam, v = normal_eig(u, degeneracy_tol=degeneracy_tol)
    theta = np.angle(lam)
    theta[theta <= -math.pi] = math.pi
    theta = min_spread_phases(theta)
    h = -(cfg.hbar / cfg.delta_t) * ((v * theta) @ dagger(v))
    return 0.5 * (h + dagger(h))


# ---------------------------------------------------------------- cmatrix v1

CMATRIX_HEADER = "# cmatrix v1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_cmatrix(m) -> str:
    """Serialize a matrix in the ``cmatrix v1`` text format."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    lines = [CMATRIX_HEADER, f"{a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def parse_cmatrix(text: str) -> np.ndarray:
    """Parse ``cmatrix v1`` text; raises :class:`FormatError` on any defect."""
    lines = text.splitlines()
    if not lines or lines[0].strip() != CMATRIX_HEADER:
        raise FormatError(f"missing '{CMATRIX_HEADER}' header")
    if len(lines) < 2:
        raise FormatError("missing dimension line")
    try:
        rows, cols = (int(t) for t in lines[1].split())
    except ValueError:
        raise FormatError(f"bad dimension line: {lines[1]!r}") from None
    if rows < 1 or cols < 1:
        raise FormatError(f"bad dimensions {rows}x{cols}")
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != rows:
        raise FormatError(f"expected {rows} rows, found {len(body)}")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, line in enumerate(body):
        entries = line.split(" ")
        if len(entries) != cols:
            raise FormatError(f"row {i}: expected {cols} entries, found {len(entries)}")
        for j, entry in enumerate(entries):
            try:
                re, im = entry.split(",")
                out[i, j] = complex(float(re), float(im))
            except ValueError:
                raise FormatError(f"row {i}: bad entry {entry!r}") from None
    return out


def write_cmatrix(m, fh: TextIO) -> None:
    fh.write(format_cmatrix(m))


def read_cmatrix(fh: TextIO) -> np.ndarray:
    return parse_cmatrix(fh.read())
