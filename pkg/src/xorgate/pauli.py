"""
Pauli-string algebra on three spins A, B, C.

A Pauli string is a three-character label over ``I X Y Z`` such as ``"ZYI"``
(σ_z on A, σ_y on B, identity on C). Site A is the leftmost character and
the most significant tensor factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, TextIO

import numpy as np

from .errors import DimensionMismatch, FormatError
from .tensor_core import as_matrix, kron_all

AXES = "IXYZ"
N_SITES = 3
DIM = 2 ** N_SITES

#: storage threshold; smaller coefficients become exact zeros
ZERO_TOL = 1e-14

PAULI = MappingProxyType({
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
})

#: all 64 labels, lexicographic with I < X < Y < Z and site A most significant
ALL_STRINGS = tuple("".join(p) for p in itertools.product(AXES, repeat=N_SITES))


def check_label(label) -> str:
    """Normalize a Pauli string given as ``"ZYI"`` or ``("Z", "Y", "I")``."""
    s = "".join(label) if not isinstance(label, str) else label
    if len(s) != N_SITES or any(ch not in AXES for ch in s):
        raise ValueError(f"invalid Pauli string {label!r}")
    return s


def weight(label) -> int:
    """Number of non-identity factors."""
    return sum(ch != "I" for ch in check_label(label))


def string_matrix(label) -> np.ndarray:
    """8x8 matrix ``m(A) ⊗ m(B) ⊗ m(C)``."""
    return _STRING_MATRICES[ALL_STRINGS.index(check_label(label))].copy()


_STRING_MATRICES = np.array([kron_all(*(PAULI[ch] for ch in s)) for s in ALL_STRINGS])
_STRING_MATRICES.setflags(write=False)


@dataclass(frozen=True)
class PauliDecomposition:
    """Operator written as ``sum(coefficient * string_matrix(label))``.

    Missing labels have coefficient zero. For Hamiltonians the coefficients
    are energies with ħ = 1, i.e. multiples of ħ/Δt when Δt = 1.
    """

    terms: Mapping[str, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean = {check_label(k): v for k, v in dict(self.terms).items()}
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    def __getitem__(self, label) -> complex:
        return self.terms.get(check_label(label), 0.0)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def nonzero(self) -> dict[str, complex]:
        return {k: v for k, v in self.terms.items() if v != 0}

    def to_matrix(self) -> np.ndarray:
        return reconstruct(self)

    def scaled(self, factor: float) -> "PauliDecomposition":
        return PauliDecomposition({k: factor * v for k, v in self.terms.items()})

    def is_real(self, tol: float = 1e-12) -> bool:
        return all(abs(complex(v).imag) <= tol for v in self.terms.values())

    def max_difference(self, other: "PauliDecomposition") -> float:
        """Largest coefficient difference over the union of labels."""
        labels = set(self.terms) | set(other.terms)
        return max((abs(self[k] - other[k]) for k in labels), default=0.0)


def decompose(m) -> PauliDecomposition:
    """Expand an 8x8 operator in the Pauli-string basis.

    ``coeff(s) = Tr(string_matrix(s) @ m) / 8``. Coefficients below ``1e-14``
    in magnitude are stored as exact zeros and omitted. When ``m`` is
    Hermitian the coefficients are stored as real floats.
    """
    m = as_matrix(m)
    if m.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected an {DIM}x{DIM} operator, got {m.shape}")
    coeffs = np.einsum("sij,ji->s", _STRING_MATRICES, m) / DIM
    hermitian = bool(np.max(np.abs(m - m.conj().T)) <= 1e-12 * max(1.0, float(np.max(np.abs(m)))))
    terms = {}
    for label, c in zip(ALL_STRINGS, coeffs):
        if abs(c) < ZERO_TOL:
            continue
        if hermitian:
            if abs(c.real) < ZERO_TOL:
                continue
            terms[label] = float(c.real)
        else:
            terms[label] = complex(c)
    return PauliDecomposition(terms)


def reconstruct(d: PauliDecomposition | Mapping[str, complex]) -> np.ndarray:
    out = np.zeros((DIM, DIM), dtype=np.complex128)
    items = d.items()
    for label, c in items:
        out = out + c * _STRING_MATRICES[ALL_STRINGS.index(check_label(label))]
    return out


def weight_profile(d: PauliDecomposition, tol: float = 1e-12) -> dict[int, float]:
    """Largest ``|coefficient|`` for each interaction weight 0..3.

    A weight whose largest coefficient does not exceed ``tol`` reports 0.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    profile = {w: 0.0 for w in range(N_SITES + 1)}
    for label, c in d.items():
        a = abs(c)
        w = weight(label)
        if a > tol and a > profile[w]:
            profile[w] = a
    return profile


# ------------------------------------------------------------- pauli-ham v1

PAULI_HAM_HEADER = "# pauli-ham v1"


def format_pauli_ham(d: PauliDecomposition, comments: Iterable[str] = ()) -> str:
    """Serialize a real decomposition as ``pauli-ham v1`` (17 significant digits)."""
    if not d.is_real():
        raise FormatError("pauli-ham v1 only holds real coefficients")
    lines = [PAULI_HAM_HEADER]
    lines += [f"# {c}" for c in comments]
    for label, c in d.items():
        value = complex(c).real
        if value != 0.0:
            lines.append(f"{label} {value:.17g}")
    return "\n".join(lines) + "\n"


def parse_pauli_ham(text: str) -> PauliDecomposition:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PAULI_HAM_HEADER:
        raise FormatError(f"missing '{PAULI_HAM_HEADER}' header")
    terms: dict[str, float] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<AAA> <coefficient>', got {raw!r}")
        label, value = parts
        if len(label) != N_SITES or any(ch not in AXES for ch in label):
            raise FormatError(f"line {lineno}: invalid Pauli string {label!r}")
        try:
            c = float(value)
        except ValueError:
            raise FormatError(f"line {lineno}: coefficient {value!r} is not a real number") from None
        if not math.isfinite(c):
            raise FormatError(f"line {lineno}: coefficient {value!r} is not finite")
        if label in terms:
            raise FormatError(f"line {lineno}: duplicate term {label}")
        terms[label] = c
    return PauliDecomposition(terms)


def write_pauli_ham(d: PauliDecomposition, fh: TextIO, comments: Iterable[str] = ()) -> None:
    fh.write(format_pauli_ham(d, comments))


def read_pauli_ham(fh: TextIO) -> PauliDecomposition:
    return parse_pauli_ham(fh.read())


def term_table(d: PauliDecomposition) -> str:
    """Human-readable listing, 9 significant digits."""
    rows = [f"{'term':<6}{'weight':>7}  coefficient"]
    for label, c in d.items():
        c = complex(c)
        value = f"{c.real:.9g}" if c.imag == 0 else f"{c:.9g}"
        rows.append(f"{label:<6}{weight(label):>7}  {value}")
    return "\n".join(rows)
