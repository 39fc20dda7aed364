"""Three-spin XOR gate built from two-spin interactions.

Submodules
----------
tensor_core  dense operators, eigensolvers, exponential and logarithm
pauli        Pauli-string basis on three spins, ``pauli-ham v1`` files
xor_family   the parametrized XOR unitary and its two-spin Hamiltonian
gate_verify  truth-table, zero-pattern and fidelity checks
ham_search   numerical coupling search over Ising/XY/Heisenberg templates
"""

from .errors import (
    DimensionMismatch,
    FormatError,
    InvalidOptions,
    LengthMismatch,
    NotHermitian,
    NotNormal,
    NotUnitary,
    XorGateError,
)
from .gate_verify import GateReport, functional_fidelity, leakage, pattern_check, verify_hamiltonian, verify_unitary
from .ham_search import (
    CouplingKind,
    CouplingModel,
    NelderMeadOptions,
    SearchOptions,
    SearchResult,
    multi_start_search,
    nelder_mead,
)
from .pauli import PauliDecomposition, decompose, reconstruct, string_matrix, weight_profile
from .tensor_core import (
    EvolutionConfig,
    Spectrum,
    evolution_operator,
    hermitian_eig,
    kron,
    normal_eig,
    unitary_log_min_spread,
)
from .xor_family import (
    AngleParameters,
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

__version__ = "0.1.0"
