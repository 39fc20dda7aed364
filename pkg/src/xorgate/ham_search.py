"""
Numerical search for XOR gates among conventional spin-coupling templates.

A :class:`CouplingModel` fixes which Pauli strings may appear; its parameter
vector holds the coupling strengths in units of ħ/Δt. Pairs are enumerated
as (A,B), (A,C), (B,C) and axes as x, y, z. Single-spin field parameters,
when enabled, follow the couplings in spin-major order (A x,y,z, B ..., C ...).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import InvalidOptions, LengthMismatch
from .gate_verify import _fidelity, _leakage
from .pauli import DIM, PauliDecomposition, reconstruct, string_matrix
from .tensor_core import EvolutionConfig, evolution_operator

PAIRS = ((0, 1), (0, 2), (1, 2))
SPIN_AXES = "XYZ"
SEARCH_BOX = (-math.pi, math.pi)


class CouplingKind(enum.Enum):
    ISING = "ising"
    XY = "xy"
    HEISENBERG = "heisenberg"
    GENERAL = "general"


def _label(sites: dict[int, str]) -> str:
    return "".join(sites.get(i, "I") for i in range(3))


@dataclass(frozen=True)
class CouplingModel:
    kind: CouplingKind
    include_fields: bool = False

    def __post_init__(self):
        if not isinstance(self.kind, CouplingKind):
            object.__setattr__(self, "kind", CouplingKind(self.kind))

    @property
    def name(self) -> str:
        return self.kind.value + ("+fields" if self.include_fields else "")

    def parameter_terms(self) -> list[tuple[str, ...]]:
        """For each parameter, the Pauli strings it multiplies (unit weight)."""
        terms: list[tuple[str, ...]] = []
        for i, j in PAIRS:
            if self.kind is CouplingKind.GENERAL:
                for a in SPIN_AXES:
                    for b in SPIN_AXES:
                        terms.append((_label({i: a, j: b}),))
            else:
                axes = {
                    CouplingKind.ISING: "Z",
                    CouplingKind.XY: "XY",
                    CouplingKind.HEISENBERG: "XYZ",
                }[self.kind]
                terms.append(tuple(_label({i: a, j: a}) for a in axes))
        if self.include_fields:
            for site in range(3):
                for a in SPIN_AXES:
                    terms.append((_label({site: a}),))
        return terms

    @property
    def n_params(self) -> int:
        return len(self.parameter_terms())

    def allowed_strings(self) -> frozenset[str]:
        return frozenset(s for group in self.parameter_terms() for s in group)

    def basis(self) -> np.ndarray:
        """Array of shape (n_params, 8, 8): H = tensordot(params, basis)."""
        return np.array([sum(string_matrix(s) for s in group) for group in self.parameter_terms()])


def _check_length(model: CouplingModel, params) -> np.ndarray:
    x = np.asarray(params, dtype=float)
    if x.shape != (model.n_params,):
        raise LengthMismatch(f"{model.name} takes {model.n_params} parameters, got shape {x.shape}")
    return x


def to_decomposition(model: CouplingModel, params: Sequence[float]) -> PauliDecomposition:
    """Pauli decomposition of the template Hamiltonian (ħ/Δt units)."""
    x = _check_length(model, params)
    terms: dict[str, float] = {}
    for value, group in zip(x, model.parameter_terms()):
        for s in group:
            terms[s] = terms.get(s, 0.0) + float(value)
    return PauliDecomposition({k: v for k, v in terms.items() if v != 0.0})


def from_decomposition(model: CouplingModel, d: PauliDecomposition, tol: float = 1e-12) -> np.ndarray:
    """Parameter vector reproducing ``d``; raises if ``d`` is not representable."""
    allowed = model.allowed_strings()
    stray = [s for s, c in d.items() if s not in allowed and abs(c) > tol]
    if stray:
        raise ValueError(f"{model.name} cannot represent terms {stray}")
    params = []
    for group in model.parameter_terms():
        values = [complex(d[s]) for s in group]
        reals = [v.real for v in values]
        if any(abs(v.imag) > tol for v in values) or max(reals) - min(reals) > tol:
            raise ValueError(f"{model.name} needs equal real couplings on {group}")
        params.append(reals[0])
    return np.array(params)


class _Evaluator:
    """Precomputed template basis; maps parameter vectors to gate unitaries."""

    def __init__(self, model: CouplingModel, cfg: EvolutionConfig):
        self.model = model
        self.cfg = cfg
        self.flat_basis = model.basis().reshape(model.n_params, DIM * DIM)
        self.calls = 0

    def unitary(self, params) -> np.ndarray:
        x = _check_length(self.model, params)
        h = (x @ self.flat_basis).reshape(DIM, DIM) * self.cfg.energy_unit
        return evolution_operator(h, self.cfg)

    def objective(self, params) -> float:
        self.calls += 1
        return 1.0 - _fidelity(self.unitary(params))

    def surrogate(self, params) -> float:
        self.calls += 1
        return _leakage(self.unitary(params))


def gate_unitary(model: CouplingModel, params, cfg: EvolutionConfig = EvolutionConfig()) -> np.ndarray:
    """Evolution operator of the template Hamiltonian over one gate interval."""
    return _Evaluator(model, cfg).unitary(params)


def objective(model: CouplingModel, params, cfg: EvolutionConfig = EvolutionConfig()) -> float:
    """``1 - functional_fidelity`` of the template gate, in [0, 1]."""
    return _Evaluator(model, cfg).objective(params)


def make_objective(model: CouplingModel, cfg: EvolutionConfig = EvolutionConfig()) -> Callable[[np.ndarray], float]:
    """:func:`objective` as a one-argument callable with the basis precomputed."""
    return _Evaluator(model, cfg).objective


def surrogate_objective(model: CouplingModel, params, cfg: EvolutionConfig = EvolutionConfig()) -> float:
    """Mean basis-input leakage; smooth, and zero exactly where the objective is."""
    return _Evaluator(model, cfg).surrogate(params)


# ------------------------------------------------------------ Nelder-Mead


@dataclass(frozen=True)
class NelderMeadOptions:
    max_evals: int = 20000
    xtol: float = 1e-10
    ftol: float = 1e-12
    step: float = 0.25

    def validate(self) -> None:
        if not (isinstance(self.max_evals, (int, np.integer)) and self.max_evals >= 1):
            raise InvalidOptions(f"max_evals must be a positive integer, got {self.max_evals!r}")
        for name in ("xtol", "ftol"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                raise InvalidOptions(f"{name} must be a non-negative number, got {v!r}")
        if not (self.step > 0 and math.isfinite(self.step)):
            raise InvalidOptions(f"step must be positive, got {self.step!r}")


@dataclass(frozen=True)
class NelderMeadResult:
    x: np.ndarray
    fun: float
    evaluations: int
    iterations: int
    converged: bool


def nelder_mead(f: Callable[[np.ndarray], float], start, opts: NelderMeadOptions = NelderMeadOptions()) -> NelderMeadResult:
    """Minimize ``f`` with the classic Nelder-Mead simplex method.

    Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
    The initial simplex is ``start`` plus ``opts.step`` along each axis.
    Stops when the simplex diameter (max coordinate distance from the best
    vertex) drops below ``xtol``, the spread of function values below
    ``ftol``, or after ``max_evals`` evaluations. Deterministic.
    """
    if not isinstance(opts, NelderMeadOptions):
        raise InvalidOptions(f"expected NelderMeadOptions, got {type(opts).__name__}")
    opts.validate()
    x0 = np.asarray(start, dtype=float).ravel()
    n = x0.size
    if n == 0:
        raise InvalidOptions("start vector is empty")

    sim = np.tile(x0, (n + 1, 1))
    sim[1:] += opts.step * np.eye(n)
    fs = np.empty(n + 1)
    evals = 0
    for i in range(n + 1):
        if evals >= opts.max_evals:
            fs[i:] = np.inf
            break
        fs[i] = f(sim[i])
        evals += 1

    iterations = 0
    converged = False
    while True:
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        if fs[-1] - fs[0] <= opts.ftol or np.max(np.abs(sim[1:] - sim[0])) <= opts.xtol:
            converged = True
            break
        if evals >= opts.max_evals:
            break
        iterations += 1

        centroid = sim[:-1].mean(axis=0)
        worst = sim[-1]
        xr = centroid + (centroid - worst)
        fr = f(xr)
        evals += 1

        if fr < fs[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = f(xe)
            evals += 1
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
            continue

        if fr < fs[-1]:
            xc = centroid + 0.5 * (xr - centroid)
            fc = f(xc)
            evals += 1
            accept = fc <= fr
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = f(xc)
            evals += 1
            accept = fc < fs[-1]
        if accept:
            sim[-1], fs[-1] = xc, fc
            continue

        for i in range(1, n + 1):
            sim[i] = sim[0] + 0.5 * (sim[i] - sim[0])
            fs[i] = f(sim[i])
            evals += 1

    best = int(np.argmin(fs))
    return NelderMeadResult(sim[best].copy(), float(fs[best]), evals, iterations, converged)


# ------------------------------------------------------------ multi-start


STRATEGIES = ("quasi-newton", "nelder-mead")


@dataclass(frozen=True)
class SearchOptions:
    """Per-restart budget.

    ``strategy="nelder-mead"`` runs :func:`nelder_mead` on the objective from
    each start. ``"quasi-newton"`` first minimizes the smooth leakage
    surrogate with finite-difference BFGS, then polishes on the objective
    with a Nelder-Mead simplex of size ``polish_step``.
    """

    strategy: str = "quasi-newton"
    nelder_mead: NelderMeadOptions = field(default_factory=NelderMeadOptions)
    bfgs_maxiter: int = 2000
    bfgs_gtol: float = 1e-10
    polish_step: float = 1e-3
    polish_evals: int = 2000

    def validate(self) -> None:
        if self.strategy not in STRATEGIES:
            raise InvalidOptions(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        self.nelder_mead.validate()
        if self.bfgs_maxiter < 1 or self.polish_evals < 1:
            raise InvalidOptions("iteration budgets must be positive")
        if not (self.polish_step > 0 and self.bfgs_gtol > 0):
            raise InvalidOptions("polish_step and bfgs_gtol must be positive")


@dataclass(frozen=True)
class SearchResult:
    model: CouplingModel
    best_params: np.ndarray
    best_fidelity: float
    objective_evaluations: int
    restarts_used: int
    converged: bool
    seed: int | None = None
    strategy: str = "quasi-newton"

    def decomposition(self) -> PauliDecomposition:
        return to_decomposition(self.model, self.best_params)

    def to_text(self) -> str:
        """Line-oriented ``key=value`` record; parameters at 17 significant digits."""
        params = " ".join(format(float(v), ".17g") for v in self.best_params)
        return "\n".join([
            "# search-result v1",
            f"model={self.model.kind.value}",
            f"include_fields={'true' if self.model.include_fields else 'false'}",
            f"strategy={self.strategy}",
            f"seed={self.seed if self.seed is not None else ''}",
            f"params={params}",
            f"best_fidelity={self.best_fidelity:.17g}",
            f"evaluations={self.objective_evaluations}",
            f"restarts_used={self.restarts_used}",
            f"converged={'true' if self.converged else 'false'}",
        ]) + "\n"


def seeded_starts(model: CouplingModel, n_restarts: int, seed: int) -> np.ndarray:
    """Starting points, uniform in [-π, π] per coordinate, one row per restart.

    Row ``k`` does not depend on ``n_restarts``.
    """
    rng = np.random.default_rng(seed)
    return rng.uniform(*SEARCH_BOX, size=(n_restarts, model.n_params))


def _local_search(ev: _Evaluator, start: np.ndarray, options: SearchOptions) -> tuple[np.ndarray, float, bool]:
    if options.strategy == "nelder-mead":
        r = nelder_mead(ev.objective, start, options.nelder_mead)
        return r.x, r.fun, r.converged

    res = minimize(ev.surrogate, start, method="BFGS",
                   options={"gtol": options.bfgs_gtol, "maxiter": options.bfgs_maxiter})
    polish = NelderMeadOptions(
        max_evals=options.polish_evals,
        xtol=options.nelder_mead.xtol,
        ftol=options.nelder_mead.ftol,
        step=options.polish_step,
    )
    r = nelder_mead(ev.objective, res.x, polish)
    return r.x, r.fun, bool(res.success) or r.converged


def multi_start_search(
    model: CouplingModel,
    cfg: EvolutionConfig = EvolutionConfig(),
    n_restarts: int = 32,
    seed: int = 0,
    options: SearchOptions = SearchOptions(),
) -> SearchResult:
    """Best gate found from ``n_restarts`` seeded starting points.

    Ties between restarts go to the lowest restart index. Identical
    arguments give identical results.
    """
    if n_restarts < 1:
        raise InvalidOptions(f"n_restarts must be at least 1, got {n_restarts}")
    options.validate()
    ev = _Evaluator(model, cfg)
    best_x, best_f, best_conv = None, math.inf, False
    for start in seeded_starts(model, n_restarts, seed):
        x, fx, conv = _local_search(ev, start, options)
        if fx < best_f:
            best_x, best_f, best_conv = x, fx, conv
    fidelity = _fidelity(ev.unitary(best_x))
    return SearchResult(
        model=model,
        best_params=best_x,
        best_fidelity=fidelity,
        objective_evaluations=ev.calls,
        restarts_used=n_restarts,
        converged=best_conv,
        seed=seed,
        strategy=options.strategy,
    )
