"""
Acceptance checks, one test per criterion.

Each test measures its quantity, records a PASS/FAIL line (shown in the
terminal summary and with ``pytest -s``), then asserts. Runtimes are wall
clock on the measured work only.
"""

import io
import math
import time

import numpy as np

from xorgate.cli import main
from xorgate.gate_verify import functional_fidelity, pattern_check
from xorgate.ham_search import (
    CouplingKind,
    CouplingModel,
    from_decomposition,
    make_objective,
    multi_start_search,
    nelder_mead,
)
from xorgate.pauli import ALL_STRINGS, parse_pauli_ham, reconstruct, string_matrix, weight, write_pauli_ham
from xorgate.tensor_core import (
    EvolutionConfig,
    evolution_operator,
    evolution_operator_series,
    expm_taylor,
    parse_cmatrix,
    write_cmatrix,
)
from xorgate.xor_family import (
    build_U,
    build_V,
    build_W,
    constrained_angles,
    p_matrix,
    p_minus_q,
    q_matrix,
    reference_hamiltonian,
    xor_hamiltonian,
)

CFG = EvolutionConfig()
STRINGS = np.array([string_matrix(s) for s in ALL_STRINGS])
NOT_TWO_SPIN = np.array([weight(s) != 2 for s in ALL_STRINGS])
SAMPLES = np.random.default_rng(101).uniform(0.0, 2 * math.pi, size=(200, 3))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def seventeen(x):
    return format(float(x), ".17g")


def test_criterion_1_special_case(record_criterion):
    times, diff = [], None
    # best of five, so a cold first call does not count as the runtime
    for _ in range(5):
        with Timer() as t:
            diff = xor_hamiltonian(0.0, 0.0, 0.0, CFG).max_difference(reference_hamiltonian(CFG))
        times.append(t.elapsed)
    ok = diff <= 1e-12 and min(times) < 1e-3
    record_criterion(1, ok, f"max coefficient difference {diff:.2e} (<= 1e-12), {min(times) * 1e3:.3f} ms (< 1 ms)")
    assert ok


def test_criterion_2_two_spin_only(record_criterion):
    with Timer() as t:
        worst = 0.0
        for a, b, g in SAMPLES:
            # raw trace projections, without the decomposition's zero threshold
            coeffs = np.einsum("kij,ji->k", STRINGS, reconstruct(xor_hamiltonian(a, b, g, CFG))) / 8
            worst = max(worst, float(np.max(np.abs(coeffs[NOT_TWO_SPIN]))))
    ok = worst <= 1e-12 and t.elapsed < 1.0
    record_criterion(2, ok, f"max weight-0/1/3 coefficient {worst:.2e} (<= 1e-12), {t.elapsed:.3f} s (< 1 s)")
    assert ok


def test_criterion_3_xor_correctness(record_criterion):
    with Timer() as t:
        failures, worst_pattern, worst_fid = 0, 0.0, 0.0
        for a, b, g in SAMPLES:
            u = evolution_operator(reconstruct(xor_hamiltonian(a, b, g, CFG)), CFG)
            passed, err = pattern_check(u, 1e-9)
            fid = functional_fidelity(u)
            failures += (not passed) or fid < 1 - 1e-9
            worst_pattern = max(worst_pattern, err)
            worst_fid = max(worst_fid, 1 - fid)
    ok = failures == 0 and t.elapsed < 2.0
    record_criterion(3, ok, f"{failures}/200 failures, max pattern error {worst_pattern:.2e}, "
                            f"max 1-fidelity {worst_fid:.2e} (<= 1e-9), {t.elapsed:.3f} s (< 2 s)")
    assert ok


def test_criterion_4_chain_closure(record_criterion):
    grid = np.arange(5) * 2 * math.pi / 5
    with Timer() as t:
        worst = 0.0
        for a in grid:
            for b in grid:
                for g in grid:
                    p = constrained_angles(a, b, g)
                    target = build_U(build_V(p), build_W(p))
                    u = evolution_operator(reconstruct(xor_hamiltonian(a, b, g, CFG)), CFG)
                    # align the global phase on the largest target entry
                    k = np.unravel_index(np.argmax(np.abs(target)), target.shape)
                    phase = u[k] / target[k]
                    worst = max(worst, float(np.max(np.abs(u - phase / abs(phase) * target))))
    ok = worst <= 1e-8 and t.elapsed < 5.0
    record_criterion(4, ok, f"max entry error {worst:.2e} (<= 1e-8) over 125 points, {t.elapsed:.3f} s (< 5 s)")
    assert ok


def test_criterion_5_spectrum(record_criterion):
    expected = np.array([-0.75, -0.25, 0.25, 0.75]) * math.pi
    with Timer() as t:
        eig_err = exp_err = 0.0
        for a, b, g in SAMPLES[:50]:
            p = constrained_angles(a, b, g)
            for red, block in ((p_matrix(p), build_V(p)), (q_matrix(p), build_W(p))):
                eig_err = max(eig_err, float(np.max(np.abs(np.linalg.eigvalsh(red) - expected))))
                exp_err = max(exp_err, float(np.max(np.abs(expm_taylor(1j * red) - block))))
    ok = eig_err <= 1e-10 and exp_err <= 1e-9 and t.elapsed < 1.0
    record_criterion(5, ok, f"eigenvalue error {eig_err:.2e} (<= 1e-10), exponential error {exp_err:.2e} "
                            f"(<= 1e-9), {t.elapsed:.3f} s (< 1 s)")
    assert ok


def test_criterion_6_linear_difference(record_criterion):
    angles = np.random.default_rng(606).uniform(0.0, 2 * math.pi, size=(50, 3))
    with Timer() as t:
        corner = pair = 0.0
        for a, b, g in angles:
            d = p_minus_q(constrained_angles(a, b, g), CFG)
            corner = max(corner, abs(d[0, 3]), abs(d[3, 0]), abs(d[1, 2]), abs(d[2, 1]),
                         float(np.max(np.abs(np.diag(d)))))
            pair = max(pair, abs(d[0, 1] - d[2, 3]), abs(d[0, 2] - d[1, 3]),
                       abs(d[1, 0] - d[3, 2]), abs(d[2, 0] - d[3, 1]))
    ok = corner <= 1e-12 and pair <= 1e-12 and t.elapsed < 1.0
    record_criterion(6, ok, f"corner residual {corner:.2e}, pair residual {pair:.2e} (<= 1e-12), "
                            f"{t.elapsed:.3f} s (< 1 s)")
    assert ok


def test_criterion_7_exponential_oracle(record_criterion):
    rng = np.random.default_rng(707)
    mats = []
    for _ in range(100):
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = 0.5 * (a + a.conj().T)
        mats.append(h * rng.uniform(0.0, 10.0) / np.linalg.norm(h, 2))
    with Timer() as t:
        worst = max(float(np.max(np.abs(evolution_operator(h, CFG) - evolution_operator_series(h, CFG))))
                    for h in mats)
    ok = worst <= 1e-9 and t.elapsed < 2.0
    record_criterion(7, ok, f"max difference {worst:.2e} (<= 1e-9) on 100 matrices, {t.elapsed:.3f} s (< 2 s)")
    assert ok


def test_criterion_8_search(record_criterion):
    model = CouplingModel(CouplingKind.GENERAL)
    known = from_decomposition(model, reference_hamiltonian(CFG))
    start = known + 0.05 * np.random.default_rng(0).choice([-1.0, 1.0], size=model.n_params)
    with Timer() as t:
        result = multi_start_search(model, CFG, n_restarts=32, seed=0)
        local = nelder_mead(make_objective(model, CFG), start)
    restricted_ok = True
    for kind in (CouplingKind.ISING, CouplingKind.XY):
        m = CouplingModel(kind)
        a = multi_start_search(m, CFG, n_restarts=4, seed=1)
        b = multi_start_search(m, CFG, n_restarts=4, seed=1)
        restricted_ok &= a.to_text() == b.to_text() and 0.0 <= a.best_fidelity <= 1.0
    ok = result.best_fidelity >= 1 - 1e-4 and local.fun <= 1e-6 and restricted_ok and t.elapsed < 60.0
    record_criterion(8, ok, f"best fidelity {result.best_fidelity:.9f} (>= 1-1e-4), local objective "
                            f"{local.fun:.2e} (<= 1e-6), restricted runs deterministic={restricted_ok}, "
                            f"{t.elapsed:.1f} s (< 60 s)")
    assert ok


def test_criterion_9_round_trips(record_criterion, tmp_path, capsys):
    rng = np.random.default_rng(909)
    with Timer() as t:
        mismatches, files = 0, 0
        for a, b, g in rng.uniform(0.0, 2 * math.pi, size=(20, 3)):
            d = xor_hamiltonian(a, b, g, CFG)
            buf = io.StringIO()
            write_pauli_ham(d, buf)
            back = parse_pauli_ham(buf.getvalue())
            mismatches += {k: seventeen(v) for k, v in back.items()} != {k: seventeen(v) for k, v in d.items()}
            u = evolution_operator(reconstruct(d), CFG)
            for m in (u, reconstruct(d)):
                buf = io.StringIO()
                write_cmatrix(m, buf)
                r = parse_cmatrix(buf.getvalue())
                mismatches += not (np.array_equal(r.real, m.real) and np.array_equal(r.imag, m.imag))
            files += 3
    # files written by the command-line tool: every numeric token must survive a re-parse
    ham, mat = tmp_path / "h.ham", tmp_path / "u.cm"
    main(["xor-ham", "--alpha", "0.3", "--beta", "1.7", "--gamma", "4.1", "--out", str(ham)])
    main(["evolve", "--ham", str(ham), "--out", str(mat)])
    capsys.readouterr()
    text = ham.read_text()
    parsed = parse_pauli_ham(text)
    tokens = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    cli_mismatch = sum(tok != seventeen(parsed[label]) for label, tok in tokens)
    text = mat.read_text()
    m = parse_cmatrix(text)
    entries = [e for line in text.splitlines()[2:] for e in line.split()]
    cli_mismatch += sum(e != f"{seventeen(z.real)},{seventeen(z.imag)}" for e, z in zip(entries, m.ravel()))
    mismatches += cli_mismatch
    files += 2
    ok = mismatches == 0 and t.elapsed < 1.0
    record_criterion(9, ok, f"{mismatches} mismatches in {files} files, {t.elapsed:.3f} s (< 1 s)")
    assert ok
