"""
Command-line entry point: ``xorgate <command> [flags]``.

Exit status is 0 on success or PASS, 1 when a verification fails, and 2 on
usage or file-format errors. Δt defaults to 1 and ħ is fixed at 1.
"""

from __future__ import annotations

import argparse
import math
import sys
from contextlib import contextmanager

from . import pauli
from .errors import XorGateError
from .gate_verify import DEFAULT_TOL, verify_hamiltonian
from .ham_search import CouplingKind, CouplingModel, NelderMeadOptions, SearchOptions, multi_start_search
from .tensor_core import EvolutionConfig, evolution_operator, format_cmatrix, parse_cmatrix, unitary_log_min_spread
from .xor_family import xor_hamiltonian

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _cfg(args) -> EvolutionConfig:
    try:
        return EvolutionConfig(delta_t=args.dt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_xor_ham(args) -> int:
    angles = [args.alpha, args.beta, args.gamma]
    if args.degrees:
        angles = [math.radians(a) for a in angles]
    d = xor_hamiltonian(*angles, cfg=_cfg(args))
    comment = f"alpha={angles[0]!r} beta={angles[1]!r} gamma={angles[2]!r} dt={args.dt!r} (radians, hbar=1)"
    text = pauli.format_pauli_ham(d, comments=[comment])
    if args.out is None:
        sys.stdout.write(text)
    else:
        with _output(args.out) as fh:
            fh.write(text)
        print(pauli.term_table(d))
    return EXIT_OK


def cmd_verify(args) -> int:
    h = pauli.parse_pauli_ham(_read(args.ham))
    report = verify_hamiltonian(h, _cfg(args), tol=args.tol)
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.truth_table_pass else EXIT_FAIL


def cmd_decompose(args) -> int:
    m = parse_cmatrix(_read(args.matrix))
    d = pauli.decompose(m)
    if not d.is_real():
        raise UsageError("matrix is not Hermitian; pauli-ham v1 holds real coefficients only")
    with _output(args.out) as fh:
        fh.write(pauli.format_pauli_ham(d))
    return EXIT_OK


def cmd_evolve(args) -> int:
    h = pauli.parse_pauli_ham(_read(args.ham))
    u = evolution_operator(pauli.reconstruct(h), _cfg(args))
    with _output(args.out) as fh:
        fh.write(format_cmatrix(u))
    return EXIT_OK


def cmd_log(args) -> int:
    u = parse_cmatrix(_read(args.matrix))
    h = unitary_log_min_spread(u, _cfg(args))
    with _output(args.out) as fh:
        if args.format == "cmatrix":
            fh.write(format_cmatrix(h))
        else:
            fh.write(pauli.format_pauli_ham(pauli.decompose(h)))
    return EXIT_OK


def cmd_search(args) -> int:
    model = CouplingModel(CouplingKind(args.model), include_fields=args.fields)
    options = SearchOptions(strategy=args.strategy, nelder_mead=NelderMeadOptions(max_evals=args.max_evals))
    result = multi_start_search(model, _cfg(args), n_restarts=args.restarts, seed=args.seed, options=options)
    sys.stdout.write(result.to_text())
    if args.out is not None:
        d = result.decomposition().scaled(_cfg(args).energy_unit)
        with _output(args.out) as fh:
            fh.write(pauli.format_pauli_ham(d, comments=[f"best {model.name} gate, fidelity {result.best_fidelity:.9f}"]))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    results = run_all(include_search=not args.skip_search, out=sys.stdout)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xorgate", description="Three-spin XOR gate design and verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_dt(p):
        p.add_argument("--dt", type=float, default=1.0, help="gate interval Δt (ħ = 1)")
        return p

    p = with_dt(sub.add_parser("xor-ham", help="emit the two-spin XOR Hamiltonian for given angles"))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--degrees", action="store_true", help="angles are in degrees")
    p.add_argument("--out", help="pauli-ham v1 output path (default: standard output)")
    p.set_defaults(func=cmd_xor_ham)

    p = with_dt(sub.add_parser("verify", help="check that a Hamiltonian performs XOR into C"))
    p.add_argument("--ham", required=True, help="pauli-ham v1 file ('-' for stdin)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="Pauli decomposition of an 8x8 Hermitian cmatrix")
    p.add_argument("--matrix", required=True, help="cmatrix v1 file ('-' for stdin)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = with_dt(sub.add_parser("evolve", help="evolution operator exp(-iHΔt) of a Hamiltonian"))
    p.add_argument("--ham", required=True, help="pauli-ham v1 file ('-' for stdin)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = with_dt(sub.add_parser("log", help="minimal-spread Hamiltonian generating a unitary"))
    p.add_argument("--matrix", required=True, help="cmatrix v1 file ('-' for stdin)")
    p.add_argument("--format", choices=("pauli-ham", "cmatrix"), default="pauli-ham")
    p.add_argument("--out")
    p.set_defaults(func=cmd_log)

    p = with_dt(sub.add_parser("search", help="seeded multi-start coupling search"))
    p.add_argument("--model", choices=[k.value for k in CouplingKind], required=True)
    p.add_argument("--fields", action="store_true", help="allow single-spin field terms")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--strategy", choices=("quasi-newton", "nelder-mead"), default="quasi-newton")
    p.add_argument("--max-evals", type=int, default=20000)
    p.add_argument("--out", help="write the best Hamiltonian as pauli-ham v1")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("reproduce", help="run the full claim checklist")
    p.add_argument("--skip-search", action="store_true", help="omit the (slow) coupling-search claim")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, XorGateError) as exc:
        print(f"xorgate {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
