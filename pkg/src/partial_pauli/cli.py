"""Command-line front end.

Exit codes: 0 on success, 1 for input errors (bad files or arguments), 2 when
a state vector fails normalization.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .baselines import MAX_DECOMPOSE_QUBITS, naive_circuit_count, pauli_decompose
from .estimator import EstimationRequest, estimate
from .grouping import bandwidth, circuit_count_upper_bound, group_entries
from .io import load_matrix, load_state
from .sim import NormalizationError
from .sweep import FAMILIES, rows_to_csv, run_sweep

log = logging.getLogger("partial_pauli")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    matrix: Path
    phi: Path
    psi: Path | None = None
    shots: int | None = None
    seed: int = 0
    out: Path | None = None

    @property
    def mode(self) -> str:
        return "exact" if self.shots is None else "shots"


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run_estimate(config: RunConfig) -> dict:
    m = load_matrix(config.matrix)
    phi = load_state(config.phi)
    psi = load_state(config.psi) if config.psi is not None else None
    report = estimate(EstimationRequest(m, phi, psi, shots=config.shots, seed=config.seed))
    doc = report.to_dict()
    _emit(json.dumps(doc, indent=2) + "\n", config.out)
    return doc


def run_counts(matrix: Path, out: Path | None = None) -> dict:
    m = load_matrix(matrix)
    plan = group_entries(m)
    w = bandwidth(m)
    doc = {
        "n": m.n,
        "nnz": m.nnz,
        "bandwidth": w,
        "has_diagonal": plan.has_diagonal,
        "groups": len(plan.groups),
        "ppm_circuits": plan.circuit_count,
        "bound": circuit_count_upper_bound(m.n, w),
        "naive_circuits": (
            naive_circuit_count(pauli_decompose(m)) if m.n <= MAX_DECOMPOSE_QUBITS else None
        ),
    }
    _emit(json.dumps(doc, indent=2) + "\n", out)
    return doc


def run_decompose(matrix: Path, out: Path | None = None) -> None:
    terms = pauli_decompose(load_matrix(matrix))
    lines = ["string,re,im\n"]
    lines += [f"{t.string},{t.coeff.real!r},{t.coeff.imag!r}\n" for t in terms]
    _emit("".join(lines), out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partial-pauli",
        description="Estimate <phi|M|psi> with partial Pauli measurements on a statevector simulator.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate <phi|M|psi> and write a JSON report")
    p.add_argument("--matrix", type=Path, required=True, help="MatrixMarket coordinate file")
    p.add_argument("--phi", type=Path, required=True, help="state file (index,re,im per line)")
    p.add_argument("--psi", type=Path, help="second state; defaults to phi")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--shots", type=int, help="shots per circuit")
    mode.add_argument("--exact", action="store_true", help="use exact outcome probabilities (default)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("counts", help="circuit counts and bandwidth bound for a matrix")
    p.add_argument("--matrix", type=Path, required=True)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("sweep", help="CSV table of circuit counts over a range of qubit counts")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--bandwidth", type=int, help="bandwidth for the band family")
    p.add_argument("--two-state", action="store_true", help="count for phi != psi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("decompose", help="Pauli decomposition as CSV (string,re,im)")
    p.add_argument("--matrix", type=Path, required=True)
    p.add_argument("--out", type=Path)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "estimate":
            if args.shots is not None and args.shots < 1:
                raise ValueError("--shots must be >= 1")
            run_estimate(RunConfig(args.matrix, args.phi, args.psi, args.shots, args.seed, args.out))
        elif args.command == "counts":
            run_counts(args.matrix, args.out)
        elif args.command == "sweep":
            if args.family == "band" and args.bandwidth is None:
                raise ValueError("--bandwidth is required for the band family")
            rows = run_sweep(args.family, args.n_min, args.n_max, args.bandwidth, args.two_state, args.seed)
            _emit(rows_to_csv(rows), args.out)
        elif args.command == "decompose":
            run_decompose(args.matrix, args.out)
    except NormalizationError as exc:
        log.error("%s", exc)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
