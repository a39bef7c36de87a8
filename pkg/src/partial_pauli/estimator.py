"""Estimate ``<phi|M|psi>`` from partial Pauli measurement circuits.

For ``phi == psi`` the diagonal of ``M`` is read from one plain
computational-basis measurement, and every XOR group ``d`` needs at most two
circuits (real and imaginary part). For ``phi != psi`` the problem is first
embedded into a same-state problem on one extra (most significant) qubit.

Each circuit's outcome distribution (exact, or estimated from shots) is
contracted with a weight vector over outcomes, so the estimate is a plain
sum of ``weights . frequencies`` over circuits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import sim
from .circuit import Circuit, diagonal_circuit, imag_measurement_circuit, real_measurement_circuit
from .grouping import EntryGroup, MeasurementPlan, SparseMatrix, group_entries
from .sim import OutcomeDistribution, ShotCounts, StateVector

SAME_STATE_TOL = 1e-12

# part ids used for seed derivation and reporting
DIAG, REAL, IMAG = 0, 1, 2
PART_NAMES = {DIAG: "diag", REAL: "re", IMAG: "im"}


@dataclass(frozen=True)
class EstimationRequest:
    """Inputs for :func:`estimate`. ``shots=None`` selects exact mode."""

    matrix: SparseMatrix
    phi: StateVector
    psi: StateVector | None = None
    shots: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.phi.n != self.matrix.n or (self.psi is not None and self.psi.n != self.matrix.n):
            raise ValueError("state widths must equal the matrix qubit count")
        if self.shots is not None and self.shots < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots}")

    @property
    def mode(self) -> str:
        return "exact" if self.shots is None else "shots"


@dataclass
class GroupReport:
    d: int
    k: int
    parts: tuple[str, ...]
    gate_count: int
    p: np.ndarray
    re: np.ndarray | None = None
    im: np.ndarray | None = None
    contributions: np.ndarray | None = None


@dataclass
class EstimationReport:
    value: complex
    circuits_used: int
    shots_total: int
    per_group: list[GroupReport] = field(default_factory=list)
    embedding_used: bool = False
    diagonal_value: complex = 0j
    std_error: complex = 0j
    mode: str = "exact"
    rng: str | None = None

    def to_dict(self) -> dict:
        return {
            "value_re": float(self.value.real),
            "value_im": float(self.value.imag),
            "circuits_used": self.circuits_used,
            "shots_total": self.shots_total,
            "embedding_used": self.embedding_used,
            "mode": self.mode,
            "std_error_re": float(self.std_error.real),
            "std_error_im": float(self.std_error.imag),
            "rng": self.rng,
            "per_group": [
                {"d": g.d, "k": g.k, "parts": list(g.parts), "gate_count": g.gate_count}
                for g in self.per_group
            ],
        }


def _freqs(readout: OutcomeDistribution | ShotCounts) -> np.ndarray:
    return readout.frequencies


def diagonal_term(m: SparseMatrix, readout: OutcomeDistribution | ShotCounts) -> complex:
    """``sum_i M[i, i] * P(i)``."""
    f = _freqs(readout)
    on = m.rows == m.cols
    return complex(np.sum(m.values[on] * f[m.rows[on]]))


def pair_values(readout, p: np.ndarray, k: int) -> np.ndarray:
    """Vectorized :func:`pair_value`: ``(P(p) - P(p ^ 2**k)) / 2`` for each ``p``."""
    p = np.asarray(p, dtype=np.int64)
    if np.any((p >> k) & 1):
        raise ValueError(f"representative indices must have bit {k} clear")
    f = _freqs(readout)
    return 0.5 * (f[p] - f[p | (1 << k)])


def pair_value(readout, p: int, k: int) -> float:
    """Half the probability difference between outcomes ``p`` and ``p`` with bit ``k`` set.

    After the real circuit this is ``Re z`` and after the imaginary circuit
    ``Im z`` for ``z = <phi|p><p^d|phi>``.
    """
    return float(pair_values(readout, np.array([p]), k)[0])


def _readout(circuit: Circuit, phi: StateVector, shots: int | None, seed: int):
    dist = sim.probabilities(sim.run(circuit, phi))
    if shots is None:
        return dist
    return sim.sample(dist, shots, seed)


def _variance(weights: np.ndarray, readout) -> complex:
    """Plug-in variance (real part, imag part packed as complex) of ``weights . freqs``."""
    if not isinstance(readout, ShotCounts):
        return 0j
    f = readout.frequencies
    out = []
    for w in (weights.real, weights.imag):
        mean = np.dot(w, f)
        out.append(max(np.dot(w * w, f) - mean * mean, 0.0) / readout.shots)
    return complex(out[0], out[1])


def estimate_same_state(
    m: SparseMatrix,
    phi: StateVector,
    shots: int | None = None,
    seed: int = 0,
    plan: MeasurementPlan | None = None,
) -> EstimationReport:
    """Estimate ``<phi|M|phi>``.

    Args:
        m: the matrix.
        phi: the state; its width must match ``m``.
        shots: shots per circuit, or ``None`` for exact outcome probabilities.
        seed: master seed; each circuit samples with a child seed derived from
            ``(seed, d, part)`` so results do not depend on execution order.
        plan: a precomputed :func:`group_entries` plan for ``m``.

    Returns:
        An :class:`EstimationReport`. ``std_error`` is a plug-in estimate from
        the sampled counts (zero in exact mode).
    """
    if phi.n != m.n:
        raise ValueError(f"state has {phi.n} qubits, matrix has {m.n}")
    if plan is None:
        plan = group_entries(m)
    n = m.n
    mode = "exact" if shots is None else "shots"
    report = EstimationReport(
        value=0j, circuits_used=0, shots_total=0, mode=mode,
        rng=None if shots is None else sim.RNG_NAME,
    )
    total = 0j
    var = 0j

    def account():
        report.circuits_used += 1
        if shots is not None:
            report.shots_total += shots

    if plan.has_diagonal:
        readout = _readout(diagonal_circuit(n), phi, shots, sim.derive_seed(seed, 0, DIAG))
        account()
        weights = np.zeros(1 << n, dtype=np.complex128)
        weights[plan.diag_index] = plan.diag_values
        report.diagonal_value = complex(np.dot(weights, _freqs(readout)))
        total += report.diagonal_value
        var += _variance(weights, readout)

    for g in plan.groups:
        value, gvar, greport = _run_group(g, phi, shots, seed, account)
        total += value
        var += gvar
        report.per_group.append(greport)

    report.value = complex(total)
    report.std_error = complex(np.sqrt(var.real), np.sqrt(var.imag))
    return report


def _run_group(g: EntryGroup, phi: StateVector, shots, seed, account):
    n = phi.n
    q = g.p | (1 << g.k)
    contrib = np.zeros(len(g.p), dtype=np.complex128)
    var = 0j
    parts = []
    gate_count = 0
    re = im = None
    for part, needed, builder, coeff in (
        (REAL, g.needs_real, real_measurement_circuit, g.coeff_plus),
        (IMAG, g.needs_imag, imag_measurement_circuit, 1j * g.coeff_minus),
    ):
        if not needed:
            continue
        circuit, k = builder(n, g.d, g.k)
        readout = _readout(circuit, phi, shots, sim.derive_seed(seed, g.d, part))
        account()
        vals = pair_values(readout, g.p, k)
        if part == REAL:
            re = vals
        else:
            im = vals
        contrib += coeff * vals
        if shots is not None:
            weights = np.zeros(1 << n, dtype=np.complex128)
            weights[g.p] = 0.5 * coeff
            weights[q] = -0.5 * coeff
            var += _variance(weights, readout)
        parts.append(PART_NAMES[part])
        gate_count += len(circuit)
    greport = GroupReport(
        d=g.d, k=g.k, parts=tuple(parts), gate_count=gate_count, p=g.p,
        re=re, im=im, contributions=contrib,
    )
    return complex(contrib.sum()), var, greport


def embed_matrix(m: SparseMatrix) -> SparseMatrix:
    """The ``n + 1`` qubit matrix with ``2 M`` in its top-right block."""
    return SparseMatrix(m.n + 1, m.rows, m.cols + m.dim, 2.0 * m.values)


def embed_two_state(m: SparseMatrix, phi: StateVector, psi: StateVector) -> tuple[SparseMatrix, StateVector]:
    """Same-state form of ``<phi|M|psi>`` on ``n + 1`` qubits.

    The extra qubit is the most significant one. The embedded matrix holds
    ``2 M`` in its top-right block and the joined state is
    ``(|0>|phi> + |1>|psi>) / sqrt(2)``.
    """
    if not (m.n == phi.n == psi.n):
        raise ValueError("matrix and state widths must agree")
    big = embed_matrix(m)
    joined = np.concatenate([phi.amplitudes, psi.amplitudes]) / np.sqrt(2.0)
    return big, StateVector(m.n + 1, joined)


def same_state(phi: StateVector, psi: StateVector | None) -> bool:
    if psi is None:
        return True
    return bool(np.max(np.abs(phi.amplitudes - psi.amplitudes)) <= SAME_STATE_TOL)


def estimate(request: EstimationRequest) -> EstimationReport:
    """Estimate ``<phi|M|psi>``, embedding into ``n + 1`` qubits when ``phi != psi``."""
    m, phi, psi = request.matrix, request.phi, request.psi
    if same_state(phi, psi):
        return estimate_same_state(m, phi, request.shots, request.seed)
    big, joined = embed_two_state(m, phi, psi)
    report = estimate_same_state(big, joined, request.shots, request.seed)
    report.embedding_used = True
    return report


__all__ = [
    "EstimationReport",
    "EstimationRequest",
    "GroupReport",
    "diagonal_term",
    "embed_matrix",
    "embed_two_state",
    "estimate",
    "estimate_same_state",
    "pair_value",
    "pair_values",
]
