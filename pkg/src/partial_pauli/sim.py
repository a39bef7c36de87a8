"""Dense statevector simulator for the gate IR, with exact and sampled readout.

Amplitude ``i`` belongs to the basis state whose bit ``q`` is the value of
qubit ``q`` (qubit 0 is the least-significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate

NORM_TOL = 1e-9
RNG_NAME = "numpy.random.Generator(PCG64)"

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class NormalizationError(ValueError):
    """A state vector or distribution is not normalized within tolerance."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.n < 1 or len(amps) != 1 << self.n:
            raise ValueError(f"expected {1 << max(self.n, 0)} amplitudes for n={self.n}, got {len(amps)}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormalizationError(f"state norm^2 is {norm!r}, expected 1 within {NORM_TOL}")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_amplitudes(cls, amps, normalize: bool = False) -> StateVector:
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        n = len(amps).bit_length() - 1
        if len(amps) != 1 << n or n < 1:
            raise ValueError(f"amplitude count {len(amps)} is not a power of two >= 2")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    @classmethod
    def basis(cls, n: int, index: int = 0) -> StateVector:
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> StateVector:
        """Haar-random state from a complex Gaussian vector."""
        dim = 1 << n
        amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return cls(n, amps / np.linalg.norm(amps))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    probabilities: np.ndarray

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=np.float64).reshape(-1)
        if np.any(p < -NORM_TOL):
            raise ValueError("probabilities must be non-negative")
        if abs(p.sum() - 1.0) > NORM_TOL:
            raise NormalizationError(f"probabilities sum to {p.sum()!r}")
        object.__setattr__(self, "probabilities", _frozen(np.clip(p, 0.0, None)))

    def __len__(self):
        return len(self.probabilities)

    @property
    def frequencies(self) -> np.ndarray:
        return self.probabilities


@dataclass(frozen=True, eq=False)
class ShotCounts:
    """Sampled outcome counts; ``counts[i]`` is the number of times index ``i`` was seen."""

    counts: np.ndarray
    shots: int

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64).reshape(-1)
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        if int(c.sum()) != self.shots:
            raise ValueError(f"counts sum to {int(c.sum())}, expected {self.shots} shots")
        object.__setattr__(self, "counts", _frozen(c))

    def __len__(self):
        return len(self.counts)

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots

    def as_dict(self) -> dict[int, int]:
        return {int(i): int(self.counts[i]) for i in np.flatnonzero(self.counts)}


def _apply_inplace(amps: np.ndarray, n: int, gate: Gate) -> np.ndarray:
    """Apply ``gate`` to ``amps`` (length ``2**n``). May return a new buffer."""
    if max(gate.qubits) >= n:
        raise ValueError(f"gate {gate} out of range for {n} qubits")
    name = gate.name
    if name == "CNOT":
        c, t = gate.qubits
        idx = np.arange(1 << n)
        return amps[idx ^ (((idx >> c) & 1) << t)]

    q = gate.qubits[0]
    # axis 1 is qubit q; C-order reshape keeps higher bits on axis 0
    v = amps.reshape(1 << (n - q - 1), 2, 1 << q)
    if name == "X":
        v[:, [0, 1], :] = v[:, [1, 0], :]
    elif name == "H":
        a0 = v[:, 0, :].copy()
        a1 = v[:, 1, :]
        v[:, 0, :] = (a0 + a1) * _INV_SQRT2
        v[:, 1, :] = (a0 - a1) * _INV_SQRT2
    elif name == "S":
        v[:, 1, :] *= 1j
    elif name == "SDG":
        v[:, 1, :] *= -1j
    return amps


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    out = _apply_inplace(state.amplitudes.copy(), state.n, gate)
    return StateVector(state.n, out)


def run(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply the circuit's gates in order to ``state``."""
    if circuit.width != state.n:
        raise ValueError(f"circuit width {circuit.width} does not match state with {state.n} qubits")
    amps = state.amplitudes.copy()
    for g in circuit.gates:
        amps = _apply_inplace(amps, state.n, g)
    return StateVector(state.n, amps)


def probabilities(state: StateVector) -> OutcomeDistribution:
    a = state.amplitudes
    p = a.real**2 + a.imag**2
    # renormalize away the <=1e-9 drift admitted by StateVector
    return OutcomeDistribution(p / p.sum())


def sample(dist: OutcomeDistribution, shots: int, seed: int) -> ShotCounts:
    """Seeded multinomial draw of ``shots`` outcomes from ``dist``."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, dist.probabilities)
    return ShotCounts(counts, shots)


def derive_seed(master: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for a circuit identified by ``keys``."""
    ss = np.random.SeedSequence([master, *keys])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


__all__ = [
    "NormalizationError",
    "OutcomeDistribution",
    "RNG_NAME",
    "ShotCounts",
    "StateVector",
    "apply_gate",
    "derive_seed",
    "probabilities",
    "run",
    "sample",
]
