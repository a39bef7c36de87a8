"""Gate-level circuit IR and synthesis of the per-group measurement circuits.

Every measurement circuit is a CNOT network realizing a :class:`Gf2Transform`
followed by a one-qubit basis change on the pivot qubit: ``H`` for the real
part of a group, ``SDG`` then ``H`` for the imaginary part. All qubits are
measured in the computational basis afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Transform, build_transform

GATE_ARITY = {"X": 1, "H": 1, "S": 1, "SDG": 1, "CNOT": 2}


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.name not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.qubits) != GATE_ARITY[self.name]:
            raise ValueError(f"{self.name} takes {GATE_ARITY[self.name]} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if self.name == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")

    def __str__(self):
        return " ".join([self.name, *map(str, self.qubits)])


def X(q: int) -> Gate:
    return Gate("X", (q,))


def H(q: int) -> Gate:
    return Gate("H", (q,))


def S(q: int) -> Gate:
    return Gate("S", (q,))


def Sdg(q: int) -> Gate:
    return Gate("SDG", (q,))


def CNOT(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on ``width`` qubits, measured in the computational basis."""

    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.width:
                raise ValueError(f"gate {g} out of range for width {self.width}")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def count(self, name: str) -> int:
        return sum(g.name == name for g in self.gates)

    @property
    def cnot_count(self) -> int:
        return self.count("CNOT")

    def to_text(self) -> str:
        """One gate per line, e.g. ``CNOT 0 1``; an empty circuit is an empty string."""
        return "".join(f"{g}\n" for g in self.gates)

    @classmethod
    def from_text(cls, width: int, text: str) -> Circuit:
        gates = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            name, *qs = line.split()
            try:
                gates.append(Gate(name.upper(), tuple(int(q) for q in qs)))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(width, tuple(gates))


def synthesize_from_transform(t: Gf2Transform) -> Circuit:
    """CNOT network whose action on basis indices equals ``t.apply``.

    Scans the rows of ``T``; an off-diagonal 1 at ``T[i, j]`` becomes
    ``CNOT(j -> i)``. All CNOTs share the pivot as control and commute, so
    they come out in ascending target order.
    """
    gates = []
    for i, mask in enumerate(t.rows):
        off = mask & ~(1 << i)
        j = 0
        while off:
            if off & 1:
                gates.append(CNOT(j, i))
            off >>= 1
            j += 1
    return Circuit(t.n, tuple(gates))


def real_measurement_circuit(n: int, d: int, pivot: int | None = None) -> tuple[Circuit, int]:
    t = build_transform(n, d, pivot)
    net = synthesize_from_transform(t)
    return Circuit(n, net.gates + (H(t.pivot),)), t.pivot


def imag_measurement_circuit(n: int, d: int, pivot: int | None = None) -> tuple[Circuit, int]:
    # S-dagger (not S) so the pivot-bit probability difference yields +Im.
    t = build_transform(n, d, pivot)
    net = synthesize_from_transform(t)
    return Circuit(n, net.gates + (Sdg(t.pivot), H(t.pivot))), t.pivot


def diagonal_circuit(n: int) -> Circuit:
    return Circuit(n, ())


__all__ = [
    "CNOT",
    "Circuit",
    "Gate",
    "H",
    "S",
    "Sdg",
    "X",
    "diagonal_circuit",
    "imag_measurement_circuit",
    "real_measurement_circuit",
    "synthesize_from_transform",
]
