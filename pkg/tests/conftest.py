import numpy as np
import pytest

from partial_pauli.grouping import SparseMatrix

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def acceptance_log():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_dense(kind: str, n: int, rng: np.random.Generator) -> np.ndarray:
    """Dense random matrix of one of the four test classes."""
    dim = 1 << n
    g = rng.normal(size=(dim, dim))
    if kind == "real_symmetric":
        return g + g.T
    if kind == "real_general":
        return g
    h = g + 1j * rng.normal(size=(dim, dim))
    if kind == "complex_hermitian":
        return h + h.conj().T
    if kind == "complex_general":
        return h
    raise ValueError(kind)


def random_sparse(kind: str, n: int, rng: np.random.Generator, density: float = 0.3) -> np.ndarray:
    """Like :func:`random_dense` but with a random support, preserving the class symmetry."""
    a = random_dense(kind, n, rng)
    mask = rng.random(a.shape) < density
    mask = mask | mask.T
    return np.where(mask, a, 0)


def as_sparse(a) -> SparseMatrix:
    return SparseMatrix.from_dense(a)


def dense_oracle(a: np.ndarray, phi: np.ndarray, psi: np.ndarray) -> complex:
    return complex(np.vdot(phi, a @ psi))
