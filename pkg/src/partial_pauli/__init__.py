"""Expectation estimation of arbitrary matrices with partial Pauli measurements."""

from .baselines import PauliString, PauliTerm, naive_circuit_count, pauli_decompose, pauli_reconstruct, qwc_group
from .circuit import Circuit, Gate, imag_measurement_circuit, real_measurement_circuit, synthesize_from_transform
from .estimator import EstimationReport, EstimationRequest, embed_two_state, estimate, estimate_same_state
from .gf2 import Gf2Transform, build_transform, image_pair, pivot_bit, xor_diff
from .grouping import (
    EntryGroup,
    MeasurementPlan,
    SparseMatrix,
    bandwidth,
    circuit_count_upper_bound,
    group_entries,
    plan_vs_bound,
)
from .sim import OutcomeDistribution, ShotCounts, StateVector, probabilities, run, sample

__version__ = "0.1.0"
