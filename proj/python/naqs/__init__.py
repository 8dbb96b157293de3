"""Noise-aware quantum circuit simulation engine.

The compiled extension carries the implementation; this package simply
re-exports its public surface.
"""

from ._core import (
    Circuit,
    bench_directory,
    DeviceNoiseModel,
    GateKind,
    MinimizeResult,
    NaqsError,
    density_expectation,
    emit_qasm,
    expectation,
    load_calibration,
    load_calibration_file,
    minimize,
    parse_qasm,
    parse_qasm_file,
    run_density,
    run_statevector,
    run_vqe,
    sample,
    tfim_ground_energy,
    tfim_sweep,
)

__all__ = [
    "Circuit",
    "bench_directory",
    "DeviceNoiseModel",
    "GateKind",
    "MinimizeResult",
    "NaqsError",
    "density_expectation",
    "emit_qasm",
    "expectation",
    "load_calibration",
    "load_calibration_file",
    "minimize",
    "parse_qasm",
    "parse_qasm_file",
    "run_density",
    "run_statevector",
    "run_vqe",
    "sample",
    "tfim_ground_energy",
    "tfim_sweep",
]

__version__ = "0.1.0"
