"""Smoke tests for the python bindings.

Run via ctest (PYTHONPATH points at the cmake-built package) or against an
installed wheel.
"""

import math
import os

import numpy as np
import pytest

import naqs


def test_bell_statevector():
    c = naqs.Circuit(2, "bell")
    c.add("h", [0]).add("cx", [0, 1])
    amps = naqs.run_statevector(c)
    r = 1.0 / math.sqrt(2.0)
    assert np.allclose(amps, [r, 0.0, 0.0, r])


def test_qasm_parse_and_emit():
    c = naqs.parse_qasm(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[2];\ncreg c[2];\nh q[0];\ncx q[0],q[1];\nmeasure q -> c;\n"
    )
    assert c.num_qubits == 2
    assert len(c) == 4
    text = naqs.emit_qasm(c)
    back = naqs.parse_qasm(text)
    assert back.ops() == c.ops()


def test_parse_error_is_raised():
    with pytest.raises(naqs.NaqsError, match="unsupported statement"):
        naqs.parse_qasm("OPENQASM 2.0;\nqreg q[1];\nreset q[0];\n")


def test_sampling_is_deterministic():
    c = naqs.Circuit(2)
    c.add("h", [0]).add("cx", [0, 1])
    a = naqs.sample(c, shots=1000, seed=7)
    b = naqs.sample(c, shots=1000, seed=7)
    assert a == b
    assert sum(a.values()) == 1000
    assert set(a) <= {"00", "11"}


def test_depolarizing_expectation():
    model = naqs.load_calibration(
        """{
          "qubits": [{"t1_us": 1.0, "t2_us": 1.0, "readout_p01": 0.0, "readout_p10": 0.0}],
          "gates": [{"name": "x", "qubits": [0], "error": 0.15, "duration_ns": 0.0}]
        }"""
    )
    c = naqs.Circuit(1)
    c.add("x", [0])
    z = naqs.density_expectation(c, "Z", model)
    assert z == pytest.approx(-(1.0 - 4.0 * 0.15 / 3.0), abs=1e-12)


def test_density_matches_outer_product():
    c = naqs.Circuit(2)
    c.add("h", [0]).add("cx", [0, 1]).add("rz", [1], [0.3])
    rho = naqs.run_density(c)
    psi = naqs.run_statevector(c)
    assert np.allclose(rho, np.outer(psi, psi.conj()), atol=1e-12)


def test_tfim_sweep_starts_at_one():
    rows = naqs.tfim_sweep(n=2, t_max=0.2, dt=0.1, steps_per_unit=20)
    assert len(rows) == 3
    t0 = rows[0]
    assert t0[0] == 0.0
    assert t0[1] == pytest.approx(1.0)
    assert t0[2] == pytest.approx(1.0)
    assert t0[3] is None


def test_bundled_calibration_loads():
    data_dir = os.environ.get("NAQS_DATA_DIR")
    if not data_dir:
        pytest.skip("NAQS_DATA_DIR not set")
    model = naqs.load_calibration_file(os.path.join(data_dir, "calibration", "example_5q.json"))
    assert model.num_qubits == 5
    assert model.warnings == []


def test_vqe_two_spins():
    result = naqs.run_vqe(n=2, coupling=1.0, field=0.0, layers=1, max_evals=150, seed=5)
    assert result.best_energy <= -0.999
    assert result.iterations <= 150
    assert min(result.trace) == result.best_energy


def test_minimize_quadratic():
    result = naqs.minimize(lambda x: (x[0] - 2.5) ** 2, [0.0], max_evals=200)
    assert abs(result.best_params[0] - 2.5) < 1e-4


def test_bench_directory():
    data_dir = os.environ.get("NAQS_DATA_DIR")
    if not data_dir:
        pytest.skip("NAQS_DATA_DIR not set")
    rows = naqs.bench_directory(os.path.join(data_dir, "qasm", "scaling"), repeat=1)
    assert len(rows) == 7
    assert all(not r["skipped"] for r in rows)
    assert rows[0]["name"] == "ghz_n18"
    assert rows[0]["qubits"] == 18


def test_ground_energy_value():
    e0 = naqs.tfim_ground_energy(4, coupling=1.0, field=1.0)
    assert e0 == pytest.approx(-4.7587704831436355, abs=1e-10)
