"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import twoq


def test_version():
    assert twoq.__version__


def test_bell_state_measures():
    bell = twoq.make_state("pure", alpha=math.pi / 4)
    assert bell.shape == (4, 4)
    assert bell.dtype == np.complex128
    assert abs(bell[0, 0] - 0.5) < 1e-12
    assert abs(twoq.von_neumann_entropy(bell)) < 1e-10
    assert abs(twoq.tangle(bell) - 1.0) < 1e-10

    budget = twoq.info_budget(bell)
    assert abs(budget["i_corr"] - 2.0) < 1e-10
    assert abs(budget["i_total"] - 2.0) < 1e-10
    assert budget["measure"] == "vn"

    ledger = twoq.triality_ledger(bell, "a")
    assert abs(ledger["lhs_triality"] - 1.0) < 1e-9


def test_white_noise_channel_hits_werner():
    bell_singlet = twoq.make_state("d", gamma=0.0)
    noisy = twoq.apply_channel(bell_singlet, "global_white_noise", strength=0.4)
    werner = twoq.make_state("werner", p=0.6)
    assert np.max(np.abs(noisy - werner)) < 1e-12


def test_marginals_and_bloch():
    state = twoq.make_state("as1", p=0.5)
    marginal = twoq.partial_trace(state, "a")
    x, y, z = twoq.bloch(marginal)
    assert abs(z - 0.5) < 1e-12
    v, p = twoq.visibility_predictability(marginal)
    assert abs(p - 0.5) < 1e-12 and v < 1e-12


def test_linear_measure_negativity():
    budget = twoq.info_budget(twoq.make_state("as1", p=0.0), measure="linear")
    assert abs(budget["i_corr"] + 1.0 / 3.0) < 1e-10


def test_random_states_deterministic_and_valid():
    a = twoq.sample_random_state(3, seed=7)
    b = twoq.sample_random_state(3, seed=7)
    assert np.array_equal(a, b)
    report = twoq.validate(a)
    assert report["passed"]
    assert abs(twoq.purity(twoq.sample_random_state(1, seed=1)) - 1.0) < 1e-10


def test_eigen_and_kron():
    sz = np.diag([1.0, -1.0]).astype(complex)
    values, vectors = twoq.hermitian_eigen(twoq.kron(sz, sz))
    assert np.allclose(values, [-1.0, -1.0, 1.0, 1.0])
    assert vectors.shape == (4, 4)


def test_tomography_round_trip():
    truth = twoq.make_state("werner", p=0.8)
    records = twoq.simulate_counts(truth, shots=20000, seed=3)
    assert len(records) == 9
    rho_hat = twoq.reconstruct(records)
    assert twoq.validate(rho_hat)["passed"]
    assert twoq.fidelity(rho_hat, truth) > 0.99

    bars = twoq.error_bars(truth, shots=10000, resamples=5, seed=4)
    assert bars["resamples"] == 5
    assert bars["tangle"][1] >= 0.0


def test_frontier_endpoint():
    point = twoq.max_tangle_at_entropy(0.0, restarts=2, seed=0)
    assert point["converged"]
    assert abs(point["max_tangle"] - 1.0) < 1e-6
    assert twoq.validate(point["argmax_state"])["passed"]


def test_state_json_round_trip():
    state = twoq.make_state("mems2", p=0.8)
    text = twoq.state_to_json(state)
    assert '"dim"' in text and '"re"' in text and '"im"' in text
    back = twoq.state_from_json(text)
    assert np.max(np.abs(back - state)) < 1e-15


def test_errors_surface_as_python_exceptions():
    with pytest.raises(twoq.ParamOutOfRange):
        twoq.make_state("mems2", p=0.1)
    with pytest.raises(twoq.BadShots):
        twoq.simulate_counts(twoq.make_state("werner", p=0.5), shots=0, seed=0)
    with pytest.raises(twoq.InvalidStateError):
        twoq.von_neumann_entropy(np.diag([1.5, -0.5, 0, 0]).astype(complex))
