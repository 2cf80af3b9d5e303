import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicke_optics.analytic import bogoliubov_alpha
from dicke_optics.hamiltonians import ModelParams
from dicke_optics.observables import (
    ObservableRecord,
    converged_dicke_levels,
    converged_ground_observables,
    dicke_levels,
    expectation,
    ground_observables,
    initial_dicke_cutoff,
    photon_statistics,
)
from dicke_optics.operators import FockBasis, number


def test_expectation_errors():
    fock = FockBasis(3)
    with pytest.raises(ValueError):
        expectation(number(fock), np.ones(3) / math.sqrt(3))
    with pytest.raises(ValueError):
        expectation(number(fock), np.ones(4))


def test_expectation_number():
    fock = FockBasis(4)
    assert expectation(number(fock), fock.state(3)) == 3.0


def test_vacuum_statistics():
    rec = photon_statistics(FockBasis(6).state(0), FockBasis(6))
    assert rec.n_photon == 0.0
    assert rec.q is None
    assert rec.var_x1 == pytest.approx(0.25)
    assert rec.var_x2 == pytest.approx(0.25)


def test_fock_state_is_sub_poissonian_extreme():
    fock = FockBasis(10)
    rec = photon_statistics(fock.state(5), fock)
    assert rec.n_photon == 5.0
    assert rec.var_n == 0.0
    assert rec.q == -1.0
    assert rec.var_x1 == pytest.approx(5.5 / 2)
    assert rec.var_x2 == pytest.approx(5.5 / 2)


def test_coherent_state_poissonian():
    # Oracle: truncated coherent state with amplitude 1.2 has Q ~ 0.
    fock = FockBasis(60)
    amp = 1.2
    n = fock.numbers()
    logc = n * math.log(amp) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    v = np.exp(logc)
    v /= np.linalg.norm(v)
    rec = photon_statistics(v, fock)
    assert rec.n_photon == pytest.approx(amp**2, abs=1e-10)
    assert rec.q == pytest.approx(0.0, abs=1e-9)
    assert rec.var_x1 == pytest.approx(0.25, abs=1e-10)


def _oracle(lam):
    a = abs(bogoliubov_alpha(lam).physical)
    n = a * a / (1 - a * a)
    return n, 0.25 * (1 + a) / (1 - a), 0.25 * (1 - a) / (1 + a), 2 * n + 1


def test_ground_observables_lam_04():
    rec = converged_ground_observables(ModelParams(0.4))
    assert rec.converged
    n, v1, v2, q = _oracle(0.4)
    assert rec.n_photon == pytest.approx(1 / 15, abs=1e-6)
    assert rec.n_photon == pytest.approx(n, abs=1e-6)
    assert rec.var_x1 == pytest.approx(v1, abs=1e-6)
    assert rec.var_x2 == pytest.approx(v2, abs=1e-6)
    assert rec.q == pytest.approx(17 / 15, abs=1e-6)
    assert rec.e0 == pytest.approx(-0.2, abs=1e-6)
    assert rec.gap == pytest.approx(0.6, abs=1e-6)


def test_weak_coupling_photon_number_small():
    rec = converged_ground_observables(ModelParams(0.2))
    assert 0 < rec.n_photon < 0.02


def test_superradiant_reports_nonconverged():
    rec = converged_ground_observables(ModelParams(0.8), max_cutoff=80)
    assert not rec.converged
    assert rec.cutoff == 80
    assert rec.q < 0


def test_converged_validation():
    with pytest.raises(ValueError):
        converged_ground_observables(ModelParams(0.3), tol=0.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 0.45))
def test_numeric_minimum_uncertainty(lam):
    rec = ground_observables(ModelParams(lam, cutoff=120))
    assert rec.var_x1 * rec.var_x2 == pytest.approx(1 / 16, abs=1e-8)
    assert rec.var_x2 <= 0.25 + 1e-10


def _assert_records_equal(a, b):
    for name in ObservableRecord.fields():
        x, y = getattr(a, name), getattr(b, name)
        if isinstance(x, float) and math.isnan(x):
            assert math.isnan(y)
        elif isinstance(x, float):
            assert y == pytest.approx(x, rel=1e-11, abs=1e-300)
        else:
            assert x == y


@pytest.mark.parametrize("lam", [0.0, 0.3, 0.7])
def test_record_round_trip(lam):
    from dicke_optics.csvio import format_value

    rec = converged_ground_observables(ModelParams(lam), max_cutoff=40)
    as_text = {k: format_value(v) for k, v in rec.to_row().items()}
    _assert_records_equal(rec, ObservableRecord.from_row(as_text))


def test_initial_dicke_cutoff():
    assert initial_dicke_cutoff(ModelParams(0.3, n_atoms=32)) == 16
    # Mean-field photon number N (lam^2 - 1/(16 lam^2)) at lam = 1: 32 * 15/16 = 30.
    assert initial_dicke_cutoff(ModelParams(1.0, n_atoms=32)) == 16 + 60


def test_dicke_levels_uncoupled():
    lv = dicke_levels(ModelParams(0.0, n_atoms=6, cutoff=8))
    assert lv.e0 == pytest.approx(-3.0)
    assert lv.gap == pytest.approx(1.0)
    # Same parity as the ground state: two quanta away.
    assert lv.parity_gap == pytest.approx(2.0)


def test_dicke_converged_levels():
    lv = converged_dicke_levels(ModelParams(0.4, n_atoms=8))
    assert lv.converged
    ref = dicke_levels(ModelParams(0.4, n_atoms=8, cutoff=lv.cutoff + 20))
    assert lv.e0 == pytest.approx(ref.e0, abs=1e-8)
    assert lv.parity_gap == pytest.approx(ref.parity_gap, abs=1e-8)
