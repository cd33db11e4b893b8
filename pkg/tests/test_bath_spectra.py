import math

import numpy as np
import pytest

from heatvalve.bath_spectra import (
    BathResponse,
    bose_occupancy,
    lamb_shift_S,
    rate_gamma,
    spectral_density,
)
from heatvalve.constants import millikelvin_to_natural
from heatvalve.exceptions import ConsistencyError, DomainError
from heatvalve.models.bath import BathSide, BathSpec, LorentzianSpectralModel, OhmicSpectralModel

OHMIC = OhmicSpectralModel(chi=1.0, omega_c=50.0)
LORENTZIAN = LorentzianSpectralModel(chi=1.0, Q=20.0, omega_r=1.0)
T_HOT = millikelvin_to_natural(308.0)
T_COLD = millikelvin_to_natural(100.0)


def bath(model=OHMIC, temperature=T_HOT, lamb_shift_enabled=False) -> BathSpec:
    return BathSpec(
        side=BathSide.LEFT,
        model=model,
        temperature=temperature,
        lamb_shift_enabled=lamb_shift_enabled,
    )


def test_spectral_density_reference_points():
    assert spectral_density(OHMIC, 50.0) == pytest.approx(25.0)
    assert spectral_density(LORENTZIAN, 1.0) == pytest.approx(1.0)
    assert spectral_density(OHMIC, 0.0) == 0.0
    assert spectral_density(LORENTZIAN, 0.0) == 0.0


def test_spectral_density_rejects_negative_frequency():
    with pytest.raises(DomainError):
        spectral_density(OHMIC, -1.0)


def test_ohmic_high_frequency_decay():
    omegas = np.logspace(4, 6, 5)
    slope = np.diff(np.log(spectral_density(OHMIC, omegas))) / np.diff(np.log(omegas))
    np.testing.assert_allclose(slope, -1.0, atol=1e-3)


def test_bose_occupancy():
    assert bose_occupancy(math.log(2.0), 1.0) == pytest.approx(1.0)
    assert bose_occupancy(1.0, 1e-3) == pytest.approx(0.0, abs=1e-300)
    assert bose_occupancy(1.0, T_HOT) == pytest.approx(0.7763, abs=1e-4)
    with pytest.raises(DomainError):
        bose_occupancy(0.0, 1.0)
    with pytest.raises(DomainError):
        bose_occupancy(1.0, 0.0)


@pytest.mark.parametrize("model", [OHMIC, LORENTZIAN])
@pytest.mark.parametrize("temperature", [T_HOT, T_COLD])
def test_rates_obey_detailed_balance(model, temperature):
    b = bath(model, temperature)
    omegas = np.linspace(0.05, 5.0, 100)
    emission = rate_gamma(b, omegas)
    absorption = rate_gamma(b, -omegas)
    assert np.all(emission > 0)
    np.testing.assert_allclose(absorption, emission * np.exp(-omegas / temperature), rtol=1e-10)


def test_rates_are_nonnegative_and_scalar_preserving():
    b = bath(LORENTZIAN)
    assert np.all(rate_gamma(b, np.linspace(-10, 10, 201)) >= 0)
    assert isinstance(rate_gamma(b, 1.0), float)


def test_zero_frequency_rate():
    assert rate_gamma(bath(OHMIC), 0.0) == pytest.approx(2 * math.pi * T_HOT)
    assert rate_gamma(bath(LORENTZIAN), 0.0) == 0.0


def test_ohmic_rate_is_continuous_at_zero():
    b = bath(OHMIC)
    at_zero = rate_gamma(b, 0.0)
    for eps in (1e-6, -1e-6):
        assert rate_gamma(b, eps) == pytest.approx(at_zero, rel=1e-4)


def test_empty_bath_does_not_excite():
    b = bath(OHMIC, temperature=1e-4)
    assert rate_gamma(b, -1.0) == pytest.approx(0.0, abs=1e-300)
    assert rate_gamma(b, 1.0) == pytest.approx(2 * math.pi * spectral_density(OHMIC, 1.0))


def test_lamb_shift_switches():
    assert lamb_shift_S(bath(lamb_shift_enabled=False), 1.0) == 0.0
    silent = bath(OhmicSpectralModel(chi=0.0, omega_c=50.0), lamb_shift_enabled=True)
    assert lamb_shift_S(silent, 1.0) == 0.0


def test_lamb_shift_converges_under_refinement():
    b = bath(OHMIC, lamb_shift_enabled=True)
    coarse = lamb_shift_S(b, 1.0, tolerance=1e-8)
    fine = lamb_shift_S(b, 1.0, tolerance=1e-9)
    assert math.isfinite(coarse)
    assert coarse == pytest.approx(fine, rel=1e-6)


def test_response_lookup():
    b = bath(OHMIC)
    response = BathResponse.build(b, [1.0, -1.0, 1.0])
    np.testing.assert_array_equal(response.omegas, [-1.0, 1.0])
    np.testing.assert_allclose(response.gammas([1.0]), [rate_gamma(b, 1.0)])
    np.testing.assert_allclose(response.Gammas([1.0]), [rate_gamma(b, 1.0) / 2])
    assert response.max_abs_Gamma() == pytest.approx(rate_gamma(b, 1.0) / 2)
    with pytest.raises(ConsistencyError):
        response.gammas([2.0])


def test_response_extension_keeps_existing_values():
    b = bath(OHMIC)
    response = BathResponse.build(b, [1.0])
    extended = response.extended([0.5, 1.0])
    np.testing.assert_array_equal(extended.omegas, [0.5, 1.0])
    assert extended.gammas([1.0])[0] == response.gammas([1.0])[0]
    assert response.extended([1.0]) is response
