import math
import warnings
from typing import Dict, Iterable, Sequence

import numpy as np
from loguru import logger
from pydantic.v1 import PrivateAttr
from scipy import integrate

from heatvalve.constants import DEFAULT_QUADRATURE_TOLERANCE
from heatvalve.exceptions import ConsistencyError, DomainError, NumericalAccuracyError
from heatvalve.models.bath import (
    BathSpec,
    LorentzianSpectralModel,
    OhmicSpectralModel,
    SpectralModel,
)
from heatvalve.models.model import ArrayModel

LAMB_WINDOW_FACTOR = 20.0
LAMB_EXCISION_FACTOR = 1e-6
QUADRATURE_SUBDIVISIONS = 500


def _lorentzian_density(m: LorentzianSpectralModel, omega: np.ndarray) -> np.ndarray:
    # χω / (1 + Q²(ω/ω_r − ω_r/ω)²) with the 1/ω cleared so that ω = 0 evaluates to 0
    w2 = omega * omega
    r2 = m.omega_r * m.omega_r
    return m.chi * omega * r2 * w2 / (r2 * w2 + m.Q**2 * (w2 - r2) ** 2)


def _density(m: SpectralModel, omega: np.ndarray) -> np.ndarray:
    if isinstance(m, OhmicSpectralModel):
        return m.chi * omega / (1.0 + (omega / m.omega_c) ** 2)
    elif isinstance(m, LorentzianSpectralModel):
        return _lorentzian_density(m, omega)
    else:
        raise Exception(f"Invalid spectral model {type(m).__name__}")


def _low_frequency_slope(m: SpectralModel) -> float:
    """dJ/dω at ω = 0."""
    if isinstance(m, OhmicSpectralModel):
        return m.chi
    return 0.0


def spectral_density(m: SpectralModel, omega):
    omega_arr = np.asarray(omega, dtype=float)
    if np.any(omega_arr < 0):
        raise DomainError(
            f"spectral density needs ω ≥ 0, got {omega}; use rate_gamma for signed ω"
        )
    result = _density(m, omega_arr)
    return float(result) if result.ndim == 0 else result


def bose_occupancy(omega, T: float):
    omega_arr = np.asarray(omega, dtype=float)
    if np.any(omega_arr <= 0):
        raise DomainError(f"Bose occupancy needs ω > 0, got {omega}")
    if T <= 0:
        raise DomainError(f"temperature must be positive, got {T}")
    with np.errstate(over="ignore"):
        result = 1.0 / np.expm1(omega_arr / T)
    return float(result) if result.ndim == 0 else result


def _gamma(m: SpectralModel, T: float, omega: np.ndarray) -> np.ndarray:
    """
    2π·J(ω)·(n(ω)+1) for ω > 0 and 2π·J(|ω|)·n(|ω|) for ω < 0, written as
    2π·sgn(ω)J(|ω|) / (1 − e^{−ω/T}) so both signs share one stable expression.
    """
    scalar = np.ndim(omega) == 0
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    nonzero = omega != 0
    result = np.full(omega.shape, 2.0 * math.pi * _low_frequency_slope(m) * T)
    w = omega[nonzero]
    odd_density = np.sign(w) * _density(m, np.abs(w))
    with np.errstate(over="ignore", invalid="ignore"):
        rate = 2.0 * math.pi * odd_density / -np.expm1(-w / T)
    # an empty bath at negative ω gives J/∞
    result[nonzero] = np.nan_to_num(rate, nan=0.0, posinf=0.0, neginf=0.0)
    return result.reshape(()) if scalar else result


def rate_gamma(b: BathSpec, omega):
    result = _gamma(b.model, b.temperature, omega)
    return float(result) if result.ndim == 0 else result


def _hilbert_window(b: BathSpec, omega: float) -> float:
    return LAMB_WINDOW_FACTOR * max(b.model.scale(), abs(omega))


def lamb_shift_S(
    b: BathSpec, omega: float, tolerance: float = DEFAULT_QUADRATURE_TOLERANCE
) -> float:
    """
    S(ω) = (1/2π)·PV∫ γ(ω′)/(ω − ω′) dω′ over [−W, W].

    The outer pieces are integrated with the singular part subtracted, which leaves
    the analytic term γ(ω)·ln((W+ω)/(W−ω)); the excised window [ω−δ, ω+δ] is done
    with the Cauchy-weighted rule. `tolerance` bounds the summed error estimate,
    relative to |S| once |S| exceeds 1.
    """
    if not b.lamb_shift_enabled or b.model.chi == 0:
        return 0.0

    m, T = b.model, b.temperature
    W = _hilbert_window(b, omega)
    delta = LAMB_EXCISION_FACTOR * m.scale()

    def gamma(x: float) -> float:
        return float(_gamma(m, T, np.asarray(x)))

    gamma_at = gamma(omega)

    def regular(x: float) -> float:
        return (gamma(x) - gamma_at) / (omega - x)

    quad_kwargs = dict(epsabs=tolerance / 10, epsrel=1e-12, limit=QUADRATURE_SUBDIVISIONS)
    pieces = [(-W, omega - delta), (omega + delta, W)]
    total, error = 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in pieces:
            breaks = [p for p in (0.0, -m.scale(), m.scale()) if lo < p < hi]
            value, err = integrate.quad(regular, lo, hi, points=breaks or None, **quad_kwargs)
            total += value
            error += err
        # quad's Cauchy weight computes PV∫ f(x)/(x − wvar)
        inner, err = integrate.quad(
            gamma, omega - delta, omega + delta, weight="cauchy", wvar=omega, **quad_kwargs
        )
    total += gamma_at * math.log((W + omega) / (W - omega)) - inner
    error += err

    S = total / (2.0 * math.pi)
    error /= 2.0 * math.pi
    if error > tolerance * max(1.0, abs(S)):
        raise NumericalAccuracyError(
            f"Lamb shift quadrature at ω = {omega:.6g} did not converge "
            f"(estimated error {error:.3e})",
            estimated_error=error,
        )
    return S


class BathResponse(ArrayModel):
    """Rates γ(ω) and Lamb values S(ω) of one bath at a fixed set of Bohr frequencies."""

    bath: BathSpec
    omegas: np.ndarray
    gamma: np.ndarray
    s_shift: np.ndarray

    _index: Dict[float, int] = PrivateAttr(default_factory=dict)

    def __init__(self, **data):
        super().__init__(**data)
        self._index = {float(w): i for i, w in enumerate(self.omegas)}

    @classmethod
    def build(
        cls,
        bath: BathSpec,
        omegas: Iterable[float],
        tolerance: float = DEFAULT_QUADRATURE_TOLERANCE,
    ) -> "BathResponse":
        omegas = np.unique(np.asarray(list(omegas), dtype=float))
        gamma = _gamma(bath.model, bath.temperature, omegas)
        if bath.lamb_shift_enabled:
            s_shift = np.array([lamb_shift_S(bath, float(w), tolerance) for w in omegas])
            logger.debug(f"Lamb shift of bath {bath.side.value} at {len(omegas)} frequencies")
        else:
            s_shift = np.zeros_like(gamma)
        return cls(bath=bath, omegas=omegas, gamma=gamma, s_shift=s_shift)

    def extended(
        self, omegas: Iterable[float], tolerance: float = DEFAULT_QUADRATURE_TOLERANCE
    ) -> "BathResponse":
        missing = [float(w) for w in omegas if float(w) not in self._index]
        if not missing:
            return self
        extra = BathResponse.build(self.bath, missing, tolerance)
        merged = dict(zip(extra.omegas, zip(extra.gamma, extra.s_shift)))
        merged.update(zip(self.omegas, zip(self.gamma, self.s_shift)))
        keys = np.array(sorted(merged))
        return BathResponse(
            bath=self.bath,
            omegas=keys,
            gamma=np.array([merged[k][0] for k in keys]),
            s_shift=np.array([merged[k][1] for k in keys]),
        )

    def _lookup(self, omegas: Sequence[float]) -> np.ndarray:
        try:
            return np.array([self._index[float(w)] for w in omegas], dtype=int)
        except KeyError as e:
            raise ConsistencyError(f"no bath response stored for ω = {e.args[0]!r}")

    def gammas(self, omegas: Sequence[float]) -> np.ndarray:
        return self.gamma[self._lookup(omegas)]

    def shifts(self, omegas: Sequence[float]) -> np.ndarray:
        return self.s_shift[self._lookup(omegas)]

    def Gammas(self, omegas: Sequence[float]) -> np.ndarray:
        """Half-Fourier transform Γ(ω) = γ(ω)/2 + iS(ω)."""
        idx = self._lookup(omegas)
        return 0.5 * self.gamma[idx] + 1j * self.s_shift[idx]

    def max_abs_Gamma(self) -> float:
        if len(self.omegas) == 0:
            return 0.0
        return float(np.max(np.abs(0.5 * self.gamma + 1j * self.s_shift)))
