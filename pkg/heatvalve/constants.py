import math

from scipy import constants

HBAR = constants.hbar
K_B = constants.k

DEFAULT_OMEGA_L_GHZ = 5.3122

DEFAULT_DEGENERACY_TOLERANCE = 1e-9
DEFAULT_POSITIVITY_TOLERANCE = 1e-8
DEFAULT_SOLVER_TOLERANCE = 1e-10
DEFAULT_QUADRATURE_TOLERANCE = 1e-8
DEFAULT_FLUX_POINTS = 201

# relative size below which an eigenbasis matrix element counts as a structural zero;
# eigensolver roundoff on forbidden transitions reaches ~1e-13
MATRIX_ELEMENT_CUTOFF = 1e-10

ALPHA_WARNING_THRESHOLD = 0.1
TRANSMON_REGIME_WARNING_RATIO = 10.0

# more than this share of failed flux points aborts a sweep
SWEEP_FAILURE_FRACTION = 0.1


def omega_l_si(omega_l_ghz: float) -> float:
    """Angular frequency in rad/s for a resonator frequency given in GHz."""
    return 2.0 * math.pi * omega_l_ghz * 1e9


def millikelvin_to_natural(
    temperature_mk: float, omega_l_ghz: float = DEFAULT_OMEGA_L_GHZ
) -> float:
    """k_B·T / (ħ·Ω_L) for T given in millikelvin."""
    return K_B * temperature_mk * 1e-3 / (HBAR * omega_l_si(omega_l_ghz))
