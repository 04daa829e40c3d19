"""Gamma function on the critical line and overflow-safe hyperbolic helpers.

``log Gamma`` comes from ``scipy.special.loggamma``, whose imaginary part
is the continuous phase. The log form is exposed separately because the
symbol needs the phase of the Gamma function far beyond the range where
its modulus is representable.
"""

import numpy as np
from scipy.special import loggamma

from .errors import DomainError

__all__ = [
    "GAMMA_MU_MAX",
    "CriticalLineGamma",
    "log_gamma_critical",
    "gamma_on_critical_line",
    "gamma_phase",
    "sech_pi",
    "abs_gamma_sq",
]

# |Gamma(1/2 + i mu)| ~ sqrt(2 pi) exp(-pi |mu| / 2)
GAMMA_MU_MAX = 50.0


def log_gamma_critical(mu):
    """Principal-branch-free ``log Gamma(1/2 + i mu)``.

    The imaginary part is a continuous phase (not reduced mod 2 pi); only
    its value modulo 2 pi carries meaning. Conjugate symmetry in ``mu`` is
    enforced exactly.
    """
    mu = np.asarray(mu, dtype=float)
    if not np.all(np.isfinite(mu)):
        raise DomainError("mu must be finite")
    value = loggamma(0.5 + 1j * np.abs(mu))
    value = np.where(mu < 0, np.conj(value), value)
    return value[()] if value.ndim == 0 else value


def gamma_phase(mu):
    """Argument of ``Gamma(1/2 + i mu)``; valid for any finite ``mu``."""
    return np.imag(log_gamma_critical(mu))


def gamma_on_critical_line(mu):
    """Return ``Gamma(1/2 + i mu)``.

    Raises
    ------
    DomainError
        If ``|mu| > GAMMA_MU_MAX``, where the modulus falls below about
        ``1e-34`` and the value is no longer useful in double precision.
    """
    mu_arr = np.asarray(mu, dtype=float)
    if np.any(np.abs(mu_arr) > GAMMA_MU_MAX):
        raise DomainError(
            f"|mu| > {GAMMA_MU_MAX}: Gamma(1/2+i mu) underflows "
            "(modulus ~ exp(-pi |mu| / 2)); use log_gamma_critical instead"
        )
    value = np.exp(log_gamma_critical(mu_arr))
    return complex(value) if np.ndim(value) == 0 else value


def sech_pi(mu):
    """``1 / cosh(pi mu)`` computed as ``2 e^{-pi|mu|} / (1 + e^{-2 pi |mu|})``."""
    e = np.exp(-np.pi * np.abs(np.asarray(mu, dtype=float)))
    value = 2.0 * e / (1.0 + e * e)
    return float(value) if np.ndim(value) == 0 else value


def abs_gamma_sq(mu):
    """Closed form ``|Gamma(1/2 + i mu)|^2 = pi / cosh(pi mu)``."""
    return np.pi * sech_pi(mu)


class CriticalLineGamma:
    """A value ``Gamma(1/2 + i mu)`` bundled with its parameter."""

    __slots__ = ("mu", "value")

    def __init__(self, mu):
        self.mu = float(mu)
        self.value = gamma_on_critical_line(self.mu)

    def __repr__(self):
        return f"CriticalLineGamma(mu={self.mu!r}, value={self.value!r})"

    def reflection_product(self):
        """``Gamma(1/2 + i mu) Gamma(1/2 - i mu)``; real and equal to ``pi sech(pi mu)``."""
        return self.value * gamma_on_critical_line(-self.mu)
