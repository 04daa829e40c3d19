"""Named test signals and their known closed forms."""

import numpy as np

from .errors import ValidationError

__all__ = [
    "SIGNAL_NAMES",
    "exp_decay",
    "log_bump",
    "indicator",
    "gaussian_in_s",
    "wave_packet",
    "make_signal",
    "fourier_exp_decay",
    "adjoint_fourier_exp_decay",
    "closed_form_output",
]

SIGNAL_NAMES = ("exp-decay", "log-bump", "indicator", "gaussian-in-s", "wave-packet")


def _check_width(width):
    if not np.isfinite(width) or width <= 0:
        raise ValidationError(f"width must be positive, got {width!r}")


def exp_decay(plan):
    """``x(t) = e^{-t}``."""
    return plan.signal(lambda t: np.exp(-t))


def log_bump(plan, center=0.0, width=3.0):
    """Smooth compactly supported bump in ``s = ln t``: ``z(s) = exp(-1/(1-u^2))``."""
    _check_width(width)
    u = (plan.s - center) / width
    inside = np.abs(u) < 1
    z = np.zeros(plan.n)
    z[inside] = np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
    return plan.signal_from_z(z)


def indicator(plan, a=1.0, b=np.e):
    """``x(t) = 1_{[a, b]}(t)``."""
    if not 0 < a < b:
        raise ValidationError("indicator needs 0 < a < b")
    return plan.signal(lambda t: ((t >= a) & (t <= b)).astype(float))


def gaussian_in_s(plan, center=0.0, width=1.0):
    """``z(s) = exp(-(s - center)^2 / (2 width^2))``, i.e. ``x = t^{-1/2} exp(-(ln t)^2/2)``."""
    _check_width(width)
    return plan.signal_from_z(np.exp(-0.5 * ((plan.s - center) / width) ** 2))


def wave_packet(plan, mu0=4.0, center=0.0, width=1.0, branch=1):
    """Gaussian in ``s`` modulated by ``e^{i branch mu0 s}``.

    Its transform is concentrated near ``mu = mu0`` in the ``plus``
    component (``branch=1``) or the ``minus`` component (``branch=-1``).
    """
    _check_width(width)
    if branch not in (1, -1):
        raise ValidationError("branch must be 1 or -1")
    s = plan.s
    z = np.exp(-0.5 * ((s - center) / width) ** 2 + 1j * branch * mu0 * s)
    return plan.signal_from_z(z)


def make_signal(name, plan, **params):
    """Build a named signal; ``params`` are forwarded to the generator."""
    table = {
        "exp-decay": exp_decay,
        "log-bump": log_bump,
        "indicator": indicator,
        "gaussian-in-s": gaussian_in_s,
        "wave-packet": wave_packet,
    }
    if name not in table:
        raise ValidationError(f"unknown signal {name!r}; choose from {', '.join(SIGNAL_NAMES)}")
    try:
        return table[name](plan, **params)
    except TypeError as exc:
        raise ValidationError(f"bad parameters for {name!r}: {exc}") from None


def fourier_exp_decay(t):
    """Truncated Fourier transform of ``e^{-t}``: ``1 / (sqrt(2 pi) (1 - i t))``."""
    return 1.0 / (np.sqrt(2 * np.pi) * (1 - 1j * np.asarray(t)))


def adjoint_fourier_exp_decay(t):
    return 1.0 / (np.sqrt(2 * np.pi) * (1 + 1j * np.asarray(t)))


def closed_form_output(name, op, t):
    """Closed-form operator output for the few (signal, op) pairs that have one."""
    if name == "exp-decay" and op == "fourier":
        return fourier_exp_decay(t)
    if name == "exp-decay" and op == "adjoint":
        return adjoint_fourier_exp_decay(t)
    return None

