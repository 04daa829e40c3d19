"""Functional calculus from resolvent jumps across the spectral segment.

For ``eps > 0`` the operator

    (1 / 2 pi i) int_sigma h(s) [R(s - eps i e^{i pi/4}) - R(s + eps i e^{i pi/4})] ds

is, in the model, the field ``[[I_p, I_q f_pm], [I_q f_mp, I_p]]`` with

    I_p(r) = int_{-A}^{A} even(|rho|) P(r, rho; eps) d rho
    I_q(r) = int_0^A odd_q(rho) Q(r, rho; eps) d rho

where ``P`` is the Poisson kernel and ``Q = P(|r|, rho) 4 rho^2 / ((|r| + rho)^2 + eps^2)``.
Both are approximate identities, so the field tends to ``h(F(mu))`` as
``eps -> 0``.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .admissible import A
from .errors import ValidationError
from .mellin import forward_transform, inverse_transform
from .model_ops import MatrixField, _require_admissible, multiply
from .symbol import matrix_from_parts, symbol_entries, zeta_modulus

__all__ = [
    "KernelSample",
    "poisson_kernel",
    "q_kernel",
    "t_kernel",
    "poisson_pair",
    "graded_nodes",
    "singular_integrals",
    "singular_integrals_split",
    "resolvent_field",
    "calculus_via_resolvent",
]

_GL_ORDER = 10
_GL_X, _GL_W = leggauss(_GL_ORDER)


@dataclass(frozen=True)
class KernelSample:
    r: float
    rho: float
    eps: float
    p_value: float
    q_value: float


def poisson_kernel(r, rho, eps):
    """``P(r, rho; eps) = eps / (pi ((r - rho)^2 + eps^2))``."""
    return eps / (np.pi * ((r - rho) ** 2 + eps * eps))


def q_kernel(r, rho, eps):
    a = np.abs(r)
    return poisson_kernel(a, rho, eps) * 4.0 * rho * rho / ((a + rho) ** 2 + eps * eps)


def t_kernel(r, rho, eps):
    """``T = Q - P(|r|, .)`` written without cancellation."""
    a = np.abs(r)
    return poisson_kernel(a, rho, eps) * ((rho - a) * (3 * rho + a) - eps * eps) / ((a + rho) ** 2 + eps * eps)


def poisson_pair(r, rho, eps):
    if not eps > 0:
        raise ValidationError("eps must be positive")
    return KernelSample(
        r=float(r),
        rho=float(rho),
        eps=float(eps),
        p_value=float(poisson_kernel(r, rho, eps)),
        q_value=float(q_kernel(r, rho, eps)),
    )


def _panel_edges(lo, hi, center, eps):
    """Panel edges on ``[lo, hi]``: width ``eps/4`` within ``10 eps`` of ``center``, geometric beyond."""
    fine = eps / 4.0
    edges = [center]
    for direction, bound in ((1.0, hi), (-1.0, lo)):
        x, step = center, fine
        while direction * (bound - x) > 0:
            dist = abs(x - center)
            step = fine if dist < 10 * eps else max(fine, 0.25 * dist)
            x = x + direction * step
            edges.append(min(x, bound) if direction > 0 else max(x, bound))
    return np.unique(np.clip(edges, lo, hi))


def graded_nodes(lo, hi, center, eps, breaks=()):
    """Composite Gauss-Legendre nodes and weights on ``[lo, hi]``.

    The mesh resolves the Poisson peak at ``center`` and puts panel edges at
    every point of ``breaks`` (jumps or kinks of the integrand).
    """
    edges = _panel_edges(lo, hi, float(np.clip(center, lo, hi)), eps)
    extra = [b for b in breaks if lo < b < hi]
    edges = np.unique(np.concatenate([edges, extra, [lo, hi]]))
    edges = edges[np.concatenate([[True], np.diff(edges) > 1e-15])]
    left, right = edges[:-1], edges[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    weights = (half[:, None] * _GL_W[None, :]).ravel()
    return nodes, weights


def _breaks(h):
    bp = h.breakpoints()
    return np.concatenate([bp, -bp, [0.0]])


def singular_integrals(h, r, eps):
    """``(I_p, I_q)`` at the point ``r`` (only ``|r|`` matters)."""
    if not eps > 0:
        raise ValidationError("eps must be positive")
    r = abs(float(r))
    breaks = _breaks(h)
    rho, w = graded_nodes(-A, A, r, eps, np.concatenate([breaks, [-r]]))
    even, _ = h.parts(np.abs(rho))
    i_p = np.sum(w * even * poisson_kernel(r, rho, eps))
    rho, w = graded_nodes(0.0, A, r, eps, breaks)
    _, odd_q = h.parts(rho)
    i_q = np.sum(w * odd_q * q_kernel(r, rho, eps))
    return complex(i_p), complex(i_q)


def singular_integrals_split(h, r, eps):
    """``I_q`` recomputed as ``int odd_q P + int odd_q T`` (an independent path)."""
    r = abs(float(r))
    rho, w = graded_nodes(0.0, A, r, eps, _breaks(h))
    _, odd_q = h.parts(rho)
    return complex(np.sum(w * odd_q * poisson_kernel(r, rho, eps)) + np.sum(w * odd_q * t_kernel(r, rho, eps)))


def resolvent_field(h, eps, plan):
    """The field ``[[I_p, I_q f_pm], [I_q f_mp, I_p]]`` on the plan's mu grid.

    ``I_p`` and ``I_q`` are even and smooth in ``r`` on the scale ``eps``, so
    points with ``r < 1e-4 eps`` share the value at ``r = 0``.
    """
    r = zeta_modulus(plan.mu)
    r = np.where(r < 1e-4 * eps, 0.0, r)
    uniq, inverse = np.unique(r, return_inverse=True)
    vals = np.array([singular_integrals(h, ru, eps) for ru in uniq])
    i_p, i_q = vals[inverse, 0], vals[inverse, 1]
    f_pm, f_mp = symbol_entries(plan.mu)
    return MatrixField(plan, matrix_from_parts(i_p, i_q * f_pm, i_q * f_mp))


def calculus_via_resolvent(h, eps, x):
    """Apply the resolvent-jump integral at width ``eps`` to ``x``."""
    _require_admissible(h)
    g = resolvent_field(h, eps, x.plan)
    return inverse_transform(multiply(g, forward_transform(x)))
