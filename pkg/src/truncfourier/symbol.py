"""The 2x2 matrix symbol ``F(mu)`` of the truncated Fourier operator.

``F(mu) = [[0, f_pm], [f_mp, 0]]`` acts on the coefficient pair
``(y_plus, y_minus)`` of the expansion in ``t^{-1/2 + i mu}``,
``t^{-1/2 - i mu}``. Its eigenvalues are ``+-zeta(mu)`` with
``zeta(mu) = e^{i pi/4} / sqrt(2 cosh(pi mu))``.

All functions accept scalars or arrays of ``mu``; matrices are returned as
numpy arrays of shape ``(..., 2, 2)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularMatrixError
from .special import gamma_phase, sech_pi

__all__ = [
    "OMEGA",
    "SPECTRAL_RADIUS",
    "EigenData",
    "ResolventBound",
    "symbol_entries",
    "symbol_matrix",
    "symbol_adjoint",
    "zeta_modulus",
    "zeta",
    "eigen_data",
    "matrix_function",
    "matrix_from_parts",
    "mu_norm",
    "resolvent_matrix",
    "resolvent_bound",
    "resolvent_norm_bounds",
    "resolvent_operator_norm",
    "norm2",
    "matrix_norm_bounds",
    "param_map",
    "param_map_inverse",
    "spectrum_endpoints",
    "dist_to_segment",
    "dist_sq_to_segment",
]

OMEGA = np.exp(0.25j * np.pi)
SPECTRAL_RADIUS = 1.0 / np.sqrt(2.0)


def _check_mu(mu):
    mu = np.asarray(mu, dtype=float)
    if not np.all(np.isfinite(mu)):
        raise DomainError("mu must be finite")
    if np.any(mu < 0):
        raise DomainError("the symbol is defined for mu >= 0 only")
    return mu


def symbol_entries(mu):
    """Return ``(f_pm, f_mp)``, the off-diagonal entries of ``F(mu)``.

    The modulus comes from the closed form ``(1 + e^{-+2 pi mu})^{-1/2}`` and
    the phase from the Gamma function, so nothing overflows for large ``mu``.
    """
    mu = _check_mu(mu)
    phase = gamma_phase(mu)  # arg Gamma(1/2 + i mu)
    e2 = np.exp(-2.0 * np.pi * mu)
    mod_pm = 1.0 / np.sqrt(1.0 + e2)
    mod_mp = np.exp(-np.pi * mu) / np.sqrt(1.0 + e2)
    f_pm = mod_pm * np.exp(1j * (0.25 * np.pi - phase))
    f_mp = mod_mp * np.exp(1j * (0.25 * np.pi + phase))
    return f_pm, f_mp


def matrix_from_parts(diag, upper, lower):
    """Assemble ``[[diag, upper], [lower, diag]]`` with broadcasting."""
    diag, upper, lower = np.broadcast_arrays(
        np.asarray(diag, dtype=complex),
        np.asarray(upper, dtype=complex),
        np.asarray(lower, dtype=complex),
    )
    out = np.empty(diag.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = diag
    out[..., 1, 1] = diag
    out[..., 0, 1] = upper
    out[..., 1, 0] = lower
    return out


def symbol_matrix(mu):
    """``F(mu)`` as a ``(..., 2, 2)`` complex array."""
    f_pm, f_mp = symbol_entries(mu)
    return matrix_from_parts(0.0, f_pm, f_mp)


def symbol_adjoint(mu):
    """``F(mu)^*``, the symbol of the adjoint operator."""
    f_pm, f_mp = symbol_entries(mu)
    return matrix_from_parts(0.0, np.conj(f_mp), np.conj(f_pm))


def zeta_modulus(mu):
    """``|zeta(mu)| = 1 / sqrt(2 cosh(pi mu))``; underflows gracefully to 0."""
    return np.sqrt(0.5 * sech_pi(_check_mu(mu)))


def zeta(mu):
    """The eigenvalue ``zeta_+(mu) = e^{i pi/4} |zeta(mu)|``."""
    return OMEGA * zeta_modulus(mu)


def param_map(r):
    """Spectral coordinate ``r`` (``zeta = r e^{i pi/4}``) to ``mu``.

    ``mu = arccosh(1 / (2 r^2)) / pi``, evaluated as
    ``log(x + sqrt(x^2 - 1))`` with ``x = 1/(2 r^2)`` rewritten so that tiny
    ``r`` does not overflow. The sign of ``r`` selects the branch and is
    discarded.
    """
    r = np.abs(np.asarray(r, dtype=float))
    if np.any(r == 0):
        raise DomainError("r = 0 is the spectral singularity (mu = infinity)")
    if np.any(r > SPECTRAL_RADIUS * (1 + 1e-12)):
        raise DomainError(f"|r| must not exceed 1/sqrt(2) = {SPECTRAL_RADIUS}")
    r = np.minimum(r, SPECTRAL_RADIUS)
    u = 2.0 * r * r  # = 1/x, in (0, 1]
    # arccosh(1/u) = log((1 + sqrt(1 - u^2)) / u)
    value = (np.log1p(np.sqrt(np.maximum(0.0, 1.0 - u * u))) - np.log(u)) / np.pi
    return float(value) if np.ndim(value) == 0 else value


def param_map_inverse(mu, branch=1):
    """``mu`` to the spectral coordinate ``r``; ``branch=-1`` gives ``zeta_-``."""
    r = zeta_modulus(mu)
    value = np.sign(branch) * r
    return float(value) if np.ndim(value) == 0 else value


def spectrum_endpoints():
    """Endpoints ``-+e^{i pi/4}/sqrt(2)`` of the spectral segment."""
    end = complex(OMEGA * SPECTRAL_RADIUS)
    return -end, end


def dist_to_segment(z):
    """Euclidean distance from ``z`` to the spectral segment."""
    z = np.asarray(z, dtype=complex)
    w = z / OMEGA  # rotate the segment onto the real interval
    x = np.clip(w.real, -SPECTRAL_RADIUS, SPECTRAL_RADIUS)
    value = np.abs(w - x)
    return float(value) if np.ndim(value) == 0 else value


def dist_sq_to_segment(z):
    """``dist(z^2, [0, i/2])``: the minimum of ``|det(zI - F(mu))|`` over ``mu``."""
    w = np.asarray(z, dtype=complex) ** 2
    y = np.clip(w.imag, 0.0, 0.5)
    value = np.abs(w - 1j * y)
    return float(value) if np.ndim(value) == 0 else value


@dataclass(frozen=True)
class EigenData:
    """Per-``mu`` spectral data of ``F(mu)``.

    ``e_plus = u_plus v_plus^*`` projects onto the ``zeta_plus`` eigenline along
    the ``zeta_minus`` one; ``v`` vectors are eigenvectors of ``F(mu)^*``.
    """

    mu: float
    zeta_plus: complex
    zeta_minus: complex
    e_plus: np.ndarray
    e_minus: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    sin_theta: float


def eigen_data(mu):
    """Eigenvalues, eigenvectors, projectors and eigenvector angle of ``F(mu)``."""
    mu = float(_check_mu(mu))
    f_pm, f_mp = symbol_entries(mu)
    z = complex(zeta(mu))
    if z == 0:
        raise DomainError("zeta(mu) underflows; eigen data unavailable at this mu")
    a = f_mp / z  # second component of u_plus
    b = np.conj(f_pm / z)  # second component of v_plus
    s2 = 1.0 / np.sqrt(2.0)
    u_plus = s2 * np.array([1.0, a], dtype=complex)
    u_minus = s2 * np.array([1.0, -a], dtype=complex)
    v_plus = s2 * np.array([1.0, b], dtype=complex)
    v_minus = s2 * np.array([1.0, -b], dtype=complex)
    e_plus = np.outer(u_plus, np.conj(v_plus))
    e_minus = np.outer(u_minus, np.conj(v_minus))
    # sin of the angle via |det[u+, u-]| avoids the 1 - cos^2 cancellation
    det = u_plus[0] * u_minus[1] - u_plus[1] * u_minus[0]
    sin_theta = abs(det) / (np.linalg.norm(u_plus) * np.linalg.norm(u_minus))
    return EigenData(
        mu=mu,
        zeta_plus=z,
        zeta_minus=-z,
        e_plus=e_plus,
        e_minus=e_minus,
        u_plus=u_plus,
        u_minus=u_minus,
        v_plus=v_plus,
        v_minus=v_minus,
        sin_theta=float(sin_theta),
    )


def matrix_function(h, mu):
    """``h(F(mu)) = h(zeta_+) E_+ + h(zeta_-) E_-``.

    ``h`` is a spectral function spec (see :mod:`truncfourier.admissible`)
    providing ``parts(r)``, i.e. the even part and the odd part divided by
    ``zeta``; the result is
    ``[[even, odd_q * f_pm], [odd_q * f_mp, even]]``.
    """
    mu = _check_mu(mu)
    even, odd_q = h.parts(zeta_modulus(mu))
    if not (np.all(np.isfinite(even)) and np.all(np.isfinite(odd_q))):
        raise DomainError("h is not evaluable at +-zeta(mu)")
    f_pm, f_mp = symbol_entries(mu)
    return matrix_from_parts(even, odd_q * f_pm, odd_q * f_mp)


def mu_norm(h, mu):
    """The pointwise function norm ``|even| + |odd / zeta|`` at ``+-zeta(mu)``."""
    even, odd_q = h.parts(zeta_modulus(_check_mu(mu)))
    return np.abs(even) + np.abs(odd_q)


def resolvent_matrix(z, mu):
    """``(z I - F(mu))^{-1}`` from the adjugate and ``D = z^2 - i/(2 cosh pi mu)``.

    Raises
    ------
    SingularMatrixError
        If ``z`` is an eigenvalue of ``F(mu)``.
    """
    mu = _check_mu(mu)
    z = complex(z)
    f_pm, f_mp = symbol_entries(mu)
    det = z * z - 0.5j * sech_pi(mu)
    scale = max(abs(z) ** 2, 1e-300)
    if np.any(np.abs(det) <= 1e-15 * max(scale, 0.5 * np.max(sech_pi(mu)))):
        raise SingularMatrixError(f"z = {z} is an eigenvalue of F(mu)")
    return matrix_from_parts(z / det, f_pm / det, f_mp / det)


def norm2(m):
    """Spectral norm of ``(..., 2, 2)`` matrices via the closed-form singular values.

    The largest eigenvalue of the Hermitian ``M^* M = [[alpha, beta], [conj(beta), gamma]]``
    is ``(alpha + gamma)/2 + hypot((alpha - gamma)/2, |beta|)``; unlike the
    trace/determinant form this does not cancel when the singular values
    nearly coincide.
    """
    m = np.asarray(m, dtype=complex)
    a, b, c, d = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
    alpha = np.abs(a) ** 2 + np.abs(c) ** 2
    gamma = np.abs(b) ** 2 + np.abs(d) ** 2
    beta = np.abs(np.conj(a) * b + np.conj(c) * d)
    value = np.sqrt(0.5 * (alpha + gamma) + np.hypot(0.5 * (alpha - gamma), beta))
    return float(value) if np.ndim(value) == 0 else value


def matrix_norm_bounds(m):
    """``(lower, upper, exact)`` for the spectral norm of a 2x2 matrix.

    ``exact`` is the largest singular value; ``lower`` and ``upper`` combine
    the Frobenius sandwich ``tr(M*M)/2 <= ||M||^2 <= tr(M*M)`` with the row
    and column absolute-sum (Schur) estimate.
    """
    m = np.asarray(m, dtype=complex)
    a = np.abs(m)
    fro = np.sqrt(np.sum(a**2))
    schur = max(a[0, 0] + a[0, 1], a[1, 0] + a[1, 1], a[0, 0] + a[1, 0], a[0, 1] + a[1, 1])
    lower = max(fro / np.sqrt(2.0), schur / np.sqrt(2.0))
    upper = min(fro, schur)
    return float(lower), float(upper), norm2(m)


@dataclass(frozen=True)
class ResolventBound:
    """Constants entering the two-sided resolvent estimates near the spectrum."""

    a_of_z: float
    b_of_z: float
    c_of_zeta: float
    dist_sq_segment: float


def resolvent_bound(z, zeta_point):
    """Evaluate ``A(z)``, ``B(z)``, ``C(zeta)`` and ``dist(z^2, [0, i/2])``."""
    z = complex(z)
    rz = abs(complex(zeta_point))
    q = 2.0 * abs(z) ** 2 + 1.0
    c = np.sqrt(1.0 + 2.0 * rz * rz) / (2.0 * rz) if rz > 0 else np.inf
    return ResolventBound(
        a_of_z=float(np.sqrt(q) / 2.0),
        b_of_z=float(4.0 / q**1.5),
        c_of_zeta=float(c),
        dist_sq_segment=dist_sq_to_segment(z),
    )


def resolvent_norm_bounds(z, zeta_point):
    """Two-sided estimate of ``||(z I - F)^{-1}||`` for ``z`` on the normal through ``zeta``.

    Returns ``(lower, upper)``. For ``zeta != 0`` the upper bound is
    ``A / (|zeta| delta)`` with ``delta = |z - zeta|``; the lower bound
    ``A / (|zeta| delta) - B |zeta| delta`` applies only when ``delta <= |zeta|``
    and is reported as 0 otherwise. For ``zeta = 0`` the bounds are
    ``2A/|z|^2 - B`` and ``2A/|z|^2``.
    """
    b = resolvent_bound(z, zeta_point if zeta_point != 0 else 1.0)
    rz = abs(complex(zeta_point))
    delta = abs(complex(z) - complex(zeta_point))
    if rz == 0:
        upper = 2 * b.a_of_z / abs(complex(z)) ** 2
        return upper - b.b_of_z, upper
    upper = b.a_of_z / (rz * delta)
    lower = upper - b.b_of_z * rz * delta if delta <= rz else 0.0
    return lower, upper


def resolvent_operator_norm(z):
    """``sup_mu ||(z I - F(mu))^{-1}||`` in closed form.

    With ``u = 1 / dist(z^2, [0, i/2])`` and ``c = 2|z|^2 + 1`` the sup equals
    ``sqrt((c u^2 + sqrt(c^2 u^4 - 4 u^2)) / 2)``.
    """
    d = dist_sq_to_segment(z)
    if d == 0:
        raise SingularMatrixError(f"z = {z} lies on the spectrum")
    u = 1.0 / d
    c = 2 * abs(complex(z)) ** 2 + 1
    return float(np.sqrt(0.5 * (c * u * u + np.sqrt(max(0.0, c * c * u**4 - 4 * u * u)))))
