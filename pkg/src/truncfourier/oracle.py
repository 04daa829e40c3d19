"""Independent ground truth used to validate the model-space machinery.

Nothing here goes through the FFT or the symbol: Fourier integrals are done
by direct quadrature, Mellin coefficients by explicit sums, ``L`` by finite
differences and 2x2 algebra by cofactors and the quadratic formula.
"""

from dataclasses import dataclass

import numpy as np

from .errors import SingularMatrixError, ValidationError
from .mellin import SampledSignal

__all__ = [
    "QuadratureSpec",
    "Brute2x2",
    "direct_truncated_fourier",
    "direct_mellin",
    "finite_difference_L",
    "brute_2x2",
    "contour_matrix_function",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Regularizer ``e^{-eps_reg xi}``, cutoff ``xi_max`` and node budget.

    ``n_nodes`` is the number of quadrature nodes (odd, ``<=`` the plan size);
    ``None`` uses every grid node.
    """

    eps_reg: float = 0.0
    xi_max: float = np.inf
    n_nodes: int | None = None

    def __post_init__(self):
        if self.eps_reg < 0:
            raise ValidationError("eps_reg must be nonnegative")
        if self.eps_reg > 0 and self.xi_max * self.eps_reg < 30:
            raise ValidationError("need xi_max * eps_reg >= 30 so the regularized tail is negligible")


def _moments(theta):
    """``M_k = int_{-1}^{1} u^k e^{i theta u} du`` for ``k = 0, 1, 2``."""
    theta = np.asarray(theta, dtype=float)
    small = np.abs(theta) < 1.0
    th = np.where(small, 1.0, theta)
    m0 = 2 * np.sin(th) / th
    m1 = (2 * np.cos(th) - m0) / (1j * th)
    m2 = 2 * np.sin(th) / th - 2 * m1 / (1j * th)
    # power series where the closed forms cancel
    s0 = np.zeros(theta.shape, dtype=complex)
    s1 = np.zeros(theta.shape, dtype=complex)
    s2 = np.zeros(theta.shape, dtype=complex)
    term = np.ones(theta.shape, dtype=complex)
    ths = np.where(small, theta, 0.0)
    for n in range(24):
        if n % 2 == 0:
            s0 += term * 2 / (n + 1)
            s2 += term * 2 / (n + 3)
        else:
            s1 += term * 2 / (n + 2)
        term = term * (1j * ths) / (n + 1)
    return np.where(small, s0, m0), np.where(small, s1, m1), np.where(small, s2, m2)


def direct_truncated_fourier(x, t, q=None):
    """``(1/sqrt(2 pi)) int_0^xi_max x(xi) e^{i t xi - eps_reg xi} d xi`` for each ``t``.

    Composite Simpson-type rule on the native grid ``xi_j = t_j``: on each
    pair of cells the (damped) samples are replaced by their quadratic
    interpolant through the three nodes, and the product with ``e^{i t xi}``
    is integrated exactly, so the rule stays accurate however fast the
    kernel oscillates. On ``[0, t_0]`` the signal is frozen at ``x(t_0)``.
    """
    q = q or QuadratureSpec()
    plan = x.plan
    xi, v = plan.t, x.values
    keep = xi <= q.xi_max
    xi, v = xi[keep], v[keep] * np.exp(-q.eps_reg * xi[keep])
    if q.n_nodes is not None:
        step = max(1, (xi.size - 1) // max(2, q.n_nodes - 1))
        xi, v = xi[::step], v[::step]
    if xi.size % 2 == 0:
        xi, v = xi[:-1], v[:-1]
    x0, x1, x2 = xi[0:-2:2], xi[1:-1:2], xi[2::2]
    f0, f1, f2 = v[0:-2:2], v[1:-1:2], v[2::2]
    c, h = 0.5 * (x0 + x2), 0.5 * (x2 - x0)
    u1 = (x1 - c) / h
    # p(u) = alpha + beta u + gamma u^2 through (-1, f0), (u1, f1), (1, f2)
    gamma = (f1 - 0.5 * (f0 + f2) - 0.5 * (f2 - f0) * u1) / (u1 * u1 - 1)
    beta = 0.5 * (f2 - f0)
    alpha = 0.5 * (f0 + f2) - gamma

    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t_arr.shape, dtype=complex)
    for lo in range(0, t_arr.size, 32):
        tk = t_arr[lo:lo + 32, None]
        m0, m1, m2 = _moments(tk * h[None, :])
        panel = (alpha * m0 + beta * m1 + gamma * m2) * h * np.exp(1j * tk * c)
        out[lo:lo + 32] = np.sum(panel, axis=1)
    # first cell [0, t_0]: int_0^{t_0} e^{i t xi} d xi = t_0 M_0(t t_0 / 2) e^{i t t_0 / 2} / 2
    out += v[0] * 0.5 * xi[0] * _moments(0.5 * t_arr * xi[0])[0] * np.exp(0.5j * t_arr * xi[0])
    out /= np.sqrt(2 * np.pi)
    return out if np.ndim(t) else complex(out[0])


def direct_mellin(x, mu):
    """``(int t^{-1/2 - i mu} x dt, int t^{-1/2 + i mu} x dt)`` as explicit sums over the s grid."""
    plan = x.plan
    z = x.z()
    mu_arr = np.atleast_1d(np.asarray(mu, dtype=float))
    phase = np.exp(-1j * np.outer(mu_arr, plan.s))
    plus = plan.ds * (phase @ z)
    minus = plan.ds * (np.conj(phase) @ z)
    if np.ndim(mu) == 0:
        return complex(plus[0]), complex(minus[0])
    return plus, minus


def finite_difference_L(x):
    """``-(t^2 x')'`` by the conservative three-point stencil in ``s = ln t``.

    With ``x' = (dx/ds) / t`` the operator is ``-(1/t) d/ds (t dx/ds)``, and
    the flux ``t dx/ds`` is taken at half nodes ``t_{j+1/2} = e^{s_j + ds/2}``.
    The two boundary rows are zero.
    """
    plan = x.plan
    v, s, ds = x.values, plan.s, plan.ds
    t = plan.t
    t_half = np.exp(s[:-1] + 0.5 * ds)
    flux = t_half * np.diff(v) / ds
    out = np.zeros(plan.n, dtype=complex)
    out[1:-1] = -(flux[1:] - flux[:-1]) / (ds * t[1:-1])
    return SampledSignal(plan, out)


@dataclass(frozen=True)
class Brute2x2:
    inverse: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, unit norm
    singular_values: np.ndarray  # descending


def brute_2x2(m, require_inverse=True):
    """Cofactor inverse, quadratic-formula eigenpairs and closed-form singular values."""
    m = np.asarray(m, dtype=complex)
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    det = a * d - b * c
    scale = max(np.max(np.abs(m)) ** 2, 1e-300)
    if abs(det) <= 1e-15 * scale:
        if require_inverse:
            raise SingularMatrixError("matrix is singular")
        inverse = np.full((2, 2), np.nan, dtype=complex)
    else:
        inverse = np.array([[d, -b], [-c, a]]) / det
    half_tr = 0.5 * (a + d)
    root = np.sqrt(half_tr * half_tr - det)
    lam = np.array([half_tr + root, half_tr - root])
    vecs = np.empty((2, 2), dtype=complex)
    for k, lk in enumerate(lam):
        # null vector of m - lk I from whichever row is larger
        r1 = np.array([a - lk, b])
        r2 = np.array([c, d - lk])
        row = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
        v = np.array([-row[1], row[0]]) if np.linalg.norm(row) > 0 else np.eye(2)[k]
        vecs[:, k] = v / np.linalg.norm(v)
    fro2 = float(np.sum(np.abs(m) ** 2))
    disc = np.sqrt(max(0.0, fro2 * fro2 - 4 * abs(det) ** 2))
    s1 = np.sqrt(0.5 * (fro2 + disc))
    s2 = abs(det) / s1 if s1 > 0 else 0.0
    return Brute2x2(inverse=inverse, eigenvalues=lam, eigenvectors=vecs, singular_values=np.array([s1, s2]))


def contour_matrix_function(h, m, distance=0.2, n_nodes=2048):
    """``(1/2 pi i) oint h(w) (w I - M)^{-1} dw`` over a rectangle around the spectral segment.

    ``h`` is a callable holomorphic near the segment. The rectangle is
    aligned with the segment and sits ``distance`` away from it. Each side
    gets a share of the ``n_nodes`` trapezoid nodes proportional to its
    length, with the corners as nodes.
    """
    m = np.asarray(m, dtype=complex)
    omega = np.exp(0.25j * np.pi)
    half_len = 1 / np.sqrt(2) + distance
    corners = omega * np.array(
        [-half_len - 1j * distance, half_len - 1j * distance, half_len + 1j * distance, -half_len + 1j * distance]
    )
    ends = np.append(corners[1:], corners[0])
    sides = np.abs(ends - corners)
    counts = np.maximum(2, np.round(n_nodes * sides / sides.sum()).astype(int))
    eye = np.eye(2)
    total = np.zeros((2, 2), dtype=complex)
    for start, stop, k in zip(corners, ends, counts):
        w = start + (stop - start) * np.linspace(0.0, 1.0, k + 1)
        weights = np.full(k + 1, (stop - start) / k)
        weights[[0, -1]] *= 0.5
        for wk, dk in zip(w, weights):
            total += h(wk) * np.linalg.solve(wk * eye - m, eye) * dk
    return total / (2j * np.pi)
