"""Operators realized in the model space.

Every operator here is ``U^{-1} M_G U`` for a field ``G(mu)`` of 2x2
matrices acting pointwise on ``(plus, minus)``. Functions of the truncated
Fourier operator use ``G = h(F(mu))``; the commuting operator ``L`` uses the
scalar field ``mu^2 + 1/4``.
"""

import warnings

import numpy as np
from scipy.optimize import minimize_scalar

from .admissible import (
    Constant,
    Indicator,
    Product,
    SpectralSet,
    Sum,
    admissible_norm,
    decompose,
    ess_dist_zero,
    is_admissible_set,
    sample_grid,
)
from .errors import DomainWarning, NotAdmissibleError, PlanMismatchError, SpectralPointError, ValidationError
from .mellin import ModelVector, forward_transform, inverse_transform, reference_plan
from .symbol import (
    dist_to_segment,
    matrix_from_parts,
    norm2,
    param_map,
    resolvent_matrix,
    symbol_adjoint,
    symbol_entries,
    symbol_matrix,
    zeta_modulus,
)

__all__ = [
    "MatrixField",
    "multiply",
    "apply_field",
    "apply_operator_function",
    "apply_fourier",
    "apply_adjoint",
    "apply_resolvent",
    "spectral_projector_apply",
    "operator_norm",
    "symbol_norm_at",
    "tail_norm",
    "apply_L",
    "improper_spectral_integral",
    "simple_function",
    "simple_function_integral",
]


class MatrixField:
    """2x2 matrices ``G(mu_k)`` on a plan's mu grid, with an optional ``mu -> inf`` limit."""

    __slots__ = ("plan", "mats", "tail")

    def __init__(self, plan, mats, tail=None):
        mats = np.asarray(mats, dtype=complex)
        if mats.shape != (plan.n // 2, 2, 2):
            raise ValidationError(f"field must have shape {(plan.n // 2, 2, 2)}, got {mats.shape}")
        if not np.all(np.isfinite(mats)):
            raise ValidationError("field entries must be finite")
        self.plan = plan
        self.mats = mats
        self.tail = None if tail is None else np.asarray(tail, dtype=complex)

    @classmethod
    def identity(cls, plan):
        return cls(plan, np.broadcast_to(np.eye(2, dtype=complex), (plan.n // 2, 2, 2)), np.eye(2))

    @classmethod
    def from_spec(cls, h, plan):
        """``h(F(mu_k))`` built from the even part and odd quotient of ``h``."""
        mu = plan.mu
        even, odd_q = h.parts(zeta_modulus(mu))
        if not (np.all(np.isfinite(even)) and np.all(np.isfinite(odd_q))):
            raise NotAdmissibleError("h(F(mu)) is not finite on the grid")
        f_pm, f_mp = symbol_entries(mu)
        return cls(plan, matrix_from_parts(even, odd_q * f_pm, odd_q * f_mp), _tail_matrix(h))

    def __matmul__(self, other):
        if other.plan != self.plan:
            raise PlanMismatchError("fields live on different plans")
        tail = None if self.tail is None or other.tail is None else self.tail @ other.tail
        return MatrixField(self.plan, self.mats @ other.mats, tail)

    def sup_norm(self):
        """``max_k ||G(mu_k)||``, including the ``mu -> inf`` limit when known."""
        value = float(np.max(norm2(self.mats)))
        if self.tail is not None:
            value = max(value, norm2(self.tail))
        return value


def _tail_matrix(h):
    # F(mu) -> [[0, e^{i phi}], [0, 0]] as mu -> inf; the phase is irrelevant for norms
    t = h.tail()
    if t is None:
        return None
    e, o = t
    return np.array([[e, o], [0.0, e]], dtype=complex)


def multiply(g, y):
    """``(M_G y)(mu_k) = G(mu_k) y(mu_k)``."""
    if g.plan != y.plan:
        raise PlanMismatchError("field and vector live on different plans")
    out = np.einsum("kij,kj->ki", g.mats, y.stacked())
    return ModelVector.from_stacked(y.plan, out)


def apply_field(g, x):
    """``U^{-1} M_G U x``."""
    if g.plan != x.plan:
        raise PlanMismatchError("field and signal live on different plans")
    return inverse_transform(multiply(g, forward_transform(x)))


def _require_admissible(h):
    norm = admissible_norm(h)
    if not np.isfinite(norm):
        raise NotAdmissibleError(
            "h is not admissible: (h(zeta) - h(-zeta)) / (2 zeta) is unbounded as zeta -> 0"
        )
    return norm


def apply_operator_function(h, x):
    """``h(F_{R+}) x = U^{-1} M_{h(F)} U x`` for an admissible spec ``h``."""
    _require_admissible(h)
    return apply_field(MatrixField.from_spec(h, x.plan), x)


def apply_fourier(x):
    """The truncated Fourier operator applied through its symbol."""
    return apply_field(MatrixField(x.plan, symbol_matrix(x.plan.mu)), x)


def apply_adjoint(x):
    """The adjoint operator, ``U^{-1} M_{F^*} U x``."""
    return apply_field(MatrixField(x.plan, symbol_adjoint(x.plan.mu)), x)


def apply_resolvent(z, x):
    """``(z I - F_{R+})^{-1} x`` for ``z`` off the spectral segment."""
    z = complex(z)
    d = dist_to_segment(z)
    if d <= 1e-12:
        raise SpectralPointError(f"z = {z} is within {d:.3g} of the spectrum")
    return apply_field(MatrixField(x.plan, resolvent_matrix(z, x.plan.mu)), x)


def spectral_projector_apply(d, x):
    """``P(d) x = 1_d(F_{R+}) x``; ``d`` must be admissible."""
    if not is_admissible_set(d):
        asym = decompose(d)[1]
        raise NotAdmissibleError(
            f"spectral set {d} is not admissible: its asymmetric part {asym} "
            f"is not essentially separated from zero (ess dist = {ess_dist_zero(asym):.3g})"
        )
    return apply_field(MatrixField.from_spec(Indicator(d), x.plan), x)


def symbol_norm_at(h, mu):
    """``||h(F(mu))||`` for scalar or array ``mu``."""
    mu = np.asarray(mu, dtype=float)
    even, odd_q = h.parts(zeta_modulus(mu))
    f_pm, f_mp = symbol_entries(mu)
    return norm2(matrix_from_parts(even, odd_q * f_pm, odd_q * f_mp))


def tail_norm(h):
    """``lim_{mu -> inf} ||h(F(mu))|| = (|o| + sqrt(|o|^2 + 4|e|^2)) / 2`` from the parts at 0."""
    t = h.tail()
    if t is None:
        return float("inf")
    e, o = abs(t[0]), abs(t[1])
    return 0.5 * (o + np.sqrt(o * o + 4 * e * e))


def operator_norm(h, plan=None):
    """``||h(F_{R+})|| = sup_mu ||h(F(mu))||``.

    The sup is taken over the plan's mu grid, the images under the parameter
    map of a dense ``r`` sample with both sides of every breakpoint, and the
    analytic ``mu -> inf`` limit, then refined locally around the maximiser.
    """
    plan = plan or reference_plan()
    r = sample_grid(h, n_uniform=20_000)
    mu = np.concatenate([plan.mu, param_map(r)])
    vals = symbol_norm_at(h, mu)
    if not np.all(np.isfinite(vals)):
        return float("inf")
    best = max(float(np.max(vals)), tail_norm(h))
    order = np.argsort(mu)
    mu, vals = mu[order], vals[order]
    k = int(np.argmax(vals))
    if 0 < k < mu.size - 1 and mu[k + 1] > mu[k - 1]:
        res = minimize_scalar(
            lambda m: -float(symbol_norm_at(h, m)),
            bounds=(mu[k - 1], mu[k + 1]),
            method="bounded",
            options={"xatol": 1e-12},
        )
        best = max(best, -float(res.fun))
    return best


def apply_L(x, tail_tol=1e-6):
    """``L x = -(t^2 x')'`` as ``U^{-1} (mu^2 + 1/4) U x``.

    Warns with :class:`DomainWarning` when the multiplied transform keeps more
    than ``tail_tol`` of its squared norm in the top tenth of the mu grid,
    i.e. ``x`` is too rough for the discrete domain of ``L``.
    """
    plan = x.plan
    y = forward_transform(x)
    lam = plan.eigenvalue()
    ly = ModelVector(plan, lam * y.plus, lam * y.minus)
    sq = np.abs(ly.plus) ** 2 + np.abs(ly.minus) ** 2
    total = float(np.sum(sq))
    top = sq[int(0.9 * sq.size):]
    if total > 0 and float(np.sum(top)) > tail_tol * total:
        warnings.warn("L x has significant mass near the grid's top frequency", DomainWarning, stacklevel=2)
    return inverse_transform(ly)


def improper_spectral_integral(h, x, eps_schedule):
    """``[P(Delta(eps)) h(F) x for eps in eps_schedule]`` with ``Delta(eps) = [-A,-eps] U [eps,A]``."""
    eps_schedule = [float(e) for e in eps_schedule]
    if any(e <= 0 for e in eps_schedule) or any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ValidationError("eps_schedule must be positive and strictly decreasing")
    _require_admissible(h)
    return [
        apply_field(MatrixField.from_spec(Product(Indicator(SpectralSet.delta_sym(e)), h), x.plan), x)
        for e in eps_schedule
    ]


def simple_function(terms):
    """Canonical spec of ``sum_k a_k 1_{Delta_k}``.

    The sets are refined into disjoint elementary pieces and adjacent pieces
    with equal value are merged, so any two representations of the same
    simple function give the same spec.
    """
    terms = [(complex(a), d) for a, d in terms]
    cuts = sorted({v for _, d in terms for v in d.endpoints()})
    pieces = []
    for lo, hi in zip(cuts, cuts[1:]):
        mid = 0.5 * (lo + hi)
        value = sum((a for a, d in terms if d.contains(mid)), 0j)
        if value == 0:
            continue
        if pieces and pieces[-1][0] == value and pieces[-1][2] == lo:
            pieces[-1] = (value, pieces[-1][1], hi)
        else:
            pieces.append((value, lo, hi))
    if not pieces:
        return Constant(0.0)
    return Sum(*[Product(Constant(v), Indicator(SpectralSet([(lo, hi)]))) for v, lo, hi in pieces])


def simple_function_integral(terms, x):
    """``(sum_k a_k P(Delta_k)) x`` via the canonical simple function."""
    h = simple_function(terms)
    return apply_operator_function(h, x)
