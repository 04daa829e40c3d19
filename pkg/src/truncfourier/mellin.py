"""The unitary transform ``U`` from ``L^2(R+)`` onto the model space.

With ``s = ln t`` and ``z(s) = e^{s/2} x(e^s)`` the transform is a Fourier
transform in ``s``::

    plus(mu)  = int z(s) e^{-i mu s} ds
    minus(mu) = int z(s) e^{+i mu s} ds,         mu >= 0
    z(s) = int_0^inf [plus e^{i mu s} + minus e^{-i mu s}] dmu / 2pi

Discretely we use a uniform ``s`` grid of ``n`` points and a half-shifted
frequency grid ``mu_k = (k + 1/2) dmu``, ``k = 0 .. n/2-1``. The shift puts
every DFT bin strictly on one side of ``mu = 0`` so the positive and
negative halves split the DFT exactly, and the discrete ``U`` is unitary.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PlanMismatchError, ValidationError

__all__ = [
    "REFERENCE_PLAN",
    "TransformPlan",
    "SampledSignal",
    "ModelVector",
    "reference_plan",
    "forward_transform",
    "inverse_transform",
    "parseval_defect",
    "l2_norm",
    "inner",
]

REFERENCE_PLAN = (-40.0, 40.0, 2**14)


def _pairwise_sum(a):
    # numpy's add.reduce is pairwise and deterministic for contiguous input
    return np.add.reduce(np.ascontiguousarray(a))


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Log-grid discretization tying ``t``, ``s = ln t`` and ``mu`` together.

    Grid nodes are ``s_j = s_min + j ds`` for ``j = 0 .. n-1`` with
    ``ds = (s_max - s_min) / n`` (the right end is excluded, as in a
    periodic grid).
    """

    s_min: float
    s_max: float
    n: int
    s: np.ndarray = field(init=False, repr=False)
    t: np.ndarray = field(init=False, repr=False)
    mu: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 4 or n & (n - 1):
            raise ValidationError(f"n must be a power of two >= 4, got {self.n}")
        if not (np.isfinite(self.s_min) and np.isfinite(self.s_max)) or self.s_max <= self.s_min:
            raise ValidationError("need finite s_min < s_max")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s_min", float(self.s_min))
        object.__setattr__(self, "s_max", float(self.s_max))
        s = self.s_min + self.ds * np.arange(n)
        for name, arr in (("s", s), ("t", np.exp(s)), ("mu", (np.arange(n // 2) + 0.5) * self.dmu)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def length(self):
        return self.s_max - self.s_min

    @property
    def ds(self):
        return self.length / self.n

    @property
    def dmu(self):
        return 2.0 * np.pi / self.length

    @property
    def key(self):
        return (self.s_min, self.s_max, self.n)

    def __eq__(self, other):
        return isinstance(other, TransformPlan) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def eigenvalue(self):
        """``lambda(mu) = mu^2 + 1/4`` on the plan's mu grid."""
        return self.mu**2 + 0.25

    def interior(self, fraction=0.1):
        """Mask of ``s`` nodes away from both ends by ``fraction`` of the range."""
        pad = fraction * self.length
        return (self.s > self.s_min + pad) & (self.s < self.s_max - pad)

    def to_dict(self):
        return {"s_min": self.s_min, "s_max": self.s_max, "n": self.n}

    def signal(self, func):
        """Sample ``func(t)`` on the plan's t grid."""
        return SampledSignal(self, func(self.t))

    def signal_from_z(self, z):
        """Build a signal from its log-variable form ``z(s) = e^{s/2} x(e^s)``."""
        z = np.asarray(z(self.s) if callable(z) else z, dtype=complex)
        return SampledSignal(self, z * np.exp(-0.5 * self.s))


def reference_plan():
    return TransformPlan(*REFERENCE_PLAN)


class SampledSignal:
    """Samples ``x(t_j)`` of a function in ``L^2(R+)`` on a plan's t grid."""

    __slots__ = ("plan", "values")

    def __init__(self, plan, values):
        values = np.array(values, dtype=complex)
        if values.shape != (plan.n,):
            raise ValidationError(f"expected {plan.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("signal samples must be finite")
        values.setflags(write=False)
        self.plan = plan
        self.values = values

    def z(self):
        """Log-variable form ``e^{s/2} x(e^s)``."""
        return self.values * np.exp(0.5 * self.plan.s)

    def norm(self):
        """``||x||_{L^2(R+)} = (int |z(s)|^2 ds)^{1/2}`` by the rectangle rule."""
        return float(np.sqrt(self.plan.ds * _pairwise_sum(np.abs(self.z()) ** 2)))

    def _check(self, other):
        if not isinstance(other, SampledSignal):
            return NotImplemented
        if other.plan != self.plan:
            raise PlanMismatchError("signals live on different plans")
        return other

    def __add__(self, other):
        other = self._check(other)
        return SampledSignal(self.plan, self.values + other.values)

    def __sub__(self, other):
        other = self._check(other)
        return SampledSignal(self.plan, self.values - other.values)

    def __mul__(self, c):
        return SampledSignal(self.plan, self.values * complex(c))

    __rmul__ = __mul__

    def __neg__(self):
        return SampledSignal(self.plan, -self.values)

    def __repr__(self):
        return f"SampledSignal(plan={self.plan!r}, norm={self.norm():.6g})"


class ModelVector:
    """Two-component function ``(plus, minus)`` on a plan's mu grid."""

    __slots__ = ("plan", "plus", "minus")

    def __init__(self, plan, plus, minus):
        plus = np.array(plus, dtype=complex)
        minus = np.array(minus, dtype=complex)
        m = plan.n // 2
        if plus.shape != (m,) or minus.shape != (m,):
            raise ValidationError(f"model components must have length {m}")
        plus.setflags(write=False)
        minus.setflags(write=False)
        self.plan = plan
        self.plus = plus
        self.minus = minus

    def stacked(self):
        """Array of shape ``(n/2, 2)`` with rows ``(plus, minus)``."""
        return np.stack([self.plus, self.minus], axis=-1)

    @classmethod
    def from_stacked(cls, plan, arr):
        arr = np.asarray(arr)
        return cls(plan, arr[:, 0], arr[:, 1])

    def norm(self):
        """Model-space norm with measure ``dmu / 2 pi``."""
        sq = np.abs(self.plus) ** 2 + np.abs(self.minus) ** 2
        return float(np.sqrt(self.plan.dmu / (2 * np.pi) * _pairwise_sum(sq)))

    def __add__(self, other):
        if other.plan != self.plan:
            raise PlanMismatchError("model vectors live on different plans")
        return ModelVector(self.plan, self.plus + other.plus, self.minus + other.minus)

    def __mul__(self, c):
        return ModelVector(self.plan, self.plus * complex(c), self.minus * complex(c))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ModelVector(plan={self.plan!r}, norm={self.norm():.6g})"


def _phases(plan):
    m = np.fft.fftfreq(plan.n) * plan.n
    half = np.exp(-0.5j * plan.dmu * (plan.s - plan.s_min))
    bins = np.exp(-1j * (m + 0.5) * plan.dmu * plan.s_min)
    return half, bins


def forward_transform(x):
    """``U x`` via one FFT of the half-frequency-shifted log samples."""
    plan = x.plan
    half, bins = _phases(plan)
    spec = np.fft.fft(x.z() * half) * (plan.ds * bins)
    m = plan.n // 2
    return ModelVector(plan, spec[:m], spec[m:][::-1])


def inverse_transform(y):
    """``U^{-1} y`` with the ``dmu / 2 pi`` normalization."""
    plan = y.plan
    half, bins = _phases(plan)
    spec = np.concatenate([y.plus, y.minus[::-1]]) * np.conj(bins)
    z = np.fft.ifft(spec) * (plan.n * plan.dmu / (2 * np.pi)) * np.conj(half)
    return plan.signal_from_z(z)


def l2_norm(x):
    return x.norm()


def inner(x, y):
    """``<x, y> = int x conj(y) dt`` on a common plan."""
    if x.plan != y.plan:
        raise PlanMismatchError("signals live on different plans")
    return complex(x.plan.ds * _pairwise_sum(x.z() * np.conj(y.z())))


def parseval_defect(x):
    """Relative gap ``| ||x||^2 - ||Ux||^2 | / ||x||^2``; zero for the zero signal."""
    nx = x.norm() ** 2
    if nx == 0:
        return 0.0
    return abs(nx - forward_transform(x).norm() ** 2) / nx
