"""Spectral sets, spectral function specs and the admissible-function norm.

A point of the spectrum is ``zeta = r e^{i pi/4}`` with ``r`` in
``[-1/sqrt 2, 1/sqrt 2]``. Every function spec is represented through the
pair of *parts* at ``r > 0``::

    even(r)  = (h(zeta) + h(-zeta)) / 2
    odd_q(r) = (h(zeta) - h(-zeta)) / (2 zeta)

which is what the functional calculus consumes. Families compute the parts
in closed form where possible so that nothing cancels as ``r -> 0``. The
admissible norm is ``ess sup_r (|even| + |odd_q|)``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NotInvertibleError, SpectralPointError, ValidationError
from .symbol import OMEGA, SPECTRAL_RADIUS, dist_sq_to_segment, dist_to_segment

__all__ = [
    "A",
    "SpectralSet",
    "SpectralFunction",
    "Constant",
    "Identity",
    "Polynomial",
    "Indicator",
    "ResolventKernel",
    "SampledTable",
    "Sum",
    "Product",
    "Reciprocal",
    "Conjugate",
    "EssentialImage",
    "decompose",
    "ess_dist_zero",
    "is_admissible_set",
    "admissible_norm",
    "inverse_spec",
    "essential_image",
    "ess_closure",
    "sample_grid",
    "spec_from_json",
    "spec_to_json",
]

A = SPECTRAL_RADIUS
_MERGE_TOL = 1e-15


# ---------------------------------------------------------------- sets


class SpectralSet:
    """Finite union of closed intervals of ``[-A, A]`` in the ``r`` coordinate.

    The representation is canonical: intervals are clipped to ``[-A, A]``,
    sorted, merged when they touch or overlap, and zero-length pieces are
    dropped (they carry no measure).
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals=()):
        pieces = []
        for pair in intervals:
            try:
                lo, hi = (float(v) for v in pair)
            except (TypeError, ValueError):
                raise ValidationError(f"interval must be a pair of numbers, got {pair!r}") from None
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise ValidationError("interval endpoints must be finite")
            if lo > hi:
                raise ValidationError(f"interval [{lo}, {hi}] has lo > hi")
            lo, hi = max(lo, -A), min(hi, A)
            if hi - lo > _MERGE_TOL:
                pieces.append((lo, hi))
        pieces.sort()
        merged = []
        for lo, hi in pieces:
            if merged and lo <= merged[-1][1] + _MERGE_TOL:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        self.intervals = tuple(merged)

    # constructors for the sets used throughout
    @classmethod
    def full(cls):
        return cls([(-A, A)])

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def delta_plus(cls, eps):
        """``Delta_+(eps) = [eps, A]``, one branch cut away from zero."""
        return cls([(eps, A)])

    @classmethod
    def delta_minus(cls, eps):
        return cls([(-A, -eps)])

    @classmethod
    def delta_sym(cls, eps):
        """``Delta(eps) = [-A, -eps] U [eps, A]``, the complement of ``V_eps``."""
        return cls([(-A, -eps), (eps, A)])

    def __eq__(self, other):
        return isinstance(other, SpectralSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        body = ", ".join(f"[{lo:.6g}, {hi:.6g}]" for lo, hi in self.intervals)
        return f"SpectralSet({body or 'empty'})"

    def __iter__(self):
        return iter(self.intervals)

    def __bool__(self):
        return bool(self.intervals)

    def is_empty(self):
        return not self.intervals

    def measure(self):
        return float(sum(hi - lo for lo, hi in self.intervals))

    def endpoints(self):
        return np.array([v for pair in self.intervals for v in pair], dtype=float)

    def contains(self, r):
        """Membership mask for ``r`` (closed intervals)."""
        r = np.asarray(r, dtype=float)
        out = np.zeros(r.shape, dtype=bool)
        for lo, hi in self.intervals:
            out |= (r >= lo) & (r <= hi)
        return out

    def mirror(self):
        """``-Delta``."""
        return SpectralSet([(-hi, -lo) for lo, hi in self.intervals])

    def union(self, other):
        return SpectralSet(self.intervals + other.intervals)

    def intersection(self, other):
        out = []
        for a_lo, a_hi in self.intervals:
            for b_lo, b_hi in other.intervals:
                lo, hi = max(a_lo, b_lo), min(a_hi, b_hi)
                if hi > lo:
                    out.append((lo, hi))
        return SpectralSet(out)

    def complement(self):
        """Closure of ``[-A, A]`` minus the set."""
        out, cursor = [], -A
        for lo, hi in self.intervals:
            if lo > cursor:
                out.append((cursor, lo))
            cursor = hi
        if cursor < A:
            out.append((cursor, A))
        return SpectralSet(out)

    def difference(self, other):
        """Closure of ``self \\ other`` (equal to the difference up to measure zero)."""
        return self.intersection(other.complement())

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def is_disjoint(self, other):
        return self.intersection(other).is_empty()

    def to_json(self):
        return [[lo, hi] for lo, hi in self.intervals]

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, (list, tuple)):
            raise ValidationError("a spectral set is a list of [r_lo, r_hi] pairs")
        return cls(data)


def decompose(d):
    """Split ``d`` into the symmetric part ``d & -d`` and the asymmetric part ``d \\ -d``."""
    mirrored = d.mirror()
    return d.intersection(mirrored), d.difference(mirrored)


def ess_dist_zero(d):
    """``ess inf |r|`` over ``d``; ``inf`` for the empty set."""
    if d.is_empty():
        return float("inf")
    best = float("inf")
    for lo, hi in d.intervals:
        if lo <= 0 <= hi:
            return 0.0
        best = min(best, abs(lo) if lo > 0 else abs(hi))
    return best


def is_admissible_set(d):
    """The projector ``1_d(F)`` is bounded iff the asymmetric part avoids a neighbourhood of 0."""
    return ess_dist_zero(decompose(d)[1]) > 0


def ess_closure(d):
    """Essential closure. Normalization already removed null pieces, so this is ``d``."""
    return SpectralSet(d.intervals)


# ---------------------------------------------------------------- function specs


def _as_complex(value, what="value"):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        value = complex(float(value[0]), float(value[1]))
    try:
        return complex(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{what} must be a number or [re, im], got {value!r}") from None


def _complex_json(c):
    c = complex(c)
    return c.real if c.imag == 0 else [c.real, c.imag]


class SpectralFunction:
    """Base class for spectral function specs.

    Subclasses implement ``parts(r)`` for ``r >= 0`` and ``tail()``, the
    limit of the parts as ``r -> 0+`` (``None`` when the odd quotient
    diverges, i.e. the function is not admissible).
    """

    kind = "abstract"

    def parts(self, r):
        raise NotImplementedError

    def tail(self):
        raise NotImplementedError

    def breakpoints(self):
        """Values of ``r > 0`` where the parts may jump or peak."""
        return np.empty(0)

    def analytic_norm(self):
        """Closed-form admissible norm, or ``None`` if only sampling applies."""
        return None

    def to_json(self):
        raise NotImplementedError

    def evaluate(self, r):
        """``h(r e^{i pi/4})`` for real ``r`` of either sign."""
        r = np.asarray(r, dtype=float)
        a = np.abs(r)
        even, odd_q = self.parts(a)
        return even + np.sign(r) * OMEGA * a * odd_q

    def __call__(self, r):
        return self.evaluate(r)

    def __add__(self, other):
        return Sum(self, other)

    def __mul__(self, other):
        return Product(self, other)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()!r})"


class Constant(SpectralFunction):
    kind = "constant"

    def __init__(self, c=1.0):
        self.c = _as_complex(c, "constant")

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        return np.full(r.shape, self.c, dtype=complex), np.zeros(r.shape, dtype=complex)

    def tail(self):
        return self.c, 0j

    def analytic_norm(self):
        return abs(self.c)

    def to_json(self):
        return {"kind": self.kind, "value": _complex_json(self.c)}


class Identity(SpectralFunction):
    """``h(zeta) = zeta``."""

    kind = "identity"

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        return np.zeros(r.shape, dtype=complex), np.ones(r.shape, dtype=complex)

    def tail(self):
        return 0j, 1 + 0j

    def analytic_norm(self):
        return 1.0

    def to_json(self):
        return {"kind": self.kind}


class Polynomial(SpectralFunction):
    """``h(zeta) = sum_k c_k zeta^k`` with coefficients in increasing degree."""

    kind = "polynomial"

    def __init__(self, coeffs):
        coeffs = [_as_complex(c, "coefficient") for c in coeffs]
        if not coeffs:
            raise ValidationError("polynomial needs at least one coefficient")
        self.coeffs = np.array(coeffs, dtype=complex)

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        zeta = OMEGA * r
        even = np.zeros(r.shape, dtype=complex)
        odd_q = np.zeros(r.shape, dtype=complex)
        # Horner in zeta^2 for each parity
        z2 = zeta * zeta
        for c in self.coeffs[0::2][::-1]:
            even = even * z2 + c
        for c in self.coeffs[1::2][::-1]:
            odd_q = odd_q * z2 + c
        return even, odd_q

    def tail(self):
        c1 = self.coeffs[1] if len(self.coeffs) > 1 else 0j
        return complex(self.coeffs[0]), complex(c1)

    def to_json(self):
        return {"kind": self.kind, "coeffs": [_complex_json(c) for c in self.coeffs]}


class Indicator(SpectralFunction):
    """``h = 1_Delta``."""

    kind = "indicator"

    def __init__(self, d):
        self.set = d if isinstance(d, SpectralSet) else SpectralSet(d)

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        hp = self.set.contains(r).astype(float)
        hm = self.set.contains(-r).astype(float)
        num = hp - hm
        with np.errstate(divide="ignore", invalid="ignore"):
            odd_q = np.where(num == 0, 0.0, num / (2.0 * np.where(r == 0, 1.0, r))) / OMEGA
        odd_q = np.where((num != 0) & (r == 0), np.inf, odd_q)
        return 0.5 * (hp + hm) + 0j, odd_q.astype(complex)

    def tail(self):
        d = 1e-300
        right = any(lo <= d and hi >= d for lo, hi in self.set.intervals)
        left = any(lo <= -d and hi >= -d for lo, hi in self.set.intervals)
        if right != left:
            return None
        return complex(float(right)), 0j

    def breakpoints(self):
        pts = np.abs(self.set.endpoints())
        return np.unique(pts[pts > 0])

    def analytic_norm(self):
        sym, asym = decompose(self.set)
        value = 0.0
        if not sym.is_empty():
            value = 1.0
        if not asym.is_empty():
            dist = ess_dist_zero(asym)
            value = max(value, float("inf") if dist == 0 else 0.5 + 0.5 / dist)
        return value

    def to_json(self):
        return {"kind": self.kind, "set": self.set.to_json()}


class ResolventKernel(SpectralFunction):
    """``h(zeta) = 1 / (z - zeta)`` for ``z`` off the spectral segment."""

    kind = "resolvent"

    def __init__(self, z):
        self.z = _as_complex(z, "z")
        if dist_to_segment(self.z) <= 1e-12:
            raise SpectralPointError(f"z = {self.z} lies on the spectrum")

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        den = self.z * self.z - 1j * r * r  # z^2 - zeta^2
        return self.z / den, 1.0 / den

    def tail(self):
        return 1.0 / self.z, 1.0 / self.z**2

    def breakpoints(self):
        # |z^2 - i r^2| is smallest at r^2 = clip(Im z^2, 0, 1/2)
        y = float(np.clip((self.z**2).imag, 0.0, 0.5))
        return np.array([np.sqrt(y)]) if y > 0 else np.empty(0)

    def analytic_norm(self):
        return (abs(self.z) + 1.0) / dist_sq_to_segment(self.z)

    def to_json(self):
        return {"kind": self.kind, "z": _complex_json(self.z)}


class SampledTable(SpectralFunction):
    """Linear interpolation of ``(r_k, h_k)``; the table must cover both signs of ``r``."""

    kind = "table"

    def __init__(self, r, h):
        r = np.asarray(r, dtype=float)
        h = np.asarray([_as_complex(v, "table value") for v in h], dtype=complex)
        if r.ndim != 1 or r.shape != h.shape or r.size < 2:
            raise ValidationError("table needs matching 1-d r and h arrays of length >= 2")
        order = np.argsort(r)
        r, h = r[order], h[order]
        if np.any(np.diff(r) <= 0):
            raise ValidationError("table nodes must be distinct")
        if not (r[0] < 0 < r[-1]):
            raise ValidationError("table must cover both signs of r")
        self.r, self.h = r, h
        # exact linear behaviour on both sides of 0
        self._h0 = self._interp(0.0)
        rp = r[r > 0][0]
        rn = r[r < 0][-1]
        self._small = min(rp, -rn)
        self._slope_right = (self._interp(rp) - self._h0) / rp
        self._slope_left = (self._h0 - self._interp(rn)) / (-rn)

    def _interp(self, x):
        return np.interp(x, self.r, self.h.real) + 1j * np.interp(x, self.r, self.h.imag)

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        hp, hm = self._interp(r), self._interp(-r)
        even = 0.5 * (hp + hm)
        with np.errstate(divide="ignore", invalid="ignore"):
            odd_q = (hp - hm) / (2.0 * OMEGA * r)
        near = r < self._small
        even = np.where(near, self._h0 + 0.5 * (self._slope_right - self._slope_left) * r, even)
        odd_q = np.where(near, (self._slope_right + self._slope_left) / (2.0 * OMEGA), odd_q)
        return even, odd_q

    def tail(self):
        return complex(self._h0), complex((self._slope_right + self._slope_left) / (2.0 * OMEGA))

    def breakpoints(self):
        pts = np.abs(self.r)
        return np.unique(pts[(pts > 0) & (pts <= A)])

    def to_json(self):
        return {"kind": self.kind, "r": self.r.tolist(), "h": [_complex_json(v) for v in self.h]}


class Sum(SpectralFunction):
    kind = "sum"

    def __init__(self, *terms):
        if not terms:
            raise ValidationError("sum needs at least one term")
        self.terms = terms

    def parts(self, r):
        even, odd_q = self.terms[0].parts(r)
        for t in self.terms[1:]:
            e, o = t.parts(r)
            even, odd_q = even + e, odd_q + o
        return even, odd_q

    def tail(self):
        tails = [t.tail() for t in self.terms]
        if any(v is None for v in tails):
            return None
        return sum(v[0] for v in tails), sum(v[1] for v in tails)

    def breakpoints(self):
        return np.unique(np.concatenate([t.breakpoints() for t in self.terms]))

    def to_json(self):
        return {"kind": self.kind, "terms": [t.to_json() for t in self.terms]}


class Product(SpectralFunction):
    kind = "product"

    def __init__(self, *factors):
        if not factors:
            raise ValidationError("product needs at least one factor")
        self.factors = factors

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        z2 = 1j * r * r
        even, odd_q = self.factors[0].parts(r)
        for f in self.factors[1:]:
            e, o = f.parts(r)
            even, odd_q = even * e + z2 * odd_q * o, even * o + odd_q * e
        return even, odd_q

    def tail(self):
        tails = [f.tail() for f in self.factors]
        if any(v is None for v in tails):
            return None
        even, odd_q = tails[0]
        for e, o in tails[1:]:
            even, odd_q = even * e, even * o + odd_q * e
        return even, odd_q

    def breakpoints(self):
        return np.unique(np.concatenate([f.breakpoints() for f in self.factors]))

    def to_json(self):
        return {"kind": self.kind, "factors": [f.to_json() for f in self.factors]}


class Reciprocal(SpectralFunction):
    """Pointwise ``1 / h``; build it through :func:`inverse_spec`."""

    kind = "reciprocal"

    def __init__(self, h):
        self.h = h

    def parts(self, r):
        r = np.asarray(r, dtype=float)
        e, o = self.h.parts(r)
        den = e * e - 1j * r * r * o * o  # h(zeta) h(-zeta)
        return e / den, -o / den

    def tail(self):
        t = self.h.tail()
        if t is None or t[0] == 0:
            return None
        e, o = t
        return 1.0 / e, -o / (e * e)

    def breakpoints(self):
        return self.h.breakpoints()

    def to_json(self):
        return {"kind": self.kind, "of": self.h.to_json()}


class Conjugate(SpectralFunction):
    """``h_bar(w) = conj(h(conj w))`` on the conjugate segment ``w = r e^{-i pi/4}``.

    ``parts`` are taken with respect to ``conj(zeta)``, and ``evaluate(r)``
    returns ``h_bar(r e^{-i pi/4})``.
    """

    kind = "conjugate"

    def __init__(self, h):
        self.h = h

    def parts(self, r):
        e, o = self.h.parts(r)
        return np.conj(e), np.conj(o)

    def evaluate(self, r):
        r = np.asarray(r, dtype=float)
        a = np.abs(r)
        even, odd_q = self.parts(a)
        return even + np.sign(r) * np.conj(OMEGA) * a * odd_q

    def tail(self):
        t = self.h.tail()
        return None if t is None else (np.conj(t[0]), np.conj(t[1]))

    def breakpoints(self):
        return self.h.breakpoints()

    def analytic_norm(self):
        return self.h.analytic_norm()

    def to_json(self):
        return {"kind": self.kind, "of": self.h.to_json()}


# ---------------------------------------------------------------- norms


def sample_grid(h=None, n_uniform=100_000, r_min=1e-9):
    """Sampling points in ``(0, A]``: uniform, geometric towards 0, and both sides of breakpoints."""
    pts = [np.linspace(0, A, n_uniform + 1)[1:], np.geomspace(r_min, 1e-2, 400)]
    if h is not None:
        bp = h.breakpoints()
        if bp.size:
            pts.append(np.concatenate([bp * (1 - 1e-12), bp * (1 + 1e-12), bp]))
    r = np.unique(np.concatenate(pts))
    return r[(r > 0) & (r <= A)]


def _supremand(h, r):
    e, o = h.parts(r)
    return np.abs(e) + np.abs(o)


def admissible_norm(h, refine=True):
    """``ess sup_r (|even| + |odd_q|)``; ``inf`` when the odd quotient blows up at 0."""
    exact = h.analytic_norm()
    if exact is not None:
        return float(exact)
    tail = h.tail()
    if tail is None:
        return float("inf")
    r = sample_grid(h)
    vals = _supremand(h, r)
    finite = np.isfinite(vals)
    if not np.all(finite):
        return float("inf")
    k = int(np.argmax(vals))
    best = max(float(vals[k]), abs(tail[0]) + abs(tail[1]))
    if refine and 0 < k < r.size - 1:
        lo, hi = r[k - 1], r[k + 1]
        res = minimize_scalar(
            lambda x: -float(_supremand(h, np.array([x]))[0]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-13},
        )
        best = max(best, -float(res.fun))
    return best


def _ess_inf_abs(h):
    r = sample_grid(h)
    vals = np.abs(np.concatenate([h.evaluate(r), h.evaluate(-r)]))
    tail = h.tail()
    inf = float(np.min(vals))
    if tail is not None:
        inf = min(inf, abs(tail[0]))
    return inf


def inverse_spec(h):
    """``1 / h`` when ``ess inf |h| > 0``; otherwise :class:`NotInvertibleError`."""
    inf = _ess_inf_abs(h)
    if not inf > 1e-12:
        raise NotInvertibleError(f"ess inf |h| = {inf:.3g}: h vanishes on the spectrum")
    if isinstance(h, Constant):
        return Constant(1.0 / h.c)
    return Reciprocal(h)


@dataclass(frozen=True)
class EssentialImage:
    """Sampled image ``{h(r e^{i pi/4})}`` with the ``r`` spacing used."""

    points: np.ndarray
    spacing: float

    def distinct(self, decimals=12):
        return np.unique(np.round(self.points, decimals))


def essential_image(h, n=4001):
    """Sample ``h`` on a uniform grid of ``r`` (breakpoints avoided) across the segment."""
    r = np.linspace(-A, A, n)
    bp = h.breakpoints()
    if bp.size:
        hit = np.isin(np.abs(r), bp)
        r = np.where(hit, r * (1 - 1e-9), r)
    r = r[r != 0]
    return EssentialImage(points=np.asarray(h.evaluate(r), dtype=complex), spacing=2 * A / (n - 1))


# ---------------------------------------------------------------- JSON


def spec_from_json(data):
    """Build a spec from its tagged JSON object."""
    if not isinstance(data, dict) or "kind" not in data:
        raise ValidationError(f"a function spec is an object with a 'kind' field, got {data!r}")
    kind = data["kind"]
    try:
        if kind == "constant":
            return Constant(data.get("value", 1.0))
        if kind == "identity":
            return Identity()
        if kind == "polynomial":
            return Polynomial(data["coeffs"])
        if kind == "indicator":
            return Indicator(SpectralSet.from_json(data["set"]))
        if kind == "resolvent":
            return ResolventKernel(data["z"])
        if kind == "table":
            return SampledTable(data["r"], data["h"])
        if kind == "sum":
            return Sum(*[spec_from_json(t) for t in data["terms"]])
        if kind == "product":
            return Product(*[spec_from_json(f) for f in data["factors"]])
        if kind == "reciprocal":
            return inverse_spec(spec_from_json(data["of"]))
        if kind == "conjugate":
            return Conjugate(spec_from_json(data["of"]))
    except KeyError as exc:
        raise ValidationError(f"spec of kind {kind!r} is missing field {exc}") from None
    raise ValidationError(f"unknown spec kind {kind!r}")


def spec_to_json(h):
    return h.to_json()
