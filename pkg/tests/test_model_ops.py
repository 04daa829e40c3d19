import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rel_l2
from specs import random_admissible_set, random_spec
from truncfourier.admissible import (
    A,
    Constant,
    Identity,
    Indicator,
    Polynomial,
    Product,
    ResolventKernel,
    SampledTable,
    SpectralSet,
    admissible_norm,
)
from truncfourier.errors import (
    DomainWarning,
    NotAdmissibleError,
    PlanMismatchError,
    SpectralPointError,
    ValidationError,
)
from truncfourier.mellin import ModelVector, SampledSignal, TransformPlan, forward_transform, inner, inverse_transform
from truncfourier.model_ops import (
    MatrixField,
    apply_adjoint,
    apply_field,
    apply_fourier,
    apply_L,
    apply_operator_function,
    apply_resolvent,
    improper_spectral_integral,
    multiply,
    operator_norm,
    simple_function,
    simple_function_integral,
    spectral_projector_apply,
    symbol_norm_at,
    tail_norm,
)
from truncfourier.oracle import finite_difference_L
from truncfourier.signals import adjoint_fourier_exp_decay, fourier_exp_decay, make_signal
from truncfourier.symbol import OMEGA, norm2

SMOOTH = ["exp-decay", "log-bump", "gaussian-in-s", "wave-packet"]
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture(scope="module")
def plan():
    return TransformPlan(-40.0, 40.0, 2**12)


@pytest.fixture(scope="module")
def signals(plan):
    return {name: make_signal(name, plan) for name in SMOOTH}


def rel(a, b):
    return (a - b).norm() / b.norm()


def random_model_vector(plan, rng):
    m = plan.n // 2
    return ModelVector(plan, rng.normal(size=m) + 1j * rng.normal(size=m), rng.normal(size=m) + 1j * rng.normal(size=m))


# ------------------------------------------------------------------ fields


def test_multiply_identity_and_composition(plan, rng):
    y = random_model_vector(plan, rng)
    out = multiply(MatrixField.identity(plan), y)
    assert np.array_equal(out.plus, y.plus) and np.array_equal(out.minus, y.minus)
    m = plan.n // 2
    g1 = MatrixField(plan, rng.normal(size=(m, 2, 2)) + 1j * rng.normal(size=(m, 2, 2)))
    g2 = MatrixField(plan, rng.normal(size=(m, 2, 2)) + 1j * rng.normal(size=(m, 2, 2)))
    a = multiply(g1 @ g2, y)
    b = multiply(g1, multiply(g2, y))
    assert np.allclose(a.stacked(), b.stacked(), rtol=1e-13, atol=1e-12)
    assert multiply(g1, y).norm() <= g1.sup_norm() * y.norm() * (1 + 1e-12)


def test_field_validation(plan):
    with pytest.raises(ValidationError):
        MatrixField(plan, np.zeros((3, 2, 2)))
    bad = np.zeros((plan.n // 2, 2, 2))
    bad[0, 0, 0] = np.inf
    with pytest.raises(ValidationError):
        MatrixField(plan, bad)
    other = TransformPlan(-40.0, 40.0, 2**11)
    with pytest.raises(PlanMismatchError):
        MatrixField.identity(plan) @ MatrixField.identity(other)
    with pytest.raises(PlanMismatchError):
        apply_field(MatrixField.identity(plan), make_signal("exp-decay", other))


def test_field_from_spec_matches_matrix_function(plan):
    h = Polynomial([1, 2j, -1, 0.5])
    g = MatrixField.from_spec(h, plan)
    from truncfourier.symbol import matrix_function

    assert np.allclose(g.mats, matrix_function(h, plan.mu), atol=1e-15)


# ------------------------------------------------------------------ calculus


def test_constant_one_is_identity(signals):
    for x in signals.values():
        assert rel(apply_operator_function(Constant(1.0), x), x) < 1e-12


def test_full_indicator_is_identity(signals):
    for x in signals.values():
        assert rel(apply_operator_function(Indicator(SpectralSet.full()), x), x) < 1e-12
        assert rel(spectral_projector_apply(SpectralSet.full(), x), x) < 1e-12
        assert spectral_projector_apply(SpectralSet.empty(), x).norm() == 0


def test_fourier_of_exp_decay(ref_plan):
    x = make_signal("exp-decay", ref_plan)
    m = ref_plan.interior()
    y = apply_operator_function(Identity(), x)
    assert rel_l2(ref_plan, y.values, fourier_exp_decay(ref_plan.t), m) < 1e-3
    assert np.allclose(apply_fourier(x).values, y.values, atol=1e-14)
    ya = apply_adjoint(x)
    assert rel_l2(ref_plan, ya.values, adjoint_fourier_exp_decay(ref_plan.t), m) < 1e-3


def test_inadmissible_function_rejected(signals):
    h = Indicator(SpectralSet([(0.0, 0.5)]))
    with pytest.raises(NotAdmissibleError, match="unbounded"):
        apply_operator_function(h, signals["exp-decay"])


def test_adjoint_identity(plan, rng):
    names = SMOOTH + ["log-bump"]
    for k in range(5):
        x = make_signal(names[k], plan)
        y = make_signal(names[(k + 2) % 5], plan, **({"center": rng.normal()} if names[(k + 2) % 5] != "exp-decay" else {}))
        lhs = inner(apply_fourier(x), y)
        rhs = inner(x, apply_adjoint(y))
        assert abs(lhs - rhs) <= 1e-8 * x.norm() * y.norm()


def test_strict_contraction(signals):
    for x in signals.values():
        assert apply_fourier(x).norm() < x.norm()
        assert apply_adjoint(x).norm() < x.norm()


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_homomorphism_on_signals(seed):
    rng = np.random.default_rng(seed)
    p = TransformPlan(-30.0, 30.0, 2**11)
    x = make_signal("gaussian-in-s", p, center=rng.uniform(-3, 3))
    h1, h2 = random_spec(rng), random_spec(rng)
    a = apply_operator_function(Product(h1, h2), x)
    b = apply_operator_function(h1, apply_operator_function(h2, x))
    scale = admissible_norm(h1) * admissible_norm(h2) * x.norm()
    assert (a - b).norm() <= 1e-10 * scale


# ------------------------------------------------------------------ resolvent


def test_resolvent_defining_identity(signals):
    for z in [2.0, -1 + 1j, 0.3 * OMEGA + 0.05j * OMEGA]:
        for x in signals.values():
            r = apply_resolvent(z, x)
            assert rel(z * r - apply_fourier(r), x) < 1e-8


def test_resolvent_neumann(signals):
    x = signals["gaussian-in-s"]
    r = apply_resolvent(10.0, x)
    fx = apply_fourier(x)
    approx = x * 0.1 + fx * 0.01 + apply_fourier(fx) * 0.001
    assert rel(r, approx) < 1e-3


def test_resolvent_on_spectrum_rejected(signals):
    with pytest.raises(SpectralPointError):
        apply_resolvent(0.2 * OMEGA, signals["exp-decay"])
    with pytest.raises(SpectralPointError):
        apply_resolvent(0.0, signals["exp-decay"])


def test_resolvent_growth_near_zero(ref_plan):
    # at large mu the symbol is nearly nilpotent, so R(z) ~ 1/z + F/z^2 on the minus component
    p = ref_plan
    x = inverse_transform(ModelVector(p, np.zeros(p.n // 2), np.exp(-0.5 * ((p.mu - 12.0) / 2.0) ** 2)))
    normal = np.exp(0.75j * np.pi)
    norms = [apply_resolvent(d * normal, x).norm() for d in (1e-2, 1e-3)]
    # |z|^-2 growth: a tenfold decrease of |z| multiplies the norm by ~100
    assert 50 < norms[1] / norms[0] < 101


# ------------------------------------------------------------------ projectors


def test_projector_errors(signals):
    with pytest.raises(NotAdmissibleError, match="asymmetric part"):
        spectral_projector_apply(SpectralSet([(0.0, 0.4)]), signals["exp-decay"])


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_projector_algebra(seed):
    rng = np.random.default_rng(seed)
    p = TransformPlan(-30.0, 30.0, 2**11)
    x = make_signal("gaussian-in-s", p, center=rng.uniform(-2, 2))
    d1, d2 = random_admissible_set(rng), random_admissible_set(rng)
    P = spectral_projector_apply  # noqa: N806
    scale = admissible_norm(Indicator(d1)) * admissible_norm(Indicator(d2)) * x.norm()
    # P(d1 & d2) = P(d1) P(d2), P^2 = P
    assert (P(d1 & d2, x) - P(d1, P(d2, x))).norm() <= 1e-8 * scale
    p1 = P(d1, x)
    assert (P(d1, p1) - p1).norm() <= 1e-8 * scale
    # complement and commutation with the operator
    assert (P(d1, x) + P(d1.complement(), x) - x).norm() <= 1e-8 * scale
    assert (P(d1, apply_fourier(x)) - apply_fourier(P(d1, x))).norm() <= 1e-8 * scale
    # order: d1 & d2 is inside d1
    inner_set = d1 & d2
    assert (P(d1, P(inner_set, x)) - P(inner_set, x)).norm() <= 1e-8 * scale


def test_disjoint_additivity(signals):
    d1 = SpectralSet([(0.1, 0.3)])
    d2 = SpectralSet([(-0.5, -0.2), (0.4, 0.6)])
    for x in signals.values():
        both = spectral_projector_apply(d1 | d2, x)
        parts = spectral_projector_apply(d1, x) + spectral_projector_apply(d2, x)
        assert (both - parts).norm() <= 1e-10 * x.norm()
        zero = spectral_projector_apply(d1, spectral_projector_apply(d2, x))
        assert zero.norm() <= 1e-10 * x.norm()


def test_symmetric_projector_is_orthogonal(signals):
    d = SpectralSet.delta_sym(0.1)
    for x in signals.values():
        px = spectral_projector_apply(d, x)
        assert abs(inner(px, x - px)) <= 1e-8 * x.norm() ** 2


def test_mutual_orthogonality(signals):
    d1 = SpectralSet([(0.05, 0.2)])
    d2 = SpectralSet([(-0.6, -0.3)])
    assert (d1 | d1.mirror()).is_disjoint(d2 | d2.mirror())
    xs = list(signals.values())
    for x in xs:
        for y in xs:
            val = inner(spectral_projector_apply(d1, x), spectral_projector_apply(d2, y))
            assert abs(val) <= 1e-8 * x.norm() * y.norm()
    # not orthogonal when the symmetrizations overlap
    d3 = SpectralSet([(-0.2, -0.05)])
    x = signals["gaussian-in-s"]
    assert abs(inner(spectral_projector_apply(d1, x), spectral_projector_apply(d3, x))) > 1e-6


# ------------------------------------------------------------------ norms


def test_operator_norm_examples():
    assert operator_norm(Constant(1.0)) == pytest.approx(1.0, abs=1e-15)
    n = operator_norm(Identity())
    assert 0.999 < n <= 1.0 + 1e-15
    eps = 0.05
    assert operator_norm(Indicator(SpectralSet.delta_plus(eps))) == pytest.approx(np.sqrt(1 + 2 * eps**2) / (2 * eps), rel=1e-3)
    assert np.sqrt(1 + 2 * eps**2) / (2 * eps) == pytest.approx(10.02497, abs=1e-4)
    assert operator_norm(Indicator(SpectralSet.delta_sym(eps))) == pytest.approx(1.0, abs=1e-9)


def test_tail_norm():
    assert tail_norm(Constant(2.0)) == pytest.approx(2.0)
    assert tail_norm(Identity()) == pytest.approx(1.0)
    assert tail_norm(Indicator(SpectralSet([(0.0, 0.3)]))) == np.inf
    # limit of ||h(F(mu))|| as mu -> inf
    h = Polynomial([0.3, 1 - 1j, 2])
    assert symbol_norm_at(h, 60.0) == pytest.approx(tail_norm(h), rel=1e-12)


def test_operator_norm_bounds_pointwise_norm(plan):
    h = Polynomial([0.2, 1j, -0.5, 0.1])
    n = operator_norm(h)
    mu = np.linspace(0, 40, 4001)
    assert np.max(symbol_norm_at(h, mu)) <= n * (1 + 1e-12)


def test_operator_norm_dominates_applied_ratio(signals):
    h = Indicator(SpectralSet.delta_plus(0.1))
    n = operator_norm(h)
    for x in signals.values():
        assert apply_operator_function(h, x).norm() <= n * x.norm() * (1 + 1e-12)


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_two_sided_estimate(seed):
    h = random_spec(np.random.default_rng(seed))
    a = admissible_norm(h)
    n = operator_norm(h)
    assert 0.5 * a <= n * (1 + 1e-6)
    assert n <= a * (1 + 1e-9)


def test_resolvent_kernel_norm_matches_closed_form():
    from truncfourier.symbol import resolvent_operator_norm

    for z in [0.5, 0.3 * OMEGA + 1e-3 * np.exp(0.75j * np.pi), 1e-2 * np.exp(0.75j * np.pi)]:
        assert operator_norm(ResolventKernel(z)) == pytest.approx(resolvent_operator_norm(z), rel=1e-9)


# ------------------------------------------------------------------ L


def test_L_matches_finite_differences():
    p = TransformPlan(-12.0, 12.0, 2**14)
    for name in ["gaussian-in-s", "log-bump", "wave-packet"]:
        x = make_signal(name, p)
        m = p.interior()
        assert rel_l2(p, apply_L(x).values, finite_difference_L(x).values, m) < 1e-4


def test_L_eigen_packet():
    p = TransformPlan(-60.0, 60.0, 2**14)
    mu0 = 3.0
    # model vector concentrated at mu0 in the plus component
    y = ModelVector(p, np.exp(-0.5 * ((p.mu - mu0) / 0.05) ** 2), np.zeros(p.n // 2))
    x = inverse_transform(y)
    assert rel(apply_L(x), x * (mu0**2 + 0.25)) < 0.05


def test_L_commutes_with_fourier(signals):
    for x in signals.values():
        a = apply_fourier(apply_L(x))
        b = apply_L(apply_fourier(x))
        assert rel(a, b) < 1e-10


def test_L_warns_on_rough_signal(plan):
    x = make_signal("indicator", plan)
    with pytest.warns(DomainWarning):
        apply_L(x)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        apply_L(make_signal("gaussian-in-s", plan))


# ------------------------------------------------------------------ integrals


def test_improper_integral_converges(signals):
    x = signals["exp-decay"]
    out = improper_spectral_integral(Constant(1.0), x, [0.1, 0.01, 0.001])
    errs = [rel(v, x) for v in out]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-2
    with pytest.raises(ValidationError):
        improper_spectral_integral(Constant(1.0), x, [0.1, 0.2])
    with pytest.raises(ValidationError):
        improper_spectral_integral(Constant(1.0), x, [0.1, 0.0])


def test_improper_integral_converges_to_calculus(signals):
    h = Polynomial([0.5, 1.0, -1j])
    x = signals["gaussian-in-s"]
    target = apply_operator_function(h, x)
    out = improper_spectral_integral(h, x, [0.1, 0.01, 0.001])
    errs = [rel(v, target) for v in out]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 1e-2


def test_simple_function_integral(signals):
    d1 = SpectralSet([(-0.3, -0.1), (0.1, 0.3)])
    d2 = SpectralSet([(0.4, 0.6)])
    x = signals["gaussian-in-s"]
    got = simple_function_integral([(2.0, d1), (-1j, d2)], x)
    want = spectral_projector_apply(d1, x) * 2.0 + spectral_projector_apply(d2, x) * (-1j)
    assert (got - want).norm() <= 1e-12 * x.norm()


def test_simple_function_canonical():
    # the same function from two different partitions
    a = simple_function([(1.0, SpectralSet([(0.1, 0.5)])), (2.0, SpectralSet([(0.5, 0.6)]))])
    b = simple_function(
        [(1.0, SpectralSet([(0.1, 0.3)])), (1.0, SpectralSet([(0.3, 0.5)])), (2.0, SpectralSet([(0.5, 0.6)]))]
    )
    assert a.to_json() == b.to_json()
    c = simple_function([(1.0, SpectralSet([(0.1, 0.6)])), (1.0, SpectralSet([(0.5, 0.6)]))])
    assert c.to_json() == a.to_json()
    assert simple_function([]).to_json() == Constant(0.0).to_json()


def test_strong_continuity(signals):
    # tables of a smooth function on refining grids converge pointwise with bounded norms
    h = Polynomial([0.3, 1.0, 0.5j])
    x = signals["wave-packet"]
    target = apply_operator_function(h, x)
    errs, norms = [], []
    for n in [5, 17, 65, 257]:
        r = np.linspace(-A, A, n)
        if 0.0 not in r:
            r = np.sort(np.append(r, 0.0))
        hn = SampledTable(r, h.evaluate(r))
        norms.append(admissible_norm(hn))
        errs.append(rel(apply_operator_function(hn, x), target))
    assert max(norms) < 3 * admissible_norm(h)
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3


def test_signal_level_checks_use_plan(signals):
    x = signals["exp-decay"]
    other = make_signal("exp-decay", TransformPlan(-40.0, 40.0, 2**11))
    with pytest.raises(PlanMismatchError):
        x + other
    assert isinstance(apply_fourier(x), SampledSignal)
    assert forward_transform(x).plan == x.plan
    assert norm2(np.eye(2)) == 1.0
