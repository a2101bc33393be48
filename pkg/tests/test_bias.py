import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from asymbias.bias import (
    CompositeBias,
    CubicAbs,
    Decomposed,
    HKIndicator,
    LinearSymmetric,
    NegTanhQuadratic,
    TanhQuadratic,
    composite_weight,
    dandekar_coefficient,
    eval_conf,
    eval_dandekar_step,
    eval_neg,
    family_from_spec,
)

opinion = st.floats(-1, 1, allow_nan=False)
FIG1 = TanhQuadratic(0.6, 0.011)


def fig1_scalar(a, b):
    return 0.6 - 0.011 * (math.tanh(a) - math.tanh(b)) ** 2


def test_fig1_value():
    # frozen from the scalar math.tanh oracle
    assert eval_conf(FIG1, 0.2, 0.8) == pytest.approx(0.597604498001482, abs=1e-15)
    assert eval_conf(FIG1, 0.2, 0.8) == pytest.approx(0.59760, abs=5e-6)


@given(opinion, opinion)
def test_tanh_quadratic_matches_scalar_oracle(a, b):
    assert eval_conf(FIG1, a, b) == pytest.approx(fig1_scalar(a, b), abs=1e-15)


def test_linear_symmetric_equal_distances():
    lin = LinearSymmetric(0.6, 0.5)
    assert eval_conf(lin, 0.1, 0.5) == pytest.approx(0.4, abs=1e-15)
    assert eval_conf(lin, 0.1, -0.3) == pytest.approx(0.4, abs=1e-15)
    assert eval_conf(lin, 0.1, 0.5) == eval_conf(lin, 0.1, -0.3)


@given(opinion, st.floats(0, 1))
def test_linear_symmetric_ignores_side(xi, r):
    lin = LinearSymmetric(0.6, 0.5)
    a, b = xi + r, xi - r
    if abs(a) <= 1 and abs(b) <= 1:
        assert lin(xi, a) == pytest.approx(lin(xi, b), abs=1e-12)


def test_cubic_values():
    cub = CubicAbs(0.6, 0.1)
    assert eval_conf(cub, 0.4, 0.2) == pytest.approx(0.5944, abs=1e-12)
    assert eval_conf(cub, 0.4, 0.6) == pytest.approx(0.5848, abs=1e-12)


def test_neg_tanh_symmetric_at_zero_and_increasing():
    neg = NegTanhQuadratic(0.1, 0.05)
    assert eval_neg(neg, 0, 0.5) == eval_neg(neg, 0, -0.5)
    assert eval_neg(neg, 0.2, 0.8) > eval_neg(neg, 0.2, 0.4)
    assert eval_neg(neg, 0.2, 0.8) == pytest.approx(0.11088864544780921, abs=1e-15)


@given(opinion, opinion)
def test_neg_tanh_zero_gamma_constant(a, b):
    assert eval_neg(NegTanhQuadratic(0.37, 0.0), a, b) == 0.37


@given(st.floats(0, 1))
def test_mirror_symmetry_at_neutral_is_exact(a):
    for fam in (FIG1, CubicAbs(0.6, 0.1), NegTanhQuadratic(0.1, 0.05)):
        assert fam(0.0, a) == fam(0.0, -a)


@given(opinion, opinion)
def test_decomposed_is_symmetric(a, b):
    fam = Decomposed(np.tanh, lambda d: 1 - d)
    assert fam(a, b) == fam(b, a)


@given(st.floats(0, 1))
def test_decomposed_odd_f_equal_at_zero(a):
    fam = Decomposed(lambda x: x * x * x, lambda d: 2 - d)
    assert fam(0.0, a) == fam(0.0, -a)


def test_hk_indicator_two_values_and_asymmetric():
    hk = HKIndicator(-0.2, 0.5, 2.0)
    x = np.linspace(-1, 1, 41)
    vals = hk(x[:, None], x[None, :])
    assert set(np.unique(vals)) == {0.0, 2.0}
    # x_i - x_j = 0.4 is inside, -0.4 is not
    assert hk(0.4, 0.0) == 2.0 and hk(0.0, 0.4) == 0.0


def test_hk_band_edges():
    hk = HKIndicator(-0.5, 0.5)
    assert hk(0.0, 0.5) == 1.0  # diff == eps_lo is inside
    assert hk(0.5, 0.0) == 0.0  # diff == eps_hi is outside


@pytest.mark.parametrize(
    "factory",
    [
        lambda: TanhQuadratic(0.01, 0.011),
        lambda: TanhQuadratic(0.0, 0.0),
        lambda: TanhQuadratic(0.6, -1),
        lambda: CubicAbs(0.1, 0.1),
        lambda: LinearSymmetric(0.1, 0.2),
        lambda: HKIndicator(0.1, 0.5),
        lambda: HKIndicator(-0.1, 0.0),
        lambda: HKIndicator(-0.1, 0.1, 0.0),
        lambda: NegTanhQuadratic(-0.1, 0.1),
    ],
)
def test_invalid_parameters_rejected_at_construction(factory):
    with pytest.raises(ValueError):
        factory()


def test_nonnegativity_boundary_for_tanh_quadratic():
    gamma = 0.011
    chi = gamma * (2 * math.tanh(1)) ** 2
    fam = TanhQuadratic(chi, gamma)
    assert fam.minimum() == pytest.approx(0.0, abs=1e-15)
    x = np.linspace(-1, 1, 101)
    assert fam(x[:, None], x[None, :]).min() >= -1e-15


@pytest.mark.parametrize("fam", [FIG1, CubicAbs(0.6, 0.1), NegTanhQuadratic(0.1, 0.05), LinearSymmetric(0.6, 0.5)])
def test_analytic_minimum_matches_grid(fam):
    x = np.linspace(-1, 1, 201)
    assert fam(x[:, None], x[None, :]).min() == pytest.approx(fam.minimum(), abs=1e-12)


def test_decompositions_reproduce_family():
    x = np.linspace(-1, 1, 21)
    for fam in (FIG1, CubicAbs(0.6, 0.1), LinearSymmetric(0.6, 0.5), NegTanhQuadratic(0.1, 0.05)):
        f, g = fam.decomposition()
        np.testing.assert_allclose(Decomposed(f, g)(x[:, None], x[None, :]), fam(x[:, None], x[None, :]), atol=1e-15)
    assert HKIndicator(-0.5, 0.5).decomposition() is None


def test_eval_rejects_out_of_domain():
    with pytest.raises(ValueError):
        eval_conf(FIG1, 1.2, 0.0)
    with pytest.raises(ValueError):
        eval_neg(FIG1, 0.0, float("nan"))


def test_family_from_spec_roundtrip():
    fam = family_from_spec("tanh-quadratic", {"chi": 0.6, "gamma": 0.011})
    assert fam == FIG1
    assert family_from_spec(**{"name": fam.to_spec()["family"], "params": fam.to_spec()["params"]}) == fam
    with pytest.raises(ValueError):
        family_from_spec("nope", {})
    with pytest.raises(ValueError):
        family_from_spec("cubic-abs", {"chi": 0.6})


class TestComposite:
    conf = LinearSymmetric(0.6, 0.5)
    neg = NegTanhQuadratic(0.1, 0.05)

    @given(opinion, opinion, opinion)
    def test_endpoints_collapse(self, xi, xbar, xj):
        assert composite_weight(CompositeBias(1.0, FIG1, self.neg), xi, xbar, xj) == eval_conf(FIG1, xi, xj)
        assert composite_weight(CompositeBias(0.0, FIG1, self.neg), xi, xbar, xj) == eval_neg(self.neg, xbar, xj)

    def test_half_mixture(self):
        # conf value 0.4 at (0.1, 0.5); a constant-0.2 negativity term
        cb = CompositeBias(0.5, self.conf, NegTanhQuadratic(0.2, 0.0))
        assert composite_weight(cb, 0.1, 0.0, 0.5) == pytest.approx(0.3, abs=1e-15)

    def test_callable_matches_function(self):
        cb = CompositeBias(0.3, FIG1, self.neg)
        assert cb(0.2, -0.1, 0.7) == pytest.approx(composite_weight(cb, 0.2, -0.1, 0.7), abs=1e-15)

    def test_beta_range(self):
        with pytest.raises(ValueError):
            CompositeBias(1.5, FIG1, self.neg)


class TestDandekar:
    def test_neutral_opinion_values(self):
        assert eval_dandekar_step(1, 1, 2, 0.5, 0.9) == pytest.approx(0.58, abs=1e-15)
        assert eval_dandekar_step(1, 1, 2, 0.5, 0.5) == pytest.approx(0.5, abs=1e-15)
        assert eval_dandekar_step(1, 1, 2, 0.5, 0.1) == pytest.approx(0.42, abs=1e-15)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0.1, 5), st.floats(0, 5), st.floats(0, 4))
    def test_coefficient_independent_of_neighbour_at_half(self, xj1, xj2, wii, wij, b):
        c1 = dandekar_coefficient(wii, wij, b, 0.5, xj1)
        c2 = dandekar_coefficient(wii, wij, b, 0.5, xj2)
        assert c1 == pytest.approx(c2, rel=1e-12, abs=1e-15)

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0.1, 5), st.floats(0, 5), st.floats(0, 4))
    def test_output_in_unit_interval(self, xi, xj, wii, wij, b):
        assert -1e-12 <= eval_dandekar_step(wii, wij, b, xi, xj) <= 1 + 1e-12

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            eval_dandekar_step(1, 1, 2, -0.1, 0.5)
        with pytest.raises(ValueError):
            eval_dandekar_step(0, 1, 2, 0.5, 0.5)
