import math

import mpmath as mp
import numpy as np
import pytest

from jacobilt.functionals import (
    RieszConfig,
    _graded_edges,
    beta_fn,
    ks_F,
    ks_G,
    log_gamma,
    lt_lhs_main,
    mu_of_E,
    panel_gauss_legendre,
    remark_lower_bounds,
    rhs_hs,
    rhs_main,
    riesz_mean,
    riesz_rhs,
)
from jacobilt.operators import ValidationError, make_perturbation
from jacobilt.spectral import SpectrumOutside


def spectrum(e_plus=(), e_minus=()):
    return SpectrumOutside(tuple(e_plus), tuple(e_minus), 64, 0.0)


class TestEdgeParam:
    def test_examples(self):
        assert mu_of_E(2.5).mu == pytest.approx(0.5)
        assert mu_of_E(-2.5).mu == pytest.approx(0.5)
        assert mu_of_E(-2.5).beta == 2.5

    def test_boundary_rejected(self):
        for e in (2.0, -2.0, 1.0, 0.0, math.nan):
            with pytest.raises(ValidationError):
                mu_of_E(e)

    def test_identity_on_grid(self):
        for e in np.linspace(2.0001, 50.0, 200):
            ep = mu_of_E(float(e))
            assert 0.0 < ep.mu < 1.0
            assert ep.mu + 1.0 / ep.mu == pytest.approx(abs(e), abs=1e-12)
            assert ep.mu == pytest.approx((abs(e) - math.sqrt(e * e - 4)) / 2, abs=1e-12)


class TestMainFunctionals:
    def test_lt_lhs_examples(self):
        assert lt_lhs_main(spectrum((2.5,), (-2.5,))) == pytest.approx(3.0)
        assert lt_lhs_main(spectrum()) == 0.0
        assert lt_lhs_main(spectrum((math.sqrt(8.0),), ())) == pytest.approx(2.0)

    def test_negation_invariance(self):
        s = spectrum((3.0, 2.5), (-2.2,))
        flipped = spectrum((2.2,), (-3.0, -2.5))
        assert lt_lhs_main(s) == pytest.approx(lt_lhs_main(flipped))

    def test_rhs_examples(self):
        p = make_perturbation(0, [], 0, [1.5])
        assert rhs_main(p) == rhs_hs(p) == 1.5
        p = make_perturbation(0, [2.0], 0, [])
        assert rhs_main(p) == rhs_hs(p) == 4.0
        p = make_perturbation(0, [0.5], 0, [])
        assert rhs_main(p) == 0.0
        assert rhs_hs(p) == 2.0

    def test_rhs_main_never_exceeds_hs(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            p = make_perturbation(
                0, rng.uniform(-0.5, 2.5, size=4), 0, rng.uniform(-2, 2, size=4)
            )
            assert rhs_main(p) <= rhs_hs(p) + 1e-15


class TestKillipSimonFunctions:
    def test_F_value(self):
        # beta = 2 at e = 2.5
        assert ks_F(2.5) == pytest.approx(3.75 - math.log(4.0), abs=1e-12)
        assert ks_F(2.5) == pytest.approx(2.3637056388801094, abs=1e-7)

    def test_F_symmetric(self):
        for e in (2.1, 2.5, 5.0):
            assert ks_F(-e) == pytest.approx(ks_F(e), abs=1e-14)

    def test_F_domain(self):
        with pytest.raises(ValidationError):
            ks_F(2.0)

    def test_G_values(self):
        assert ks_G(1.0) == 0.0
        assert ks_G(-1.0) == 0.0
        assert ks_G(0.5) == pytest.approx(0.25 - 1.0 - math.log(0.25), abs=1e-12)
        assert ks_G(0.5) == pytest.approx(0.6362943611198906, abs=1e-7)

    def test_G_nonnegative_with_unique_zeros(self):
        for a in np.concatenate([np.linspace(-3, -0.01, 120), np.linspace(0.01, 3, 120)]):
            g = ks_G(float(a))
            assert g >= -1e-15
            if g <= 1e-12:
                assert abs(abs(a) - 1.0) < 1e-5

    def test_G_domain(self):
        with pytest.raises(ValidationError):
            ks_G(0.0)


class TestBetaFunction:
    def test_examples(self):
        assert beta_fn(1.0, 1.0) == pytest.approx(1.0, rel=1e-13)
        assert beta_fn(1.0, 2.0) == pytest.approx(0.5, rel=1e-13)
        assert beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-13)

    def test_symmetry_and_reciprocal(self):
        for x in (0.25, 1.0, 3.7, 10.0):
            for y in (0.5, 2.0, 6.3):
                assert beta_fn(x, y) == pytest.approx(beta_fn(y, x), rel=1e-13)
            assert beta_fn(x, 1.0) == pytest.approx(1.0 / x, rel=1e-12)

    def test_against_lgamma(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            x, y = rng.uniform(0.01, 20.0, size=2)
            ref = math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
            assert beta_fn(x, y) == pytest.approx(ref, rel=1e-12)

    def test_domain(self):
        for x, y in ((0.0, 1.0), (1.0, -2.0), (math.nan, 1.0)):
            with pytest.raises(ValidationError):
                beta_fn(x, y)

    def test_log_gamma_accuracy(self):
        for x in np.concatenate([np.linspace(0.001, 2, 80), np.linspace(2, 60, 80)]):
            ref = math.lgamma(float(x))
            assert abs(log_gamma(float(x)) - ref) <= 1e-13 * max(1.0, abs(ref))


def riesz_reference(e, gamma):
    """Independent oracle: integrate by parts so the weight singularity
    becomes a mild inverse square root, then tanh-sinh."""
    mp.mp.dps = 25
    eg, gg = mp.mpf(repr(float(e))), mp.mpf(repr(float(gamma)))
    integ = mp.quad(
        lambda t: t / mp.sqrt(t * t - 4) * (eg - t) ** (gg - mp.mpf("0.5")), [2, eg]
    )
    return float(integ / (gg - mp.mpf("0.5")))


class TestRieszMean:
    def test_closed_form_at_three_halves(self):
        cfg = RieszConfig(gamma=1.5)
        for e in (2.1, 2.5, 3.0, 5.0, 10.0):
            r = math.sqrt(e * e - 4.0)
            exact = 0.5 * e * r - 2.0 * math.log((e + r) / 2.0)
            assert riesz_mean(e, cfg) == pytest.approx(exact, abs=1e-9)

    def test_spec_value(self):
        assert riesz_mean(2.5, RieszConfig(gamma=1.5)) == pytest.approx(
            1.875 - 2.0 * math.log(2.0), abs=1e-9
        )
        assert riesz_mean(-2.5, RieszConfig(gamma=1.5)) == pytest.approx(
            0.4887057108870697, abs=1e-7
        )

    def test_against_independent_quadrature(self):
        for e, gamma in ((2.5, 0.75), (3.0, 2.5), (5.0, 1.0), (2.5, 0.6), (10.0, 0.75)):
            got = riesz_mean(e, RieszConfig(gamma=gamma))
            assert got == pytest.approx(riesz_reference(e, gamma), abs=1e-9)

    def test_vanishes_at_edge(self):
        assert riesz_mean(2.0 + 1e-9, RieszConfig(gamma=1.5)) < 1e-12

    def test_domain(self):
        with pytest.raises(ValidationError):
            riesz_mean(2.0, RieszConfig(gamma=1.5))
        with pytest.raises(ValidationError):
            RieszConfig(gamma=0.5)
        with pytest.raises(ValidationError):
            RieszConfig(gamma=1.5, quad_points=4)


class TestRieszRhs:
    def test_single_site(self):
        p = make_perturbation(0, [], 0, [1.5])
        assert riesz_rhs(p, 1.5, "+") == pytest.approx(0.5 * 1.5**2, abs=1e-12)
        assert riesz_rhs(p, 1.5, "-") == 0.0

    def test_negative_site_flips_branch(self):
        p = make_perturbation(0, [], 0, [-1.5])
        assert riesz_rhs(p, 1.5, "+") == 0.0
        assert riesz_rhs(p, 1.5, "-") == pytest.approx(1.125, abs=1e-12)

    def test_single_bond_feeds_two_sites(self):
        p = make_perturbation(0, [2.0], 0, [])
        assert riesz_rhs(p, 1.5, "+") == pytest.approx(1.0, abs=1e-12)
        assert riesz_rhs(p, 1.5, "-") == pytest.approx(1.0, abs=1e-12)

    def test_matches_sandwich_diagonal(self):
        from jacobilt.operators import sandwich

        rng = np.random.default_rng(8)
        for _ in range(20):
            p = make_perturbation(
                -1, rng.uniform(0.0, 2.0, size=3), 0, rng.uniform(-2, 2, size=3)
            )
            gamma = float(rng.uniform(0.6, 3.0))
            _, upper = sandwich(p)
            direct = beta_fn(gamma - 0.5, 2.0) * sum(
                v ** (gamma + 0.5) for v in upper.b if v > 0
            )
            assert riesz_rhs(p, gamma, "+") == pytest.approx(direct, rel=1e-12)

    def test_preconditions(self):
        with pytest.raises(ValidationError):
            riesz_rhs(make_perturbation(0, [-0.2], 0, []), 1.5, "+")
        with pytest.raises(ValidationError):
            riesz_rhs(make_perturbation(0, [], 0, [1.0]), 0.4, "+")
        with pytest.raises(ValidationError):
            riesz_rhs(make_perturbation(0, [], 0, [1.0]), 1.5, "x")


class TestRemarkBounds:
    def test_example(self):
        first, second = remark_lower_bounds(2.5, 1.5)
        assert first == pytest.approx(2.0 * (2.0 / 3.0) * 0.5**1.5, abs=1e-12)
        assert second == pytest.approx(0.125, abs=1e-12)
        assert first == pytest.approx(0.4714045207910317, abs=1e-7)

    def test_vanish_toward_edge(self):
        first, second = remark_lower_bounds(2.0 + 1e-12, 1.5)
        assert first < 1e-11 and second < 1e-11

    def test_below_riesz_mean(self):
        for gamma in (0.6, 0.75, 1.0, 1.5, 2.5):
            cfg = RieszConfig(gamma=gamma)
            for e in (2.01, 2.5, 4.0, 8.0):
                mean = riesz_mean(e, cfg)
                first, second = remark_lower_bounds(e, gamma)
                assert first <= mean + 1e-9
                assert second <= mean + 1e-9

    def test_domain(self):
        with pytest.raises(ValidationError):
            remark_lower_bounds(1.5, 1.5)
        with pytest.raises(ValidationError):
            remark_lower_bounds(2.5, 0.5)


class TestLayerCake:
    def test_beta_identity_by_quadrature(self):
        # int_0^inf (c - s)_+ s^(gamma - 3/2) ds = B(gamma - 1/2, 2) c^(gamma + 1/2)
        for c in (0.5, 1.0, 2.0):
            for gamma in (0.75, 1.5, 2.5):
                p = 2.0 / (2.0 * gamma - 1.0)
                if gamma < 1.5:
                    f = lambda v: p * np.maximum(c - v**p, 0.0)
                    top = c ** (1.0 / p)
                else:
                    f = lambda u: np.maximum(c - u, 0.0) * u ** (gamma - 1.5)
                    top = c
                got = panel_gauss_legendre(f, _graded_edges(0.0, top, 8, True), 64)
                assert got == pytest.approx(
                    beta_fn(gamma - 0.5, 2.0) * c ** (gamma + 0.5), abs=1e-8
                )
