"""Star product: Clifford relations, associativity, powers, exponentials."""

import numpy as np
import pytest

from fermidq.algebra import AlgebraError, GrassmannAlgebra
from fermidq.star import (
    BracketMode,
    SymmetricForm,
    build_star_product,
    first_order_term,
    nac_form,
    series_exponential_reference,
    star,
    star_bracket,
    star_exponential,
    star_power,
)
from fermidq.states import level_scales

from conftest import nac_setup, random_element

HBAR, C, D, OMEGA = 1.0, 0.3, -0.45, 1.0


@pytest.fixture
def setup():
    return nac_setup(HBAR, C, D, OMEGA)


class TestBuild:
    def test_nonsymmetric_rejected(self, theta_algebra):
        m = np.eye(4)
        m[0, 1] = 0.5
        with pytest.raises(AlgebraError):
            SymmetricForm(m, theta_algebra)

    def test_zero_form_is_pointwise(self, theta_algebra, rng):
        product = build_star_product(
            SymmetricForm(np.zeros((4, 4)), theta_algebra)
        )
        f = random_element(theta_algebra, rng)
        g = random_element(theta_algebra, rng)
        assert star(f, g, product).isclose(f * g, 1e-13)

    def test_coupled_form_from_bracket_parameter(self, theta_algebra):
        # c = hbar C / 4 with equal couplings is the single-parameter form
        coupling = 1.2
        c = HBAR * coupling / 4
        product = build_star_product(nac_form(theta_algebra, HBAR, c, c))
        t1, t2 = theta_algebra.generator("th1"), theta_algebra.generator("th2")
        t3, t4 = theta_algebra.generator("th3"), theta_algebra.generator("th4")
        assert star_bracket(t1, t2, product).isclose(theta_algebra.scalar(c))
        assert star_bracket(t3, t4, product).isclose(theta_algebra.scalar(c))


class TestCliffordRelations:
    def test_all_relations(self, setup):
        algebra, product, _, _ = setup
        gens = [algebra.generator(n) for n in algebra.names]
        a = product.form.matrix
        for i in range(4):
            for j in range(4):
                anti = star_bracket(gens[i], gens[j], product)
                assert (anti - a[i, j]).norm_inf() < 1e-12

    def test_square_is_half_hbar(self, setup):
        algebra, product, _, _ = setup
        t1 = algebra.generator("th1")
        assert star(t1, t1, product).isclose(algebra.scalar(HBAR / 2))

    def test_cross_pair(self, setup):
        algebra, product, _, _ = setup
        t1, t2 = algebra.generator("th1"), algebra.generator("th2")
        assert star(t1, t2, product).isclose(t1 * t2 + C / 2)

    def test_uncoupled_pairs_vanish(self, setup):
        algebra, product, _, _ = setup
        t1, t3 = algebra.generator("th1"), algebra.generator("th3")
        assert star_bracket(t1, t3, product).is_zero


class TestHamiltonianAlgebra:
    def test_squares(self, setup):
        algebra, product, h_plus, h_minus = setup
        hp, hm = level_scales(HBAR, C, D)
        assert star(h_plus, h_plus, product).isclose(
            algebra.scalar(hp**2 * OMEGA**2 / 4), 1e-12
        )
        assert star(h_minus, h_minus, product).isclose(
            algebra.scalar(hm**2 * OMEGA**2 / 4), 1e-12
        )

    def test_mixed_equals_pointwise_and_commutes(self, setup):
        _, product, h_plus, h_minus = setup
        assert star(h_plus, h_minus, product).isclose(h_plus * h_minus, 1e-12)
        comm = star_bracket(h_plus, h_minus, product, BracketMode.COMM)
        assert comm.norm_inf() < 1e-12


class TestStarPower:
    def test_zeroth_power(self, setup, rng):
        algebra, product, _, _ = setup
        f = random_element(algebra, rng)
        assert star_power(f, 0, product).isclose(algebra.one())

    def test_square_of_half(self, setup):
        algebra, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        assert star_power(h_plus, 2, product).isclose(
            algebra.scalar(hp**2 * OMEGA**2 / 4), 1e-12
        )

    def test_projector_idempotent(self, setup):
        algebra, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        w = algebra.scalar(0.5) + h_plus * (1.0 / (hp * OMEGA))
        assert star_power(w, 2, product).isclose(w, 1e-12)

    def test_negative_rejected(self, setup):
        algebra, product, _, _ = setup
        with pytest.raises(AlgebraError):
            star_power(algebra.one(), -1, product)


class TestAssociativity:
    def test_random_triples(self, setup, rng):
        algebra, product, _, _ = setup
        worst = 0.0
        for _ in range(200):
            f, g, h = (random_element(algebra, rng, density=0.5) for _ in range(3))
            lhs = star(star(f, g, product), h, product)
            rhs = star(f, star(g, h, product), product)
            worst = max(worst, (lhs - rhs).norm_inf())
        assert worst < 1e-11


class TestSemiclassicalOrder:
    def test_residual_scales_quadratically(self, theta_algebra, rng):
        # star - pointwise - first_order carries only contraction order >= 2,
        # so scaling the form by eps scales the residual by eps^2
        f = random_element(theta_algebra, rng)
        g = random_element(theta_algebra, rng)
        base = nac_form(theta_algebra, HBAR, C, 0.25).matrix

        def residual(eps):
            product = build_star_product(SymmetricForm(eps * base, theta_algebra))
            full = star(f, g, product)
            return (full - f * g - first_order_term(f, g, product)).norm_inf()

        r1, r2 = residual(1e-3), residual(5e-4)
        assert r1 > 0
        assert abs(r1 / r2 - 4.0) < 0.2


class TestExponential:
    def test_time_zero(self, setup):
        algebra, product, h_plus, _ = setup
        out = star_exponential(h_plus, 0.0, 1.0, product)
        assert out.terms() == {0: 1.0 + 0j}

    def test_projector_phases(self, setup):
        algebra, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        w_up = algebra.scalar(0.5) + h_plus * (1.0 / (hp * OMEGA))
        w_dn = algebra.scalar(0.5) - h_plus * (1.0 / (hp * OMEGA))
        for t in (0.7, 2.0, np.pi / OMEGA):
            direct = star_exponential(h_plus, t, hp, product)
            expansion = (
                np.exp(-1j * OMEGA * t / 2) * w_up + np.exp(1j * OMEGA * t / 2) * w_dn
            )
            assert (direct - expansion).norm_inf() < 1e-12

    def test_full_period_returns_to_one(self, setup):
        algebra, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        out = star_exponential(h_plus, 4 * np.pi / OMEGA, hp, product)
        assert (out - algebra.one()).norm_inf() < 1e-10

    def test_matches_series_at_small_time(self, setup):
        algebra, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        t = 0.05
        direct = star_exponential(h_plus, t, hp, product)
        series = series_exponential_reference(h_plus, t, hp, product, terms=60)
        assert (direct - series).norm_inf() < 1e-12

    def test_zero_scale_rejected(self, setup):
        algebra, product, h_plus, _ = setup
        with pytest.raises(AlgebraError):
            star_exponential(h_plus, 1.0, 0.0, product)
