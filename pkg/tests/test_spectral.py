"""Operator representation, star-genvalue solves, time-evolution expansion."""

import numpy as np
import pytest

from fermidq.algebra import AlgebraError, GrassmannElement
from fermidq.spectral import (
    OperatorSide,
    SolverError,
    coefficient_vector,
    element_from_vector,
    fourier_dirichlet_residuals,
    mult_operator,
    spectral_decompose,
    star_genvalue_solve,
)
from fermidq.star import build_star_product, nac_form, star
from fermidq.states import level_scales, trace

from conftest import nac_setup, random_element

HBAR, C, D, OMEGA = 1.0, 0.35, 0.15, 1.0


@pytest.fixture
def setup():
    return nac_setup(HBAR, C, D, OMEGA)


class TestMultOperator:
    def test_identity(self, setup):
        algebra, product, _, _ = setup
        op = mult_operator(algebra.one(), product)
        assert np.allclose(op.matrix, np.eye(16))

    def test_left_matches_star(self, setup, rng):
        algebra, product, h_plus, _ = setup
        op = mult_operator(h_plus, product, OperatorSide.LEFT)
        g = random_element(algebra, rng)
        direct = star(h_plus, g, product)
        assert (op.apply(g) - direct).norm_inf() < 1e-12

    def test_right_matches_star(self, setup, rng):
        algebra, product, h_plus, _ = setup
        op = mult_operator(h_plus, product, OperatorSide.RIGHT)
        g = random_element(algebra, rng)
        assert (op.apply(g) - star(g, h_plus, product)).norm_inf() < 1e-12

    def test_homomorphism(self, setup, rng):
        algebra, product, _, _ = setup
        f = random_element(algebra, rng)
        g = random_element(algebra, rng)
        lf = mult_operator(f, product).matrix
        lg = mult_operator(g, product).matrix
        lfg = mult_operator(star(f, g, product), product).matrix
        scale = max(1.0, np.max(np.abs(lf)) * np.max(np.abs(lg)))
        assert np.max(np.abs(lf @ lg - lfg)) < 1e-10 * scale

    def test_antihomomorphism(self, setup, rng):
        algebra, product, _, _ = setup
        f = random_element(algebra, rng)
        g = random_element(algebra, rng)
        rf = mult_operator(f, product, OperatorSide.RIGHT).matrix
        rg = mult_operator(g, product, OperatorSide.RIGHT).matrix
        rfg = mult_operator(star(f, g, product), product, OperatorSide.RIGHT).matrix
        scale = max(1.0, np.max(np.abs(rf)) * np.max(np.abs(rg)))
        assert np.max(np.abs(rg @ rf - rfg)) < 1e-10 * scale

    def test_left_right_commute(self, setup, rng):
        algebra, product, _, _ = setup
        f = random_element(algebra, rng)
        g = random_element(algebra, rng)
        lf = mult_operator(f, product, OperatorSide.LEFT).matrix
        rg = mult_operator(g, product, OperatorSide.RIGHT).matrix
        scale = max(1.0, np.max(np.abs(lf)) * np.max(np.abs(rg)))
        assert np.max(np.abs(lf @ rg - rg @ lf)) < 1e-10 * scale

    def test_squared_half_is_scalar_matrix(self, setup):
        _, product, h_plus, _ = setup
        hp, _ = level_scales(HBAR, C, D)
        lop = mult_operator(h_plus, product).matrix
        assert np.max(np.abs(lop @ lop - (hp * OMEGA / 2) ** 2 * np.eye(16))) < 1e-12

    def test_vector_round_trip(self, setup, rng):
        algebra, _, _, _ = setup
        f = random_element(algebra, rng)
        back = element_from_vector(algebra, coefficient_vector(f))
        assert back.isclose(f, 0)


class TestGenvalueSolve:
    def test_trivial_input(self, setup):
        algebra, product, _, _ = setup
        res = star_genvalue_solve([algebra.one()], product)
        assert len(res.entries) == 1
        assert abs(res.entries[0].value - 1.0) < 1e-12
        assert res.entries[0].projector.isclose(algebra.one())

    def test_joint_energies(self, setup):
        _, product, h_plus, h_minus = setup
        res = star_genvalue_solve([h_plus, h_minus], product)
        hp, hm = level_scales(HBAR, C, D)
        expected = {
            "++": (hp + hm) * OMEGA / 2,
            "+-": (hp - hm) * OMEGA / 2,
            "-+": -(hp - hm) * OMEGA / 2,
            "--": -(hp + hm) * OMEGA / 2,
        }
        assert len(res.entries) == 4
        for entry in res.entries:
            assert abs(entry.value - expected[entry.label]) < 1e-10

    def test_spectrum_symmetric_and_spaced(self, setup):
        _, product, h_plus, h_minus = setup
        res = star_genvalue_solve([h_plus, h_minus], product)
        values = sorted(e.value.real for e in res.entries)
        assert np.allclose(values, [-v for v in reversed(values)])
        res_p, _ = spectral_decompose(h_plus, product)
        hp, _ = level_scales(HBAR, C, D)
        spacing = res_p.entries[0].value.real - res_p.entries[-1].value.real
        assert abs(spacing - hp * OMEGA) < 1e-12

    def test_projector_algebra(self, setup):
        algebra, product, h_plus, h_minus = setup
        res = star_genvalue_solve([h_plus, h_minus], product)
        projs = res.projectors
        total = algebra.zero()
        for i, wa in enumerate(projs):
            total = total + wa
            for j, wb in enumerate(projs):
                prod = star(wa, wb, product)
                expect = wa if i == j else algebra.zero()
                assert (prod - expect).norm_inf() < 1e-10
        assert (total - algebra.one()).norm_inf() < 1e-10

    def test_projector_traces(self, setup):
        _, product, h_plus, h_minus = setup
        res = star_genvalue_solve([h_plus, h_minus], product)
        for w in res.projectors:
            assert abs(trace(w, HBAR) - 1.0) < 1e-10

    def test_even_parity_projectors(self, setup):
        _, product, h_plus, h_minus = setup
        res = star_genvalue_solve([h_plus, h_minus], product)
        for w in res.projectors:
            assert all(g % 2 == 0 for g in w.grades())

    def test_reduced_state_eigenfunctions(self):
        # two-generator case: the eigenfunctions are 1/2 -+ (i/hbar) t1 t3
        from fermidq.algebra import GrassmannAlgebra
        from fermidq.star import SymmetricForm

        sub = GrassmannAlgebra(["th1", "th3"])
        product = build_star_product(SymmetricForm(HBAR * np.eye(2), sub))
        t13 = sub.generator("th1") * sub.generator("th3")
        hp, hm = level_scales(HBAR, 0.5, 0.5)
        w = sub.scalar(0.5) + (-1j * (hp + hm) / (2 * hp * hm)) * t13
        res = star_genvalue_solve([w], product)
        p1 = 0.5 + HBAR * (hp + hm) / (4 * hp * hm)
        f1 = sub.scalar(0.5) - (1j / HBAR) * t13
        f2 = sub.scalar(0.5) + (1j / HBAR) * t13
        by_label = {e.label: e for e in res.entries}
        assert abs(by_label["+"].value - p1) < 1e-12
        assert by_label["+"].projector.isclose(f1, 1e-12)
        assert by_label["-"].projector.isclose(f2, 1e-12)

    def test_noncommuting_inputs_rejected(self, setup):
        algebra, product, h_plus, _ = setup
        t1 = algebra.generator("th1")
        with pytest.raises(SolverError):
            star_genvalue_solve([t1, h_plus], product)

    def test_degenerate_merge_and_resolution(self):
        # at c = -d the middle levels of the full Hamiltonian coincide; a
        # single-element solve merges them into one rank-2 projector and the
        # commuting pair resolves them
        algebra, product, h_plus, h_minus = nac_setup(HBAR, 0.3, -0.3, OMEGA)
        h = h_plus + h_minus
        res_single, _ = spectral_decompose(h, product)
        assert len(res_single.entries) == 3
        middle = [e for e in res_single.entries if abs(e.value) < 1e-9][0]
        assert abs(trace(middle.projector, HBAR) - 2.0) < 1e-10
        res_joint = star_genvalue_solve([h_plus, h_minus], product)
        assert len(res_joint.entries) == 4


class TestSpectralDecompose:
    def test_half_hamiltonian(self, setup):
        algebra, product, h_plus, _ = setup
        res, residual = spectral_decompose(h_plus, product)
        hp, _ = level_scales(HBAR, C, D)
        w_up = algebra.scalar(0.5) + h_plus * (1.0 / (hp * OMEGA))
        assert residual < 1e-12
        assert res.projector_for("+").isclose(w_up, 1e-12)

    def test_zero_element(self, setup):
        algebra, product, _, _ = setup
        res, residual = spectral_decompose(algebra.zero(), product)
        assert residual < 1e-14
        assert len(res.entries) == 1
        assert res.entries[0].projector.isclose(algebra.one())

    def test_full_hamiltonian_reconstruction(self, setup):
        _, product, h_plus, h_minus = setup
        res, residual = spectral_decompose(h_plus + h_minus, product)
        assert residual < 1e-10

    def test_odd_element_rejected(self, setup):
        algebra, product, _, _ = setup
        with pytest.raises(AlgebraError):
            spectral_decompose(algebra.generator("th1"), product)


class TestFourierDirichlet:
    def test_half_hamiltonians(self, setup):
        _, product, h_plus, h_minus = setup
        hp, hm = level_scales(HBAR, C, D)
        times = [0.0, 1.0, np.pi / OMEGA]
        assert max(fourier_dirichlet_residuals(h_plus, hp, times, product)) < 1e-9
        assert max(fourier_dirichlet_residuals(h_minus, hm, times, product)) < 1e-9

    def test_full_hamiltonian_random_times(self, setup, rng):
        _, product, h_plus, h_minus = setup
        times = rng.uniform(0.0, 8.0, 5)
        res = fourier_dirichlet_residuals(
            h_plus + h_minus, HBAR, times, product
        )
        assert max(res) < 1e-9
