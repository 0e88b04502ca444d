"""Traces, partial traces, spectra, and entanglement entropies."""

import math

import numpy as np
import pytest

from fermidq.algebra import AlgebraError, GrassmannAlgebra, restrict
from fermidq.spectral import star_genvalue_solve
from fermidq.star import SymmetricForm, build_star_product
from fermidq.states import (
    Bipartition,
    IndefiniteStateError,
    WignerState,
    closed_form_entanglement,
    closed_form_spectrum,
    entanglement_entropy,
    entropy_abs,
    level_scales,
    partial_trace,
    reduced_state,
    renyi_entropy,
    state_spectrum,
    trace,
)

from conftest import nac_setup, random_element

HBAR, OMEGA = 1.0, 1.0
LN2 = math.log(2.0)


def solve_pp(c, d):
    algebra, product, h_plus, h_minus = nac_setup(HBAR, c, d, OMEGA)
    res = star_genvalue_solve([h_plus, h_minus], product)
    return algebra, product, res


class TestTrace:
    def test_unit_projector_traces(self):
        _, product, res = solve_pp(0.5, 0.5)
        for w in res.projectors:
            assert abs(trace(w, HBAR) - 1.0) < 1e-12

    def test_identity_traces_to_dimension(self, theta_algebra):
        assert trace(theta_algebra.one(), HBAR) == 4.0

    def test_quadratic_term_traceless(self, theta_algebra):
        t13 = theta_algebra.generator("th1") * theta_algebra.generator("th3")
        assert trace(t13, HBAR) == 0.0

    def test_hbar_independent(self, theta_algebra, rng):
        f = random_element(theta_algebra, rng)
        assert abs(trace(f, 1.0) - trace(f, 2.5)) < 1e-12

    def test_odd_generator_count_rejected(self):
        algebra = GrassmannAlgebra(["a", "b", "c"])
        with pytest.raises(AlgebraError):
            trace(algebra.one())


class TestPartialTrace:
    @pytest.mark.parametrize("c,d", [(0.5, 0.5), (0.3, -0.3), (0.0, 0.0), (0.2, 0.6)])
    def test_reduced_coefficients(self, c, d):
        algebra, product, res = solve_pp(c, d)
        hp, hm = level_scales(HBAR, c, d)
        coeff = -1j * (hp + hm) / (2 * hp * hm)
        t = {k: algebra.generator(f"th{k}") for k in (1, 2, 3, 4)}
        wpp = res.projector_for("++")
        red13 = partial_trace(wpp, [1, 3], HBAR)
        assert (red13 - (algebra.scalar(0.5) + coeff * (t[1] * t[3]))).norm_inf() < 1e-12
        red24 = partial_trace(wpp, [0, 2], HBAR)
        assert (red24 - (algebra.scalar(0.5) + coeff * (t[2] * t[4]))).norm_inf() < 1e-12

    def test_identity_reduces_to_two(self, theta_algebra):
        out = partial_trace(theta_algebra.one(), [1, 3], HBAR)
        assert out.isclose(theta_algebra.scalar(2.0))

    def test_consistency_with_full_trace(self, theta_algebra, rng):
        for _ in range(10):
            f = random_element(theta_algebra, rng, parity=0)
            for traced, kept in ([(1, 3), ("th1", "th3")], [(0, 2), ("th2", "th4")]):
                red = partial_trace(f, traced, HBAR)
                sub_el, _ = restrict(red, list(kept))
                assert abs(trace(sub_el, HBAR) - trace(f, HBAR)) < 1e-10

    def test_odd_block_rejected(self, theta_algebra):
        with pytest.raises(AlgebraError):
            partial_trace(theta_algebra.one(), [1])

    def test_bipartition_validation(self, theta_algebra):
        with pytest.raises(AlgebraError):
            Bipartition.from_labels(theta_algebra, ("th1",))
        bip = Bipartition.from_labels(theta_algebra, ("th1", "th3"))
        assert bip.traced == ("th2", "th4")


class TestSpectrum:
    def test_matches_closed_form(self):
        for c, d in ((0.5, 0.5), (0.25, -0.6), (0.0, 0.3)):
            algebra, product, res = solve_pp(c, d)
            bip = Bipartition.from_labels(algebra, ("th1", "th3"))
            red, red_product = reduced_state(res.projector_for("++"), bip, product)
            spectrum = state_spectrum(red, red_product)
            p1, p2 = closed_form_spectrum("++", HBAR, c, d)
            assert abs(spectrum[0] - p1) < 1e-10
            assert abs(spectrum[1] - p2) < 1e-10
            assert abs(sum(spectrum) - 1.0) < 1e-10

    def test_frozen_half_deformation_values(self):
        # c = d = hbar/2: h+ = 3/2, h- = 1/2, p = 1/2 +- 2/3
        algebra, product, res = solve_pp(0.5, 0.5)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        red, red_product = reduced_state(res.projector_for("++"), bip, product)
        spectrum = state_spectrum(red, red_product)
        assert abs(spectrum[0] - 7.0 / 6.0) < 1e-12
        assert abs(spectrum[1] + 1.0 / 6.0) < 1e-12

    def test_maximally_mixed(self):
        sub = GrassmannAlgebra(["th1", "th3"])
        product = build_star_product(SymmetricForm(HBAR * np.eye(2), sub))
        spectrum = state_spectrum(sub.scalar(0.5), product)
        assert np.allclose(spectrum, [0.5, 0.5], atol=1e-12)

    def test_pure_at_zero_deformation(self):
        algebra, product, res = solve_pp(0.0, 0.0)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        red, red_product = reduced_state(res.projector_for("++"), bip, product)
        spectrum = state_spectrum(red, red_product)
        assert abs(spectrum[0] - 1.0) < 1e-12
        assert abs(spectrum[1]) < 1e-12


class TestEntropyAbs:
    def test_pure(self):
        assert entropy_abs([1.0, 0.0]) == 0.0

    def test_mixed(self):
        assert abs(entropy_abs([0.5, 0.5]) - LN2) < 1e-15

    def test_indefinite_frozen_value(self):
        # independent evaluation of -(7/6)ln(7/6) - (1/6)ln(1/6)
        expected = -(7 / 6) * math.log(7 / 6) - (1 / 6) * math.log(1 / 6)
        assert abs(expected - 0.1187841184) < 1e-9
        assert abs(entropy_abs([7 / 6, -1 / 6]) - expected) < 1e-15


class TestRenyi:
    def test_projectors_are_pure(self):
        _, product, res = solve_pp(0.4, -0.1)
        for w in res.projectors:
            for alpha in (2, 3, 4):
                assert abs(renyi_entropy(w, alpha, product)) < 1e-10

    def test_maximally_mixed_order_two(self):
        sub = GrassmannAlgebra(["th1", "th3"])
        product = build_star_product(SymmetricForm(HBAR * np.eye(2), sub))
        assert abs(renyi_entropy(sub.scalar(0.5), 2, product) - LN2) < 1e-12

    def test_reduced_state_negative_order_two(self):
        # S2 = -ln(p1^2 + p2^2) = -ln(25/18) < 0 at c = d = hbar/2
        algebra, product, res = solve_pp(0.5, 0.5)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        red, red_product = reduced_state(res.projector_for("++"), bip, product)
        expected = -math.log(25.0 / 18.0)
        assert abs(renyi_entropy(red, 2, red_product) - expected) < 1e-10

    def test_non_integer_on_indefinite_rejected(self):
        algebra, product, res = solve_pp(0.5, 0.5)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        red, red_product = reduced_state(res.projector_for("++"), bip, product)
        with pytest.raises(IndefiniteStateError):
            renyi_entropy(red, 1.5, red_product)

    def test_non_integer_on_definite_spectrum(self):
        sub = GrassmannAlgebra(["th1", "th3"])
        product = build_star_product(SymmetricForm(HBAR * np.eye(2), sub))
        value = renyi_entropy(sub.scalar(0.5), 1.5, product)
        assert abs(value - LN2) < 1e-12

    def test_invalid_alpha(self):
        sub = GrassmannAlgebra(["th1", "th3"])
        product = build_star_product(SymmetricForm(HBAR * np.eye(2), sub))
        for alpha in (0.0, -1.0, 1.0):
            with pytest.raises(AlgebraError):
                renyi_entropy(sub.scalar(0.5), alpha, product)


class TestEntanglementEntropy:
    @pytest.mark.parametrize("c", [0.1, 0.25, 0.45, 0.7])
    def test_balanced_line_maximal(self, c):
        algebra, product, res = solve_pp(c, -c)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        value = entanglement_entropy(res.projector_for("+-"), bip, product)
        assert abs(value - LN2) < 1e-10

    def test_zero_deformation(self):
        algebra, product, res = solve_pp(0.0, 0.0)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        assert abs(entanglement_entropy(res.projector_for("++"), bip, product)) < 1e-10
        assert abs(
            entanglement_entropy(res.projector_for("+-"), bip, product) - LN2
        ) < 1e-10

    def test_half_deformation_frozen_value(self):
        algebra, product, res = solve_pp(0.5, 0.5)
        bip = Bipartition.from_labels(algebra, ("th1", "th3"))
        value = entanglement_entropy(res.projector_for("++"), bip, product)
        assert abs(value - 0.1187841184) < 1e-9

    def test_state_symmetries(self):
        # ++/-- agree, +-/-+ agree, and both bipartitions give the same value
        for c, d in ((0.3, 0.1), (0.45, -0.35)):
            algebra, product, res = solve_pp(c, d)
            bip13 = Bipartition.from_labels(algebra, ("th1", "th3"))
            bip24 = Bipartition.from_labels(algebra, ("th2", "th4"))
            e = {
                k: entanglement_entropy(res.projector_for(k), bip13, product)
                for k in ("++", "--", "+-", "-+")
            }
            assert abs(e["++"] - e["--"]) < 1e-10
            assert abs(e["+-"] - e["-+"]) < 1e-10
            alt = entanglement_entropy(res.projector_for("++"), bip24, product)
            assert abs(e["++"] - alt) < 1e-10


class TestClosedForms:
    def test_anchors(self):
        assert abs(closed_form_entanglement("++", 1.0, 0.5, 0.5) - 0.1187841184) < 1e-9
        assert abs(closed_form_entanglement("+-", 1.0, 0.3, -0.3) - LN2) < 1e-14
        assert closed_form_entanglement("++", 1.0, 0.0, 0.0) == 0.0

    def test_printed_specializations(self):
        # c = d: the two-branch forms in hbar^2 and c^2
        hbar = 1.0
        for c in (0.2, 0.45, 0.8):
            denom = 2 * (hbar**2 - c**2)
            pp = -(2 * hbar**2 - c**2) / denom * math.log(
                (2 * hbar**2 - c**2) / denom
            ) - (c**2) / denom * math.log(c**2 / denom)
            assert abs(closed_form_entanglement("++", hbar, c, c) - pp) < 1e-12
            a = (hbar**2 + hbar * c - c**2) / denom
            b = (hbar**2 - hbar * c - c**2) / denom
            pm = -abs(a) * math.log(abs(a)) - abs(b) * math.log(abs(b))
            assert abs(closed_form_entanglement("+-", hbar, c, c) - pm) < 1e-12

    def test_balanced_line_forms(self):
        hbar = 1.0
        for c in (0.2, 0.6):
            root = math.sqrt(hbar**2 - c**2)
            p1 = (hbar + root) / (2 * root)
            p2 = (root - hbar) / (2 * root)
            expected = entropy_abs([p1, p2])
            assert abs(closed_form_entanglement("++", hbar, c, -c) - expected) < 1e-12

    def test_agreement_with_pipeline_grid(self):
        # closed forms against the spectral pipeline on a 21x21 (c, d) grid
        axis = np.linspace(-0.85, 0.85, 21)
        worst = 0.0
        for c in axis:
            for d in axis:
                algebra, product, res = solve_pp(float(c), float(d))
                bip = Bipartition.from_labels(algebra, ("th1", "th3"))
                for key, label in (("++", "++"), ("+-", "+-")):
                    val = entanglement_entropy(res.projector_for(key), bip, product)
                    closed = closed_form_entanglement(label, HBAR, float(c), float(d))
                    worst = max(worst, abs(val - closed))
        assert worst < 1e-9

    def test_domain_validation(self):
        with pytest.raises(AlgebraError):
            closed_form_entanglement("++", 1.0, 1.0, 0.0)
        with pytest.raises(AlgebraError):
            closed_form_entanglement("??", 1.0, 0.1, 0.1)

    def test_indefinite_direction(self):
        # p1 >= 1 and p2 <= 0 whenever the deformation is on
        for c, d in ((0.3, 0.3), (0.5, -0.2), (0.0, 0.4)):
            p1, p2 = closed_form_spectrum("++", 1.0, c, d)
            assert p1 >= 1.0 - 1e-12
            assert p2 <= 1e-12


class TestWignerState:
    def test_unit_trace_state(self):
        algebra, product, res = solve_pp(0.2, 0.3)
        state = WignerState(res.projector_for("++"), product)
        assert abs(state.trace_value - 1.0) < 1e-10
        assert abs(sum(state.spectrum()) - state.trace_value) < 1e-10
