"""Traces, partial traces, state spectra and entanglement entropies.

The trace over m generators (m even) is

    Tr(F) = (2**(m/2) / hbar**m) int dt_m ... dt_1 (star-dual of F),

normalized so phase-space projectors have unit trace; only the scalar part of
F survives, and the hbar powers cancel against the Berezin weight.  The
partial trace over an even generator subset uses the same formula with the
Hodge dual taken inside the traced subset, leaving an element supported on the
kept generators.

Spectra of reduced states come from the star-genvalue solver restricted to
the kept subalgebra; each projector contributes its eigenvalue once per unit
of rank (its trace in that subalgebra).  Reduced Wigner functions are
quasi-probability distributions: their eigenvalues sum to one but may leave
[0, 1], so the entropy used throughout is the absolute-eigenvalue form

    S(W) = - sum_i |p_i| ln |p_i|.

A star-logarithm series would define the von Neumann entropy directly, but it
does not converge term-wise on idempotent-built states; everything here is
evaluated spectrally instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraError,
    GrassmannAlgebra,
    GrassmannElement,
    berezin_integral,
    hodge_dual,
    monomial_indices,
    monomial_mask,
    restrict,
)
from .star import StarProduct, SymmetricForm, build_star_product, star_power
from .spectral import star_genvalue_solve

__all__ = [
    "Bipartition",
    "EntropyReport",
    "IndefiniteStateError",
    "WignerState",
    "closed_form_entanglement",
    "closed_form_report",
    "closed_form_spectrum",
    "entanglement_entropy",
    "entropy_abs",
    "entropy_report",
    "level_scales",
    "partial_trace",
    "reduced_state",
    "renyi_entropy",
    "state_spectrum",
    "trace",
]

SPECTRUM_IMAG_TOL = 1e-9
NONNEGATIVE_TOL = 1e-12


class IndefiniteStateError(ValueError):
    """Raised when an entropy needs a non-negative spectrum but the Wigner
    eigenvalues are indefinite (the result would be complex)."""


def trace(f: GrassmannElement, hbar: float = 1.0) -> complex:
    """Phase-space trace over all generators of ``f``'s algebra."""
    m = f.algebra.n
    if m % 2:
        raise AlgebraError("trace needs an even number of generators")
    dual = hodge_dual(f)
    integrated = berezin_integral(dual, list(range(m - 1, -1, -1)), hbar=hbar)
    return (2 ** (m / 2) / hbar**m) * integrated.scalar_part()


@dataclass(frozen=True)
class Bipartition:
    """Split of the generators into kept and traced subsets (both even)."""

    keep: tuple
    traced: tuple
    algebra: GrassmannAlgebra

    @classmethod
    def from_labels(cls, algebra: GrassmannAlgebra, keep) -> "Bipartition":
        keep = tuple(keep)
        traced = tuple(n for n in algebra.names if n not in keep)
        if len(keep) % 2 or len(traced) % 2:
            raise AlgebraError("both bipartition blocks must have even size")
        if set(keep) | set(traced) != set(algebra.names) or len(set(keep)) != len(keep):
            raise AlgebraError("bipartition must split the generator set")
        return cls(keep, traced, algebra)

    @property
    def traced_indices(self) -> tuple:
        return tuple(self.algebra.index[n] for n in self.traced)

    @property
    def keep_indices(self) -> tuple:
        return tuple(self.algebra.index[n] for n in self.keep)


def partial_trace(
    f: GrassmannElement, traced, hbar: float = 1.0
) -> GrassmannElement:
    """Trace out an even generator subset; result is supported on the rest.

    ``traced`` lists generator indices.  Implements the subset-Hodge form
    (2**(k/2) / hbar**k) int dt_{traced, descending} (dual_in_subset F).
    """
    traced = sorted(traced)
    k = len(traced)
    if k % 2:
        raise AlgebraError("traced subset must have even size")
    dual = hodge_dual(f, traced)
    integrated = berezin_integral(dual, list(reversed(traced)), hbar=hbar)
    leftover = integrated.support() & monomial_mask(traced)
    if leftover:
        raise AlgebraError("partial trace left support on traced generators")
    return (2 ** (k / 2) / hbar**k) * integrated


def reduced_state(
    f: GrassmannElement, bipartition: Bipartition, product: StarProduct
) -> tuple[GrassmannElement, StarProduct]:
    """Partial trace over the bipartition's traced block, reindexed onto the
    kept subalgebra together with the restricted star product."""
    hbar = product.hbar
    red = partial_trace(f, bipartition.traced_indices, hbar=hbar)
    red_sub, _ = restrict(red, list(bipartition.keep))
    sub_form = product.form.restricted(bipartition.keep_indices)
    return red_sub, build_star_product(sub_form)


@dataclass(frozen=True)
class EntropyReport:
    """Eigenvalues of a state with the entropies derived from them."""

    eigenvalues: tuple
    s_abs: float
    s_renyi: float | None = None
    renyi_alpha: float | None = None
    method: str = "spectral"


def state_spectrum(w: GrassmannElement, product: StarProduct) -> list[float]:
    """Star-genvalue spectrum of a reduced state, with multiplicities.

    Each projector repeats its eigenvalue once per unit of rank, the rank
    being its trace in the state's algebra.
    """
    resolution = star_genvalue_solve([w], product)
    hbar = product.hbar
    values: list[float] = []
    for entry in resolution.entries:
        ev = entry.value
        if abs(ev.imag) > SPECTRUM_IMAG_TOL * max(1.0, abs(ev)):
            raise AlgebraError(f"state eigenvalue {ev} is not real")
        rank = trace(entry.projector, hbar=hbar).real
        mult = round(rank)
        if abs(rank - mult) > 1e-6 or mult < 1:
            raise AlgebraError(f"projector rank {rank} is not a positive integer")
        values.extend([float(ev.real)] * mult)
    return sorted(values, reverse=True)


def entropy_abs(eigenvalues) -> float:
    """Absolute-eigenvalue entropy -sum |p| ln |p| with 0 ln 0 = 0."""
    s = 0.0
    for p in eigenvalues:
        a = abs(p)
        if a > 0.0:
            s -= a * math.log(a)
    return s


def renyi_entropy(
    w: GrassmannElement, alpha: float, product: StarProduct
) -> float:
    """Quantum Renyi entropy ln(Tr(W^{*alpha})) / (1 - alpha).

    Integer alpha uses star powers and the trace; non-integer alpha is only
    defined for non-negative spectra (otherwise the power is complex-valued
    and IndefiniteStateError is raised).
    """
    if alpha <= 0 or alpha == 1:
        raise AlgebraError("Renyi order must be positive and not equal to 1")
    hbar = product.hbar
    if float(alpha).is_integer():
        power = star_power(w, int(round(alpha)), product)
        value = trace(power, hbar=hbar)
        if abs(value.imag) > 1e-10 * max(1.0, abs(value)):
            raise IndefiniteStateError(f"Tr(W^*{int(alpha)}) = {value} is not real")
        if value.real <= 0:
            raise IndefiniteStateError(
                f"Tr(W^*{int(alpha)}) = {value.real:.6g} <= 0; entropy undefined"
            )
        return float(math.log(value.real) / (1.0 - alpha))
    spectrum = state_spectrum(w, product)
    if any(p < -NONNEGATIVE_TOL for p in spectrum):
        raise IndefiniteStateError(
            "non-integer Renyi order on an indefinite Wigner spectrum"
        )
    total = sum(max(p, 0.0) ** alpha for p in spectrum)
    return float(math.log(total) / (1.0 - alpha))


def entropy_report(
    w: GrassmannElement, product: StarProduct, renyi_alpha: float | None = None
) -> EntropyReport:
    spectrum = state_spectrum(w, product)
    s_renyi = None
    if renyi_alpha is not None:
        s_renyi = renyi_entropy(w, renyi_alpha, product)
    return EntropyReport(
        tuple(spectrum), entropy_abs(spectrum), s_renyi, renyi_alpha
    )


def closed_form_report(
    which: str, hbar: float, c: float, d: float, renyi_alpha: float | None = None
) -> EntropyReport:
    """EntropyReport built from the closed-form spectrum instead of a solve."""
    spectrum = closed_form_spectrum(which, hbar, c, d)
    s_renyi = None
    if renyi_alpha is not None:
        if renyi_alpha <= 0 or renyi_alpha == 1:
            raise AlgebraError("Renyi order must be positive and not equal to 1")
        if float(renyi_alpha).is_integer():
            total = sum(p ** int(renyi_alpha) for p in spectrum)
        else:
            if any(p < -NONNEGATIVE_TOL for p in spectrum):
                raise IndefiniteStateError(
                    "non-integer Renyi order on an indefinite Wigner spectrum"
                )
            total = sum(max(p, 0.0) ** float(renyi_alpha) for p in spectrum)
        if total <= 0:
            raise IndefiniteStateError("Renyi trace is not positive")
        s_renyi = float(math.log(total) / (1.0 - renyi_alpha))
    return EntropyReport(
        tuple(spectrum),
        entropy_abs(spectrum),
        s_renyi,
        renyi_alpha,
        method="closed_form",
    )


def entanglement_entropy(
    w: GrassmannElement, bipartition: Bipartition, product: StarProduct
) -> float:
    """Absolute-eigenvalue entropy of the reduced state on the kept block."""
    red, red_product = reduced_state(w, bipartition, product)
    return entropy_abs(state_spectrum(red, red_product))


def level_scales(hbar: float, c: float, d: float) -> tuple[float, float]:
    """The pair h_pm = sqrt((hbar +- c)(hbar +- d)) setting the two level
    spacings of the deformed oscillators."""
    return (
        math.sqrt((hbar + c) * (hbar + d)),
        math.sqrt((hbar - c) * (hbar - d)),
    )


_STATE_KEYS = {"++": "pp", "--": "mm", "+-": "pm", "-+": "mp"}


def closed_form_spectrum(
    which: str, hbar: float, c: float, d: float
) -> tuple[float, float]:
    """Closed-form reduced-state eigenvalues (p1, p2) for a projector label.

    For the ++/-- states p1 = 1/2 + hbar (h+ + h-)/(4 h+ h-); the +-/-+
    states use the difference h+ - h- instead.  Requires |c|, |d| < hbar.
    """
    key = _STATE_KEYS.get(which, which)
    if key not in _STATE_KEYS.values():
        raise AlgebraError(f"unknown state label {which!r}")
    if abs(c) >= hbar or abs(d) >= hbar:
        raise AlgebraError("closed forms need |c| < hbar and |d| < hbar")
    hp, hm = level_scales(hbar, c, d)
    if key in ("pp", "mm"):
        t = hbar * (hp + hm) / (4.0 * hp * hm)
    else:
        t = hbar * (hp - hm) / (4.0 * hp * hm)
    return 0.5 + t, 0.5 - t


def closed_form_entanglement(which: str, hbar: float, c: float, d: float) -> float:
    """Closed-form entanglement entropy of a two-oscillator projector state."""
    return entropy_abs(closed_form_spectrum(which, hbar, c, d))


@dataclass
class WignerState:
    """A unit-trace even element together with its star product."""

    element: GrassmannElement
    product: StarProduct
    trace_value: float = field(init=False)

    def __post_init__(self):
        t = trace(self.element, hbar=self.product.hbar)
        if abs(t.imag) > 1e-10 * max(1.0, abs(t)):
            raise AlgebraError(f"state trace {t} is not real")
        self.trace_value = float(t.real)

    def spectrum(self) -> list[float]:
        return state_spectrum(self.element, self.product)

    def entropy(self) -> float:
        return entropy_abs(self.spectrum())
