"""Dense operator representation of star multiplication and spectral solves.

Star multiplication by a fixed element is a linear map on the 2**n-dimensional
coefficient space (basis: monomials ordered by bitmask value).  The solver
finds the phase-space projectors W of a commuting family {H_k} satisfying

    H_k * W = E_k W = W * H_k,

by clustering the eigenvalues of each left-multiplication matrix and building
the spectral idempotents as Lagrange interpolation polynomials in H_k under
the star product:

    W_E = prod_{E' != E} (H - E') / (E - E').

Joint projectors are star products across the family; the list form exists
because a degenerate eigenvalue of one element (e.g. a level crossing) is
resolved by the others.  One Newton polishing step W <- 3W*W - 2W*W*W absorbs
floating-point noise; idempotency, orthogonality, completeness and the
genvalue residuals are verified before returning.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraError, GrassmannAlgebra, GrassmannElement
from .star import StarProduct, BracketMode, star, star_bracket

__all__ = [
    "AlgebraOperator",
    "OperatorSide",
    "SolverError",
    "SpectralResolution",
    "coefficient_vector",
    "element_from_vector",
    "fourier_dirichlet_residuals",
    "mult_operator",
    "spectral_decompose",
    "star_genvalue_solve",
]

CLUSTER_TOL = 1e-9
COMMUTATOR_TOL = 1e-10
PROJECTOR_TOL = 1e-8


class OperatorSide(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class SolverError(RuntimeError):
    """Raised when a star-genvalue solve cannot certify its projectors."""


def coefficient_vector(f: GrassmannElement) -> np.ndarray:
    """Coefficients of ``f`` on the monomial basis ordered by bitmask."""
    vec = np.zeros(f.algebra.dimension, dtype=complex)
    for m, c in f._terms.items():
        vec[m] = c
    return vec


def element_from_vector(algebra: GrassmannAlgebra, vec: np.ndarray) -> GrassmannElement:
    return GrassmannElement(algebra, {m: c for m, c in enumerate(vec)})


@dataclass(frozen=True)
class AlgebraOperator:
    """Dense matrix of left or right star multiplication by ``source``."""

    matrix: np.ndarray
    side: OperatorSide
    source: GrassmannElement
    product: StarProduct

    def apply(self, g: GrassmannElement) -> GrassmannElement:
        return element_from_vector(g.algebra, self.matrix @ coefficient_vector(g))


def mult_operator(
    f: GrassmannElement, product: StarProduct, side: OperatorSide = OperatorSide.LEFT
) -> AlgebraOperator:
    """Matrix whose columns are star products of ``f`` with basis monomials."""
    algebra = product.algebra
    dim = algebra.dimension
    mat = np.zeros((dim, dim), dtype=complex)
    for m in range(dim):
        basis = GrassmannElement(algebra, {m: 1.0 + 0j})
        col = star(f, basis, product) if side == OperatorSide.LEFT else star(
            basis, f, product
        )
        mat[:, m] = coefficient_vector(col)
    return AlgebraOperator(mat, side, f, product)


def _cluster(values: np.ndarray, tol: float) -> list[complex]:
    """Distinct values of a spectrum, merging points within tol (single link)."""
    order = sorted(values, key=lambda z: (-z.real, -z.imag))
    clusters: list[list[complex]] = []
    for z in order:
        for cl in clusters:
            if abs(z - cl[0]) <= tol:
                cl.append(z)
                break
        else:
            clusters.append([z])
    reps = [complex(np.mean(cl)) for cl in clusters]
    reps.sort(key=lambda z: (-z.real, -z.imag))
    return reps


def _lagrange_projectors(
    h: GrassmannElement, eigenvalues: list[complex], product: StarProduct
) -> list[GrassmannElement]:
    one = product.algebra.one()
    if len(eigenvalues) == 1:
        return [one]
    projectors = []
    for k, ek in enumerate(eigenvalues):
        w = one
        for l, el in enumerate(eigenvalues):
            if l == k:
                continue
            w = star(w, (h - el) * (1.0 / (ek - el)), product)
        projectors.append(w)
    return projectors


@dataclass(frozen=True)
class SpectralEntry:
    value: complex            # total eigenvalue, sum over the family
    parts: tuple              # per-family-member eigenvalue
    projector: GrassmannElement
    label: str                # "+"/"-" per member when two levels, else index


@dataclass(frozen=True)
class SpectralResolution:
    entries: tuple

    @property
    def eigenvalues(self) -> list[complex]:
        return [e.value for e in self.entries]

    @property
    def projectors(self) -> list[GrassmannElement]:
        return [e.projector for e in self.entries]

    def labelled(self) -> dict[str, SpectralEntry]:
        return {e.label: e for e in self.entries}

    def projector_for(self, label: str) -> GrassmannElement:
        return self.labelled()[label].projector


def _rank(w: GrassmannElement) -> float:
    """Trace of a projector over the algebra = 2**(n/2) times its scalar part."""
    n = w.algebra.n
    return (2 ** (n / 2)) * w.scalar_part().real


def star_genvalue_solve(
    hs, product: StarProduct, cluster_tol: float = CLUSTER_TOL
) -> SpectralResolution:
    """Joint projectors and eigenvalues of a pairwise star-commuting family."""
    hs = list(hs)
    if not hs:
        raise AlgebraError("need at least one element to solve")
    for a, b in itertools.combinations(hs, 2):
        comm = star_bracket(a, b, product, BracketMode.COMM)
        scale = max(1.0, a.norm_inf() * b.norm_inf())
        if comm.norm_inf() > COMMUTATOR_TOL * scale:
            raise SolverError(
                "inputs do not star-commute "
                f"(residual {comm.norm_inf():.3e} on scale {scale:.3e})"
            )

    per_h: list[tuple[list[complex], list[GrassmannElement]]] = []
    for h in hs:
        lop = mult_operator(h, product, OperatorSide.LEFT)
        raw = np.linalg.eigvals(lop.matrix)
        radius = max(1.0, float(np.max(np.abs(raw))))
        values = _cluster(raw, cluster_tol * radius)
        per_h.append((values, _lagrange_projectors(h, values, product)))

    entries = []
    for combo in itertools.product(*(range(len(v)) for v, _ in per_h)):
        w = product.algebra.one()
        parts = []
        for k, idx in enumerate(combo):
            values, projs = per_h[k]
            w = star(w, projs[idx], product)
            parts.append(values[idx])
        if _rank(w) < 0.5:
            continue  # incompatible eigenvalue combination
        w = 3 * star(w, w, product) - 2 * star(w, star(w, w, product), product)
        label = "".join(
            ("+", "-")[idx] if len(per_h[k][0]) == 2 else str(idx)
            for k, idx in enumerate(combo)
        )
        entries.append(
            SpectralEntry(sum(parts), tuple(parts), w, label)
        )

    resolution = SpectralResolution(tuple(entries))
    _certify(hs, resolution, product)
    return resolution


def _certify(hs, resolution: SpectralResolution, product: StarProduct):
    projs = resolution.projectors
    scale = max([1.0] + [w.norm_inf() for w in projs])
    worst = 0.0
    for a, wa in enumerate(projs):
        for b, wb in enumerate(projs):
            prod = star(wa, wb, product)
            expect = wa if a == b else product.algebra.zero()
            worst = max(worst, (prod - expect).norm_inf())
    total = product.algebra.zero()
    for w in projs:
        total = total + w
    worst = max(worst, (total - product.algebra.one()).norm_inf())
    for entry in resolution.entries:
        for h, ev in zip(hs, entry.parts):
            left = star(h, entry.projector, product) - ev * entry.projector
            right = star(entry.projector, h, product) - ev * entry.projector
            worst = max(worst, left.norm_inf(), right.norm_inf())
    if worst > PROJECTOR_TOL * scale:
        raise SolverError(
            f"projector certification failed (residual {worst:.3e}); "
            "the input may be non-diagonalizable under the star product"
        )


def spectral_decompose(
    h: GrassmannElement, product: StarProduct
) -> tuple[SpectralResolution, float]:
    """Resolution of a single element plus the reconstruction residual
    max-coefficient of H - sum_E E W_E."""
    from .algebra import Parity, parity

    if parity(h) == Parity.ODD or parity(h) == Parity.MIXED:
        raise AlgebraError("spectral decomposition needs an even element")
    resolution = star_genvalue_solve([h], product)
    recon = product.algebra.zero()
    for entry in resolution.entries:
        recon = recon + entry.value * entry.projector
    return resolution, (h - recon).norm_inf()


def fourier_dirichlet_residuals(
    h: GrassmannElement, scale: float, times, product: StarProduct
) -> list[float]:
    """Max-coefficient residuals of Exp(-iHt/scale) vs the projector sum
    sum_E W_E exp(-iEt/scale) at each requested time."""
    from .star import star_exponential

    resolution, _ = spectral_decompose(h, product)
    residuals = []
    for t in times:
        direct = star_exponential(h, t, scale, product)
        expansion = product.algebra.zero()
        for entry in resolution.entries:
            expansion = expansion + np.exp(-1j * entry.value * t / scale) * entry.projector
        residuals.append((direct - expansion).norm_inf())
    return residuals
