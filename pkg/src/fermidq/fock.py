"""Operator-formalism cross-checks on small fermionic Fock spaces.

This module is the independent oracle for the star-product machinery.  A
positive-definite symmetric form A factors as L L^T, and

    Theta_i = sum_k L_ik gamma_k / sqrt(2),   {gamma_k, gamma_l} = 2 delta_kl,

gives matrices with {Theta_i, Theta_j} = A_ij, built on 2**(n/2)-dimensional
Fock space through the Jordan-Wigner construction (so distinct-mode operators
anticommute).  The Weyl map sends a monomial of distinct generators to the
antisymmetrized product of the corresponding matrices; its inverse expands a
matrix over that basis.  The defining identity

    symbol(Theta(F) Theta(G)) = F * G

checks every star product against plain matrix multiplication.

The holomorphic route pairs generators into modes, eta_k = (t_a + i t_b) /
sqrt(2 hbar), whose Weyl images are the mode's annihilation/creation
matrices.  A second, slower implementation evaluates the single-mode Wigner
kernel literally: the kernel and the Berezin integrals over the auxiliary
Grassmann variables are computed inside a star algebra whose extra pair of
generators squares to one (the matrix generators), so all operator/Grassmann
anticommutation signs are handled by the product itself.  Both routes must
agree; their disagreement is the sharpest sign-convention alarm in the
package.  Integrals over holomorphic variables are unit-normalized
(int deta eta = 1), which is what makes int deta* deta of the kernel the
identity operator.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .algebra import (
    AlgebraError,
    GrassmannAlgebra,
    GrassmannElement,
    berezin_integral,
    monomial_indices,
    substitute,
)
from .star import StarProduct, SymmetricForm, build_star_product, star

__all__ = [
    "CliffordRep",
    "HolomorphicPairing",
    "clifford_representation",
    "fermion_mode_matrices",
    "holomorphic_transform",
    "inverse_holomorphic_transform",
    "oracle_star",
    "symbol_of_matrix",
    "weyl_quantize",
    "wigner_kernel_matrixelement",
    "wigner_operator_map",
]


@lru_cache(maxsize=None)
def fermion_mode_matrices(modes: int) -> tuple:
    """Jordan-Wigner annihilation/creation pairs ((a_1, adag_1), ...).

    Basis: occupation numbers |n_1 ... n_m> with mode 1 leftmost; the sign
    string makes distinct-mode operators anticommute.
    """
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    eye = np.eye(2, dtype=complex)
    out = []
    for k in range(modes):
        factors = [z] * k + [a] + [eye] * (modes - k - 1)
        mat = factors[0]
        for f in factors[1:]:
            mat = np.kron(mat, f)
        out.append((mat, mat.conj().T))
    return tuple(out)


def _gamma_matrices(n: int) -> list[np.ndarray]:
    """n anticommuting matrices with gamma_k^2 = 1 on ceil(n/2) modes."""
    modes = (n + 1) // 2
    pairs = fermion_mode_matrices(modes)
    gammas = []
    for k in range(modes):
        a, adag = pairs[k]
        gammas.append(a + adag)
        gammas.append(1j * (a - adag))
    return gammas[:n]


def _weyl_monomial(mats: tuple, indices: tuple) -> np.ndarray:
    """Antisymmetrized product over all permutations of distinct matrices."""
    dim = mats[0].shape[0]
    if not indices:
        return np.eye(dim, dtype=complex)
    acc = np.zeros((dim, dim), dtype=complex)
    for perm in itertools.permutations(range(len(indices))):
        sign = _permutation_sign(perm)
        prod = mats[indices[perm[0]]]
        for p in perm[1:]:
            prod = prod @ mats[indices[p]]
        acc += sign * prod
    return acc / math.factorial(len(indices))


def _permutation_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def weyl_map(mats, f: GrassmannElement) -> np.ndarray:
    """Linear extension of the antisymmetrized-monomial correspondence."""
    mats = tuple(np.asarray(m, dtype=complex) for m in mats)
    if len(mats) != f.algebra.n:
        raise AlgebraError("need one matrix per generator")
    dim = mats[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    cache: dict[int, np.ndarray] = {}
    for mask, coeff in f.terms().items():
        if mask not in cache:
            cache[mask] = _weyl_monomial(mats, monomial_indices(mask))
        out += coeff * cache[mask]
    return out


class CliffordRep:
    """Matrix realization Theta_i of the generators of a star product."""

    def __init__(self, form: SymmetricForm):
        a = form.matrix
        try:
            lower = np.linalg.cholesky(a)
        except np.linalg.LinAlgError as exc:
            raise AlgebraError("form must be positive definite") from exc
        n = form.algebra.n
        gammas = _gamma_matrices(n)
        self.form = form
        self.algebra = form.algebra
        self.thetas = tuple(
            sum(lower[i, k] * gammas[k] for k in range(n)) / math.sqrt(2.0)
            for i in range(n)
        )
        self.dim = self.thetas[0].shape[0]
        # basis matrix of vectorized Weyl monomials, for the symbol map
        cols = []
        self._basis = []
        for mask in range(form.algebra.dimension):
            w = _weyl_monomial(self.thetas, monomial_indices(mask))
            self._basis.append(w)
            cols.append(w.reshape(-1))
        mat = np.array(cols).T
        if mat.shape[0] != mat.shape[1]:
            raise AlgebraError("Weyl monomials do not span the matrix algebra")
        self._lu = lu_factor(mat)

    def represent(self, f: GrassmannElement) -> np.ndarray:
        """Theta(F), the Weyl-quantized matrix of an element."""
        return weyl_map(self.thetas, f)

    def anticommutator_residual(self) -> float:
        """Max deviation of {Theta_i, Theta_j} from A_ij times identity."""
        worst = 0.0
        eye = np.eye(self.dim)
        for i, ti in enumerate(self.thetas):
            for j, tj in enumerate(self.thetas):
                res = ti @ tj + tj @ ti - self.form.matrix[i, j] * eye
                worst = max(worst, float(np.max(np.abs(res))))
        return worst


def clifford_representation(form: SymmetricForm) -> CliffordRep:
    return CliffordRep(form)


def symbol_of_matrix(rep: CliffordRep, matrix: np.ndarray) -> GrassmannElement:
    """Inverse Weyl map: expand a matrix over antisymmetrized monomials."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (rep.dim, rep.dim):
        raise AlgebraError(f"matrix must be {rep.dim}x{rep.dim}")
    coeffs = lu_solve(rep._lu, matrix.reshape(-1))
    return GrassmannElement(rep.algebra, dict(enumerate(coeffs)))


def oracle_star(
    rep: CliffordRep, f: GrassmannElement, g: GrassmannElement
) -> GrassmannElement:
    """Star product computed as plain matrix multiplication of Weyl images."""
    return symbol_of_matrix(rep, rep.represent(f) @ rep.represent(g))


# -- holomorphic variables and the Fock-space route -------------------------


@dataclass(frozen=True)
class HolomorphicPairing:
    """Modes eta_k = (t_a + i t_b) / sqrt(2 hbar) from generator pairs.

    ``pairs`` lists (a_label, b_label) with all labels distinct; the matching
    holomorphic algebra carries generators eta1, eta1s, eta2, eta2s, ...
    """

    pairs: tuple
    hbar: float
    source: GrassmannAlgebra

    def __post_init__(self):
        flat = [label for pair in self.pairs for label in pair]
        if len(set(flat)) != len(flat):
            raise AlgebraError("pairing indices must be disjoint")
        for label in flat:
            if label not in self.source.index:
                raise AlgebraError(f"unknown generator {label!r}")

    @classmethod
    def of(cls, source: GrassmannAlgebra, pairs, hbar: float) -> "HolomorphicPairing":
        return cls(tuple(tuple(p) for p in pairs), float(hbar), source)

    @property
    def modes(self) -> int:
        return len(self.pairs)

    def holomorphic_algebra(self) -> GrassmannAlgebra:
        names = []
        for k in range(self.modes):
            names += [f"eta{k + 1}", f"eta{k + 1}s"]
        return GrassmannAlgebra(names, prune_tol=self.source.prune_tol)


def holomorphic_transform(
    f: GrassmannElement, pairing: HolomorphicPairing
) -> GrassmannElement:
    """Rewrite an element of the source algebra in holomorphic generators.

    Inverts eta = (t_a + i t_b)/sqrt(2 hbar): t_a = sqrt(hbar/2)(eta + eta*),
    t_b = -i sqrt(hbar/2)(eta - eta*).  The support of ``f`` must lie inside
    the paired generators.
    """
    holo = pairing.holomorphic_algebra()
    paired = {label for pair in pairing.pairs for label in pair}
    support_labels = {
        f.algebra.names[i] for i in monomial_indices(f.support())
    }
    if not support_labels <= paired:
        raise AlgebraError(
            f"unpaired generators in support: {sorted(support_labels - paired)}"
        )
    root = math.sqrt(pairing.hbar / 2.0)
    images = {}
    for k, (a_label, b_label) in enumerate(pairing.pairs):
        eta = holo.generator(f"eta{k + 1}")
        etas = holo.generator(f"eta{k + 1}s")
        images[a_label] = root * (eta + etas)
        images[b_label] = (-1j * root) * (eta - etas)
    for name in f.algebra.names:
        images.setdefault(name, holo.zero())
    return substitute(f, holo, images)


def inverse_holomorphic_transform(
    f: GrassmannElement, pairing: HolomorphicPairing
) -> GrassmannElement:
    """Rewrite a holomorphic element back in the source generators."""
    src = pairing.source
    scale = 1.0 / math.sqrt(2.0 * pairing.hbar)
    images = {}
    for k, (a_label, b_label) in enumerate(pairing.pairs):
        ta = src.generator(a_label)
        tb = src.generator(b_label)
        images[f"eta{k + 1}"] = scale * (ta + 1j * tb)
        images[f"eta{k + 1}s"] = scale * (ta - 1j * tb)
    return substitute(f, src, images)


def weyl_quantize(f_holo: GrassmannElement, modes: int) -> np.ndarray:
    """Fock-space matrix of a holomorphic element (Weyl/symmetric ordering).

    The element's algebra must be the [eta1, eta1s, ...] layout; eta_k maps
    to the mode-k annihilation matrix and eta_k^* to its adjoint.
    """
    if f_holo.algebra.n != 2 * modes:
        raise AlgebraError("element does not match the requested mode count")
    mats = []
    for a, adag in fermion_mode_matrices(modes):
        mats += [a, adag]
    return weyl_map(mats, f_holo)


# -- literal evaluation of the single-mode Wigner kernel --------------------

_KERNEL_NAMES = ("g1", "g2", "xi", "xis", "eta", "etas")


def _kernel_algebra() -> tuple[GrassmannAlgebra, StarProduct]:
    """Star algebra hosting one matrix mode (g1, g2 square to 1) plus the
    auxiliary and holomorphic Grassmann variables (zero form rows)."""
    algebra = GrassmannAlgebra(_KERNEL_NAMES)
    form = np.zeros((6, 6))
    form[0, 0] = form[1, 1] = 2.0
    return algebra, build_star_product(SymmetricForm(form, algebra))


def _single_mode_kernel() -> tuple[GrassmannElement, GrassmannAlgebra, StarProduct]:
    """Kernel Delta(eta*, eta) = int dxi* dxi exp(xi*(a - eta) - (a+ - eta*)xi),
    computed by expanding the (star-nilpotent) exponent and integrating."""
    algebra, product = _kernel_algebra()
    g1, g2, xi, xis, eta, etas = (algebra.generator(n) for n in _KERNEL_NAMES)
    a = 0.5 * (g1 + 1j * g2)
    adag = 0.5 * (g1 - 1j * g2)
    x = star(xis, a - eta, product) - star(adag - etas, xi, product)
    xx = star(x, x, product)
    if star(x, xx, product).norm_inf() > 1e-12:
        raise AlgebraError("kernel exponent is not nilpotent at order 3")
    integrand = algebra.one() + x + 0.5 * xx
    kernel = berezin_integral(integrand, [algebra.index["xis"], algebra.index["xi"]], hbar=1.0)
    return kernel, algebra, product


def wigner_kernel_matrixelement() -> tuple[GrassmannElement, GrassmannElement]:
    """The integrated kernel and its printed closed form
    1/2 - (a+ - eta*)(a - eta), both as kernel-algebra elements."""
    kernel, algebra, product = _single_mode_kernel()
    g1, g2 = algebra.generator("g1"), algebra.generator("g2")
    eta, etas = algebra.generator("eta"), algebra.generator("etas")
    a = 0.5 * (g1 + 1j * g2)
    adag = 0.5 * (g1 - 1j * g2)
    closed = algebra.scalar(0.5) - star(adag - etas, a - eta, product)
    return kernel, closed


def wigner_operator_map(f_holo: GrassmannElement) -> np.ndarray:
    """Quantum correspondence of a single-mode holomorphic function, by
    literal Berezin integration of f against the Wigner kernel.

    Must agree with ``weyl_quantize`` on every input; kept as the slow
    reference path.
    """
    if f_holo.algebra.n != 2:
        raise AlgebraError("the kernel route is single-mode; pass 2 generators")
    kernel, algebra, product = _single_mode_kernel()
    images = {
        f_holo.algebra.names[0]: algebra.generator("eta"),
        f_holo.algebra.names[1]: algebra.generator("etas"),
    }
    lifted = substitute(f_holo, algebra, images)
    weighted = star(lifted, kernel, product)
    integrated = berezin_integral(
        weighted, [algebra.index["etas"], algebra.index["eta"]], hbar=1.0
    )
    rest = integrated.support() & ~0b11
    if rest:
        raise AlgebraError("kernel integration left Grassmann variables behind")
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    gamma_part = GrassmannElement(GrassmannAlgebra(["g1", "g2"]), dict(integrated._terms))
    return weyl_map((sx, sy), gamma_part)
