"""Fermionic Moyal star products generated by a symmetric bilinear form.

A real symmetric matrix A on the generators defines the associative product

    F * G = F exp( (1/2) <-d_i A_ij d_j-> ) G,

realized here by iterating single-pair contraction operators on the tensor
square of the algebra (the exponential terminates because the derivatives are
nilpotent).  The operative sign convention is fixed by the Clifford relations
it must produce:

    t_i * t_j + t_j * t_i = A_ij        for all i, j,

so in particular t_i * t_i = A_ii / 2 and the product turns the Grassmann
algebra into a Clifford algebra.  Star exponentials are evaluated through the
dense left-multiplication operator (see ``spectral``), not by truncating the
power series, which does not terminate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraError, GrassmannAlgebra, GrassmannElement, _merge_sign

__all__ = [
    "BracketMode",
    "StarProduct",
    "SymmetricForm",
    "build_star_product",
    "star",
    "star_bracket",
    "star_power",
    "star_exponential",
]

_SYMMETRY_TOL = 1e-12


class BracketMode(enum.Enum):
    ANTI = "anti"
    COMM = "comm"


@dataclass(frozen=True)
class SymmetricForm:
    """Real symmetric n x n matrix defining a star product on ``algebra``.

    The matrix is stored exactly symmetric (mirrored upper triangle).
    """

    matrix: np.ndarray
    algebra: GrassmannAlgebra

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        n = self.algebra.n
        if m.shape != (n, n):
            raise AlgebraError(f"form must be {n}x{n}, got {m.shape}")
        if np.max(np.abs(m - m.T)) > _SYMMETRY_TOL * max(1.0, np.max(np.abs(m))):
            raise AlgebraError("form matrix is not symmetric")
        sym = np.triu(m) + np.triu(m, 1).T
        sym.setflags(write=False)
        object.__setattr__(self, "matrix", sym)

    def restricted(self, indices) -> "SymmetricForm":
        """Form restricted to a generator subset, on the matching subalgebra."""
        indices = sorted(indices)
        sub = GrassmannAlgebra(
            [self.algebra.names[i] for i in indices],
            prune_tol=self.algebra.prune_tol,
        )
        return SymmetricForm(self.matrix[np.ix_(indices, indices)], sub)


def nac_form(
    algebra: GrassmannAlgebra, hbar: float, c: float, d: float
) -> SymmetricForm:
    """The two-oscillator form: hbar on the diagonal, c coupling the first
    generator pair and d the second.  Requires exactly four generators."""
    if algebra.n != 4:
        raise AlgebraError("the two-oscillator form needs 4 generators")
    m = np.diag([hbar] * 4).astype(float)
    m[0, 1] = m[1, 0] = c
    m[2, 3] = m[3, 2] = d
    return SymmetricForm(m, algebra)


@dataclass(frozen=True)
class StarProduct:
    """Star product generated by a symmetric form.

    ``max_order`` is the contraction cutoff; the series terminates there
    because each contraction removes one generator from each factor.
    """

    form: SymmetricForm
    max_order: int = field(init=False)
    _pairs: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "max_order", self.algebra.n)
        m = self.form.matrix
        pairs = tuple(
            (i, j, m[i, j])
            for i in range(self.algebra.n)
            for j in range(self.algebra.n)
            if m[i, j] != 0.0
        )
        object.__setattr__(self, "_pairs", pairs)

    @property
    def algebra(self) -> GrassmannAlgebra:
        return self.form.algebra

    @property
    def hbar(self) -> float:
        """Common diagonal entry of the form (the quantization scale)."""
        diag = np.diag(self.form.matrix)
        if np.max(np.abs(diag - diag[0])) > 1e-12 * max(1.0, abs(diag[0])):
            raise AlgebraError("form diagonal is not uniform")
        return float(diag[0])

    def __call__(self, f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
        return star(f, g, self)

    def bracket(self, f, g, mode: BracketMode = BracketMode.ANTI):
        return star_bracket(f, g, self, mode)

    def power(self, f, k: int):
        return star_power(f, k, self)

    def exponential(self, h, t: float, scale: float):
        return star_exponential(h, t, scale, self)


def build_star_product(form: SymmetricForm) -> StarProduct:
    return StarProduct(form)


def star(f: GrassmannElement, g: GrassmannElement, product: StarProduct) -> GrassmannElement:
    """Star product of two elements of the product's algebra.

    Works on the doubled index space S | (T << n): contraction order k picks k
    generator pairs weighted by the form, with the block signs of a right
    derivative acting on the first factor and a left derivative on the second.
    """
    algebra = product.algebra
    if f.algebra != algebra or g.algebra != algebra:
        raise AlgebraError("elements do not belong to the product's algebra")
    n = algebra.n
    low = (1 << n) - 1

    current: dict[int, complex] = {}
    for ma, ca in f._terms.items():
        for mb, cb in g._terms.items():
            key = ma | (mb << n)
            current[key] = current.get(key, 0j) + ca * cb
    total = dict(current)

    order = 0
    while current and order < product.max_order:
        order += 1
        nxt: dict[int, complex] = {}
        for key, coeff in current.items():
            s = key & low
            t = key >> n
            for i, j, a in product._pairs:
                if not (s >> i) & 1 or not (t >> j) & 1:
                    continue
                sign = 1
                if ((s >> (i + 1)).bit_count()) & 1:  # right derivative on F
                    sign = -sign
                if (t & ((1 << j) - 1)).bit_count() & 1:  # left derivative on G
                    sign = -sign
                nk = (s ^ (1 << i)) | ((t ^ (1 << j)) << n)
                nxt[nk] = nxt.get(nk, 0j) + 0.5 * a * sign * coeff / order
        current = {k: v for k, v in nxt.items() if v != 0}
        for k, v in current.items():
            total[k] = total.get(k, 0j) + v

    out: dict[int, complex] = {}
    for key, coeff in total.items():
        s = key & low
        t = key >> n
        if s & t:
            continue
        m = s | t
        out[m] = out.get(m, 0j) + _merge_sign(s, t) * coeff
    return GrassmannElement(algebra, out)


def star_bracket(
    f: GrassmannElement,
    g: GrassmannElement,
    product: StarProduct,
    mode: BracketMode = BracketMode.ANTI,
) -> GrassmannElement:
    """Star anticommutator (ANTI: F*G + G*F) or commutator (COMM: F*G - G*F)."""
    fg = star(f, g, product)
    gf = star(g, f, product)
    return fg + gf if mode == BracketMode.ANTI else fg - gf


def star_power(f: GrassmannElement, k: int, product: StarProduct) -> GrassmannElement:
    """k-fold star power; k = 0 gives 1."""
    if k < 0:
        raise AlgebraError("star power needs a non-negative exponent")
    result = product.algebra.one()
    for _ in range(k):
        result = star(result, f, product)
    return result


def star_exponential(
    h: GrassmannElement, t: float, scale: float, product: StarProduct
) -> GrassmannElement:
    """Time-evolution function Exp(-i H t / scale).

    Computed as the matrix exponential of the left star-multiplication
    operator applied to 1, which is exact up to linear-algebra tolerance
    (the star-power series itself never terminates for generic H).
    """
    if scale == 0:
        raise AlgebraError("evolution scale must be nonzero")
    from . import spectral  # local import; spectral builds on star products

    lop = spectral.mult_operator(h, product, spectral.OperatorSide.LEFT)
    from scipy.linalg import expm

    vec = expm((-1j * t / scale) * lop.matrix) @ spectral.coefficient_vector(
        product.algebra.one()
    )
    return spectral.element_from_vector(product.algebra, vec)


def first_order_term(
    f: GrassmannElement, g: GrassmannElement, product: StarProduct
) -> GrassmannElement:
    """Single-contraction part (1/2) sum_ij A_ij (F <-d_i)(d_j-> G).

    The star product minus F G minus this term carries only contraction
    order >= 2, which is the semiclassical correspondence with the bracket.
    """
    from .algebra import Side, derivative

    algebra = product.algebra
    out = algebra.zero()
    for i, j, a in product._pairs:
        right = derivative(f, i, Side.RIGHT)
        left = derivative(g, j, Side.LEFT)
        # the product uses the opposite right-derivative sign convention
        out = out + (-0.5 * a) * (right * left)
    return out


def series_exponential_reference(
    h: GrassmannElement, t: float, scale: float, product: StarProduct, terms: int = 40
) -> GrassmannElement:
    """Truncated power-series Exp(-i H t / scale); cross-check for small t."""
    acc = product.algebra.one()
    power = product.algebra.one()
    factor = 1.0 + 0j
    for k in range(1, terms):
        power = star(power, h, product)
        factor *= (-1j * t / scale) / k
        acc = acc + factor * power
        if power.norm_inf() * abs(factor) < 1e-18:
            break
    return acc
