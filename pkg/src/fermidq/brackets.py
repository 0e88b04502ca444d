"""Graded Poisson brackets, constraint classification and Dirac brackets.

A symmetric tensor A on the odd phase space defines the bracket

    {F, G} = - sum_ij A_ij (F <-d_i) (d_j-> G),

with the right derivative tied to the left one by (-1)^parity per homogeneous
term (see ``algebra``).  With the canonical tensor [[0, I], [I, 0]] on the
layout (t_1..t_n, p_1..p_n) this gives {t_a, p_b} = delta_ab.

For a second-class constraint set the Dirac bracket is

    {F, G}_D = {F, G} - {F, x_a} Cinv_ab {x_b, G},

where C_ab = {x_a, x_b} is inverted by inverting its scalar body and summing a
Neumann series for the nilpotent remainder (exact in a finite algebra).  The
``quantization_form`` helper turns the Dirac matrix D_ij = {t_i, t_j}_D over
the surviving generators into the symmetric form of the star product that
deforms along it, normalized so the diagonal equals hbar.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraError,
    GrassmannAlgebra,
    GrassmannElement,
    Parity,
    Side,
    derivative,
    parity,
    substitute,
)
from .star import SymmetricForm

__all__ = [
    "BracketTensor",
    "ConstraintClass",
    "ConstraintClassError",
    "ConstraintMatrix",
    "ConstraintSet",
    "canonical_tensor",
    "classify_constraints",
    "constraint_matrix",
    "dirac_bracket",
    "nac_tensor",
    "poisson_bracket",
    "quantization_form",
    "time_derivative",
]

BODY_RANK_TOL = 1e-10
INVERSE_TOL = 1e-10


class ConstraintClassError(AlgebraError):
    """Raised when an operation needs second-class constraints."""


class ConstraintClass(enum.Enum):
    SECOND_CLASS = "second_class"
    FIRST_CLASS_PRESENT = "first_class_present"


@dataclass(frozen=True)
class BracketTensor:
    """Symmetric (complex) matrix defining a graded Poisson bracket."""

    matrix: np.ndarray
    algebra: GrassmannAlgebra

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        n = self.algebra.n
        if m.shape != (n, n):
            raise AlgebraError(f"bracket tensor must be {n}x{n}, got {m.shape}")
        if np.max(np.abs(m - m.T)) > 1e-12 * max(1.0, np.max(np.abs(m))):
            raise AlgebraError("bracket tensor must be symmetric")
        m = (m + m.T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def canonical_tensor(algebra: GrassmannAlgebra) -> BracketTensor:
    """[[0, I], [I, 0]] for a layout of n coordinates followed by n momenta."""
    if algebra.n % 2:
        raise AlgebraError("canonical tensor needs an even number of generators")
    half = algebra.n // 2
    m = np.zeros((algebra.n, algebra.n), dtype=complex)
    for a in range(half):
        m[a, half + a] = m[half + a, a] = 1.0
    return BracketTensor(m, algebra)


def nac_tensor(algebra: GrassmannAlgebra, coupling: float) -> BracketTensor:
    """Canonical tensor plus i*coupling on the coordinate pairs (1,2), (3,4).

    Requires the 8-generator layout (t1..t4, p1..p4) of the two-oscillator
    system.
    """
    if algebra.n != 8:
        raise AlgebraError("the deformed tensor needs the 8-generator layout")
    m = np.array(canonical_tensor(algebra).matrix)
    ic = 1j * coupling
    for a, b in ((0, 1), (2, 3)):
        m[a, b] = m[b, a] = ic
    return BracketTensor(m, algebra)


def poisson_bracket(
    f: GrassmannElement, g: GrassmannElement, tensor: BracketTensor
) -> GrassmannElement:
    """Graded Poisson bracket of two phase-space functions."""
    algebra = tensor.algebra
    if f.algebra != algebra or g.algebra != algebra:
        raise AlgebraError("elements do not belong to the tensor's algebra")
    fr = [None] * algebra.n
    gl = [None] * algebra.n
    out = algebra.zero()
    for i in range(algebra.n):
        for j in range(algebra.n):
            a = tensor.matrix[i, j]
            if a == 0:
                continue
            if fr[i] is None:
                fr[i] = derivative(f, i, Side.RIGHT)
            if gl[j] is None:
                gl[j] = derivative(g, j, Side.LEFT)
            out = out + (-a) * (fr[i] * gl[j])
    return out


@dataclass(frozen=True)
class ConstraintSet:
    """Odd-parity constraint functions with labels."""

    constraints: tuple
    labels: tuple

    def __post_init__(self):
        if not self.constraints:
            raise AlgebraError("constraint set may not be empty")
        for chi, label in zip(self.constraints, self.labels):
            if parity(chi) != Parity.ODD:
                raise AlgebraError(f"constraint {label!r} is not odd")

    @classmethod
    def from_elements(cls, constraints, labels=None) -> "ConstraintSet":
        constraints = tuple(constraints)
        if labels is None:
            labels = tuple(f"chi{k + 1}" for k in range(len(constraints)))
        return cls(constraints, tuple(labels))

    def __len__(self):
        return len(self.constraints)


class ConstraintMatrix:
    """Bracket matrix C_ab = {x_a, x_b} with its (Grassmann-valued) inverse.

    The inverse is cached at construction: the scalar body is inverted
    numerically and the nilpotent remainder handled by a Neumann series that
    terminates at the algebra's nilpotency order.
    """

    def __init__(self, entries, algebra: GrassmannAlgebra):
        self.algebra = algebra
        self.entries = [list(row) for row in entries]
        size = len(self.entries)
        self.body = np.array(
            [[e.scalar_part() for e in row] for row in self.entries], dtype=complex
        )
        souls = [[e - e.scalar_part() for e in row] for row in self.entries]
        self.has_soul = any(not s.is_zero for row in souls for s in row)

        sv = np.linalg.svd(self.body, compute_uv=False)
        scale = sv[0] if sv[0] > 0 else 1.0
        self.body_invertible = bool(sv[-1] > BODY_RANK_TOL * scale)
        self.inverse = None
        if not self.body_invertible:
            return

        binv = np.linalg.inv(self.body)
        inv = [[algebra.scalar(binv[a][b]) for b in range(size)] for a in range(size)]
        if self.has_soul:
            # Cinv = sum_k (-Binv N)^k Binv, N the soul part; entries are even
            # elements so ordinary matrix algebra applies.
            step = [
                [
                    sum(
                        (algebra.scalar(-binv[a][k]) * souls[k][b] for k in range(size)),
                        algebra.zero(),
                    )
                    for b in range(size)
                ]
                for a in range(size)
            ]
            term = inv
            for _ in range(algebra.n // 2 + 1):
                term = _matmul(step, term, algebra)
                if all(e.is_zero for row in term for e in row):
                    break
                inv = _matadd(inv, term)
            else:
                raise AlgebraError("Neumann series for the inverse did not terminate")
        self.inverse = inv
        self._check_inverse()

    def _check_inverse(self):
        size = len(self.entries)
        prod = _matmul(self.entries, self.inverse, self.algebra)
        worst = 0.0
        for a in range(size):
            for b in range(size):
                expect = self.algebra.one() if a == b else self.algebra.zero()
                worst = max(worst, (prod[a][b] - expect).norm_inf())
        scale = max(1.0, float(np.max(np.abs(self.body))))
        if worst > INVERSE_TOL * scale:
            raise AlgebraError(f"constraint matrix inversion failed ({worst:.3e})")

    def body_matrix(self) -> np.ndarray:
        return np.array(self.body)

    def inverse_body_matrix(self) -> np.ndarray:
        return np.array(
            [[e.scalar_part() for e in row] for row in self.inverse], dtype=complex
        )


def _matmul(a, b, algebra):
    size = len(a)
    return [
        [
            sum((a[i][k] * b[k][j] for k in range(size)), algebra.zero())
            for j in range(size)
        ]
        for i in range(size)
    ]


def _matadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def constraint_matrix(cset: ConstraintSet, tensor: BracketTensor) -> ConstraintMatrix:
    entries = [
        [poisson_bracket(xa, xb, tensor) for xb in cset.constraints]
        for xa in cset.constraints
    ]
    cmat = ConstraintMatrix(entries, tensor.algebra)
    if not cmat.body_invertible:
        raise ConstraintClassError(
            "first-class or degenerate constraints: bracket matrix body is singular"
        )
    return cmat


def classify_constraints(
    cset: ConstraintSet, tensor: BracketTensor
) -> ConstraintClass:
    """Second-class iff the scalar body of the bracket matrix is invertible."""
    body = np.array(
        [
            [poisson_bracket(xa, xb, tensor).scalar_part() for xb in cset.constraints]
            for xa in cset.constraints
        ],
        dtype=complex,
    )
    sv = np.linalg.svd(body, compute_uv=False)
    scale = sv[0] if sv[0] > 0 else 1.0
    invertible = bool(sv[-1] > BODY_RANK_TOL * scale)
    return (
        ConstraintClass.SECOND_CLASS
        if invertible
        else ConstraintClass.FIRST_CLASS_PRESENT
    )


def dirac_bracket(
    f: GrassmannElement,
    g: GrassmannElement,
    cset: ConstraintSet,
    tensor: BracketTensor,
    cmatrix: ConstraintMatrix | None = None,
) -> GrassmannElement:
    """{F, G} - {F, x_a} Cinv_ab {x_b, G}; needs a second-class set."""
    if cmatrix is None:
        cmatrix = constraint_matrix(cset, tensor)
    if not cmatrix.body_invertible:
        raise ConstraintClassError(
            "first-class or degenerate constraints: bracket matrix body is singular"
        )
    out = poisson_bracket(f, g, tensor)
    size = len(cset)
    f_brackets = [poisson_bracket(f, chi, tensor) for chi in cset.constraints]
    g_brackets = [poisson_bracket(chi, g, tensor) for chi in cset.constraints]
    for a in range(size):
        if f_brackets[a].is_zero:
            continue
        for b in range(size):
            term = f_brackets[a] * cmatrix.inverse[a][b] * g_brackets[b]
            out = out - term
    return out


def quantization_form(
    cset: ConstraintSet,
    tensor: BracketTensor,
    hbar: float,
    kept: list[str],
    cmatrix: ConstraintMatrix | None = None,
) -> SymmetricForm:
    """Star-product form proportional to the Dirac matrix on the kept
    generators, scaled so every diagonal entry equals hbar.

    The Dirac brackets {t_i, t_j}_D must come out scalar with a uniform
    nonzero diagonal; a single complex ratio then makes the form real.
    """
    algebra = tensor.algebra
    if cmatrix is None:
        cmatrix = constraint_matrix(cset, tensor)
    gens = [algebra.generator(name) for name in kept]
    size = len(gens)
    dmat = np.zeros((size, size), dtype=complex)
    for i in range(size):
        for j in range(i, size):
            bij = dirac_bracket(gens[i], gens[j], cset, tensor, cmatrix)
            soul = bij - bij.scalar_part()
            if soul.norm_inf() > 1e-12:
                raise AlgebraError(
                    "Dirac bracket of generators is not scalar; cannot build a form"
                )
            dmat[i, j] = dmat[j, i] = bij.scalar_part()
    diag = np.diag(dmat)
    if np.min(np.abs(diag)) < 1e-12:
        raise AlgebraError("Dirac matrix has a zero diagonal entry")
    if np.max(np.abs(diag - diag[0])) > 1e-10 * abs(diag[0]):
        raise AlgebraError("Dirac matrix diagonal is not uniform")
    scaled = (hbar / diag[0]) * dmat
    if np.max(np.abs(scaled.imag)) > 1e-10 * max(1.0, np.max(np.abs(scaled))):
        raise AlgebraError("scaled Dirac matrix is not real")
    sub = GrassmannAlgebra(list(kept), prune_tol=algebra.prune_tol)
    return SymmetricForm(scaled.real, sub)


def impose_constraints_strongly(
    f: GrassmannElement,
    coordinate_labels: list[str],
    momentum_labels: list[str],
    target: GrassmannAlgebra,
) -> GrassmannElement:
    """Substitute p_a -> -(i/2) t_a, landing in the reduced algebra."""
    images = {name: target.generator(name) for name in coordinate_labels}
    for t_label, p_label in zip(coordinate_labels, momentum_labels):
        images[p_label] = (-0.5j) * target.generator(t_label)
    return substitute(f, target, images)


def time_derivative(f, h, bracket) -> GrassmannElement:
    """dF/dt = {F, H} for whichever bracket callable is supplied."""
    return bracket(f, h)
