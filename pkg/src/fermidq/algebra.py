"""Exact arithmetic on a finite Grassmann algebra.

An algebra is generated by ``n`` anticommuting generators (n <= 16).  Elements
are stored sparsely as ``{monomial: coefficient}`` where a monomial is an int
bitmask over generator indices and the coefficient is a complex double.  The
canonical order inside a monomial is ascending generator index; every sign in
this module is the parity of a permutation relative to that order.

CONVENTIONS
-----------
* Left derivative:  d_i(t_{j1}...t_{jr}) deletes t_i with sign (-1)^(number of
  generators preceding t_i in the monomial).  The right derivative is defined
  per homogeneous term as (-1)^grade times the left derivative, so that
  d_i(t_j) = delta_ij = -(t_j)<-d_i.
* Berezin integration uses int dt_i t_j = hbar * delta_ij and int dt_i 1 = 0.
  The ``order`` argument lists differentials left to right as written, so the
  LAST entry acts first: int dt4 dt3 dt2 dt1 F  <->  order=[3, 2, 1, 0].
* The Hodge dual within a generator subset U sends the U-part t_S of each
  monomial to sign * t_{U\\S}, where sign is the parity of the block
  permutation (S, U\\S) relative to ascending order inside U; factors outside
  U are carried unchanged on the left.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import enum
from typing import Iterable, Mapping, Sequence

__all__ = [
    "AlgebraError",
    "GrassmannAlgebra",
    "GrassmannElement",
    "Parity",
    "Side",
    "berezin_integral",
    "derivative",
    "hodge_dual",
    "monomial_indices",
    "monomial_mask",
    "multiply",
    "parity",
    "substitute",
]

MAX_GENERATORS = 16
DEFAULT_PRUNE_TOL = 1e-14


class AlgebraError(ValueError):
    """Raised for malformed elements or mismatched algebras."""


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _merge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation (a ascending)(b ascending).

    Equals (-1)^k with k the number of pairs (i in a, j in b) with i > j.
    """
    sign = 1
    while b:
        j = b & -b
        if (a >> j.bit_length()).bit_count() & 1:
            sign = -sign
        b ^= j
    return sign


def monomial_indices(mask: int) -> tuple[int, ...]:
    """Ascending generator indices of a monomial bitmask."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def monomial_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


class GrassmannAlgebra:
    """A fixed, ordered set of Grassmann generators.

    Generator labels are unique strings; their position in ``names`` fixes the
    canonical index 0..n-1 for the lifetime of the algebra.
    """

    def __init__(self, names: Sequence[str], prune_tol: float = DEFAULT_PRUNE_TOL):
        names = tuple(names)
        if not 1 <= len(names) <= MAX_GENERATORS:
            raise AlgebraError(
                f"need between 1 and {MAX_GENERATORS} generators, got {len(names)}"
            )
        if len(set(names)) != len(names):
            raise AlgebraError("generator labels must be unique")
        self.names = names
        self.n = len(names)
        self.index = {name: i for i, name in enumerate(names)}
        self.prune_tol = float(prune_tol)

    def __repr__(self):
        return f"GrassmannAlgebra({list(self.names)})"

    def __eq__(self, other):
        return isinstance(other, GrassmannAlgebra) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    @property
    def dimension(self) -> int:
        """Dimension 2**n of the algebra as a vector space."""
        return 1 << self.n

    def zero(self) -> "GrassmannElement":
        return GrassmannElement(self, {})

    def one(self) -> "GrassmannElement":
        return self.scalar(1.0)

    def scalar(self, value: complex) -> "GrassmannElement":
        return GrassmannElement(self, {0: complex(value)})

    def generator(self, name: str) -> "GrassmannElement":
        if name not in self.index:
            raise AlgebraError(f"unknown generator {name!r}")
        return GrassmannElement(self, {1 << self.index[name]: 1.0 + 0.0j})

    def element(
        self, terms: Iterable[tuple[Sequence[str], complex]]
    ) -> "GrassmannElement":
        """Build an element from (label-list, coefficient) pairs.

        Labels are sorted to canonical order with the permutation sign folded
        into the coefficient; a repeated label inside one term kills the term.
        """
        data: dict[int, complex] = {}
        for labels, coeff in terms:
            mask = 0
            sign = 1
            dead = False
            for label in labels:
                if label not in self.index:
                    raise AlgebraError(f"unknown generator {label!r}")
                bit = 1 << self.index[label]
                if mask & bit:
                    dead = True
                    break
                sign *= _merge_sign(mask, bit)
                mask |= bit
            if dead:
                continue
            data[mask] = data.get(mask, 0j) + sign * complex(coeff)
        return GrassmannElement(self, data)

    def monomial_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in monomial_indices(mask))


class GrassmannElement:
    """Sparse Grassmann polynomial with complex coefficients.

    Stored coefficients below the algebra's prune tolerance are dropped, so
    the zero element has an empty term map.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: GrassmannAlgebra, terms: Mapping[int, complex]):
        tol = algebra.prune_tol
        self.algebra = algebra
        self._terms = {
            int(m): complex(c) for m, c in terms.items() if abs(c) >= tol
        }

    # -- inspection ---------------------------------------------------------

    def terms(self) -> dict[int, complex]:
        """Copy of the {bitmask: coefficient} term map."""
        return dict(self._terms)

    def coefficient(self, labels: Sequence[str]) -> complex:
        """Coefficient of the (canonically ordered) monomial of ``labels``."""
        mask = monomial_mask(self.algebra.index[l] for l in labels)
        if len(labels) != mask.bit_count():
            raise AlgebraError("repeated label in monomial")
        sign = 1
        seen = 0
        for label in labels:
            bit = 1 << self.algebra.index[label]
            sign *= _merge_sign(seen, bit)
            seen |= bit
        return sign * self._terms.get(mask, 0j)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def scalar_part(self) -> complex:
        return self._terms.get(0, 0j)

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def norm_inf(self) -> float:
        """Largest coefficient magnitude."""
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def support(self) -> int:
        """Bitmask of every generator appearing in some term."""
        mask = 0
        for m in self._terms:
            mask |= m
        return mask

    def isclose(self, other: "GrassmannElement", tol: float = 1e-12) -> bool:
        return (self - other).norm_inf() <= tol

    # -- ring operations ----------------------------------------------------

    def _check_same_algebra(self, other: "GrassmannElement"):
        if self.algebra != other.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = self.algebra.scalar(other)
        self._check_same_algebra(other)
        data = dict(self._terms)
        for m, c in other._terms.items():
            data[m] = data.get(m, 0j) + c
        return GrassmannElement(self.algebra, data)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            z = complex(other)
            return GrassmannElement(
                self.algebra, {m: c * z for m, c in self._terms.items()}
            )
        self._check_same_algebra(other)
        data: dict[int, complex] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma & mb:
                    continue  # nilpotency: shared generator kills the term
                m = ma | mb
                data[m] = data.get(m, 0j) + _merge_sign(ma, mb) * ca * cb
        return GrassmannElement(self.algebra, data)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.__mul__(other)
        return NotImplemented

    def __truediv__(self, other):
        return self * (1.0 / complex(other))

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (m.bit_count(), m)):
            c = self._terms[m]
            labels = "*".join(self.algebra.monomial_labels(m))
            parts.append(f"({c:g})" + (f"*{labels}" if labels else ""))
        return " + ".join(parts)

    __repr__ = __str__


def multiply(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    """Pointwise (undeformed) Grassmann product."""
    return f * g


def parity(f: GrassmannElement) -> Parity:
    """Grassmann parity of an element; the zero element reports EVEN."""
    grades = {g & 1 for g in f.grades()}
    if grades == {1}:
        return Parity.ODD
    if len(grades) == 2:
        return Parity.MIXED
    return Parity.EVEN


def _derivative_left_terms(terms: Mapping[int, complex], i: int) -> dict[int, complex]:
    bit = 1 << i
    below = bit - 1
    out: dict[int, complex] = {}
    for m, c in terms.items():
        if not m & bit:
            continue
        sign = -1 if (m & below).bit_count() & 1 else 1
        out[m ^ bit] = out.get(m ^ bit, 0j) + sign * c
    return out


def derivative(f: GrassmannElement, i: int, side: Side = Side.LEFT) -> GrassmannElement:
    """Graded derivative with respect to generator ``i``.

    The right derivative is the left one with an extra (-1)^grade per term,
    which keeps d_i(t_j) = delta_ij = -(t_j)<-d_i.
    """
    if not 0 <= i < f.algebra.n:
        raise AlgebraError(f"generator index {i} out of range")
    if side == Side.LEFT:
        return GrassmannElement(f.algebra, _derivative_left_terms(f._terms, i))
    bit = 1 << i
    below = bit - 1
    out: dict[int, complex] = {}
    for m, c in f._terms.items():
        if not m & bit:
            continue
        sign = -1 if (m & below).bit_count() & 1 else 1
        if m.bit_count() & 1:
            sign = -sign
        out[m ^ bit] = out.get(m ^ bit, 0j) + sign * c
    return GrassmannElement(f.algebra, out)


def berezin_integral(
    f: GrassmannElement, order: Sequence[int], hbar: float = 1.0
) -> GrassmannElement:
    """Iterated Berezin integral, rightmost differential first.

    ``order`` lists differentials left to right as conventionally written, so
    ``order=[3, 2, 1, 0]`` means int dt4 dt3 dt2 dt1.
    """
    if len(set(order)) != len(order):
        raise AlgebraError("duplicate generator index in integration order")
    terms = f._terms
    for i in reversed(order):
        if not 0 <= i < f.algebra.n:
            raise AlgebraError(f"generator index {i} out of range")
        terms = {m: hbar * c for m, c in _derivative_left_terms(terms, i).items()}
    return GrassmannElement(f.algebra, terms)


def hodge_dual(f: GrassmannElement, subset: Iterable[int] | None = None) -> GrassmannElement:
    """Hodge dual within a generator subset (default: all generators).

    Each term splits as (kept part)(subset part); the subset part t_S maps to
    the signed complement t_{U\\S} inside the subset, the kept part stays on
    the left, and the result is recanonicalized.
    """
    algebra = f.algebra
    if subset is None:
        umask = (1 << algebra.n) - 1
    else:
        umask = monomial_mask(subset)
        if umask >> algebra.n:
            raise AlgebraError("subset index out of range")
    out: dict[int, complex] = {}
    for m, c in f._terms.items():
        kept = m & ~umask
        s = m & umask
        comp = umask ^ s
        # sign0: pull kept-part generators to the front of the monomial
        # sign1: block permutation (S, complement) inside the subset
        # sign2: recanonicalize kept * complement
        sign = _merge_sign(kept, s) * _merge_sign(s, comp) * _merge_sign(kept, comp)
        nm = kept | comp
        out[nm] = out.get(nm, 0j) + sign * c
    return GrassmannElement(algebra, out)


def substitute(
    f: GrassmannElement,
    target: GrassmannAlgebra,
    images: Mapping[str, GrassmannElement],
) -> GrassmannElement:
    """Apply a generator substitution, multiplying images in monomial order.

    Every generator in the support of ``f`` must have an odd-parity image in
    ``target``; this implements linear (and more general odd) changes of
    generators with all graded signs handled by the ordered product.
    """
    for name, img in images.items():
        if img.algebra != target:
            raise AlgebraError(f"image of {name!r} lives in the wrong algebra")
        if not img.is_zero and parity(img) != Parity.ODD:
            raise AlgebraError(f"image of {name!r} must have odd parity")
    result = target.zero()
    for m, c in f._terms.items():
        factor = target.scalar(c)
        for i in monomial_indices(m):
            name = f.algebra.names[i]
            if name not in images:
                raise AlgebraError(f"no image given for generator {name!r}")
            factor = factor * images[name]
            if factor.is_zero:
                break
        result = result + factor
    return result


def restrict(
    f: GrassmannElement, kept: Sequence[str]
) -> tuple[GrassmannElement, GrassmannAlgebra]:
    """Reindex an element supported on ``kept`` into the subalgebra they span.

    Generator order inside the subalgebra follows the parent order, so no
    signs arise.
    """
    algebra = f.algebra
    sub = GrassmannAlgebra(
        sorted(kept, key=lambda name: algebra.index[name]),
        prune_tol=algebra.prune_tol,
    )
    old_to_new = {algebra.index[name]: sub.index[name] for name in kept}
    kept_mask = monomial_mask(old_to_new)
    data: dict[int, complex] = {}
    for m, c in f._terms.items():
        if m & ~kept_mask:
            raise AlgebraError(
                "element has support outside the kept generators"
            )
        nm = monomial_mask(old_to_new[i] for i in monomial_indices(m))
        data[nm] = c
    return GrassmannElement(sub, data), sub
