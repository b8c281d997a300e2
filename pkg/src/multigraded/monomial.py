"""Monomial ideals in k variables with exact integer exponents.

Exponent vectors are plain tuples of nonnegative ints.  A MonomialIdeal
holds a canonical minimal generating set: a lexicographically sorted
antichain under componentwise <=.  The zero ideal (empty generating set,
``is_zero`` flag) is distinct from the unit ideal (generated by the zero
vector); both flow through all the algebra below.

All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iterprod

from .errors import (
    DimensionMismatch,
    NegativeWeight,
    NotCofinite,
    ZeroDivisorIdeal,
    ZeroIdeal,
)

Vec = tuple[int, ...]


def dominates(v: Vec, w: Vec) -> bool:
    """True if v >= w componentwise."""
    return all(a >= b for a, b in zip(v, w))


def _check_vectors(gens, k: int) -> list[Vec]:
    out = []
    for v in gens:
        t = tuple(v)
        if len(t) != k:
            raise DimensionMismatch(f"expected length {k}, got {t!r}")
        if any(e < 0 for e in t):
            raise ValueError(f"negative exponent in {t!r}")
        out.append(t)
    return out


def _antichain(vecs: list[Vec]) -> list[Vec]:
    """Minimal elements of vecs under componentwise <=."""
    if not vecs:
        return []
    k = len(vecs[0])
    if k == 2:
        # staircase sweep: lex sort, keep strictly decreasing second coord
        out = []
        best = None
        for v in sorted(set(vecs)):
            if best is None or v[1] < best:
                out.append(v)
                best = v[1]
        return out
    # general: a vector is only dominated by one of smaller or equal total degree
    kept: list[Vec] = []
    for v in sorted(set(vecs), key=lambda t: (sum(t), t)):
        if not any(dominates(v, w) for w in kept):
            kept.append(v)
    return kept


@dataclass(frozen=True)
class MonomialIdeal:
    """Canonical form: ``gens`` is a lex-sorted antichain; equality is structural."""

    dim: int
    gens: tuple[Vec, ...]
    is_zero: bool = False

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be >= 1")
        if self.is_zero and self.gens:
            raise ValueError("zero ideal carries no generators")
        mins = _antichain(_check_vectors(self.gens, self.dim))
        if tuple(sorted(mins)) != self.gens:
            raise ValueError("generators must be a lex-sorted antichain")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(k: int) -> MonomialIdeal:
        return MonomialIdeal(k, (), is_zero=True)

    @staticmethod
    def unit(k: int) -> MonomialIdeal:
        return MonomialIdeal(k, ((0,) * k,))

    @staticmethod
    def maximal(k: int) -> MonomialIdeal:
        """The maximal ideal (x_1, ..., x_k)."""
        gens = tuple(tuple(1 if j == i else 0 for j in range(k)) for i in range(k))
        return minimalize(gens, k)

    @property
    def is_unit(self) -> bool:
        return bool(self.gens) and self.gens[0] == (0,) * self.dim

    # -- membership and containment ---------------------------------------

    def contains_monomial(self, v) -> bool:
        """True iff x^v lies in the ideal (v dominates some generator)."""
        t = tuple(v)
        if len(t) != self.dim:
            raise DimensionMismatch(f"expected length {self.dim}, got {t!r}")
        return any(dominates(t, g) for g in self.gens)

    def contains_ideal(self, other: MonomialIdeal) -> bool:
        """True iff other is a subideal of self (exact, via generators)."""
        if other.dim != self.dim:
            raise DimensionMismatch("ideals in different ambient dimensions")
        if other.is_zero:
            return True
        return all(self.contains_monomial(g) for g in other.gens)

    # -- algebra -----------------------------------------------------------

    def product(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.dim != self.dim:
            raise DimensionMismatch("ideals in different ambient dimensions")
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.dim)
        sums = [tuple(a + b for a, b in zip(v, w)) for v in self.gens for w in other.gens]
        return minimalize(sums, self.dim)

    __mul__ = product

    def intersect(self, other: MonomialIdeal) -> MonomialIdeal:
        if other.dim != self.dim:
            raise DimensionMismatch("ideals in different ambient dimensions")
        if self.is_zero or other.is_zero:
            return MonomialIdeal.zero(self.dim)
        maxes = [tuple(max(a, b) for a, b in zip(v, w)) for v in self.gens for w in other.gens]
        return minimalize(maxes, self.dim)

    def colon(self, other: MonomialIdeal) -> MonomialIdeal:
        """(self : other), intersecting the colons by each generator of other."""
        if other.dim != self.dim:
            raise DimensionMismatch("ideals in different ambient dimensions")
        if other.is_zero:
            raise ZeroDivisorIdeal("colon by the zero ideal")
        if self.is_zero:
            return MonomialIdeal.zero(self.dim)
        result = None
        for w in other.gens:
            shifted = [tuple(max(a - b, 0) for a, b in zip(v, w)) for v in self.gens]
            part = minimalize(shifted, self.dim)
            result = part if result is None else result.intersect(part)
        return result

    def power(self, n: int) -> MonomialIdeal:
        """n-th power by binary exponentiation; n <= 0 gives the unit ideal."""
        if n <= 0:
            return MonomialIdeal.unit(self.dim)
        if self.is_zero:
            return MonomialIdeal.zero(self.dim)
        result = MonomialIdeal.unit(self.dim)
        base = self
        while n:
            if n & 1:
                result = result.product(base)
            n >>= 1
            if n:
                base = base.product(base)
        return result

    __pow__ = power

    # -- per-ideal invariants ------------------------------------------------

    def weighted_order(self, w) -> Fraction:
        """min over generators of <w, v> for a nonnegative weight vector w."""
        if self.is_zero:
            raise ZeroIdeal("weighted order of the zero ideal")
        wt = tuple(Fraction(x) for x in w)
        if len(wt) != self.dim:
            raise DimensionMismatch(f"weight length {len(wt)} != {self.dim}")
        if any(x < 0 for x in wt):
            raise NegativeWeight(f"negative weight in {wt!r}")
        return min(sum(a * b for a, b in zip(wt, g)) for g in self.gens)

    def ord0(self) -> Fraction:
        """Order at the origin: minimal total degree of a generator."""
        return self.weighted_order((1,) * self.dim)

    def pure_power_exponents(self) -> list[int | None]:
        """Per axis, the exponent of the pure-power generator, or None."""
        out: list[int | None] = [None] * self.dim
        for g in self.gens:
            support = [i for i, e in enumerate(g) if e > 0]
            if len(support) == 1:
                out[support[0]] = g[support[0]]
        return out

    @property
    def is_cofinite(self) -> bool:
        """True iff the colength is finite (every axis carries a pure power)."""
        if self.is_zero:
            return False
        if self.is_unit:
            return True
        return all(e is not None for e in self.pure_power_exponents())

    def colength(self) -> int:
        """Number of monomials outside the ideal (the staircase count)."""
        if self.is_zero:
            raise ZeroIdeal("colength of the zero ideal")
        if self.is_unit:
            return 0
        pures = self.pure_power_exponents()
        if any(e is None for e in pures):
            raise NotCofinite("some axis carries no pure-power generator")
        if self.dim == 2:
            # column sweep: everything below the staircase
            total = 0
            for x in range(pures[0]):
                total += min(g[1] for g in self.gens if g[0] <= x)
            return total
        count = 0
        for point in iterprod(*(range(m) for m in pures)):
            if not any(dominates(point, g) for g in self.gens):
                count += 1
        return count

    def newton(self):
        """Newton polyhedron of the ideal (exact, k <= 3)."""
        from .newton import newton_polyhedron

        return newton_polyhedron(self)

    def arn(self) -> Fraction:
        """Arnold multiplicity: diagonal scaling at which lambda*(1,...,1) enters
        the Newton polyhedron.  Reciprocal of the log-canonical threshold."""
        if self.is_zero:
            raise ZeroIdeal("Arnold multiplicity of the zero ideal")
        if self.is_unit:
            return Fraction(0)
        return self.newton().diagonal_lambda()

    def lct(self) -> Fraction | None:
        """Log-canonical threshold, or None for the unit ideal (infinite)."""
        a = self.arn()
        return None if a == 0 else 1 / a

    def multiplicity(self) -> Fraction:
        """Samuel multiplicity: k! times the covolume of the Newton polyhedron."""
        if self.is_zero:
            raise ZeroIdeal("multiplicity of the zero ideal")
        if self.is_unit:
            return Fraction(0)
        if not self.is_cofinite:
            raise NotCofinite("multiplicity requires finite colength")
        import math

        return math.factorial(self.dim) * self.newton().covolume()

    def __repr__(self):
        if self.is_zero:
            return f"MonomialIdeal.zero({self.dim})"
        return f"MonomialIdeal({self.dim}, {list(self.gens)!r})"


def minimalize(gens, k: int) -> MonomialIdeal:
    """Canonical ideal from an arbitrary generating set.

    Empty input yields the zero ideal (an empty generating set generates
    the zero ideal, not the unit ideal).
    """
    vecs = _check_vectors(gens, k)
    if not vecs:
        return MonomialIdeal.zero(k)
    return MonomialIdeal(k, tuple(sorted(_antichain(vecs))))
