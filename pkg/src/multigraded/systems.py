"""Expression trees for Z^rho-graded systems of monomial ideals.

Systems are intensional: a node knows how to produce the ideal at any
index vector, and evaluation is memoized per node with a bounded cache.
Region-expressible trees also produce the exact limit body of their
restriction to a direction, which is what all asymptotic invariants are
computed from on the geometric route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product as iterprod
from math import ceil

from .cones import ConeRep
from .errors import (
    DimensionMismatch,
    NotRegionExpressible,
    RankMismatch,
    ZeroDirection,
    ZeroIdealInDirection,
)
from .monomial import MonomialIdeal
from .newton import newton_polyhedron
from .regions import (
    Region,
    as_region,
    full_orthant,
    lattice_generators,
    region_intersect,
    region_minkowski,
)

_CACHE_MAX = 4096


class SystemExpr:
    """Base node.  Subclasses set rank, ambient_dim and implement _eval."""

    rank: int
    ambient_dim: int

    def __init__(self):
        self._cache: dict[tuple[int, ...], MonomialIdeal] = {}

    def eval(self, v) -> MonomialIdeal:
        vt = tuple(int(x) for x in v)
        if len(vt) != self.rank:
            raise RankMismatch(f"index of length {len(vt)} in rank {self.rank}")
        hit = self._cache.get(vt)
        if hit is not None:
            return hit
        result = self._eval(vt)
        if len(self._cache) >= _CACHE_MAX:
            self._cache.pop(next(iter(self._cache)))
        self._cache[vt] = result
        return result

    def _eval(self, v) -> MonomialIdeal:
        raise NotImplementedError

    def limit_body(self, v) -> Region:
        """Closure of the limit body of the restriction to direction v."""
        raise NotRegionExpressible(type(self).__name__)

    def restrict(self, v) -> DirectionView:
        return DirectionView(self, v)


@dataclass(frozen=True)
class DirectionView:
    """The N-graded view n -> eval(system, n*v) along a fixed direction."""

    system: SystemExpr
    direction: tuple[int, ...]

    def __post_init__(self):
        vt = tuple(int(x) for x in self.direction)
        if len(vt) != self.system.rank:
            raise RankMismatch(f"direction of length {len(vt)} in rank {self.system.rank}")
        if all(x == 0 for x in vt):
            raise ZeroDirection("direction must be nonzero")
        object.__setattr__(self, "direction", vt)

    def eval(self, n: int) -> MonomialIdeal:
        return self.system.eval(tuple(n * x for x in self.direction))

    def limit_body(self) -> Region:
        return self.system.limit_body(self.direction)


def restrict_direction(system: SystemExpr, v) -> DirectionView:
    return system.restrict(v)


class IdealPowers(SystemExpr):
    """a_(n_1,...,n_rho) = I_1^{n_1} ... I_rho^{n_rho}, with I^n = (1) for n <= 0."""

    def __init__(self, ideals):
        super().__init__()
        self.ideals = tuple(ideals)
        if not self.ideals:
            raise ValueError("need at least one ideal")
        dims = {i.dim for i in self.ideals}
        if len(dims) != 1:
            raise DimensionMismatch("ideals in different ambient dimensions")
        self.rank = len(self.ideals)
        self.ambient_dim = self.ideals[0].dim

    def _eval(self, v):
        result = MonomialIdeal.unit(self.ambient_dim)
        for ideal, n in zip(self.ideals, v):
            result = result.product(ideal.power(n))
        return result

    def limit_body(self, v):
        ideal = self.eval(tuple(v))
        if ideal.is_zero:
            raise ZeroIdealInDirection(f"zero ideal at {v}")
        return as_region(newton_polyhedron(ideal), provenance="limit")


class RegionSystem(SystemExpr):
    """a_n = ideal of all lattice points of n*P; a_n = (1) for n <= 0."""

    def __init__(self, region: Region):
        super().__init__()
        self.region = region
        self.rank = 1
        self.ambient_dim = region.dim

    def _eval(self, v):
        n = v[0]
        if n <= 0:
            return MonomialIdeal.unit(self.ambient_dim)
        return lattice_generators(self.region, n)

    def limit_body(self, v):
        n = v[0]
        if n <= 0:
            return full_orthant(self.ambient_dim)
        return self.region.scale(n)


class CeilingSystem(SystemExpr):
    """a_(x, y) = base^ceil(f(x) - y) for an epigraph cone {y >= f(x)}.

    The base chain I_m = base^m is decreasing and f is subadditive and
    positively homogeneous (a max of linear forms through 0), which is
    exactly what gradedness needs.
    """

    def __init__(self, cone: ConeRep, base: MonomialIdeal | None = None):
        super().__init__()
        if cone.forms is None:
            raise ValueError("ceiling systems need an epigraph cone")
        self.cone = cone
        self.base = base if base is not None else MonomialIdeal.maximal(2)
        self.rank = cone.rank
        self.ambient_dim = self.base.dim

    def exponent(self, v) -> int:
        x, y = v[:-1], v[-1]
        return ceil(self.cone.boundary_value(x) - y)

    def deficiency(self, v) -> Fraction:
        """max(f(x) - y, 0) at a rational index vector."""
        x, y = v[:-1], Fraction(v[-1])
        return max(self.cone.boundary_value(x) - y, Fraction(0))

    def _eval(self, v):
        return self.base.power(self.exponent(v))

    def limit_body(self, v):
        t = self.deficiency(tuple(v))
        if t == 0:
            return full_orthant(self.ambient_dim)
        return as_region(newton_polyhedron(self.base), provenance="limit").scale(t)


class Pullback(SystemExpr):
    """a_w = inner_{phi(w)} for an integer matrix phi: Z^rank -> Z^inner.rank."""

    def __init__(self, matrix, inner: SystemExpr):
        super().__init__()
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.inner = inner
        if len(self.matrix) != inner.rank:
            raise RankMismatch(f"matrix has {len(self.matrix)} rows, inner rank {inner.rank}")
        widths = {len(row) for row in self.matrix}
        if len(widths) != 1:
            raise RankMismatch("ragged matrix")
        self.rank = widths.pop()
        self.ambient_dim = inner.ambient_dim

    def apply(self, w):
        return tuple(sum(a * b for a, b in zip(row, w)) for row in self.matrix)

    def _eval(self, w):
        return self.inner.eval(self.apply(w))

    def limit_body(self, w):
        return self.inner.limit_body(self.apply(w))


class Product(SystemExpr):
    def __init__(self, left: SystemExpr, right: SystemExpr):
        super().__init__()
        if left.rank != right.rank:
            raise RankMismatch("children of different rank")
        if left.ambient_dim != right.ambient_dim:
            raise DimensionMismatch("children in different ambient dimensions")
        self.left, self.right = left, right
        self.rank = left.rank
        self.ambient_dim = left.ambient_dim

    def _eval(self, v):
        return self.left.eval(v).product(self.right.eval(v))

    def limit_body(self, v):
        return region_minkowski(self.left.limit_body(v), self.right.limit_body(v))


class Intersect(SystemExpr):
    def __init__(self, left: SystemExpr, right: SystemExpr):
        super().__init__()
        if left.rank != right.rank:
            raise RankMismatch("children of different rank")
        if left.ambient_dim != right.ambient_dim:
            raise DimensionMismatch("children in different ambient dimensions")
        self.left, self.right = left, right
        self.rank = left.rank
        self.ambient_dim = left.ambient_dim

    def _eval(self, v):
        return self.left.eval(v).intersect(self.right.eval(v))

    def limit_body(self, v):
        return region_intersect(self.left.limit_body(v), self.right.limit_body(v))


class Truncate(SystemExpr):
    """Zero outside the subsemigroup S = cone intersect Z^rank."""

    def __init__(self, inner: SystemExpr, cone: ConeRep):
        super().__init__()
        if cone.rank != inner.rank:
            raise RankMismatch("truncation cone of wrong rank")
        self.inner = inner
        self.cone = cone
        self.rank = inner.rank
        self.ambient_dim = inner.ambient_dim

    def _eval(self, v):
        if self.cone.contains(v):
            return self.inner.eval(v)
        return MonomialIdeal.zero(self.ambient_dim)

    def limit_body(self, v):
        if not self.cone.contains(tuple(v)):
            raise ZeroIdealInDirection(f"direction {v} outside the truncation semigroup")
        return self.inner.limit_body(v)


class ColonSystem(SystemExpr):
    """b_(m, n) = (inner_m : I^n), with I^n = (1) for n <= 0."""

    def __init__(self, inner: SystemExpr, ideal: MonomialIdeal):
        super().__init__()
        if ideal.dim != inner.ambient_dim:
            raise DimensionMismatch("colon ideal in the wrong ambient dimension")
        if ideal.is_zero:
            raise ValueError("colon by the zero ideal")
        self.inner = inner
        self.ideal = ideal
        self.rank = inner.rank + 1
        self.ambient_dim = inner.ambient_dim

    def _eval(self, v):
        head, n = v[:-1], v[-1]
        return self.inner.eval(head).colon(self.ideal.power(n))


# -- gradedness verification ----------------------------------------------------


@dataclass(frozen=True)
class GradednessReport:
    pairs_checked: int
    violations: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def box_window(bounds) -> list[tuple[int, ...]]:
    """Integer vectors of the box given by per-coordinate (lo, hi) bounds."""
    return [v for v in iterprod(*(range(lo, hi + 1) for lo, hi in bounds))]


def verify_gradedness(system: SystemExpr, window) -> GradednessReport:
    """Check a_v * a_w subset-of a_{v+w} over all pairs with v, w, v+w in the window."""
    pts = [tuple(v) for v in window]
    inside = set(pts)
    checked = 0
    violations = []
    for v, w in combinations_with_replacement(pts, 2):
        s = tuple(a + b for a, b in zip(v, w))
        if s not in inside:
            continue
        checked += 1
        if not system.eval(s).contains_ideal(system.eval(v).product(system.eval(w))):
            violations.append((v, w))
    return GradednessReport(checked, tuple(violations))


# -- builders for the named constructions -----------------------------------------


def kinked_intersection_system(n_kinks: int) -> Intersect:
    """The Z^2-graded system pr1* A intersect pr2* B, where A and B are the
    lattice systems of the kinked epigraph P and the line epigraph Q."""
    from .regions import build_g, build_kinked_f, epigraph_region

    p = RegionSystem(epigraph_region(build_kinked_f(n_kinks)))
    q = RegionSystem(epigraph_region(build_g()))
    return Intersect(Pullback([(1, 0)], p), Pullback([(0, 1)], q))


def ceiling_system(cone: ConeRep, base: MonomialIdeal | None = None) -> CeilingSystem:
    return CeilingSystem(cone, base)
