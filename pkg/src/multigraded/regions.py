"""Closed convex regions of the orthant absorbing the orthant under addition.

Regions are polyhedra with recession cone the full orthant, shared with
the Newton-polyhedron machinery.  This module adds the boundary-function
builders used by the pathological constructions (the kinked decreasing
convex function, its line companion, the Appendix's concave series), the
region algebra (scale/intersect/Minkowski), lattice-generator extraction,
and the gauge of the reflected symmetric body.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iterprod
from math import ceil

from .errors import (
    DimensionMismatch,
    EmptyRegion,
    NonpositiveScale,
    UnsupportedDimension,
)
from .monomial import MonomialIdeal, minimalize
from .newton import (
    NewtonPolyhedron,
    _chain_facets_2d,
    _dot,
    from_vertices,
    vertices_from_halfspaces,
)


def dyadic_sequence(n: int) -> list[Fraction]:
    """First n dyadic rationals of (0,1): 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ..."""
    out: list[Fraction] = []
    level = 1
    while len(out) < n:
        for num in range(1, 2**level, 2):
            out.append(Fraction(num, 2**level))
            if len(out) == n:
                break
        level += 1
    return out


@dataclass(frozen=True)
class PiecewiseLinearConvexFn:
    """Decreasing convex piecewise-linear function on [0, intercept], 0 after.

    ``breakpoints`` are (abscissa, value) pairs with abscissa 0 first;
    ``slopes[j]`` is the slope to the right of breakpoint j.  Slopes are
    strictly increasing and negative, so the function is convex and hits
    zero at a finite intercept.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]

    def __post_init__(self):
        bps, sl = self.breakpoints, self.slopes
        if len(bps) != len(sl) or not bps:
            raise ValueError("need one slope per breakpoint")
        if bps[0][0] != 0:
            raise ValueError("first breakpoint must be at x = 0")
        if any(s >= 0 for s in sl) or any(a >= b for a, b in zip(sl, sl[1:])):
            raise ValueError("slopes must be negative and strictly increasing")
        for (x1, v1), (x2, v2), s in zip(bps, bps[1:], sl):
            if x2 <= x1 or v2 != v1 + s * (x2 - x1):
                raise ValueError("breakpoints must be increasing and continuous")
        if any(v <= 0 for _, v in bps):
            raise ValueError("breakpoint values must be positive")

    @property
    def value_at_zero(self) -> Fraction:
        return self.breakpoints[0][1]

    @property
    def intercept(self) -> Fraction:
        x, v = self.breakpoints[-1]
        return x - v / self.slopes[-1]

    @property
    def kinks(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints[1:])

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0:
            raise ValueError("defined on x >= 0")
        if x >= self.intercept:
            return Fraction(0)
        j = max(i for i, (bx, _) in enumerate(self.breakpoints) if bx <= x)
        bx, bv = self.breakpoints[j]
        return bv + self.slopes[j] * (x - bx)

    def slope_right_of(self, x) -> Fraction:
        x = Fraction(x)
        if x >= self.intercept:
            return Fraction(0)
        j = max(i for i, (bx, _) in enumerate(self.breakpoints) if bx <= x)
        return self.slopes[j]


def build_kinked_f(n_kinks: int) -> PiecewiseLinearConvexFn:
    """The steep line -2x + 2 plus n_kinks hinge terms max(0, (e_i - x))/2^(i+2).

    Kink abscissae e_i run through the dyadic enumeration of (0,1); the
    slope jump at e_i is exactly 2^-(i+2), and the total lift of the value
    at 0 stays below 1, so the function keeps slope <= -2 and intercept 1.
    """
    eps = dyadic_sequence(n_kinks)
    weights = [Fraction(1, 2 ** (i + 2)) for i in range(1, n_kinks + 1)]

    def f(x):
        x = Fraction(x)
        return 2 - 2 * x + sum(max(Fraction(0), e - x) * w for e, w in zip(eps, weights))

    xs = [Fraction(0)] + sorted(eps)
    bps = tuple((x, f(x)) for x in xs)
    slopes = tuple(
        Fraction(-2) - sum(w for e, w in zip(eps, weights) if e > x) for x in xs
    )
    return PiecewiseLinearConvexFn(bps, slopes)


def build_g() -> PiecewiseLinearConvexFn:
    """The line 1 - x/2 on [0, 2]."""
    return PiecewiseLinearConvexFn(((Fraction(0), Fraction(1)),), (Fraction(-1, 2),))


# -- regions -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Region(NewtonPolyhedron):
    """An orthant-absorbing polyhedral region plus a provenance tag."""

    provenance: str = field(default="", compare=False)

    def scale(self, t) -> Region:
        if Fraction(t) <= 0:
            raise NonpositiveScale(f"scale factor {t} must be positive")
        base = NewtonPolyhedron.scale(self, t)
        return Region(base.dim, base.vertices, base.facets, provenance="scaled")


def as_region(poly: NewtonPolyhedron, provenance: str = "") -> Region:
    return Region(poly.dim, poly.vertices, poly.facets, provenance=provenance)


def full_orthant(k: int) -> Region:
    return Region(k, ((0,) * k,), (), provenance="halfspaces")


def region_from_halfspaces(k: int, facets) -> Region:
    """Region {x >= 0 : <a, x> >= c} from nonnegative-normal halfspaces."""
    kept = []
    for a, c in facets:
        if any(x < 0 for x in a) or all(x == 0 for x in a):
            raise ValueError(f"facet normal {a!r} must be nonzero and nonnegative")
        if Fraction(c) > 0:
            kept.append((tuple(a), Fraction(c)))
    if not kept:
        return full_orthant(k)
    if k > 3:
        raise UnsupportedDimension("halfspace regions are limited to k <= 3")
    verts = vertices_from_halfspaces(k, kept)
    if k == 2:
        return Region(2, verts, tuple(_chain_facets_2d(list(verts))), provenance="halfspaces")
    rebuilt = from_vertices(verts)
    return Region(k, rebuilt.vertices, rebuilt.facets, provenance="halfspaces")


def epigraph_region(fn: PiecewiseLinearConvexFn) -> Region:
    """The set above the graph of fn in the first quadrant (k = 2)."""
    verts = [(x, v) for x, v in fn.breakpoints] + [(fn.intercept, Fraction(0))]
    return Region(2, tuple(verts), tuple(_chain_facets_2d(verts)), provenance="epigraph")


def region_scale(region: Region, t) -> Region:
    return region.scale(t)


def region_intersect(p: NewtonPolyhedron, q: NewtonPolyhedron) -> Region:
    if p.dim != q.dim:
        raise DimensionMismatch("regions in different dimensions")
    merged = sorted(set(p.facets) | set(q.facets))
    if not merged:
        return full_orthant(p.dim)
    verts = vertices_from_halfspaces(p.dim, merged)
    if p.dim == 2:
        return Region(2, verts, tuple(_chain_facets_2d(list(verts))), provenance="intersection")
    rebuilt = from_vertices(verts)
    return Region(p.dim, rebuilt.vertices, rebuilt.facets, provenance="intersection")


def region_minkowski(p: NewtonPolyhedron, q: NewtonPolyhedron) -> Region:
    if p.dim != q.dim:
        raise DimensionMismatch("regions in different dimensions")
    sums = [tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices]
    rebuilt = from_vertices(sums)
    return Region(p.dim, rebuilt.vertices, rebuilt.facets, provenance="minkowski")


def lattice_generators(region: NewtonPolyhedron, m: int) -> MonomialIdeal:
    """Minimal generators of the ideal of all lattice points of m * region.

    k = 2 uses a staircase column scan of the scaled boundary; k = 3 scans
    a bounding box with a domination filter (O(B^3)).
    """
    if m < 1:
        raise ValueError("dilation factor must be a positive integer")
    scaled = region.scale(m) if m != 1 else region
    k = region.dim
    if k == 1:
        return minimalize([(ceil(Fraction(scaled.vertices[0][0])),)], 1)
    if k == 2:
        return _lattice_generators_2d(scaled)
    if k == 3:
        return _lattice_generators_3d(scaled)
    raise UnsupportedDimension("lattice scans are limited to k <= 3")


def _lattice_generators_2d(scaled: NewtonPolyhedron) -> MonomialIdeal:
    vertical = [c for a, c in scaled.facets if a[1] == 0]
    sloped = [(a, c) for a, c in scaled.facets if a[1] > 0]
    x_start = ceil(max(vertical)) if vertical else 0
    x_stop = ceil(max(Fraction(v[0]) for v in scaled.vertices))
    gens = []
    for x in range(x_start, max(x_start, x_stop) + 1):
        y = Fraction(0)
        for a, c in sloped:
            y = max(y, Fraction(c - a[0] * x, a[1]))
        gens.append((x, ceil(y)))
    if not gens:
        raise EmptyRegion("no lattice points in the scan range")
    return minimalize(gens, 2)


def _lattice_generators_3d(scaled: NewtonPolyhedron) -> MonomialIdeal:
    bounds = []
    for i in range(3):
        per_axis = [ceil(Fraction(c, a[i])) + 1 for a, c in scaled.facets if a[i] > 0]
        bounds.append(max(per_axis) if per_axis else 0)
    points = [
        p
        for p in iterprod(*(range(b + 1) for b in bounds))
        if all(_dot(a, p) >= c for a, c in scaled.facets)
    ]
    if not points:
        raise EmptyRegion("no lattice points in the scan box")
    return minimalize(points, 3)


# -- the appendix construction ---------------------------------------------------


@dataclass(frozen=True)
class ConcaveBoundary:
    """Concave nonincreasing piecewise-linear function on [0, 1] with f(1) = 0."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError("defined on [0, 1]")
        j = max(i for i, (bx, _) in enumerate(self.breakpoints) if bx <= x)
        bx, bv = self.breakpoints[j]
        return bv + self.slopes[j] * (x - bx)

    @property
    def kinks(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.breakpoints[1:])


def appendix_boundary(n_terms: int) -> tuple[ConcaveBoundary, SymmetricBody]:
    """Sum of n_terms hinge terms min(e_i, e_i (1-x)/(1-x_i)) and its body.

    e_i = 2^-i, kink abscissae x_i from the dyadic enumeration.  Each term
    is the constant e_i left of x_i and drops linearly to 0 at x = 1, so
    the sum is concave, nonincreasing, kinked exactly at the x_i.  The body
    is the subgraph reflected across both axes: a symmetric convex polygon.
    """
    if n_terms < 1:
        raise ValueError("need at least one term")
    xs = dyadic_sequence(n_terms)
    eps = [Fraction(1, 2**i) for i in range(1, n_terms + 1)]

    def f(x):
        x = Fraction(x)
        return sum(min(e, e * (1 - x) / (1 - xi)) for e, xi in zip(eps, xs))

    bxs = [Fraction(0)] + sorted(xs)
    bps = tuple((x, f(x)) for x in bxs)
    slopes = tuple(
        sum((-e / (1 - xi) for e, xi in zip(eps, xs) if xi <= x), Fraction(0))
        for x in bxs
    )
    boundary = ConcaveBoundary(bps, slopes)
    return boundary, _reflect_to_body(boundary)


@dataclass(frozen=True)
class SymmetricBody:
    """Origin-symmetric convex polygon, with gauge functionals per edge.

    gauge(p) = inf{ y > 0 : p/y in body } = max over edges of <u_e, p>,
    where each edge lies on the line <u_e, x> = 1.
    """

    vertices: tuple[tuple[Fraction, Fraction], ...]
    functionals: tuple[tuple[Fraction, Fraction], ...]
    kink_vertices: tuple[tuple[Fraction, Fraction], ...]

    def gauge(self, p) -> Fraction:
        px, py = Fraction(p[0]), Fraction(p[1])
        best = Fraction(0)
        for u1, u2 in self.functionals:
            best = max(best, u1 * px + u2 * py)
        return best


def _reflect_to_body(boundary: ConcaveBoundary) -> SymmetricBody:
    kinks = [(x, boundary(x)) for x in boundary.kinks]
    quarter = [(Fraction(1), Fraction(0))] + list(reversed(kinks)) + [
        (Fraction(0), boundary(0))
    ]
    upper = quarter + [(-x, y) for x, y in reversed(quarter)][1:]
    polygon = upper + [(-x, -y) for x, y in upper[1:-1]]
    functionals = []
    n = len(polygon)
    for i in range(n):
        (x1, y1), (x2, y2) = polygon[i], polygon[(i + 1) % n]
        det = x1 * y2 - x2 * y1
        if det == 0:
            raise EmptyRegion("edge through the origin; body has empty interior")
        functionals.append((Fraction(y2 - y1, 1) / det, Fraction(x1 - x2, 1) / det))
    return SymmetricBody(tuple(polygon), tuple(functionals), tuple(kinks))
