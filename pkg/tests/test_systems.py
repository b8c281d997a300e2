"""System expression trees: node semantics, limit bodies, gradedness."""

import random
from fractions import Fraction
from itertools import product as iterprod

import pytest

from multigraded.cones import ConeRep, abs_sum_cone
from multigraded.errors import (
    NotRegionExpressible,
    RankMismatch,
    ZeroDirection,
    ZeroIdealInDirection,
)
from multigraded.monomial import MonomialIdeal, minimalize
from multigraded.newton import newton_polyhedron
from multigraded.regions import (
    build_g,
    build_kinked_f,
    epigraph_region,
    lattice_generators,
    region_from_halfspaces,
    region_intersect,
)
from multigraded.systems import (
    CeilingSystem,
    ColonSystem,
    IdealPowers,
    Intersect,
    Product,
    Pullback,
    RegionSystem,
    Truncate,
    box_window,
    kinked_intersection_system,
    restrict_direction,
    verify_gradedness,
)

F = Fraction


def ideal(*gens, k=2):
    return minimalize(gens, k)


@pytest.fixture
def wedge_system():
    return RegionSystem(region_from_halfspaces(2, [((1, 2), 2), ((2, 1), 2)]))


class TestEval:
    def test_ideal_powers_with_negative_index(self):
        system = IdealPowers([MonomialIdeal.maximal(2), ideal((1, 0))])
        assert system.eval((2, -1)) == ideal((2, 0), (1, 1), (0, 2))

    def test_ceiling_exponent(self):
        system = CeilingSystem(abs_sum_cone())
        assert system.eval((1, 2, 0)) == MonomialIdeal.maximal(2).power(3)
        assert system.eval((1, 1, 2)).is_unit

    def test_truncate_outside_semigroup(self):
        region_sys = RegionSystem(epigraph_region(build_g()))
        trunc = Truncate(region_sys, ConeRep.from_halfspaces(1, [(1,)]))
        assert trunc.eval((-5,)).is_zero
        assert trunc.eval((2,)) == region_sys.eval((2,))

    def test_region_system_nonpositive_is_unit(self):
        system = RegionSystem(epigraph_region(build_g()))
        assert system.eval((0,)).is_unit and system.eval((-3,)).is_unit

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            IdealPowers([MonomialIdeal.maximal(2)]).eval((1, 2))

    def test_memoization_returns_same_object(self):
        system = RegionSystem(epigraph_region(build_kinked_f(1)))
        assert system.eval((5,)) is system.eval((5,))

    def test_colon_system(self):
        inner = IdealPowers([ideal((2, 1))])
        system = ColonSystem(inner, ideal((0, 1)))
        assert system.rank == 2
        assert system.eval((1, 1)) == ideal((2, 0))
        assert system.eval((1, 0)) == ideal((2, 1))
        assert system.eval((1, -3)) == ideal((2, 1))

    def test_product_and_intersect_nodes(self):
        a = IdealPowers([ideal((1, 0))])
        b = IdealPowers([ideal((0, 1))])
        assert Product(a, b).eval((2,)) == ideal((2, 2))
        assert Intersect(a, b).eval((2,)) == ideal((2, 2))
        assert Intersect(a, b).eval((-1,)).is_unit


class TestPullback:
    def test_functoriality(self):
        inner = IdealPowers([MonomialIdeal.maximal(2), ideal((2, 0))])
        system = Pullback([(1, 2, 0), (0, 1, -1)], inner)
        assert system.rank == 3
        rng = random.Random(41)
        for _ in range(20):
            w = tuple(rng.randint(-3, 3) for _ in range(3))
            assert system.eval(w) == inner.eval(system.apply(w))

    def test_projection_rows(self):
        inner = RegionSystem(epigraph_region(build_g()))
        pr2 = Pullback([(0, 1)], inner)
        assert pr2.eval((7, 2)) == inner.eval((2,))


class TestRestrictDirection:
    def test_zero_direction(self):
        with pytest.raises(ZeroDirection):
            restrict_direction(IdealPowers([MonomialIdeal.maximal(2)]), (0,))

    def test_at_zero_matches_eval_at_origin(self):
        system = IdealPowers([MonomialIdeal.maximal(2)])
        view = restrict_direction(system, (1,))
        assert view.eval(0) == system.eval((0,))

    def test_scaling(self):
        a = ideal((2, 0), (0, 3))
        system = IdealPowers([a])
        view = restrict_direction(system, (3,))
        assert view.eval(2) == a.power(6)

    def test_thm2_direction(self):
        system = kinked_intersection_system(1)
        view = restrict_direction(system, (1, 1))
        a2 = system.eval((2, 2))
        assert view.eval(2) == a2


class TestLimitBody:
    def test_region_system_identity(self, wedge_system):
        assert wedge_system.limit_body((1,)) == wedge_system.region

    def test_region_system_scales(self, wedge_system):
        assert wedge_system.limit_body((3,)) == wedge_system.region.scale(3)

    def test_unit_direction_gives_orthant(self, wedge_system):
        body = wedge_system.limit_body((-2,))
        assert body.vertices == ((0, 0),) and body.facets == ()

    def test_thm2_intersection(self):
        system = kinked_intersection_system(1)
        body = system.limit_body((1, 1))
        p = epigraph_region(build_kinked_f(1))
        q = epigraph_region(build_g())
        assert body == region_intersect(p, q)

    def test_ceiling(self):
        system = CeilingSystem(abs_sum_cone())
        body = system.limit_body((1, 2, 0))
        assert body == newton_polyhedron(MonomialIdeal.maximal(2)).scale(3)
        assert body.facets == (((1, 1), 3),)

    def test_colon_not_expressible(self):
        system = ColonSystem(IdealPowers([ideal((2, 1))]), ideal((0, 1)))
        with pytest.raises(NotRegionExpressible):
            system.limit_body((1, 1))

    def test_truncated_direction_outside(self):
        system = Truncate(
            kinked_intersection_system(0), ConeRep.from_halfspaces(2, [(-1, 8)])
        )
        with pytest.raises(ZeroIdealInDirection):
            system.limit_body((9, 1))
        inner_body = kinked_intersection_system(0).limit_body((1, 1))
        assert system.limit_body((1, 1)) == inner_body

    def test_ideal_powers(self):
        a = ideal((2, 0), (0, 3))
        system = IdealPowers([a])
        assert system.limit_body((2,)) == newton_polyhedron(a.power(2))


class TestContainmentProperties:
    def test_nested_powers_inside_later_ideals(self, wedge_system):
        for m, q in iterprod(range(1, 5), range(1, 5)):
            am = wedge_system.eval((m,))
            aqm = wedge_system.eval((q * m,))
            assert aqm.contains_ideal(am.power(q))

    def test_factorial_absorption(self, wedge_system):
        # generators of a_n, rescaled by L!/n, land in P(a_{L!})
        L = 4
        fact = 24
        target = newton_polyhedron(wedge_system.eval((fact,)))
        for n in range(1, L + 1):
            for g in wedge_system.eval((n,)).gens:
                scaled = tuple(F(fact, n) * x for x in g)
                assert target.contains_point(scaled)


class TestGradedness:
    def test_ideal_powers_window(self):
        system = IdealPowers([MonomialIdeal.maximal(2), ideal((2, 0), (0, 3))])
        report = verify_gradedness(system, box_window([(-2, 2), (-2, 2)]))
        assert report.ok and report.pairs_checked > 0

    def test_wedge_window(self, wedge_system):
        report = verify_gradedness(wedge_system, box_window([(0, 8)]))
        assert report.ok

    def test_ceiling_window(self):
        system = CeilingSystem(abs_sum_cone())
        report = verify_gradedness(system, box_window([(-3, 3)] * 3))
        assert report.ok and report.pairs_checked > 20000

    def test_truncation_preserves_gradedness(self):
        system = Truncate(
            kinked_intersection_system(0), ConeRep.from_halfspaces(2, [(-1, 8)])
        )
        report = verify_gradedness(system, box_window([(-2, 2), (-2, 2)]))
        assert report.ok

    def test_colon_system_gradedness_on_its_semigroup(self):
        # colon systems are graded over Z x N; the n <= 0 convention makes
        # evaluation total but does not extend the grading below n = 0
        system = ColonSystem(
            IdealPowers([ideal((2, 0), (0, 3))]), MonomialIdeal.maximal(2)
        )
        report = verify_gradedness(system, box_window([(-2, 2), (0, 3)]))
        assert report.ok


class TestKinkedIntersectionSystem:
    def test_eval_is_lattice_intersection(self):
        system = kinked_intersection_system(1)
        p = epigraph_region(build_kinked_f(1))
        q = epigraph_region(build_g())
        got = system.eval((2, 3))
        want = lattice_generators(p, 2).intersect(lattice_generators(q, 3))
        assert got == want

    def test_unit_quadrant(self):
        system = kinked_intersection_system(1)
        assert system.eval((0, 0)).is_unit
        assert system.eval((-2, -5)).is_unit
        assert not system.eval((1, 0)).is_unit
