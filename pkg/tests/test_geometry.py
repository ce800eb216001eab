import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SPEEDS, all_configs
from tchull import geometry as G
from tchull.geometry import (HighwayConfig, Metric, PathKind, Root, highway_path_costs,
                             in_walking_region, l1_chain, scalar_str, time_distance,
                             to_scalar, wr_boundary_l1, wr_boundary_l2inf, wr_edge_membership,
                             wr_l1_apices)

coord = st.fractions(min_value=0, max_value=50, max_denominator=6)
point = st.tuples(coord, coord)


def test_scalar_parsing_is_exact():
    assert to_scalar("2.5") == Fraction(5, 2)
    assert to_scalar("1/3") == Fraction(1, 3)
    assert to_scalar("0.1") == Fraction(1, 10)
    assert scalar_str(Fraction(7, 2)) == "7/2"
    assert scalar_str(Fraction(4, 2)) == "2"
    with pytest.raises((ValueError, TypeError)):
        to_scalar("abc")


def test_l1_costs_example():
    cfg = HighwayConfig.l1(2)
    costs = {c.kind: c.cost for c in highway_path_costs((1, 1), (5, 1), cfg)}
    assert costs == {PathKind.VIA_HX: 4, PathKind.VIA_HY: 6,
                     PathKind.VIA_HX_THEN_HY: 7, PathKind.VIA_HY_THEN_HX: 5}
    assert time_distance((1, 1), (5, 1), cfg) == 4


def test_l2inf_examples():
    cfg = HighwayConfig.l2inf()
    assert time_distance((1, 2), (10, 3), cfg) == 4
    assert time_distance((3, 4), (6, 8), cfg) == 5


def test_highway_costs_reject_l2():
    with pytest.raises(ValueError):
        highway_path_costs((1, 1), (2, 2), HighwayConfig.l2inf())


def test_config_constraints():
    with pytest.raises(ValueError):
        HighwayConfig.l1(1)
    assert HighwayConfig.l2inf().metric is Metric.L2_INF
    assert HighwayConfig.l1(Fraction(3, 2)).is_l1


def test_root_compares_exactly():
    assert Root.of(2) < Fraction(1415, 1000)
    assert Root.of(2) > Fraction(1414, 1000)
    assert Root.of(9) == 3


def test_tie_counts_inside():
    cfg = HighwayConfig.l1(2)
    # direct walk 4 equals the VIA_HX cost 4
    assert in_walking_region((1, 1), (5, 1), cfg)
    assert not in_walking_region((1, 1), (9, 1), cfg)


def test_origin_region_is_a_point():
    for cfg in all_configs():
        assert in_walking_region((0, 0), (0, 0), cfg)
        assert not in_walking_region((0, 0), (1, 0), cfg)
        assert not in_walking_region((0, 0), (0, Fraction(1, 100)), cfg)


@settings(max_examples=300, deadline=None)
@given(point, point, st.sampled_from(SPEEDS))
def test_l1_region_matches_definition(p, q, v):
    cfg = HighwayConfig.l1(v)
    direct = abs(p[0] - q[0]) + abs(p[1] - q[1])
    assert in_walking_region(p, q, cfg) == (direct <= time_distance(p, q, cfg))


@settings(max_examples=300, deadline=None)
@given(point, point)
def test_l2_region_matches_definition(p, q):
    cfg = HighwayConfig.l2inf()
    direct = Root.of((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2)
    assert in_walking_region(p, q, cfg) == (direct <= min(p) + min(q))


@settings(max_examples=200, deadline=None)
@given(point, point, st.sampled_from(all_configs()))
def test_region_symmetric(p, q, cfg):
    assert in_walking_region(p, q, cfg) == in_walking_region(q, p, cfg)


@settings(max_examples=200, deadline=None)
@given(point, point, st.sampled_from(all_configs()))
def test_reflection_preserves_region(p, q, cfg):
    assert in_walking_region(p, q, cfg) == in_walking_region(p[::-1], q[::-1], cfg)


@settings(max_examples=150, deadline=None)
@given(point, point, point, st.sampled_from(all_configs()))
def test_edge_membership_vs_samples(a, b, q, cfg):
    """Any sample of the segment inside WR(q) forces membership; endpoints
    are exact samples."""
    got = wr_edge_membership(a, b, q, cfg)
    hits = [in_walking_region(G._lerp(a, b, Fraction(k, 40)), q, cfg) for k in range(41)]
    if any(hits):
        assert got
    if in_walking_region(a, q, cfg) or in_walking_region(b, q, cfg):
        assert got


def test_edge_membership_interior_witness():
    # only an interior point of the segment reaches q
    cfg = HighwayConfig.l2inf()
    q = (10, 10)
    a, b = (0, 30), (30, 0)
    assert not in_walking_region(a, q, cfg) and not in_walking_region(b, q, cfg)
    assert wr_edge_membership(a, b, q, cfg)


def test_edge_float_filter_agrees_with_exact():
    rng = random.Random(7)
    for _ in range(3000):
        cfg = HighwayConfig.l1(rng.choice(SPEEDS))
        den = rng.choice((1, 3))
        a, b, q = [(Fraction(rng.randint(0, 300), den), Fraction(rng.randint(0, 300), den))
                   for _ in range(3)]
        if a == b:
            continue
        ts = [Fraction(0), Fraction(1)]
        quick = G._l1_edge_float(a, b, q, cfg._num, cfg._den, ts)
        exact = G._l1_piece_feasible(a, b, q, cfg, 0, 1)
        if quick is not None:
            assert quick == exact


def test_edge_far_never_rejects_members():
    rng = random.Random(8)
    for _ in range(3000):
        cfg = rng.choice(all_configs())
        a, b, q = [(rng.randint(0, 200), rng.randint(0, 200)) for _ in range(3)]
        if a != b and G._edge_far(a, b, q, cfg):
            assert not any(in_walking_region(G._lerp(a, b, Fraction(k, 20)), q, cfg)
                           for k in range(21))


@settings(max_examples=200, deadline=None)
@given(point, point, st.sampled_from(SPEEDS))
def test_l1_chain_matches_predicate(q, w, v):
    cfg = HighwayConfig.l1(v)
    assert l1_chain(q, cfg).contains(w) == in_walking_region(w, q, cfg)


def test_wr_boundary_l1_requires_side_hx():
    with pytest.raises(ValueError):
        wr_boundary_l1((1, 2), HighwayConfig.l1(2))


def test_l1_apices_in_region():
    # (0, y_q) is only a wedge apex; the other three belong to the region
    rng = random.Random(3)
    for _ in range(300):
        cfg = HighwayConfig.l1(rng.choice(SPEEDS))
        x = rng.randint(1, 100)
        q = (x, rng.randint(0, x))
        chain = wr_boundary_l1(q, cfg)
        for k, apex in enumerate(wr_l1_apices(q, cfg)):
            if k != 2 and min(apex) >= 0:
                assert chain.contains(apex)


@settings(max_examples=200, deadline=None)
@given(point, point)
def test_l2_parabolas_match_predicate(q, w):
    assert wr_boundary_l2inf(q).contains(w) == in_walking_region(w, q, HighwayConfig.l2inf())
