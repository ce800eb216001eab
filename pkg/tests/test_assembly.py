import random
from fractions import Fraction

from conftest import rand_config, rand_points
from tchull.assembly import Axis, _links, attachment_feet, assemble
from tchull.clustering import build_side_clusters
from tchull.geometry import HighwayConfig
from tchull.oracle import closure_violations, stp_paths
from tchull.pipeline import time_convex_hull
from tchull.sides import decompose


def test_feet_and_links():
    cfg = HighwayConfig.l1(2)
    pts = [(10, 1), (40, 2), (1, 20)]
    res = time_convex_hull(pts, cfg)
    tch = res.hull
    assert tch.visits == len(tch.clusters) == 3
    assert tch.feet_on(Axis.HX) == [(10, 10), (40, 40)]
    assert tch.feet_on(Axis.HY) == [(20, 20)]
    links = sorted((a.value, iv) for a, iv in tch.highway_links)
    assert links == [("HX", (0, 10)), ("HX", (10, 40)), ("HY", (0, 20))]
    assert not tch.uses_both_highways


def test_merged_cluster_sits_on_both_axes():
    cfg = HighwayConfig.l2inf()
    res = time_convex_hull([(5, 4), (4, 5)], cfg)
    [c] = res.hull.clusters
    assert {f.axis for f in c.feet} == {Axis.HX, Axis.HY}
    assert res.hull.uses_both_highways


def test_single_side_has_no_origin_link():
    assert _links([(3, 5), (9, 12)], False) == [(5, 9)]
    assert _links([(3, 5), (4, 12)], True) == [(0, 3)]
    assert _links([], True) == []


def test_assemble_order_and_single_visit():
    cfg = HighwayConfig.l1(2)
    pts = [(10, 1), (40, 2), (90, 3), (1, 20), (2, 70)]
    hx, hy = decompose(pts)
    cx, cy = build_side_clusters(hx, cfg), build_side_clusters(hy, cfg)
    tch = assemble(cx, cy)
    assert [c.member_ids for c in tch.clusters] == [[2], [1], [0], [3], [4]]
    assert [f.axis for c in tch.clusters for f in c.feet] == [Axis.HX] * 3 + [Axis.HY] * 2
    assert len(attachment_feet(cx[0])) == 1


def test_stp_shapes():
    cfg = HighwayConfig.l1(2)
    [p] = stp_paths((1, 1), (9, 1), cfg)
    assert [piece[0] for piece in p] == ["walk", "ride", "walk"]
    both = stp_paths((1, 1), (5, 1), cfg)
    assert len(both) == 2  # tie: direct walk and the HX ride
    [mixed] = stp_paths((10, 1), (1, 10), cfg)
    assert [piece[1] for piece in mixed if piece[0] == "ride"] == ["HX", "HY"]


def test_closure_small_runs():
    rng = random.Random(51)
    for _ in range(15):
        cfg = rand_config(rng)
        pts = rand_points(rng, rng.randint(2, 25))
        res = time_convex_hull(pts, cfg)
        pairs = [(rng.randrange(len(pts)), rng.randrange(len(pts))) for _ in range(100)]
        assert closure_violations(pts, res.hull, cfg, pairs, 2.0) == []


def test_closure_detects_missing_links():
    cfg = HighwayConfig.l1(2)
    pts = [(10, 1), (40, 2), (1, 20)]
    res = time_convex_hull(pts, cfg)
    res.hull.highway_links = []
    assert closure_violations(pts, res.hull, cfg, [(0, 1), (0, 2)], 0.5)


def test_cross_axis_foot_needed():
    # (137/2, 221/4) reaches the merged cluster fastest by walking left to
    # H_y and riding up, so its cluster needs a foot on H_y as well
    cfg = HighwayConfig.l1(Fraction(3, 2))
    pts = [(Fraction(2019, 4), 408), (Fraction(137, 2), Fraction(221, 4)),
           (Fraction(3719, 4), Fraction(1249, 2)), (Fraction(497, 2), Fraction(3101, 4))]
    res = time_convex_hull(pts, cfg)
    [lone] = [c for c in res.hull.clusters if c.member_ids == [1]]
    assert {f.axis for f in lone.feet} == {Axis.HX, Axis.HY}
    assert closure_violations(pts, res.hull, cfg, [(1, 3)], 0.5) == []
    flat = assemble(res.side_x, res.side_y, res.merged)  # no cfg: own-axis feet only
    assert closure_violations(pts, flat, cfg, [(1, 3)], 0.5) == [(1, 3)]
