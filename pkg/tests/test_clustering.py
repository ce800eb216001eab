import random

from conftest import SPEEDS, rand_config, rand_points
from tchull.clustering import SideStats, build_side_clusters
from tchull.geometry import HighwayConfig
from tchull.hull import in_convex_polygon, is_convex_ccw
from tchull.oracle import oracle_clusters
from tchull.sides import Side, SideSequence, decompose


def _seq(points):
    hx, _ = decompose(points)
    return hx


def test_tie_merges_two_points():
    cfg = HighwayConfig.l1(2)
    assert len(build_side_clusters(_seq([(1, 1), (5, 1)]), cfg)) == 1
    assert len(build_side_clusters(_seq([(1, 1), (9, 1)]), cfg)) == 2


def test_late_point_merges_a_range():
    # four singletons, then a point that pulls the last three together
    cfg = HighwayConfig.l2inf()
    pts = [(1, 1), (10, 7), (23, 0), (30, 1), (33, 25)]
    assert len(build_side_clusters(_seq(pts[:4]), cfg)) == 4
    got = build_side_clusters(_seq(pts), cfg)
    assert [sorted(c.member_ids) for c in got] == [[0], [1, 2, 3, 4]]
    assert oracle_clusters(pts, cfg).as_sets() == {frozenset([0]), frozenset([1, 2, 3, 4])}


def test_empty_and_single():
    cfg = HighwayConfig.l1(2)
    assert build_side_clusters(SideSequence(Side.SIDE_HX, ()), cfg) == []
    [c] = build_side_clusters(_seq([(3, 1)]), cfg)
    assert c.hull == [(3, 1)] and c.span == (0, 0)


def test_matches_oracle_per_side():
    rng = random.Random(21)
    for trial in range(150):
        cfg = rand_config(rng)
        pts = rand_points(rng, rng.randint(1, 40), den=rng.choice((1, 4)), top=rng.choice((50, 1000)))
        for seq in decompose(pts):
            if not len(seq):
                continue
            stats = SideStats()
            got = build_side_clusters(seq, cfg, stats)
            want = oracle_clusters(list(seq.points), cfg).blocks
            assert {frozenset(c.member_ids) for c in got} == {
                frozenset(seq.ids[k] for k in b) for b in want}
            for c in got:
                assert is_convex_ccw(c.hull)
                assert all(in_convex_polygon(c.hull, p) for p in c.members)
                assert c.side is seq.side
            spans = [c.span for c in got]
            assert spans == sorted(spans)
            assert sum(c.size for c in got) == len(seq)


def test_merge_counters():
    rng = random.Random(5)
    cfg = HighwayConfig.l1(SPEEDS[1])
    pts = [(rng.randint(0, 1000), rng.randint(0, 1000)) for _ in range(300)]
    stats = SideStats()
    hx, _ = decompose(pts)
    got = build_side_clusters(hx, cfg, stats)
    assert stats.merges == len(hx) - len(got)
    assert stats.new_edges <= 2 * stats.merges + len(hx)
