"""JSON instance and result files with exact rational strings.

Instance file::

    {"schema_version": 1, "metric": "L1", "speed": "3/2",
     "points": [["0", "1/3"], ["2.5", "4"]]}

``speed`` is ``"inf"`` for the L2INF metric.  Result files carry the
cluster hulls, member indices, highway links, cross-side marks and run
statistics; every coordinate is written as ``"a"`` or ``"a/b"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .geometry import HighwayConfig, Metric, scalar_str, to_scalar

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Malformed file contents."""


class ConstraintError(ValueError):
    """Well-formed input that violates a model constraint."""


@dataclass
class InstanceFile:
    cfg: HighwayConfig
    points: list

    def to_json(self) -> str:
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "metric": self.cfg.metric.value,
            "speed": "inf" if self.cfg.speed is None else scalar_str(self.cfg.speed),
            "points": [[scalar_str(x), scalar_str(y)] for x, y in self.points],
        }, indent=1)


def _scalar(s, what):
    if not isinstance(s, (str, int)) or isinstance(s, bool):
        raise SchemaError(f"{what}: expected a number string, got {s!r}")
    try:
        return to_scalar(s)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{what}: {exc}") from exc


def _load(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {data.get('schema_version')!r}")
    return data


def make_config(metric, speed):
    """HighwayConfig from CLI-style strings; raises ConstraintError."""
    try:
        metric = Metric(str(metric).upper())
    except ValueError as exc:
        raise SchemaError(f"unknown metric {metric!r}") from exc
    if metric is Metric.L1:
        if speed is None or str(speed).lower() == "inf":
            raise ConstraintError("L1 needs a finite highway speed")
        v = _scalar(speed, "speed")
        if v <= 1:
            raise ConstraintError(f"highway speed must exceed 1, got {speed}")
        return HighwayConfig.l1(v)
    if speed is not None and str(speed).lower() != "inf":
        raise ConstraintError("L2INF uses an infinite highway speed")
    return HighwayConfig.l2inf()


def parse_instance(text) -> InstanceFile:
    data = _load(text)
    for key in ("metric", "speed", "points"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    cfg = make_config(data["metric"], data["speed"])
    pts = data["points"]
    if not isinstance(pts, list):
        raise SchemaError("points must be a list")
    out = []
    for i, p in enumerate(pts):
        if not isinstance(p, list) or len(p) != 2:
            raise SchemaError(f"point {i} must be a pair")
        x, y = _scalar(p[0], f"point {i}"), _scalar(p[1], f"point {i}")
        if x < 0 or y < 0:
            raise ConstraintError(f"point {i} = ({p[0]}, {p[1]}) has a negative coordinate")
        out.append((x, y))
    return InstanceFile(cfg, out)


def load_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


@dataclass
class ResultFile:
    metric: str
    speed: str
    clusters: list  # [{"hull": [(x, y), ...], "members": [int, ...], "feet": [(axis, lo, hi)]}]
    highway_links: list  # [(axis, lo, hi)]
    uses_both_highways: bool
    marks: list  # [(hx id, hy id)]
    stats: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "schema_version": SCHEMA_VERSION,
            "metric": self.metric,
            "speed": self.speed,
            "clusters": [{
                "hull": [[scalar_str(x), scalar_str(y)] for x, y in c["hull"]],
                "members": list(c["members"]),
                "feet": [[a, scalar_str(lo), scalar_str(hi)] for a, lo, hi in c["feet"]],
            } for c in self.clusters],
            "highway_links": [[a, scalar_str(lo), scalar_str(hi)] for a, lo, hi in self.highway_links],
            "uses_both_highways": self.uses_both_highways,
            "marks": [list(m) for m in self.marks],
            "stats": self.stats,
        }, indent=1, sort_keys=True)


def result_from_hull(res, cfg: HighwayConfig, stats=None) -> ResultFile:
    tch = res.hull
    clusters = [{
        "hull": list(c.hull),
        "members": sorted(c.member_ids),
        "feet": [(f.axis.value, f.lo, f.hi) for f in c.feet],
    } for c in tch.clusters]
    links = [(axis.value, lo, hi) for axis, (lo, hi) in tch.highway_links]
    return ResultFile(
        cfg.metric.value,
        "inf" if cfg.speed is None else scalar_str(cfg.speed),
        clusters, links, tch.uses_both_highways,
        sorted(res.marks.pairs), dict(stats or {}))


def validate_result(data) -> None:
    """Raise SchemaError unless ``data`` (decoded JSON) is a result file."""
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError("not a result file")
    need = {"metric": str, "speed": str, "clusters": list, "highway_links": list,
            "uses_both_highways": bool, "marks": list, "stats": dict}
    for key, typ in need.items():
        if not isinstance(data.get(key), typ):
            raise SchemaError(f"field {key!r} missing or not {typ.__name__}")
    for c in data["clusters"]:
        if not isinstance(c, dict) or set(c) != {"hull", "members", "feet"}:
            raise SchemaError("bad cluster entry")
        for v in c["hull"]:
            _scalar(v[0], "hull"), _scalar(v[1], "hull")
        if not all(isinstance(m, int) for m in c["members"]):
            raise SchemaError("members must be integers")
        for f in c["feet"]:
            if f[0] not in ("HX", "HY"):
                raise SchemaError("bad foot axis")
    for link in data["highway_links"]:
        if len(link) != 3 or link[0] not in ("HX", "HY"):
            raise SchemaError("bad highway link")
        _scalar(link[1], "link"), _scalar(link[2], "link")
    for m in data["marks"]:
        if len(m) != 2 or not all(isinstance(v, int) for v in m):
            raise SchemaError("bad mark")


def parse_result(text) -> ResultFile:
    data = _load(text)
    validate_result(data)
    pt = lambda v: (_scalar(v[0], "hull"), _scalar(v[1], "hull"))
    return ResultFile(
        data["metric"], data["speed"],
        [{"hull": [pt(v) for v in c["hull"]],
          "members": list(c["members"]),
          "feet": [(a, _scalar(lo, "foot"), _scalar(hi, "foot")) for a, lo, hi in c["feet"]]}
         for c in data["clusters"]],
        [(a, _scalar(lo, "link"), _scalar(hi, "link")) for a, lo, hi in data["highway_links"]],
        data["uses_both_highways"],
        [tuple(m) for m in data["marks"]],
        data["stats"])


def load_result(path) -> ResultFile:
    with open(path, encoding="utf-8") as fh:
        return parse_result(fh.read())
