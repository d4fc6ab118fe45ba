"""Knowledge map assembly and serialization.

The map is an undirected dependency graph over the table's variables:
one link per pair whose relation class is not NoCorrelation, Strong
links from the Strong* classes, Weak links from Weak* and Complex
classes. Hubs are the unusually-well-connected nodes, inactive nodes
have no links at all.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .dataset import Role, TimeSeriesTable
from .errors import TooFewPoints, TooFewVariables
from .relation import (
    PairRelation,
    RelationClass,
    RelationThresholds,
    classify_relation,
)

SCHEMA = "kmap-1"

# node fill colors for DOT output; hubs keep the disc look, everything
# else is a square (inactive squares are white)
HUB_COLOR = "#cc0000"
INTERNAL_COLOR = "#cc0000"
INPUT_COLOR = "#3366cc"
OUTPUT_COLOR = "#66aa33"
INACTIVE_COLOR = "#ffffff"


class NodeStatus(Enum):
    HUB = "Hub"
    ACTIVE = "Active"
    INACTIVE = "Inactive"


class LinkStrength(Enum):
    STRONG = "Strong"
    WEAK = "Weak"


class LinkSign(Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    COMPLEX = "Complex"


@dataclass(frozen=True)
class MapNode:
    name: str
    role: Role
    status: NodeStatus
    degree: int


@dataclass(frozen=True)
class MapLink:
    """Undirected link; endpoints are kept sorted so (a, b) is canonical."""

    a: str
    b: str
    strength: LinkStrength
    sign: LinkSign
    measure: PairRelation

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError(f"self-link on '{self.a}'")
        if self.a > self.b:
            raise ValueError(f"link endpoints not canonical: '{self.a}' > '{self.b}'")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a, self.b)


@dataclass(frozen=True)
class KnowledgeMap:
    nodes: tuple[MapNode, ...]
    links: tuple[MapLink, ...]
    thresholds: RelationThresholds
    source_window: tuple[int, int] | None = None  # (start, size); None = full table

    def node(self, name: str) -> MapNode:
        for node in self.nodes:
            if node.name == name:
                return node
        raise KeyError(f"no node '{name}'")

    def strong_pairs(self) -> set[tuple[str, str]]:
        return {l.pair for l in self.links if l.strength is LinkStrength.STRONG}

    def hub_names(self) -> set[str]:
        return {n.name for n in self.nodes if n.status is NodeStatus.HUB}

    def inactive_names(self) -> set[str]:
        return {n.name for n in self.nodes if n.status is NodeStatus.INACTIVE}


_STRENGTH_OF = {
    RelationClass.STRONG_POSITIVE: LinkStrength.STRONG,
    RelationClass.STRONG_NEGATIVE: LinkStrength.STRONG,
    RelationClass.WEAK_POSITIVE: LinkStrength.WEAK,
    RelationClass.WEAK_NEGATIVE: LinkStrength.WEAK,
    RelationClass.COMPLEX: LinkStrength.WEAK,
}

_SIGN_OF = {
    RelationClass.STRONG_POSITIVE: LinkSign.POSITIVE,
    RelationClass.WEAK_POSITIVE: LinkSign.POSITIVE,
    RelationClass.STRONG_NEGATIVE: LinkSign.NEGATIVE,
    RelationClass.WEAK_NEGATIVE: LinkSign.NEGATIVE,
    RelationClass.COMPLEX: LinkSign.COMPLEX,
}


def hub_threshold(degrees: list[int]) -> int | None:
    """Degree cutoff ``max(2, ceil(mean + std))`` over linked nodes;
    None when no node has a link. Population statistics keep the rule
    deterministic and parameter-free."""
    linked = [d for d in degrees if d > 0]
    if not linked:
        return None
    mean = sum(linked) / len(linked)
    var = sum((d - mean) ** 2 for d in linked) / len(linked)
    return max(2, math.ceil(mean + math.sqrt(var)))


def _hubs_from_degrees(degrees: dict[str, int]) -> set[str]:
    """Hub rule with fallback: nodes at or above the cutoff; if none
    qualify, the strict-maximum-degree set provided that maximum >= 2."""
    cutoff = hub_threshold(list(degrees.values()))
    if cutoff is None:
        return set()
    hubs = {name for name, d in degrees.items() if d >= cutoff}
    if not hubs:
        top = max(degrees.values())
        if top >= 2:
            hubs = {name for name, d in degrees.items() if d == top}
    return hubs


def identify_hubs(kmap: KnowledgeMap) -> set[str]:
    return _hubs_from_degrees({n.name: n.degree for n in kmap.nodes})


def build_map(table: TimeSeriesTable, th: RelationThresholds | None = None,
              source_window: tuple[int, int] | None = None) -> KnowledgeMap:
    """Classify every unordered pair and assemble the map.

    Pairs left with fewer than ``min_points`` complete rows after
    pairwise deletion carry no usable evidence and produce no link.
    """
    if th is None:
        th = RelationThresholds()
    if table.n_variables < 2:
        raise TooFewVariables(f"need >= 2 variables, got {table.n_variables}")
    if len(table) < th.min_points:
        raise TooFewPoints(f"need >= {th.min_points} time points, got {len(table)}")

    links = []
    degrees = {name: 0 for name in table.variables}
    for i, name_a in enumerate(table.variables):
        for name_b in table.variables[i + 1:]:
            a, b = sorted((name_a, name_b))
            try:
                rel = classify_relation(table.column(a), table.column(b), th,
                                        var_a=a, var_b=b)
            except TooFewPoints:
                continue
            if rel.rel_class is RelationClass.NO_CORRELATION:
                continue
            links.append(MapLink(a, b, _STRENGTH_OF[rel.rel_class],
                                 _SIGN_OF[rel.rel_class], rel))
            degrees[a] += 1
            degrees[b] += 1

    hubs = _hubs_from_degrees(degrees)
    nodes = []
    for name in table.variables:
        if name in hubs:
            status = NodeStatus.HUB
        elif degrees[name] == 0:
            status = NodeStatus.INACTIVE
        else:
            status = NodeStatus.ACTIVE
        nodes.append(MapNode(name, table.role(name), status, degrees[name]))

    links.sort(key=lambda l: l.pair)
    return KnowledgeMap(tuple(nodes), tuple(links), th, source_window)


def dsm_order(kmap: KnowledgeMap) -> list[str]:
    """Input nodes first, then internal, then output; alphabetical
    within each role."""
    rank = {Role.INPUT: 0, Role.INTERNAL: 1, Role.OUTPUT: 2}
    return [n.name for n in sorted(kmap.nodes, key=lambda n: (rank[n.role], n.name))]


def to_dsm(kmap: KnowledgeMap) -> list[list[str]]:
    """Square matrix with node names on the diagonal and link strength
    marks ("S"/"W"/"") off it."""
    order = dsm_order(kmap)
    index = {name: i for i, name in enumerate(order)}
    mark = {LinkStrength.STRONG: "S", LinkStrength.WEAK: "W"}
    grid = [["" for _ in order] for _ in order]
    for i, name in enumerate(order):
        grid[i][i] = name
    for link in kmap.links:
        i, j = index[link.a], index[link.b]
        grid[i][j] = grid[j][i] = mark[link.strength]
    return grid


def dsm_csv(kmap: KnowledgeMap) -> str:
    order = dsm_order(kmap)
    lines = ["," + ",".join(order)]
    for name, row in zip(order, to_dsm(kmap)):
        lines.append(name + "," + ",".join(row))
    return "\n".join(lines) + "\n"


def _node_attrs(node: MapNode) -> str:
    if node.status is NodeStatus.HUB:
        shape, fill = "circle", HUB_COLOR
    elif node.status is NodeStatus.INACTIVE:
        shape, fill = "square", INACTIVE_COLOR
    elif node.role is Role.INPUT:
        shape, fill = "square", INPUT_COLOR
    elif node.role is Role.OUTPUT:
        shape, fill = "square", OUTPUT_COLOR
    else:
        shape, fill = "square", INTERNAL_COLOR
    return f'shape={shape}, style=filled, fillcolor="{fill}"'


def export_dot(kmap: KnowledgeMap) -> str:
    """Undirected DOT rendering: strong links solid black, weak links
    gray (dashed when the sign is Complex). Node and edge order is
    canonical so output is byte-stable."""
    lines = ["graph kmap {", "  node [fontname=Helvetica];"]
    for node in sorted(kmap.nodes, key=lambda n: n.name):
        lines.append(f'  "{node.name}" [{_node_attrs(node)}];')
    for link in sorted(kmap.links, key=lambda l: l.pair):
        if link.strength is LinkStrength.STRONG:
            attrs = 'color=black, penwidth=2.0'
        elif link.sign is LinkSign.COMPLEX:
            attrs = 'color=gray, style=dashed'
        else:
            attrs = 'color=gray'
        lines.append(f'  "{link.a}" -- "{link.b}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _round12(x: float) -> float:
    """Cap at 12 significant digits so exported text is stable and
    round-trips exactly."""
    return float(f"{x:.12g}")


def _measure_doc(m: PairRelation) -> dict:
    return {
        "var_a": m.var_a,
        "var_b": m.var_b,
        "n_used": m.n_used,
        "pearson_r": _round12(m.pearson_r),
        "spearman_rho": _round12(m.spearman_rho),
        "nmi": _round12(m.nmi),
        "bins": m.bins,
        "class": m.rel_class.value,
    }


def map_doc(kmap: KnowledgeMap) -> dict:
    """Plain-dict form of the map (schema "kmap-1")."""
    th = kmap.thresholds
    return {
        "schema": SCHEMA,
        "source_window": list(kmap.source_window) if kmap.source_window else None,
        "thresholds": {
            "t_strong": _round12(th.t_strong),
            "t_weak": _round12(th.t_weak),
            "t_complex_nmi": _round12(th.t_complex_nmi),
            "min_points": th.min_points,
        },
        "nodes": [
            {
                "name": n.name,
                "role": n.role.value,
                "status": n.status.value,
                "degree": n.degree,
            }
            for n in kmap.nodes
        ],
        "links": [
            {
                "a": l.a,
                "b": l.b,
                "strength": l.strength.value,
                "sign": l.sign.value,
                "measure": _measure_doc(l.measure),
            }
            for l in kmap.links
        ],
    }


def export_json(kmap: KnowledgeMap) -> str:
    return json.dumps(map_doc(kmap), indent=2) + "\n"


def load_json(text: str) -> KnowledgeMap:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"expected schema '{SCHEMA}', got {doc.get('schema')!r}")
    th = RelationThresholds(**doc["thresholds"])
    nodes = tuple(
        MapNode(n["name"], Role(n["role"]), NodeStatus(n["status"]), n["degree"])
        for n in doc["nodes"]
    )
    links = tuple(
        MapLink(
            l["a"],
            l["b"],
            LinkStrength(l["strength"]),
            LinkSign(l["sign"]),
            PairRelation(
                l["measure"]["var_a"],
                l["measure"]["var_b"],
                l["measure"]["n_used"],
                l["measure"]["pearson_r"],
                l["measure"]["spearman_rho"],
                l["measure"]["nmi"],
                l["measure"]["bins"],
                RelationClass(l["measure"]["class"]),
            ),
        )
        for l in doc["links"]
    )
    window = doc.get("source_window")
    return KnowledgeMap(nodes, links, th,
                        tuple(window) if window is not None else None)
