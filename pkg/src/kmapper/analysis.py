"""Static and time-domain map analysis with crisis alarms.

Time-domain analysis rebuilds the map inside each sliding window and
watches two key structures between consecutive windows: the strong-link
edge set and the hub set. An alarm is raised when the strong-link sets'
Jaccard similarity drops below the threshold, or when the hub set turns
over completely.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .dataset import TimeSeriesTable, WindowSpec, select_window, window_starts
from .errors import SpecExceedsTable, VariableSetMismatch
from .kmap import KnowledgeMap, LinkStrength, build_map, map_doc
from .relation import RelationThresholds

DEFAULT_JACCARD_MIN = 0.5


@dataclass(frozen=True)
class MapFeatures:
    n_links: int
    n_strong: int
    n_weak: int
    density: float
    hub_set: frozenset[str]
    inactive_set: frozenset[str]


@dataclass(frozen=True)
class TimelineWindow:
    start: int
    size: int
    start_label: str
    kmap: KnowledgeMap
    features: MapFeatures


@dataclass(frozen=True)
class Alarm:
    window_index: int  # index of the window where the change surfaced
    reason: str


@dataclass(frozen=True)
class MapTimeline:
    windows: tuple[TimelineWindow, ...]
    alarms: tuple[Alarm, ...]


def features_of(kmap: KnowledgeMap) -> MapFeatures:
    n_strong = sum(1 for l in kmap.links if l.strength is LinkStrength.STRONG)
    n_weak = len(kmap.links) - n_strong
    v = len(kmap.nodes)
    possible = v * (v - 1) // 2
    return MapFeatures(
        n_links=len(kmap.links),
        n_strong=n_strong,
        n_weak=n_weak,
        density=len(kmap.links) / possible if possible else 0.0,
        hub_set=frozenset(kmap.hub_names()),
        inactive_set=frozenset(kmap.inactive_names()),
    )


def static_analysis(table: TimeSeriesTable,
                    th: RelationThresholds | None = None
                    ) -> tuple[KnowledgeMap, MapFeatures]:
    """One map over the full history."""
    kmap = build_map(table, th)
    return kmap, features_of(kmap)


def _jaccard(a: set, b: set) -> float:
    if not a and not b:
        return 1.0  # structure absent on both sides is not a change
    return len(a & b) / len(a | b)


def detect_alarm(prev: KnowledgeMap, curr: KnowledgeMap,
                 jaccard_min: float = DEFAULT_JACCARD_MIN) -> str | None:
    """Reason string when the map changed suddenly, else None."""
    if not (0.0 <= jaccard_min <= 1.0):
        raise ValueError("jaccard_min must lie in [0, 1]")
    prev_vars = {n.name for n in prev.nodes}
    curr_vars = {n.name for n in curr.nodes}
    if prev_vars != curr_vars:
        raise VariableSetMismatch(
            f"maps cover different variables: {sorted(prev_vars ^ curr_vars)}"
        )

    reasons = []
    sp, sc = prev.strong_pairs(), curr.strong_pairs()
    similarity = _jaccard(sp, sc)
    if similarity < jaccard_min:
        lost = sorted(sp - sc)
        gained = sorted(sc - sp)
        detail = []
        if lost:
            detail.append("lost " + ", ".join(f"{a}-{b}" for a, b in lost))
        if gained:
            detail.append("gained " + ", ".join(f"{a}-{b}" for a, b in gained))
        reasons.append(
            f"strong links changed (jaccard {similarity:.2f} < {jaccard_min:.2f}: "
            + "; ".join(detail) + ")"
        )

    hp, hc = prev.hub_names(), curr.hub_names()
    if (hp or hc) and not (hp & hc):
        reasons.append(
            "hub set replaced ("
            f"was {{{', '.join(sorted(hp)) or '-'}}}, "
            f"now {{{', '.join(sorted(hc)) or '-'}}})"
        )
    return "; ".join(reasons) if reasons else None


def time_domain_analysis(table: TimeSeriesTable, spec: WindowSpec,
                         th: RelationThresholds | None = None,
                         jaccard_min: float = DEFAULT_JACCARD_MIN) -> MapTimeline:
    """Per-window maps, features, and alarms between consecutive windows."""
    if spec.size > len(table):
        raise SpecExceedsTable(
            f"window size {spec.size} exceeds table length {len(table)}"
        )
    windows = []
    for start in window_starts(len(table), spec):
        piece = select_window(table, start, spec.size)
        # the window position lives here, not on the map, so a window map
        # serializes exactly like a static analysis of the same slice
        kmap = build_map(piece, th)
        windows.append(TimelineWindow(start, spec.size, piece.time_labels[0],
                                      kmap, features_of(kmap)))

    alarms = []
    for i in range(1, len(windows)):
        reason = detect_alarm(windows[i - 1].kmap, windows[i].kmap, jaccard_min)
        if reason is not None:
            alarms.append(Alarm(i, reason))
    return MapTimeline(tuple(windows), tuple(alarms))


# ----------------------------------------------------------------------
# reports

def _features_doc(f: MapFeatures) -> dict:
    return {
        "n_links": f.n_links,
        "n_strong": f.n_strong,
        "n_weak": f.n_weak,
        "density": float(f"{f.density:.12g}"),
        "hubs": sorted(f.hub_set),
        "inactive": sorted(f.inactive_set),
    }


def features_text(f: MapFeatures) -> str:
    lines = [
        f"links: {f.n_links} ({f.n_strong} strong, {f.n_weak} weak)",
        f"density: {f.density:.4f}",
        f"hubs: {', '.join(sorted(f.hub_set)) or '(none)'}",
        f"inactive: {', '.join(sorted(f.inactive_set)) or '(none)'}",
    ]
    return "\n".join(lines) + "\n"


def timeline_json(timeline: MapTimeline, include_maps: bool = False) -> str:
    doc = {
        "schema": "kmap-timeline-1",
        "windows": [
            {
                "index": i,
                "start": w.start,
                "size": w.size,
                "start_label": w.start_label,
                "features": _features_doc(w.features),
                **({"map": map_doc(w.kmap)} if include_maps else {}),
            }
            for i, w in enumerate(timeline.windows)
        ],
        "alarms": [
            {"window_index": a.window_index, "reason": a.reason}
            for a in timeline.alarms
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def timeline_text(timeline: MapTimeline) -> str:
    lines = []
    for i, w in enumerate(timeline.windows):
        f = w.features
        lines.append(
            f"window {i} (start {w.start_label}, rows {w.start}..{w.start + w.size - 1}): "
            f"{f.n_links} links ({f.n_strong} strong), "
            f"hubs {{{', '.join(sorted(f.hub_set)) or '-'}}}"
        )
    if timeline.alarms:
        for a in timeline.alarms:
            lines.append(f"ALARM at window {a.window_index}: {a.reason}")
    else:
        lines.append("no alarms")
    return "\n".join(lines) + "\n"
