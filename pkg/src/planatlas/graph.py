"""The bipartite fluent-action transition graph and its diagnostics.

An edge (a, v) exists iff fluent v appears in action a's preconditions, add
effects, or delete effects.  The graph is undirected and simple; node order is
deterministic: fluents sorted lexicographically, then action ids sorted.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownNodeError
from .pddl.model import GroundedAction

FLUENT = "fluent"
ACTION = "action"


@dataclass(frozen=True)
class TransitionGraph:
    """Immutable CSR-backed undirected bipartite graph."""

    node_ids: tuple[str, ...]
    kinds: tuple[str, ...]  # aligned with node_ids; FLUENT or ACTION
    fluent_count: int  # nodes [0, fluent_count) are fluents, the rest actions
    indptr: np.ndarray  # CSR row pointers, len = n + 1
    neighbors: np.ndarray  # CSR column indices, sorted within each row
    edge_count: int
    index: dict[str, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {nid: i for i, nid in enumerate(self.node_ids)})
        self.indptr.setflags(write=False)
        self.neighbors.setflags(write=False)

    def __len__(self) -> int:
        return len(self.node_ids)

    def node_index(self, node_id: str) -> int:
        try:
            return self.index[node_id]
        except KeyError:
            raise UnknownNodeError(f"unknown node {node_id!r}") from None

    def neighbors_of(self, i: int) -> np.ndarray:
        return self.neighbors[self.indptr[i] : self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def to_json(self) -> dict:
        """Export as {nodes: [{id, kind}], edges: [[i, j]]} with i < j."""
        edges = []
        for i in range(len(self.node_ids)):
            for j in self.neighbors_of(i):
                if i < j:
                    edges.append([i, int(j)])
        return {
            "schema_version": 1,
            "nodes": [
                {"id": nid, "kind": kind}
                for nid, kind in zip(self.node_ids, self.kinds)
            ],
            "edges": edges,
        }


def build_graph(
    actions: Iterable[GroundedAction], include_static: bool = False
) -> TransitionGraph:
    """Build the transition graph over the given grounded actions.

    Static fluents (appearing in no action's add or delete effects) are left
    out unless ``include_static`` is set; they would otherwise dominate layouts
    with permanently-true scaffolding like road connectivity.
    """
    actions = sorted(actions, key=lambda a: a.id)
    incident: set[str] = set()
    changed: set[str] = set()
    for a in actions:
        incident.update(a.preconditions, a.add_effects, a.delete_effects)
        changed.update(a.add_effects, a.delete_effects)
    if include_static:
        fluents = sorted(incident)
    else:
        fluents = sorted(incident & changed)
    fluent_pos = {f: i for i, f in enumerate(fluents)}

    node_ids = tuple(fluents) + tuple(a.id for a in actions)
    kinds = (FLUENT,) * len(fluents) + (ACTION,) * len(actions)
    n = len(node_ids)

    pairs: list[tuple[int, int]] = []
    for k, a in enumerate(actions):
        ai = len(fluents) + k
        for fluent in a.preconditions | a.add_effects | a.delete_effects:
            fi = fluent_pos.get(fluent)
            if fi is not None:
                pairs.append((fi, ai))
    edge_count = len(pairs)

    counts = np.zeros(n, dtype=np.int64)
    for fi, ai in pairs:
        counts[fi] += 1
        counts[ai] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    nbrs = np.zeros(edge_count * 2, dtype=np.int64)
    cursor = indptr[:-1].copy()
    for fi, ai in pairs:
        nbrs[cursor[fi]] = ai
        cursor[fi] += 1
        nbrs[cursor[ai]] = fi
        cursor[ai] += 1
    for i in range(n):
        nbrs[indptr[i] : indptr[i + 1]].sort()

    return TransitionGraph(
        node_ids=node_ids,
        kinds=kinds,
        fluent_count=len(fluents),
        indptr=indptr,
        neighbors=nbrs,
        edge_count=edge_count,
    )


def _bfs_from(indptr: np.ndarray, nbrs: np.ndarray, src: int, n: int) -> np.ndarray:
    """Level-synchronous BFS; returns hop distances, -1 for unreachable."""
    dist = np.full(n, -1, dtype=np.int64)
    dist[src] = 0
    frontier = np.array([src], dtype=np.int64)
    depth = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        offsets = np.zeros(len(counts), dtype=np.int64)
        np.cumsum(counts[:-1], out=offsets[1:])
        flat = np.repeat(starts - offsets, counts) + np.arange(total, dtype=np.int64)
        reached = nbrs[flat]
        fresh = np.unique(reached[dist[reached] < 0])
        depth += 1
        dist[fresh] = depth
        frontier = fresh
    return dist


def hopcount(g: TransitionGraph, src: str, dst: str) -> int | None:
    """Shortest-path hop count between two nodes; None if unreachable."""
    i, j = g.node_index(src), g.node_index(dst)
    if i == j:
        return 0
    dist = _bfs_from(g.indptr, g.neighbors, i, len(g))
    d = int(dist[j])
    return None if d < 0 else d


def components_of(g: TransitionGraph) -> list[np.ndarray]:
    """Connected components as index arrays, sorted descending by size.

    Ties broken by smallest contained node index, so the order is stable.
    """
    n = len(g)
    comp = np.full(n, -1, dtype=np.int64)
    comps: list[np.ndarray] = []
    for start in range(n):
        if comp[start] >= 0:
            continue
        dist = _bfs_from(g.indptr, g.neighbors, start, n)
        members = np.flatnonzero(dist >= 0)
        comp[members] = len(comps)
        comps.append(members)
    comps.sort(key=lambda m: (-len(m), int(m[0])))
    return comps


@dataclass(frozen=True)
class GraphReport:
    """Per-node centrality diagnostics plus component structure.

    Arrays are aligned with the graph's node order.  Closeness follows Eq.-2
    style reciprocal total hopcount, computed within each node's connected
    component; a singleton component's node gets closeness 0 and
    eccentricity 0.  The radius is that of the largest component.
    """

    node_ids: tuple[str, ...]
    closeness: np.ndarray
    eccentricity: np.ndarray
    average_closeness: float
    radius: int
    components: tuple[tuple[str, ...], ...]

    def closeness_of(self, node_id: str) -> float:
        return float(self.closeness[self.node_ids.index(node_id)])

    def eccentricity_of(self, node_id: str) -> int:
        return int(self.eccentricity[self.node_ids.index(node_id)])

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "node_count": len(self.node_ids),
            "average_closeness": self.average_closeness,
            "radius": self.radius,
            "component_sizes": [len(c) for c in self.components],
            "closeness": [float(x) for x in self.closeness],
            "eccentricity": [int(x) for x in self.eccentricity],
        }


def graph_report(g: TransitionGraph) -> GraphReport:
    """All-node closeness/eccentricity, radius of the largest component."""
    n = len(g)
    if n == 0:
        raise ValueError("graph_report requires a nonempty graph")
    closeness = np.zeros(n, dtype=np.float64)
    ecc = np.zeros(n, dtype=np.int64)
    for i in range(n):
        dist = _bfs_from(g.indptr, g.neighbors, i, n)
        reach = dist[dist > 0]
        if reach.size:
            closeness[i] = 1.0 / float(reach.sum())
            ecc[i] = int(reach.max())
    comps = components_of(g)
    largest = comps[0]
    radius = int(ecc[largest].min())
    components = tuple(
        tuple(g.node_ids[i] for i in sorted(members)) for members in comps
    )
    return GraphReport(
        node_ids=g.node_ids,
        closeness=closeness,
        eccentricity=ecc,
        average_closeness=float(closeness.mean()),
        radius=radius,
        components=components,
    )


@dataclass(frozen=True)
class ComponentSummary:
    size: int
    sample: tuple[str, ...]  # up to 10 representative labels

    def to_json(self) -> dict:
        return {"size": self.size, "sample": list(self.sample)}


def component_report(g: TransitionGraph) -> list[ComponentSummary]:
    """Connected components, largest first, with up to 10 sample labels each.

    A second component in a domain that should be connected is the classic
    sign of a modeling bug (a fluent nothing produces or consumes).
    """
    if len(g) == 0:
        return []
    return [
        ComponentSummary(
            size=len(members),
            sample=tuple(g.node_ids[i] for i in sorted(members)[:10]),
        )
        for members in components_of(g)
    ]
