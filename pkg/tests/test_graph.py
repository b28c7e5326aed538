"""Transition-graph construction and diagnostics against naive oracles."""

from __future__ import annotations

import numpy as np
import pytest

from planatlas.errors import UnknownNodeError
from planatlas.graph import (
    ACTION,
    FLUENT,
    TransitionGraph,
    build_graph,
    component_report,
    graph_report,
    hopcount,
)
from planatlas.pddl.model import GroundedAction

from conftest import graph_to_index_edges, random_graph
from oracles import (
    floyd_warshall,
    metrics_from_distances,
    radius_of_largest,
    union_find_components,
)


def act(aid: str, pre=(), add=(), dele=()) -> GroundedAction:
    return GroundedAction(
        id=aid,
        name=aid,
        args=(),
        preconditions=frozenset(pre),
        add_effects=frozenset(add),
        delete_effects=frozenset(dele),
    )


def star4() -> TransitionGraph:
    """One action touching four fluents: a 5-node star centered on the action."""
    return build_graph(
        [act("hub", pre=["f1", "f2"], add=["f3"], dele=["f1", "f2", "f4"])]
    )


def path5() -> TransitionGraph:
    """f1 - a1 - f2 - a2 - f3: a path with 4 edges."""
    return build_graph(
        [act("a1", pre=["f1"], add=["f2"], dele=["f1"]), act("a2", pre=["f2"], add=["f3"])]
    )


def test_node_order_fluents_then_actions():
    g = path5()
    assert g.node_ids == ("f1", "f2", "f3", "a1", "a2")
    assert g.kinds == (FLUENT, FLUENT, FLUENT, ACTION, ACTION)
    assert g.fluent_count == 3
    assert len(g) == 5
    assert g.edge_count == 4


def test_edges_deduplicated_across_roles():
    # f both precondition and delete effect; g added: 3 nodes, 2 edges.
    g = build_graph([act("a", pre=["f"], add=["g"], dele=["f"])])
    assert len(g) == 3
    assert g.edge_count == 2
    assert g.degree(g.node_index("a")) == 2


def test_bipartite_and_csr_integrity():
    for seed in range(20):
        g = random_graph(seed)
        assert g.indptr[0] == 0 and g.indptr[-1] == 2 * g.edge_count
        for i in range(len(g)):
            nbrs = g.neighbors_of(i)
            assert list(nbrs) == sorted(set(nbrs.tolist()))
            for j in nbrs:
                assert g.kinds[i] != g.kinds[int(j)]  # strictly bipartite
                assert i in g.neighbors_of(int(j)).tolist()  # symmetric


def test_static_fluents_excluded_by_default():
    actions = [act("a", pre=["stat", "dyn"], add=["out"], dele=["dyn"])]
    g = build_graph(actions)
    assert "stat" not in g.node_ids
    g_all = build_graph(actions, include_static=True)
    assert "stat" in g_all.node_ids
    assert g_all.edge_count == g.edge_count + 1


def test_action_with_no_dynamic_fluents_still_present():
    # All-static preconditions, no effects at all cannot happen (effects change
    # fluents), but an action whose only fluents are static drops its edges.
    actions = [
        act("writer", pre=["k"], add=["d"]),
        act("reader", pre=["s1", "s2"], add=["d"]),
    ]
    g = build_graph(actions)
    assert "s1" not in g.node_ids and "reader" in g.node_ids
    assert g.degree(g.node_index("reader")) == 1  # only the edge to d survives


def test_unknown_node():
    g = star4()
    with pytest.raises(UnknownNodeError):
        g.node_index("nope")


def test_to_json_shape():
    g = path5()
    data = g.to_json()
    assert [n["id"] for n in data["nodes"]] == list(g.node_ids)
    assert all(n["kind"] in (FLUENT, ACTION) for n in data["nodes"])
    assert all(i < j for i, j in data["edges"])
    assert len(data["edges"]) == g.edge_count


def test_star_metrics():
    g = star4()
    rep = graph_report(g)
    # center: 4 nodes at hop 1 -> closeness 1/4; leaves: 1 + 3*2 = 7 -> 1/7
    assert rep.closeness_of("hub") == pytest.approx(0.25)
    for leaf in ("f1", "f2", "f3", "f4"):
        assert rep.closeness_of(leaf) == pytest.approx(1 / 7)
    assert rep.eccentricity_of("hub") == 1
    assert rep.eccentricity_of("f1") == 2
    assert rep.radius == 1
    assert rep.average_closeness == pytest.approx((0.25 + 4 / 7) / 5)
    assert len(rep.components) == 1


def test_path_metrics():
    g = path5()
    rep = graph_report(g)
    assert rep.eccentricity_of("f1") == 4
    assert rep.eccentricity_of("f2") == 2
    assert rep.radius == 2
    assert rep.closeness_of("f2") == pytest.approx(1 / (1 + 1 + 2 + 2))


def test_single_edge_closeness():
    g = build_graph([act("a", add=["f"])])
    rep = graph_report(g)
    assert rep.closeness_of("a") == pytest.approx(1.0)
    assert rep.closeness_of("f") == pytest.approx(1.0)
    assert rep.average_closeness == pytest.approx(1.0)
    assert rep.radius == 1


def test_hopcount_disconnected_is_none():
    g = build_graph(
        [
            act("a1", pre=["f1"], add=["f2"], dele=["f1"]),
            act("a2", pre=["f3"], add=["f4"], dele=["f3"]),
        ]
    )
    assert hopcount(g, "f1", "f3") is None
    assert hopcount(g, "f1", "a1") == 1
    assert hopcount(g, "f1", "f2") == 2
    assert hopcount(g, "f1", "f1") == 0


def test_two_components_and_radius_of_largest():
    g = build_graph(
        [act("a", pre=["f"], add=["g"], dele=["f"]), act("b", add=["h"])]
    )
    rep = graph_report(g)
    assert len(rep.components) == 2
    assert [len(c) for c in rep.components] == [3, 2]
    # radius comes from the largest component (the f-a-g triple)
    assert rep.radius == 1
    assert rep.closeness_of("b") == pytest.approx(1.0)


def test_components_ordering_and_report():
    g = build_graph(
        [
            act("a", add=["f1"]),                      # size 2
            act("b", pre=["f2"], add=["f3"], dele=["f2"]),  # size 3
            act("c", add=["f4"]),                      # size 2
        ]
    )
    comps = component_report(g)
    assert [c.size for c in comps] == [3, 2, 2]
    # ties broken by smallest node index; samples hold node ids
    assert all(isinstance(c.sample[0], str) for c in comps)
    first_indices = [g.node_index(c.sample[0]) for c in comps[1:]]
    assert first_indices == sorted(first_indices)


@pytest.mark.parametrize("seed", range(25))
def test_metrics_match_oracle(seed):
    g = random_graph(seed)
    n = len(g)
    edges = graph_to_index_edges(g)
    dist = floyd_warshall(n, edges)
    close, ecc = metrics_from_distances(dist)
    comps = union_find_components(n, edges)
    rep = graph_report(g)
    assert np.allclose(rep.closeness, close)
    assert np.array_equal(rep.eccentricity, np.array(ecc))
    assert rep.radius == radius_of_largest(dist, comps)
    got = [[g.node_index(nid) for nid in c] for c in rep.components]
    assert got == comps
    assert rep.average_closeness == pytest.approx(float(np.mean(close)))


def test_report_json():
    rep = graph_report(path5())
    data = rep.to_json()
    assert data["radius"] == 2
    assert data["node_count"] == 5
    assert data["average_closeness"] == pytest.approx(rep.average_closeness)
    assert data["component_sizes"] == [5]
    assert len(data["closeness"]) == len(data["eccentricity"]) == 5
