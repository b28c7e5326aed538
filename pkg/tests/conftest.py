"""Shared fixtures: a hand-written micro domain, random graphs, corpus instances."""

from __future__ import annotations

import random
import sys

import pytest

from planatlas.generators import generate_barman, generate_logistics
from planatlas.graph import build_graph
from planatlas.pddl import load
from planatlas.pddl.model import GroundedAction

# A small hand-written pair (not generator output) so the parser is exercised
# on independently authored text: one truck, two places, one crate.
MICRO_DOMAIN = """
(define (domain microhaul)
  (:requirements :strips :typing)
  (:types place - object
          truck crate - thing
          thing - object)
  (:predicates (at ?t - thing ?p - place)
               (in ?c - crate ?t - truck)
               (free ?t - truck)
               (road ?a - place ?b - place))
  (:action move
    :parameters (?t - truck ?a - place ?b - place)
    :precondition (and (at ?t ?a) (road ?a ?b))
    :effect (and (at ?t ?b) (not (at ?t ?a))))
  (:action pick
    :parameters (?c - crate ?t - truck ?p - place)
    :precondition (and (at ?c ?p) (at ?t ?p) (free ?t))
    :effect (and (in ?c ?t) (not (at ?c ?p)) (not (free ?t))))
  (:action drop
    :parameters (?c - crate ?t - truck ?p - place)
    :precondition (and (in ?c ?t) (at ?t ?p))
    :effect (and (at ?c ?p) (free ?t) (not (in ?c ?t))))
)
"""

MICRO_PROBLEM = """
(define (problem microhaul-1)
  (:domain microhaul)
  (:objects depot port - place rig - truck box - crate)
  (:init (at rig depot) (at box depot) (free rig)
         (road depot port) (road port depot))
  (:goal (and (at box port)))
)
"""


@pytest.fixture(scope="session")
def micro():
    """(domain_ast, grounded, problem) for the hand-written micro pair."""
    return load(MICRO_DOMAIN, MICRO_PROBLEM)


def make_random_actions(
    rng: random.Random, n_fluents: int, n_actions: int
) -> list[GroundedAction]:
    """Random grounded actions over a synthetic fluent universe."""
    fluents = [f"f{i}" for i in range(n_fluents)]
    actions = []
    for k in range(n_actions):
        pre = rng.sample(fluents, rng.randint(1, min(3, n_fluents)))
        add = rng.sample(fluents, rng.randint(1, min(2, n_fluents)))
        dele = [f for f in rng.sample(fluents, rng.randint(0, min(2, n_fluents)))
                if f not in add]
        actions.append(
            GroundedAction(
                id=f"act{k}",
                name=f"act{k}",
                args=(),
                preconditions=frozenset(pre),
                add_effects=frozenset(add),
                delete_effects=frozenset(dele),
            )
        )
    return actions


def graph_to_index_edges(g) -> list[tuple[int, int]]:
    """Undirected edge list (i < j) straight out of the CSR arrays."""
    edges = []
    for i in range(len(g)):
        for j in g.neighbors_of(i):
            if i < int(j):
                edges.append((i, int(j)))
    return edges


def random_graph(seed: int, max_nodes: int = 50):
    """A random bipartite transition graph with at most ``max_nodes`` nodes."""
    rng = random.Random(seed)
    while True:
        n_fluents = rng.randint(2, 12)
        n_actions = rng.randint(1, 14)
        g = build_graph(
            make_random_actions(rng, n_fluents, n_actions),
            include_static=rng.random() < 0.5,
        )
        if 0 < len(g) <= max_nodes:
            return g


@pytest.fixture(scope="session")
def logistics_small():
    inst = generate_logistics(cities=3, locations_per_city=1, packages=2, seed=0)
    return load(inst.domain_text, inst.problem_text)


@pytest.fixture(scope="session")
def barman_small():
    inst = generate_barman(cocktails=2, seed=0)
    return load(inst.domain_text, inst.problem_text)


def load_instance(inst):
    return load(inst.domain_text, inst.problem_text)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines after the run.

    The acceptance tests print one ``[criterion N] ...: PASS/FAIL`` line each;
    with capture on those prints are swallowed for passing tests, so the lines
    are replayed here through the terminal reporter.
    """
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", None) if mod else None
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
