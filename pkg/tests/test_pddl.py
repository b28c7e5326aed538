"""Parser, grounder, and writer behavior on hand-written PDDL text."""

from __future__ import annotations

import pytest

from planatlas.errors import (
    GroundingCapExceeded,
    PddlSyntaxError,
    UnsupportedFeatureError,
    UnsupportedRequirementError,
    ValidationError,
)
from planatlas.pddl import load, parse_domain, read_problem, write_domain, write_problem
from planatlas.pddl.ground import ground
from planatlas.pddl.model import canonical, check_name

from conftest import MICRO_DOMAIN, MICRO_PROBLEM

TWO_CELL = """
(define (domain twocell)
  (:requirements :strips :typing)
  (:types cell robot - object)
  (:predicates (at ?r - robot ?c - cell) (adj ?a - cell ?b - cell))
  (:action step
    :parameters (?r - robot ?a - cell ?b - cell)
    :precondition (and (at ?r ?a) (adj ?a ?b))
    :effect (and (at ?r ?b) (not (at ?r ?a)))))
"""


def test_canonical_and_check_name():
    assert canonical("at", ("rig", "depot")) == "at_rig_depot"
    assert canonical("handempty", ()) == "handempty"
    with pytest.raises(ValidationError):
        check_name("has_underscore", "predicate")


def test_parse_domain_micro():
    dom = parse_domain(MICRO_DOMAIN)
    assert dom.name == "microhaul"
    assert set(dom.predicates) == {"at", "in", "free", "road"}
    assert dom.predicates["at"] == (("?t", "thing"), ("?p", "place"))
    assert [s.name for s in dom.schemas] == ["move", "pick", "drop"]
    # typing: truck and crate are things; everything descends from object
    assert dom.is_subtype("truck", "thing")
    assert dom.is_subtype("crate", "thing")
    assert dom.is_subtype("place", "object")
    assert not dom.is_subtype("place", "thing")


def test_typed_list_section_grouping():
    dom = parse_domain(
        """
        (define (domain t) (:requirements :strips :typing)
          (:types a b - base c - other base other)
          (:predicates (p ?x - a ?y - c)))
        """
    )
    assert dom.types["a"] == "base"
    assert dom.types["b"] == "base"
    assert dom.types["c"] == "other"
    assert dom.types["base"] == "object"
    assert dom.types["other"] == "object"


def test_untyped_parameter_defaults_to_object():
    dom = parse_domain(
        """
        (define (domain u) (:requirements :strips)
          (:predicates (p ?x))
          (:action a :parameters (?x) :precondition (p ?x) :effect (not (p ?x))))
        """
    )
    assert dom.predicates["p"] == (("?x", "object"),)
    assert dom.schemas[0].parameters == (("?x", "object"),)


@pytest.mark.parametrize(
    "requirement", [":adl", ":negative-preconditions", ":fluents", ":durative-actions"]
)
def test_unsupported_requirements(requirement):
    text = f"(define (domain x) (:requirements :strips {requirement}))"
    with pytest.raises(UnsupportedRequirementError) as err:
        parse_domain(text)
    assert requirement in str(err.value)


@pytest.mark.parametrize(
    "body, feature",
    [
        ("(not (p ?x))", "not"),
        ("(or (p ?x) (p ?x))", "or"),
        ("(forall (?y) (p ?y))", "forall"),
        ("(exists (?y) (p ?y))", "exists"),
        ("(imply (p ?x) (p ?x))", "imply"),
        ("(= ?x ?x)", "="),
    ],
)
def test_unsupported_condition_heads(body, feature):
    text = f"""
    (define (domain x) (:requirements :strips)
      (:predicates (p ?x))
      (:action a :parameters (?x) :precondition {body} :effect (p ?x)))
    """
    with pytest.raises((UnsupportedFeatureError, PddlSyntaxError)) as err:
        parse_domain(text)
    assert feature in str(err.value)


def test_conditional_effect_rejected():
    text = """
    (define (domain x) (:requirements :strips)
      (:predicates (p ?x) (q ?x))
      (:action a :parameters (?x) :precondition (p ?x)
        :effect (when (p ?x) (q ?x))))
    """
    with pytest.raises(UnsupportedFeatureError):
        parse_domain(text)


def test_durative_action_rejected():
    text = """
    (define (domain x) (:requirements :strips)
      (:predicates (p))
      (:durative-action a :parameters () :duration (= ?duration 1)))
    """
    with pytest.raises(UnsupportedFeatureError):
        parse_domain(text)


def test_functions_section_rejected():
    text = """
    (define (domain x) (:requirements :strips)
      (:functions (total-cost))
      (:predicates (p)))
    """
    with pytest.raises(UnsupportedRequirementError):
        parse_domain(text)


def test_syntax_error_carries_position():
    with pytest.raises(PddlSyntaxError) as err:
        parse_domain("(define (domain x)\n  (:predicates (p))")
    assert err.value.line >= 1 and err.value.column >= 1
    payload = err.value.payload()
    assert payload["type"] == "syntax-error"
    assert {"line", "column"} <= payload.keys()


def test_unknown_type_and_predicate_and_arity():
    with pytest.raises(ValidationError):
        parse_domain(
            """(define (domain x) (:requirements :strips :typing)
               (:predicates (p ?x - ghost)))"""
        )
    with pytest.raises(ValidationError):
        parse_domain(
            """(define (domain x) (:requirements :strips)
               (:predicates (p ?x))
               (:action a :parameters (?x) :precondition (q ?x) :effect (p ?x)))"""
        )
    with pytest.raises(ValidationError):
        parse_domain(
            """(define (domain x) (:requirements :strips)
               (:predicates (p ?x))
               (:action a :parameters (?x) :precondition (p ?x ?x) :effect (p ?x)))"""
        )


def test_underscore_names_rejected():
    with pytest.raises(ValidationError):
        parse_domain(
            """(define (domain x) (:requirements :strips)
               (:predicates (bad_name ?x)))"""
        )


def test_ground_micro_counts(micro):
    _, grounded, problem = micro
    # move: 1 truck x 2 places x 2 places, reflexive pairs conflict (at add==del)
    moves = [a for a in grounded.actions if a.name == "move"]
    assert {a.id for a in moves} == {"move_rig_depot_port", "move_rig_port_depot"}
    assert grounded.skipped_conflicting == 2
    picks = [a for a in grounded.actions if a.name == "pick"]
    assert len(picks) == 2  # 1 crate x 1 truck x 2 places
    a = grounded.actions_by_id["pick_box_rig_depot"]
    assert a.preconditions == {"at_box_depot", "at_rig_depot", "free_rig"}
    assert a.add_effects == {"in_box_rig"}
    assert a.delete_effects == {"at_box_depot", "free_rig"}
    assert a.ipc() == "(pick box rig depot)"
    # road fluents appear only in preconditions -> static
    assert {"road_depot_port", "road_port_depot"} <= grounded.static_fluents
    assert problem.initial_state == {
        "at_rig_depot", "at_box_depot", "free_rig", "road_depot_port", "road_port_depot",
    }
    assert problem.goal == {"at_box_port"}


def test_grounding_is_sorted_and_typed(micro):
    _, grounded, _ = micro
    ids = [a.id for a in grounded.actions]
    assert ids == sorted(ids)
    assert list(grounded.fluents) == sorted(grounded.fluents)
    # no binding ever puts a crate where a truck belongs
    assert not any("move_box" in i or "pick_rig_box" in i for i in ids)


def test_init_only_predicate_joins_fluent_universe():
    problem = """
    (define (problem t-1) (:domain twocell)
      (:objects c1 c2 - cell r - robot)
      (:init (at r c1) (adj c1 c2) (adj c2 c1))
      (:goal (at r c2)))
    """
    _, grounded, prob = load(TWO_CELL, problem)
    # adj is never added/deleted: grounded only through init/goal instantiation
    assert "adj_c1_c1" in grounded.fluent_set  # full instantiation, not just init
    assert "adj_c1_c2" in grounded.static_fluents
    assert prob.initial_state == {"at_r_c1", "adj_c1_c2", "adj_c2_c1"}


def test_problem_validation_errors():
    bad_goal = """
    (define (problem t-2) (:domain twocell)
      (:objects c1 c2 - cell r - robot)
      (:init (at r c1)) (:goal (at r c9)))
    """
    with pytest.raises(ValidationError):
        load(TWO_CELL, bad_goal)
    bad_pred = """
    (define (problem t-3) (:domain twocell)
      (:objects c1 - cell r - robot)
      (:init (flying r)) (:goal (at r c1)))
    """
    with pytest.raises(ValidationError):
        load(TWO_CELL, bad_pred)
    wrong_domain = """
    (define (problem t-4) (:domain elsewhere)
      (:objects c1 - cell r - robot)
      (:init (at r c1)) (:goal (at r c1)))
    """
    with pytest.raises(ValidationError):
        load(TWO_CELL, wrong_domain)


def test_empty_goal_is_legal():
    ast = read_problem(
        """(define (problem t-5) (:domain twocell)
           (:objects c1 - cell r - robot)
           (:init (at r c1)) (:goal (and)))"""
    )
    assert ast.goal == ()


def test_metric_rejected():
    with pytest.raises(UnsupportedFeatureError):
        read_problem(
            """(define (problem t-6) (:domain twocell)
               (:objects c1 - cell) (:init) (:goal (and))
               (:metric minimize (total-cost)))"""
        )


def test_variable_in_problem_rejected():
    with pytest.raises(ValidationError):
        read_problem(
            """(define (problem t-7) (:domain twocell)
               (:objects c1 - cell r - robot)
               (:init (at ?r c1)) (:goal (and)))"""
        )


def test_grounding_cap():
    problem = """
    (define (problem t-8) (:domain twocell)
      (:objects c1 c2 c3 c4 c5 c6 - cell r1 r2 r3 - robot)
      (:init (at r1 c1)) (:goal (at r1 c2)))
    """
    with pytest.raises(GroundingCapExceeded):
        load(TWO_CELL, problem, cap=10)


def test_duplicate_object_conflicting_type():
    dom = parse_domain(TWO_CELL)
    with pytest.raises(ValidationError):
        ground(dom, [("x", "cell"), ("x", "robot")])


def test_unknown_object_type():
    dom = parse_domain(TWO_CELL)
    with pytest.raises(ValidationError):
        ground(dom, {"x": "spaceship"})


def test_writer_round_trip(micro):
    dom_ast, grounded, problem = micro
    text_d = write_domain(dom_ast)
    text_p = write_problem(
        problem.name,
        dom_ast.name,
        grounded.objects,
        sorted(problem.initial_state),
        sorted(problem.goal),
    )
    dom2, grounded2, problem2 = load(text_d, text_p)
    assert dom2.name == dom_ast.name
    assert [a.id for a in grounded2.actions] == [a.id for a in grounded.actions]
    assert grounded2.fluents == grounded.fluents
    assert problem2.initial_state == problem.initial_state
    assert problem2.goal == problem.goal


def test_write_problem_empty_goal_round_trips():
    text = write_problem("p", "twocell", {"c1": "cell", "r": "robot"}, ["at_r_c1"], [])
    ast = read_problem(text)
    assert ast.goal == ()
    assert [a.predicate for a in ast.init] == ["at"]


def test_grounded_domain_json(micro):
    _, grounded, _ = micro
    data = grounded.to_json()
    assert data["schema_version"] == 1
    assert data["skipped_conflicting"] == 2
    assert sorted(data["fluents"]) == data["fluents"]
    ids = [a["id"] for a in data["actions"]]
    assert ids == sorted(ids)
    assert set(data["objects"]) == {"depot", "port", "rig", "box"}


def test_comments_and_case_folding():
    dom = parse_domain(
        """; header comment
        (define (domain CaseTest) ; inline
          (:requirements :STRIPS)
          (:predicates (P ?X))
          (:action Go :parameters (?X) :precondition (P ?X) :effect (not (P ?X))))
        """
    )
    assert dom.name == "casetest"
    assert "p" in dom.predicates
    assert dom.schemas[0].name == "go"
