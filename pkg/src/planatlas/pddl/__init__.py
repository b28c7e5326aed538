"""STRIPS-subset PDDL: parsing, grounding, canonical fluent strings."""

from .ground import DEFAULT_GROUNDING_CAP, ground, load
from .model import (
    ActionSchema,
    Atom,
    DomainDescription,
    GroundedAction,
    GroundedDomain,
    ProblemInstance,
    canonical,
)
from .parser import ProblemAst, parse_domain, parse_problem, read_problem
from .writer import write_domain, write_problem

__all__ = [
    "DEFAULT_GROUNDING_CAP",
    "ActionSchema",
    "Atom",
    "DomainDescription",
    "GroundedAction",
    "GroundedDomain",
    "ProblemAst",
    "ProblemInstance",
    "canonical",
    "ground",
    "load",
    "parse_domain",
    "parse_problem",
    "read_problem",
    "write_domain",
    "write_problem",
]
