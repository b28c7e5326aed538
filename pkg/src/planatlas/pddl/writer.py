"""Pretty-printers for domain descriptions and problem files.

Round-tripping through :mod:`parser` preserves semantics; these are also how
the instance generators emit their PDDL.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .model import SEPARATOR, Atom, DomainDescription


def _typed_list(pairs: Iterable[tuple[str, str]]) -> str:
    return " ".join(f"{name} - {typ}" for name, typ in pairs)


def _atom(atom: Atom | str) -> str:
    if isinstance(atom, str):  # canonical fluent string, e.g. "at_rig_depot"
        return f"({atom.replace(SEPARATOR, ' ')})"
    if not atom.terms:
        return f"({atom.predicate})"
    return f"({atom.predicate} {' '.join(atom.terms)})"


def _condition(atoms: Iterable[Atom]) -> str:
    parts = [_atom(a) for a in atoms]
    if len(parts) == 1:
        return parts[0]
    return f"(and {' '.join(parts)})"


def write_domain(domain: DomainDescription) -> str:
    lines = [f"(define (domain {domain.name})"]
    reqs = domain.requirements or (":strips", ":typing")
    lines.append(f"  (:requirements {' '.join(reqs)})")
    if domain.types:
        lines.append(f"  (:types {_typed_list(sorted(domain.types.items()))})")
    if domain.constants:
        lines.append(f"  (:constants {_typed_list(domain.constants)})")
    if domain.predicates:
        lines.append("  (:predicates")
        for name in sorted(domain.predicates):
            params = domain.predicates[name]
            decl = f"({name} {_typed_list(params)})" if params else f"({name})"
            lines.append(f"    {decl}")
        lines.append("  )")
    for schema in domain.schemas:
        lines.append(f"  (:action {schema.name}")
        lines.append(f"    :parameters ({_typed_list(schema.parameters)})")
        lines.append(f"    :precondition {_condition(schema.preconditions)}")
        effects = [_atom(a) for a in schema.add_effects]
        effects.extend(f"(not {_atom(a)})" for a in schema.delete_effects)
        body = effects[0] if len(effects) == 1 else f"(and {' '.join(effects)})"
        lines.append(f"    :effect {body}")
        lines.append("  )")
    lines.append(")")
    return "\n".join(lines) + "\n"


def write_problem(
    name: str,
    domain_name: str,
    objects: Mapping[str, str] | Iterable[tuple[str, str]],
    init: Iterable[Atom | str],
    goal: Iterable[Atom | str],
) -> str:
    """Atoms may be given as Atom values or canonical fluent strings."""
    pairs = sorted(objects.items()) if isinstance(objects, Mapping) else list(objects)
    lines = [f"(define (problem {name})", f"  (:domain {domain_name})"]
    lines.append("  (:objects")
    for oname, otype in pairs:
        lines.append(f"    {oname} - {otype}")
    lines.append("  )")
    lines.append("  (:init")
    for atom in init:
        lines.append(f"    {_atom(atom)}")
    lines.append("  )")
    goal_atoms = list(goal)
    lines.append(f"  (:goal {_condition(goal_atoms) if goal_atoms else '(and)'})")
    lines.append(")")
    return "\n".join(lines) + "\n"
