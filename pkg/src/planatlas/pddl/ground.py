"""Schema grounding: the full type-consistent cross product, no pruning.

Unreachable groundings are kept on purpose — downstream consumers embed the
*entire* transition graph, disconnected parts included.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping

from ..errors import GroundingCapExceeded, ValidationError
from .model import (
    ActionSchema,
    DomainDescription,
    GroundedAction,
    GroundedDomain,
    ProblemInstance,
    SEPARATOR,
    canonical,
)
from .parser import parse_domain, read_problem

DEFAULT_GROUNDING_CAP = 200_000


def _object_table(
    domain: DomainDescription,
    objects: Mapping[str, str] | Iterable[tuple[str, str]],
) -> dict[str, str]:
    table: dict[str, str] = {}
    for name, typ in domain.constants:
        table[name] = typ
    pairs = objects.items() if isinstance(objects, Mapping) else objects
    for name, typ in pairs:
        if typ != "object" and typ not in domain.types:
            raise ValidationError(f"object {name}: unknown type {typ}")
        if name in table and table[name] != typ:
            raise ValidationError(
                f"object {name} declared twice with types {table[name]} and {typ}"
            )
        table[name] = typ
    for name, typ in table.items():
        if SEPARATOR in name:
            raise ValidationError(f"object name {name!r} contains {SEPARATOR!r}")
        if typ != "object" and typ not in domain.types:
            raise ValidationError(f"constant {name}: unknown type {typ}")
    return table


def _candidates_by_type(
    domain: DomainDescription, table: Mapping[str, str]
) -> dict[str, list[str]]:
    """For each type mentioned anywhere, the sorted objects compatible with it."""
    wanted: set[str] = {"object"}
    wanted.update(domain.types)
    for schema in domain.schemas:
        wanted.update(t for _, t in schema.parameters)
    for params in domain.predicates.values():
        wanted.update(t for _, t in params)
    out: dict[str, list[str]] = {}
    for typ in wanted:
        out[typ] = sorted(
            name for name, otype in table.items() if domain.is_subtype(otype, typ)
        )
    return out


def _ground_schema(
    schema: ActionSchema,
    candidates: Mapping[str, list[str]],
    table: Mapping[str, str],
) -> Iterable[tuple[tuple[str, ...], dict[str, str]]]:
    pools = []
    for var, typ in schema.parameters:
        pool = candidates.get(typ, [])
        if not pool:
            return
        pools.append(pool)
    for combo in itertools.product(*pools):
        binding = {var: obj for (var, _), obj in zip(schema.parameters, combo)}
        yield combo, binding


def ground(
    domain: DomainDescription,
    objects: Mapping[str, str] | Iterable[tuple[str, str]],
    extra_predicates: Iterable[str] = (),
    cap: int = DEFAULT_GROUNDING_CAP,
) -> GroundedDomain:
    """Ground every schema over every type-consistent binding.

    ``extra_predicates`` names predicates whose full instantiations join the
    fluent universe even if no grounded action touches them (predicates used
    only by a problem's init/goal).  Bindings whose add and delete effects
    would overlap are dropped (a no-op transition under STRIPS delete-then-add
    has no consistent reading here) and counted in ``skipped_conflicting``.
    """
    table = _object_table(domain, objects)
    candidates = _candidates_by_type(domain, table)

    seen_names: set[str] = set()
    for schema in domain.schemas:
        if schema.name in seen_names:
            raise ValidationError(f"duplicate action name {schema.name}")
        seen_names.add(schema.name)

    actions: list[GroundedAction] = []
    skipped = 0
    for schema in domain.schemas:
        for combo, binding in _ground_schema(schema, candidates, table):
            for atom in (*schema.preconditions, *schema.add_effects, *schema.delete_effects):
                for term in atom.terms:
                    if not term.startswith("?") and term not in table:
                        raise ValidationError(
                            f"action {schema.name}: unknown constant {term} in {atom}"
                        )
            pre = frozenset(a.substitute(binding) for a in schema.preconditions)
            add = frozenset(a.substitute(binding) for a in schema.add_effects)
            delete = frozenset(a.substitute(binding) for a in schema.delete_effects)
            if add & delete:
                skipped += 1
                continue
            actions.append(
                GroundedAction(
                    id=canonical(schema.name, combo),
                    name=schema.name,
                    args=combo,
                    preconditions=pre,
                    add_effects=add,
                    delete_effects=delete,
                )
            )
            if len(actions) > cap:
                raise GroundingCapExceeded(cap)

    fluents: set[str] = set()
    for action in actions:
        fluents.update(action.preconditions)
        fluents.update(action.add_effects)
        fluents.update(action.delete_effects)
    for pname in extra_predicates:
        if pname not in domain.predicates:
            raise ValidationError(f"unknown predicate {pname}")
        pools = [candidates.get(typ, []) for _, typ in domain.predicates[pname]]
        if any(not pool for pool in pools):
            continue
        for combo in itertools.product(*pools):
            fluents.add(canonical(pname, combo))

    changed: set[str] = set()
    for action in actions:
        changed.update(action.add_effects)
        changed.update(action.delete_effects)
    static = frozenset(fluents - changed)

    actions.sort(key=lambda a: a.id)
    return GroundedDomain(
        fluents=tuple(sorted(fluents)),
        actions=tuple(actions),
        static_fluents=static,
        objects=dict(sorted(table.items())),
        predicates=dict(domain.predicates),
        skipped_conflicting=skipped,
    )


def load(
    domain_text: str,
    problem_text: str,
    cap: int = DEFAULT_GROUNDING_CAP,
) -> tuple[DomainDescription, GroundedDomain, ProblemInstance]:
    """Convenience pipeline: parse both files, ground, canonicalize the problem.

    Predicates appearing in the problem's init or goal are fully instantiated
    into the fluent universe, so a problem may mention fluents no action
    touches (they will surface as static, possibly isolated, nodes).
    """
    from .parser import parse_problem

    domain = parse_domain(domain_text)
    ast = read_problem(problem_text)
    if ast.domain_name and ast.domain_name != domain.name:
        raise ValidationError(
            f"problem {ast.name} targets domain {ast.domain_name}, got {domain.name}"
        )
    extra = sorted({a.predicate for a in (*ast.init, *ast.goal)})
    grounded = ground(domain, ast.objects, extra_predicates=extra, cap=cap)
    problem = parse_problem(problem_text, grounded)
    return domain, grounded, problem
