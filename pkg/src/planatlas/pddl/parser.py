"""PDDL parsing, restricted to the :strips + :typing subset.

Anything outside the subset (negative preconditions, equality, conditional
effects, numeric fluents, ...) is rejected loudly with an error naming the
offending requirement or feature.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import (
    PddlSyntaxError,
    UnsupportedFeatureError,
    UnsupportedRequirementError,
    ValidationError,
)
from .model import (
    ActionSchema,
    Atom,
    DomainDescription,
    GroundedDomain,
    ProblemInstance,
    check_name,
)
from .sexpr import SExpr, Symbol, read

SUPPORTED_REQUIREMENTS = {":strips", ":typing"}

# Connectives that signal PDDL fragments we deliberately do not support.
_UNSUPPORTED_HEADS = {
    "not": "negative condition",
    "=": "equality constraint",
    "or": "disjunctive condition",
    "imply": "implication",
    "when": "conditional effect",
    "forall": "quantified formula",
    "exists": "quantified formula",
    "increase": "numeric fluent",
    "decrease": "numeric fluent",
    "assign": "numeric fluent",
    "scale-up": "numeric fluent",
    "scale-down": "numeric fluent",
}


def _err(node, message: str) -> PddlSyntaxError:
    line = getattr(node, "line", 1)
    column = getattr(node, "column", 1)
    return PddlSyntaxError(message, line, column)


def _expect_list(node, what: str) -> SExpr:
    if not isinstance(node, SExpr):
        raise _err(node, f"expected {what}, got atom {str(node)!r}")
    return node


def _expect_symbol(node, what: str) -> Symbol:
    if not isinstance(node, Symbol):
        raise _err(node, f"expected {what}")
    return node


def _parse_typed_list(items, what: str) -> list[tuple[str, str]]:
    """Parse ``a b - t c - u d`` into [(a,t),(b,t),(c,u),(d,object)]."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        tok = _expect_symbol(items[i], f"{what} name")
        if tok == "-":
            if not pending:
                raise _err(tok, f"dangling '-' in {what} list")
            if i + 1 >= len(items):
                raise _err(tok, f"missing type after '-' in {what} list")
            typ = _expect_symbol(items[i + 1], "type name")
            out.extend((name, str(typ)) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(str(tok))
            i += 1
    out.extend((name, "object") for name in pending)
    return out


def _parse_atom(node, declared_vars: set[str] | None = None) -> Atom:
    expr = _expect_list(node, "an atom")
    if not expr:
        raise _err(expr, "empty atom")
    head = _expect_symbol(expr[0], "predicate name")
    if head in _UNSUPPORTED_HEADS:
        raise UnsupportedFeatureError(_UNSUPPORTED_HEADS[head], f"'{head}' at line {head.line}")
    terms = []
    for t in expr[1:]:
        sym = _expect_symbol(t, "atom argument")
        terms.append(str(sym))
    if declared_vars is not None:
        for t in terms:
            if t.startswith("?") and t not in declared_vars:
                raise _err(expr, f"variable {t} not declared in :parameters")
    return Atom(str(head), tuple(terms))


def _parse_condition(node, declared_vars: set[str]) -> list[Atom]:
    """A precondition: a single atom or an (and ...) of atoms."""
    expr = _expect_list(node, "a condition")
    if expr and expr.head == "and":
        return [_parse_atom(sub, declared_vars) for sub in expr[1:]]
    return [_parse_atom(expr, declared_vars)]


def _parse_effect(node, declared_vars: set[str]) -> tuple[list[Atom], list[Atom]]:
    """An effect: atom | (not atom) | (and ...) of those. Returns (add, delete)."""
    expr = _expect_list(node, "an effect")
    parts = expr[1:] if expr and expr.head == "and" else [expr]
    adds: list[Atom] = []
    deletes: list[Atom] = []
    for part in parts:
        sub = _expect_list(part, "an effect element")
        if sub and sub.head == "not":
            if len(sub) != 2:
                raise _err(sub, "(not ...) takes exactly one atom")
            deletes.append(_parse_atom(sub[1], declared_vars))
        else:
            head = sub.head
            if head in _UNSUPPORTED_HEADS and head != "not":
                raise UnsupportedFeatureError(
                    _UNSUPPORTED_HEADS[head], f"'{head}' at line {sub.line}"
                )
            adds.append(_parse_atom(sub, declared_vars))
    return adds, deletes


def parse_domain(text: str) -> DomainDescription:
    """Parse a PDDL domain restricted to :strips + :typing."""
    root = read(text)
    if root.head != "define":
        raise _err(root, "expected (define (domain ...) ...)")
    header = _expect_list(root[1] if len(root) > 1 else root, "(domain NAME)")
    if header.head != "domain" or len(header) != 2:
        raise _err(header, "expected (domain NAME)")
    name = check_name(str(_expect_symbol(header[1], "domain name")), "domain")

    requirements: tuple[str, ...] = ()
    types: dict[str, str] = {}
    predicates: dict[str, tuple[tuple[str, str], ...]] = {}
    constants: list[tuple[str, str]] = []
    schemas: list[ActionSchema] = []

    for section in root[2:]:
        sec = _expect_list(section, "a domain section")
        head = sec.head
        if head == ":requirements":
            reqs = []
            for r in sec[1:]:
                req = str(_expect_symbol(r, "requirement"))
                if req not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedRequirementError(req)
                reqs.append(req)
            requirements = tuple(reqs)
        elif head == ":types":
            for child, parent in _parse_typed_list(sec[1:], "type"):
                check_name(child, "type")
                if child == "object":
                    raise _err(sec, "cannot redeclare the root type 'object'")
                types[child] = parent
            for parent in list(types.values()):
                if parent != "object" and parent not in types:
                    types[parent] = "object"  # implicitly declared parent
        elif head == ":constants":
            for cname, ctype in _parse_typed_list(sec[1:], "constant"):
                constants.append((check_name(cname, "constant"), ctype))
        elif head == ":predicates":
            for pred in sec[1:]:
                pexpr = _expect_list(pred, "a predicate declaration")
                if not pexpr:
                    raise _err(pexpr, "empty predicate declaration")
                pname = check_name(str(_expect_symbol(pexpr[0], "predicate name")), "predicate")
                params = tuple(_parse_typed_list(pexpr[1:], "predicate parameter"))
                for v, _ in params:
                    if not v.startswith("?"):
                        raise _err(pexpr, f"predicate parameter {v} must be a ?variable")
                if pname in predicates:
                    raise _err(pexpr, f"duplicate predicate {pname}")
                predicates[pname] = params
        elif head == ":action":
            schemas.append(_parse_action(sec))
        elif head == ":functions":
            raise UnsupportedRequirementError(":fluents")
        elif head in (":durative-action", ":derived", ":axiom"):
            raise UnsupportedFeatureError(head.lstrip(":"), f"line {sec.line}")
        else:
            raise _err(sec, f"unknown domain section {head!r}")

    domain = DomainDescription(
        name=name,
        requirements=requirements,
        types=types,
        predicates=predicates,
        constants=tuple(constants),
        schemas=tuple(schemas),
    )
    _check_domain_types(domain)
    return domain


def _parse_action(sec: SExpr) -> ActionSchema:
    if len(sec) < 2:
        raise _err(sec, "(:action ...) missing name")
    name = check_name(str(_expect_symbol(sec[1], "action name")), "action")
    params: tuple[tuple[str, str], ...] = ()
    pre: list[Atom] = []
    adds: list[Atom] = []
    deletes: list[Atom] = []
    i = 2
    while i < len(sec):
        key = _expect_symbol(sec[i], "an :action keyword")
        if i + 1 >= len(sec):
            raise _err(key, f"{key} missing its value")
        value = sec[i + 1]
        if key == ":parameters":
            params = tuple(_parse_typed_list(_expect_list(value, "parameter list"), "parameter"))
            for v, _ in params:
                if not v.startswith("?"):
                    raise _err(value, f"parameter {v} must be a ?variable")
        elif key == ":precondition":
            pre = _parse_condition(value, {v for v, _ in params})
        elif key == ":effect":
            adds, deletes = _parse_effect(value, {v for v, _ in params})
        else:
            raise _err(key, f"unknown :action keyword {key}")
        i += 2
    return ActionSchema(
        name=name,
        parameters=params,
        preconditions=tuple(pre),
        add_effects=tuple(adds),
        delete_effects=tuple(deletes),
    )


def _check_domain_types(domain: DomainDescription) -> None:
    """Validate type references in predicates, constants and schemas."""

    def known(t: str) -> bool:
        return t == "object" or t in domain.types

    for pname, params in domain.predicates.items():
        for _, t in params:
            if not known(t):
                raise ValidationError(f"predicate {pname}: unknown type {t}")
    for cname, t in domain.constants:
        if not known(t):
            raise ValidationError(f"constant {cname}: unknown type {t}")
    for schema in domain.schemas:
        for v, t in schema.parameters:
            if not known(t):
                raise ValidationError(f"action {schema.name}: unknown type {t} for {v}")
        for atom in (*schema.preconditions, *schema.add_effects, *schema.delete_effects):
            if atom.predicate not in domain.predicates:
                raise ValidationError(
                    f"action {schema.name}: unknown predicate {atom.predicate}"
                )
            if len(atom.terms) != len(domain.predicates[atom.predicate]):
                raise ValidationError(
                    f"action {schema.name}: arity mismatch in {atom}"
                )


@dataclass(frozen=True)
class ProblemAst:
    """Raw (syntax-level) problem file, before canonicalization."""

    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...]
    init: tuple[Atom, ...]
    goal: tuple[Atom, ...]


def read_problem(text: str) -> ProblemAst:
    """Parse a problem file syntactically; no domain consistency checks yet."""
    root = read(text)
    if root.head != "define":
        raise _err(root, "expected (define (problem ...) ...)")
    header = _expect_list(root[1] if len(root) > 1 else root, "(problem NAME)")
    if header.head != "problem" or len(header) != 2:
        raise _err(header, "expected (problem NAME)")
    name = check_name(str(_expect_symbol(header[1], "problem name")), "problem")

    domain_name = ""
    objects: list[tuple[str, str]] = []
    init: list[Atom] = []
    goal: list[Atom] = []
    for section in root[2:]:
        sec = _expect_list(section, "a problem section")
        head = sec.head
        if head == ":domain":
            domain_name = str(_expect_symbol(sec[1], "domain name"))
        elif head == ":requirements":
            for r in sec[1:]:
                req = str(_expect_symbol(r, "requirement"))
                if req not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedRequirementError(req)
        elif head == ":objects":
            for oname, otype in _parse_typed_list(sec[1:], "object"):
                objects.append((check_name(oname, "object"), otype))
        elif head == ":init":
            init = [_parse_atom(a) for a in sec[1:]]
        elif head == ":goal":
            if len(sec) != 2:
                raise _err(sec, "(:goal ...) takes exactly one condition")
            expr = _expect_list(sec[1], "goal condition")
            if expr and expr.head == "and":
                goal = [_parse_atom(sub) for sub in expr[1:]]
            elif not expr:
                goal = []  # (:goal (and)) and (:goal ()) both mean the empty goal
            else:
                goal = [_parse_atom(expr)]
        elif head == ":metric":
            raise UnsupportedFeatureError("metric", f"line {sec.line}")
        else:
            raise _err(sec, f"unknown problem section {head!r}")
    for atom in (*init, *goal):
        for t in atom.terms:
            if t.startswith("?"):
                raise ValidationError(f"problem atom {atom} contains a variable")
    return ProblemAst(name, domain_name, tuple(objects), tuple(init), tuple(goal))


def parse_problem(text: str, grounded: GroundedDomain) -> ProblemInstance:
    """Parse and canonicalize a problem against an already-grounded domain.

    Init and goal atoms must canonicalize to fluents of the grounded domain's
    universe V; anything else (typo'd object, unknown predicate, goal over a
    fluent no grounding produced) is rejected.
    """
    ast = read_problem(text)

    def to_fluent(atom: Atom, where: str) -> str:
        if atom.predicate not in grounded.predicates:
            raise ValidationError(f"{where}: unknown predicate {atom.predicate}")
        if len(atom.terms) != len(grounded.predicates[atom.predicate]):
            raise ValidationError(f"{where}: arity mismatch in {atom}")
        for term in atom.terms:
            if term not in grounded.objects:
                raise ValidationError(f"{where}: unknown object {term} in {atom}")
        fluent = atom.substitute({})
        if fluent not in grounded.fluent_set:
            raise ValidationError(f"{where}: fluent {fluent} is not in the grounded domain")
        return fluent

    init = frozenset(to_fluent(a, "init") for a in ast.init)
    goal = frozenset(to_fluent(a, "goal") for a in ast.goal)
    return ProblemInstance(name=ast.name, initial_state=init, goal=goal)
