"""Deterministic PDDL instance generators: Logistics-class and Barman-class.

Grounding takes the full type-consistent cross product, so these domains
encode structure in the type system itself: each city gets its own location,
airport and truck types, and each air route its own airplane type and fly
schemas.  A truck can then only ever ground against its own city's locations
and an airplane against its route's airports — without any reachability
pruning.

The two classes sit at opposite ends of the graph-shape spectrum: a Logistics
ring of cities yields a long, chainy transition graph (large radius, low
closeness), while Barman funnels everything through shared hands and a shaker
(small radius, high closeness).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ValidationError
from .pddl.model import ActionSchema, Atom, DomainDescription
from .pddl.writer import write_domain, write_problem


@dataclass(frozen=True)
class GeneratedInstance:
    name: str
    domain_text: str
    problem_text: str


def _atom(pred: str, *terms: str) -> Atom:
    return Atom(pred, tuple(terms))


def _routes_for(cities: int, routes: str | list[tuple[int, int]]) -> list[tuple[int, int]]:
    if isinstance(routes, str):
        if routes == "ring":
            if cities == 2:
                return [(0, 1)]
            return [(i, (i + 1) % cities) for i in range(cities)]
        if routes == "all":
            return [(i, j) for i in range(cities) for j in range(i + 1, cities)]
        raise ValidationError(f"routes must be 'ring', 'all', or pairs, not {routes!r}")
    out = []
    for a, b in routes:
        if not (0 <= a < cities and 0 <= b < cities) or a == b:
            raise ValidationError(f"route ({a},{b}) is not a pair of distinct cities")
        out.append((min(a, b), max(a, b)))
    return sorted(set(out))


def generate_logistics(
    cities: int = 4,
    locations_per_city: int = 2,
    trucks_per_city: int = 1,
    airplanes: int = 1,
    packages: int = 4,
    routes: str | list[tuple[int, int]] = "ring",
    broken_city: int | None = None,
    seed: int = 0,
) -> GeneratedInstance:
    """A multi-city transport instance.

    ``locations_per_city`` counts plain locations in addition to the one
    airport per city.  ``airplanes`` is the airplane count per route.
    ``broken_city`` demotes that city's airport to a plain location, so no fly
    or airplane load/unload schema can ground against it — reproducing the
    classic modeling bug where one city's air link silently vanishes and its
    nodes split off into their own graph component.
    """
    if cities < 1:
        raise ValidationError("cities must be >= 1")
    if broken_city is not None and not (0 <= broken_city < cities):
        raise ValidationError("broken_city out of range")
    route_list = _routes_for(cities, routes) if cities > 1 else []

    types: dict[str, str] = {
        "place": "object",
        "mobile": "object",
        "package": "mobile",
        "carrier": "mobile",
        "truck": "carrier",
        "airplane": "carrier",
    }
    for i in range(cities):
        types[f"loc-c{i}"] = "place"
        types[f"apt-c{i}"] = f"loc-c{i}"
        types[f"trk-c{i}"] = "truck"
    for j, _ in enumerate(route_list):
        types[f"apl-r{j}"] = "airplane"

    predicates = {
        "at": (("?m", "mobile"), ("?l", "place")),
        "in": (("?p", "package"), ("?v", "carrier")),
    }

    schemas: list[ActionSchema] = []
    for i in range(cities):
        loc_t, trk_t = f"loc-c{i}", f"trk-c{i}"
        schemas.append(
            ActionSchema(
                name=f"load-truck-c{i}",
                parameters=(("?p", "package"), ("?t", trk_t), ("?l", loc_t)),
                preconditions=(_atom("at", "?t", "?l"), _atom("at", "?p", "?l")),
                add_effects=(_atom("in", "?p", "?t"),),
                delete_effects=(_atom("at", "?p", "?l"),),
            )
        )
        schemas.append(
            ActionSchema(
                name=f"unload-truck-c{i}",
                parameters=(("?p", "package"), ("?t", trk_t), ("?l", loc_t)),
                preconditions=(_atom("at", "?t", "?l"), _atom("in", "?p", "?t")),
                add_effects=(_atom("at", "?p", "?l"),),
                delete_effects=(_atom("in", "?p", "?t"),),
            )
        )
        schemas.append(
            ActionSchema(
                name=f"drive-c{i}",
                parameters=(("?t", trk_t), ("?from", loc_t), ("?to", loc_t)),
                preconditions=(_atom("at", "?t", "?from"),),
                add_effects=(_atom("at", "?t", "?to"),),
                delete_effects=(_atom("at", "?t", "?from"),),
            )
        )
    for j, (a, b) in enumerate(route_list):
        apl_t = f"apl-r{j}"
        for src, dst in ((a, b), (b, a)):
            schemas.append(
                ActionSchema(
                    name=f"fly-r{j}-c{src}-c{dst}",
                    parameters=(
                        ("?v", apl_t),
                        ("?from", f"apt-c{src}"),
                        ("?to", f"apt-c{dst}"),
                    ),
                    preconditions=(_atom("at", "?v", "?from"),),
                    add_effects=(_atom("at", "?v", "?to"),),
                    delete_effects=(_atom("at", "?v", "?from"),),
                )
            )
        for city in (a, b):
            apt_t = f"apt-c{city}"
            schemas.append(
                ActionSchema(
                    name=f"load-airplane-r{j}-c{city}",
                    parameters=(("?p", "package"), ("?v", apl_t), ("?l", apt_t)),
                    preconditions=(_atom("at", "?v", "?l"), _atom("at", "?p", "?l")),
                    add_effects=(_atom("in", "?p", "?v"),),
                    delete_effects=(_atom("at", "?p", "?l"),),
                )
            )
            schemas.append(
                ActionSchema(
                    name=f"unload-airplane-r{j}-c{city}",
                    parameters=(("?p", "package"), ("?v", apl_t), ("?l", apt_t)),
                    preconditions=(_atom("at", "?v", "?l"), _atom("in", "?p", "?v")),
                    add_effects=(_atom("at", "?p", "?l"),),
                    delete_effects=(_atom("in", "?p", "?v"),),
                )
            )

    domain = DomainDescription(
        name="transportnet",
        requirements=(":strips", ":typing"),
        types=types,
        predicates=predicates,
        constants=(),
        schemas=tuple(schemas),
    )

    rng = random.Random(seed)
    objects: list[tuple[str, str]] = []
    city_locs: list[list[str]] = []
    for i in range(cities):
        apt_type = f"loc-c{i}" if broken_city == i else f"apt-c{i}"
        objects.append((f"apt-c{i}", apt_type))
        locs = [f"apt-c{i}"]
        for k in range(locations_per_city):
            objects.append((f"loc-c{i}-{k}", f"loc-c{i}"))
            locs.append(f"loc-c{i}-{k}")
        city_locs.append(locs)
        for k in range(trucks_per_city):
            objects.append((f"trk-c{i}-{k}", f"trk-c{i}"))
    for j, (a, b) in enumerate(route_list):
        for k in range(airplanes):
            objects.append((f"apl-r{j}-{k}", f"apl-r{j}"))
    for m in range(packages):
        objects.append((f"pkg-{m}", "package"))

    init: list[Atom] = []
    for i in range(cities):
        for k in range(trucks_per_city):
            init.append(_atom("at", f"trk-c{i}-{k}", rng.choice(city_locs[i])))
    for j, (a, b) in enumerate(route_list):
        for k in range(airplanes):
            init.append(_atom("at", f"apl-r{j}-{k}", f"apt-c{rng.choice((a, b))}"))
    goal: list[Atom] = []
    for m in range(packages):
        src_city = rng.randrange(cities)
        init.append(_atom("at", f"pkg-{m}", rng.choice(city_locs[src_city])))
        if cities > 1:
            dst_city = rng.choice([c for c in range(cities) if c != src_city])
        else:
            dst_city = src_city
        goal.append(_atom("at", f"pkg-{m}", rng.choice(city_locs[dst_city])))

    name = f"transportnet-c{cities}-l{locations_per_city}-p{packages}-s{seed}"
    return GeneratedInstance(
        name=name,
        domain_text=write_domain(domain),
        problem_text=write_problem(name, domain.name, objects, init, goal),
    )


def generate_barman(
    cocktails: int = 2,
    shots: int | None = None,
    ingredients: int = 3,
    seed: int = 0,
) -> GeneratedInstance:
    """A cocktail-mixing instance: one shaker, two hands, shared everything.

    Every action funnels through the hand and shaker fluents, so the
    transition graph is dense with a small radius.  ``shots`` defaults to
    cocktails + 1.
    """
    if cocktails < 1:
        raise ValidationError("cocktails must be >= 1")
    if ingredients < 2:
        raise ValidationError("ingredients must be >= 2")
    if shots is None:
        shots = cocktails + 1
    if shots < cocktails:
        raise ValidationError("need at least one shot per cocktail")

    types = {t: "object" for t in ("hand", "shot", "shaker", "ingredient", "cocktail")}
    predicates = {
        "ontable": (("?s", "shot"),),
        "handempty": (("?h", "hand"),),
        "holding": (("?h", "hand"), ("?s", "shot")),
        "clean": (("?s", "shot"),),
        "empty": (("?s", "shot"),),
        "contains": (("?s", "shot"), ("?i", "ingredient")),
        "shaker-contains": (("?k", "shaker"), ("?i", "ingredient")),
        "shaker-cocktail": (("?k", "shaker"), ("?c", "cocktail")),
        "shaker-clean": (("?k", "shaker"),),
        "shaker-used": (("?k", "shaker"),),
        "contains-cocktail": (("?s", "shot"), ("?c", "cocktail")),
        "part1": (("?c", "cocktail"), ("?i", "ingredient")),
        "part2": (("?c", "cocktail"), ("?i", "ingredient")),
    }

    schemas = (
        ActionSchema(
            name="grasp",
            parameters=(("?h", "hand"), ("?s", "shot")),
            preconditions=(_atom("ontable", "?s"), _atom("handempty", "?h")),
            add_effects=(_atom("holding", "?h", "?s"),),
            delete_effects=(_atom("ontable", "?s"), _atom("handempty", "?h")),
        ),
        ActionSchema(
            name="leave",
            parameters=(("?h", "hand"), ("?s", "shot")),
            preconditions=(_atom("holding", "?h", "?s"),),
            add_effects=(_atom("ontable", "?s"), _atom("handempty", "?h")),
            delete_effects=(_atom("holding", "?h", "?s"),),
        ),
        ActionSchema(
            name="fill-shot",
            parameters=(("?s", "shot"), ("?i", "ingredient"), ("?h", "hand")),
            preconditions=(
                _atom("holding", "?h", "?s"),
                _atom("clean", "?s"),
                _atom("empty", "?s"),
            ),
            add_effects=(_atom("contains", "?s", "?i"),),
            delete_effects=(_atom("clean", "?s"), _atom("empty", "?s")),
        ),
        ActionSchema(
            name="empty-shot",
            parameters=(("?s", "shot"), ("?i", "ingredient"), ("?h", "hand")),
            preconditions=(_atom("holding", "?h", "?s"), _atom("contains", "?s", "?i")),
            add_effects=(_atom("empty", "?s"),),
            delete_effects=(_atom("contains", "?s", "?i"),),
        ),
        ActionSchema(
            name="clean-shot",
            parameters=(("?s", "shot"), ("?h", "hand")),
            preconditions=(_atom("holding", "?h", "?s"), _atom("empty", "?s")),
            add_effects=(_atom("clean", "?s"),),
            delete_effects=(),
        ),
        ActionSchema(
            name="pour-shot-to-shaker",
            parameters=(
                ("?s", "shot"),
                ("?i", "ingredient"),
                ("?k", "shaker"),
                ("?h", "hand"),
            ),
            preconditions=(_atom("holding", "?h", "?s"), _atom("contains", "?s", "?i")),
            add_effects=(_atom("shaker-contains", "?k", "?i"), _atom("empty", "?s")),
            delete_effects=(_atom("contains", "?s", "?i"),),
        ),
        ActionSchema(
            name="shake",
            parameters=(
                ("?c", "cocktail"),
                ("?i1", "ingredient"),
                ("?i2", "ingredient"),
                ("?k", "shaker"),
            ),
            preconditions=(
                _atom("part1", "?c", "?i1"),
                _atom("part2", "?c", "?i2"),
                _atom("shaker-contains", "?k", "?i1"),
                _atom("shaker-contains", "?k", "?i2"),
                _atom("shaker-clean", "?k"),
            ),
            add_effects=(_atom("shaker-cocktail", "?k", "?c"),),
            delete_effects=(
                _atom("shaker-contains", "?k", "?i1"),
                _atom("shaker-contains", "?k", "?i2"),
                _atom("shaker-clean", "?k"),
            ),
        ),
        ActionSchema(
            name="pour-shaker-to-shot",
            parameters=(("?c", "cocktail"), ("?k", "shaker"), ("?s", "shot")),
            preconditions=(
                _atom("shaker-cocktail", "?k", "?c"),
                _atom("clean", "?s"),
                _atom("empty", "?s"),
            ),
            add_effects=(
                _atom("contains-cocktail", "?s", "?c"),
                _atom("shaker-used", "?k"),
            ),
            delete_effects=(
                _atom("shaker-cocktail", "?k", "?c"),
                _atom("clean", "?s"),
                _atom("empty", "?s"),
            ),
        ),
        ActionSchema(
            name="empty-cocktail-shot",
            parameters=(("?s", "shot"), ("?c", "cocktail"), ("?h", "hand")),
            preconditions=(
                _atom("holding", "?h", "?s"),
                _atom("contains-cocktail", "?s", "?c"),
            ),
            add_effects=(_atom("empty", "?s"),),
            delete_effects=(_atom("contains-cocktail", "?s", "?c"),),
        ),
        ActionSchema(
            name="clean-shaker",
            parameters=(("?k", "shaker"),),
            preconditions=(_atom("shaker-used", "?k"),),
            add_effects=(_atom("shaker-clean", "?k"),),
            delete_effects=(_atom("shaker-used", "?k"),),
        ),
    )

    domain = DomainDescription(
        name="mixology",
        requirements=(":strips", ":typing"),
        types=types,
        predicates=predicates,
        constants=(),
        schemas=schemas,
    )

    rng = random.Random(seed)
    objects: list[tuple[str, str]] = [("left", "hand"), ("right", "hand"), ("shaker0", "shaker")]
    objects.extend((f"shot{k}", "shot") for k in range(shots))
    objects.extend((f"ing{k}", "ingredient") for k in range(ingredients))
    objects.extend((f"ck{k}", "cocktail") for k in range(cocktails))

    init: list[Atom] = [
        _atom("handempty", "left"),
        _atom("handempty", "right"),
        _atom("shaker-clean", "shaker0"),
    ]
    for k in range(shots):
        init.extend(
            (_atom("ontable", f"shot{k}"), _atom("clean", f"shot{k}"), _atom("empty", f"shot{k}"))
        )
    for k in range(cocktails):
        first = rng.randrange(ingredients)
        second = rng.choice([i for i in range(ingredients) if i != first])
        init.append(_atom("part1", f"ck{k}", f"ing{first}"))
        init.append(_atom("part2", f"ck{k}", f"ing{second}"))
    goal = [_atom("contains-cocktail", f"shot{k}", f"ck{k}") for k in range(cocktails)]

    name = f"mixology-k{cocktails}-s{shots}-i{ingredients}-s{seed}"
    return GeneratedInstance(
        name=name,
        domain_text=write_domain(domain),
        problem_text=write_problem(name, domain.name, objects, init, goal),
    )
