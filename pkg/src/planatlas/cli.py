"""Command-line entry points: a thin shell over the package modules.

Every command writes its module's JSON/SVG export and nothing else; errors
leave as machine-readable JSON on stderr with a nonzero exit code.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import SCHEMA_VERSION, __version__
from .embedding import EmbedConfig, MODES, embed, init_embeddings, knn_preservation
from .errors import PlanatlasError
from .generators import generate_barman, generate_logistics
from .graph import build_graph, component_report, graph_report
from .overlay import overlay_geometry, trace_from_plan
from .pddl import load
from .pddl.ground import DEFAULT_GROUNDING_CAP
from .planning import DEFAULT_BUDGET, plan as run_plan, validate
from .svg import render_svg


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PlanatlasError as exc:
            payload = exc.payload()
            payload["schema_version"] = SCHEMA_VERSION
            sys.stderr.write(json.dumps(payload) + "\n")
            sys.exit(1)

    return wrapper


def _load_pair(domain: str, problem: str, cap: int):
    return load(Path(domain).read_text(), Path(problem).read_text(), cap=cap)


def embed_options(fn):
    fn = click.option("--iterations", default=1500, show_default=True, type=int)(fn)
    fn = click.option("--alpha", default=1.0, show_default=True, type=float)(fn)
    fn = click.option("--dimension", default=2, show_default=True, type=int)(fn)
    fn = click.option(
        "--mode", default="half-jump", show_default=True, type=click.Choice(MODES)
    )(fn)
    fn = click.option(
        "--repulsion-sample-size", default=None, type=int,
        help="override the ceil(ln n) repulsion sample size",
    )(fn)
    fn = click.option("--epsilon", default=1e-6, show_default=True, type=float)(fn)
    fn = click.option(
        "--repulsion-strength", default=1.0, show_default=True, type=float
    )(fn)
    fn = click.option("--clamp-jump", is_flag=True, default=False)(fn)
    fn = click.option("--workers", default=1, show_default=True, type=int)(fn)
    return fn


def _config_from_flags(kwargs: dict) -> EmbedConfig:
    return EmbedConfig(
        iterations=kwargs.pop("iterations"),
        alpha=kwargs.pop("alpha"),
        dimension=kwargs.pop("dimension"),
        mode=kwargs.pop("mode"),
        repulsion_sample_size=kwargs.pop("repulsion_sample_size"),
        epsilon=kwargs.pop("epsilon"),
        repulsion_strength=kwargs.pop("repulsion_strength"),
        clamp_jump=kwargs.pop("clamp_jump"),
        workers=kwargs.pop("workers"),
    )


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Ground STRIPS domains, embed their transition graphs, plan on top."""


@main.command("ground")
@click.argument("domain", type=click.Path(exists=True))
@click.argument("problem", type=click.Path(exists=True))
@click.option("--cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("-o", "--out", default=None, type=click.Path())
@handle_errors
def cmd_ground(domain: str, problem: str, cap: int, out: str | None) -> None:
    """Parse and ground a domain/problem pair; emit the grounded-domain JSON."""
    _, grounded, prob = _load_pair(domain, problem, cap)
    data = grounded.to_json()
    data["problem"] = {
        "name": prob.name,
        "init": sorted(prob.initial_state),
        "goal": sorted(prob.goal),
    }
    _emit(data, out)


@main.command("metrics")
@click.argument("domain", type=click.Path(exists=True))
@click.argument("problem", type=click.Path(exists=True))
@click.option("--cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("--include-static", is_flag=True, default=False)
@click.option("-o", "--out", default=None, type=click.Path())
@handle_errors
def cmd_metrics(
    domain: str, problem: str, cap: int, include_static: bool, out: str | None
) -> None:
    """Build the transition graph and emit its diagnostics report."""
    _, grounded, _ = _load_pair(domain, problem, cap)
    g = build_graph(grounded.actions, include_static=include_static)
    data = graph_report(g).to_json()
    data["components"] = [c.to_json() for c in component_report(g)]
    data["node_count"] = len(g)
    data["edge_count"] = g.edge_count
    _emit(data, out)


@main.command("embed")
@click.argument("domain", type=click.Path(exists=True))
@click.argument("problem", type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("--include-static", is_flag=True, default=False)
@click.option("--knn", default=None, type=int, help="also report knn_preservation at k")
@click.option("-o", "--out", default=None, type=click.Path())
@embed_options
@handle_errors
def cmd_embed(**kwargs) -> None:
    """Embed the transition graph; emit {seed, config, nodes:[{id,kind,xy}]}."""
    config = _config_from_flags(kwargs)
    _, grounded, _ = _load_pair(kwargs["domain"], kwargs["problem"], kwargs["cap"])
    g = build_graph(grounded.actions, include_static=kwargs["include_static"])
    e = embed(g, config, kwargs["seed"])
    data = e.to_json()
    data["config"] = config.to_json()
    if kwargs["knn"] is not None:
        data["knn_preservation"] = knn_preservation(g, e, kwargs["knn"])
        data["knn_preservation_init"] = knn_preservation(
            g, init_embeddings(g, config, kwargs["seed"]), kwargs["knn"]
        )
    _emit(data, kwargs["out"])


@main.command("plan")
@click.argument("domain", type=click.Path(exists=True))
@click.argument("problem", type=click.Path(exists=True))
@click.option("--goal", "goals", multiple=True, help="goal fluent (repeatable); defaults to the problem goal")
@click.option(
    "--heuristic", default="blind", show_default=True,
    type=click.Choice(["blind", "embedding"]),
)
@click.option("--seed", default=0, show_default=True, type=int, help="embedding seed for the heuristic")
@click.option("--heuristic-dimension", default=10, show_default=True, type=int)
@click.option("--heuristic-iterations", default=1500, show_default=True, type=int)
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True, type=int)
@click.option("--cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("--ipc", default=None, type=click.Path(), help="also write the IPC plan file here")
@click.option("-o", "--out", default=None, type=click.Path())
@handle_errors
def cmd_plan(
    domain: str,
    problem: str,
    goals: tuple[str, ...],
    heuristic: str,
    seed: int,
    heuristic_dimension: int,
    heuristic_iterations: int,
    budget: int,
    cap: int,
    ipc: str | None,
    out: str | None,
) -> None:
    """Search for a plan; emit plan + trace JSON (and optionally an IPC file)."""
    _, grounded, prob = _load_pair(domain, problem, cap)
    goal = frozenset(goals) if goals else prob.goal
    embedding = None
    if heuristic == "embedding":
        g = build_graph(grounded.actions)
        cfg = EmbedConfig(dimension=heuristic_dimension, iterations=heuristic_iterations)
        embedding = embed(g, cfg, seed)
    found = run_plan(
        grounded, prob.initial_state, goal,
        heuristic=heuristic, embedding=embedding, budget=budget,
    )
    report = validate(grounded, prob.initial_state, found.steps, goal)
    trace = trace_from_plan(grounded, prob.initial_state, found.steps)
    data = {
        "schema_version": SCHEMA_VERSION,
        "plan": found.to_json(),
        "validation": report.to_json(),
        "trace": trace.to_json(),
    }
    if ipc:
        Path(ipc).write_text(found.ipc_text(grounded))
    _emit(data, out)


@main.command("export-svg")
@click.argument("domain", type=click.Path(exists=True))
@click.argument("problem", type=click.Path(exists=True))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("--include-static", is_flag=True, default=False)
@click.option("--overlay/--no-overlay", "with_overlay", default=True,
              help="plan to the problem goal and draw the trace")
@click.option("--size", default=800, show_default=True, type=int)
@click.option("--labels", is_flag=True, default=False)
@click.option("-o", "--out", required=True, type=click.Path())
@embed_options
@handle_errors
def cmd_export_svg(**kwargs) -> None:
    """Embed (and optionally plan to the problem goal); write an SVG figure."""
    config = _config_from_flags(kwargs)
    _, grounded, prob = _load_pair(kwargs["domain"], kwargs["problem"], kwargs["cap"])
    g = build_graph(grounded.actions, include_static=kwargs["include_static"])
    e = embed(g, config, kwargs["seed"])
    overlay = None
    if kwargs["with_overlay"] and prob.goal:
        found = run_plan(grounded, prob.initial_state, prob.goal)
        trace = trace_from_plan(grounded, prob.initial_state, found.steps)
        overlay = overlay_geometry(trace, e)
    svg = render_svg(
        e, overlay, size=kwargs["size"], labels=kwargs["labels"]
    )
    Path(kwargs["out"]).write_text(svg)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8023, show_default=True, type=int)
@click.option("--grounding-cap", default=DEFAULT_GROUNDING_CAP, show_default=True, type=int)
@click.option("--budget", default=DEFAULT_BUDGET, show_default=True, type=int)
@click.option("--frame-stride", default=50, show_default=True, type=int)
@click.option("--static-dir", default=None, type=click.Path(),
              help="serve the browser UI from this directory")
@embed_options
@handle_errors
def cmd_serve(**kwargs) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import ServerSettings, create_app

    config = _config_from_flags(kwargs)
    settings = ServerSettings(
        grounding_cap=kwargs["grounding_cap"],
        planner_budget=kwargs["budget"],
        embed_defaults=config,
        frame_stride=kwargs["frame_stride"],
        static_dir=kwargs["static_dir"],
    )
    uvicorn.run(create_app(settings), host=kwargs["host"], port=kwargs["port"])


@main.group("gen")
def cmd_gen() -> None:
    """Generate benchmark domain/problem pairs."""


def _write_instance(inst, out_domain: str, out_problem: str) -> None:
    Path(out_domain).write_text(inst.domain_text)
    Path(out_problem).write_text(inst.problem_text)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "name": inst.name,
            "domain_file": out_domain,
            "problem_file": out_problem,
        },
        None,
    )


@cmd_gen.command("logistics")
@click.option("--cities", default=4, show_default=True, type=int)
@click.option("--locations-per-city", default=2, show_default=True, type=int)
@click.option("--trucks-per-city", default=1, show_default=True, type=int)
@click.option("--airplanes", default=1, show_default=True, type=int,
              help="airplanes per route")
@click.option("--packages", default=4, show_default=True, type=int)
@click.option("--routes", default="ring", show_default=True,
              help="'ring', 'all', or comma-separated pairs like 0-1,1-2")
@click.option("--broken-city", default=None, type=int,
              help="demote this city's airport to a plain location")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out-domain", required=True, type=click.Path())
@click.option("--out-problem", required=True, type=click.Path())
@handle_errors
def gen_logistics(
    cities: int,
    locations_per_city: int,
    trucks_per_city: int,
    airplanes: int,
    packages: int,
    routes: str,
    broken_city: int | None,
    seed: int,
    out_domain: str,
    out_problem: str,
) -> None:
    """Generate a Logistics-class instance."""
    route_spec: str | list[tuple[int, int]] = routes
    if routes not in ("ring", "all"):
        route_spec = [
            (int(a), int(b))
            for a, b in (pair.split("-") for pair in routes.split(","))
        ]
    inst = generate_logistics(
        cities=cities,
        locations_per_city=locations_per_city,
        trucks_per_city=trucks_per_city,
        airplanes=airplanes,
        packages=packages,
        routes=route_spec,
        broken_city=broken_city,
        seed=seed,
    )
    _write_instance(inst, out_domain, out_problem)


@cmd_gen.command("barman")
@click.option("--cocktails", default=2, show_default=True, type=int)
@click.option("--shots", default=None, type=int, help="defaults to cocktails + 1")
@click.option("--ingredients", default=3, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out-domain", required=True, type=click.Path())
@click.option("--out-problem", required=True, type=click.Path())
@handle_errors
def gen_barman(
    cocktails: int,
    shots: int | None,
    ingredients: int,
    seed: int,
    out_domain: str,
    out_problem: str,
) -> None:
    """Generate a Barman-class instance."""
    inst = generate_barman(
        cocktails=cocktails, shots=shots, ingredients=ingredients, seed=seed
    )
    _write_instance(inst, out_domain, out_problem)


if __name__ == "__main__":
    main()
