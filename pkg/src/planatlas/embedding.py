"""Force-directed graph embedding with the half-jump update.

Update rule, per iteration: draw a repulsion set R of ceil(ln |tau|) nodes
(without replacement, fresh each iteration); every node then computes its
displacement against the *fixed* base coordinates of this iteration and all
nodes move simultaneously.  Attraction pulls a node toward its graph
neighbors — either a force proportional to distance, or (default) a jump to
the midpoint between the node and its neighbors' centroid.  Repulsion pushes
node w away from each r in R \\ {w} with magnitude (|tau|/|R|) / max(dist,
epsilon) along (w - r)/dist.  Repulsion displacement is clamped to length
alpha; the half-jump itself is unclamped unless ``clamp_jump`` is set.

Reproducibility contract: (graph, seed, config) determines every frame
bit-for-bit, for any ``workers`` count and any node processing order.  The
RNG is Philox keyed by the seed; counter block 0 draws the initial
coordinates and block t+1 draws iteration t's repulsion sample.  Per-node
arithmetic is a fixed sequence of elementwise operations (a left fold over R
in sorted order, and a per-node reduction over its own sorted neighbor list),
so it cannot depend on how nodes are batched.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ValidationError
from .graph import TransitionGraph

FORCE_ATTRACTION = "force-attraction"
HALF_JUMP = "half-jump"
MODES = (HALF_JUMP, FORCE_ATTRACTION)


@dataclass(frozen=True)
class EmbedConfig:
    iterations: int = 1500
    alpha: float = 1.0
    dimension: int = 2
    mode: str = HALF_JUMP
    repulsion_sample_size: int | None = None  # None -> ceil(ln |tau|), min 1
    init_range: tuple[float, float] = (0.0, 100.0)
    epsilon: float = 1e-6
    repulsion_strength: float = 1.0  # multiplier; 0 disables repulsion
    clamp_jump: bool = False  # clamp the half-jump displacement to alpha too
    workers: int = 1

    def __post_init__(self):
        if self.iterations < 0:
            raise ValidationError("iterations must be >= 0")
        if not self.alpha > 0:
            raise ValidationError("alpha must be > 0")
        if self.dimension < 2:
            raise ValidationError("dimension must be >= 2")
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}")
        if self.repulsion_sample_size is not None and self.repulsion_sample_size < 1:
            raise ValidationError("repulsion_sample_size must be >= 1")
        if not self.epsilon > 0:
            raise ValidationError("epsilon must be > 0")
        if self.init_range[0] >= self.init_range[1]:
            raise ValidationError("init_range must be an increasing pair")
        if self.repulsion_strength < 0:
            raise ValidationError("repulsion_strength must be >= 0")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")

    def sample_size(self, node_count: int) -> int:
        """Effective repulsion sample size |R| for a graph of given order."""
        if self.repulsion_sample_size is not None:
            return min(self.repulsion_sample_size, node_count)
        if node_count <= 1:
            return min(1, node_count)
        return min(max(1, math.ceil(math.log(node_count))), node_count)

    def to_json(self) -> dict:
        return {
            "iterations": self.iterations,
            "alpha": self.alpha,
            "dimension": self.dimension,
            "mode": self.mode,
            "repulsion_sample_size": self.repulsion_sample_size,
            "init_range": list(self.init_range),
            "epsilon": self.epsilon,
            "repulsion_strength": self.repulsion_strength,
            "clamp_jump": self.clamp_jump,
            "workers": self.workers,
        }

    @classmethod
    def from_json(cls, data: dict) -> EmbedConfig:
        kwargs = dict(data)
        if "init_range" in kwargs:
            kwargs["init_range"] = tuple(kwargs["init_range"])
        return cls(**kwargs)


@dataclass(frozen=True)
class EmbeddingSet:
    """Coordinates for every graph node, aligned with the graph's node order."""

    ids: tuple[str, ...]
    kinds: tuple[str, ...]
    coords: np.ndarray  # (n, dimension), read-only
    dimension: int
    iteration: int
    seed: int

    def __post_init__(self):
        self.coords.setflags(write=False)

    def coord_of(self, node_id: str) -> np.ndarray:
        return self.coords[self.ids.index(node_id)]

    def with_coords(self, coords: np.ndarray, iteration: int) -> EmbeddingSet:
        return replace(self, coords=coords, iteration=iteration)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "seed": self.seed,
            "iteration": self.iteration,
            "dimension": self.dimension,
            "nodes": [
                {"id": nid, "kind": kind, "xy": [float(x) for x in row]}
                for nid, kind, row in zip(self.ids, self.kinds, self.coords)
            ],
        }


def _rng(seed: int, block: int) -> np.random.Generator:
    """Philox stream for one draw block: block 0 init, block t+1 iteration t."""
    key = seed & 0xFFFFFFFFFFFFFFFF  # 64-bit seed contract
    return np.random.Generator(np.random.Philox(key=key, counter=[0, 0, 0, block]))


def init_embeddings(g: TransitionGraph, cfg: EmbedConfig, seed: int) -> EmbeddingSet:
    """Uniform random coordinates in init_range^d, iteration 0."""
    n = len(g)
    if n == 0:
        raise ValidationError("cannot embed an empty graph")
    lo, hi = cfg.init_range
    coords = _rng(seed, 0).uniform(lo, hi, size=(n, cfg.dimension))
    return EmbeddingSet(
        ids=g.node_ids,
        kinds=g.kinds,
        coords=coords,
        dimension=cfg.dimension,
        iteration=0,
        seed=seed,
    )


def _clamp(disp: np.ndarray, alpha: float) -> np.ndarray:
    """Cap each row's length at alpha: m if ||m|| <= alpha else alpha*m/||m||."""
    norms = np.linalg.norm(disp, axis=1)
    over = norms > alpha
    if np.any(over):
        disp = disp.copy()
        disp[over] *= (alpha / norms[over])[:, None]
    return disp


def _neighbor_sums(
    g: TransitionGraph, base: np.ndarray, nodes: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Sum of base coords over each node's sorted neighbor list; plus degrees."""
    starts = g.indptr[nodes]
    counts = g.indptr[nodes + 1] - starts
    total = int(counts.sum())
    sums = np.zeros((len(nodes), base.shape[1]), dtype=base.dtype)
    if total:
        offsets = np.zeros(len(counts), dtype=np.int64)
        np.cumsum(counts[:-1], out=offsets[1:])
        flat = np.repeat(starts - offsets, counts) + np.arange(total, dtype=np.int64)
        gathered = base[g.neighbors[flat]]
        # reduceat yields garbage for empty segments; mask deg==0 rows after.
        seg_starts = np.minimum(offsets, total - 1)
        sums = np.add.reduceat(gathered, seg_starts, axis=0)
        sums[counts == 0] = 0.0
    return sums, counts


def _displacements(
    g: TransitionGraph,
    base: np.ndarray,
    nodes: np.ndarray,
    repellers: np.ndarray,
    cfg: EmbedConfig,
) -> np.ndarray:
    """Displacement of each node in ``nodes`` against the fixed base coords."""
    w = base[nodes]
    scale = 0.0
    if cfg.repulsion_strength > 0 and len(repellers):
        scale = (len(base) / len(repellers)) * cfg.repulsion_strength
    repulsion = np.zeros_like(w)
    for r in repellers:  # sorted; left-fold keeps floats order-independent of batching
        diff = w - base[r]
        dist = np.maximum(np.linalg.norm(diff, axis=1), cfg.epsilon)
        contrib = diff * (scale / (dist * dist))[:, None]
        contrib[nodes == r] = 0.0
        repulsion += contrib
    repulsion = _clamp(repulsion, cfg.alpha)

    sums, degs = _neighbor_sums(g, base, nodes)
    have = degs > 0
    if cfg.mode == HALF_JUMP:
        jump = np.zeros_like(w)
        centroid = np.zeros_like(w)
        centroid[have] = sums[have] / degs[have][:, None]
        jump[have] = (centroid[have] - w[have]) / 2.0
        disp = jump + repulsion
        if cfg.clamp_jump:
            disp = _clamp(disp, cfg.alpha)
        return disp
    attraction = sums - degs[:, None] * w
    attraction[~have] = 0.0
    return _clamp(attraction + repulsion, cfg.alpha)


def _sample_repellers(n: int, k: int, seed: int, iteration: int) -> np.ndarray:
    """Iteration t's repulsion set: k of n nodes, without replacement, sorted."""
    if k <= 0:
        return np.empty(0, dtype=np.int64)
    rng = _rng(seed, iteration + 1)
    return np.sort(rng.choice(n, size=k, replace=False).astype(np.int64))


def update_embeddings(
    base: EmbeddingSet, g: TransitionGraph, cfg: EmbedConfig
) -> EmbeddingSet:
    """One full simultaneous update from the base snapshot."""
    n = len(g)
    if n != len(base.ids):
        raise ValidationError("embedding does not cover the graph's node set")
    repellers = _sample_repellers(n, cfg.sample_size(n), base.seed, base.iteration)
    out = np.empty_like(base.coords)
    if cfg.workers <= 1 or n < 256:
        order = np.arange(n, dtype=np.int64)
        out[order] = _displacements(g, base.coords, order, repellers, cfg)
    else:
        chunks = np.array_split(np.arange(n, dtype=np.int64), cfg.workers)
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                (chunk, pool.submit(_displacements, g, base.coords, chunk, repellers, cfg))
                for chunk in chunks
                if len(chunk)
            ]
            for chunk, fut in futures:
                out[chunk] = fut.result()
    out += base.coords
    return base.with_coords(out, base.iteration + 1)


FrameCallback = Callable[[EmbeddingSet], None]


def embed(
    g: TransitionGraph,
    cfg: EmbedConfig,
    seed: int,
    frame_callback: FrameCallback | None = None,
    display_box: Sequence[tuple[float, float]] | None = None,
) -> EmbeddingSet:
    """Initialize, run cfg.iterations updates, rescale into the display box.

    The callback receives the raw (unscaled) snapshot at iteration 0 and after
    every update; the returned embedding is the final snapshot rescaled.
    """
    current = init_embeddings(g, cfg, seed)
    if frame_callback is not None:
        frame_callback(current)
    for _ in range(cfg.iterations):
        current = update_embeddings(current, g, cfg)
        if frame_callback is not None:
            frame_callback(current)
    if display_box is None:
        display_box = ((0.0, 100.0),) * cfg.dimension
    return rescale(current, display_box)


def rescale(
    e: EmbeddingSet, box: Sequence[tuple[float, float]]
) -> EmbeddingSet:
    """Uniformly scale and center the coordinates into the target box.

    A single scale factor per embedding (the tightest axis) preserves aspect
    ratio; axes with zero extent sit at the box center.  All-coincident input
    maps every point to the center.
    """
    if len(box) != e.dimension:
        raise ValidationError(f"box must have {e.dimension} axis ranges")
    lows = np.array([b[0] for b in box], dtype=np.float64)
    highs = np.array([b[1] for b in box], dtype=np.float64)
    if np.any(highs <= lows):
        raise ValidationError("box axes must be increasing pairs")
    coords = e.coords
    mins = coords.min(axis=0)
    maxs = coords.max(axis=0)
    spans = maxs - mins
    box_spans = highs - lows
    live = spans > 0
    if not np.any(live):
        out = np.tile((lows + highs) / 2.0, (len(coords), 1))
        return e.with_coords(out, e.iteration)
    scale = float(np.min(box_spans[live] / spans[live]))
    out = (coords - mins) * scale + lows + (box_spans - spans * scale) / 2.0
    return e.with_coords(out, e.iteration)


def knn_preservation(g: TransitionGraph, e: EmbeddingSet, k: int) -> float:
    """Mean fraction of each node's graph neighbors among its k nearest points.

    Isolated nodes are skipped; per-node denominator is min(k, degree) so a
    perfect drawing scores 1.0.  Distance ties break by node index.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    n = len(g)
    if n != len(e.ids):
        raise ValidationError("embedding does not cover the graph's node set")
    k = min(k, n - 1)
    if k == 0:
        return 0.0
    coords = e.coords
    scores: list[float] = []
    chunk = max(1, min(n, 2_000_000 // max(n, 1)))
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        block = np.arange(lo, hi)
        dists = np.linalg.norm(coords[block][:, None, :] - coords[None, :, :], axis=2)
        dists[np.arange(hi - lo), block] = np.inf
        nearest = np.argsort(dists, axis=1, kind="stable")[:, :k]
        for row, i in enumerate(block):
            deg = g.degree(i)
            if deg == 0:
                continue
            nbrs = set(g.neighbors_of(i).tolist())
            hits = len(nbrs.intersection(nearest[row].tolist()))
            scores.append(hits / min(k, deg))
    return float(np.mean(scores)) if scores else 0.0
