"""Max-Min Ant System for source->destination path search.

Ants build simple paths with the pseudo-random proportional choice rule,
weighting pheromone concentration (exponent alpha) against visibility, the
inverse edge length (exponent beta). Only the iteration-best or best-so-far
ant deposits pheromone, either a constant amount per arc (1/C for a tour of
length C) or an exponentially saturating amount (1/C)*(1 - exp(-t/T)) where
t is the arc's hop index along the tour or the global iteration count.
Trails are clamped into [tau_min, tau_max], initialized at tau_max, and
reinitialized after a stagnation window without improvement.

Note the choice-rule branch orientation: a uniform draw q <= q0 selects the
probabilistic branch and q > q0 the greedy argmax branch, so small q0 means
mostly greedy steps. This is intentional, if inverted relative to the common
convention, and q0 is calibrated accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .roadmap import Edge, RoadmapGraph, edge_key, is_connected

CONSTANT = "constant"
EXPONENTIAL = "exponential"
HOP = "hop"
ITERATION = "iteration"

_CONFIG_INT_FIELDS = {"num_ants", "use_best_so_far_every", "stagnation_window", "max_iterations"}
_CONFIG_FLOAT_FIELDS = {"alpha", "beta", "rho", "q0", "time_constant"}
_CONFIG_STR_FIELDS = {"deposition", "time_index"}
_CONFIG_BOUND_FIELDS = {"tau_min", "tau_max"}


@dataclass(frozen=True)
class MmasConfig:
    """Full parameter record for one run.

    tau_min/tau_max of None select automatic bounds: tau_max = 1/(rho * C)
    recomputed whenever the best-so-far length C improves, with
    tau_min = tau_max / (2n). Defaults follow the common MMAS settings
    plus the tuned deposition constants (alpha=0.5, beta=2.5, T=15).

    q0 is the threshold of the pseudo-random choice rule: a uniform draw
    q <= q0 samples the probability distribution, q > q0 takes the
    greedy argmax. The default keeps greedy steps rare (one step in
    ten); lowering q0 makes construction more exploitative.
    """

    alpha: float = 0.5
    beta: float = 2.5
    rho: float = 0.1
    q0: float = 0.9
    num_ants: int = 25
    deposition: str = EXPONENTIAL
    time_constant: float = 15.0
    time_index: str = HOP
    tau_min: float | None = None
    tau_max: float | None = None
    use_best_so_far_every: int = 25
    stagnation_window: int = 50
    max_iterations: int = 200

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise ValueError(f"rho must be in (0, 1), got {self.rho}")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"alpha and beta must be >= 0, got {self.alpha}, {self.beta}")
        if not 0 <= self.q0 <= 1:
            raise ValueError(f"q0 must be in [0, 1], got {self.q0}")
        if self.num_ants < 1:
            raise ValueError(f"need at least one ant, got {self.num_ants}")
        if self.deposition not in (CONSTANT, EXPONENTIAL):
            raise ValueError(f"unknown deposition rule {self.deposition!r}")
        if self.deposition == EXPONENTIAL and self.time_constant <= 0:
            raise ValueError(f"time_constant must be positive, got {self.time_constant}")
        if self.time_index not in (HOP, ITERATION):
            raise ValueError(f"unknown time_index {self.time_index!r}")
        if (self.tau_min is None) != (self.tau_max is None):
            raise ValueError("tau_min and tau_max must both be explicit or both auto")
        if self.tau_min is not None and not self.tau_min < self.tau_max:
            raise ValueError(f"need tau_min < tau_max, got [{self.tau_min}, {self.tau_max}]")
        for name in ("use_best_so_far_every", "stagnation_window", "max_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass
class TrailState:
    """Per-edge pheromone concentrations with their current clamp bounds."""

    tau: dict[Edge, float]
    tau_min: float
    tau_max: float

    @property
    def bounds(self) -> tuple[float, float]:
        return (self.tau_min, self.tau_max)


@dataclass(frozen=True)
class Tour:
    nodes: tuple[int, ...]
    length: float


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    iter_best: float
    best_so_far: float
    reinit: bool


@dataclass
class RunTrace:
    """Per-iteration history of one run plus the final best tour."""

    records: list[IterationRecord]
    best: Tour | None
    seed: int
    construction_failures: int = 0


def transition_scores(
    trails: TrailState,
    g: RoadmapGraph,
    current: int,
    visited: set[int],
    alpha: float,
    beta: float,
    eta_pow: dict[Edge, float] | None = None,
) -> dict[int, float]:
    """Unnormalized scores tau^alpha * eta^beta for each feasible neighbor.

    eta is the inverse edge weight. ``eta_pow`` may carry precomputed
    eta^beta values keyed by edge (a per-run cache); results are identical.
    """
    tau = trails.tau
    scores: dict[int, float] = {}
    if eta_pow is None:
        for v, w, key in g.neighbors[current]:
            if v not in visited:
                scores[v] = tau[key] ** alpha * (1.0 / w) ** beta
    else:
        for v, _, key in g.neighbors[current]:
            if v not in visited:
                scores[v] = tau[key] ** alpha * eta_pow[key]
    return scores


def _normalize(scores: dict[int, float]) -> dict[int, float]:
    total = 0.0
    for s in scores.values():
        total += s
    if total <= 0.0:
        # all-zero scores (e.g. tau_min = 0 everywhere): fall back to uniform
        p = 1.0 / len(scores)
        return {v: p for v in scores}
    return {v: s / total for v, s in scores.items()}


def transition_distribution(
    trails: TrailState,
    g: RoadmapGraph,
    current: int,
    visited: set[int],
    alpha: float,
    beta: float,
) -> dict[int, float]:
    """Choice probabilities over feasible neighbors; empty dict on a dead end."""
    scores = transition_scores(trails, g, current, visited, alpha, beta)
    if not scores:
        return {}
    return _normalize(scores)


def next_node(
    dist: dict[int, float],
    greedy_scores: dict[int, float],
    q: float,
    q0: float,
    rng: np.random.Generator,
) -> int:
    """Pick the next node: sample ``dist`` when q <= q0, else greedy argmax.

    Argmax ties break toward the smallest node id. q == q0 takes the
    probabilistic branch.
    """
    if not dist:
        raise ValueError("no feasible neighbor to choose from")
    if q <= q0:
        r = rng.random()
        acc = 0.0
        last = None
        for v in sorted(dist):
            acc += dist[v]
            last = v
            if r < acc:
                return v
        return last  # guards against accumulated rounding just under 1.0
    best_v = -1
    best_s = -math.inf
    for v, s in greedy_scores.items():
        if s > best_s or (s == best_s and v < best_v):
            best_v, best_s = v, s
    return best_v


def construct_path(
    g: RoadmapGraph,
    trails: TrailState,
    cfg: MmasConfig,
    src: int,
    dst: int,
    rng: np.random.Generator,
    on_distribution: Callable[[dict[int, float]], None] | None = None,
    eta_pow: dict[Edge, float] | None = None,
) -> Tour | None:
    """One ant's walk from src to dst; None if construction fails.

    Dead ends backtrack one step and leave the dead-end node infeasible for
    this ant. Failure (source exhausted) is only possible on graphs that are
    not connected.
    """
    path = [src]
    partial = [0.0]
    visited = {src}
    edges = g.edges
    while True:
        u = path[-1]
        if u == dst:
            return Tour(tuple(path), partial[-1])
        scores = transition_scores(trails, g, u, visited, cfg.alpha, cfg.beta, eta_pow)
        if not scores:
            path.pop()
            partial.pop()
            if not path:
                return None
            continue
        dist = _normalize(scores)
        if on_distribution is not None:
            on_distribution(dist)
        v = next_node(dist, scores, rng.random(), cfg.q0, rng)
        path.append(v)
        partial.append(partial[-1] + edges[edge_key(u, v)])
        visited.add(v)


def deposition_amount(kind: str, c_bs: float, t: float, T: float | None = None) -> float:
    """Pheromone added to one arc by the depositing ant.

    Constant: 1/c_bs. Exponential: (1/c_bs) * (1 - exp(-t/T)), where t is
    the arc's hop index (first arc t=1) or the iteration count depending on
    the configured time-index mode.
    """
    if c_bs <= 0:
        raise ValueError(f"tour length must be positive, got {c_bs}")
    if kind == CONSTANT:
        return 1.0 / c_bs
    if kind != EXPONENTIAL:
        raise ValueError(f"unknown deposition rule {kind!r}")
    if T is None or T <= 0:
        raise ValueError(f"exponential rule needs a positive time constant, got {T}")
    if t < 0:
        raise ValueError(f"time index must be >= 0, got {t}")
    return (1.0 / c_bs) * (1.0 - math.exp(-t / T))


def update_trails(
    trails: TrailState,
    g: RoadmapGraph,
    cfg: MmasConfig,
    depositing_tour: Tour | None,
    iteration: int,
) -> TrailState:
    """Evaporate every edge, deposit along the tour, clamp into bounds.

    A ``None`` tour applies evaporation and clamping only (used when no ant
    finished). Mutates and returns ``trails``.
    """
    deltas: dict[Edge, float] = {}
    if depositing_tour is not None:
        nodes = depositing_tour.nodes
        for hop in range(1, len(nodes)):
            t = hop if cfg.time_index == HOP else iteration
            key = edge_key(nodes[hop - 1], nodes[hop])
            deltas[key] = deposition_amount(
                cfg.deposition, depositing_tour.length, t, cfg.time_constant
            )
    keep = 1.0 - cfg.rho
    lo, hi = trails.tau_min, trails.tau_max
    tau = trails.tau
    for key, value in tau.items():
        value = keep * value
        if deltas:
            value += deltas.get(key, 0.0)
        if value < lo:
            value = lo
        elif value > hi:
            value = hi
        tau[key] = value
    return trails


def run(
    g: RoadmapGraph,
    cfg: MmasConfig,
    seed: int,
    on_distribution: Callable[[dict[int, float]], None] | None = None,
    on_iteration: Callable[[int, TrailState], None] | None = None,
) -> RunTrace:
    """Full MMAS run; a pure function of (graph, config, seed).

    Trails start at tau_max. Each iteration all ants construct paths; the
    iteration-best deposits, except every use_best_so_far_every-th iteration
    where the best-so-far tour deposits. After stagnation_window iterations
    without improvement trails reset to tau_max (the best tour is kept).
    The optional hooks observe every transition distribution and the trail
    state after each iteration.
    """
    if not is_connected(g):
        raise ValueError("graph must be connected")
    for key, w in g.edges.items():
        if w <= 0:
            raise ValueError(f"edge {key} has non-positive weight {w}")

    n = len(g.cities)
    rng = np.random.default_rng(seed)
    auto_bounds = cfg.tau_min is None
    if auto_bounds:
        tau_max = 1.0
        tau_min = tau_max / (2.0 * n)
    else:
        tau_min, tau_max = cfg.tau_min, cfg.tau_max
    trails = TrailState({key: tau_max for key in sorted(g.edges)}, tau_min, tau_max)
    eta_pow = {key: (1.0 / w) ** cfg.beta for key, w in g.edges.items()}

    best: Tour | None = None
    best_len = math.inf
    since_improve = 0
    failures = 0
    records: list[IterationRecord] = []

    for iteration in range(1, cfg.max_iterations + 1):
        iter_best: Tour | None = None
        for _ in range(cfg.num_ants):
            tour = construct_path(
                g, trails, cfg, g.source, g.destination, rng, on_distribution, eta_pow
            )
            if tour is None:
                failures += 1
            elif iter_best is None or tour.length < iter_best.length:
                iter_best = tour

        if iter_best is not None and iter_best.length < best_len:
            best = iter_best
            best_len = iter_best.length
            since_improve = 0
            if auto_bounds:
                trails.tau_max = 1.0 / (cfg.rho * best_len)
                trails.tau_min = trails.tau_max / (2.0 * n)
        else:
            since_improve += 1

        if iteration % cfg.use_best_so_far_every == 0 and best is not None:
            depositing = best
        else:
            depositing = iter_best if iter_best is not None else best
        update_trails(trails, g, cfg, depositing, iteration)

        reinit = False
        if since_improve >= cfg.stagnation_window:
            for key in trails.tau:
                trails.tau[key] = trails.tau_max
            since_improve = 0
            reinit = True

        records.append(
            IterationRecord(
                iteration,
                iter_best.length if iter_best is not None else math.inf,
                best_len,
                reinit,
            )
        )
        if on_iteration is not None:
            on_iteration(iteration, trails)

    return RunTrace(records, best, seed, failures)


def write_trace_csv(trace: RunTrace, path) -> None:
    """Export a trace as ``iteration,iter_best,best_so_far,reinit`` rows."""
    lines = ["iteration,iter_best,best_so_far,reinit"]
    for rec in trace.records:
        lines.append(
            f"{rec.iteration},{rec.iter_best!r},{rec.best_so_far!r},{int(rec.reinit)}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_config(path, base: MmasConfig | None = None) -> MmasConfig:
    """Read a key=value config file mirroring MmasConfig field names.

    Unknown keys are rejected. ``tau_min``/``tau_max`` accept the value
    ``auto``. Lines starting with ``#`` and blank lines are ignored; values
    given in ``base`` (default: MmasConfig()) fill unmentioned fields.
    """
    cfg = base if base is not None else MmasConfig()
    overrides: dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}: line {line_no}: expected key=value")
            key, _, value = text.partition("=")
            key = key.strip()
            value = value.strip()
            try:
                if key in _CONFIG_INT_FIELDS:
                    overrides[key] = int(value)
                elif key in _CONFIG_FLOAT_FIELDS:
                    overrides[key] = float(value)
                elif key in _CONFIG_STR_FIELDS:
                    overrides[key] = value
                elif key in _CONFIG_BOUND_FIELDS:
                    overrides[key] = None if value == "auto" else float(value)
                else:
                    raise ValueError(f"unknown config key {key!r}")
            except ValueError as exc:
                raise ValueError(f"{path}: line {line_no}: {exc}") from None
    return replace(cfg, **overrides)
