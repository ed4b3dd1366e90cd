"""Experiment harness: parameter sweeps, rule comparisons, corpus studies.

Layers seeded, repeatable experiment protocols over the ant-system
engine: (alpha, beta) grid sweeps scored by best path length and
convergence time against the exact shortest path, paired comparisons of
the constant and exponential deposition rules, and multi-roadmap corpus
studies that tabulate roadmap features against the best-performing
(alpha, beta) cell. Results serialize to CSV and to a JSON mirror with
identical field names; floats are written with repr so files round-trip
exactly and rerunning any protocol with the same inputs is
byte-identical, regardless of worker count.
"""

from __future__ import annotations

import json
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

from . import mmas, oracle
from .roadmap import RoadmapGraph, compute_features, generate_roadmap

DEFAULT_ALPHA_VALUES = (0.25, 0.5, 0.75, 1.0)
DEFAULT_BETA_VALUES = (1.0, 1.5, 2.0, 2.5, 3.0, 3.5)

DEFAULT_CORPUS_WIDTH = 20.0
DEFAULT_CORPUS_HEIGHT = 10.0
DEFAULT_CORPUS_RADIUS = 1.6


def convergence_time(trace: mmas.RunTrace, optimum: float, tol: float = 0.0) -> int | None:
    """First iteration whose best-so-far is within tol of the optimum.

    Returns the smallest iteration index i with
    best_so_far(i) <= optimum * (1 + tol), or None if the trace never
    gets that close.
    """
    if optimum <= 0:
        raise ValueError(f"optimum must be positive, got {optimum}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    threshold = optimum * (1.0 + tol)
    for rec in trace.records:
        if rec.best_so_far <= threshold:
            return rec.iteration
    return None


@dataclass(frozen=True)
class SweepCell:
    """Aggregates over seeds for one (alpha, beta) grid point.

    Convergence aggregates treat runs that never reach the optimum as
    infinite, so a cell where half the seeds stall has an infinite
    median.
    """

    alpha: float
    beta: float
    mean_length: float
    median_length: float
    mean_convergence: float
    median_convergence: float


@dataclass(frozen=True)
class SweepGrid:
    alpha_values: tuple[float, ...]
    beta_values: tuple[float, ...]
    cells: dict[tuple[float, float], SweepCell]
    seeds: tuple[int, ...]
    roadmap_id: str = ""

    @property
    def best_cell(self) -> SweepCell:
        """Argmin by median length, then median convergence, then (alpha, beta)."""
        return min(
            self.cells.values(),
            key=lambda c: (c.median_length, c.median_convergence, c.alpha, c.beta),
        )


def _run_summary(
    g: RoadmapGraph, optimum: float, tol: float, task: tuple[mmas.MmasConfig, int]
) -> tuple[float, float]:
    cfg, seed = task
    trace = mmas.run(g, cfg, seed)
    length = trace.best.length if trace.best is not None else math.inf
    conv = convergence_time(trace, optimum, tol)
    return length, float(conv) if conv is not None else math.inf


def _map_tasks(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def sweep(
    g: RoadmapGraph,
    base_cfg: mmas.MmasConfig,
    alpha_values=DEFAULT_ALPHA_VALUES,
    beta_values=DEFAULT_BETA_VALUES,
    seeds=(1, 2, 3, 4, 5),
    tol: float = 0.0,
    jobs: int = 1,
    roadmap_id: str = "",
) -> SweepGrid:
    """Run the engine on every (alpha, beta, seed) and aggregate per cell.

    The shortest-path optimum is computed once and shared by every
    cell's convergence statistics. Execution order (and therefore every
    output value) is fixed by sorting axes and seeds up front; jobs > 1
    distributes runs across processes without changing any result.
    """
    alphas = tuple(sorted(set(float(a) for a in alpha_values)))
    betas = tuple(sorted(set(float(b) for b in beta_values)))
    seeds = tuple(sorted(set(int(s) for s in seeds)))
    if not alphas or not betas or not seeds:
        raise ValueError("alpha_values, beta_values, and seeds must be nonempty")
    optimum = oracle.shortest_path(g, g.source, g.destination).length

    tasks = [
        (replace(base_cfg, alpha=a, beta=b), seed)
        for a in alphas
        for b in betas
        for seed in seeds
    ]
    results = _map_tasks(partial(_run_summary, g, optimum, tol), tasks, jobs)

    cells: dict[tuple[float, float], SweepCell] = {}
    per_seed = len(seeds)
    idx = 0
    for a in alphas:
        for b in betas:
            chunk = results[idx : idx + per_seed]
            idx += per_seed
            lengths = sorted(r[0] for r in chunk)
            convs = sorted(r[1] for r in chunk)
            cells[(a, b)] = SweepCell(
                a,
                b,
                statistics.fmean(lengths),
                statistics.median(lengths),
                statistics.fmean(convs),
                statistics.median(convs),
            )
    return SweepGrid(alphas, betas, cells, seeds, roadmap_id)


@dataclass(frozen=True)
class PairedRun:
    seed: int
    constant: mmas.RunTrace
    exponential: mmas.RunTrace
    constant_final: float
    exponential_final: float
    constant_convergence: int | None
    exponential_convergence: int | None


@dataclass(frozen=True)
class ComparisonReport:
    """Paired constant-vs-exponential runs on one roadmap.

    median_convergence and success_rate are keyed by rule name; a rule's
    success rate is the fraction of seeds that reached the optimum
    within tolerance. fraction_exponential_earlier counts pairs where
    the exponential rule converged in strictly fewer iterations (a pair
    where only the exponential rule converged counts; a pair where
    neither converged does not).
    """

    runs: tuple[PairedRun, ...]
    optimum: float
    tol: float
    median_final: dict[str, float]
    median_convergence: dict[str, float]
    success_rate: dict[str, float]
    fraction_exponential_earlier: float


def _run_trace(g: RoadmapGraph, task: tuple[mmas.MmasConfig, int]) -> mmas.RunTrace:
    cfg, seed = task
    return mmas.run(g, cfg, seed)


def compare_rules(
    g: RoadmapGraph,
    cfg_constant: mmas.MmasConfig,
    cfg_exponential: mmas.MmasConfig,
    seeds,
    tol: float = 0.0,
    jobs: int = 1,
) -> ComparisonReport:
    """Run both deposition rules on the same seeds and pair the results.

    The two configs must agree on every field other than the deposition
    rule itself (kind and time constant), so each seed's pair differs in
    the rule alone.
    """
    if cfg_constant.deposition != mmas.CONSTANT:
        raise ValueError(f"cfg_constant must use the constant rule, got {cfg_constant.deposition!r}")
    if cfg_exponential.deposition != mmas.EXPONENTIAL:
        raise ValueError(
            f"cfg_exponential must use the exponential rule, got {cfg_exponential.deposition!r}"
        )
    neutral = {"deposition": mmas.CONSTANT, "time_constant": 1.0}
    if replace(cfg_constant, **neutral) != replace(cfg_exponential, **neutral):
        raise ValueError("configs must be identical apart from the deposition rule")
    seeds = tuple(sorted(set(int(s) for s in seeds)))
    if not seeds:
        raise ValueError("seeds must be nonempty")

    optimum = oracle.shortest_path(g, g.source, g.destination).length
    tasks = [(cfg, seed) for seed in seeds for cfg in (cfg_constant, cfg_exponential)]
    traces = _map_tasks(partial(_run_trace, g), tasks, jobs)

    runs = []
    for i, seed in enumerate(seeds):
        const_trace = traces[2 * i]
        exp_trace = traces[2 * i + 1]
        runs.append(
            PairedRun(
                seed,
                const_trace,
                exp_trace,
                const_trace.best.length if const_trace.best else math.inf,
                exp_trace.best.length if exp_trace.best else math.inf,
                convergence_time(const_trace, optimum, tol),
                convergence_time(exp_trace, optimum, tol),
            )
        )

    def conv_values(attr: str) -> list[float]:
        out = []
        for r in runs:
            c = getattr(r, attr)
            out.append(float(c) if c is not None else math.inf)
        return sorted(out)

    const_conv = conv_values("constant_convergence")
    exp_conv = conv_values("exponential_convergence")
    earlier = 0
    for r in runs:
        c = r.constant_convergence if r.constant_convergence is not None else math.inf
        e = r.exponential_convergence if r.exponential_convergence is not None else math.inf
        if e < c:
            earlier += 1

    n = len(runs)
    return ComparisonReport(
        runs=tuple(runs),
        optimum=optimum,
        tol=tol,
        median_final={
            mmas.CONSTANT: statistics.median(sorted(r.constant_final for r in runs)),
            mmas.EXPONENTIAL: statistics.median(sorted(r.exponential_final for r in runs)),
        },
        median_convergence={
            mmas.CONSTANT: statistics.median(const_conv),
            mmas.EXPONENTIAL: statistics.median(exp_conv),
        },
        success_rate={
            mmas.CONSTANT: sum(1 for v in const_conv if math.isfinite(v)) / n,
            mmas.EXPONENTIAL: sum(1 for v in exp_conv if math.isfinite(v)) / n,
        },
        fraction_exponential_earlier=earlier / n,
    )


@dataclass(frozen=True)
class CorpusRow:
    cities: int
    density: float
    stddev: float
    best_alpha: float
    best_beta: float


def corpus_study(
    city_counts,
    distributions_per_count: int,
    base_cfg: mmas.MmasConfig,
    seeds,
    alpha_values=DEFAULT_ALPHA_VALUES,
    beta_values=DEFAULT_BETA_VALUES,
    width: float = DEFAULT_CORPUS_WIDTH,
    height: float = DEFAULT_CORPUS_HEIGHT,
    radius: float = DEFAULT_CORPUS_RADIUS,
    map_seed_base: int = 0,
    tol: float = 0.0,
    jobs: int = 1,
) -> list[CorpusRow]:
    """Sweep every generated roadmap and tabulate features vs best cell.

    For each city count, ``distributions_per_count`` roadmaps are
    generated (map seed = map_seed_base + 1000 * count + k) on a
    width x height rectangle with the given connection radius; each is
    swept over the (alpha, beta) grid and contributes one row. The
    default 20 x 10 rectangle has exactly 200 square units, so density
    equals the city count.
    """
    city_counts = tuple(int(c) for c in city_counts)
    if not city_counts or distributions_per_count < 1:
        raise ValueError("need at least one city count and one distribution")
    rows = []
    for count in city_counts:
        for k in range(distributions_per_count):
            g = generate_roadmap(count, width, height, radius, map_seed_base + 1000 * count + k)
            features = compute_features(g)
            grid = sweep(
                g, base_cfg, alpha_values, beta_values, seeds, tol=tol, jobs=jobs,
                roadmap_id=f"corpus-{count}-{k}",
            )
            best = grid.best_cell
            rows.append(
                CorpusRow(
                    count,
                    features.node_density,
                    features.min_arc_stddev,
                    best.alpha,
                    best.beta,
                )
            )
    return rows


def _fmt(value: float) -> str:
    return repr(float(value))


def write_sweep_csv(grid: SweepGrid, path) -> None:
    """Rows ``alpha,beta,median_length,median_convergence,seeds`` per cell.

    The seeds column joins the seed list with ';'. Values are written
    with repr so parsing them back reproduces the grid exactly.
    """
    seeds = ";".join(str(s) for s in grid.seeds)
    lines = ["alpha,beta,median_length,median_convergence,seeds"]
    for a in grid.alpha_values:
        for b in grid.beta_values:
            cell = grid.cells[(a, b)]
            lines.append(
                f"{_fmt(a)},{_fmt(b)},{_fmt(cell.median_length)},"
                f"{_fmt(cell.median_convergence)},{seeds}"
            )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sweep_csv(path) -> list[dict]:
    """Parse write_sweep_csv output back into row dicts (exact floats)."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["alpha", "beta", "median_length", "median_convergence", "seeds"]
        if header != expected:
            raise ValueError(f"{path}: unexpected header {header}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b, ml, mc, seeds = line.split(",")
            rows.append(
                {
                    "alpha": float(a),
                    "beta": float(b),
                    "median_length": float(ml),
                    "median_convergence": float(mc),
                    "seeds": [int(s) for s in seeds.split(";")],
                }
            )
    return rows


def write_sweep_json(grid: SweepGrid, path) -> None:
    """JSON mirror of write_sweep_csv with identical field names."""
    rows = [
        {
            "alpha": a,
            "beta": b,
            "median_length": grid.cells[(a, b)].median_length,
            "median_convergence": grid.cells[(a, b)].median_convergence,
            "seeds": list(grid.seeds),
        }
        for a in grid.alpha_values
        for b in grid.beta_values
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=2)
        fh.write("\n")


def write_comparison_csv(report: ComparisonReport, path) -> None:
    """Rows ``seed,rule,final_length,convergence_iter``, two per seed.

    A run that never converged leaves convergence_iter empty.
    """
    lines = ["seed,rule,final_length,convergence_iter"]
    for r in report.runs:
        for rule, final, conv in (
            (mmas.CONSTANT, r.constant_final, r.constant_convergence),
            (mmas.EXPONENTIAL, r.exponential_final, r.exponential_convergence),
        ):
            conv_text = str(conv) if conv is not None else ""
            lines.append(f"{r.seed},{rule},{_fmt(final)},{conv_text}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_comparison_csv(path) -> list[dict]:
    """Parse write_comparison_csv output back into row dicts."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["seed", "rule", "final_length", "convergence_iter"]
        if header != expected:
            raise ValueError(f"{path}: unexpected header {header}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            seed, rule, final, conv = line.split(",")
            rows.append(
                {
                    "seed": int(seed),
                    "rule": rule,
                    "final_length": float(final),
                    "convergence_iter": int(conv) if conv else None,
                }
            )
    return rows


def write_comparison_json(report: ComparisonReport, path) -> None:
    """JSON mirror of write_comparison_csv plus the summary block."""
    rows = []
    for r in report.runs:
        for rule, final, conv in (
            (mmas.CONSTANT, r.constant_final, r.constant_convergence),
            (mmas.EXPONENTIAL, r.exponential_final, r.exponential_convergence),
        ):
            rows.append(
                {"seed": r.seed, "rule": rule, "final_length": final, "convergence_iter": conv}
            )
    payload = {
        "optimum": report.optimum,
        "tol": report.tol,
        "median_final": report.median_final,
        "median_convergence": report.median_convergence,
        "success_rate": report.success_rate,
        "fraction_exponential_earlier": report.fraction_exponential_earlier,
        "runs": rows,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def write_corpus_csv(rows: list[CorpusRow], path) -> None:
    """Rows ``cities,density,stddev,best_alpha,best_beta``, one per roadmap."""
    lines = ["cities,density,stddev,best_alpha,best_beta"]
    for r in rows:
        lines.append(
            f"{r.cities},{_fmt(r.density)},{_fmt(r.stddev)},"
            f"{_fmt(r.best_alpha)},{_fmt(r.best_beta)}"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_corpus_csv(path) -> list[CorpusRow]:
    """Parse write_corpus_csv output back into CorpusRow values."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        expected = ["cities", "density", "stddev", "best_alpha", "best_beta"]
        if header != expected:
            raise ValueError(f"{path}: unexpected header {header}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            cities, density, stddev, ba, bb = line.split(",")
            rows.append(CorpusRow(int(cities), float(density), float(stddev), float(ba), float(bb)))
    return rows


def write_corpus_json(rows: list[CorpusRow], path) -> None:
    """JSON mirror of write_corpus_csv with identical field names."""
    payload = [
        {
            "cities": r.cities,
            "density": r.density,
            "stddev": r.stddev,
            "best_alpha": r.best_alpha,
            "best_beta": r.best_beta,
        }
        for r in rows
    ]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
