"""Batch experiment drivers: seeded trial grids, CSV emission, summaries.

One trial = one freshly drawn random graph plus one sampling run on it. Every
trial's RNG streams derive from (base_seed, experiment key, trial index), so
results never depend on execution order and adding parameter points leaves
existing trials untouched.
"""
from __future__ import annotations

import csv
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .adiabatic import AdiabaticResult, Schedule, run_trotter
from .graphs import Graph, gen_bounded_planar, gen_regular, gen_star
from .prs import HALTED_CAP, HaltCondition, sample_once
from .seeds import derive_seed

RECORD_COLUMNS = (
    "graph_class",
    "n",
    "d",
    "lambda",
    "alpha",
    "seed",
    "trial",
    "rounds",
    "halted_by",
)

SUMMARY_COLUMNS = (
    "graph_class",
    "n",
    "d",
    "lambda",
    "alpha",
    "mean_rounds",
    "median_rounds",
    "censored_count",
    "trials",
)


@dataclass(frozen=True)
class RuntimeRecord:
    graph_class: str
    n: int
    d: int
    lam: float
    alpha: float
    seed: int
    trial: int
    rounds: int
    halted_by: str


@dataclass(frozen=True)
class SummaryRow:
    graph_class: str
    n: int
    d: int
    lam: float
    alpha: float
    mean_rounds: float | None
    median_rounds: float | None
    censored_count: int
    trials: int


def make_graph(graph_class: str, n: int, d: int, seed: int) -> Graph:
    if graph_class == "regular":
        return gen_regular(n, d, seed)
    if graph_class == "planar":
        return gen_bounded_planar(n, d, seed)
    if graph_class == "star":
        return gen_star(n - 1)
    raise ValueError(f"unknown graph class {graph_class!r}")


def run_experiment(
    graph_class: str,
    n_values: list[int],
    d: int,
    lam: float,
    halt: HaltCondition,
    trials_per_point: int,
    base_seed: int,
    threads: int = 1,
) -> list[RuntimeRecord]:
    def one_trial(point: tuple[int, int]) -> RuntimeRecord:
        n, trial = point
        key = (base_seed, graph_class, n, d, lam, halt.alpha, trial)
        graph_seed = derive_seed(*key, "graph")
        sample_seed = derive_seed(*key, "sample")
        g = make_graph(graph_class, n, d, graph_seed)
        result = sample_once(g, lam, halt, sample_seed)
        return RuntimeRecord(
            graph_class=graph_class,
            n=n,
            d=d,
            lam=lam,
            alpha=halt.alpha,
            seed=sample_seed,
            trial=trial,
            rounds=result.rounds,
            halted_by=result.halted_by,
        )

    points = [(n, t) for n in n_values for t in range(trials_per_point)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one_trial, points))
    return [one_trial(p) for p in points]


def summarize(records: list[RuntimeRecord]) -> list[SummaryRow]:
    """Group by (n, d, lambda, alpha); censored trials are excluded from the
    mean and median and reported in their own column."""
    groups: dict[tuple, list[RuntimeRecord]] = {}
    for r in records:
        groups.setdefault((r.graph_class, r.n, r.d, r.lam, r.alpha), []).append(r)
    rows = []
    for key in sorted(groups, key=lambda k: (k[0], k[1], k[2], k[3], k[4])):
        recs = groups[key]
        finished = [r.rounds for r in recs if r.halted_by != HALTED_CAP]
        censored = len(recs) - len(finished)
        rows.append(
            SummaryRow(
                graph_class=key[0],
                n=key[1],
                d=key[2],
                lam=key[3],
                alpha=key[4],
                mean_rounds=statistics.fmean(finished) if finished else None,
                median_rounds=float(statistics.median(finished)) if finished else None,
                censored_count=censored,
                trials=len(recs),
            )
        )
    return rows


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_records_csv(records: list[RuntimeRecord], path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for r in records:
            writer.writerow(
                [
                    r.graph_class,
                    r.n,
                    r.d,
                    _fmt(r.lam),
                    _fmt(r.alpha),
                    r.seed,
                    r.trial,
                    r.rounds,
                    r.halted_by,
                ]
            )


def write_summary_csv(rows: list[SummaryRow], path: str) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for r in rows:
            writer.writerow(
                [
                    r.graph_class,
                    r.n,
                    r.d,
                    _fmt(r.lam),
                    _fmt(r.alpha),
                    _fmt(r.mean_rounds),
                    _fmt(r.median_rounds),
                    r.censored_count,
                    r.trials,
                ]
            )


def read_summary_csv(path: str) -> list[SummaryRow]:
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            rows.append(
                SummaryRow(
                    graph_class=row["graph_class"],
                    n=int(row["n"]),
                    d=int(row["d"]),
                    lam=float(row["lambda"]),
                    alpha=float(row["alpha"]),
                    mean_rounds=float(row["mean_rounds"]) if row["mean_rounds"] else None,
                    median_rounds=(
                        float(row["median_rounds"]) if row["median_rounds"] else None
                    ),
                    censored_count=int(row["censored_count"]),
                    trials=int(row["trials"]),
                )
            )
    return rows


# --- adiabatic sweeps ---------------------------------------------------------

ADIABATIC_BASE_COLUMNS = ("n_steps", "qsc", "figure_of_merit", "non_is_weight", "recoveries")


@dataclass(frozen=True)
class AdiabaticSweepRow:
    n_steps: int
    qsc: str  # "off" or "on"
    figure_of_merit: float
    non_is_weight: float
    recoveries: float
    size_probs: dict[int, float]


def averaged_qsc_result(
    g: Graph,
    sched: Schedule,
    trials: int,
    base_seed: int,
) -> AdiabaticSweepRow:
    """Trajectory-averaged law of the corrected run."""
    table = {k: 0.0 for k in range(g.n + 1)}
    bad = 0.0
    fom = 0.0
    recoveries = 0
    for trial in range(trials):
        seed = derive_seed(base_seed, "qsc-trial", sched.n_steps, trial)
        result = run_trotter(g, sched, qsc=True, seed=seed)
        for k, p in result.size_probs.items():
            table[k] += p
        bad += result.non_is_weight
        fom += result.figure_of_merit
        recoveries += len(result.recovery_log)
    return AdiabaticSweepRow(
        n_steps=sched.n_steps,
        qsc="on",
        figure_of_merit=fom / trials,
        non_is_weight=bad / trials,
        recoveries=recoveries / trials,
        size_probs={k: v / trials for k, v in table.items()},
    )


def bare_result_row(result: AdiabaticResult, n_steps: int) -> AdiabaticSweepRow:
    return AdiabaticSweepRow(
        n_steps=n_steps,
        qsc="off",
        figure_of_merit=result.figure_of_merit,
        non_is_weight=result.non_is_weight,
        recoveries=0.0,
        size_probs=dict(result.size_probs),
    )


def adiabatic_sweep(
    g: Graph,
    sched_base: Schedule,
    n_steps_list: list[int],
    qsc_mode: str,
    trials: int,
    base_seed: int,
) -> list[AdiabaticSweepRow]:
    from dataclasses import replace

    rows: list[AdiabaticSweepRow] = []
    for n_steps in n_steps_list:
        sched = replace(sched_base, n_steps=n_steps).resolve(g)
        if qsc_mode in ("off", "both"):
            rows.append(bare_result_row(run_trotter(g, sched, qsc=False), n_steps))
        if qsc_mode in ("on", "both"):
            rows.append(averaged_qsc_result(g, sched, trials, base_seed))
    return rows


def size_table_tv(a: dict[int, float], b: dict[int, float]) -> float:
    """Total-variation distance between per-size tables; leftover (non-IS)
    mass is compared as its own bucket."""
    keys = sorted(set(a) | set(b))
    tv = sum(abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys)
    rest_a = 1.0 - sum(a.values())
    rest_b = 1.0 - sum(b.values())
    return 0.5 * (tv + abs(rest_a - rest_b))


def write_adiabatic_csv(rows: list[AdiabaticSweepRow], n: int, path: str) -> None:
    columns = list(ADIABATIC_BASE_COLUMNS) + [f"p_size_{k}" for k in range(n + 1)]
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow(
                [
                    r.n_steps,
                    r.qsc,
                    _fmt(r.figure_of_merit),
                    _fmt(r.non_is_weight),
                    _fmt(r.recoveries),
                ]
                + [_fmt(r.size_probs.get(k, 0.0)) for k in range(n + 1)]
            )
