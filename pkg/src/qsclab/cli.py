"""Command-line front end.

Subcommands: sample, qsim, stabilizer, adiabatic, plot. Every flag mirrors a
config-file key; a config supplies values under their flag names, and flags
given on the command line win. Exit codes: 0 success, 2 configuration error,
3 runtime guard violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from .adiabatic import Schedule, ScheduleError
from .config import SCHEMAS, ConfigError, load_config
from .experiments import (
    adiabatic_sweep,
    run_experiment,
    summarize,
    write_adiabatic_csv,
    write_records_csv,
    write_summary_csv,
    read_summary_csv,
)
from .graphs import Graph, GraphError, gen_star, load_graph
from .prs import HaltCondition, SamplerError
from .qsc import prepare_distribution, round_distribution_equivalence
from .qsc import check_alpha_halt_structure, non_is_weight, verify_gibbs_law
from .seeds import derive_seed
from .stabilizers import (
    Constraint,
    ConstraintError,
    build_stabilizer,
    build_syndrome_unitary,
    format_matrix,
    is_edge_constraint,
    load_truth_table,
    one_hot_constraint,
)
from .statevec import SimulationError
from .svgplot import AxesSpec, PlotError, Series, emit_svg

GUARD_ERRORS = (
    GraphError,
    SamplerError,
    ScheduleError,
    ConstraintError,
    SimulationError,
    PlotError,
)


def _add_schema_flags(parser: argparse.ArgumentParser, command: str) -> None:
    for key, field in SCHEMAS[command].items():
        flag = "--" + key.replace("_", "-")
        if field.kind == "bool":
            parser.add_argument(
                flag, dest=key, action=argparse.BooleanOptionalAction, default=None,
                help=field.help,
            )
        elif field.kind == "int":
            parser.add_argument(flag, dest=key, type=int, default=None, help=field.help)
        elif field.kind == "float":
            parser.add_argument(flag, dest=key, type=float, default=None, help=field.help)
        elif field.kind == "int_list":
            parser.add_argument(
                flag, dest=key, default=None, help=field.help + " (comma-separated)",
                type=lambda raw: [int(v) for v in raw.split(",") if v.strip()],
            )
        elif field.kind == "float_list":
            parser.add_argument(
                flag, dest=key, default=None, help=field.help + " (comma-separated)",
                type=lambda raw: [float(v) for v in raw.split(",") if v.strip()],
            )
        else:
            parser.add_argument(flag, dest=key, default=None, help=field.help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsclab",
        description="Sampling and adiabatic optimization over independent sets",
    )
    parser.add_argument("--config", default=None, help="config file; sets the command")
    parser.add_argument("--seed", type=int, default=None, help="override base_seed")
    parser.add_argument("--out-dir", default=".", help="directory for output files")
    parser.add_argument("--threads", type=int, default=1, help="parallel trial workers")
    sub = parser.add_subparsers(dest="command")
    for command in SCHEMAS:
        _add_schema_flags(sub.add_parser(command), command)
    return parser


def _effective_params(args: argparse.Namespace) -> tuple[str, dict]:
    command = args.command
    params: dict[str, object] = {}
    if args.config is not None:
        file_command, params = load_config(args.config)
        if command is not None and command != file_command:
            raise ConfigError(
                f"config command {file_command!r} does not match CLI command {command!r}"
            )
        command = file_command
    if command is None:
        raise ConfigError("no command given; pass a subcommand or --config")
    merged = {key: field.default for key, field in SCHEMAS[command].items()}
    merged.update(params)
    for key in SCHEMAS[command]:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if args.seed is not None and "base_seed" in merged:
        merged["base_seed"] = args.seed
    return command, merged


def _out_path(out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


def _halt_from(params: dict) -> HaltCondition:
    cap = int(params["max_rounds"]) or None
    return HaltCondition(alpha=float(params["alpha"]), max_rounds=cap)


def _graph_from(params: dict) -> Graph:
    if params.get("graph_file"):
        return load_graph(str(params["graph_file"]))
    return gen_star(int(params["star_leaves"]))


def _cmd_sample(params: dict, out_dir: str, threads: int) -> int:
    halt = _halt_from(params)
    records = []
    for lam in params["lambdas"]:
        records.extend(
            run_experiment(
                graph_class=str(params["graph_class"]),
                n_values=list(params["n_values"]),
                d=int(params["d"]),
                lam=float(lam),
                halt=halt,
                trials_per_point=int(params["trials"]),
                base_seed=int(params["base_seed"]),
                threads=threads,
            )
        )
    prefix = str(params["out_prefix"])
    write_records_csv(records, _out_path(out_dir, f"{prefix}_records.csv"))
    rows = summarize(records)
    write_summary_csv(rows, _out_path(out_dir, f"{prefix}_summary.csv"))
    if params["svg"]:
        svg = _summary_svg(rows)
        with open(_out_path(out_dir, f"{prefix}.svg"), "w", encoding="utf-8") as fh:
            fh.write(svg)
    return 0


def _summary_svg(rows) -> str:
    by_lam: dict[float, list[tuple[float, float]]] = {}
    for r in rows:
        if r.mean_rounds is not None:
            by_lam.setdefault(r.lam, []).append((float(r.n), r.mean_rounds))
    series = [
        Series(label=f"lam={lam:g}", points=sorted(pts))
        for lam, pts in sorted(by_lam.items())
    ]
    axes = AxesSpec(
        x_label="graph size n", y_label="mean rounds", log_x=True, log_y=True,
        title="resampling rounds vs graph size",
    )
    return emit_svg(series, axes)


def _cmd_qsim(params: dict, out_dir: str, threads: int) -> int:
    g = _graph_from(params)
    lam = float(params["lam"])
    halt = _halt_from(params)
    trials = int(params["trials"])
    base_seed = int(params["base_seed"])
    mode = str(params["ancilla_mode"])
    histogram: dict[int, int] = {}
    structure_ok = 0
    structure_applicable = 0
    for trial in range(trials):
        result = prepare_distribution(
            g, lam, halt, derive_seed(base_seed, "qsim", trial), ancilla_mode=mode
        )
        histogram[result.rounds] = histogram.get(result.rounds, 0) + 1
        if halt.alpha > 0 and result.halted_by in ("alpha", "full"):
            structure_applicable += 1
            structure_ok += int(check_alpha_halt_structure(result, g))
    report: dict[str, object] = {
        "n": g.n,
        "edges": g.num_edges,
        "lam": lam,
        "alpha": halt.alpha,
        "ancilla_mode": mode,
        "trials": trials,
        "rounds_histogram": {str(k): v for k, v in sorted(histogram.items())},
        "mean_rounds": sum(k * v for k, v in histogram.items()) / trials,
    }
    if halt.alpha == 0.0 and halt.max_rounds is None and g.n <= 14:
        law_run = prepare_distribution(
            g, lam, halt, derive_seed(base_seed, "qsim", "law"), ancilla_mode=mode
        )
        report["max_law_deviation"] = verify_gibbs_law(law_run, g, lam)
        report["non_is_weight"] = non_is_weight(law_run, g)
        equiv = round_distribution_equivalence(
            g, lam, trials, derive_seed(base_seed, "qsim", "equiv")
        )
        report["round_equivalence_p"] = equiv.p_value
    if halt.alpha > 0:
        report["alpha_structure_pass_fraction"] = (
            structure_ok / structure_applicable if structure_applicable else None
        )
    prefix = str(params["out_prefix"])
    path = _out_path(out_dir, f"{prefix}_report.json")
    with open(path, "w", encoding="ascii") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(path)
    return 0


def _constraint_from(params: dict) -> Constraint:
    name = str(params["predicate"])
    if name == "is-edge":
        return is_edge_constraint()
    if name.startswith("one-hot-"):
        return one_hot_constraint(int(name.removeprefix("one-hot-")))
    if name == "file":
        table_path = str(params["truth_table_file"])
        if not table_path:
            raise ConfigError("predicate = file needs truth_table_file")
        with open(table_path, "r", encoding="ascii") as fh:
            return load_truth_table(fh, table_path)
    raise ConfigError(f"unknown predicate {name!r}")


def _cmd_stabilizer(params: dict, out_dir: str, threads: int) -> int:
    c = _constraint_from(params)
    kind = str(params["kind"])
    if kind == "stabilizer":
        text = format_matrix(build_stabilizer(c).matrix)
    elif kind == "syndrome":
        text = format_matrix(build_syndrome_unitary(c).matrix)
    else:
        raise ConfigError(f"unknown kind {kind!r}")
    prefix = str(params["out_prefix"])
    if prefix:
        path = _out_path(out_dir, f"{prefix}_{kind}.txt")
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
        print(path)
    else:
        print(text)
    return 0


def _cmd_adiabatic(params: dict, out_dir: str, threads: int) -> int:
    g = _graph_from(params)
    sched = Schedule(
        total_time=float(params["total_time"]) or None,
        delta=float(params["delta"]),
        theta_convention=str(params["theta_convention"]),
        phi_convention=str(params["phi_convention"]),
        qsc_interval=int(params["qsc_interval"]) or None,
    )
    rows = adiabatic_sweep(
        g,
        sched,
        n_steps_list=list(params["n_steps_list"]),
        qsc_mode=str(params["qsc"]),
        trials=int(params["trials"]),
        base_seed=int(params["base_seed"]),
    )
    prefix = str(params["out_prefix"])
    write_adiabatic_csv(rows, g.n, _out_path(out_dir, f"{prefix}.csv"))
    return 0


def _cmd_plot(params: dict, out_dir: str, threads: int) -> int:
    path = str(params["summary_csv"])
    if not path:
        raise ConfigError("plot needs summary_csv")
    rows = read_summary_csv(path)
    svg = _summary_svg(rows)
    prefix = str(params["out_prefix"])
    out = _out_path(out_dir, f"{prefix}.svg")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(out)
    return 0


_COMMANDS = {
    "sample": _cmd_sample,
    "qsim": _cmd_qsim,
    "stabilizer": _cmd_stabilizer,
    "adiabatic": _cmd_adiabatic,
    "plot": _cmd_plot,
}


def run_config(
    path: str,
    out_dir: str = ".",
    seed: int | None = None,
    threads: int = 1,
) -> int:
    """Execute the experiment a config file describes; artifacts land in
    out_dir. Identical config and seed produce byte-identical artifacts."""
    command, params = load_config(path)
    if seed is not None and "base_seed" in params:
        params["base_seed"] = seed
    return _COMMANDS[command](params, out_dir, threads)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        command, params = _effective_params(args)
        return _COMMANDS[command](params, args.out_dir, args.threads)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except GUARD_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
