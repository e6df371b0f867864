"""Flat key=value experiment configuration with a typed schema.

A config file is one experiment: a ``command`` key naming the subcommand plus
that subcommand's parameters. Lines are ``key = value``; blank lines and
``#`` comments are ignored. Every key has a documented default; unknown keys
and type mismatches are rejected with the offending line number.
"""
from __future__ import annotations

from dataclasses import dataclass


class ConfigError(ValueError):
    """Malformed configuration; message carries a line-level diagnostic."""


@dataclass(frozen=True)
class Field:
    kind: str  # int | float | str | bool | int_list | float_list
    default: object
    help: str


SCHEMAS: dict[str, dict[str, Field]] = {
    "sample": {
        "graph_class": Field("str", "regular", "regular | planar | star"),
        "n_values": Field("int_list", [8, 16, 32], "vertex counts"),
        "d": Field("int", 3, "degree parameter for the generator"),
        "lambdas": Field("float_list", [1.0], "vertex weight parameters"),
        "alpha": Field("float", 0.0, "violating-edge fraction for early halt; 0 = full"),
        "max_rounds": Field("int", 0, "round cap per trial; 0 = uncapped"),
        "trials": Field("int", 100, "trials per (n, lambda) point"),
        "base_seed": Field("int", 0, "seed all trial streams derive from"),
        "out_prefix": Field("str", "sample", "output file prefix"),
        "svg": Field("bool", False, "also write a mean-rounds scaling plot"),
    },
    "qsim": {
        "graph_file": Field("str", "", "edge-list file; empty uses star_leaves"),
        "star_leaves": Field("int", 2, "star size when no graph file is given"),
        "lam": Field("float", 1.0, "vertex weight parameter"),
        "alpha": Field("float", 0.0, "early-halt fraction; 0 = full"),
        "max_rounds": Field("int", 0, "round cap; 0 = uncapped"),
        "trials": Field("int", 200, "number of preparation runs"),
        "base_seed": Field("int", 0, "seed"),
        "ancilla_mode": Field("str", "implicit", "implicit | explicit"),
        "out_prefix": Field("str", "qsim", "output file prefix"),
    },
    "stabilizer": {
        "predicate": Field("str", "is-edge", "is-edge | one-hot-K | file"),
        "truth_table_file": Field("str", "", "0/1 lines when predicate = file"),
        "kind": Field("str", "stabilizer", "stabilizer | syndrome"),
        "out_prefix": Field("str", "", "output file prefix; empty prints to stdout"),
    },
    "adiabatic": {
        "graph_file": Field("str", "", "edge-list file; empty uses star_leaves"),
        "star_leaves": Field("int", 4, "star size when no graph file is given"),
        "n_steps_list": Field("int_list", [16, 64, 256], "Trotter step counts"),
        "total_time": Field("float", 0.0, "evolution time; 0 = n^2"),
        "delta": Field("float", 1.0, "constraint energy scale"),
        "qsc": Field("str", "both", "off | on | both"),
        "qsc_interval": Field("int", 0, "steps between correction rounds; 0 = auto"),
        "theta_convention": Field("str", "linear", "linear | quadratic"),
        "phi_convention": Field("str", "linear", "linear | quadratic"),
        "trials": Field("int", 24, "trajectories averaged for corrected runs"),
        "base_seed": Field("int", 0, "seed"),
        "out_prefix": Field("str", "adiabatic", "output file prefix"),
    },
    "plot": {
        "summary_csv": Field("str", "", "summary file produced by sample"),
        "log_x": Field("bool", True, "logarithmic x axis"),
        "log_y": Field("bool", True, "logarithmic y axis"),
        "out_prefix": Field("str", "plot", "output file prefix"),
    },
}


def _parse_value(kind: str, raw: str, line_no: int, key: str) -> object:
    def fail(expected: str) -> ConfigError:
        return ConfigError(f"line {line_no}: key {key!r} expects {expected}, got {raw!r}")

    raw = raw.strip()
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "str":
            return raw
        if kind == "bool":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise fail("true/false")
        if kind == "int_list":
            return [int(v) for v in raw.split(",") if v.strip()]
        if kind == "float_list":
            return [float(v) for v in raw.split(",") if v.strip()]
    except ValueError as exc:
        raise fail(kind) from exc
    raise ConfigError(f"unknown field kind {kind!r}")


def parse_config_text(text: str) -> tuple[str, dict[str, object]]:
    """Parse a config document; returns (command, fully defaulted params)."""
    entries: dict[str, tuple[str, int]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {line_no}: expected 'key = value'")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key in entries:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        entries[key] = (raw, line_no)
    if "command" not in entries:
        raise ConfigError("config must set 'command'")
    command, cmd_line = entries.pop("command")
    if command not in SCHEMAS:
        raise ConfigError(
            f"line {cmd_line}: unknown command {command!r}; "
            f"expected one of {sorted(SCHEMAS)}"
        )
    schema = SCHEMAS[command]
    params = {key: field.default for key, field in schema.items()}
    for key, (raw, line_no) in entries.items():
        if key not in schema:
            raise ConfigError(f"line {line_no}: unknown key {key!r} for {command}")
        params[key] = _parse_value(schema[key].kind, raw, line_no, key)
    return command, params


def load_config(path: str) -> tuple[str, dict[str, object]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


def describe_schema(command: str) -> str:
    schema = SCHEMAS[command]
    lines = [f"command = {command}"]
    for key, field in schema.items():
        lines.append(f"{key} ({field.kind}, default {field.default!r}): {field.help}")
    return "\n".join(lines)
