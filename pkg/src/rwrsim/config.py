"""Experiment configuration: flat key = value text, typed and diffable.

One file (or defaults) describes one command run.  Values are overridable by
command-line flags and mirrored environment variables; the canonical
rendering of the effective config is embedded in the run manifest so every
output is reproducible from the manifest alone.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path

__all__ = ["ExperimentConfig", "parse_config_text", "ConfigError", "COMMANDS"]

COMMANDS = (
    "walk-scaling",
    "schema-cf",
    "limit-selfsim",
    "tail-check",
    "holder-check",
    "feasible-sweep",
)


class ConfigError(ValueError):
    """Raised for unparseable or invalid experiment configuration."""


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_int_list(text: str) -> tuple:
    return tuple(int(p) for p in text.replace(",", " ").split())


def _parse_float_list(text: str) -> tuple:
    return tuple(float(p) for p in text.replace(",", " ").split())


@dataclass
class ExperimentConfig:
    """Every knob of every command; commands read the fields they use."""

    command: str = "walk-scaling"
    seed: int = 20240901
    workers: int = 1
    out: str = "out"
    strict: bool = False

    # model parameters
    alpha: float = 2.0
    beta: float = 2.0
    sigma: float = 1.0
    nu: float = 0.0
    walk_kind: str = "simple"
    scenery_kind: str = "stable"
    a_plus: float = 1.0
    a_minus: float = 1.0

    # schema parameters
    n: int = 4096
    copies: int = 64
    times: tuple = (1.0,)
    thetas: tuple = (0.25, 0.5, 1.0)
    replicas: int = 10000

    # walk-scaling parameters
    n_grid: tuple = (256, 512, 1024, 2048, 4096, 8192, 16384)
    slope_tol: float = 0.05
    dump_paths: int = 0

    # limit-process grid parameters
    dt_bits: int = 14          # dt = 2**-dt_bits
    dx_factor: float = 2.0     # dx = dx_factor * dt**(1/alpha)
    m_copies: int = 64
    oracle_reps: int = 3000
    cf_gap_tol: float = 3.0

    # limit-selfsim parameters
    ks_slack: float = 2.0

    # tail-check parameters
    u_levels: tuple = (0.02, 0.01, 0.005)
    constant_reps: int = 1500
    hill_k: int = 0            # 0 means the 1 percent depth rule
    hill_tol: float = 0.15
    ratio_tol: float = 0.1
    plateau_band: float = 2.0

    # holder-check parameters
    grid_bits: tuple = (8, 10)
    paths: int = 1000
    median_drift_tol: float = 0.25

    # feasible-sweep parameters
    sweep_count: int = 10000

    def __post_init__(self):
        for name in ("times", "thetas", "n_grid", "grid_bits", "u_levels"):
            setattr(self, name, tuple(getattr(self, name)))
        if self.command not in COMMANDS:
            raise ConfigError(
                f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.replicas < 1:
            raise ConfigError("replicas must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must fit an unsigned 64-bit integer")

    def canonical_text(self) -> str:
        """Stable key = value rendering (the manifest embeds this)."""
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(repr(x) if isinstance(x, float) else str(x) for x in v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif isinstance(v, float):
                v = repr(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {f.name: (list(v) if isinstance(v := getattr(self, f.name), tuple) else v)
                for f in fields(self)}


_FIELD_PARSERS = {
    "command": str,
    "walk_kind": str,
    "scenery_kind": str,
    "out": str,
    "strict": _parse_bool,
    "times": _parse_float_list,
    "thetas": _parse_float_list,
    "u_levels": _parse_float_list,
    "n_grid": _parse_int_list,
    "grid_bits": _parse_int_list,
}


def _coerce(name: str, text: str):
    known = {f.name: f for f in fields(ExperimentConfig)}
    if name not in known:
        raise ConfigError(f"unknown config key {name!r}")
    parser = _FIELD_PARSERS.get(name)
    if parser is not None:
        return parser(text)
    default = known[name].default
    if isinstance(default, bool):
        return _parse_bool(text)
    if isinstance(default, int):
        return int(text)
    if isinstance(default, float):
        return float(text)
    return text


def parse_config_text(text: str, base: ExperimentConfig | None = None,
                      ) -> ExperimentConfig:
    """Parse flat ``key = value`` lines over ``base`` (or the defaults)."""
    values = {} if base is None else {
        f.name: getattr(base, f.name) for f in fields(ExperimentConfig)}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        name, _, val = line.partition("=")
        name = name.strip()
        try:
            values[name] = _coerce(name, val.strip())
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {name}: {exc}") from exc
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path, base: ExperimentConfig | None = None,
                ) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text(), base=base)
