"""Run configuration: defaults, flat config files and command-line flags.

Precedence: flags override config-file values override built-in defaults.
The defaults are the standard operating point of the engine
(gx_hot = 1.01, gx_cold = 1, gy_hot = 0.01, gy_cold = 0.02, T_hot = 0.4,
T_cold = 0.1, both scaling modes, N in [1, 60]).  Config files are flat
``key = value`` lines with ``#`` comments; keys match flag names with
underscores.  Unknown keys and malformed values are rejected with the
offending token.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .cycle import EngineParams
from .errors import ConflictingModes, MalformedValue, UnknownFlag
from .spins import CouplingPair, ScalingMode

__all__ = ["RunConfig", "parse_config", "SUBCOMMANDS"]

SUBCOMMANDS = ("cycle", "sweep", "interference", "geometry", "squeezed",
               "figure")

_MODES = ("extensive", "nonextensive", "both")
_FORMATS = ("csv", "json", "svg")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str = ""
    gamma_x_high: float = 1.01
    gamma_y_high: float = 0.01
    gamma_x_low: float = 1.0
    gamma_y_low: float = 0.02
    t_hot: float = 0.4
    t_cold: float = 0.1
    mode: str = "both"
    n_from: int = 1
    n_to: int = 60
    twice_s: int = 16
    out_dir: str = "out"
    formats: tuple = ("csv", "json", "svg")
    grid: tuple = (2048, 4096)
    seed: int | None = None           # reserved; all paths deterministic
    squeeze: float = 1.0
    k_max: int = 100
    preset: str = ""

    def engine_params(self, mode: ScalingMode) -> EngineParams:
        return EngineParams(
            hot=CouplingPair(self.gamma_x_high, self.gamma_y_high),
            cold=CouplingPair(self.gamma_x_low, self.gamma_y_low),
            t_hot=self.t_hot,
            t_cold=self.t_cold,
            mode=mode,
        )

    def modes(self) -> tuple:
        if self.mode == "both":
            return (ScalingMode.NON_EXTENSIVE, ScalingMode.EXTENSIVE)
        if self.mode == "extensive":
            return (ScalingMode.EXTENSIVE,)
        return (ScalingMode.NON_EXTENSIVE,)

    def meta(self) -> tuple:
        """Complete effective parameter set, echoed into every output."""
        pairs = [
            ("subcommand", self.subcommand),
            ("gamma_x_high", f"{self.gamma_x_high:.12g}"),
            ("gamma_y_high", f"{self.gamma_y_high:.12g}"),
            ("gamma_x_low", f"{self.gamma_x_low:.12g}"),
            ("gamma_y_low", f"{self.gamma_y_low:.12g}"),
            ("t_hot", f"{self.t_hot:.12g}"),
            ("t_cold", f"{self.t_cold:.12g}"),
            ("mode", self.mode),
            ("n_from", str(self.n_from)),
            ("n_to", str(self.n_to)),
            ("twice_s", str(self.twice_s)),
            ("formats", ",".join(self.formats)),
            ("grid", f"{self.grid[0]}x{self.grid[1]}"),
            ("seed", "" if self.seed is None else str(self.seed)),
            ("squeeze", f"{self.squeeze:.12g}"),
            ("k_max", str(self.k_max)),
        ]
        if self.preset:
            pairs.append(("preset", self.preset))
        return tuple(pairs)


def _parse_float(key, text):
    try:
        return float(text)
    except ValueError:
        raise MalformedValue(f"{key}: {text!r} is not a number") from None


def _parse_int(key, text):
    try:
        return int(text)
    except ValueError:
        raise MalformedValue(f"{key}: {text!r} is not an integer") from None


def _parse_formats(key, text):
    parts = tuple(p for p in text.split(",") if p)
    for p in parts:
        if p not in _FORMATS:
            raise MalformedValue(f"{key}: unknown format {p!r}")
    if not parts:
        raise MalformedValue(f"{key}: empty format list")
    return parts


def _parse_grid(key, text):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise MalformedValue(f"{key}: expected THETAxPHI, got {text!r}")
    n_theta = _parse_int(key, parts[0])
    n_phi = _parse_int(key, parts[1])
    if n_theta < 2 or n_phi < 4:
        raise MalformedValue(f"{key}: grid {text!r} too coarse")
    return (n_theta, n_phi)


def _parse_mode(key, text):
    if text not in _MODES:
        raise MalformedValue(
            f"{key}: {text!r} not one of {', '.join(_MODES)}"
        )
    return text


_FIELD_PARSERS = {
    "gamma_x_high": _parse_float,
    "gamma_y_high": _parse_float,
    "gamma_x_low": _parse_float,
    "gamma_y_low": _parse_float,
    "t_hot": _parse_float,
    "t_cold": _parse_float,
    "mode": _parse_mode,
    "n_from": _parse_int,
    "n_to": _parse_int,
    "twice_s": _parse_int,
    "out_dir": str,
    "formats": _parse_formats,
    "grid": _parse_grid,
    "seed": _parse_int,
    "squeeze": _parse_float,
    "k_max": _parse_int,
}

_FLAG_TO_FIELD = {"--" + k.replace("_", "-"): k for k in _FIELD_PARSERS}
_FLAG_TO_FIELD["--out"] = "out_dir"


def _read_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise MalformedValue(f"config file {path}: {exc}") from None
    values = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        key, sep, value = text.partition("=")
        if not sep:
            raise MalformedValue(f"{path}:{lineno}: expected 'key = value'")
        key = key.strip()
        value = value.strip()
        if key not in _FIELD_PARSERS:
            raise UnknownFlag(f"{path}:{lineno}: unknown key {key!r}")
        parser = _FIELD_PARSERS[key]
        values[key] = parser(key, value) if parser is not str else value
    return values


def parse_config(argv) -> RunConfig:
    """Build a RunConfig from CLI tokens (without the program name)."""
    argv = list(argv)
    if not argv:
        raise UnknownFlag("missing subcommand; expected one of "
                          + ", ".join(SUBCOMMANDS))
    subcommand = argv.pop(0)
    if subcommand in ("-h", "--help"):
        raise UnknownFlag("help")
    if subcommand not in SUBCOMMANDS:
        raise UnknownFlag(f"unknown subcommand {subcommand!r}")

    preset = ""
    if subcommand == "figure":
        if not argv or argv[0].startswith("--"):
            raise MalformedValue("figure: missing preset name")
        preset = argv.pop(0)

    flag_values: dict = {}
    mode_tokens: list = []
    config_path = None
    i = 0
    while i < len(argv):
        token = argv[i]
        if not token.startswith("--"):
            raise UnknownFlag(f"unexpected argument {token!r}")
        if token == "--config":
            if i + 1 >= len(argv):
                raise MalformedValue("--config: missing path")
            config_path = argv[i + 1]
            i += 2
            continue
        if token not in _FLAG_TO_FIELD:
            raise UnknownFlag(f"unknown flag {token!r}")
        if i + 1 >= len(argv):
            raise MalformedValue(f"{token}: missing value")
        field_name = _FLAG_TO_FIELD[token]
        parser = _FIELD_PARSERS[field_name]
        raw_value = argv[i + 1]
        value = parser(token, raw_value) if parser is not str else raw_value
        if field_name == "mode":
            mode_tokens.append(value)
            if len(set(mode_tokens)) > 1:
                raise ConflictingModes(
                    f"--mode given twice with different values: "
                    f"{mode_tokens[0]!r} and {value!r}"
                )
        flag_values[field_name] = value
        i += 2

    config = RunConfig(subcommand=subcommand, preset=preset)
    if config_path is not None:
        config = replace(config, **_read_config_file(config_path))
    if flag_values:
        config = replace(config, **flag_values)
    if config.n_from > config.n_to:
        raise MalformedValue(
            f"--n-from {config.n_from} exceeds --n-to {config.n_to}"
        )
    return config
