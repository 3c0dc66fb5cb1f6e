"""JSON configuration files.

A config file holds up to four sections, ``propagation``, ``hardware``,
``solver`` and ``montecarlo``, whose keys are the field names of the
corresponding dataclasses. Two kinds of convenience keys are converted on
load: ``omega_db`` (pathloss at 1 km in dB) and ``<field>_watts`` for the
circuit-power fields, which are multiplied by the symbol time. Unknown
sections or keys are errors.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field

from .geometry import MonteCarloConfig
from .optimize import SolverConfig
from .params import HardwareParams, PropagationParams, db_to_linear, watts_to_energy_per_symbol

ENV_VAR = "DENSE_EE_CONFIG"

SECTIONS = {
    "propagation": PropagationParams,
    "hardware": HardwareParams,
    "solver": SolverConfig,
    "montecarlo": MonteCarloConfig,
}
WATT_FIELDS = ("static_power", "per_ue_power", "per_antenna_power", "per_antenna_ue_power")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    propagation: PropagationParams = field(default_factory=PropagationParams)
    hardware: HardwareParams = field(default_factory=HardwareParams)
    solver: SolverConfig = field(default_factory=SolverConfig)
    montecarlo: MonteCarloConfig = field(default_factory=MonteCarloConfig)

    def to_dict(self) -> dict:
        out = {}
        for name in SECTIONS:
            sec = dataclasses.asdict(getattr(self, name))
            out[name] = {k: list(v) if isinstance(v, tuple) else v for k, v in sec.items()}
        return out

    def replace(self, section: str, **changes) -> "RunConfig":
        try:
            new = dataclasses.replace(getattr(self, section), **changes)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{section}: {exc}") from exc
        return dataclasses.replace(self, **{section: new})


def _field_names(cls):
    return {f.name for f in dataclasses.fields(cls)}


def _section(name, raw, tau=None):
    cls = SECTIONS[name]
    if not isinstance(raw, dict):
        raise ConfigError(f"section {name!r} must be an object")
    raw = dict(raw)
    if name == "propagation" and "omega_db" in raw:
        if "omega" in raw:
            raise ConfigError("give either omega or omega_db, not both")
        raw["omega"] = db_to_linear(float(raw.pop("omega_db")))
    if name == "hardware":
        for f in WATT_FIELDS:
            key = f + "_watts"
            if key in raw:
                if f in raw:
                    raise ConfigError(f"give either {f} or {key}, not both")
                raw[f] = watts_to_energy_per_symbol(float(raw.pop(key)), tau)
    if name == "solver" and "snr_bracket" in raw:
        raw["snr_bracket"] = tuple(raw["snr_bracket"])
    unknown = sorted(set(raw) - _field_names(cls))
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(unknown)}")
    try:
        return cls(**raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def config_from_dict(data: dict) -> RunConfig:
    """Build a validated :class:`RunConfig` from parsed JSON."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
    prop = _section("propagation", data.get("propagation", {}))
    return RunConfig(
        propagation=prop,
        hardware=_section("hardware", data.get("hardware", {}), prop.symbol_time),
        solver=_section("solver", data.get("solver", {})),
        montecarlo=_section("montecarlo", data.get("montecarlo", {})),
    )


def load_config(path: str | os.PathLike | None = None) -> RunConfig:
    """Load a config file; with no path, use $DENSE_EE_CONFIG or the defaults.

    Read failures raise ``OSError``; malformed content raises
    :class:`ConfigError`.
    """
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        return RunConfig()
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return config_from_dict(data)
