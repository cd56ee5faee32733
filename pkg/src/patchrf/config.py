"""Configuration ingestion.

Configurations are JSON with millimeter/gigahertz units (matching how RF
designs are usually tabulated); they are converted to SI exactly once,
here. Unknown keys are hard errors so typos cannot silently change a
design.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .errors import ConfigError
from .microstrip import PatchGeometry, Substrate, fringing_extension, patch_dimensions

SCHEMA_VERSION = 1

MM = 1e-3
GHZ = 1e9
PF = 1e-12


def _require_mapping(obj: Any, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _check_keys(d: dict, path: str, required: set[str], optional: set[str] = frozenset()):
    unknown = set(d) - required - set(optional)
    if unknown:
        raise ConfigError(
            f"{path}.{sorted(unknown)[0]}", "unknown key (unknown keys are rejected)"
        )
    for key in sorted(required):
        if key not in d:
            raise ConfigError(f"{path}.{key}", "required field is missing")


def _number(
    d: dict,
    key: str,
    path: str,
    *,
    default=None,
    minimum: Optional[float] = None,
    maximum: Optional[float] = None,
    exclusive_min: bool = False,
) -> Optional[float]:
    if key not in d:
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key}", "value must be finite")
    if minimum is not None and (value <= minimum if exclusive_min else value < minimum):
        op = ">" if exclusive_min else ">="
        raise ConfigError(f"{path}.{key}", f"value must be {op} {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigError(f"{path}.{key}", f"value must be <= {maximum}, got {value}")
    return value


def _integer(d: dict, key: str, path: str, *, default=None, minimum=None):
    if key not in d:
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{path}.{key}", f"value must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class SubstrateConfig:
    epsilon_r: float
    h_mm: float
    tan_delta: float = 0.0
    t_mm: float = 0.0
    sigma: float = 5.8e7

    def to_substrate(self) -> Substrate:
        return Substrate(
            epsilon_r=self.epsilon_r,
            h=self.h_mm * MM,
            tan_delta=self.tan_delta,
            t=self.t_mm * MM,
            sigma=self.sigma,
        )


@dataclass(frozen=True)
class PatchConfig:
    f0_ghz: float
    w_mm: Optional[float] = None
    l_mm: Optional[float] = None

    @property
    def has_override(self) -> bool:
        return self.w_mm is not None

    def to_patch(self, substrate: Substrate) -> PatchGeometry:
        f0 = self.f0_ghz * GHZ
        if self.w_mm is None:
            return patch_dimensions(f0, substrate)
        w = self.w_mm * MM
        return PatchGeometry(
            w=w,
            l=self.l_mm * MM,
            delta_l=fringing_extension(w, substrate),
            f0=f0,
        )


@dataclass(frozen=True)
class IdcConfig:
    finger_width_mm: float
    gap_mm: float
    finger_length_mm: Optional[float] = None
    n_fingers: Optional[int] = None
    n_fingers_options: Optional[tuple[int, ...]] = None
    finger_length_bounds_mm: Optional[tuple[float, float]] = None
    terminal_width_mm: float = 0.64
    shunt_caps_pf: tuple[float, float] = (0.0, 0.0)

    @property
    def is_fixed(self) -> bool:
        return self.finger_length_mm is not None


@dataclass(frozen=True)
class SweepConfig:
    f_min_ghz: float
    f_max_ghz: float
    n_points: int


@dataclass(frozen=True)
class MatchConfig:
    z_source_ohm: float = 50.0
    target_db: float = -10.0


@dataclass(frozen=True)
class FeedConfig:
    z0_ohm: float = 50.0
    length_mm: Optional[float] = None


@dataclass(frozen=True)
class InsetConfig:
    slit_length_mm: float
    slit_width_mm: Optional[float] = None


@dataclass(frozen=True)
class DesignConfig:
    substrate: SubstrateConfig
    patch: PatchConfig
    idc: Optional[IdcConfig] = None
    sweep: Optional[SweepConfig] = None
    match: MatchConfig = field(default_factory=MatchConfig)
    feed: FeedConfig = field(default_factory=FeedConfig)
    inset: Optional[InsetConfig] = None
    name: str = "design"
    kind: str = "idc"


@dataclass(frozen=True)
class CompareConfig:
    designs: tuple[DesignConfig, ...]
    sweep: SweepConfig
    match: MatchConfig


def _parse_substrate(d: Any, path: str) -> SubstrateConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, {"epsilon_r", "h_mm"}, {"tan_delta", "t_mm", "sigma"})
    return SubstrateConfig(
        epsilon_r=_number(d, "epsilon_r", path, minimum=1.0),
        h_mm=_number(d, "h_mm", path, minimum=0.0, exclusive_min=True),
        tan_delta=_number(d, "tan_delta", path, default=0.0, minimum=0.0, maximum=0.999),
        t_mm=_number(d, "t_mm", path, default=0.0, minimum=0.0),
        sigma=_number(d, "sigma", path, default=5.8e7, minimum=0.0, exclusive_min=True),
    )


def _parse_patch(d: Any, path: str) -> PatchConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, {"f0_ghz"}, {"w_mm", "l_mm"})
    w = _number(d, "w_mm", path, minimum=0.0, exclusive_min=True)
    l = _number(d, "l_mm", path, minimum=0.0, exclusive_min=True)
    if (w is None) != (l is None):
        missing = "w_mm" if w is None else "l_mm"
        raise ConfigError(
            f"{path}.{missing}", "patch overrides require both w_mm and l_mm"
        )
    return PatchConfig(
        f0_ghz=_number(d, "f0_ghz", path, minimum=0.0, exclusive_min=True),
        w_mm=w,
        l_mm=l,
    )


def _parse_idc(d: Any, path: str) -> IdcConfig:
    d = _require_mapping(d, path)
    _check_keys(
        d,
        path,
        {"finger_width_mm", "gap_mm"},
        {
            "finger_length_mm",
            "n_fingers",
            "n_fingers_options",
            "finger_length_bounds_mm",
            "terminal_width_mm",
            "shunt_caps_pf",
        },
    )
    options = None
    if "n_fingers_options" in d:
        raw = d["n_fingers_options"]
        if (
            not isinstance(raw, list)
            or not raw
            or any(isinstance(v, bool) or not isinstance(v, int) for v in raw)
        ):
            raise ConfigError(
                f"{path}.n_fingers_options", "expected a non-empty list of integers"
            )
        if any(v < 2 for v in raw):
            raise ConfigError(f"{path}.n_fingers_options", "finger counts must be >= 2")
        options = tuple(raw)
    bounds = None
    if "finger_length_bounds_mm" in d:
        raw = d["finger_length_bounds_mm"]
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
        ):
            raise ConfigError(
                f"{path}.finger_length_bounds_mm", "expected [low_mm, high_mm]"
            )
        if not 0.0 < raw[0] < raw[1]:
            raise ConfigError(
                f"{path}.finger_length_bounds_mm", f"infeasible bounds {raw}"
            )
        bounds = (float(raw[0]), float(raw[1]))
    shunt = (0.0, 0.0)
    if "shunt_caps_pf" in d:
        raw = d["shunt_caps_pf"]
        if (
            not isinstance(raw, list)
            or len(raw) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw)
            or any(v < 0 for v in raw)
        ):
            raise ConfigError(
                f"{path}.shunt_caps_pf", "expected [c1_pf, c2_pf] with c >= 0"
            )
        shunt = (float(raw[0]), float(raw[1]))
    return IdcConfig(
        finger_width_mm=_number(d, "finger_width_mm", path, minimum=0.0, exclusive_min=True),
        gap_mm=_number(d, "gap_mm", path, minimum=0.0, exclusive_min=True),
        finger_length_mm=_number(d, "finger_length_mm", path, minimum=0.0, exclusive_min=True),
        n_fingers=_integer(d, "n_fingers", path, minimum=2),
        n_fingers_options=options,
        finger_length_bounds_mm=bounds,
        terminal_width_mm=_number(d, "terminal_width_mm", path, default=0.64, minimum=0.0),
        shunt_caps_pf=shunt,
    )


def _parse_sweep(d: Any, path: str) -> SweepConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, {"f_min_ghz", "f_max_ghz", "n_points"})
    cfg = SweepConfig(
        f_min_ghz=_number(d, "f_min_ghz", path, minimum=0.0, exclusive_min=True),
        f_max_ghz=_number(d, "f_max_ghz", path, minimum=0.0, exclusive_min=True),
        n_points=_integer(d, "n_points", path, minimum=2),
    )
    if cfg.f_min_ghz >= cfg.f_max_ghz:
        raise ConfigError(f"{path}.f_min_ghz", "f_min_ghz must be below f_max_ghz")
    return cfg


def _parse_match(d: Any, path: str) -> MatchConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, set(), {"z_source_ohm", "target_db"})
    target = _number(d, "target_db", path, default=-10.0)
    if target >= 0.0:
        raise ConfigError(f"{path}.target_db", f"must be negative, got {target}")
    return MatchConfig(
        z_source_ohm=_number(d, "z_source_ohm", path, default=50.0, minimum=0.0, exclusive_min=True),
        target_db=target,
    )


def _parse_feed(d: Any, path: str) -> FeedConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, set(), {"z0_ohm", "length_mm"})
    return FeedConfig(
        z0_ohm=_number(d, "z0_ohm", path, default=50.0, minimum=0.0, exclusive_min=True),
        length_mm=_number(d, "length_mm", path, minimum=0.0),
    )


def _parse_inset(d: Any, path: str) -> InsetConfig:
    d = _require_mapping(d, path)
    _check_keys(d, path, {"slit_length_mm"}, {"slit_width_mm"})
    return InsetConfig(
        slit_length_mm=_number(d, "slit_length_mm", path, minimum=0.0),
        slit_width_mm=_number(d, "slit_width_mm", path, minimum=0.0),
    )


_DESIGN_KEYS_REQUIRED = {"substrate", "patch"}
_DESIGN_KEYS_OPTIONAL = {
    "schema_version",
    "idc",
    "sweep",
    "match",
    "feed",
    "inset",
    "name",
    "kind",
}

_KINDS = ("idc", "quarter_wave", "inset")


def parse_design_config(data: Any, path: str = "") -> DesignConfig:
    prefix = path or "config"
    d = _require_mapping(data, prefix)
    _check_keys(d, prefix, _DESIGN_KEYS_REQUIRED, _DESIGN_KEYS_OPTIONAL)
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"{prefix}.schema_version", f"unsupported version {version}")
    name = d.get("name", "design")
    if not isinstance(name, str) or not name:
        raise ConfigError(f"{prefix}.name", "expected a non-empty string")
    kind = d.get("kind", "idc")
    if kind not in _KINDS:
        raise ConfigError(f"{prefix}.kind", f"expected one of {_KINDS}, got {kind!r}")
    sub_path = f"{path}." if path else ""
    cfg = DesignConfig(
        substrate=_parse_substrate(d["substrate"], f"{sub_path}substrate"),
        patch=_parse_patch(d["patch"], f"{sub_path}patch"),
        idc=_parse_idc(d["idc"], f"{sub_path}idc") if "idc" in d else None,
        sweep=_parse_sweep(d["sweep"], f"{sub_path}sweep") if "sweep" in d else None,
        match=_parse_match(d["match"], f"{sub_path}match") if "match" in d else MatchConfig(),
        feed=_parse_feed(d["feed"], f"{sub_path}feed") if "feed" in d else FeedConfig(),
        inset=_parse_inset(d["inset"], f"{sub_path}inset") if "inset" in d else None,
        name=name,
        kind=kind,
    )
    if cfg.kind == "inset" and cfg.inset is None:
        raise ConfigError(f"{sub_path}inset", "inset designs require an inset block")
    return cfg


def parse_compare_config(data: Any) -> CompareConfig:
    d = _require_mapping(data, "config")
    _check_keys(d, "config", {"designs", "sweep"}, {"schema_version", "match"})
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError("config.schema_version", f"unsupported version {version}")
    raw = d["designs"]
    if not isinstance(raw, list) or len(raw) < 2:
        raise ConfigError("config.designs", "comparison requires at least 2 designs")
    designs = tuple(
        parse_design_config(entry, path=f"designs[{i}]") for i, entry in enumerate(raw)
    )
    names = [c.name for c in designs]
    if len(set(names)) != len(names):
        raise ConfigError("config.designs", f"design names must be unique, got {names}")
    return CompareConfig(
        designs=designs,
        sweep=_parse_sweep(d["sweep"], "sweep"),
        match=_parse_match(d["match"], "match") if "match" in d else MatchConfig(),
    )


def load_config_file(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON in {path}: {exc}") from exc
    return data
