"""Run configuration: INI-style files with sections, strict key validation,
and canonical hashing.

One self-describing file per run; physics parameters must be explicit in the
file (no hidden physics defaults), while purely numerical knobs may fall back
to documented defaults.  Two files differing only in comments or key order
hash identically.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass

from .errors import ConfigError
from .scenarios import BeamSplitterConfig, CauchyConfig, EprConfig

SCENARIO_TYPES = {
    "beam_splitter": BeamSplitterConfig,
    "epr": EprConfig,
    "cauchy_record": CauchyConfig,
    "field_map": BeamSplitterConfig,
}

# physics keys that the file must state explicitly, per scenario section
REQUIRED_PHYSICS = {
    "beam_splitter": ["omega0", "sigma0", "x_start", "p0", "t_end", "n_ensemble", "seed"],
    "field_map": ["omega0", "sigma0", "x_start", "p0", "t_end", "seed"],
    "epr": ["omega0", "sigma_com", "sigma_rel", "k0", "t_end", "t_on", "amp_a", "amp_b", "n_ensemble", "seed"],
    "cauchy_record": ["omega0", "sigma0", "x_start", "p0", "t_end", "t_on", "surface_time",
                      "amp_on", "amp_off", "z_start", "seed"],
}


def _parse_value(raw: str, target_type):
    raw = raw.strip()
    if target_type is bool or isinstance(target_type, bool):
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ValueError(f"not a bool: {raw!r}")
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    if target_type is tuple:
        return tuple(float(p) for p in raw.split(","))
    return raw


@dataclass(frozen=True)
class RunConfig:
    scenario: str
    params: object
    output_dir: str
    config_hash: str
    canonical: str


from .provenance import canonical_text, config_hash_of, dataclass_hash  # noqa: F401


def parse_config(path) -> RunConfig:
    """Parse and validate a run configuration file.

    Unknown keys are rejected (named by section.key); missing required
    physics parameters are errors; values are normalized before hashing so
    formatting and comments cannot change the hash."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cp.read(path)
    if not read:
        raise ConfigError(f"config file not found or unreadable: {path}")
    if "run" not in cp:
        raise ConfigError("config needs a [run] section with 'scenario'")
    run_sec = dict(cp["run"])
    scenario = run_sec.pop("scenario", None)
    if scenario is None:
        raise ConfigError("missing run.scenario")
    if scenario not in SCENARIO_TYPES:
        raise ConfigError(f"unknown scenario {scenario!r}; have {sorted(SCENARIO_TYPES)}")
    output_dir = run_sec.pop("output_dir", ".")
    for leftover in run_sec:
        raise ConfigError(f"unknown key run.{leftover}")

    cls = SCENARIO_TYPES[scenario]
    fields = {f.name: f for f in dataclasses.fields(cls)}
    if scenario not in cp:
        raise ConfigError(f"config needs a [{scenario}] section")
    raw = dict(cp[scenario])
    for extra in cp.sections():
        if extra not in ("run", scenario):
            raise ConfigError(f"unknown section [{extra}]")
    kwargs = {}
    normalized: dict[str, str] = {}
    for key, val in raw.items():
        if key not in fields:
            raise ConfigError(f"unknown key {scenario}.{key}")
        f = fields[key]
        base = f.default if f.default is not dataclasses.MISSING else None
        target = f.type
        # resolve from the default's runtime type when the annotation is stringy
        if base is not None and not isinstance(base, type):
            target = type(base)
        elif target in ("float", "int", "bool", "tuple", "str"):
            target = {"float": float, "int": int, "bool": bool, "tuple": tuple, "str": str}[target]
        try:
            parsed = _parse_value(val, target if isinstance(target, type) else float)
        except ValueError as exc:
            raise ConfigError(f"bad value for {scenario}.{key}: {exc}") from exc
        kwargs[key] = parsed
        normalized[key] = repr(parsed)
    missing = [k for k in REQUIRED_PHYSICS[scenario] if k not in kwargs]
    if missing:
        raise ConfigError(
            f"missing required physics parameters in [{scenario}]: {', '.join(missing)}"
        )
    try:
        params = cls(**kwargs)
        if hasattr(params, "grid"):
            params.grid()  # surface grid/dt invariant violations at parse time
    except ConfigError:
        raise
    except Exception as exc:  # dataclass invariant failures
        raise ConfigError(f"invalid [{scenario}] parameters: {exc}") from exc
    sections = {"run": {"scenario": scenario}, scenario: normalized}
    return RunConfig(
        scenario=scenario,
        params=params,
        output_dir=output_dir,
        config_hash=config_hash_of(sections),
        canonical=canonical_text(sections),
    )


def with_seed(rc: RunConfig, seed: int) -> RunConfig:
    """Seed override: samples change, config-hash lineage is preserved."""
    params = dataclasses.replace(rc.params, seed=seed)
    return RunConfig(rc.scenario, params, rc.output_dir, rc.config_hash, rc.canonical)
