"""YAML run configuration: defaults, loading, validation and dumping."""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass

import yaml

from .detection import ChernoffModel, GaussianShiftModel
from .errors import ValidationError
from .experiments import AXES, DistSpec, PopulationSpec, Scenario, SweepSpec
from .utility import EconomicParams

SCHEMA_VERSION = 1
FORMATS = ("csv", "svg", "json")

# Reproduces the published experiment: sigma2=1, s=40, c=5, lambda=0.88, t=0.3.
DEFAULT_CONFIG = {
    "version": SCHEMA_VERSION,
    "model": {"gaussian": {"sigma2": 1.0}},
    "econ": {"s": 40.0, "c": 5.0, "p0": 2.0},
    "prospect": {"beta": 2.25, "lambda": 0.88, "t": 0.3},
    "sweep": {"axis": "beta", "lo": 0.5, "hi": 5.0, "steps": 100},
    "population": {
        "n_agents": 1000,
        "seed": 20230101,
        "beta": {"kind": "truncnormal", "mean": 2.25, "sd": 1.0, "lo": 0.0, "hi": 10.0},
        "lambda": {"kind": "uniform", "lo": 0.55, "hi": 1.0},
        "t": {"kind": "uniform", "lo": 0.0, "hi": 1.0},
    },
    "output": {"dir": "out", "formats": list(FORMATS)},
}


def default_config():
    return copy.deepcopy(DEFAULT_CONFIG)


@dataclass(frozen=True)
class Config:
    raw: dict
    scenario: Scenario
    sweep: SweepSpec | None
    population: PopulationSpec | None
    out_dir: str
    formats: tuple

    def dump(self) -> str:
        return dump_config(self.raw)


def dump_config(raw: dict) -> str:
    return yaml.safe_dump(raw, sort_keys=False, default_flow_style=False)


def load_raw(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise ValidationError(f"{path}: not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: top level must be a mapping")
    return data


def _number(section, key, problems, where, integer=False):
    if not isinstance(section, dict) or key not in section:
        problems.append(f"missing required field {where}.{key}")
        return None
    v = section[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        problems.append(f"{where}.{key} must be a number, got {v!r}")
        return None
    if integer and int(v) != v:
        problems.append(f"{where}.{key} must be an integer, got {v!r}")
        return None
    if not math.isfinite(v):
        problems.append(f"{where}.{key} must be finite, got {v!r}")
        return None
    return int(v) if integer else float(v)


def _section(raw, key, problems, required=True):
    sec = raw.get(key)
    if sec is None:
        if required:
            problems.append(f"missing required section {key}")
        return None
    if not isinstance(sec, dict):
        problems.append(f"section {key} must be a mapping")
        return None
    return sec


def _collect(problems, build):
    """Run a constructor, folding its ValidationError messages into ``problems``."""
    try:
        return build()
    except ValidationError as exc:
        problems.extend(exc.messages)
        return None


def _curve(raw, problems):
    model = _section(raw, "model", problems)
    if model is None:
        return None
    kinds = [k for k in ("gaussian", "chernoff") if k in model]
    if len(kinds) != 1:
        problems.append("model must contain exactly one of: gaussian, chernoff")
        return None
    body = model[kinds[0]] or {}
    if kinds[0] == "gaussian":
        sigma2 = _number(body, "sigma2", problems, "model.gaussian")
        if sigma2 is None:
            return None
        return _collect(problems, lambda: GaussianShiftModel(sigma2))
    p0, p1 = body.get("p0_dist"), body.get("p1_dist")
    if not isinstance(p0, list) or not isinstance(p1, list):
        problems.append("model.chernoff needs p0_dist and p1_dist lists")
        return None
    return _collect(problems, lambda: ChernoffModel(tuple(p0), tuple(p1), body.get("alphabet")))


def _dist(body, name, problems):
    where = f"population.{name}"
    if not isinstance(body, dict) or "kind" not in body:
        problems.append(f"missing required field {where}.kind")
        return None
    known = {"kind", "value", "lo", "hi", "mean", "sd"}
    extra = set(body) - known
    if extra:
        problems.append(f"{where}: unknown keys {sorted(extra)}")
        return None
    kwargs = {}
    for k, v in body.items():
        if k == "kind" or v is None:
            kwargs[k] = v
        elif isinstance(v, (int, float)) and not isinstance(v, bool):
            kwargs[k] = float(v)
        else:
            problems.append(f"{where}.{k} must be a number, got {v!r}")
            return None
    dist = DistSpec(**kwargs)
    found = dist.problems(name)
    if found:
        problems.extend(found)
        return None
    return dist


def build_config(raw: dict) -> Config:
    """Validate a raw mapping and build typed objects; reports every problem at once."""
    problems = []
    if raw.get("version") != SCHEMA_VERSION:
        problems.append(f"version must be {SCHEMA_VERSION}, got {raw.get('version')!r}")

    curve = _curve(raw, problems)

    econ_sec = _section(raw, "econ", problems)
    econ = None
    if econ_sec is not None:
        vals = [_number(econ_sec, k, problems, "econ") for k in ("s", "c", "p0")]
        if None not in vals:
            econ = _collect(problems, lambda: EconomicParams(*vals))

    pt_sec = _section(raw, "prospect", problems)
    pt_vals = None
    before = len(problems)
    if pt_sec is not None:
        pt_vals = [_number(pt_sec, k, problems, "prospect") for k in ("beta", "lambda", "t")]
        if None not in pt_vals:
            beta, lam, t = pt_vals
            if not beta > 0:
                problems.append(f"prospect.beta must be positive, got {beta!r}")
            if not 0 < lam <= 1:
                problems.append(f"prospect.lambda must lie in (0, 1], got {lam!r}")
            if not 0 <= t <= 1:
                problems.append(f"prospect.t must lie in [0, 1], got {t!r}")
    pt_ok = pt_vals is not None and len(problems) == before

    scenario = None
    if curve is not None and econ is not None and pt_ok:
        scenario = Scenario(curve, econ, *pt_vals)

    sweep = None
    sweep_sec = _section(raw, "sweep", problems, required=False)
    if sweep_sec is not None:
        axis = sweep_sec.get("axis")
        if axis not in AXES:
            problems.append(f"sweep.axis must be one of {', '.join(AXES)}, got {axis!r}")
        lo = _number(sweep_sec, "lo", problems, "sweep")
        hi = _number(sweep_sec, "hi", problems, "sweep")
        steps = _number(sweep_sec, "steps", problems, "sweep", integer=True)
        if scenario is not None and axis in AXES and None not in (lo, hi, steps):
            sweep = _collect(problems, lambda: SweepSpec(axis, lo, hi, steps, scenario))
            if axis == "sigma2" and not isinstance(curve, GaussianShiftModel):
                problems.append("sweep.axis sigma2 needs a gaussian model")

    population = None
    pop_sec = _section(raw, "population", problems, required=False)
    if pop_sec is not None:
        n = _number(pop_sec, "n_agents", problems, "population", integer=True)
        seed = _number(pop_sec, "seed", problems, "population", integer=True)
        dists = [_dist(pop_sec.get(k), k, problems) for k in ("beta", "lambda", "t")]
        if scenario is not None and None not in (n, seed) and None not in dists:
            population = _collect(problems, lambda: PopulationSpec(n, *dists, seed, scenario))

    out_sec = _section(raw, "output", problems, required=False) or {}
    out_dir = out_sec.get("dir", "out")
    if not isinstance(out_dir, str) or not out_dir:
        problems.append("output.dir must be a nonempty string")
    formats = out_sec.get("formats", list(FORMATS))
    if isinstance(formats, str):
        formats = [f.strip() for f in formats.split(",") if f.strip()]
    if not isinstance(formats, list) or any(f not in FORMATS for f in formats):
        problems.append(f"output.formats must be a subset of {list(FORMATS)}, got {formats!r}")
        formats = []

    if problems:
        raise ValidationError(problems)
    return Config(raw, scenario, sweep, population, out_dir, tuple(formats))
