"""Parameter sweeps and heterogeneous-population runs over the three decision models."""

from __future__ import annotations

import csv
import io
import math
import os
import statistics
import tempfile
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .detection import AccuracyCurve, GaussianShiftModel
from .errors import ValidationError
from .utility import (
    EconomicParams,
    FixedZero,
    ProspectParams,
    WeightedAverage,
    optimal_energy_eu,
    optimal_energy_pt_fixed,
    optimal_energy_pt_weighted,
)

AXES = ("beta", "lambda", "t", "c", "s", "sigma2", "p0")
MODELS = ("eu", "ptfixed", "ptweighted")


class SweepError(RuntimeError):
    def __init__(self, axis, value, cause):
        super().__init__(f"sweep failed at {axis}={value!r}: {cause}")
        self.axis = axis
        self.value = value


@dataclass(frozen=True)
class Scenario:
    """Everything one decision needs: curve, economics, and the behavioural parameters."""

    curve: AccuracyCurve
    econ: EconomicParams
    beta: float = 2.25
    lam: float = 0.88
    t: float = 0.3

    def fixed(self):
        return ProspectParams(self.beta, self.lam, FixedZero())

    def weighted(self):
        return ProspectParams(self.beta, self.lam, WeightedAverage(self.t))

    def with_value(self, axis, value):
        value = float(value)
        if axis == "beta":
            return replace(self, beta=value)
        if axis == "lambda":
            return replace(self, lam=value)
        if axis == "t":
            return replace(self, t=value)
        if axis in ("s", "c", "p0"):
            return replace(self, econ=replace(self.econ, **{axis: value}))
        if axis == "sigma2":
            if not isinstance(self.curve, GaussianShiftModel):
                raise ValidationError("axis sigma2 needs a gaussian model")
            return replace(self, curve=GaussianShiftModel(value))
        raise ValidationError(f"unknown sweep axis {axis!r}; expected one of {', '.join(AXES)}")


def decide_all(scn: Scenario):
    """Decisions of the three models for one scenario, keyed by model name."""
    return {
        "eu": optimal_energy_eu(scn.curve, scn.econ),
        "ptfixed": optimal_energy_pt_fixed(scn.curve, scn.econ, scn.fixed()),
        "ptweighted": optimal_energy_pt_weighted(scn.curve, scn.econ, scn.weighted()),
    }


_AXIS_DOMAIN = {
    "beta": (0.0, math.inf, False),
    "lambda": (0.0, 1.0, False),
    "t": (0.0, 1.0, True),
    "c": (0.0, math.inf, False),
    "s": (0.0, math.inf, False),
    "sigma2": (0.0, math.inf, False),
    "p0": (0.0, math.inf, False),
}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    lo: float
    hi: float
    steps: int
    fixed: Scenario

    def __post_init__(self):
        problems = []
        if self.axis not in AXES:
            problems.append(f"unknown sweep axis {self.axis!r}; expected one of {', '.join(AXES)}")
        if not self.lo < self.hi:
            problems.append(f"sweep needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if int(self.steps) != self.steps or self.steps < 2:
            problems.append(f"sweep needs at least 2 steps, got {self.steps!r}")
        if self.axis in _AXIS_DOMAIN:
            dlo, dhi, closed_lo = _AXIS_DOMAIN[self.axis]
            lo_ok = self.lo >= dlo if closed_lo else self.lo > dlo
            if not (lo_ok and self.hi <= dhi):
                problems.append(f"sweep range [{self.lo!r}, {self.hi!r}] leaves the domain of {self.axis}")
        if problems:
            raise ValidationError(problems)

    def axis_values(self):
        return np.linspace(self.lo, self.hi, int(self.steps))


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    eu_energy: float
    eu_utility: float
    ptfixed_energy: float
    ptfixed_utility: float
    ptweighted_energy: float
    ptweighted_utility: float


SWEEP_COLUMNS = [f.name for f in fields(SweepRow)]


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    # rational choice ignores behavioural parameters: solve it once for those axes
    shared_eu = None
    if spec.axis in ("beta", "lambda", "t"):
        shared_eu = optimal_energy_eu(spec.fixed.curve, spec.fixed.econ)
    rows = []
    for v in spec.axis_values():
        v = float(v)
        try:
            scn = spec.fixed.with_value(spec.axis, v)
            eu = shared_eu or optimal_energy_eu(scn.curve, scn.econ)
            f = optimal_energy_pt_fixed(scn.curve, scn.econ, scn.fixed())
            w = optimal_energy_pt_weighted(scn.curve, scn.econ, scn.weighted())
        except (ArithmeticError, ValueError) as exc:
            raise SweepError(spec.axis, v, exc) from exc
        rows.append(SweepRow(v, eu.energy, eu.utility, f.energy, f.utility, w.energy, w.utility))
    return rows


# -- populations ------------------------------------------------------------------


@dataclass(frozen=True)
class DistSpec:
    """Sampling distribution for one behavioural parameter.

    kinds: ``constant`` (value), ``uniform`` (lo, hi), ``truncnormal`` (mean, sd, lo, hi).
    """

    kind: str
    value: float | None = None
    lo: float | None = None
    hi: float | None = None
    mean: float | None = None
    sd: float | None = None

    def problems(self, name):
        out = []
        if self.kind == "constant":
            if self.value is None:
                out.append(f"{name}: constant distribution needs value")
        elif self.kind == "uniform":
            if self.lo is None or self.hi is None or not self.lo <= self.hi:
                out.append(f"{name}: uniform distribution needs lo <= hi")
        elif self.kind == "truncnormal":
            if self.mean is None or self.sd is None or not self.sd > 0:
                out.append(f"{name}: truncnormal needs mean and sd > 0")
            if self.lo is not None and self.hi is not None and not self.lo < self.hi:
                out.append(f"{name}: truncnormal needs lo < hi")
        else:
            out.append(f"{name}: unknown distribution kind {self.kind!r}")
        return out

    def sample(self, rng, n, lo, hi):
        """n draws restricted to the open/closed domain (lo, hi] by rejection."""
        lo = max(lo, self.lo) if self.lo is not None else lo
        hi = min(hi, self.hi) if self.hi is not None else hi
        if self.kind == "constant":
            return np.full(n, float(self.value))
        if self.kind == "uniform":
            return rng.uniform(lo, hi, size=n) if lo < hi else np.full(n, float(lo))
        out = np.empty(0)
        for _ in range(1000):
            if out.size >= n:
                break
            draw = rng.normal(self.mean, self.sd, size=max(2 * (n - out.size), 16))
            out = np.concatenate([out, draw[(draw > lo) & (draw <= hi)]])
        if out.size < n:
            raise ValidationError(f"truncnormal acceptance too low in ({lo}, {hi}]")
        return out[:n]


_PARAM_DOMAINS = {"beta": (0.0, math.inf), "lambda": (0.0, 1.0), "t": (0.0, 1.0)}


@dataclass(frozen=True)
class PopulationSpec:
    n_agents: int
    beta_dist: DistSpec
    lambda_dist: DistSpec
    t_dist: DistSpec
    seed: int
    fixed: Scenario

    def __post_init__(self):
        problems = []
        if int(self.n_agents) != self.n_agents or self.n_agents < 0:
            problems.append(f"n_agents must be a nonnegative integer, got {self.n_agents!r}")
        for name, dist in (("beta", self.beta_dist), ("lambda", self.lambda_dist), ("t", self.t_dist)):
            problems.extend(dist.problems(name))
            if dist.kind == "constant" and dist.value is not None:
                lo, hi = _PARAM_DOMAINS[name]
                if not (lo < dist.value <= hi or (name == "t" and dist.value == 0)):
                    problems.append(f"{name}: constant {dist.value!r} outside its domain")
        if problems:
            raise ValidationError(problems)


@dataclass(frozen=True)
class AgentRecord:
    agent: int
    beta: float
    lam: float
    t: float
    eu_energy: float
    eu_utility: float
    ptfixed_energy: float
    ptfixed_utility: float
    ptweighted_energy: float
    ptweighted_utility: float


AGENT_COLUMNS = [f.name for f in fields(AgentRecord)]


def sample_agents(spec: PopulationSpec):
    rng = np.random.default_rng(spec.seed)
    n = int(spec.n_agents)
    betas = spec.beta_dist.sample(rng, n, 1e-12, math.inf)
    lams = spec.lambda_dist.sample(rng, n, 1e-12, 1.0)
    ts = spec.t_dist.sample(rng, n, 0.0, 1.0)
    return betas, lams, ts


def run_population(spec: PopulationSpec):
    """Per-agent decisions plus a summary dict (participation, energy, accuracy per model)."""
    betas, lams, ts = sample_agents(spec)
    eu = optimal_energy_eu(spec.fixed.curve, spec.fixed.econ)
    records = []
    for i, (b, lam, t) in enumerate(zip(betas, lams, ts)):
        scn = replace(spec.fixed, beta=float(b), lam=float(lam), t=float(t))
        f = optimal_energy_pt_fixed(scn.curve, scn.econ, scn.fixed())
        w = optimal_energy_pt_weighted(scn.curve, scn.econ, scn.weighted())
        records.append(
            AgentRecord(i, scn.beta, scn.lam, scn.t, eu.energy, eu.utility, f.energy, f.utility, w.energy, w.utility)
        )
    return records, summarize(records, spec.fixed.curve)


def summarize(records, curve):
    summary = {"n_agents": len(records), "models": {}}
    for m in MODELS:
        energies = [getattr(r, f"{m}_energy") for r in records]
        if energies:
            stats = {
                "participation_rate": sum(e > 0 for e in energies) / len(energies),
                "mean_energy": statistics.fmean(energies),
                "median_energy": statistics.median(energies),
                "mean_accuracy": statistics.fmean(curve.value(e) for e in energies),
                "mean_utility": statistics.fmean(getattr(r, f"{m}_utility") for r in records),
            }
        else:
            stats = {
                "participation_rate": 0.0,
                "mean_energy": None,
                "median_energy": None,
                "mean_accuracy": None,
                "mean_utility": None,
            }
        summary["models"][m] = stats
    return summary


# -- output -----------------------------------------------------------------------


def _fmt(x):
    return f"{x:.12g}"


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        d = asdict(r)
        w.writerow([d[c] if isinstance(d[c], int) else _fmt(d[c]) for c in columns])
    return buf.getvalue()


def atomic_write(path, text: str):
    """Write via a temporary file in the target directory, then rename over the target."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_COLORS = {"eu": "#1f77b4", "ptfixed": "#d62728", "ptweighted": "#2ca02c"}
_LABELS = {"eu": "EU", "ptfixed": "PT fixed reference", "ptweighted": "PT weighted reference"}


def svg_chart(xs, series, title, xlabel, ylabel, width=800, height=600) -> str:
    """Self-contained line chart; ``series`` maps model name to y values."""
    ml, mr, mt, mb = 80, 30, 50, 70
    pw, ph = width - ml - mr, height - mt - mb
    x0, x1 = min(xs), max(xs)
    ys_all = [y for ys in series.values() for y in ys]
    y0, y1 = min(ys_all), max(ys_all)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 1, y1 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return mt + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="28" text-anchor="middle" font-size="16">{title}</text>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for k in range(6):
        xv = x0 + k * (x1 - x0) / 5
        yv = y0 + k * (y1 - y0) / 5
        out.append(
            f'<line x1="{sx(xv):.2f}" y1="{mt + ph}" x2="{sx(xv):.2f}" y2="{mt + ph + 5}" stroke="black"/>'
            f'<text x="{sx(xv):.2f}" y="{mt + ph + 20}" text-anchor="middle">{xv:.3g}</text>'
        )
        out.append(
            f'<line x1="{ml - 5}" y1="{sy(yv):.2f}" x2="{ml}" y2="{sy(yv):.2f}" stroke="black"/>'
            f'<text x="{ml - 8}" y="{sy(yv) + 4:.2f}" text-anchor="end">{yv:.3g}</text>'
        )
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 20}" text-anchor="middle">{xlabel}</text>')
    out.append(
        f'<text x="20" y="{mt + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 20 {mt + ph / 2:.1f})">{ylabel}</text>'
    )
    for j, (name, ys) in enumerate(series.items()):
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        color = _COLORS.get(name, "black")
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{pts}"/>')
        ly = mt + 18 + 18 * j
        out.append(
            f'<line x1="{ml + pw - 190}" y1="{ly}" x2="{ml + pw - 160}" y2="{ly}" stroke="{color}" stroke-width="2"/>'
            f'<text x="{ml + pw - 154}" y="{ly + 4}">{_LABELS.get(name, name)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sweep_charts(rows, axis):
    xs = [r.axis_value for r in rows]
    energy = {m: [getattr(r, f"{m}_energy") for r in rows] for m in MODELS}
    utility = {m: [getattr(r, f"{m}_utility") for r in rows] for m in MODELS}
    return (
        svg_chart(xs, energy, "Optimal energy consumption", axis, "energy"),
        svg_chart(xs, utility, "Utility at the chosen energy", axis, "utility"),
    )


def write_sweep(rows, axis, out_dir, formats=("csv", "svg")):
    """Write sweep outputs into ``out_dir``; returns the written paths."""
    out_dir = Path(out_dir)
    paths = []
    if "csv" in formats:
        p = out_dir / "sweep.csv"
        atomic_write(p, rows_to_csv(rows, SWEEP_COLUMNS))
        paths.append(p)
    if "svg" in formats:
        energy_svg, utility_svg = sweep_charts(rows, axis)
        for name, text in (("sweep_energy.svg", energy_svg), ("sweep_utility.svg", utility_svg)):
            p = out_dir / name
            atomic_write(p, text)
            paths.append(p)
    return paths
