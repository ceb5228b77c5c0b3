import math

import numpy as np
import pytest

from lossaware import ChernoffModel, EconomicParams, GaussianShiftModel, ValidationError, beta_threshold
from lossaware import experiments as ex
from lossaware import utility

PAPER = ex.Scenario(GaussianShiftModel(1.0), EconomicParams(40, 5, 2.0), beta=2.25, lam=0.88, t=0.3)


@pytest.fixture(scope="module")
def paper_rows():
    return ex.run_sweep(ex.SweepSpec("beta", 0.5, 5.0, 100, PAPER))


def test_sweep_shape(paper_rows):
    assert len(paper_rows) == 100
    assert paper_rows[0].axis_value == 0.5 and paper_rows[-1].axis_value == 5.0
    for r in paper_rows:
        for e in (r.eu_energy, r.ptfixed_energy, r.ptweighted_energy):
            assert 0 <= e <= 2.0
        assert r.ptweighted_energy in (0.0, 2.0)


def test_sweep_eu_constant(paper_rows):
    assert len({(r.eu_energy, r.eu_utility) for r in paper_rows}) == 1
    assert paper_rows[0].eu_energy == pytest.approx(0.967623681698319, abs=1e-10)


def test_sweep_ptfixed_strictly_decreasing(paper_rows):
    e = [r.ptfixed_energy for r in paper_rows]
    assert all(b < a for a, b in zip(e, e[1:]))


def test_sweep_weighted_single_step_at_threshold(paper_rows):
    bs = beta_threshold(PAPER.curve, 0.88, 0.3, 2.0)
    for r in paper_rows:
        assert r.ptweighted_energy == (2.0 if r.axis_value < bs else 0.0)
    e = [r.ptweighted_energy for r in paper_rows]
    assert sum(a != b for a, b in zip(e, e[1:])) == 1


def test_sweep_weighted_utility_falls_then_jumps_to_zero(paper_rows):
    full = [r.ptweighted_utility for r in paper_rows if r.ptweighted_energy > 0]
    zero = [r.ptweighted_utility for r in paper_rows if r.ptweighted_energy == 0]
    assert all(b < a for a, b in zip(full, full[1:]))
    assert full[-1] > 0 and set(zero) == {0.0}


def test_sweep_ptfixed_utility_falls_with_beta(paper_rows):
    # the maximized value has d/dbeta = -(c p_f)^lam < 0
    u = [r.ptfixed_utility for r in paper_rows]
    assert all(b < a for a, b in zip(u, u[1:]))
    for r in paper_rows[:: 10]:
        p = r.ptfixed_energy
        assert u[paper_rows.index(r)] == pytest.approx(
            40**0.88 * PAPER.curve.value(p) - r.axis_value * (5 * p) ** 0.88
        )


def test_sweep_pt_below_eu_for_loss_averse(paper_rows):
    for r in paper_rows:
        if r.axis_value >= 1:
            assert r.ptfixed_utility <= r.eu_utility
            assert r.ptweighted_utility <= r.eu_utility


def test_sweep_over_t_moves_threshold():
    rows = ex.run_sweep(ex.SweepSpec("t", 0.05, 0.95, 19, PAPER))
    for r in rows:
        bs = beta_threshold(PAPER.curve, 0.88, r.axis_value, 2.0)
        assert r.ptweighted_energy == (2.0 if PAPER.beta < bs else 0.0)
    assert rows[0].ptweighted_energy == 2.0 and rows[-1].ptweighted_energy == 0.0


@pytest.mark.parametrize("axis,lo,hi", [("c", 1, 20), ("s", 10, 100), ("sigma2", 0.25, 4), ("p0", 0.5, 5), ("lambda", 0.55, 1.0)])
def test_sweep_other_axes(axis, lo, hi):
    rows = ex.run_sweep(ex.SweepSpec(axis, lo, hi, 5, PAPER))
    assert [r.axis_value for r in rows] == pytest.approx(np.linspace(lo, hi, 5))
    for r in rows:
        scn = PAPER.with_value(axis, r.axis_value)
        assert r.eu_energy == utility.optimal_energy_eu(scn.curve, scn.econ).energy


def test_minimal_sweep():
    assert len(ex.run_sweep(ex.SweepSpec("beta", 1, 2, 2, PAPER))) == 2


@pytest.mark.parametrize(
    "axis,lo,hi,steps",
    [("gamma", 0, 1, 5), ("beta", 2, 1, 5), ("beta", 1, 2, 1), ("t", 0.5, 1.2, 5), ("lambda", 0.5, 1.1, 5), ("beta", -1, 2, 5)],
)
def test_sweep_spec_validation(axis, lo, hi, steps):
    with pytest.raises(ValidationError):
        ex.SweepSpec(axis, lo, hi, steps, PAPER)


def test_sigma2_axis_needs_gaussian():
    scn = ex.Scenario(ChernoffModel((0.7, 0.3), (0.4, 0.6)), EconomicParams(40, 0.5, 50))
    with pytest.raises(ex.SweepError):
        ex.run_sweep(ex.SweepSpec("sigma2", 1, 2, 3, scn))


def test_sweep_error_names_axis_value(monkeypatch):
    def boom(curve, econ, pt):
        if pt.beta > 3:
            raise ArithmeticError("boom")
        return orig(curve, econ, pt)

    orig = ex.optimal_energy_pt_fixed
    monkeypatch.setattr(ex, "optimal_energy_pt_fixed", boom)
    with pytest.raises(ex.SweepError) as info:
        ex.run_sweep(ex.SweepSpec("beta", 1, 5, 5, PAPER))
    assert info.value.axis == "beta" and info.value.value == 4.0


def test_chernoff_sweep_runs():
    scn = ex.Scenario(ChernoffModel((0.7, 0.3), (0.4, 0.6)), EconomicParams(40, 0.5, 50), t=0.2)
    rows = ex.run_sweep(ex.SweepSpec("beta", 0.5, 3, 6, scn))
    e = [r.ptfixed_energy for r in rows]
    assert all(b <= a + 1e-9 for a, b in zip(e, e[1:]))


def test_csv_is_deterministic_and_12_digits(paper_rows):
    text = ex.rows_to_csv(paper_rows, ex.SWEEP_COLUMNS)
    again = ex.rows_to_csv(ex.run_sweep(ex.SweepSpec("beta", 0.5, 5.0, 100, PAPER)), ex.SWEEP_COLUMNS)
    assert text == again
    lines = text.splitlines()
    assert lines[0].split(",") == ex.SWEEP_COLUMNS
    assert len(lines) == 101
    assert lines[1].split(",")[1] == "0.967623681698"


def test_svg_charts(paper_rows):
    energy, util = ex.sweep_charts(paper_rows, "beta")
    for svg in (energy, util):
        assert svg.startswith('<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600"')
        assert svg.count("<polyline") == 3
        for label in ("EU", "PT fixed reference", "PT weighted reference"):
            assert label in svg
        assert "href" not in svg  # self-contained
    assert ex.sweep_charts(paper_rows, "beta") == (energy, util)


def test_atomic_write(tmp_path):
    p = tmp_path / "x.csv"
    ex.atomic_write(p, "a\n")
    ex.atomic_write(p, "b\n")
    assert p.read_text() == "b\n"
    assert [q.name for q in tmp_path.iterdir()] == ["x.csv"]


# -- populations ------------------------------------------------------------------


def const(v):
    return ex.DistSpec("constant", value=v)


def test_population_degenerate_equals_eu():
    spec = ex.PopulationSpec(50, const(1.0), const(1.0), const(0.3), 1, PAPER)
    records, summary = ex.run_population(spec)
    eu = utility.optimal_energy_eu(PAPER.curve, PAPER.econ).energy
    assert summary["models"]["ptfixed"]["mean_energy"] == pytest.approx(eu, abs=1e-9)
    assert len({(r.ptfixed_energy, r.ptweighted_energy) for r in records}) == 1


def test_population_participation_matches_threshold_fraction():
    bs = beta_threshold(PAPER.curve, 0.88, 0.3, 2.0)
    n = 4000
    spec = ex.PopulationSpec(n, ex.DistSpec("uniform", lo=bs - 1, hi=bs + 1), const(0.88), const(0.3), 7, PAPER)
    _, summary = ex.run_population(spec)
    rate = summary["models"]["ptweighted"]["participation_rate"]
    se = math.sqrt(0.25 / n)
    assert abs(rate - 0.5) <= 3 * se


def test_population_empty():
    spec = ex.PopulationSpec(0, const(1.0), const(0.9), const(0.3), 1, PAPER)
    records, summary = ex.run_population(spec)
    assert records == []
    assert summary["n_agents"] == 0
    assert all(m["participation_rate"] == 0 for m in summary["models"].values())


def test_population_is_seeded():
    dist = ex.DistSpec("truncnormal", mean=2.25, sd=1.0, lo=0.0, hi=10.0)
    spec = ex.PopulationSpec(200, dist, ex.DistSpec("uniform", lo=0.55, hi=1.0), ex.DistSpec("uniform", lo=0, hi=1), 11, PAPER)
    a = ex.rows_to_csv(ex.run_population(spec)[0], ex.AGENT_COLUMNS)
    b = ex.rows_to_csv(ex.run_population(spec)[0], ex.AGENT_COLUMNS)
    assert a == b
    other = ex.PopulationSpec(200, dist, spec.lambda_dist, spec.t_dist, 12, PAPER)
    assert ex.rows_to_csv(ex.run_population(other)[0], ex.AGENT_COLUMNS) != a


def test_population_samples_stay_in_domain():
    spec = ex.PopulationSpec(
        500,
        ex.DistSpec("truncnormal", mean=0.2, sd=2.0),
        ex.DistSpec("truncnormal", mean=0.9, sd=0.3),
        ex.DistSpec("truncnormal", mean=0.5, sd=1.0),
        3,
        PAPER,
    )
    betas, lams, ts = ex.sample_agents(spec)
    assert (betas > 0).all() and ((lams > 0) & (lams <= 1)).all() and ((ts >= 0) & (ts <= 1)).all()


def test_population_accuracy_summary():
    spec = ex.PopulationSpec(20, const(2.0), const(0.88), const(0.1), 5, PAPER)
    records, summary = ex.run_population(spec)
    acc = summary["models"]["ptweighted"]["mean_accuracy"]
    assert acc == pytest.approx(PAPER.curve.value(records[0].ptweighted_energy))


@pytest.mark.parametrize(
    "dist",
    [ex.DistSpec("poisson"), ex.DistSpec("uniform", lo=2, hi=1), ex.DistSpec("truncnormal", mean=1, sd=0), ex.DistSpec("constant")],
)
def test_population_validation(dist):
    with pytest.raises(ValidationError):
        ex.PopulationSpec(10, dist, const(0.9), const(0.3), 1, PAPER)


def test_population_constant_out_of_domain():
    with pytest.raises(ValidationError) as info:
        ex.PopulationSpec(10, const(-1.0), const(1.5), const(2.0), 1, PAPER)
    assert len(info.value.messages) == 3


def test_svg_points_inside_plot_area(paper_rows):
    import re

    for svg in ex.sweep_charts(paper_rows, "beta"):
        for pts in re.findall(r'<polyline[^>]*points="([^"]+)"', svg):
            xy = np.array([[float(v) for v in p.split(",")] for p in pts.split()])
            assert len(xy) == len(paper_rows)
            assert (xy[:, 0] >= 80 - 1e-9).all() and (xy[:, 0] <= 770 + 1e-9).all()
            assert (xy[:, 1] >= 50).all() and (xy[:, 1] <= 530).all()
