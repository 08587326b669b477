import csv
import io
import json
import math

import numpy as np
import pytest

from distrank import harness, lehmann, ranktests, scores
from distrank.harness import (
    Cell,
    ExperimentConfig,
    ExperimentResult,
    build_cells,
    emit_table,
    estimate_power,
    lehmann_power_config,
    run_experiment,
)
from distrank.ranktests import linear_rank_statistic, randomized_critical_value, ranks
from distrank.rng import RngSeed
from distrank.scores import score_vector


def _small_config(**kw):
    base = dict(
        experiment="custom",
        tests=("rank", "ks"),
        family="wilcoxon",
        sizes=((10, 10),),
        delta0=(0.0, 2.0),
        replications=4000,
        seed=11,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(replications=0)
    with pytest.raises(ValueError):
        ExperimentConfig(tests=("bogus",))
    with pytest.raises(ValueError):
        ExperimentConfig(alpha=1.5)
    with pytest.raises(ValueError):
        ExperimentConfig(sizes=(), scenarios=())
    with pytest.raises(ValueError):
        ExperimentConfig(anchor="third")
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"unknown_field": 1})


def test_config_file_round_trip(tmp_path):
    cfg = _small_config()
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps(
            {
                "tests": ["rank", "ks"],
                "family": "wilcoxon",
                "sizes": [[10, 10]],
                "delta0": [0.0, 2.0],
                "replications": 4000,
                "seed": 11,
            }
        )
    )
    assert ExperimentConfig.from_file(path) == cfg
    tpath = tmp_path / "config.toml"
    tpath.write_text(
        'tests = ["rank", "ks"]\nfamily = "wilcoxon"\nsizes = [[10, 10]]\n'
        "delta0 = [0.0, 2.0]\nreplications = 4000\nseed = 11\n"
    )
    assert ExperimentConfig.from_file(tpath) == cfg


def test_size_cells_near_alpha():
    res = run_experiment(_small_config())
    by = {(r.cell.test, r.cell.param("delta0")): r for r in res.cells}
    for test in ("rank",):
        cell = by[(test, 0.0)]
        se = cell.estimate.std_error + 1e-9
        assert abs(cell.rate - 0.05) <= 3 * max(se, math.sqrt(0.05 * 0.95 / 4000))
    # the ks test is conservative at small sizes, never above alpha by much
    assert by[("ks", 0.0)].rate < 0.06
    # power grows with delta0
    assert by[("rank", 2.0)].rate > by[("rank", 0.0)].rate + 0.02


def test_run_is_reproducible_and_worker_independent():
    cfg = _small_config(replications=2000)
    a = emit_table(run_experiment(cfg), "csv")
    b = emit_table(run_experiment(cfg), "csv")
    assert a == b
    c = emit_table(run_experiment(ExperimentConfig(**{**cfg.__dict__, "workers": 3})), "csv")
    assert a == c


def test_engine_statistics_match_single_call_pipeline():
    # the vectorized block must agree with the per-replication library path
    m, n = 6, 7
    big_n = m + n
    sc = score_vector("psi", big_n)
    null = ranktests.null_distribution(m, n, sc, "exact")
    crit = randomized_critical_value(null, 0.1)
    g = RngSeed(3).generator()
    values = g.random((50, big_n))
    tiebreak = g.random((50, big_n))
    aux = g.random(50)
    from distrank.harness import _ranks_2d

    r2 = _ranks_2d(values, tiebreak)
    vals = np.sort(sc.values[r2[:, m:] - 1], axis=1)
    s_engine = np.sum(vals, axis=1) / math.sqrt(big_n)
    for i in range(50):
        rv = ranks(values[i], np.random.default_rng(0))  # continuous: ties immaterial
        s_single = linear_rank_statistic(rv, m, sc)
        assert s_single == s_engine[i]  # bitwise
        assert null.prob_at(s_single) > 0


def test_estimate_power_analytic_cells():
    cfg = ExperimentConfig(experiment="efficiencies")
    cells = build_cells(cfg)
    assert len(cells) == 15
    res = estimate_power(cfg, cells[0])
    assert res.mode == "analytic"
    assert res.rate == pytest.approx(1.0, abs=1e-12)  # wilcoxon under its own family


def test_efficiency_preset_matches_module_table():
    res = run_experiment(ExperimentConfig(experiment="efficiencies"))
    table = harness.emit_table(res, "json")
    rows = json.loads(table)
    from distrank.asymptotics import efficiency_table

    expected = efficiency_table()
    for row in rows:
        fam, kind = row["params"]["family"], row["params"]["score"]
        assert row["estimate"] == pytest.approx(expected[fam][kind], abs=1e-12)


def test_lehmann_preset_layout():
    cfg = lehmann_power_config(replications=1000, sizes=(10,), deltas=(0.0, 1.0))
    cells = build_cells(cfg)
    tests = [c.test for c in cells]
    assert tests == ["rank", "ks", "analytic-wilcoxon", "analytic-ks"] * 2
    res = run_experiment(cfg)
    text = emit_table(res, "text")
    assert "As.W" in text and "As.KS" in text
    csv_text = emit_table(res, "csv")
    assert csv_text.splitlines()[0].startswith("experiment,cell,test,m,n,params")


def test_emit_csv_round_trips_rates():
    res = run_experiment(_small_config(replications=500))
    text = emit_table(res, "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    for parsed, cell in zip(rows, res.cells):
        if parsed["estimate"]:
            assert float(parsed["estimate"]) == cell.rate
            assert int(parsed["replications"]) == 500


def test_emit_empty_results_header_only():
    cfg = _small_config()
    text = emit_table(ExperimentResult(cfg, ()), "csv")
    assert text.splitlines() == [
        "experiment,cell,test,m,n,params,estimate,std_error,replications,seed,mode,error"
    ]
    with pytest.raises(ValueError):
        emit_table(ExperimentResult(cfg, ()), "yaml")


def test_cell_failure_is_recorded_and_run_continues():
    cfg = ExperimentConfig(
        experiment="custom",
        tests=("hotelling",),
        scenarios=(
            {"dimension": 2, "family": "normal", "covariance": ((1.0, 2.0), (2.0, 1.0))},
            {"dimension": 2, "family": "normal"},
        ),
        sizes=((10, 10),),
        replications=200,
        seed=0,
    )
    res = run_experiment(cfg)
    assert len(res.cells) == 2
    assert res.cells[0].error is not None and "positive definite" in res.cells[0].error
    assert res.cells[1].error is None
    text = emit_table(res, "csv")
    assert "positive definite" in text


def test_scenario_presets_have_full_grids():
    cfg = harness.normal_power_config(replications=10)
    cells = build_cells(cfg)
    assert len(cells) == 13 * 2 * 2  # rows x sizes x tests
    cfg = harness.cauchy_power_config(replications=10, extended=True)
    cells = build_cells(cfg)
    assert len(cells) == 13 * 4 * 2
    assert all(dict(c.params)["family"] == "cauchy-isotropic" for c in cells)


def test_distance_rank_cell_spec_default_construction():
    # the custom default is the first-sample anchored one-sided scheme
    cfg = ExperimentConfig(
        experiment="custom",
        tests=("distance-rank",),
        scenarios=({"dimension": 2, "family": "normal"},),
        sizes=((8, 8),),
        replications=3000,
        seed=21,
    )
    res = run_experiment(cfg)
    (cell,) = res.cells
    assert cell.error is None
    se = math.sqrt(0.05 * 0.95 / 3000)
    assert abs(cell.rate - 0.05) <= 3 * se  # exact randomized size under H0


def test_slope_preset_text():
    res = run_experiment(ExperimentConfig(experiment="slope-table"))
    text = emit_table(res, "text")
    assert "Wilcoxon/K-S" in text
    assert "1.350" in text
    ratios = [r.rate for r in res.cells if r.cell.test == "analytic-slope-ratio"]
    assert ratios[0] == pytest.approx(2.070, abs=2e-3)
