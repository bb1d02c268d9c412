import json
import math

import numpy as np
import pytest

from essbench.chain import ChainSet
from essbench.errors import ConfigError
from essbench.harness import (ExperimentConfig, analyze, load_config, read_chains,
                              run_ar1_ensemble, table_row)
from essbench.harness.analyze import multichain_table, psrf_curve, running_means
from essbench.harness.cli import main
from essbench.harness.elliptic_run import run_elliptic
from essbench.harness.ensemble import bootstrap_groups
from essbench.harness.estimators import make_estimator, make_row
from essbench.harness.output import ensemble_summary, read_rows

SMALL = dict(n_replicates=6, chain_length=6000, burn_in=1000, checkpoints=[2000, 4000, 5000],
             target_iact=10)


def small_cfg(**kw):
    return ExperimentConfig(**{**SMALL, **kw})


# ---- config ----------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ConfigError):
        ExperimentConfig(burn_in=10, chain_length=10)
    with pytest.raises(ConfigError):
        ExperimentConfig(chain_length=100, burn_in=10, checkpoints=[91])
    with pytest.raises(ConfigError):
        ExperimentConfig(kind="other")
    with pytest.raises(ConfigError):
        ExperimentConfig(master_seed=-1)
    with pytest.raises(ConfigError):
        ExperimentConfig(format="xml")


def test_load_config(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"n_replicates": 4, "chain_length": 500, "burn_in": 100,
                                "checkpoints": [400]}))
    cfg = load_config(path, master_seed=9, threads=None)
    assert cfg.master_seed == 9 and cfg.threads == 1 and cfg.n_replicates == 4
    # grouped ESS-Bulk variants need group_size (4) <= n_replicates
    with pytest.raises(ConfigError, match="group_size"):
        load_config(path, n_replicates=3)
    assert load_config(path, n_replicates=3, estimators=[{"method": "geyer"}]).n_replicates == 3
    path.write_text(json.dumps({"n_replicate": 3}))
    with pytest.raises(ConfigError):
        load_config(path)


def test_shipped_configs_load():
    import pathlib
    root = pathlib.Path(__file__).resolve().parents[1] / "configs"
    files = sorted(root.glob("*.json"))
    assert len(files) >= 5
    for f in files:
        load_config(f)


# ---- estimator rows -----------------------------------------------------------

def test_make_row_invariant(rng):
    x = rng.standard_normal(1000)
    est = make_estimator({"method": "geyer"}).single(x)
    row = make_row("geyer", 0, 1000, est, x)
    assert row.ess * row.iact == pytest.approx(1000, rel=1e-15)
    assert row.ci_lo < row.ci_hi


def test_make_row_invalid_estimate():
    x = np.tile([1.0, -1.0], 50)
    est = make_estimator({"method": "truncated", "width_policy": "fixed", "width_param": 1}).single(x)
    row = make_row("truncated", 0, 100, est, x)
    assert row.ess == math.inf and math.isnan(row.mcse) and "nonpositive" in row.flags
    clamped = make_row("truncated", 0, 100, est, x, clamp=True)
    assert clamped.iact == 1.0 and "clamped" in clamped.flags


def test_unknown_estimator():
    with pytest.raises(ConfigError):
        make_estimator({"method": "spectral"})


# ---- AR(1) ensemble -----------------------------------------------------------

def test_bootstrap_groups():
    cfg = small_cfg(n_replicates=10)
    groups = bootstrap_groups(cfg)
    assert len(groups) == 10
    assert all(len(set(g)) == 4 and max(g) < 10 for g in groups)
    assert groups == bootstrap_groups(cfg)


def test_ensemble_rows_and_files(tmp_path):
    cfg = small_cfg(save_chains=True)
    res = run_ar1_ensemble(cfg, tmp_path)
    rows = res["rows"]
    assert {r.method for r in rows} >= {"ar", "bm", "obm", "bartlett", "tukey", "geyer",
                                        "ess_bulk_1", "ess_bulk_2", "ess_bulk_3"}
    for r in rows:
        assert r.ess * r.iact == pytest.approx(r.checkpoint_n, rel=4e-16)
    for s in res["summary"]:
        assert s[5] <= s[3] <= s[6]  # p05 <= mean <= p95
    meta = json.loads((tmp_path / "run.json").read_text())
    assert meta["exact_iact"] == pytest.approx(10.0)
    assert len(json.loads((tmp_path / "groups.json").read_text())["groups"]) == 6
    on_disk = read_rows(tmp_path / "rows.csv")
    assert len(on_disk) == len(rows) and on_disk[0]["method"] == rows[0].method
    chains = read_chains(tmp_path / "chains.essc").samples
    np.testing.assert_array_equal(chains, res["chains"])


def test_json_format(tmp_path):
    res = run_ar1_ensemble(small_cfg(format="json", n_replicates=4), tmp_path)
    data = json.loads((tmp_path / "rows.json").read_text())
    assert len(data) == len(res["rows"]) and set(data[0]) >= {"method", "iact", "ess"}


def test_ar1_analyze_roundtrip(tmp_path):
    cfg = small_cfg(save_chains=True)
    direct = run_ar1_ensemble(cfg, tmp_path / "run")
    again = analyze(cfg, [str(tmp_path / "run" / "chains.essc")], tmp_path / "an")
    assert [r.as_tuple() for r in again["rows"]] == [r.as_tuple() for r in direct["rows"]]
    assert (tmp_path / "run" / "rows.csv").read_bytes() == (tmp_path / "an" / "rows.csv").read_bytes()


def test_ensemble_summary_from_dicts():
    rows = [{"method": "m", "checkpoint_n": "10", "iact": str(v), "ess": str(10 / v)}
            for v in (1.0, 2.0, 4.0)]
    (s,) = ensemble_summary(rows)
    assert s[:3] == ["m", 10, 3] and s[3] == pytest.approx(7 / 3)


# ---- multi-chain analysis -------------------------------------------------------

def test_table_row_values():
    r = table_row("bartlett", [2474.60], 7.99e-2, 0.148, 4 * 2_100_000)
    assert r.total_ess == pytest.approx(3394.49, abs=0.005)
    r = table_row("tukey", [24000.0, 24844.96], -0.695, 0.152, 4 * 4_800_000)
    assert r.avg_iact == pytest.approx(24422.48)
    assert r.total_ess == pytest.approx(786.16, abs=0.005)
    assert r.min_iact == 24000.0 and r.max_iact == 24844.96


def test_multichain_table(rng):
    from conftest import ar1_path
    x = np.stack([ar1_path(0.5, 3000, rng) for _ in range(4)])
    cfg = ExperimentConfig(kind="analyze", chain_length=3000, burn_in=500,
                           checkpoints=[1000, 2500])
    table, rows = multichain_table(ChainSet(x), cfg, "q")
    assert len(table) == 2 * len(cfg.estimators)
    by = {(t[1], t[2]): t for t in table}
    bart = by[("bartlett", 2500)]
    per_chain = [r.iact for r in rows if r.method == "bartlett" and r.checkpoint_n == 2500]
    assert len(per_chain) == 4 and bart[3] == pytest.approx(np.mean(per_chain))
    assert bart[6] == pytest.approx(4 * 2500 / bart[3])
    pooled = [r for r in rows if r.replicate_id == -1]
    assert {r.method for r in pooled} == {"ess_bulk_1", "ess_bulk_3"}
    assert all(r.checkpoint_n in (4000, 10000) for r in pooled)
    curve = psrf_curve(ChainSet(x), [1000, 2500], 500)
    assert all(0.9 < rh < 1.1 for _, rh in curve)
    its, per, pooled_mean = running_means(ChainSet(x), 50)
    assert its[-1] == 3000 and per.shape == (4, its.size)
    assert pooled_mean[-1] == pytest.approx(x.mean())


def test_analyze_rejects_bad_input(tmp_path):
    cfg = ExperimentConfig(kind="analyze", chain_length=100, burn_in=0, checkpoints=[50])
    with pytest.raises(ConfigError):
        analyze(cfg, [])
    bad = tmp_path / "x.essc"
    bad.write_bytes(b"XXXX" + bytes(16))
    from essbench.errors import MagicMismatchError
    with pytest.raises(MagicMismatchError):
        analyze(cfg, [str(bad)], tmp_path)


# ---- elliptic driver ----------------------------------------------------------

def _elliptic_cfg(**model):
    base = {"sampler": "da", "beta": 0.1, "n_chains": 2}
    base.update(model)
    return ExperimentConfig(kind="elliptic_run", chain_length=60, burn_in=10,
                            checkpoints=[50], model=base)


def test_elliptic_run_outputs(tmp_path):
    res = run_elliptic(_elliptic_cfg(), tmp_path)
    assert res["probes"]["A"][:2] == (0, 0) and res["probes"]["B"][:2] == (10, 14)
    theta3 = read_chains(tmp_path / "theta_03.essc").samples
    np.testing.assert_array_equal(theta3, res["thetas"][:, :, 3])
    eta_b = read_chains(tmp_path / "eta_B.essc").samples
    assert eta_b.shape == (2, 60)
    meta = json.loads((tmp_path / "run.json").read_text())
    for st in meta["chain_stats"]:
        assert st["fine_solves"] < meta["iterations"]
    assert (tmp_path / "data.json").exists()


def test_elliptic_unknown_model_key(tmp_path):
    with pytest.raises(ConfigError):
        run_elliptic(_elliptic_cfg(grid=3), tmp_path)


@pytest.mark.slow
def test_elliptic_smoke_run_reproducible(tmp_path):
    cfg = ExperimentConfig(kind="elliptic_run", master_seed=2024, chain_length=10_000,
                           burn_in=1000, checkpoints=[9000],
                           model={"sampler": "da", "beta": 0.1, "n_chains": 1})
    run_elliptic(cfg, tmp_path / "a")
    run_elliptic(cfg, tmp_path / "b")
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


# ---- CLI -------------------------------------------------------------------

def test_cli_end_to_end(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({**SMALL, "save_chains": True}))
    assert main(["ar1", "--config", str(cfg), "--out", str(tmp_path / "a"), "--seed", "5"]) == 0
    assert main(["analyze", "--config", str(cfg), "--seed", "5", "--out", str(tmp_path / "b"),
                 "--input", str(tmp_path / "a" / "chains.essc")]) == 0
    assert (tmp_path / "a" / "rows.csv").read_bytes() == (tmp_path / "b" / "rows.csv").read_bytes()
    assert main(["report", "--input", str(tmp_path / "a" / "rows.csv"),
                 "--out", str(tmp_path / "r"), "--format", "json"]) == 0
    summary = json.loads((tmp_path / "r" / "summary.json").read_text())
    assert summary[0]["method"] == "ar"
    assert "rows:" in capsys.readouterr().out


def test_cli_elliptic(tmp_path):
    cfg = tmp_path / "e.json"
    cfg.write_text(json.dumps({"kind": "elliptic_run", "chain_length": 40, "burn_in": 10,
                               "checkpoints": [30],
                               "model": {"sampler": "pcn", "n_chains": 2,
                                         "write_fields": True}}))
    out = tmp_path / "e"
    assert main(["elliptic", "synth", "--config", str(cfg), "--out", str(out)]) == 0
    assert (out / "eta_star.csv").exists() and (out / "pressure_star.csv").exists()
    assert np.loadtxt(out / "pressure_star.csv", delimiter=",").shape == (16, 16)
    assert main(["elliptic", "run", "--config", str(cfg), "--out", str(out)]) == 0
    assert main(["analyze", "--config", str(cfg), "--out", str(tmp_path / "an"),
                 "--input", str(out)]) == 0
    table = read_rows(tmp_path / "an" / "table.csv")
    assert {r["quantity"] for r in table} >= {"theta_00", "eta_A", "eta_B"}


def test_cli_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"chain_length": 10, "burn_in": 20}))
    assert main(["ar1", "--config", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        main(["ar1", "--format", "xml"])
