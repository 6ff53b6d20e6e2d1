import json
import time

import httpx
import pytest

from medsynth.cli import EXIT_CONFIG, EXIT_OK, EXIT_PARTIAL, main
from medsynth.exceptions import ConfigError
from medsynth.genclient import RemoteBackend
from medsynth.pipeline import (RUN_FILES, bundled_config_path, cmd_all, cmd_evaluate, cmd_generate,
                               cmd_profile, load_config, load_real)

DATA_DIR = bundled_config_path().parent


def _write_config(tmp_path, **changes):
    doc = json.loads(bundled_config_path().read_text())
    for key in ("path", "schema"):
        doc["dataset"][key] = str(DATA_DIR / doc["dataset"][key])
    doc["rules"] = str(DATA_DIR / doc["rules"])
    doc["checks"] = str(DATA_DIR / doc["checks"])
    doc["output_dir"] = str(tmp_path / "out")
    doc["utility"] = {"classifiers": ["decision_tree"], "repeats": 1}
    for key, value in changes.items():
        if key == "label":
            doc["dataset"]["label"] = value
        else:
            doc[key] = value
    path = tmp_path / "config.json"
    path.write_text(json.dumps(doc))
    return path


# ---------------------------------------------------------------- config

def test_config_defaults_and_overrides(cfg_factory):
    cfg = cfg_factory(k=50, tiers=["clinrule"], seed=3)
    assert (cfg.k, cfg.tiers, cfg.seed, cfg.label) == (50, ["ClinRule"], 3, "diabetes")
    assert cfg.run_id(cfg.backends[0], "ClinRule") == "diabetes-mock-ClinRule-3"
    assert len(cfg.rules) == 3 and len(cfg.schema) == 9


@pytest.mark.parametrize("overrides", [{"k": 0}, {"backends": ["nope"]}, {"tiers": ["FewShot"]}])
def test_config_errors(cfg_factory, overrides):
    with pytest.raises(ConfigError):
        cfg_factory(**overrides)


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)


# ---------------------------------------------------------------- stages

def test_profile_has_nine_columns_and_is_stable(cfg_factory):
    cfg = cfg_factory()
    cmd_profile(cfg)
    first = (cfg.output_dir / "profile.json").read_bytes()
    assert len(json.loads(first)["schema"]) == 9
    cmd_profile(cfg)
    assert (cfg.output_dir / "profile.json").read_bytes() == first


def test_mock_generation_accepts_nearly_all(cfg_factory):
    cfg = cfg_factory(k=100, tiers=["ClinRule"])
    (meta,) = cmd_generate(cfg)
    assert meta["status"] == "ok" and meta["n_accepted"] >= 95
    run_dir = cfg.run_dir(meta["run_id"])
    assert sorted(p.name for p in run_dir.iterdir()) == sorted(RUN_FILES)
    raw = [json.loads(ln) for ln in (run_dir / "raw.ndjson").read_text().splitlines()]
    assert len(raw) == 100
    accepted = (run_dir / "accepted.ndjson").read_text().splitlines()
    assert len(accepted) == meta["n_accepted"]


def test_zero_tiers_is_a_no_op(cfg_factory):
    cfg = cfg_factory(tiers=[])
    assert cmd_generate(cfg) == []
    assert not (cfg.output_dir / "runs").exists()


def test_remote_failure_is_isolated(tmp_path):
    path = _write_config(tmp_path, k=40, tiers=["ClinRule"],
                         backends=[{"name": "mock", "type": "mock"},
                                   {"name": "remote", "type": "remote",
                                    "endpoint": "http://models.test/v1", "model": "m"}])
    cfg = load_config(path)
    remote = RemoteBackend("http://models.test/v1", "m", api_key="k", name="remote",
                           transport=httpx.MockTransport(lambda r: httpx.Response(401)))
    metas = cmd_generate(cfg, backends={"remote": remote})
    assert [m["status"] for m in metas] == ["ok", "failed"]
    assert "401" in metas[1]["error"]
    report, runs = cmd_evaluate(cfg)
    assert [r.status for r in runs] == ["ok", "failed"]
    assert "scores" in report["runs"][0] and "scores" not in report["runs"][1]


def test_copy_of_real_scores_ideal_distances(cfg_factory):
    cfg = cfg_factory(k=30, tiers=["StatGuide"])
    (meta,) = cmd_generate(cfg)
    load_real(cfg).to_csv(cfg.run_dir(meta["run_id"]) / "accepted.csv")
    _, (run,) = cmd_evaluate(cfg)
    for name, m in run.quality.items():
        if name.split("[")[0] in ("wasserstein", "ks", "jsd", "entropy_gap", "chi2", "range_overflow"):
            assert m.value == pytest.approx(0, abs=1e-9), name
    assert run.quality["correlation_gap"].value == pytest.approx(0, abs=1e-12)
    assert run.privacy["identifiability"].value == 1.0


def test_two_run_pool_spans_normalized_extremes(cfg_factory):
    report, _ = cmd_all(cfg_factory(k=60))
    normalized = [r["scores"]["normalized"]["quality"] for r in report["runs"]]
    assert len(normalized) == 2
    varying = [k for k in normalized[0] if normalized[0][k] != normalized[1][k]]
    assert varying
    for k in varying:
        assert sorted((normalized[0][k], normalized[1][k])) == [0.0, 1.0]


def test_missing_label_degrades_only_utility(tmp_path):
    cfg = load_config(_write_config(tmp_path, k=40, tiers=["ClinRule"], label=None))
    assert cfg.label is None
    report, (run,) = cmd_all(cfg)
    assert run.status == "ok" and run.utility == {}
    assert run.unavailable["utility"] and run.quality and run.privacy


def test_report_artifacts_exist(cfg_factory):
    cfg = cfg_factory(k=40)
    report, _ = cmd_all(cfg)
    for entry in report["runs"]:
        assert set(entry["artifacts"]) == {n.replace(".", "_") for n in RUN_FILES}
        for rel in entry["artifacts"].values():
            assert (cfg.output_dir / rel).is_file()


# ---------------------------------------------------------------- CLI

def test_cli_all_on_bundled_fixture(tmp_path, capsys):
    start = time.perf_counter()
    code = main(["all", "--out", str(tmp_path / "o"), "--jobs", "2"])
    assert code == EXIT_OK and time.perf_counter() - start < 60
    assert (tmp_path / "o" / "report.json").is_file() and (tmp_path / "o" / "report.md").is_file()
    assert "report.json" in capsys.readouterr().out


def test_cli_invalid_config(tmp_path, capsys):
    bad = tmp_path / "c.json"
    bad.write_text('{"dataset": {}}')
    assert main(["all", "--config", str(bad)]) == EXIT_CONFIG
    assert "configuration error" in capsys.readouterr().err
    assert main(["generate", "--k", "0", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_cli_partial_failure_exit_code(tmp_path):
    path = _write_config(tmp_path, k=20, tiers=["ClinRule"],
                         generation={"batch_size": 20, "retries": 0},
                         backends=[{"name": "mock", "type": "mock"},
                                   {"name": "down", "type": "remote",
                                    "endpoint": "http://127.0.0.1:9/v1", "model": "m",
                                    "timeout": 2.0}])
    assert main(["all", "--config", str(path)]) == EXIT_PARTIAL
    runs = json.loads((tmp_path / "out" / "report.json").read_text())["runs"]
    assert [r["status"] for r in runs] == ["ok", "failed"]


@pytest.mark.filterwarnings("ignore:column .* has zero variance:RuntimeWarning")
def test_cli_profile_and_filters(tmp_path, capsys):
    out = tmp_path / "p"
    assert main(["-v", "profile", "--out", str(out)]) == EXIT_OK
    assert (out / "profile.json").is_file()
    assert main(["generate", "--out", str(out), "--tier", "SeedEx", "--k", "10", "--seed", "1"]) == EXIT_OK
    assert "diabetes-mock-SeedEx-1: ok" in capsys.readouterr().out
    assert main(["evaluate", "--out", str(out), "--tier", "SeedEx", "--seed", "1"]) == EXIT_OK


def test_cli_rejects_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
