"""Scenario registry, artifact emission, sweeps, and golden files."""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from blochpath import (
    ConfigError,
    ScenarioConfig,
    build_scenario,
    orbit_radius,
    run_report,
    speed_efficiency_tracezero,
    sweep_alpha,
    sweep_phase_profiles,
    table_rows,
    travel_time,
)
from blochpath.scenarios import write_csv, write_json

GOLDEN = Path(__file__).parent / "golden"


def read_csv_table(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def assert_payload_close(got: dict, want: dict, rel=1e-9):
    assert set(got) == set(want)
    for key, w in want.items():
        g = got[key]
        if isinstance(w, float):
            assert g == pytest.approx(w, rel=rel, abs=1e-12), key
        elif isinstance(w, list) and w and isinstance(w[0], float):
            assert g == pytest.approx(w, rel=rel, abs=1e-12), key
        else:
            assert g == w, key


class TestConfigValidation:
    def test_unknown_scenario(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(scenario="example9")

    def test_unknown_output(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(scenario="example1", outputs=("plots",))

    def test_step_count(self):
        with pytest.raises(ConfigError):
            ScenarioConfig(scenario="example1", n_steps=1)

    def test_from_dict_round_trip_and_unknown_keys(self):
        cfg = ScenarioConfig.from_dict({
            "scenario": "example3",
            "parameters": {"gamma": 2.0},
            "t_span": [0.0, 0.5],
            "n_steps": 100,
        })
        assert cfg.scenario == "example3"
        assert cfg.parameters == {"gamma": 2.0}
        with pytest.raises(ConfigError):
            ScenarioConfig.from_dict({"scenario": "example1", "mystery": 1})

    def test_missing_required_parameter_is_named(self):
        cfg = ScenarioConfig(scenario="suboptimal_family",
                             parameters={"theta_ab": 1.0})
        with pytest.raises(ConfigError, match="alpha"):
            build_scenario(cfg)

    def test_unknown_parameter_rejected(self):
        cfg = ScenarioConfig(scenario="example3", parameters={"gamm": 1.0})
        with pytest.raises(ConfigError):
            build_scenario(cfg)

    def test_nu0_alias(self, tmp_path):
        cfg = ScenarioConfig(scenario="example2",
                             parameters={"Omega0": 0.2}, outputs=("report",),
                             n_steps=50)
        run_report(cfg, out_dir=tmp_path)
        payload = json.loads((tmp_path / "example2_report.json").read_text())
        assert payload["parameters"]["nu0"] == 0.2
        with pytest.raises(ConfigError):
            build_scenario(ScenarioConfig(
                scenario="example2",
                parameters={"Omega0": 0.2, "nu0": 0.1}))


class TestBuilders:
    def test_example1_defaults(self):
        field, psi0, grid = build_scenario(ScenarioConfig(scenario="example1"))
        assert np.allclose(field.h_at(0.0), [0.0, 0.5, 0.0], atol=1e-15)
        assert field.h0_at(0.0) == 0.0
        assert np.allclose(psi0, [1.0, 0.0])
        assert grid.n_steps == 2000
        assert (grid.t_start, grid.t_end) == (0.0, 1.0)

    def test_example3_defaults(self):
        field, psi0, grid = build_scenario(ScenarioConfig(scenario="example3"))
        assert np.allclose(field.h_at(0.7), [0.0, 0.0, 1.0])
        assert np.allclose(psi0, [np.sqrt(3) / 2, 0.5])

    def test_example4_starts_on_the_prescribed_path(self):
        _, psi0, _ = build_scenario(ScenarioConfig(scenario="example4"))
        assert np.allclose(psi0, [np.sqrt(3) / 2, 0.5], atol=1e-12)

    def test_suboptimal_family_grid_covers_travel_time(self):
        cfg = ScenarioConfig(scenario="suboptimal_family",
                             parameters={"alpha": np.pi / 4,
                                         "theta_ab": np.pi / 2})
        _, _, grid = build_scenario(cfg)
        assert grid.t_end == pytest.approx(
            travel_time(np.pi / 4, np.pi / 2, 1.0), abs=1e-12)

    def test_custom_constant_field(self):
        cfg = ScenarioConfig(scenario="custom", n_steps=100, parameters={},
                             field={"h0": 0.0, "h": [0.0, 0.0, 1.0]},
                             psi0=[[np.sqrt(3) / 2, 0.0], [0.5, 0.0]])
        field, psi0, _ = build_scenario(cfg)
        assert np.allclose(field.h_at(0.3), [0.0, 0.0, 1.0])
        assert np.allclose(psi0, [np.sqrt(3) / 2, 0.5])

    def test_custom_table_field_interpolates(self):
        cfg = ScenarioConfig(scenario="custom", n_steps=10, field={
            "times": [0.0, 1.0],
            "h0": [0.0, 1.0],
            "h": [[0.0, 0.0, 1.0], [0.0, 0.0, 3.0]],
        })
        field, psi0, _ = build_scenario(cfg)
        assert field.h0_at(0.25) == pytest.approx(0.25)
        assert np.allclose(field.h_at(0.5), [0.0, 0.0, 2.0])
        assert np.allclose(psi0, [1.0, 0.0])

    def test_custom_bloch_initial_state(self):
        cfg = ScenarioConfig(scenario="custom", n_steps=10,
                             field={"h0": 0.0, "h": [0.0, 0.0, 1.0]},
                             psi0={"bloch": [0.0, 0.0, -1.0]})
        _, psi0, _ = build_scenario(cfg)
        assert abs(psi0[0]) < 1e-12

    def test_custom_field_validation(self):
        with pytest.raises(ConfigError):
            build_scenario(ScenarioConfig(scenario="custom",
                                          field={"h0": 0.0}))
        with pytest.raises(ConfigError):
            build_scenario(ScenarioConfig(scenario="custom",
                                          field={"h0": 0.0, "h": [1.0, 0.0]}))
        with pytest.raises(ConfigError):
            build_scenario(ScenarioConfig(scenario="custom"))


class TestGoldenFiles:
    @pytest.mark.parametrize("number", [1, 2, 3, 4])
    def test_reports_match_golden(self, tmp_path, number):
        run_report(ScenarioConfig(scenario=f"example{number}",
                                  outputs=("report",)), out_dir=tmp_path)
        got = json.loads(
            (tmp_path / f"example{number}_report.json").read_text())
        want = json.loads(
            (GOLDEN / f"example{number}_report.json").read_text())
        assert_payload_close(got, want)

    def test_coarse_trajectory_matches_golden(self, tmp_path):
        run_report(ScenarioConfig(scenario="example3", n_steps=8),
                   out_dir=tmp_path)
        got_head, got_rows = read_csv_table(tmp_path / "example3_trajectory.csv")
        want_head, want_rows = read_csv_table(GOLDEN / "example3_trajectory_n8.csv")
        assert got_head == want_head
        assert len(got_rows) == len(want_rows) == 9
        for got_row, want_row in zip(got_rows, want_rows):
            for g, w in zip(got_row, want_row):
                assert float(g) == pytest.approx(float(w), abs=1e-12)

    def test_example2_report_documents_the_closed_form(self, tmp_path):
        run_report(ScenarioConfig(scenario="example2", outputs=("report",),
                                  n_steps=50), out_dir=tmp_path)
        payload = json.loads((tmp_path / "example2_report.json").read_text())
        assert payload["notes"]
        assert any("0.87" in note for note in payload["notes"])


class TestArtifacts:
    def test_run_report_writes_both_files(self, tmp_path):
        row = run_report(ScenarioConfig(scenario="example3", n_steps=100),
                         out_dir=tmp_path)
        assert (tmp_path / "example3_trajectory.csv").exists()
        assert (tmp_path / "example3_report.json").exists()
        assert row.scenario == "example3"
        head, rows = read_csv_table(tmp_path / "example3_trajectory.csv")
        assert head == ["t", "a_x", "a_y", "a_z", "delta_e", "s", "s0",
                        "eta_ge", "eta_se", "kappa_bloch"]
        assert len(rows) == 101

    def test_output_selection_skips_files(self, tmp_path):
        run_report(ScenarioConfig(scenario="example1", n_steps=50,
                                  outputs=("report",)), out_dir=tmp_path)
        assert not (tmp_path / "example1_trajectory.csv").exists()
        assert (tmp_path / "example1_report.json").exists()

    def test_determinism_byte_identical_artifacts(self, tmp_path):
        cfg = ScenarioConfig(scenario="example3", n_steps=200)
        a, b = tmp_path / "a", tmp_path / "b"
        run_report(cfg, out_dir=a)
        run_report(cfg, out_dir=b)
        for name in ("example3_trajectory.csv", "example3_report.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_csv_writer_format(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, {"x": np.array([np.sqrt(3) / 2]),
                         "y": np.array([1.0])})
        raw = path.read_bytes()
        assert b"\r\n" in raw
        assert b"0.866025403784439" in raw
        assert raw.decode().splitlines()[0] == "x,y"

    def test_json_writer_format(self, tmp_path):
        path = tmp_path / "t.json"
        write_json(path, {"b": 1, "a": 2})
        raw = path.read_text()
        assert raw.endswith("\n")
        assert raw.index('"a"') < raw.index('"b"')

    def test_table_rows_csv(self, tmp_path):
        rows = table_rows(out_dir=tmp_path, n_steps=150)
        assert [r.scenario for r in rows] == [
            "example1", "example2", "example3", "example4"]
        head, body = read_csv_table(tmp_path / "table2.csv")
        assert head == ["scenario", "eta_ge_bar", "eta_se_bar", "eta_he",
                        "classification"]
        assert len(body) == 4
        assert body[0][4] == "GeodesicUnwasteful"


class TestSweepAlpha:
    def test_quarter_turn_grid(self):
        table = sweep_alpha(np.pi / 2, 5)
        assert list(table) == ["alpha", "s", "t_ab", "delta_e", "eta_ge",
                               "eta_se"]
        assert table["alpha"][0] == pytest.approx(1e-6)
        assert table["alpha"][-1] == pytest.approx(np.pi - 1e-6)
        # interior point is exactly pi/2: geodesic row
        assert table["alpha"][2] == pytest.approx(np.pi / 2, abs=1e-15)
        assert table["s"][2] == pytest.approx(np.pi / 2, abs=1e-12)
        assert table["eta_ge"][2] == pytest.approx(1.0, abs=1e-12)
        assert table["eta_se"][2] == pytest.approx(1.0, abs=1e-12)

    def test_extrema_sit_nearest_the_geodesic_plane(self):
        table = sweep_alpha(2.0, 21)
        nearest = int(np.argmin(np.abs(table["alpha"] - np.pi / 2)))
        assert int(np.argmin(table["s"])) == nearest
        assert int(np.argmax(table["eta_ge"])) == nearest

    def test_speed_column_is_the_orbit_radius(self):
        table = sweep_alpha(1.2, 9, E=2.5)
        expected = [orbit_radius(a, 1.2) for a in table["alpha"]]
        assert np.allclose(table["eta_se"], expected, atol=1e-12)

    def test_antipodal_limit(self):
        table = sweep_alpha(np.pi - 1e-6, 9)
        assert np.max(np.abs(table["s"] - np.pi)) < 1e-4

    def test_validation(self):
        with pytest.raises(ConfigError):
            sweep_alpha(np.pi / 2, 2)
        with pytest.raises(ConfigError):
            sweep_alpha(4.0, 5)
        with pytest.raises(ConfigError):
            sweep_alpha(np.pi / 2, 5, E=0.0)


class TestPhaseProfiles:
    def test_columns_and_t0_agreement(self):
        tables = {p: sweep_phase_profiles(p, 1.0, 1.0, 1.0, t_end=5.0,
                                          n_points=101)
                  for p in ("log", "linear", "exp")}
        for table in tables.values():
            assert list(table) == ["t", "phi", "phi_dot",
                                   "eta_se_trace_zero",
                                   "eta_se_trace_nonzero"]
        # equal initial slopes mean equal initial efficiencies
        for table in tables.values():
            assert table["eta_se_trace_zero"][0] \
                == pytest.approx(1.0 / np.sqrt(1.25), abs=1e-12)
        zeros = [t["eta_se_trace_zero"][0] for t in tables.values()]
        assert np.ptp(zeros) < 1e-15

    def test_log_profile_values_and_monotonicity(self):
        table = sweep_phase_profiles("log", 2.0, 1.5, 1.0, t_end=8.0,
                                     n_points=200)
        t = table["t"]
        assert np.allclose(table["phi"],
                           2.0 * np.log1p((1.5 / 2.0) * t), atol=1e-12)
        assert np.all(np.diff(table["eta_se_trace_zero"]) > 0.0)
        assert table["eta_se_trace_zero"][-1] > 0.99

    def test_linear_profile_is_constant(self):
        table = sweep_phase_profiles("linear", 1.0, 1.0, 1.0, n_points=50)
        expected = speed_efficiency_tracezero(1.0, 1.0)
        assert np.allclose(table["eta_se_trace_zero"], expected, atol=1e-12)

    def test_exp_profile_decays(self):
        table = sweep_phase_profiles("exp", 1.0, 1.0, 1.0, t_end=5.0,
                                     n_points=50)
        assert table["eta_se_trace_zero"][-1] < 0.05
        assert np.all(table["eta_se_trace_nonzero"]
                      <= table["eta_se_trace_zero"] + 1e-12)

    def test_validation(self):
        with pytest.raises(ConfigError):
            sweep_phase_profiles("log", 0.0, 1.0, 1.0)
        with pytest.raises(ConfigError):
            sweep_phase_profiles("cubic", 1.0, 1.0, 1.0)
        with pytest.raises(ConfigError):
            sweep_phase_profiles("linear", 1.0, 1.0, 1.0, n_points=1)
