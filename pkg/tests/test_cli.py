"""End-to-end CLI behavior: outputs, schemas, exit codes, artifacts."""

import json

import jsonschema
import pytest

import spontrad.cli
from spontrad.errors import NumericalError
from spontrad.scan import load_curves

BAYES_LAMBDA_MP = 7.006202483028229e-12
CHI2_LAMBDA_MP = 8.097029465934479e-12
CHI2_LAMBDA_NMP = 2.401641287497066e-18


class TestFit:
    def test_exact_two_point_spectrum(self, run_cli, data_dir, schemas):
        r = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                    "--emin", 9.5, "--emax", 20.5)
        assert r.code == 0
        jsonschema.validate(r.json, schemas["fit_result"])
        assert r.json["alpha_hat"] == pytest.approx(100.0, rel=1e-12)
        assert r.json["ndf"] == 1
        assert r.json["chi2"] == pytest.approx(0.0, abs=1e-20)
        assert r.json["confidence"] == 0.95

    def test_upper_limit_uses_requested_level(self, run_cli, data_dir):
        tight = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                        "--emin", 9.5, "--emax", 20.5, "--cl", 0.68).json
        loose = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                        "--emin", 9.5, "--emax", 20.5, "--cl", 0.999).json
        assert tight["alpha_upper"] < loose["alpha_upper"]

    def test_min_counts_changes_selection(self, run_cli, data_dir):
        both = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                       "--emin", 9.5, "--emax", 20.5, "--min-counts", 1).json
        assert both["ndf"] == 1
        # Raising the threshold to 6 leaves one bin: too few to fit.
        r = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                    "--emin", 9.5, "--emax", 20.5, "--min-counts", 6)
        assert r.code == 2

    def test_fixture_fit_matches_frozen_numbers(self, run_cli, data_dir):
        r = run_cli("fit", "--input", data_dir / "synth_igex_like.csv").json
        assert r["alpha_hat"] == pytest.approx(147.98760795936903, rel=1e-12)
        assert r["sigma_alpha"] == pytest.approx(15.135433084733245, rel=1e-12)
        assert r["ndf"] == 14

    def test_out_file(self, run_cli, data_dir, tmp_path):
        out = tmp_path / "fit.json"
        r = run_cli("fit", "--input", data_dir / "two_point_exact.csv",
                    "--emin", 9.5, "--emax", 20.5, "--out", out)
        assert r.code == 0
        assert r.out == ""
        assert json.loads(out.read_text())["alpha_hat"] == pytest.approx(100.0)


class TestLimit:
    def test_bayes_total_counts_shortcut(self, run_cli, schemas):
        r = run_cli("limit", "--method", "bayes", "--y-total", 130,
                    "--bins", "15:48:1")
        assert r.code == 0
        jsonschema.validate(r.json, schemas["limit_result"])
        assert r.json["method"] == "bayes"
        assert r.json["y_total"] == 130
        assert r.json["harmonic_sum"] == pytest.approx(1.2072348485017923,
                                                       rel=1e-12)
        assert r.json["lambda_upper_s_inv"] == pytest.approx(BAYES_LAMBDA_MP,
                                                             rel=1e-12)

    def test_bayes_spectrum_file_matches_shortcut(self, run_cli, data_dir):
        from_file = run_cli("limit", "--method", "bayes",
                            "--input", data_dir / "paper_totals.csv").json
        shortcut = run_cli("limit", "--method", "bayes", "--y-total", 130,
                           "--bins", "15:48:1").json
        assert from_file == shortcut

    def test_chi2_alpha_shortcut(self, run_cli, schemas):
        r = run_cli("limit", "--method", "chi2", "--alpha-upper", 143)
        assert r.code == 0
        jsonschema.validate(r.json, schemas["limit_result"])
        assert r.json["method"] == "chi2"
        assert r.json["alpha_upper"] == 143.0
        assert r.json["lambda_upper_s_inv"] == pytest.approx(CHI2_LAMBDA_MP,
                                                             rel=1e-12)

    def test_coupling_flag(self, run_cli):
        nmp = run_cli("limit", "--method", "chi2", "--alpha-upper", 143,
                      "--coupling", "non-mass-prop").json
        assert nmp["coupling"] == "non-mass-prop"
        assert nmp["lambda_upper_s_inv"] == pytest.approx(CHI2_LAMBDA_NMP,
                                                          rel=1e-12)

    def test_r_c_scaling(self, run_cli):
        base = run_cli("limit", "--method", "bayes", "--y-total", 130,
                       "--bins", "15:48:1").json
        wide = run_cli("limit", "--method", "bayes", "--y-total", 130,
                       "--bins", "15:48:1", "--r-c", 1e-6).json
        assert wide["lambda_upper_s_inv"] == pytest.approx(
            100.0 * base["lambda_upper_s_inv"], rel=1e-9)

    def test_chi2_from_spectrum_file(self, run_cli, data_dir):
        r = run_cli("limit", "--method", "chi2",
                    "--input", data_dir / "synth_igex_like.csv").json
        fit = run_cli("fit", "--input", data_dir / "synth_igex_like.csv").json
        assert r["alpha_upper"] == pytest.approx(fit["alpha_upper"], rel=1e-12)

    def test_routes_agree_on_high_statistics(self, run_cli, tmp_path):
        # With thousands of counts the Gaussian bound and the credible bound
        # must land close; a quarter band is a loose sanity corridor.
        spec = tmp_path / "bright.csv"
        assert run_cli("synth", "--alpha", 5000, "--seed", 7,
                       "--out", spec).code == 0
        chi2 = run_cli("limit", "--method", "chi2", "--input", spec).json
        bayes = run_cli("limit", "--method", "bayes", "--input", spec).json
        ratio = chi2["lambda_upper_s_inv"] / bayes["lambda_upper_s_inv"]
        assert 0.75 < ratio < 1.25

    def test_config_file_rescales_limit(self, run_cli, tmp_path):
        cfg = tmp_path / "four.cfg"
        cfg.write_text("electrons_per_atom = 4\n")
        base = run_cli("limit", "--method", "bayes", "--y-total", 130,
                       "--bins", "15:48:1").json
        four = run_cli("limit", "--method", "bayes", "--y-total", 130,
                       "--bins", "15:48:1", "--config", cfg).json
        assert four["lambda_upper_s_inv"] == pytest.approx(
            base["lambda_upper_s_inv"] * 30.0 / 4.0, rel=1e-12)

    def test_flag_overrides_config_file(self, run_cli, tmp_path):
        cfg = tmp_path / "four.cfg"
        cfg.write_text("electrons_per_atom = 4\n")
        r = run_cli("limit", "--method", "bayes", "--y-total", 130,
                    "--bins", "15:48:1", "--config", cfg,
                    "--electrons-per-atom", 30).json
        base = run_cli("limit", "--method", "bayes", "--y-total", 130,
                       "--bins", "15:48:1").json
        assert r == base


class TestExitCodes:
    def test_validation_errors_exit_2(self, run_cli, schemas):
        cases = [
            ("limit", "--method", "chi2", "--y-total", 130,
             "--bins", "15:48:1", "--alpha-upper", 1.0),
            ("limit", "--method", "bayes", "--alpha-upper", 1.0,
             "--y-total", 130, "--bins", "15:48:1"),
            ("limit", "--method", "bayes", "--y-total", 130),
            ("limit", "--method", "bayes"),
            ("limit", "--method", "chi2"),
            ("limit", "--method", "bayes", "--y-total", 130,
             "--bins", "48:15:1"),
            ("limit", "--method", "chi2", "--alpha-upper", -1.0),
        ]
        for argv in cases:
            r = run_cli(*argv)
            assert r.code == 2, argv
            assert r.out == ""
            jsonschema.validate(r.error, schemas["error"])
            assert r.error["error"]["type"] == "validation"

    def test_missing_file_exits_3(self, run_cli, tmp_path, schemas):
        r = run_cli("fit", "--input", tmp_path / "absent.csv")
        assert r.code == 3
        jsonschema.validate(r.error, schemas["error"])
        assert r.error["error"]["type"] == "io"

    def test_numerical_failure_exits_4(self, run_cli, schemas, monkeypatch):
        def explode(spec, confidence):
            raise NumericalError("quantile inversion did not converge")

        monkeypatch.setattr(spontrad.cli, "lambda_credible_limit", explode)
        r = run_cli("limit", "--method", "bayes", "--y-total", 130,
                    "--bins", "15:48:1")
        assert r.code == 4
        jsonschema.validate(r.error, schemas["error"])
        assert r.error["error"]["type"] == "numerical"

    def test_usage_errors_keep_argparse_behavior(self, run_cli):
        with pytest.raises(SystemExit) as exc:
            run_cli("limit", "--method", "wat")
        assert exc.value.code == 2


class TestSynth:
    def test_byte_identical_runs(self, run_cli, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run_cli("synth", "--alpha", 115, "--seed", 42, "--out", a)
        run_cli("synth", "--alpha", 115, "--seed", 42, "--out", b)
        assert a.read_bytes() == b.read_bytes()

    def test_matches_checked_in_fixture(self, run_cli, data_dir):
        r = run_cli("synth", "--alpha", 115, "--seed", 42)
        assert r.out == (data_dir / "synth_igex_like.csv").read_text()

    def test_stdout_equals_file_output(self, run_cli, tmp_path):
        out = tmp_path / "s.csv"
        run_cli("synth", "--alpha", 20, "--seed", 5, "--out", out)
        r = run_cli("synth", "--alpha", 20, "--seed", 5)
        assert r.out == out.read_text()

    def test_seed_changes_output(self, run_cli):
        a = run_cli("synth", "--alpha", 115, "--seed", 1).out
        b = run_cli("synth", "--alpha", 115, "--seed", 2).out
        assert a != b

    def test_invalid_config_exits_2(self, run_cli):
        assert run_cli("synth", "--alpha", -1, "--seed", 0).code == 2


class TestScan:
    def test_curve_csv_round_trip(self, run_cli, tmp_path):
        out = tmp_path / "curves.csv"
        r = run_cli("scan", "--method", "chi2", "--alpha-upper", 143,
                    "--grid", "1e-9:1e-3:50", "--out", out)
        assert r.code == 0
        curves = load_curves(out)
        assert len(curves) == 2
        assert {c.coupling.value for c in curves} == {"mass-prop",
                                                      "non-mass-prop"}
        assert all(len(c.points) == 50 for c in curves)
        assert all(c.method == "chi2" for c in curves)

    def test_single_point_grid_matches_limit_command(self, run_cli, tmp_path):
        out = tmp_path / "one.csv"
        run_cli("scan", "--method", "bayes", "--y-total", 130,
                "--bins", "15:48:1", "--grid", "1e-7:1e-7:1", "--out", out)
        limit = run_cli("limit", "--method", "bayes", "--y-total", 130,
                        "--bins", "15:48:1").json
        curves = load_curves(out)
        mp = next(c for c in curves
                  if c.coupling.value == "mass-prop")
        assert mp.points[0] == (1e-7, limit["lambda_upper_s_inv"])

    def test_row_count_default_grid(self, run_cli, tmp_path):
        out = tmp_path / "default.csv"
        run_cli("scan", "--method", "chi2", "--alpha-upper", 143, "--out", out)
        rows = out.read_text().strip().splitlines()
        assert rows[0] == "r_c_m,lambda_limit_s_inv,coupling,method,confidence"
        assert len(rows) == 1 + 2 * 200

    def test_svg_artifact(self, run_cli, tmp_path):
        out = tmp_path / "curves.csv"
        svg = tmp_path / "plot.svg"
        r = run_cli("scan", "--method", "chi2", "--alpha-upper", 143,
                    "--grid", "1e-9:1e-3:30", "--out", out, "--svg", svg)
        assert r.code == 0
        text = svg.read_text()
        assert text.count('class="curve"') == 2
        assert text.count('class="excluded"') == 2
        assert text.count('class="marker"') == 4
        assert 'class="overlay"' not in text

    def test_svg_overlay(self, run_cli, tmp_path):
        overlay = tmp_path / "boundary.csv"
        overlay.write_text("r_c_m,lambda_s_inv\n1e-8,1e-12\n1e-6,1e-8\n")
        out = tmp_path / "curves.csv"
        svg = tmp_path / "plot.svg"
        run_cli("scan", "--method", "chi2", "--alpha-upper", 143,
                "--grid", "1e-9:1e-3:30", "--out", out,
                "--svg", svg, "--overlay", overlay)
        assert svg.read_text().count('class="overlay"') == 1

    def test_bad_grid_exits_2(self, run_cli, tmp_path):
        r = run_cli("scan", "--method", "chi2", "--alpha-upper", 143,
                    "--grid", "1e-3:1e-9:10", "--out", tmp_path / "x.csv")
        assert r.code == 2


class TestCoverage:
    def test_report_schema_and_determinism(self, run_cli, schemas):
        args = ("coverage", "--alpha", 115, "--seed", 3, "--trials", 40)
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.code == 0
        jsonschema.validate(a.json, schemas["coverage_report"])
        assert a.out == b.out
        assert a.json["trials"] == 40
        assert a.json["seed"] == 3
        assert 0.8 <= a.json["coverage_fraction"] <= 1.0

    def test_method_recorded(self, run_cli):
        r = run_cli("coverage", "--alpha", 115, "--seed", 3, "--trials", 10,
                    "--method", "chi2").json
        assert r["method"] == "chi2"
