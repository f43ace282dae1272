import json

import pytest

from xchannel import cli, gauss


def run(argv):
    return cli.main(argv)


class TestRegionCommand:
    def test_reference_setup_writes_nine_files(self, tmp_path):
        code = run([
            "region", "--alpha12", "0.8", "--alpha21", "0.2",
            "--snr-db", "0,10,50", "--kinds", "cogx,cogic,bc",
            "--grid", "9", "--out", str(tmp_path),
        ])
        assert code == 0
        files = sorted(p.name for p in tmp_path.glob("frontier_*.csv"))
        assert files == [
            f"frontier_{kind}_{snr}.csv"
            for kind in ("bc", "cogic", "cogx")
            for snr in (0, 10, 50)
        ]

    def test_zero_power_frontier_is_origin(self, tmp_path):
        code = run(["region", "--snr-db", "0", "--p", "0", "--kinds", "cogx",
                    "--grid", "5", "--out", str(tmp_path)])
        assert code == 0
        body = (tmp_path / "frontier_cogx_0.csv").read_text().splitlines()
        assert body == ["r1_bits,r2_bits", "0,0"]

    def test_json_format(self, tmp_path):
        code = run(["region", "--snr-db", "10", "--kinds", "cogic",
                    "--grid", "7", "--format", "json", "--out", str(tmp_path)])
        assert code == 0
        payload = json.loads((tmp_path / "frontier_cogic_10.json").read_text())
        assert payload["channel_kind"] == "cognitive_interference"
        assert payload["meta"]["snr_db"] == 10.0
        assert payload["points"]

    def test_deterministic_output(self, tmp_path):
        args = ["region", "--snr-db", "10", "--kinds", "cogx", "--grid", "9"]
        run(args + ["--out", str(tmp_path / "a")])
        run(args + ["--out", str(tmp_path / "b")])
        a = (tmp_path / "a" / "frontier_cogx_10.csv").read_bytes()
        b = (tmp_path / "b" / "frontier_cogx_10.csv").read_bytes()
        assert a == b

    def test_csv_has_full_precision(self, tmp_path):
        run(["region", "--snr-db", "10", "--kinds", "cogx", "--grid", "7",
             "--out", str(tmp_path)])
        rows = (tmp_path / "frontier_cogx_10.csv").read_text().splitlines()[1:]
        # at least one coordinate needs >= 15 significant digits to round-trip
        assert any(len(tok.split(".")[-1]) >= 14 for row in rows for tok in row.split(","))


class TestSlopeCommand:
    def test_p2p_slope_near_one(self, tmp_path):
        code = run(["slope", "--kind", "p2p", "--snr-db", "30,40,50,60,70",
                    "--out", str(tmp_path)])
        assert code == 0
        payload = json.loads((tmp_path / "slope_p2p.json").read_text())
        assert payload["slope"] == pytest.approx(1.0, abs=0.02)
        assert payload["reference_lines"]

    def test_cogx_slope_near_two(self, tmp_path):
        code = run(["slope", "--kind", "cogx", "--snr-db", "30,40,50,60,70",
                    "--out", str(tmp_path)])
        assert code == 0
        payload = json.loads((tmp_path / "slope_cogx.json").read_text())
        assert 1.9 <= payload["slope"] <= 2.1
        assert payload["power_policy"] == "fixed_p22"


class TestVerifyCommand:
    def test_default_seed_passes(self, tmp_path):
        code = run(["verify", "--draws", "500", "--out", str(tmp_path)])
        assert code == 0
        report = json.loads((tmp_path / "verify_report.json").read_text())
        assert report["passed"] is True
        assert {s["name"] for s in report["suites"]} >= {
            "closed-form equivalence rx1",
            "closed-form equivalence rx2",
            "gamma1 argmax property (argument)",
            "gamma2 vertex property",
            "chain rule",
        }

    def test_injected_fault_names_argmax_property(self):
        # a perturbed analytic gamma1 must trip the argmax suite
        from xchannel import selfcheck
        from xchannel.bounds import gamma1_star

        results = selfcheck.suite_gamma1_argmax(
            seed=5, n_draws=50,
            gamma1_fn=lambda ch, sig: gamma1_star(ch, sig) + 1e-3,
        )
        by_name = {r.name: r for r in results}
        assert not by_name["gamma1 argmax property (argument)"].passed
        assert by_name["gamma1 argmax property (argument)"].detail.startswith("draw")

    def test_report_is_reproducible(self, tmp_path):
        run(["verify", "--draws", "300", "--seed", "42", "--out", str(tmp_path / "a")])
        run(["verify", "--draws", "300", "--seed", "42", "--out", str(tmp_path / "b")])
        rep_a = json.loads((tmp_path / "a" / "verify_report.json").read_text())
        rep_b = json.loads((tmp_path / "b" / "verify_report.json").read_text())
        for sa, sb in zip(rep_a["suites"], rep_b["suites"]):
            assert sa["worst"] == sb["worst"]


class TestConfigHandling:
    def test_bad_beta_exits_2(self, tmp_path, capsys):
        code = run(["region", "--beta", "0", "--out", str(tmp_path)])
        assert code == 2
        assert "beta out of range" in capsys.readouterr().err

    def test_unknown_kind_exits_2(self, tmp_path, capsys):
        code = run(["region", "--kinds", "p2p", "--out", str(tmp_path)])
        assert code == 2
        assert "unknown kind" in capsys.readouterr().err

    def test_malformed_config_file_reports_line(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text('{\n  "alpha12": 0.8,\n  broken\n}\n')
        code = run(["region", "--config", str(cfg), "--out", str(tmp_path)])
        assert code == 2
        err = capsys.readouterr().err
        assert "cfg.json:3" in err

    def test_config_file_precedence(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha12": 0.0, "alpha21": 0.0, "grid": 5,
                                   "snr_db": [0.0], "kinds": ["cogic"]}))
        out1 = tmp_path / "fromfile"
        code = run(["region", "--config", str(cfg), "--out", str(out1)])
        assert code == 0
        assert (out1 / "frontier_cogic_0.csv").exists()
        # flag overrides the file's snr list
        out2 = tmp_path / "flagwins"
        code = run(["region", "--config", str(cfg), "--snr-db", "10",
                    "--out", str(out2)])
        assert code == 0
        assert (out2 / "frontier_cogic_10.csv").exists()
        assert not (out2 / "frontier_cogic_0.csv").exists()

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"alpha3": 1.0}))
        assert run(["region", "--config", str(cfg)]) == 2
        assert "unknown config key" in capsys.readouterr().err

    def test_numerical_failure_exits_3(self, tmp_path, monkeypatch, capsys):
        def boom(*args, **kwargs):
            raise gauss.SingularCovarianceError("degenerate at p11=0")

        monkeypatch.setattr(cli.regions, "sweep_cognitive_x", boom)
        code = run(["region", "--kinds", "cogx", "--out", str(tmp_path)])
        assert code == 3
        assert "numerical failure" in capsys.readouterr().err
