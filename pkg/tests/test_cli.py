"""End-to-end CLI runs, in process, against temp configs and caches."""

import csv
import json
import os
import subprocess
import sys

import pytest

from zetalab import cli


@pytest.fixture(autouse=True)
def scrub_env(monkeypatch):
    # the CLI reads ZLL_ overrides from the real environment; start clean
    for name in list(os.environ):
        if name.startswith("ZLL_"):
            monkeypatch.delenv(name)
    yield


@pytest.fixture()
def paths(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text(
        "[grid]\n"
        "l_values = 100\n"
        "u_values = 0.70\n"
        "k_triple = 2, 2, 2\n"
        "[cache]\n"
        "path = %s\n"
        "[output]\n"
        "json_path = %s\n"
        "csv_path = %s\n"
        % (tmp_path / "ladder.json", tmp_path / "out.json", tmp_path / "out.csv")
    )
    return {
        "ini": str(ini),
        "json": str(tmp_path / "out.json"),
        "csv": str(tmp_path / "out.csv"),
        "cache": str(tmp_path / "ladder.json"),
    }


def _read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestMetaRun:
    def test_exit0_payload_and_reports(self, paths, capsys):
        rc = cli.main(["meta", "--config", paths["ini"]])
        assert rc == 0
        payload = json.loads(open(paths["json"]).read())
        assert set(payload) == {"bundles", "cache", "command", "config", "exit_code"}
        assert payload["command"] == "meta"
        assert payload["exit_code"] == 0
        assert payload["cache"]["path"] == paths["cache"]
        assert payload["config"]["grid"]["u_values"] == [0.70]
        assert len(payload["bundles"]) == 1

        rows = _read_rows(paths["csv"])
        assert rows[0] == list(cli.CSV_COLUMNS)
        by_id = {r[5]: r for r in rows[1:]}
        assert by_id["THM1"][10] == "PASS"
        assert by_id["SEC"][10] == "PASS"
        # the literal variant fails by design and must not gate the exit
        assert by_id["THM2_LITERAL"][10] == "FAIL"
        assert os.path.exists(paths["cache"])

    def test_sidecar(self, paths, capsys):
        cli.main(["meta", "--config", paths["ini"]])
        side = json.loads(open(paths["json"] + ".meta.json").read())
        assert set(side) == {"command", "elapsed_seconds", "written_at_unix"}
        assert side["command"] == "meta"
        assert side["elapsed_seconds"] >= 0.0

    def test_warm_reruns_byte_identical(self, paths, capsys):
        cli.main(["meta", "--config", paths["ini"]])  # cold: builds the cache
        cli.main(["meta", "--config", paths["ini"]])
        first = open(paths["json"], "rb").read()
        first_csv = open(paths["csv"], "rb").read()
        cli.main(["meta", "--config", paths["ini"]])
        assert open(paths["json"], "rb").read() == first
        assert open(paths["csv"], "rb").read() == first_csv


class TestOtherCommands:
    def test_factorize_reports(self, paths, capsys):
        rc = cli.main(["factorize", "--config", paths["ini"]])
        assert rc == 0
        rows = _read_rows(paths["csv"])
        fact = [r for r in rows[1:] if r[5] == "FACT"]
        assert len(fact) == 3  # one verification per family triple member
        assert all(r[10] == "PASS" for r in fact)

    def test_hybrid_reports(self, paths, capsys):
        rc = cli.main(["hybrid", "--config", paths["ini"]])
        assert rc == 0
        rows = _read_rows(paths["csv"])
        got = {r[5] for r in rows[1:]}
        assert got == {"ECHF1", "DIFF", "ECHF2", "ACHF1", "ACHF2"}

    def test_graft_payload(self, paths, capsys):
        rc = cli.main(["graft", "--config", paths["ini"]])
        assert rc == 0
        payload = json.loads(open(paths["json"]).read())
        b = payload["bundles"][0]
        assert len(b["grafts"]) == 3
        assert len(b["a_values"]) == 3
        for g in b["grafts"]:
            assert g["recheck_residual"] < 1e-8

    def test_scan_trend_table(self, tmp_path, paths, capsys, monkeypatch):
        monkeypatch.setenv("ZLL_GRID_U_VALUES", "0.65, 0.70")
        rc = cli.main(["scan", "--config", paths["ini"]])
        assert rc == 0
        rows = _read_rows(paths["csv"] + ".trend.csv")
        assert rows[0] == ["equation_id", "L", "median_residual", "count"]
        echf1 = [r for r in rows[1:] if r[0] == "ECHF1"]
        assert len(echf1) == 1
        assert echf1[0][1] == "100" and echf1[0][3] == "2"

    def test_flag_paths_override_config(self, tmp_path, paths, capsys):
        alt = str(tmp_path / "alt.json")
        rc = cli.main(["factorize", "--config", paths["ini"], "--json", alt])
        assert rc == 0
        assert os.path.exists(alt)


class TestExitCodes:
    def test_missing_config_is_3(self, tmp_path, capsys):
        rc = cli.main(["meta", "--config", str(tmp_path / "absent.ini")])
        assert rc == 3

    def test_bad_jobs_is_3(self, paths, capsys):
        rc = cli.main(["meta", "--config", paths["ini"], "--jobs", "0"])
        assert rc == 3

    def test_bad_grid_is_3(self, paths, capsys, monkeypatch):
        monkeypatch.setenv("ZLL_GRID_U_VALUES", "0.9")
        rc = cli.main(["meta", "--config", paths["ini"]])
        assert rc == 3

    def test_tight_tolerance_is_2(self, paths, capsys, monkeypatch):
        monkeypatch.setenv("ZLL_TOLERANCES_CERT_TOL", "1e-15")
        rc = cli.main(["factorize", "--config", paths["ini"]])
        assert rc == 2

    def test_low_ceiling_is_4(self, paths, capsys, monkeypatch):
        monkeypatch.setenv("ZLL_BOHR_T_MAX", "15")
        rc = cli.main(["graft", "--config", paths["ini"]])
        assert rc == 4
        payload = json.loads(open(paths["json"]).read())
        b = payload["bundles"][0]
        assert len(b["graft_errors"]) == 3
        assert b["grafts"] == []

    def test_numerical_beats_notfound(self, paths, capsys, monkeypatch):
        monkeypatch.setenv("ZLL_TOLERANCES_CERT_TOL", "1e-15")
        monkeypatch.setenv("ZLL_BOHR_T_MAX", "15")
        rc = cli.main(["meta", "--config", paths["ini"]])
        assert rc == 2

    def test_unknown_command_refused(self, capsys):
        with pytest.raises(SystemExit):
            cli.main(["frobnicate"])

    def test_jobs_flag_accepted(self, paths, capsys):
        rc = cli.main(["factorize", "--config", paths["ini"], "--jobs", "4"])
        assert rc == 0


class TestEntryPoint:
    def test_module_help(self):
        out = subprocess.run(
            [sys.executable, "-m", "zetalab", "--help"],
            capture_output=True,
            text=True,
        )
        assert out.returncode == 0
        for name in cli.COMMANDS:
            assert name in out.stdout
