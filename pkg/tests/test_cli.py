"""Command-line interface: subcommands, formats, exit codes, and overrides."""

import json

import pytest

from ftqc_estimator import cli
from ftqc_estimator.layout import layout_qubits


def write_job(tmp_path, name="job.json", **fields):
    data = {
        "input": {"logicalCounts": {"numQubits": 4, "tCount": 1000, "measurementCount": 10}},
        "qubitParams": "qubit_gate_ns_e4",
        "errorBudget": 1e-3,
    }
    data.update(fields)
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEstimateCommand:
    def test_profile_values_echo_into_report(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            input={"postLayout": {"logicalQubitsPostLayout": 100, "algorithmicDepth": 1000}},
            qubitParams="qubit_maj_ns_e4",
            errorBudget=1e-4,
        )
        code, out, err = run(capsys, "estimate", "--job", str(job))
        assert code == 0, err
        report = json.loads(out)
        params = report["physicalQubitParameters"]
        assert params["tGateTime"] == 100.0
        assert params["oneQubitMeasurementTime"] == 100.0
        assert params["twoQubitMeasurementTime"] == 100.0
        assert params["cliffordErrorRate"] == 1e-4
        assert params["tGateErrorRate"] == 0.05
        assert params["instructionSet"] == "majorana"

    def test_two_input_variants_rejected(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            input={
                "tracePath": "trace.jsonl",
                "logicalCounts": {"numQubits": 1},
            },
        )
        code, out, err = run(capsys, "estimate", "--job", str(job))
        assert code == 2
        payload = json.loads(err)
        assert payload["error"]["type"] == "ConfigError"

    def test_minimal_measurement_job(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            input={"logicalCounts": {"numQubits": 1, "measurementCount": 1}},
            qubitParams="qubit_maj_ns_e4",
            errorBudget=0.01,
        )
        code, out, err = run(capsys, "estimate", "--job", str(job))
        assert code == 0, err
        report = json.loads(out)
        breakdown = report["resourceEstimatesBreakdown"]
        assert breakdown["numTFactoryCopies"] == 0
        footprint = report["logicalQubitParameters"]["physicalQubitsPerLogicalQubit"]
        expected = layout_qubits(1) * footprint
        assert report["physicalResourceEstimates"]["physicalQubits"] == expected

    def test_trace_input(self, tmp_path, capsys):
        trace = tmp_path / "trace.jsonl"
        trace.write_text(
            '{"op":"alloc","q":[0,1,2]}\n'
            '{"op":"ccz","q":[0,1,2]}\n'
            '{"op":"measure","q":[0]}\n'
        )
        job = write_job(tmp_path, input={"tracePath": "trace.jsonl"})
        code, out, err = run(capsys, "estimate", "--job", str(job))
        assert code == 0, err
        report = json.loads(out)
        assert report["preLayoutLogicalResources"]["cczCount"] == 1
        assert report["resourceEstimatesBreakdown"]["numTStates"] == 4

    def test_out_file_and_table_format(self, tmp_path, capsys):
        job = write_job(tmp_path)
        out_path = tmp_path / "report.json"
        code, _, _ = run(capsys, "estimate", "--job", str(job), "--out", str(out_path))
        assert code == 0
        assert json.loads(out_path.read_text())["assumptions"]
        code, out, _ = run(capsys, "estimate", "--job", str(job), "--format", "table")
        assert code == 0
        assert "physicalResourceEstimates.physicalQubits" in out

    def test_infeasible_job_exits_3(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            qubitParams={
                "instructionSet": "gateBased",
                "oneQubitGateTime": 50.0,
                "twoQubitGateTime": 50.0,
                "oneQubitMeasurementTime": 100.0,
                "tGateTime": 50.0,
                "cliffordErrorRate": 0.5,
                "readoutErrorRate": 0.5,
                "tGateErrorRate": 0.5,
            },
            qecScheme="surface_code",
        )
        code, out, err = run(capsys, "estimate", "--job", str(job))
        assert code == 3
        payload = json.loads(err)
        assert payload["error"]["type"] == "AboveThresholdError"
        assert payload["error"]["stage"] == "code-distance"

    def test_missing_job_file_exits_2(self, tmp_path, capsys):
        code, _, err = run(capsys, "estimate", "--job", str(tmp_path / "absent.json"))
        assert code == 2
        assert json.loads(err)["error"]["type"] == "ConfigError"

    def test_inline_params_require_scheme(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            qubitParams={
                "instructionSet": "majorana",
                "oneQubitMeasurementTime": 100.0,
                "twoQubitMeasurementTime": 100.0,
                "tGateTime": 100.0,
                "cliffordErrorRate": 1e-4,
                "readoutErrorRate": 1e-4,
                "tGateErrorRate": 0.01,
            },
        )
        code, _, err = run(capsys, "estimate", "--job", str(job))
        assert code == 2
        assert "qecScheme" in json.loads(err)["error"]["message"]


class TestSweepCommand:
    def test_distance_grows_as_budget_shrinks(self, tmp_path, capsys):
        job = write_job(tmp_path, errorBudget={"total": 1e-2})
        out_csv = tmp_path / "sweep.csv"
        code, _, err = run(
            capsys,
            "sweep",
            "--job",
            str(job),
            "--param",
            "errorBudget.total",
            "--values",
            "1e-2,1e-4,1e-6",
            "--out",
            str(out_csv),
        )
        assert code == 0, err
        lines = out_csv.read_text().strip().splitlines()
        assert lines[0] == "value,physicalQubits,runtime_ns,codeDistance,rqops,numTFactoryCopies,error"
        distances = [int(line.split(",")[3]) for line in lines[1:]]
        assert len(distances) == 3
        assert distances == sorted(distances)

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        job = write_job(tmp_path, errorBudget={"total": 1e-2})
        args = (
            "sweep",
            "--job",
            str(job),
            "--param",
            "errorBudget.total",
            "--values",
            "1e-2,1e-3",
        )
        code1, out1, _ = run(capsys, *args)
        code2, out2, _ = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_failed_values_become_error_rows(self, tmp_path, capsys):
        job = write_job(tmp_path, errorBudget={"total": 1e-3})
        code, out, _ = run(
            capsys,
            "sweep",
            "--job",
            str(job),
            "--param",
            "errorBudget.total",
            "--values",
            "1e-3,0.0",
        )
        assert code == 0
        rows = out.strip().splitlines()[1:]
        assert rows[0].endswith(",")  # success row, empty error column
        assert "ConfigError" in rows[1]

    def test_empty_values_rejected(self, tmp_path, capsys):
        job = write_job(tmp_path)
        code, _, err = run(
            capsys, "sweep", "--job", str(job), "--param", "errorBudget.total", "--values", ","
        )
        assert code == 2
        assert json.loads(err)["error"]["type"] == "ConfigError"

    def test_bad_path_rejected(self, tmp_path, capsys):
        job = write_job(tmp_path)
        code, _, err = run(
            capsys, "sweep", "--job", str(job), "--param", "no.such.field", "--values", "1"
        )
        assert code == 2

    def test_integer_field_sweep(self, tmp_path, capsys):
        job = write_job(tmp_path)
        code, out, err = run(
            capsys,
            "sweep",
            "--job",
            str(job),
            "--param",
            "input.logicalCounts.tCount",
            "--values",
            "1000,4000,16000",
        )
        assert code == 0, err
        rows = out.strip().splitlines()[1:]
        assert all(row.endswith(",") for row in rows)


class TestFrontierCommand:
    def test_structured_points(self, tmp_path, capsys):
        job = write_job(
            tmp_path,
            input={"logicalCounts": {"numQubits": 50, "tCount": 200000}},
        )
        code, out, err = run(
            capsys, "frontier", "--job", str(job), "--slowdown-grid", "1,2,4"
        )
        assert code == 0, err
        payload = json.loads(out)
        qubits = [p["physicalQubits"] for p in payload["points"]]
        assert qubits == sorted(qubits, reverse=True)
        assert payload["errors"] == []

    def test_table_format(self, tmp_path, capsys):
        job = write_job(tmp_path)
        code, out, _ = run(
            capsys, "frontier", "--job", str(job), "--slowdown-grid", "1", "--format", "table"
        )
        assert code == 0
        assert out.splitlines()[0] == "slowdown,physicalQubits,runtime_ns"


class TestProfilesCommand:
    def test_lists_six_builtins(self, capsys):
        code, out, _ = run(capsys, "profiles")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 7  # header + six profiles
        names = [line.split()[0] for line in lines[1:]]
        assert names == [
            "qubit_gate_ns_e3",
            "qubit_gate_ns_e4",
            "qubit_gate_us_e3",
            "qubit_gate_us_e4",
            "qubit_maj_ns_e4",
            "qubit_maj_ns_e6",
        ]

    def test_structured_output_matches(self, capsys):
        code, out, _ = run(capsys, "profiles", "--format", "structured")
        assert code == 0
        payload = json.loads(out)
        by_name = {p["name"]: p for p in payload}
        maj = by_name["qubit_maj_ns_e4"]
        assert maj["qubitParams"]["tGateTime"] == 100.0
        assert maj["qubitParams"]["cliffordErrorRate"] == 1e-4
        assert maj["qubitParams"]["tGateErrorRate"] == 0.05
        assert maj["defaultQecScheme"] == "floquet_code"

    def test_profile_dir_override(self, tmp_path, capsys, monkeypatch):
        custom = {
            "name": "bespoke",
            "description": "test-only",
            "qubitParams": {
                "instructionSet": "gateBased",
                "oneQubitGateTime": 10.0,
                "twoQubitGateTime": 10.0,
                "oneQubitMeasurementTime": 20.0,
                "tGateTime": 10.0,
                "cliffordErrorRate": 1e-3,
                "readoutErrorRate": 1e-3,
                "tGateErrorRate": 1e-3,
            },
            "defaultQecScheme": "surface_code",
        }
        (tmp_path / "bespoke.json").write_text(json.dumps(custom))
        monkeypatch.setenv("FTQC_PROFILE_DIR", str(tmp_path))
        code, out, _ = run(capsys, "profiles", "--format", "structured")
        assert code == 0
        payload = json.loads(out)
        assert [p["name"] for p in payload] == ["bespoke"]

    def test_profile_dir_override_for_jobs(self, tmp_path, capsys, monkeypatch):
        base, _, _ = run(capsys, "profiles", "--format", "structured")
        monkeypatch.setenv("FTQC_PROFILE_DIR", str(tmp_path / "empty"))
        (tmp_path / "empty").mkdir()
        job = write_job(tmp_path, qubitParams="qubit_gate_ns_e4")
        code, _, err = run(capsys, "estimate", "--job", str(job))
        assert code == 2
        assert "qubit_gate_ns_e4" in json.loads(err)["error"]["message"]


class TestUsage:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["simulate"])
        assert excinfo.value.code != 0

    def test_no_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main([])
        assert excinfo.value.code != 0

    def test_bad_numeric_list(self, tmp_path, capsys):
        job = write_job(tmp_path)
        code, _, err = run(
            capsys, "frontier", "--job", str(job), "--slowdown-grid", "fast"
        )
        assert code == 2
