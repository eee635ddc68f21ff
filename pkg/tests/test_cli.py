import json
import re
import subprocess
import sys

from ahcert.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert out, f"no stdout (stderr: {err})"
    return code, json.loads(out)


RATIONAL = re.compile(r"^-?\d+/\d+$")


def walk_rationals(obj, keys=()):
    """Yield every string field that looks like it should be a rational."""
    if isinstance(obj, dict):
        for key, val in obj.items():
            yield from walk_rationals(val, keys + (key,))
    elif isinstance(obj, list):
        for val in obj:
            yield from walk_rationals(val, keys)
    elif isinstance(obj, str) and RATIONAL.match(obj):
        yield keys, obj


def test_certify_base_six_certified(capsys):
    code, report = run_json(
        capsys, "certify", "--N", "6", "--horizon", "40", "--rho", "3/2"
    )
    assert code == 0
    assert report["verdict"] == "Certified"
    assert report["constants"]["omega"] == "1/7"
    assert report["separation"]["upper_bound"] == "7/5"
    assert report["separation"]["rho"] == "3/2"
    assert report["separation"]["certificate"]["reverified"] is True
    assert report["flip"]["stages_verified"] == 41
    assert report["gap_series"]["summable_certified"] is True
    assert report["schema_version"] == "1"


def test_certify_reports_have_no_floats(capsys):
    code, out, _ = run_cli(capsys, "certify", "--N", "6", "--horizon", "12")
    assert code == 0

    def no_floats(obj):
        if isinstance(obj, float):
            return False
        if isinstance(obj, dict):
            return all(no_floats(v) for v in obj.values())
        if isinstance(obj, list):
            return all(no_floats(v) for v in obj)
        return True

    assert no_floats(json.loads(out))


def test_certify_byte_identical_reruns(capsys):
    _, out1, _ = run_cli(capsys, "certify", "--N", "6", "--horizon", "15")
    _, out2, _ = run_cli(capsys, "certify", "--N", "6", "--horizon", "15")
    assert out1 == out2


def test_certify_refuted_for_base_two(capsys):
    code, report = run_json(capsys, "certify", "--N", "2", "--horizon", "10")
    assert code == 1
    assert report["verdict"] == "Refuted"
    assert any("kappa_gt_half" in note for note in report["notes"])


def test_certify_inconclusive_at_horizon_one(capsys):
    code, report = run_json(capsys, "certify", "--N", "6", "--horizon", "1")
    assert code == 2
    assert report["verdict"] == "InconclusiveAtHorizon"


def test_certify_bad_rho_is_input_error(capsys):
    code, out, err = run_cli(capsys, "certify", "--N", "6", "--rho", "1/1")
    assert code == 3 and "input error" in err


def test_params_subcommand(capsys):
    code, report = run_json(capsys, "params", "--N", "6", "--horizon", "2")
    assert code == 0
    constants = report["constants"]
    assert constants["omega"] == "1/7"
    assert constants["r"] == ["1/1", "7/1", "259/1"]
    assert constants["t"] == ["0/1", "1/1", "42/1"]
    assert report["constraints"]["all_passed"] is True
    for _, text in walk_rationals(report):
        num, den = text.split("/")
        assert int(den) > 0


def test_rc_lower_subcommand(capsys):
    code, report = run_json(
        capsys, "rc-lower", "--N", "6", "--horizon", "40", "--rho", "3/2"
    )
    assert code == 0
    cert = report["certificate"]
    assert cert["delta"] == "1/8"
    assert cert["N1"] == "334/1"
    assert cert["reverified"] is True
    assert all(c["holds"] for c in cert["checks"])


def test_rc_lower_inconclusive_small_horizon(capsys):
    code, report = run_json(
        capsys, "rc-lower", "--N", "6", "--horizon", "1", "--rho", "3/2"
    )
    assert code == 2
    assert report["status"] == "InconclusiveAtHorizon"


def test_rc_upper_subcommand(capsys):
    code, report = run_json(capsys, "rc-upper", "--N", "6", "--horizon", "8")
    assert code == 0
    assert report["rc_upper"]["certified_limit_bound"] == "7/5"
    per_stage = {row["stage"]: row["ratio"] for row in report["rc_upper"]["per_stage"]}
    assert per_stage[1] == "13/6"


def test_chern_subcommand(capsys):
    code, report = run_json(capsys, "chern", "--k", "6")
    assert code == 0
    rows = report["embedding_ranks"]
    assert [row["min_rank"] for row in rows] == [2 * k for k in range(7)]
    assert all(row["product_is_one"] for row in rows)


def test_telescope_subcommand(capsys):
    code, report = run_json(
        capsys, "telescope", "--N", "6", "--horizon", "6", "--nu", "0,1,3"
    )
    assert code == 0
    assert report["new_family"]["d"] == ["1/1", "6/1", "7776/1"]
    assert report["new_family"]["k"] == ["0/1", "1/1", "253/1"]
    assert all(c["holds"] for c in report["checks"])


def test_trace_sim_subcommand(capsys):
    code, report = run_json(
        capsys,
        "trace-sim",
        "--N", "6",
        "--horizon", "6",
        "--stages", "3",
        "--grid", "64",
        "--exact",
    )
    assert code == 0
    sim = report["intertwining"]
    assert sim["all_within_bounds"] is True
    assert sim["step_bounds"][0] == "2/7"
    assert sim["synthetic_maps"] is True
    assert report["gap_series"]["summable_certified"] is True


def test_density_subcommand(capsys):
    code, report = run_json(
        capsys, "density", "--van-der-corput", "64", "--epsilon", "1/64"
    )
    assert code == 0 and report["dense"] is True
    code, report = run_json(
        capsys, "density", "--points", "1/2,1/2", "--epsilon", "1/4"
    )
    assert code == 1 and report["dense"] is False


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"N": 6, "horizon": 10, "rho": "3/2"}))
    code, report = run_json(capsys, "certify", "--config", str(cfg))
    assert code == 0
    assert report["config"]["horizon"] == 10
    # flags override the file
    code, report = run_json(
        capsys, "certify", "--config", str(cfg), "--horizon", "12"
    )
    assert report["config"]["horizon"] == 12


def test_explicit_family_spec_file(tmp_path, capsys):
    spec = tmp_path / "family.json"
    spec.write_text(
        json.dumps(
            {
                "d": [1, 6, 36, 216, 1296],
                "k": [0, 1, 1, 1, 1],
                "tail": {"type": "geometric", "N": 6},
            }
        )
    )
    code, report = run_json(
        capsys, "params", "--family", "explicit", "--spec", str(spec), "--horizon", "4"
    )
    assert code == 0
    assert report["constraints"]["all_passed"] is True
    assert report["constants"]["horizon_limited"] is False


def test_explicit_family_without_majorant_is_inconclusive(tmp_path, capsys):
    spec = tmp_path / "family.json"
    spec.write_text(json.dumps({"d": [1, 6, 36, 216], "k": [0, 1, 1, 1]}))
    code, report = run_json(
        capsys, "certify", "--family", "explicit", "--spec", str(spec),
        "--horizon", "3",
    )
    assert code == 2
    assert report["verdict"] == "InconclusiveAtHorizon"
    assert any("horizon-limited" in note for note in report["notes"])


def test_explicit_family_with_tail_table(tmp_path, capsys):
    spec = tmp_path / "family.json"
    spec.write_text(
        json.dumps(
            {
                "d": [1, 6, 36, 216],
                "k": [0, 1, 1, 1],
                "tail": {"type": "table", "values": ["1/5", "1/30", "1/180", "1/1080"]},
            }
        )
    )
    code, report = run_json(
        capsys, "params", "--family", "explicit", "--spec", str(spec), "--horizon", "3"
    )
    assert code == 0
    assert report["constants"]["horizon_limited"] is False

    bad = tmp_path / "bad.json"
    bad.write_text(
        json.dumps(
            {
                "d": [1, 6, 36],
                "k": [0, 1, 1],
                "tail": {"type": "table", "values": ["1/30", "1/5", "1/5"]},
            }
        )
    )
    code, _, err = run_cli(
        capsys, "params", "--family", "explicit", "--spec", str(bad), "--horizon", "2"
    )
    assert code == 3 and "nonincreasing" in err


def test_out_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, stdout, _ = run_cli(
        capsys, "certify", "--N", "6", "--horizon", "12", "--out", str(out)
    )
    assert code == 0
    assert "Certified" in stdout
    on_disk = json.loads(out.read_text())
    assert on_disk["verdict"] == "Certified"


def test_missing_config_file_is_input_error(capsys):
    code, _, err = run_cli(capsys, "certify", "--config", "/nonexistent.json")
    assert code == 3 and "input error" in err


def test_bad_nu_is_input_error(capsys):
    code, _, err = run_cli(capsys, "telescope", "--N", "6", "--nu", "0,zebra")
    assert code == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ahcert", "chern", "--k", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["embedding_ranks"][3]["min_rank"] == 6
