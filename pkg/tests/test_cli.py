import csv
import io
import json

import numpy as np
import pytest

from quadcoherent.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows


def test_analyze_penning_gamma_pattern(capsys):
    code, out, _ = run_cli(
        capsys, "analyze", "--penning", "--omega-c", "2", "--omega-z", "1", "--epsilon", "0"
    )
    assert code == 0
    report = json.loads(out)
    assert report["regime"] == "trap"
    assert report["gamma"] == [1, -1, 1]
    assert report["omega"][0] == pytest.approx(1.0 + 2**-0.5, rel=1e-9)
    assert report["g0_prime"] == pytest.approx(0.5 + 2**-0.5, rel=1e-9)
    assert report["E000"] == report["g0_prime"]
    # report round-trips through JSON without loss
    assert json.loads(json.dumps(report)) == report


def test_analyze_file_unit_oscillator(capsys, tmp_path):
    path = write_json(tmp_path, "ho.json", {"n": 1, "B": [[1.0, 0.0], [0.0, 1.0]]})
    code, out, _ = run_cli(capsys, "analyze", "--file", path)
    assert code == 0
    report = json.loads(out)
    assert report["g0_prime"] == pytest.approx(0.5)
    assert report["heisenberg"][0] == pytest.approx(0.5)
    assert report["rs_margin"][0] == pytest.approx(0.0, abs=1e-12)


def test_analyze_unstable_exit_code(capsys, tmp_path):
    path = write_json(tmp_path, "inverted.json", {"n": 1, "B": [[1.0, 0.0], [0.0, -1.0]]})
    code, out, _ = run_cli(capsys, "analyze", "--file", path)
    assert code == 2
    report = json.loads(out)
    assert report["regime"] == "unstable"


def test_analyze_degenerate_exit_code(capsys, tmp_path):
    path = write_json(
        tmp_path,
        "degenerate.json",
        {"n": 2, "B": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
    )
    code, out, _ = run_cli(capsys, "analyze", "--file", path)
    assert code == 2
    assert json.loads(out)["regime"] == "degenerate"


def test_analyze_malformed_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(capsys, "analyze", "--file", str(path))
    assert code == 1
    assert "invalid_json" in err


def test_analyze_requires_input(capsys):
    code, _, err = run_cli(capsys, "analyze")
    assert code == 1
    assert "no input" in err


def test_bad_flag_exits_one(capsys):
    code, _, err = run_cli(capsys, "analyze", "--bogus")
    assert code == 1


def test_wavefunction_norm_and_symmetry(capsys, tmp_path):
    path = write_json(tmp_path, "ho.json", {"n": 1, "B": [[1.0, 0.0], [0.0, 1.0]]})
    code, out, _ = run_cli(
        capsys, "wavefunction", "--file", path, "--grid", "1:-8:8:401"
    )
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 401
    dens = np.array([float(r["abs2"]) for r in rows])
    xs = np.array([float(r["x1"]) for r in rows])
    h = xs[1] - xs[0]
    assert np.sum(dens) * h == pytest.approx(1.0, abs=1e-5)
    np.testing.assert_allclose(dens, dens[::-1], atol=1e-12)


def test_wavefunction_displaced_peak(capsys, tmp_path):
    path = write_json(tmp_path, "ho.json", {"n": 1, "B": [[1.0, 0.0], [0.0, 1.0]]})
    code, out, _ = run_cli(
        capsys, "wavefunction", "--file", path, "--z", "1:0", "--grid", "1:-8:8:801"
    )
    assert code == 0
    rows = parse_csv(out)
    dens = np.array([float(r["abs2"]) for r in rows])
    xs = np.array([float(r["x1"]) for r in rows])
    peak = xs[int(np.argmax(dens))]
    assert abs(peak - np.sqrt(2.0)) <= xs[1] - xs[0]


def test_wavefunction_rejects_nontrap(capsys, tmp_path):
    path = write_json(tmp_path, "inv.json", {"n": 1, "B": [[1.0, 0.0], [0.0, -1.0]]})
    code, _, err = run_cli(capsys, "wavefunction", "--file", path)
    assert code == 2
    assert "unstable" in err


def test_sweep_minimal_on_symmetric_line(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--delta-range", "0.05:0.95", "--epsilon-range", "0:0", "--steps", "20"
    )
    assert code == 0
    rows = parse_csv(out)
    assert len(rows) == 400
    for row in rows:
        assert abs(float(row["dx_dpx"]) - 0.5) < 1e-9
        assert float(row["dz_dpz"]) == 0.5


def test_sweep_surface_properties(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--delta-range", "0.1:0.9", "--epsilon-range=-0.8:0.8", "--steps", "9"
    )
    assert code == 0
    rows = parse_csv(out)
    values = np.array([float(r["dx_dpx"]) for r in rows]).reshape(9, 9)
    epsilons = np.array([float(r["epsilon"]) for r in rows]).reshape(9, 9)[0]
    assert np.all(values >= 0.5 - 1e-12)
    # epsilon grid is symmetric, so column j mirrors column -1-j
    np.testing.assert_allclose(values, values[:, ::-1], atol=1e-10)
    off_axis = np.abs(epsilons) >= 0.1
    assert np.all(values[:, off_axis] > 0.5)


def test_sweep_deterministic_output(capsys):
    args = ("sweep", "--delta-range", "0.2:0.8", "--epsilon-range=-0.5:0.5", "--steps", "5")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_sweep_range_validation(capsys):
    code, _, err = run_cli(capsys, "sweep", "--delta-range", "0:0.5")
    assert code == 1
    assert "range_error" in err


def test_evolve_conserved_columns(capsys):
    code, out, _ = run_cli(
        capsys,
        "evolve",
        "--penning",
        "--z",
        "0.4:0.1,0.3:-0.2,0:0.5",
        "--t-max",
        "20",
        "--steps",
        "200",
    )
    assert code == 0
    rows = parse_csv(out)
    energy = np.array([float(r["energy"]) for r in rows])
    np.testing.assert_allclose(energy, energy[0], atol=1e-12)
    for k in (1, 2, 3):
        mod = np.array(
            [abs(complex(float(r[f"re_z{k}"]), float(r[f"im_z{k}"]))) for r in rows]
        )
        np.testing.assert_allclose(mod, mod[0], atol=1e-12)


def test_evolve_penning_slow_mode_counterclockwise(capsys):
    code, out, _ = run_cli(
        capsys, "evolve", "--penning", "--z", "0:0,1:0,0:0", "--t-max", "2", "--steps", "12"
    )
    assert code == 0
    rows = parse_csv(out)
    # mode 2 carries gamma = -1, so its label rotates counterclockwise
    angles = np.unwrap(
        [np.angle(complex(float(r["re_z2"]), float(r["im_z2"]))) for r in rows]
    )
    assert np.all(np.diff(angles) > 0)


def test_evolve_steps_validation(capsys):
    code, _, err = run_cli(capsys, "evolve", "--penning", "--steps", "1")
    assert code == 1
    assert "range_error" in err


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "analyze", "--penning", "--epsilon", "0.3", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    report = json.loads(target.read_text())
    assert report["regime"] == "trap"
