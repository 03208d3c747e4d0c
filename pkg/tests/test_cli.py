import json
import subprocess
import sys

import pytest

from hankelet.cli import main
from hankelet.errors import DivergenceError

SMALL_TOML = """
[battery]
alphas = [0.5]
inequalities = ["HEIS_HANKEL_SUM", "LINF_BOUND", "ENTROPY_HWT", "LIEB_LP"]

[[wavelets]]
k = 2
sigma = 2.0

[[functions]]
family = "gaussian"
width = 1.0

[params]
lieb_p = [3.0]

[grid]
core_panels = 8
nodes_per_panel = 16
radius = 40.0
origin_levels = 1
a_min = 0.0625
a_max = 16.0

[output]
figures = false
"""


def write(tmp_path, text, name="cfg.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_wavelet_info_outputs(capsys):
    assert main(["wavelet-info", "--k", "2", "--sigma", "2", "--alpha", "0"]) == 0
    out = capsys.readouterr().out
    assert "0.03125" in out and "0.015625" in out
    assert "entropy precondition ||psi||^2 <= c_psi: OK (ratio 2)" in out
    assert main(["wavelet-info", "--k", "2", "--sigma", "1", "--alpha", "0"]) == 0
    assert "FAILED (ratio 0.5)" in capsys.readouterr().out
    assert main(["wavelet-info", "--k", "0", "--sigma", "1", "--alpha", "0"]) == 2


def test_transform_csv_and_footer(tmp_path, capsys):
    assert main(["transform", "--family", "gaussian", "--alpha", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "xi,H(f)(xi)" and len(lines) == 514
    assert lines[-1].startswith("# gaussian") and "alpha=1" in lines[-1]
    assert float(lines[-1].rsplit("=", 1)[1]) <= 1e-8
    out = tmp_path / "z.csv"
    assert main(["transform", "--family", "zero", "--alpha", "0", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()[1:-1]
    assert all(float(r.split(",")[1]) == 0.0 for r in rows)
    assert main(["transform", "--family", "nope", "--alpha", "0"]) == 2


def test_config_errors_exit_two(tmp_path, capsys):
    bad_beta = SMALL_TOML.replace("lieb_p = [3.0]", "lieb_p = [3.0]\npitt_beta = [1.5]")
    assert main(["audit", write(tmp_path, bad_beta)]) == 2
    assert "Pitt bound" in capsys.readouterr().err
    assert main(["audit", write(tmp_path, SMALL_TOML + "\n[battery.extra]\nbogus = 1\n")]) == 2
    assert main(["audit", write(tmp_path, "[battery\nalphas = [0]")]) == 2
    assert "line" in capsys.readouterr().err
    unknown = SMALL_TOML.replace("[battery]\n", "[battery]\nbogus = 1\n")
    assert main(["audit", write(tmp_path, unknown)]) == 2
    assert "battery.bogus" in capsys.readouterr().err
    assert main(["audit", str(tmp_path / "missing.toml")]) == 2


def test_refusal_is_not_a_failure(tmp_path, capsys):
    cfg = SMALL_TOML.replace("sigma = 2.0", "sigma = 1.0")
    assert main(["audit", write(tmp_path, cfg), "--out-dir", str(tmp_path / "o")]) == 0
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert report["counts"]["precondition_failed"] == 1
    assert report["counts"]["fail"] == 0


def test_empty_battery(tmp_path):
    cfg = SMALL_TOML.replace('inequalities = ["HEIS_HANKEL_SUM", "LINF_BOUND", "ENTROPY_HWT", "LIEB_LP"]',
                             "inequalities = []")
    assert main(["audit", write(tmp_path, cfg), "--out-dir", str(tmp_path / "o")]) == 0
    assert json.loads((tmp_path / "o" / "report.json").read_text())["entries"] == []


def test_numerical_error_exit_three(tmp_path, monkeypatch):
    import hankelet.audit.battery as battery

    def boom(*a, **k):
        raise DivergenceError("synthetic")

    monkeypatch.setattr(battery, "run_battery", boom)
    assert main(["audit", write(tmp_path, SMALL_TOML), "--out-dir", str(tmp_path / "o")]) == 3


def test_outputs_are_deterministic_across_thread_counts(tmp_path, monkeypatch):
    cfg = write(tmp_path, SMALL_TOML.replace("figures = false", "figures = true"))
    outputs = []
    for threads in ("1", "2"):
        monkeypatch.setenv("HANKELET_THREADS", threads)
        d = tmp_path / f"run{threads}"
        assert main(["audit", cfg, "--out-dir", str(d)]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outputs[0] == outputs[1]
    assert {"report.json", "summary.csv", "ratios.png", "scalogram_alpha0.5.png"} <= set(outputs[0])


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "hankelet", "wavelet-info", "--k", "3", "--sigma", "2",
                           "--alpha", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "C_alpha(psi)" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "hankelet"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2


@pytest.mark.parametrize("name", ["default", "default_audit"])
def test_bundled_config_name_resolves(name):
    from hankelet.config import load_config

    assert [float(a) for a in load_config(name).alphas] == [0.0, 0.5, 1.0, 2.5]
