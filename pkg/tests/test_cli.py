"""End-to-end command line checks through real subprocesses."""

import subprocess
import sys

from hierbgk.frames import load_frame

BASE = [sys.executable, "-m", "hierbgk"]


def _run(*extra):
    return subprocess.run(BASE + list(extra), capture_output=True, text=True)


def _kv(stdout):
    out = {}
    for line in stdout.splitlines():
        k, _, v = line.partition("=")
        out[k] = v
    return out


def test_tiny_run_succeeds(tmp_path):
    proc = _run("--problem", "sod", "--mode", "euler", "--nx", "12",
                "--eps", "1e-3", "--tfinal", "0.005",
                "--frames", "1", "--out-dir", str(tmp_path))
    assert proc.returncode == 0, proc.stderr
    kv = _kv(proc.stdout)
    assert kv["problem"] == "sod"
    assert kv["mode"] == "euler"
    assert int(kv["n_steps"]) > 0
    frames = [v for k, v in _pairs(proc.stdout) if k == "frame"]
    assert len(frames) == 3
    fr = load_frame(frames[-1])
    assert abs(fr.t - 0.005) < 1e-12


def _pairs(stdout):
    for line in stdout.splitlines():
        k, _, v = line.partition("=")
        yield k, v


def test_missing_eps_is_a_config_error():
    proc = _run("--problem", "sod", "--nx", "8", "--nv", "8")
    assert proc.returncode == 2
    assert "config" in proc.stderr


def test_unknown_flag_fails():
    proc = _run("--frobnicate")
    assert proc.returncode == 2  # argparse usage error


def test_blowup_maps_to_nonphysical_exit_code():
    proc = _run("--problem", "sod", "--mode", "euler", "--nx", "12",
                "--eps", "1e-3", "--cfl", "5.0", "--tfinal", "0.1")
    assert proc.returncode == 3
    assert "nonphysical-state" in proc.stderr


def test_unwritable_out_dir_maps_to_io_exit_code():
    proc = _run("--problem", "sod", "--mode", "euler", "--nx", "8",
                "--eps", "1e-3", "--tfinal", "0.002",
                "--out-dir", "/proc/hierbgk-denied")
    assert proc.returncode == 4
    assert "io" in proc.stderr


def test_mtvb_none_accepted():
    proc = _run("--problem", "sod", "--mode", "euler", "--nx", "10",
                "--eps", "1e-3", "--tfinal", "0.002", "--mtvb", "none")
    assert proc.returncode == 0, proc.stderr


def test_backend_flag_python():
    proc = _run("--problem", "sod", "--mode", "euler", "--nx", "10",
                "--eps", "1e-3", "--tfinal", "0.002", "--backend", "python")
    assert proc.returncode == 0, proc.stderr
    assert _kv(proc.stdout)["backend"] == "python"


def test_compare_prints_savings():
    proc = _run("--problem", "sod", "--nx", "8", "--nv", "16",
                "--eps", "1e-3", "--tfinal", "0.002", "--compare")
    assert proc.returncode == 0, proc.stderr
    kv = _kv(proc.stdout)
    for mode in ("euler-ns-kinetic", "euler-kinetic", "ns-kinetic"):
        assert f"savings_{mode}" in kv
        assert f"walltime_{mode}" in kv
    assert "walltime_full-kinetic" in kv
