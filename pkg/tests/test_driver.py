"""Time-loop driver: config validation, invariants, frames, timing compare."""

import numpy as np
import pytest

from hierbgk.driver import MODES, RunConfig, conserved_totals, run, timing_compare
from hierbgk.frames import load_frame, load_report
from hierbgk.regime import EULER, KINETIC, NS


def _l1_rho(a, b):
    w = a.basis.weights
    ra = np.einsum("k,ik->i", w, a.U[..., 0])
    rb = np.einsum("k,ik->i", w, b.U[..., 0])
    return float(np.sum(np.abs(ra - rb) * a.mesh.widths))


def test_mode_registry():
    assert MODES == ("euler", "ns", "full-kinetic",
                     "euler-ns-kinetic", "euler-kinetic", "ns-kinetic")


def test_config_validation():
    RunConfig(problem="sod", eps=1e-3).validate()
    with pytest.raises(ValueError, match="unknown problem"):
        RunConfig(problem="sedov").validate()
    with pytest.raises(ValueError, match="unknown mode"):
        RunConfig(mode="hybrid").validate()
    with pytest.raises(ValueError):
        RunConfig(n_cells=0).validate()
    with pytest.raises(ValueError):
        RunConfig(t_final=0.0).validate()
    with pytest.raises(ValueError):
        RunConfig(delta0=0.0).validate()
    with pytest.raises(ValueError):
        RunConfig(cfl=-1.0).validate()


def test_single_regime_modes_never_switch():
    # the non-hierarchical modes must use exactly their own solver every step
    for mode, lab in (("euler", EULER), ("ns", NS), ("full-kinetic", KINETIC)):
        res = run(RunConfig(problem="sod", mode=mode, n_cells=16, n_v=24,
                            eps=1e-3, t_final=0.01))
        assert res.regime_history.shape == (res.n_steps, 16)
        assert np.all(res.regime_history == lab), mode
        # fluid modes carry no micro unknowns at all
        assert (res.g is None) == (mode in ("euler", "ns"))


def test_hierarchical_run_starts_kinetic_then_adapts():
    res = run(RunConfig(problem="mixed", mode="euler-ns-kinetic",
                        n_cells=25, n_v=40, t_final=0.02))
    hist = res.regime_history
    # classification only begins at the second step
    assert np.all(hist[0] == KINETIC)
    # by design the mixed problem settles into genuinely mixed labels
    assert set(np.unique(hist)) == {EULER, NS, KINETIC}
    # per-step histograms in the report agree with the recorded labels
    for k in (1, res.n_steps):
        line = res.report[f"hist_{k:05d}"]
        counts = dict(tok.split(":") for tok in line.split(","))
        row = hist[k - 1]
        assert int(counts["E"]) == int((row == EULER).sum())
        assert int(counts["N"]) == int((row == NS).sum())
        assert int(counts["K"]) == int((row == KINETIC).sum())


def test_mode_restrictions_hold_in_history():
    base = dict(problem="mixed", n_cells=25, n_v=40, t_final=0.02)
    ek = run(RunConfig(mode="euler-kinetic", **base))
    assert NS not in ek.regime_history
    nk = run(RunConfig(mode="ns-kinetic", **base))
    assert EULER not in nk.regime_history


def test_run_reaches_final_time_synchronously():
    res = run(RunConfig(problem="sod", mode="euler", n_cells=20,
                        eps=1e-3, t_final=0.015))
    assert abs(res.t - 0.015) < 1e-12
    assert res.n_steps == res.regime_history.shape[0]


def test_hierarchical_tracks_full_kinetic_at_same_resolution():
    base = dict(problem="mixed", n_cells=25, n_v=60, t_final=0.05)
    fk = run(RunConfig(mode="full-kinetic", **base))
    enk = run(RunConfig(mode="euler-ns-kinetic", **base))
    assert _l1_rho(fk, enk) < 1e-2


def test_frame_cadence_and_metadata(tmp_path):
    out = tmp_path / "frames"
    res = run(RunConfig(problem="sod", mode="euler", n_cells=16, eps=1e-3,
                        t_final=0.02, n_frames=3, out_dir=str(out)))
    # initial + 3 interior targets + final
    assert len(res.frame_paths) == 5
    first = load_frame(res.frame_paths[0])
    last = load_frame(res.frame_paths[-1])
    assert first.t == 0.0
    assert abs(last.t - 0.02) < 1e-12
    assert first.meta["step"] == 0
    assert last.meta["step"] == res.n_steps
    assert first.meta["problem"] == "sod"
    # interior targets are hit in order at t >= k/4 * t_final
    for k in (1, 2, 3):
        fr = load_frame(res.frame_paths[k])
        assert fr.t >= 0.02 * k / 4 * (1.0 - 1e-13)
    # report lands next to the frames
    rep = load_report(out / "sod_euler_report.txt")
    assert rep["n_steps"] == res.n_steps
    # outflow edges trade mass with the exterior, so only sanity-check it
    assert 0.0 <= rep["mass_drift_rel"] < 1e-6


def test_repeat_runs_are_bitwise_reproducible(tmp_path):
    outs = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        run(RunConfig(problem="mixed", mode="euler-ns-kinetic", n_cells=16,
                      n_v=40, t_final=0.01, n_frames=1, out_dir=str(out),
                      label="rep"))
        outs.append(out)
    for k in range(3):
        fa = (outs[0] / f"rep_{k:04d}.txt").read_bytes()
        fb = (outs[1] / f"rep_{k:04d}.txt").read_bytes()
        assert fa == fb, f"frame {k} differs between identical runs"
    # reports match except the timing entries
    ra = load_report(outs[0] / "rep_report.txt")
    rb = load_report(outs[1] / "rep_report.txt")
    for key, val in ra.items():
        if not key.startswith("walltime"):
            assert rb[key] == val, key


def test_conserved_totals_quadrature():
    res = run(RunConfig(problem="sod", mode="euler", n_cells=12, eps=1e-3,
                        t_final=0.005))
    tot = conserved_totals(res.U, res.mesh, res.basis)
    assert tot.shape == (3,)
    assert tot[0] > 0 and tot[2] > 0


def test_timing_compare_validates_inputs():
    cfg = RunConfig(problem="sod", eps=1e-3, n_cells=8, n_v=16, t_final=0.002)
    with pytest.raises(ValueError, match="baseline"):
        timing_compare(cfg, modes=("euler-kinetic",))
    with pytest.raises(ValueError, match="repeats"):
        timing_compare(cfg, repeats=0)


def test_timing_compare_summary_keys(tmp_path):
    cfg = RunConfig(problem="sod", eps=1e-3, n_cells=10, n_v=20,
                    t_final=0.004, out_dir=str(tmp_path), label="cmp")
    results, summary = timing_compare(
        cfg, modes=("full-kinetic", "euler-kinetic"), repeats=1)
    assert set(results) == {"full-kinetic", "euler-kinetic"}
    assert "walltime_full-kinetic" in summary
    assert "kinetic_fraction_final_euler-kinetic" in summary
    assert "savings_euler-kinetic" in summary
    assert "savings_full-kinetic" not in summary
    saved = load_report(tmp_path / "cmp_compare_report.txt")
    assert saved["problem"] == "sod"
