"""Run configs, the hierarchical time loop, reports, timing comparison.

All regimes advance synchronously with one global dt per step.  In the
hierarchical modes the per-cell labels are refreshed at the top of every
step except the first (the all-kinetic start carries g = 0 on sod/blast,
which would read as equilibrium before any dynamics happened); cells
promoted to kinetic get g rebuilt from the equilibrium closure.
"""

import os
import time
from dataclasses import dataclass, replace

import numpy as np

from hierbgk import frames
from hierbgk.imex import ars443
from hierbgk.macro import NonPhysicalStateError
from hierbgk.problems import PROBLEMS, init_problem
from hierbgk.regime import EULER, HIER_MODES, KINETIC, NS, REGIME_CHARS, classify, recover_equilibrium_g
from hierbgk.solvers import StepOptions, advance_step, cfl_dt

MODES = ("euler", "ns", "full-kinetic") + HIER_MODES


@dataclass
class RunConfig:
    problem: str = "sod"
    mode: str = "full-kinetic"
    n_cells: int = 100
    n_v: int = 100
    order: int = 2
    eps: float | None = None  # constant Knudsen number (sod/blast)
    eps0: float = 1e-3        # floor of the mixed tanh profile
    t_final: float | None = None
    v_cut: float | None = None
    cfl: float = 0.05
    m_tvb: float | None = 1.0
    eta0: float = 1e-2
    eta1: float = 1e-1
    delta0: float = 1e-3
    n_frames: int = 0         # interior frames; first/last always written
    out_dir: str | None = None
    label: str = ""           # output filename prefix (defaults to problem_mode)
    seed: int = 0             # reserved; the solver itself is deterministic

    def validate(self):
        if self.problem not in PROBLEMS:
            raise ValueError(f"unknown problem {self.problem!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}, choices: {MODES}")
        if self.n_cells < 1 or self.n_v < 1:
            raise ValueError("n_cells and n_v must be >= 1")
        if self.t_final is not None and self.t_final <= 0:
            raise ValueError("t_final must be > 0")
        if min(self.eta0, self.eta1, self.delta0) <= 0:
            raise ValueError("thresholds must be > 0")
        if self.cfl <= 0:
            raise ValueError("cfl must be > 0")


@dataclass
class RunResult:
    config: RunConfig
    mesh: object
    basis: object
    grid: object
    U: np.ndarray
    g: np.ndarray | None
    labels: np.ndarray
    t: float
    n_steps: int
    report: dict
    regime_history: np.ndarray      # (n_steps, n_cells) labels used per step
    frame_paths: list


def conserved_totals(U, mesh, basis):
    """Domain integrals of (rho, rho u, E) by Gauss quadrature."""
    return np.einsum("i,k,ikc->c", mesh.widths, basis.weights, U)


def _initial_labels(mode, n):
    if mode == "euler":
        return np.full(n, EULER)
    if mode == "ns":
        return np.full(n, NS)
    return np.full(n, KINETIC)  # kinetic everywhere until told otherwise


def run(cfg: RunConfig) -> RunResult:
    cfg.validate()
    with_g = cfg.mode not in ("euler", "ns")
    setup, mesh, basis, grid, U, g = init_problem(
        cfg.problem, cfg.n_cells, cfg.order, cfg.n_v,
        eps=cfg.eps, v_cut=cfg.v_cut, eps0=cfg.eps0, with_g=with_g,
    )
    t_final = setup.t_final if cfg.t_final is None else cfg.t_final
    labels = _initial_labels(cfg.mode, cfg.n_cells)
    tab = ars443()
    opts = StepOptions(m_tvb=cfg.m_tvb)
    hierarchical = cfg.mode in HIER_MODES

    prefix = cfg.label or f"{cfg.problem}_{cfg.mode}"
    frame_paths = []
    frame_idx = 0

    def meta(t, step):
        return {
            "problem": cfg.problem, "mode": cfg.mode, "t": f"{t:.17g}",
            "step": step, "nx": cfg.n_cells, "order": cfg.order,
            "nv": cfg.n_v, "v_cut": f"{grid.v_cut:.17g}", "eps": setup.eps_label,
        }

    def emit(t, step):
        nonlocal frame_idx
        if cfg.out_dir is None:
            return
        os.makedirs(cfg.out_dir, exist_ok=True)
        fr = frames.frame_from_state(U, g, labels, mesh, basis, grid, meta(t, step))
        path = os.path.join(cfg.out_dir, f"{prefix}_{frame_idx:04d}.txt")
        frames.write_frame(fr, path)
        frame_paths.append(path)
        frame_idx += 1

    # interior frame targets, hit on first crossing
    targets = [t_final * k / (cfg.n_frames + 1) for k in range(1, cfg.n_frames + 1)]
    next_target = 0

    totals0 = conserved_totals(U, mesh, basis)
    emit(0.0, 0)

    history = []
    hist_lines = {}
    timers = {"kinetic": 0.0}
    t_classify = 0.0
    t_loop = 0.0
    t = 0.0
    step = 0
    while t < t_final * (1.0 - 1e-13):
        tic = time.perf_counter()
        if hierarchical and step >= 1:
            tc = time.perf_counter()
            regmap = classify(labels, U, g, mesh, basis, grid,
                              cfg.eta0, cfg.eta1, cfg.delta0, cfg.mode)
            promoted = (regmap.labels == KINETIC) & (labels != KINETIC)
            if promoted.any():
                r = regmap.t_x_nodes
                g[promoted] = recover_equilibrium_g(U[promoted], r[promoted], grid)
            labels = regmap.labels
            t_classify += time.perf_counter() - tc
        dt = min(cfl_dt(U, mesh, grid.v_cut, cfg.cfl), t_final - t)
        try:
            U, g = advance_step(U, g, labels, mesh, basis, grid, tab, dt, opts, timers)
        except NonPhysicalStateError as exc:
            raise NonPhysicalStateError(
                f"step {step + 1}, t = {t:.8g}, dt = {dt:.4g}: {exc}"
            ) from exc
        t += dt
        step += 1
        counts = np.bincount(labels, minlength=3)
        hist_lines[f"hist_{step:05d}"] = f"E:{counts[0]},N:{counts[1]},K:{counts[2]}"
        history.append(labels.copy())
        t_loop += time.perf_counter() - tic
        while next_target < len(targets) and t >= targets[next_target] * (1.0 - 1e-13):
            emit(t, step)
            next_target += 1
    emit(t, step)

    totals1 = conserved_totals(U, mesh, basis)
    drift = totals1 - totals0
    kin_frac = float(np.mean(labels == KINETIC))
    regime_history = np.array(history, dtype=np.int8) if history else np.zeros((0, cfg.n_cells), np.int8)
    cell_steps = [int((regime_history == r).sum()) for r in (EULER, NS, KINETIC)]

    report = {
        "problem": cfg.problem, "mode": cfg.mode,
        "nx": cfg.n_cells, "nv": cfg.n_v, "order": cfg.order,
        "v_cut": float(grid.v_cut), "eps": setup.eps_label,
        "t_final": float(t), "cfl": cfg.cfl,
        "m_tvb": "none" if cfg.m_tvb is None else float(cfg.m_tvb),
        "eta0": cfg.eta0, "eta1": cfg.eta1, "delta0": cfg.delta0,
        "n_steps": step,
        "walltime_total": t_loop,
        "walltime_kinetic": timers["kinetic"],
        "walltime_classify": t_classify,
        "walltime_fluid": t_loop - timers["kinetic"] - t_classify,
        "cell_steps_euler": cell_steps[0],
        "cell_steps_ns": cell_steps[1],
        "cell_steps_kinetic": cell_steps[2],
        "kinetic_fraction_final": kin_frac,
        "mass_total_initial": float(totals0[0]),
        "mass_drift_rel": float(abs(drift[0]) / abs(totals0[0])),
        "momentum_drift_abs": float(abs(drift[1])),
        "energy_drift_rel": float(abs(drift[2]) / abs(totals0[2])),
    }
    report.update(hist_lines)
    if cfg.out_dir is not None:
        rpath = os.path.join(cfg.out_dir, f"{prefix}_report.txt")
        frames.write_report(report, rpath)

    return RunResult(
        config=cfg, mesh=mesh, basis=basis, grid=grid,
        U=U, g=g, labels=labels, t=t, n_steps=step,
        report=report, regime_history=regime_history, frame_paths=frame_paths,
    )


COMPARE_MODES = ("full-kinetic", "euler-ns-kinetic", "euler-kinetic", "ns-kinetic")


def timing_compare(base: RunConfig, modes=COMPARE_MODES, repeats: int = 1):
    """Sequential same-config runs; savings_m = 1 - walltime_m / walltime_full.

    With repeats > 1 the mode cycle runs that many times, interleaved, and
    each mode reports its fastest pass; the min filters out scheduler noise
    without biasing the ratio toward either side.  Returns (results-by-mode,
    summary-report-dict); results hold the last pass, walltimes the best one.
    """
    if "full-kinetic" not in modes:
        raise ValueError("comparison needs the full-kinetic baseline")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    results = {}
    best = {}
    for _ in range(repeats):
        for mode in modes:
            cfg = replace(base, mode=mode,
                          label=(base.label + "_" if base.label else "") + mode)
            results[mode] = run(cfg)
            wt = results[mode].report["walltime_total"]
            best[mode] = min(best.get(mode, wt), wt)
            results[mode].report["walltime_total"] = best[mode]
    t_full = results["full-kinetic"].report["walltime_total"]
    summary = {
        "problem": base.problem, "nx": base.n_cells, "nv": base.n_v,
        "eps": results["full-kinetic"].report["eps"],
        "t_final": results["full-kinetic"].report["t_final"],
    }
    for mode in modes:
        rep = results[mode].report
        summary[f"walltime_{mode}"] = rep["walltime_total"]
        summary[f"kinetic_fraction_final_{mode}"] = rep["kinetic_fraction_final"]
        if mode != "full-kinetic":
            summary[f"savings_{mode}"] = 1.0 - rep["walltime_total"] / t_full
    if base.out_dir is not None:
        os.makedirs(base.out_dir, exist_ok=True)
        name = (base.label + "_" if base.label else "") + "compare_report.txt"
        frames.write_report(summary, os.path.join(base.out_dir, name))
    return results, summary
