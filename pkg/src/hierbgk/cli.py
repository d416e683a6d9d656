"""Command line front end.

Heavy imports happen inside main() so --threads can pin the BLAS/OpenMP
pools before numpy comes up (0 = single-threaded, the deterministic
default for reproducible frames).
"""

import argparse
import os
import sys

_MODES = ("euler", "ns", "full-kinetic", "euler-kinetic", "ns-kinetic", "euler-ns-kinetic")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hierbgk",
        description="1D multiscale BGK solver with per-cell Euler/NS/kinetic regime selection",
    )
    p.add_argument("--problem", choices=("sod", "blast", "mixed"), default="sod")
    p.add_argument("--mode", choices=_MODES, default="full-kinetic")
    p.add_argument("--nx", type=int, default=100, help="number of spatial cells")
    p.add_argument("--nv", type=int, default=100, help="number of velocity points")
    p.add_argument("--order", type=int, default=2, help="polynomial degree K")
    p.add_argument("--eps", type=float, default=None,
                   help="constant Knudsen number (required for sod/blast)")
    p.add_argument("--eps0", type=float, default=1e-3,
                   help="floor of the mixed-problem eps profile")
    p.add_argument("--tfinal", type=float, default=None,
                   help="override the problem's final time")
    p.add_argument("--cfl", type=float, default=0.05)
    p.add_argument("--mtvb", default="1",
                   help="TVB limiter constant, or 'none' to disable")
    p.add_argument("--eta0", type=float, default=1e-2)
    p.add_argument("--eta1", type=float, default=1e-1)
    p.add_argument("--delta0", type=float, default=1e-3)
    p.add_argument("--frames", type=int, default=0,
                   help="interior frames to write (first/last always written)")
    p.add_argument("--out-dir", default=None)
    p.add_argument("--label", default="", help="output filename prefix")
    p.add_argument("--threads", type=int, default=0,
                   help="numpy thread cap; 0 = single-threaded deterministic")
    p.add_argument("--backend", choices=("python", "compiled"), default=None,
                   help="force a compute backend (default: compiled when available)")
    p.add_argument("--compare", action="store_true",
                   help="time full-kinetic and all hierarchical modes on this config")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    n_threads = args.threads if args.threads > 0 else 1
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(n_threads))

    from hierbgk import core
    from hierbgk.driver import RunConfig, run, timing_compare
    from hierbgk.macro import NonPhysicalStateError

    try:
        if args.backend is not None:
            core.set_backend(args.backend)
        m_tvb = None if str(args.mtvb).lower() in ("none", "off") else float(args.mtvb)
        cfg = RunConfig(
            problem=args.problem, mode=args.mode,
            n_cells=args.nx, n_v=args.nv, order=args.order,
            eps=args.eps, eps0=args.eps0, t_final=args.tfinal,
            cfl=args.cfl, m_tvb=m_tvb,
            eta0=args.eta0, eta1=args.eta1, delta0=args.delta0,
            n_frames=args.frames, out_dir=args.out_dir, label=args.label,
        )
        if args.compare:
            _, summary = timing_compare(cfg)
            for k, v in summary.items():
                print(f"{k}={v}")
            return 0
        result = run(cfg)
        rep = result.report
        print(f"backend={core.backend_name()}")
        for k in ("problem", "mode", "nx", "nv", "eps", "t_final", "n_steps",
                  "walltime_total", "kinetic_fraction_final",
                  "mass_drift_rel", "momentum_drift_abs", "energy_drift_rel"):
            print(f"{k}={rep[k]}")
        for path in result.frame_paths:
            print(f"frame={path}")
        if args.out_dir is not None:
            print(f"report={os.path.join(args.out_dir, (cfg.label or f'{cfg.problem}_{cfg.mode}') + '_report.txt')}")
        return 0
    except NonPhysicalStateError as exc:
        print(f"error: nonphysical-state: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
