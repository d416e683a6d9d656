"""Compare the compiled velocity-kernel core against the numpy fallback.

Times each hot kernel on solver-representative shapes, then one short
end-to-end shock-tube run per backend.  Usage:

    python3 benchmarks/bench_core.py [--rows 300] [--nv 100] [--repeat 7]
"""

import argparse
import time

import numpy as np

from hierbgk import core


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        tic = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - tic)
    return best


def kernel_cases(rows, n_v, rng):
    rho = 0.2 + rng.random(rows) * 2.0
    u = rng.standard_normal(rows) * 0.5
    T = 0.2 + rng.random(rows) * 1.5
    v = np.linspace(-10.0, 10.0, n_v + 1)[:-1] + 10.0 / n_v
    dv = 20.0 / n_v
    f = rng.standard_normal((rows, n_v))
    scale = rng.standard_normal(rows)
    return [
        ("maxwellian", lambda b: b.maxwellian(rho, u, T, v)),
        ("moments", lambda b: b.moments(f, v, dv)),
        ("flux_moments", lambda b: b.flux_moments(f, v, dv)),
        ("project_complement", lambda b: b.project_complement(f, rho, u, T, v, dv)),
        ("weighted_l2", lambda b: b.weighted_l2(f, rho, u, T, v, dv)),
        ("scaled_b_maxwellian", lambda b: b.scaled_b_maxwellian(rho, u, T, scale, v)),
        ("third_central_moment", lambda b: b.third_central_moment(f, u, v, dv)),
    ]


def bench_kernels(rows, n_v, repeat):
    rng = np.random.default_rng(0)
    cases = kernel_cases(rows, n_v, rng)
    names = core.available_backends()
    print(f"\nkernel timings, rows={rows}, n_v={n_v}, best of {repeat}")
    header = f"{'kernel':<22}" + "".join(f"{n:>12}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, call in cases:
        times = {}
        for n in names:
            b = core.get_backend(n)
            call(b)  # warm up
            times[n] = _best_of(lambda: call(b), repeat)
        row = f"{label:<22}" + "".join(f"{times[n] * 1e6:>10.1f}us" for n in names)
        if "python" in times and "compiled" in times:
            row += f"{times['python'] / times['compiled']:>9.2f}x"
        print(row)


def bench_end_to_end(repeat):
    from hierbgk.driver import RunConfig, run

    cfg = dict(problem="sod", mode="full-kinetic", n_cells=50, n_v=100,
               eps=1e-3, t_final=0.02)
    print("\nend-to-end: sod full-kinetic, 50 cells, n_v=100, t=0.02")
    prev = core.backend_name()
    try:
        times = {}
        for name in core.available_backends():
            core.set_backend(name)
            times[name] = _best_of(lambda: run(RunConfig(**cfg)), repeat)
            print(f"{name:<10} {times[name]:8.3f} s")
        if "python" in times and "compiled" in times:
            print(f"speedup    {times['python'] / times['compiled']:8.2f}x")
    finally:
        core.set_backend(prev)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=300,
                    help="spatial rows (cells x nodes) per kernel call")
    ap.add_argument("--nv", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()

    print("backends:", ", ".join(core.available_backends()),
          f"(active: {core.backend_name()})")
    bench_kernels(args.rows, args.nv, args.repeat)
    if not args.skip_e2e:
        bench_end_to_end(max(2, args.repeat // 3))


if __name__ == "__main__":
    main()
