"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each case runs on both backends, checks that the outputs are identical and
prints the best wall time of ``--repeat`` runs.
"""
from __future__ import annotations

import argparse
import os
import time

import numpy as np

from parrypascal import geometry as geo
from parrypascal import hausdorff as hd
from parrypascal import kernels
from parrypascal.numeration import NumerationSystem
from parrypascal.triangle import u_set


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def block_case(spec, n, threads):
    system = NumerationSystem.from_string(spec)
    size = system.u(n)
    words = system.enumerate_language(size)

    def run(backend):
        return lambda: kernels.binom_block(words, range(size), size, q=2, threads=threads, backend=backend)

    return f"triangle {spec} U({n})={size} mod 2, {threads} thr", run


def hausdorff_case(n, spacing):
    system = NumerationSystem.from_string("1,1")
    cloud_u = hd.sample_square_set(u_set(system, n))
    segs = geo.an_approx(geo.a0_approx(system, 8), 3, system)
    cloud_a = hd.sample_segment_set(segs, spacing)

    def run(backend):
        return lambda: hd.hausdorff_distance(cloud_u, cloud_a, backend=backend).distance

    return f"hausdorff |U|={len(cloud_u)} |A|={len(cloud_a)}", run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    args = ap.parse_args()

    if "cython" not in kernels.available_backends():
        raise SystemExit("compiled kernels are not built; run pip install -e . first")

    cores = os.cpu_count() or 1
    n_tri = 10 if args.quick else 13
    cases = [block_case("1,1", n_tri, 1)]
    if cores > 1:
        cases.append(block_case("1,1", n_tri, cores))
    cases += [
        block_case("2,1,0,1", 5 if args.quick else 6, 1),
        hausdorff_case(8 if args.quick else 10, 2e-3 if args.quick else 1e-3),
    ]
    print(f"{'case':48s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, run in cases:
        t_py, r_py = best_of(run("python"), args.repeat)
        t_cy, r_cy = best_of(run("cython"), args.repeat)
        same = np.array_equal(r_py, r_cy) if isinstance(r_py, np.ndarray) else r_py == r_cy
        flag = "" if same else "  OUTPUTS DIFFER"
        print(f"{label:48s} {t_py:9.3f}s {t_cy:9.3f}s {t_py / t_cy:7.1f}x{flag}")


if __name__ == "__main__":
    main()
