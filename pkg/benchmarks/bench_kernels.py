"""Benchmark the compiled kernels against the NumPy fallback.

Times the kernel primitives at the shapes the rate engines actually use,
plus an end-to-end benchmark-table workload run in subprocesses so each
backend is selected at import time.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

WORKLOAD = """
import time
import qtwc
from qtwc import ChannelConfig, UniformQuantizer, constellation_from_spec
from qtwc.mi_discrete import cond_mi_discrete
from qtwc.mi_gaussian import cond_mi_gaussian
from qtwc.search import default_grain_grid, grain_sweep

grid = default_grain_grid()
start = time.perf_counter()
for _ in range(5):
    for snr in range(1, 8):
        cfg = ChannelConfig.unit(float(snr))
        grain_sweep(lambda q: cond_mi_gaussian(cfg, UniformQuantizer(8, q)), grid)
        pam = constellation_from_spec("pam8", cfg.power1)
        grain_sweep(
            lambda q: cond_mi_discrete("1to2", pam, pam, cfg, UniformQuantizer(8, q)),
            grid,
        )
print(qtwc.backend_name(), time.perf_counter() - start)
"""


def _best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_primitives(repeats: int) -> None:
    try:
        from qtwc import _core
    except ImportError:
        print("compiled extension not available; primitive comparison skipped")
        return
    from qtwc import _kernels_py

    rng = np.random.default_rng(1)
    cases = [
        ("cell_pmf 64x8", (np.arange(1, 8) - 4.0) * 1.4, rng.normal(0, 2, 64)),
        ("cell_pmf 128x8", (np.arange(1, 8) - 4.0) * 1.4, rng.normal(0, 2, 128)),
        ("cell_pmf 64x512", (np.arange(1, 512) - 256.0) * 0.05, rng.normal(0, 2, 64)),
    ]
    print(f"{'kernel':<22}{'compiled':>12}{'numpy':>12}{'speedup':>9}")
    for name, edges, means in cases:
        weights = np.full(means.size, 1.0 / means.size)
        loops = 2000 if edges.size < 100 else 100

        def run(impl):
            def inner():
                for _ in range(loops):
                    impl.weighted_cell_entropy(edges, means, weights, 0.7)

            return inner

        t_c = _best_of(run(_core), repeats) / loops
        t_p = _best_of(run(_kernels_py), repeats) / loops
        print(f"{name:<22}{t_c * 1e6:>10.1f}us{t_p * 1e6:>10.1f}us{t_p / t_c:>8.1f}x")


def bench_end_to_end() -> None:
    print("\nend-to-end (5x benchmark-table workload):")
    for env_extra, label in (({}, "compiled"), ({"QTWC_NO_EXT": "1"}, "numpy")):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, "-c", WORKLOAD],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        backend, elapsed = out.stdout.split()
        assert backend == label, f"expected {label} backend, got {backend}"
        print(f"  {label:<10} {float(elapsed):.3f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    bench_primitives(args.repeats)
    if not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
