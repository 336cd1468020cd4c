"""Benchmark the hot per-term quadrature sums: numba path vs numpy path.

Usage:
    python3 benchmarks/bench_kernels.py [--grid 32,16,16] [--repeats 20]

The numba path is what ``knappflow`` uses by default when numba imports;
set ``KNAPPFLOW_NUMBA=0`` to force the numpy fallback package-wide.  This
script always times both implementations directly and reports the
agreement between them.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from knappflow import _kernels
from knappflow.boxes import admissible_eta_region, quadrature_grid
from knappflow.construction import kernels, make_params
from knappflow.symbols import SIGNS_ARRAY


def parse_grid(text: str) -> tuple[int, int, int]:
    parts = [int(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be three comma-separated ints")
    return tuple(parts)  # type: ignore[return-value]


def time_fn(fn, args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=parse_grid, default=(32, 16, 16))
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    p = make_params(0.01, 2e-6, 1)
    xi = np.asarray(p.samp_box.center())
    kern = kernels(p)[0]
    region = admissible_eta_region(xi, kern.support_a, kern.support_b)
    grid = quadrature_grid(region, args.grid)
    call = (
        grid.points,
        grid.weights,
        xi,
        p.t,
        kern.alpha,
        kern.code,
        SIGNS_ARRAY,
        p.resonance_threshold,
    )

    print(f"nodes: {grid.points.shape[0]} (grid {args.grid}), repeats: {args.repeats}")

    t_np = time_fn(_kernels.term_sums_numpy, call, args.repeats)
    print(f"numpy : {t_np * 1e3:9.3f} ms")

    if not _kernels.NUMBA_ENABLED:
        print("numba : unavailable (not importable or disabled via KNAPPFLOW_NUMBA)")
        return 0

    _kernels.term_sums_numba(*call)  # JIT warm-up outside the timed region
    t_nb = time_fn(_kernels.term_sums_numba, call, args.repeats)
    print(f"numba : {t_nb * 1e3:9.3f} ms  ({t_np / t_nb:.1f}x speedup)")

    tot_np, res_np, env_np = _kernels.term_sums_numpy(*call)
    tot_nb, res_nb, env_nb = _kernels.term_sums_numba(*call)
    scale = np.abs(tot_np).max()
    print(
        "agreement: "
        f"tot {np.abs(tot_np - tot_nb).max() / scale:.2e}, "
        f"res {np.abs(res_np - res_nb).max() / scale:.2e}, "
        f"env {np.abs(env_np - env_nb).max() / max(env_np.max(), 1e-300):.2e} (relative)"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
