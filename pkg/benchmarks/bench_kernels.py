"""Compare the compiled and pure-Python kernel backends on solver-sized inputs.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from modburgers._backend import get_backend


def _tridiag_case(N: int, rng: np.random.Generator):
    sub = 0.1 * rng.standard_normal((N - 1, 2, 2))
    sup = 0.1 * rng.standard_normal((N - 1, 2, 2))
    diag = np.eye(2)[None] * 2.0 + 0.1 * rng.standard_normal((N, 2, 2))
    rhs = rng.standard_normal((N, 2, 2))
    return sub, diag, sup, rhs


def _cell_case(n: int, rng: np.random.Generator):
    h = 0.01
    y = h * np.arange(n)
    values = y * np.exp(-y) * (1 + 0.1 * rng.standard_normal(n))
    values[0] = 0.0
    return values, h, y + 0.5, 0.5


def run(repeat: int = 5) -> list[tuple[str, float, float]]:
    rng = np.random.default_rng(0)
    py, cy = get_backend("python"), get_backend("cython")
    cases = [
        ("block_tridiag_solve N=3000 R=2", "block_tridiag_solve", _tridiag_case(3000, rng)),
        ("gauss_cell_apply 3000x3000 t=0.5", "gauss_cell_apply", _cell_case(3000, rng)),
        ("gauss_cell_apply 3000x3000 t=0.02", "gauss_cell_apply", _cell_case(3000, rng)[:3] + (0.02,)),
    ]
    rows = []
    for label, name, args in cases:
        ref = getattr(py, name)(*args)
        out = getattr(cy, name)(*args)
        if not np.allclose(ref, out, rtol=1e-12, atol=1e-13):
            raise AssertionError(f"backends disagree on {label}")
        times = []
        for mod in (py, cy):
            fn = getattr(mod, name)
            times.append(min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)))
        rows.append((label, *times))
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"{'kernel':36s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for label, t_py, t_cy in run(args.repeat):
        print(f"{label:36s} {1e3 * t_py:12.2f} {1e3 * t_cy:12.2f} {t_py / t_cy:8.1f}")


if __name__ == "__main__":
    main()
