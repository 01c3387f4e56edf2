"""Benchmark the compiled blade kernel against the pure-Python fallback.

Times rotor-sized sparse products (the dominant workload of lifting and
path monodromy) through both backends on identical inputs.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernel_py
from .rng import SplitMix64

try:
    from . import _blade_kernel
except ImportError:  # pragma: no cover - source tree without a built extension
    _blade_kernel = None


def _workload(n: int, terms: int, rng: SplitMix64):
    masks = np.array(sorted({rng.randint(0, (1 << n) - 1) for _ in range(terms)}),
                     dtype=np.int64)
    coeffs = rng.normals(len(masks)) + 1j * rng.normals(len(masks))
    return masks, coeffs.astype(np.complex128)


def _time_backend(impl, cases, repeats: int) -> float:
    best = float("inf")
    diag = None
    for _ in range(repeats):
        start = time.perf_counter()
        for masks_a, coeffs_a, masks_b, coeffs_b, diag in cases:
            impl.mul_terms(masks_a, coeffs_a, masks_b, coeffs_b, diag, 1e-14)
        best = min(best, time.perf_counter() - start)
    return best


def run_benchmark(seed: int = 0, repeats: int = 3):
    rng = SplitMix64(seed).stream("bench")
    print(f"{'n':>3} {'terms':>6} {'products':>9} {'pure (s)':>10} "
          f"{'compiled (s)':>13} {'speedup':>8}")
    for n, terms, products in ((4, 8, 2000), (6, 24, 1000), (8, 96, 400), (10, 320, 100)):
        diag = np.full(n, -1.0)
        cases = []
        for _ in range(products):
            ma, ca = _workload(n, terms, rng)
            mb, cb = _workload(n, terms, rng)
            cases.append((ma, ca, mb, cb, diag))
        t_pure = _time_backend(_kernel_py, cases, repeats)
        if _blade_kernel is None:
            print(f"{n:>3} {terms:>6} {products:>9} {t_pure:>10.4f} "
                  f"{'unavailable':>13} {'-':>8}")
            continue
        t_comp = _time_backend(_blade_kernel, cases, repeats)
        # identical outputs on a spot sample
        ma, ca, mb, cb, d = cases[0]
        m1, c1 = _kernel_py.mul_terms(ma, ca, mb, cb, d, 1e-14)
        m2, c2 = _blade_kernel.mul_terms(ma, ca, mb, cb, d, 1e-14)
        assert np.array_equal(m1, m2) and np.allclose(c1, c2)
        print(f"{n:>3} {terms:>6} {products:>9} {t_pure:>10.4f} "
              f"{t_comp:>13.4f} {t_pure / t_comp:>8.1f}")


if __name__ == "__main__":
    run_benchmark()
