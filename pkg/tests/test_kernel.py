"""Compiled kernel against the pure-Python reference, bit for bit."""

import numpy as np
import pytest

from spincert import _kernel_py
from spincert.rng import SplitMix64

compiled = pytest.importorskip("spincert._blade_kernel")


def test_swap_parity_small_cases():
    # e1*e1: no transposition; e2*e1: one transposition
    assert _kernel_py.swap_parity(0b01, 0b01) == 0
    assert _kernel_py.swap_parity(0b10, 0b01) == 1
    assert compiled.swap_parity(0b10, 0b01) == 1
    assert _kernel_py.swap_parity(0b110, 0b011) == compiled.swap_parity(0b110, 0b011)


def test_blade_factor_contracts_metric():
    diag = np.array([-1.0, 2.0, -1.0])
    assert _kernel_py.blade_factor(0b001, 0b001, diag) == -1.0
    assert _kernel_py.blade_factor(0b010, 0b010, diag) == 2.0
    assert compiled.blade_factor(0b010, 0b010, diag) == 2.0
    # e2 * e1 = -e1 e2: pure transposition sign
    assert compiled.blade_factor(0b010, 0b001, diag) == -1.0


def test_backends_agree_on_random_products():
    rng = SplitMix64(2024).stream("kernel-cross")
    for _ in range(400):
        n = rng.randint(1, 7)
        diag = np.array([[-1.0, 1.0, 2.0][rng.randint(0, 2)] for _ in range(n)])
        na, nb = rng.randint(1, 12), rng.randint(1, 12)
        ma = np.array(sorted({rng.randint(0, (1 << n) - 1) for _ in range(na)}), dtype=np.int64)
        mb = np.array(sorted({rng.randint(0, (1 << n) - 1) for _ in range(nb)}), dtype=np.int64)
        ca = rng.normals(len(ma)) + 1j * rng.normals(len(ma))
        cb = rng.normals(len(mb)) + 1j * rng.normals(len(mb))
        m1, c1 = _kernel_py.mul_terms(ma, ca, mb, cb, diag, 1e-14)
        m2, c2 = compiled.mul_terms(ma, ca, mb, cb, diag, 1e-14)
        assert np.array_equal(m1, m2)
        assert np.array_equal(c1, c2)


def test_eps_drops_small_terms():
    ma = np.array([0, 1], dtype=np.int64)
    ca = np.array([1.0, 1e-20], dtype=np.complex128)
    mb = np.array([0], dtype=np.int64)
    cb = np.array([1.0], dtype=np.complex128)
    diag = np.array([-1.0])
    for impl in (_kernel_py, compiled):
        m, c = impl.mul_terms(ma, ca, mb, cb, diag, 1e-14)
        assert m.tolist() == [0]
        assert c.tolist() == [1.0]
