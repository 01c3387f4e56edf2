"""Pure-Python blade product kernel.

Reference implementation of the hot kernel behind multivector products.
`spincert.kernel` picks this module when the compiled extension is missing
or when SPINC_PURE is set; semantics must match `_blade_kernel.pyx` exactly.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def swap_parity(a: int, b: int) -> int:
    """Number of transpositions (mod 2) needed to interleave blade b into blade a."""
    count = 0
    a >>= 1
    while a:
        count += (a & b).bit_count()
        a >>= 1
    return count & 1


def blade_factor(a: int, b: int, diag) -> float:
    """Scalar factor of the product of basis blades a*b: transposition sign
    times one metric coefficient per contracted index."""
    f = -1.0 if swap_parity(a, b) else 1.0
    common = a & b
    j = 0
    while common:
        if common & 1:
            f *= diag[j]
        common >>= 1
        j += 1
    return f


def mul_terms(masks_a, coeffs_a, masks_b, coeffs_b, diag, eps):
    """Sparse product of two term lists, returning (masks, coeffs) with masks
    strictly ascending and coefficients below eps dropped."""
    acc: dict[int, complex] = {}
    diag_list = list(diag)
    for ma, ca in zip(masks_a, coeffs_a):
        ma = int(ma)
        for mb, cb in zip(masks_b, coeffs_b):
            mb = int(mb)
            f = blade_factor(ma, mb, diag_list)
            key = ma ^ mb
            acc[key] = acc.get(key, 0.0) + ca * cb * f
    masks = sorted(k for k, v in acc.items() if v != 0 and abs(v) >= eps)
    out_m = np.array(masks, dtype=np.int64)
    out_c = np.array([acc[k] for k in masks], dtype=np.complex128)
    return out_m, out_c
