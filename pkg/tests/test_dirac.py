"""Exact squared-operator identity and plane-wave checks."""

from fractions import Fraction

import numpy as np
import pytest

from spincert.dirac import (ExactGamma, PlaneWaveSpinor, PolySpinor, dirac_apply,
                            laplacian_apply, plane_wave_check, poly_add_scaled, poly_diff,
                            random_poly_spinor, square_defect, verify_square)
from spincert.errors import ShapeMismatch
from spincert.exact import QC
from spincert.gamma import build_gamma, paper_gamma3
from spincert.rng import SplitMix64


def test_poly_diff():
    p = {(2, 1): QC(3), (0, 0): QC(5)}
    assert poly_diff(p, 0) == {(1, 1): QC(6)}
    assert poly_diff(p, 1) == {(2, 0): QC(3)}
    assert poly_diff(poly_diff(p, 1), 1) == {}


def test_dirac_apply_hand_example():
    gam = ExactGamma(paper_gamma3())
    f = PolySpinor(3, [{(1, 0, 0): QC(1)}, {}])
    out = dirac_apply(gam, f)
    # one differentiation then the first generator: (x1, 0) -> (i, 0)
    assert out.components == [{(0, 0, 0): QC(0, 1)}, {}]
    const = PolySpinor(3, [{(0, 0, 0): QC(7)}, {(0, 0, 0): QC(0, 2)}])
    assert dirac_apply(gam, const).is_zero()


def test_laplacian_hand_examples():
    f = PolySpinor(3, [{(2, 0, 0): QC(1)}, {}])
    assert laplacian_apply(f).components == [{(0, 0, 0): QC(-2)}, {}]
    harmonic = PolySpinor(3, [{(2, 0, 0): QC(1), (0, 2, 0): QC(-1)}, {}])
    assert laplacian_apply(harmonic).is_zero()
    assert laplacian_apply(PolySpinor(3, [{(0, 0, 0): QC(1)}, {}])).is_zero()


def test_shape_mismatch():
    gam = ExactGamma(paper_gamma3())
    with pytest.raises(ShapeMismatch):
        dirac_apply(gam, PolySpinor(2, [{(0, 0): QC(1)}, {}]))
    with pytest.raises(ShapeMismatch):
        PolySpinor(3, [{(1, 0): QC(1)}])


def test_square_identity_random_exact():
    rng = SplitMix64(71).stream("sq")
    for n in (2, 3, 4, 6, 8):
        rep = build_gamma(n, +1)
        gam = ExactGamma(rep)
        for _ in range(25):
            f = random_poly_spinor(n, rep.k, 5, rng)
            assert verify_square(gam, f)


def test_square_identity_paper_and_branches():
    rng = SplitMix64(72).stream("paper")
    gam = ExactGamma(paper_gamma3())
    for _ in range(50):
        assert verify_square(gam, random_poly_spinor(3, 2, 5, rng))
    # identity is branch independent
    for branch in (+1, -1):
        gam_b = ExactGamma(build_gamma(5, branch))
        assert verify_square(gam_b, random_poly_spinor(5, 4, 4, rng))


def test_linearity_exact():
    rng = SplitMix64(73).stream("lin")
    rep = build_gamma(4)
    gam = ExactGamma(rep)
    f = random_poly_spinor(4, rep.k, 4, rng)
    g = random_poly_spinor(4, rep.k, 4, rng)
    summed = PolySpinor(4, [dict(c) for c in f.components])
    for comp, other in zip(summed.components, g.components):
        poly_add_scaled(comp, other, QC(1))
    lhs = dirac_apply(gam, summed)
    rhs = dirac_apply(gam, f)
    for comp, other in zip(rhs.components, dirac_apply(gam, g).components):
        poly_add_scaled(comp, other, QC(1))
    assert lhs == PolySpinor(4, rhs.components)


def test_corrupted_gamma_detected():
    gam = ExactGamma(build_gamma(3, +1))
    probe = PolySpinor(3, [{(2, 0, 0): QC(1), (0, 1, 1): QC(1)},
                           {(0, 2, 0): QC(1), (1, 1, 0): QC(1)}])
    bad = gam.perturbed(1, 0, 1, QC(Fraction(1, 10 ** 6)))
    defect = square_defect(bad, probe)
    assert defect is not None
    assert defect["component"] in (0, 1)
    assert verify_square(gam, probe)  # the unperturbed one passes


def test_plane_wave_examples():
    rep = build_gamma(4)
    assert plane_wave_check(rep, PlaneWaveSpinor(np.zeros(4),
                                                 np.ones(rep.k, dtype=complex))) == 0.0
    xi = np.eye(4)[:, 0]
    v = np.array([1.0, -2.0, 0.5j, 0.0], dtype=complex)
    assert plane_wave_check(rep, PlaneWaveSpinor(xi, v)) < 1e-12


def test_plane_wave_random():
    rng = SplitMix64(74).stream("pw")
    for n in (2, 5, 8):
        rep = build_gamma(n, +1)
        for _ in range(30):
            xi = rng.normals(n) * 3.0
            v = rng.complex_normals(rep.k)
            assert plane_wave_check(rep, PlaneWaveSpinor(xi, v)) < 1e-11
