"""Hermite model, canonical commutators, quantized flows."""

import numpy as np
import pytest

from spincert.errors import (CutoffTooSmall, NotScalar, PathUnavailable,
                             UnsupportedGenerator)
from spincert.rng import SplitMix64
from spincert.weyl import (HermiteModel, MpCElement, QuadraticHamiltonian, build_hermite_model,
                           ccr_residual, clifford_mult, derivative_matrix, mp_equivariance_residual,
                           mp_factorize, mp_monodromy, mp_one_param, omega, position_matrix,
                           quadrature_derivative_matrix, quadrature_position_matrix,
                           sp_one_param, symplectic_form)

# quadrature oracle first: these frozen values pin the ladder convention
QUAD_X_8 = quadrature_position_matrix(8)
QUAD_D_8 = quadrature_derivative_matrix(8)


def test_quadrature_oracle_values():
    assert QUAD_X_8[0, 1] == pytest.approx(1 / np.sqrt(2), abs=1e-13)
    assert QUAD_X_8[1, 0] == pytest.approx(1 / np.sqrt(2), abs=1e-13)
    # derivative pattern: d h_1 = sqrt(1/2) h_0 - sqrt(2/2) h_2
    assert QUAD_D_8[0, 1] == pytest.approx(np.sqrt(0.5), abs=1e-13)
    assert QUAD_D_8[2, 1] == pytest.approx(-1.0, abs=1e-13)
    assert abs(QUAD_D_8[0, 0]) < 1e-13


def test_ladder_matrices_match_oracle():
    for n in (8, 16, 32):
        assert np.max(np.abs(position_matrix(n) - quadrature_position_matrix(n))) < 1e-12
        assert np.max(np.abs(derivative_matrix(n) - quadrature_derivative_matrix(n))) < 1e-12


def test_model_structure():
    model = build_hermite_model(1, 8)
    x = model.xops[0]
    assert np.max(np.abs(x.real)) == 0.0           # i times a real matrix
    sym = (x / 1j).real
    assert np.array_equal(sym, sym.T)              # symmetric
    assert np.count_nonzero(sym - np.diag(np.diag(sym, 1), 1)
                            - np.diag(np.diag(sym, -1), -1)) == 0  # tridiagonal
    d = model.dops[0].real
    assert np.array_equal(d, -d.T)
    with pytest.raises(CutoffTooSmall):
        build_hermite_model(1, 4)


def test_interior_mask():
    model = build_hermite_model(2, 8)
    mask = model.interior_mask()
    assert mask.sum() == 6 * 6  # levels 0..5 in each mode
    assert model.interior_bound == 5


def test_clifford_mult_linear():
    model = build_hermite_model(2, 8)
    rng = SplitMix64(81).stream("lin")
    y1, y2 = rng.normals(4), rng.normals(4)
    assert np.linalg.norm(clifford_mult(model, y1 + y2)
                          - clifford_mult(model, y1) - clifford_mult(model, y2)) < 1e-12
    assert np.linalg.norm(clifford_mult(model, np.zeros(4))) == 0.0
    assert np.array_equal(clifford_mult(model, np.eye(4)[:, 0]), model.xops[0])


def test_ccr_interior_and_cross_mode():
    for n in (16, 24, 32):
        model = build_hermite_model(1, n)
        assert ccr_residual(model, [1.0, 0.0], [0.0, 1.0]) < 1e-10
    model2 = build_hermite_model(2, 10)
    assert ccr_residual(model2, [1, 0, 0, 0], [0, 1, 0, 0]) == 0.0  # different modes
    assert ccr_residual(model2, [1, 0, 0, 0], [1, 0, 0, 0]) == 0.0  # v = w
    assert ccr_residual(model2, [0, 1, 0, 0], [0, 0, 0, 1]) < 1e-10


def test_ccr_interior_commutator_value():
    # on interior columns the conjugate-pair commutator equals -i I
    model = build_hermite_model(1, 16)
    rv = clifford_mult(model, [1.0, 0.0])
    rw = clifford_mult(model, [0.0, 1.0])
    comm = rv @ rw - rw @ rv
    mask = model.interior_mask()
    assert np.max(np.abs(comm[:, mask] - (-1j) * np.eye(16)[:, mask])) < 1e-12


def test_omega_convention():
    assert omega(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 1.0
    assert omega(np.array([0.0, 1.0]), np.array([1.0, 0.0])) == -1.0
    j = symplectic_form(2)
    v, w = np.array([1, 2, 3, 4.0]), np.array([4, 3, 2, 1.0])
    assert omega(v, w) == pytest.approx(v @ j @ w)


def test_sp_one_param():
    h = QuadraticHamiltonian.oscillator(1, 0)
    assert np.allclose(sp_one_param(h, 0.0), np.eye(2))
    t = 0.37
    s = sp_one_param(h, t)
    assert np.allclose(s, [[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    sq = sp_one_param(QuadraticHamiltonian.squeeze(1, 0), 0.5)
    assert np.allclose(sq, np.diag([np.exp(0.5), np.exp(-0.5)]))
    sh = sp_one_param(QuadraticHamiltonian.shear(1, 0), 0.8)
    assert np.allclose(sh, [[1.0, 0.0], [-0.8, 1.0]])
    rng = SplitMix64(82).stream("sp")
    j = symplectic_form(1)
    for _ in range(20):
        a, b, c = rng.normal(), rng.normal(), rng.normal()
        s = sp_one_param(QuadraticHamiltonian(np.array([[a, b], [b, c]])), rng.uniform())
        assert np.linalg.norm(s.T @ j @ s - j) < 1e-10


def test_quadratic_hamiltonian_validation():
    with pytest.raises(ValueError):
        QuadraticHamiltonian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    combined = QuadraticHamiltonian.oscillator(2, 0) + QuadraticHamiltonian.squeeze(2, 1)
    assert combined.matrix.shape == (4, 4)


def test_mp_one_param_identity_and_oscillator_diagonal():
    model = build_hermite_model(1, 16)
    g0 = mp_one_param(model, QuadraticHamiltonian.oscillator(1, 0), 0.0)
    assert np.allclose(g0.u, np.eye(16))
    t = 0.6
    g = mp_one_param(model, QuadraticHamiltonian.oscillator(1, 0), t)
    levels = np.arange(15)
    assert np.max(np.abs(np.diag(g.u)[:15] - np.exp(-1j * t * (levels + 0.5)))) < 1e-12
    off = g.u - np.diag(np.diag(g.u))
    assert np.max(np.abs(off)) < 1e-12


def test_mp_equivariance_all_generators():
    model = build_hermite_model(1, 32)
    rng = SplitMix64(83).stream("equi")
    for h in (QuadraticHamiltonian.oscillator(1, 0), QuadraticHamiltonian.squeeze(1, 0),
              QuadraticHamiltonian.shear(1, 0)):
        for t in (-1.0, 0.5, 1.0):
            g = mp_one_param(model, h, t)
            for _ in range(2):
                y = rng.normals(2)
                y /= np.linalg.norm(y)
                assert mp_equivariance_residual(model, g, y) < 1e-6


def test_mp_equivariance_scalar_cancels():
    model = build_hermite_model(1, 16)
    g = mp_one_param(model, QuadraticHamiltonian.oscillator(1, 0), 0.5)
    scaled = MpCElement(s=g.s, u=g.u, z=3.0, path=g.path, work=g.work)
    y = np.array([1.0, 0.0])
    assert mp_equivariance_residual(model, g, y) == pytest.approx(
        mp_equivariance_residual(model, scaled, y), abs=1e-14)


def test_multimode_oscillator_sum():
    model = build_hermite_model(2, 8)
    h = QuadraticHamiltonian.oscillator(2, 0) + QuadraticHamiltonian.oscillator(2, 1)
    g = mp_one_param(model, h, 0.4)
    for j in range(4):
        assert mp_equivariance_residual(model, g, np.eye(4)[:, j]) < 1e-6


def test_unsupported_generators():
    model = build_hermite_model(2, 8)
    coupling = np.zeros((4, 4))
    coupling[0, 1] = coupling[1, 0] = 1.0
    with pytest.raises(UnsupportedGenerator):
        mp_one_param(model, QuadraticHamiltonian(coupling), 0.3)
    with pytest.raises(UnsupportedGenerator):
        # two-mode squeeze needs a working space beyond the budget
        mp_one_param(model, QuadraticHamiltonian.squeeze(2, 0), 1.0)
    big = build_hermite_model(1, 32)
    with pytest.raises(UnsupportedGenerator):
        mp_one_param(big, QuadraticHamiltonian.squeeze(1, 0), 4.0)


def test_mp_factorize_roundtrip_and_errors():
    model = build_hermite_model(1, 24)
    h = QuadraticHamiltonian.oscillator(1, 0)
    g = mp_one_param(model, h, 0.8)
    z = 2.0 - 0.7j
    res = mp_factorize(model, g.s, z * g.u)
    canon_u, canon_z = MpCElement(s=g.s, u=g.u, z=z).class_canonical()
    assert abs(res.c - canon_z) < 1e-8
    assert res.scalar_residual < 1e-10
    # class identification
    res2 = mp_factorize(model, g.s, (-z) * (-g.u))
    assert abs(res.c - res2.c) == 0.0
    # perturbation flagged
    pert = np.eye(24, dtype=complex)
    pert[3, 3] = 1.4
    with pytest.raises(NotScalar):
        mp_factorize(model, g.s, (z * g.u) @ pert)
    # unreachable flow
    with pytest.raises(PathUnavailable):
        mp_factorize(model, np.array([[2.0, 1.0], [1.0, 1.0]]), np.eye(24, dtype=complex))


def test_mp_factorize_with_explicit_path():
    model = build_hermite_model(1, 24)
    h = QuadraticHamiltonian.oscillator(1, 0)
    g1 = mp_one_param(model, h, 0.3)
    g2 = mp_one_param(model, h, 0.45)
    s = g1.s @ g2.s
    u = g1.u @ g2.u
    res = mp_factorize(model, s, 1.5 * u, path=[(h, 0.3), (h, 0.45)])
    assert abs(abs(res.c) - 1.5) < 1e-8
    with pytest.raises(PathUnavailable):
        mp_factorize(model, s, u, path=[(h, 0.3)])


def test_mp_scalar_multiplicativity():
    model = build_hermite_model(1, 24)
    h = QuadraticHamiltonian.oscillator(1, 0)
    za, zb = 1.3 + 0.2j, 0.6 - 0.9j
    ga, gb = mp_one_param(model, h, 0.2), mp_one_param(model, h, 0.55)
    gab = mp_one_param(model, h, 0.75)
    ca = mp_factorize(model, ga.s, za * ga.u).c
    cb = mp_factorize(model, gb.s, zb * gb.u).c
    cab = mp_factorize(model, gab.s, (za * zb) * gab.u).c
    assert abs(ca * cb - cab) < 1e-8


def test_mp_monodromy():
    model = build_hermite_model(1, 32)
    out = mp_monodromy(model)
    assert out["monodromy"] == -1
    assert out["pass"]
    assert out["phase_defect"] < 1e-10
    assert out["doubled_defect"] < 1e-10
    # half loop: classical flow is -I while the quantized square closes to -I
    h = QuadraticHamiltonian.oscillator(1, 0)
    half = mp_one_param(model, h, np.pi)
    assert np.allclose(half.s, -np.eye(2), atol=1e-12)


def test_squeeze_work_space_is_unitary():
    model = build_hermite_model(1, 16)
    g = mp_one_param(model, QuadraticHamiltonian.squeeze(1, 0), 0.5)
    assert g.work is not None
    uw = g.work["u"]
    assert np.max(np.abs(uw.imag)) < 1e-12  # real orthogonal
    gram = uw.T @ uw - np.eye(uw.shape[0])
    assert np.linalg.norm(gram[:, :model.interior_bound + 1]) < 1e-8
