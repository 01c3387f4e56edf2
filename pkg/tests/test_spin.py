"""Rotor lifting, adjoint action, and double-cover monodromy."""

import numpy as np
import pytest

from spincert.clifford import BilinearForm, Multivector, mv_mul
from spincert.errors import NotSpecial, NotSpin, StepTooCoarse
from spincert.rng import SplitMix64
from spincert.spin import (SpinElement, adjoint_matrix, canonical_sign, lift_rotation,
                           path_monodromy, plane_rotation, plane_rotation_loop)

C3 = BilinearForm.negative_euclidean(3)


def random_rotor(n, rng, pairs=1):
    form = BilinearForm.negative_euclidean(n)
    mv = Multivector.scalar(form, 1.0)
    for _ in range(2 * pairs):
        mv = mv_mul(mv, Multivector.vector(form, rng.unit_vector(n)))
    scal = mv_mul(mv, mv.reverse()).coefficient(0).real
    return SpinElement(mv.scale(1.0 / np.sqrt(scal)), validate=False)


def test_identity_elements_map_to_identity():
    assert np.allclose(adjoint_matrix(SpinElement.identity(4)), np.eye(4))
    minus = SpinElement(-SpinElement.identity(4).mv, validate=False)
    assert np.allclose(adjoint_matrix(minus), np.eye(4))


def test_half_angle_rotor_rotates_plane():
    theta = np.pi / 2
    rotor = SpinElement(Multivector(C3, {0: np.cos(theta / 2), 0b11: np.sin(theta / 2)}))
    r = adjoint_matrix(rotor)
    # orientation frozen by the reflection-composition oracle: e1 -> e2
    assert np.allclose(r, plane_rotation(3, (0, 1), theta), atol=1e-12)
    assert np.allclose(r[:, 2], [0, 0, 1], atol=1e-14)


def test_adjoint_matches_reflection_composition_oracle():
    rng = SplitMix64(31).stream("refl")
    for n in (3, 5):
        form = BilinearForm.negative_euclidean(n)
        for _ in range(20):
            v, w = rng.unit_vector(n), rng.unit_vector(n)
            mv = mv_mul(Multivector.vector(form, v), Multivector.vector(form, w))
            scal = mv_mul(mv, mv.reverse()).coefficient(0).real
            rotor = SpinElement(mv.scale(1.0 / np.sqrt(scal)), validate=False)
            hv = np.eye(n) - 2 * np.outer(v, v)
            hw = np.eye(n) - 2 * np.outer(w, w)
            assert np.linalg.norm(adjoint_matrix(rotor) - hv @ hw) < 1e-10


def test_spin_element_validation():
    with pytest.raises(NotSpin):
        SpinElement(Multivector.basis_vector(C3, 0))  # odd grade
    with pytest.raises(NotSpin):
        SpinElement(Multivector.scalar(C3, 2.0))  # not unit


def test_adjoint_rejects_non_rotor():
    # 1 + e1 e2 e3 e4 is even and unit-normalized after scaling but its
    # conjugation mixes grades 1 and 3
    form = BilinearForm.negative_euclidean(4)
    mv = Multivector(form, {0: 1.0, 0b1111: 1.0}).scale(1 / np.sqrt(2))
    with pytest.raises(NotSpin):
        adjoint_matrix(SpinElement(mv, validate=False))


def test_lift_identity_and_plane_rotation():
    assert lift_rotation(np.eye(3)).distance(SpinElement.identity(3)) == 0.0
    a = lift_rotation(plane_rotation(2, (0, 1), np.pi / 2))
    expected = Multivector(BilinearForm.negative_euclidean(2),
                           {0: np.cos(np.pi / 4), 0b11: np.sin(np.pi / 4)})
    assert a.mv.distance(expected) < 1e-12


def test_lift_roundtrip_random():
    rng = SplitMix64(12).stream("lift")
    for n in range(2, 9):
        for _ in range(25):
            r = rng.rotation(n)
            assert np.linalg.norm(adjoint_matrix(lift_rotation(r)) - r) < 1e-9


def test_lift_handles_pi_rotations():
    r = np.diag([-1.0, -1.0, 1.0, 1.0])
    assert np.linalg.norm(adjoint_matrix(lift_rotation(r)) - r) < 1e-12
    r4 = -np.eye(4)
    assert np.linalg.norm(adjoint_matrix(lift_rotation(r4)) - r4) < 1e-12


def test_lift_rejects_reflections():
    with pytest.raises(NotSpecial):
        lift_rotation(np.diag([1.0, 1.0, -1.0]))


def test_canonical_sign_deterministic():
    rng = SplitMix64(14).stream("canon")
    for _ in range(20):
        a = random_rotor(4, rng, pairs=2)
        canon_a, _ = canonical_sign(a.mv)
        canon_b, _ = canonical_sign(-a.mv)
        assert canon_a.distance(canon_b) == 0.0


def test_homomorphism_and_kernel():
    rng = SplitMix64(15).stream("homo")
    for n in (3, 5):
        for _ in range(10):
            a, b = random_rotor(n, rng), random_rotor(n, rng)
            assert np.linalg.norm(adjoint_matrix(a * b)
                                  - adjoint_matrix(a) @ adjoint_matrix(b)) < 1e-9
            lifted = lift_rotation(adjoint_matrix(a))
            flipped = SpinElement(-lifted.mv, validate=False)
            assert min(a.distance(lifted), a.distance(flipped)) < 1e-9


def test_monodromy_single_and_double():
    assert path_monodromy(plane_rotation_loop(3, (0, 1), 1.0, 400)) == -1
    assert path_monodromy(plane_rotation_loop(3, (0, 1), 2.0, 800)) == +1
    assert path_monodromy(plane_rotation_loop(4, (1, 2), 1.0, 400)) == -1


def test_monodromy_constant_loop():
    loop = [np.eye(3)] * 5
    assert path_monodromy(loop) == +1


def test_monodromy_refinement_invariance():
    coarse = plane_rotation_loop(3, (0, 1), 1.0, 173)
    assert path_monodromy(coarse) == -1
    assert path_monodromy(coarse, steps=600) == -1


def test_monodromy_coarse_loop_rejected():
    loop = plane_rotation_loop(3, (0, 1), 1.0, 8)
    with pytest.raises(StepTooCoarse):
        path_monodromy(loop)


def test_monodromy_requires_closure():
    loop = plane_rotation_loop(3, (0, 1), 1.0, 300)[:-10]
    with pytest.raises(ValueError):
        path_monodromy(loop)


def test_rotor_coefficient_norm_is_one():
    rng = SplitMix64(16).stream("norm")
    for _ in range(10):
        a = random_rotor(5, rng, pairs=2)
        assert a.mv.norm() == pytest.approx(1.0, abs=1e-12)
