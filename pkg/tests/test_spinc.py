"""Factorization through rotor-scalar classes: round trips and obstruction."""

import numpy as np
import pytest

from spincert.clifford import BilinearForm, Multivector
from spincert.errors import NotScalar, NotSpecial
from spincert.gamma import build_gamma, rep_apply
from spincert.rng import SplitMix64
from spincert.spin import SpinElement, lift_rotation
from spincert.spinc import (FactorizationResult, SpinCElement, bijection_roundtrip,
                            epsilon, equivariance_residual, factorize, factorize_instance,
                            homomorphism_check, rotate_multivector, scalar_extract,
                            so_obstruction_demo, spin_instance, unique_lift_classes)
from tests.test_spin import random_rotor


def random_class(n, rng):
    c = complex(rng.normal(), rng.normal())
    if abs(c) < 0.1:
        c = 1.0
    return SpinCElement(random_rotor(n, rng, pairs=rng.randint(1, 2)), c)


def test_epsilon_examples():
    rep = build_gamma(3, +1)
    assert np.array_equal(epsilon(SpinCElement.identity(3), rep), np.eye(2))
    x = SpinCElement(SpinElement.identity(3), 2.0 - 1.0j)
    assert np.array_equal(epsilon(x, rep), (2.0 - 1.0j) * np.eye(2))
    rng = SplitMix64(41).stream("eps")
    a = random_rotor(3, rng)
    assert np.allclose(epsilon(SpinCElement(a, 1.0), rep), rep_apply(rep, a.mv) *
                       (1 if SpinCElement(a, 1.0).c == 1 else -1))


def test_class_identification():
    rng = SplitMix64(42).stream("class")
    rep = build_gamma(4)
    for _ in range(10):
        x = random_class(4, rng)
        flipped = SpinCElement(SpinElement(-x.a.mv, validate=False), -x.c)
        assert x.class_distance(flipped) == 0.0
        assert np.array_equal(epsilon(x, rep), epsilon(flipped, rep))


def test_epsilon_multiplicative():
    rng = SplitMix64(43).stream("mult")
    rep = build_gamma(3, +1)
    for _ in range(10):
        x, y = random_class(3, rng), random_class(3, rng)
        assert np.linalg.norm(epsilon(x * y, rep) - epsilon(x, rep) @ epsilon(y, rep)) < 1e-12


def test_equivariance_zero_for_identity_and_small_for_random():
    rep = build_gamma(4)
    form = BilinearForm.negative_euclidean(4)
    y = Multivector.basis_vector(form, 2)
    assert equivariance_residual(rep, SpinCElement.identity(4), y) < 1e-14
    rng = SplitMix64(44).stream("equi")
    for _ in range(15):
        x = random_class(4, rng)
        j = rng.randint(0, 3)
        assert equivariance_residual(rep, x, Multivector.basis_vector(form, j)) < 1e-10


def test_equivariance_closed_form_plane_rotation():
    rep = build_gamma(3, +1)
    form = BilinearForm.negative_euclidean(3)
    theta = 0.9
    rotor = SpinElement(Multivector(form, {0: np.cos(theta / 2), 0b11: np.sin(theta / 2)}))
    x = SpinCElement(rotor, 1.0)
    assert equivariance_residual(rep, x, Multivector.basis_vector(form, 0)) < 1e-12


def test_rotate_multivector_multiplicative_on_blades():
    form = BilinearForm.negative_euclidean(3)
    rng = SplitMix64(45).stream("rot")
    r = rng.rotation(3)
    e1e2 = Multivector(form, {0b11: 1.0})
    expected = rotate_multivector(r, Multivector.basis_vector(form, 0)) \
        * rotate_multivector(r, Multivector.basis_vector(form, 1))
    assert rotate_multivector(r, e1e2).distance(expected) < 1e-13


def test_scalar_extract():
    assert scalar_extract(3.5j * np.eye(4)) == pytest.approx(3.5j)
    with pytest.raises(NotScalar):
        scalar_extract(np.eye(3) + np.diag([0.0, 0.0, 0.9]))
    with pytest.raises(NotScalar):
        scalar_extract(np.zeros((3, 3)))
    m = rep_apply(build_gamma(3, +1), SpinElement.identity(3).mv)
    assert scalar_extract(m) == pytest.approx(1.0)


def test_factorize_roundtrip_and_uniqueness():
    rng = SplitMix64(46).stream("fact")
    for n in (1, 2, 3, 5, 8):
        rep = build_gamma(n, +1)
        for _ in range(15):
            x = random_class(n, rng)
            res = factorize(rep, x.rotation(), epsilon(x, rep))
            assert isinstance(res, FactorizationResult)
            assert res.ok
            assert res.element.class_distance(x) < 1e-8
            for cls in unique_lift_classes(rep, x.rotation(), epsilon(x, rep)):
                assert cls.class_distance(res.element) < 1e-8


def test_factorize_spin_inclusion_gives_unit_scalar():
    rng = SplitMix64(47).stream("incl")
    rep = build_gamma(4)
    for _ in range(10):
        a = random_rotor(4, rng)
        res = factorize(rep, SpinCElement(a, 1.0).rotation(), rep_apply(rep, a.mv))
        assert abs(abs(res.element.c) - 1.0) < 1e-9
        assert res.element.class_distance(SpinCElement(a, 1.0)) < 1e-8


def test_factorize_flags_non_solutions():
    rng = SplitMix64(48).stream("bad")
    rep = build_gamma(3, +1)
    x = random_class(3, rng)
    eps = epsilon(x, rep)
    with pytest.raises(NotScalar):
        factorize(rep, x.rotation(), eps @ np.diag([1.0, 3.0]).astype(complex))
    with pytest.raises(NotSpecial):
        factorize(rep, np.diag([1.0, 1.0, -1.0]), eps)


def test_instance_checks():
    rng = SplitMix64(49).stream("inst")
    rep = build_gamma(3, +1)
    inst = spin_instance(rep, 12, rng, pair_hints=8)
    out = homomorphism_check(rep, inst)
    assert out["pass"] and out["worst_residual"] < 1e-8
    bij = bijection_roundtrip(rep, inst)
    assert bij["pass"]
    assert bij["forward_residual"] < 1e-8 and bij["backward_residual"] < 1e-8
    results = factorize_instance(rep, inst)
    assert all(r.ok for r in results)


def test_identity_only_instance_passes():
    from spincert.spinc import SolutionInstance
    rep = build_gamma(2)
    inst = SolutionInstance("identity", [("e", np.eye(2), np.eye(2, dtype=complex))],
                            [(0, 0, 0)])
    assert homomorphism_check(rep, inst)["pass"]
    assert bijection_roundtrip(rep, inst)["pass"]


def test_so_obstruction():
    out = so_obstruction_demo(3, 400)
    assert out["monodromy"] == -1
    assert out["doubled_monodromy"] == +1
    assert out["conclusion"] == "no section"
    assert out["pass"]
    with pytest.raises(ValueError):
        so_obstruction_demo(2, 400)
    with pytest.raises(ValueError):
        so_obstruction_demo(3, 50)
