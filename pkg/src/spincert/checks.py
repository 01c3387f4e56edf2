"""The verification checks behind every suite.

Each function takes a RunConfig and returns CheckReport objects; residuals
are maxima over the sampled family. Default tolerances follow the ladder
used throughout: construction 1e-12, certification 1e-10, cross-module
round trips 1e-8.
"""

from __future__ import annotations

import numpy as np

from . import dirac as dr
from . import weyl as wl
from .clifford import BilinearForm, ExactMultivector, Multivector, mv_mul
from .errors import NoIntertwiner, NotScalar, ParseError
from .exact import QC
from .gamma import (GammaRep, blade_span_dimension, branch_invariant, build_gamma,
                    commutant_dim, intertwiner_solve, paper_gamma3, rep_apply)
from .rng import SplitMix64
from .spin import (SpinElement, adjoint_matrix, lift_rotation, path_monodromy,
                   plane_rotation, plane_rotation_loop)
from .spinc import (SpinCElement, bijection_roundtrip, epsilon, equivariance_residual,
                    factorize, factorize_instance, homomorphism_check, scalar_extract,
                    so_obstruction_demo, spin_instance, unique_lift_classes)
from .tensor_oracle import oracle_mul

CHECKS: dict = {}
SUITES: dict[str, list[str]] = {}


def _register(check_id: str, *suites: str):
    def wrap(fn):
        CHECKS[check_id] = fn
        for s in suites + ("all",):
            SUITES.setdefault(s, []).append(check_id)
        return fn
    return wrap


def _clean(value):
    """Make parameter values JSON-friendly and deterministic."""
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (tuple, list)):
        return [_clean(v) for v in value]
    return value


def _report(cfg, check_id, params, residual, default_tol):
    from .reports import CheckReport
    tol = cfg.tol(check_id, default_tol)
    params = {k: _clean(v) for k, v in params.items()}
    return CheckReport(check=check_id, params=params, residual=float(residual),
                       tol=tol, passed=bool(residual <= tol))


def _flag_report(cfg, check_id, params, ok):
    from .reports import CheckReport
    params = {k: _clean(v) for k, v in params.items()}
    return CheckReport(check=check_id, params=params, residual=None, tol=None,
                       passed=bool(ok))


def _random_multivector(form, rng, terms=5):
    t = {}
    for _ in range(terms):
        mask = rng.randint(0, (1 << form.dim) - 1)
        t[mask] = complex(rng.normal(), rng.normal())
    return Multivector(form, t)


def _random_rotor(n, rng, pairs=None) -> SpinElement:
    form = BilinearForm.negative_euclidean(n)
    mv = Multivector.scalar(form, 1.0)
    for _ in range(2 * (pairs or rng.randint(1, 2))):
        mv = mv_mul(mv, Multivector.vector(form, rng.unit_vector(n)))
    scal = mv_mul(mv, mv.reverse()).coefficient(0).real
    return SpinElement(mv.scale(1.0 / np.sqrt(scal)), validate=False)


def _random_class(n, rng) -> SpinCElement:
    c = complex(rng.normal(), rng.normal())
    if abs(c) < 0.1:
        c = 1.0
    return SpinCElement(_random_rotor(n, rng), c)


# --------------------------------------------------------------------------
# clifford
# --------------------------------------------------------------------------

@_register("clifford.blade-products", "clifford")
def _clifford_blades(cfg):
    form = BilinearForm.negative_euclidean(3)
    e1 = Multivector.basis_vector(form, 0)
    e2 = Multivector.basis_vector(form, 1)
    one = Multivector.scalar(form, 1.0)
    r = 0.0
    r = max(r, (mv_mul(e1, e1) + one).norm())                       # e1^2 = -1
    r = max(r, mv_mul(e1, e2).distance(Multivector(form, {3: 1})))   # e1 e2
    r = max(r, mv_mul(e2, e1).distance(Multivector(form, {3: -1})))  # e2 e1
    x = _random_multivector(form, cfg.stream("clifford.blade-products"))
    r = max(r, mv_mul(one, x).distance(x))
    e12 = mv_mul(e1, e2)
    r = max(r, (mv_mul(e12, e12) + one).norm())                      # (e1e2)^2 = -1
    return [_report(cfg, "clifford.blade-products", {"n": 3}, r, 1e-14)]


@_register("clifford.generator-relations", "clifford")
def _clifford_relations(cfg):
    n = int(cfg.param("n", 5))
    form = BilinearForm.negative_euclidean(n)
    r = 0.0
    for j in range(n):
        ej = Multivector.basis_vector(form, j)
        sq = mv_mul(ej, ej)
        r = max(r, sq.distance(Multivector.scalar(form, form.diag[j])))
        for l in range(j + 1, n):
            el = Multivector.basis_vector(form, l)
            r = max(r, (mv_mul(ej, el) + mv_mul(el, ej)).norm())
    return [_report(cfg, "clifford.generator-relations", {"n": n}, r, 1e-14)]


@_register("clifford.associativity", "clifford")
def _clifford_assoc(cfg):
    rng = cfg.stream("clifford.associativity")
    n = int(cfg.param("n", 4))
    form = BilinearForm.negative_euclidean(n)
    r = 0.0
    for _ in range(25):
        x, y, z = (_random_multivector(form, rng) for _ in range(3))
        r = max(r, mv_mul(mv_mul(x, y), z).distance(mv_mul(x, mv_mul(y, z))))
    # exact mode: associativity as an identity of rationals
    form3 = BilinearForm.negative_euclidean(3)
    ex = ExactMultivector(form3, {0: QC(1, 2), 3: QC(-2, 1), 5: QC(3)})
    ey = ExactMultivector(form3, {1: QC(2), 6: QC(0, -1)})
    ez = ExactMultivector(form3, {7: QC(1, 1), 2: QC(-3)})
    exact_ok = (ex * ey) * ez == ex * (ey * ez)
    rep = _report(cfg, "clifford.associativity", {"n": n, "samples": 25,
                                                  "exact_mode": bool(exact_ok)}, r, 1e-13)
    rep.passed = rep.passed and exact_ok
    return [rep]


@_register("clifford.reverse", "clifford")
def _clifford_reverse(cfg):
    rng = cfg.stream("clifford.reverse")
    form = BilinearForm.negative_euclidean(4)
    e12 = Multivector(form, {0b11: 1.0})
    r = e12.reverse().distance(-e12)  # grade 2 flips
    r = max(r, Multivector.scalar(form, 2.2).reverse().distance(Multivector.scalar(form, 2.2)))
    for _ in range(25):
        x, y = _random_multivector(form, rng), _random_multivector(form, rng)
        r = max(r, mv_mul(x, y).reverse().distance(mv_mul(y.reverse(), x.reverse())))
        r = max(r, x.reverse().reverse().distance(x))
    return [_report(cfg, "clifford.reverse", {"n": 4, "samples": 25}, r, 1e-13)]


@_register("clifford.tensor-oracle", "clifford")
def _clifford_oracle(cfg):
    rng = cfg.stream("clifford.tensor-oracle")
    r = 0.0
    for n in (1, 2, 3):
        form = BilinearForm.negative_euclidean(n)
        for _ in range(20):
            x, y = _random_multivector(form, rng, 4), _random_multivector(form, rng, 4)
            r = max(r, mv_mul(x, y).distance(oracle_mul(x, y)))
    return [_report(cfg, "clifford.tensor-oracle", {"n_max": 3, "samples": 60}, r, 1e-13)]


@_register("clifford.serialization", "clifford")
def _clifford_serialization(cfg):
    rng = cfg.stream("clifford.serialization")
    form = BilinearForm.negative_euclidean(4)
    x = _random_multivector(form, rng)
    ok = Multivector.from_json(x.to_json()) == x
    try:
        Multivector.from_json('{"n": 2, "diag": [-1.0, -1.0], "terms": [{"mask": 1, "re": 1.0}]}')
        ok = False
    except ParseError:
        pass
    try:
        Multivector.from_json(
            '{"n": 1, "diag": [-1.0], "terms": [{"mask": 0, "re": Infinity, "im": 0.0}]}')
        ok = False
    except Exception:
        pass
    return [_flag_report(cfg, "clifford.serialization", {"roundtrip": True}, ok)]


# --------------------------------------------------------------------------
# gamma
# --------------------------------------------------------------------------

@_register("gamma.relations", "gamma")
def _gamma_relations(cfg):
    n_max = int(cfg.param("n", 10))
    r = 0.0
    for n in range(1, n_max + 1):
        for b in ((+1, -1) if n % 2 else (+1,)):
            rep = build_gamma(n, b)
            r = max(r, rep.relation_residual(), rep.unitary_skew_residual())
    return [_report(cfg, "gamma.relations", {"n_max": n_max, "branches": "both"}, r, 1e-12)]


@_register("gamma.commutant", "gamma")
def _gamma_commutant(cfg):
    n_max = int(cfg.param("n", 10))
    bad = []
    for n in range(1, n_max + 1):
        for b in ((+1, -1) if n % 2 else (+1,)):
            d = commutant_dim(build_gamma(n, b))
            if d != 1:
                bad.append((n, b, d))
    # direct sum control: reducible input must NOT certify
    r3 = build_gamma(3, +1)
    zeros = np.zeros((2, 2))
    ds = [np.block([[g, zeros], [zeros, g]]) for g in r3.gammas]
    control = commutant_dim(ds)
    ok = not bad and control == 4
    return [_flag_report(cfg, "gamma.commutant",
                         {"n_max": n_max, "failures": str(bad), "reducible_control": control}, ok)]


@_register("gamma.paper-triple", "gamma")
def _gamma_paper(cfg):
    triple = paper_gamma3()
    r = triple.relation_residual()
    central = branch_invariant(triple)
    r = max(r, abs(central - 1.0))
    matched = []
    for b in (+1, -1):
        try:
            t = intertwiner_solve(build_gamma(3, b), triple)
            resid = max(np.linalg.norm(t @ a - bb @ t) for a, bb in
                        zip(build_gamma(3, b).gammas, triple.gammas))
            if resid < 1e-10:
                matched.append(b)
        except NoIntertwiner:
            pass
    rep = _report(cfg, "gamma.paper-triple",
                  {"central_product": 1, "linked_branches": str(matched)}, r, 1e-10)
    rep.passed = rep.passed and len(matched) == 1
    return [rep]


@_register("gamma.branch-invariant", "gamma")
def _gamma_branch(cfg):
    r = 0.0
    for n in (1, 3, 5, 7, 9):
        s_plus = branch_invariant(build_gamma(n, +1))
        s_minus = branch_invariant(build_gamma(n, -1))
        r = max(r, abs(s_plus + s_minus), abs(abs(s_plus) - 1.0))
    r = max(r, abs(branch_invariant(build_gamma(1, +1)) - 1j))
    return [_report(cfg, "gamma.branch-invariant", {"odd_n": "1,3,5,7,9"}, r, 1e-12)]


@_register("gamma.homomorphism", "gamma")
def _gamma_homomorphism(cfg):
    rng = cfg.stream("gamma.homomorphism")
    r = 0.0
    for n in (3, 4):
        rep = build_gamma(n, +1)
        form = BilinearForm.negative_euclidean(n)
        for _ in range(20):
            x, y = _random_multivector(form, rng), _random_multivector(form, rng)
            r = max(r, float(np.linalg.norm(
                rep_apply(rep, mv_mul(x, y)) - rep_apply(rep, x) @ rep_apply(rep, y))))
    return [_report(cfg, "gamma.homomorphism", {"n": "3,4", "samples": 40}, r, 1e-12)]


@_register("gamma.surjectivity", "gamma")
def _gamma_surjectivity(cfg):
    bad = []
    for n in range(2, 7):
        rep = build_gamma(n, +1)
        dim = blade_span_dimension(rep, even_only=(n % 2 == 1))
        if dim != rep.k ** 2:
            bad.append((n, dim))
    return [_flag_report(cfg, "gamma.surjectivity", {"n_range": "2..6", "failures": str(bad)},
                         not bad)]


@_register("gamma.equivalence", "gamma")
def _gamma_equivalence(cfg):
    rng = cfg.stream("gamma.equivalence")
    rep4 = build_gamma(4)
    w = rng.unitary(4)
    conj = GammaRep(4, [w @ g @ w.conj().T for g in rep4.gammas])
    t = intertwiner_solve(rep4, conj)
    r = max(np.linalg.norm(t @ a - b @ t) for a, b in zip(rep4.gammas, conj.gammas))
    same = intertwiner_solve(build_gamma(3, +1), paper_gamma3())
    r = max(r, max(np.linalg.norm(same @ a - b @ same) for a, b in
                   zip(build_gamma(3, +1).gammas, paper_gamma3().gammas)))
    opposite_blocked = False
    try:
        intertwiner_solve(build_gamma(3, +1), build_gamma(3, -1))
    except NoIntertwiner:
        opposite_blocked = True
    rep = _report(cfg, "gamma.equivalence", {"opposite_branches_blocked": opposite_blocked},
                  r, 1e-10)
    rep.passed = rep.passed and opposite_blocked
    return [rep]


# --------------------------------------------------------------------------
# spin
# --------------------------------------------------------------------------

@_register("spin.adjoint-oracle", "spin")
def _spin_adjoint(cfg):
    rng = cfg.stream("spin.adjoint-oracle")
    n = int(cfg.param("n", 4))
    r = float(np.linalg.norm(adjoint_matrix(SpinElement.identity(n)) - np.eye(n)))
    minus = SpinElement(-SpinElement.identity(n).mv, validate=False)
    r = max(r, float(np.linalg.norm(adjoint_matrix(minus) - np.eye(n))))
    form = BilinearForm.negative_euclidean(n)
    theta = np.pi / 2
    rotor = SpinElement(Multivector(form, {0: np.cos(theta / 2), 0b11: np.sin(theta / 2)}),
                        validate=False)
    r = max(r, float(np.linalg.norm(adjoint_matrix(rotor) - plane_rotation(n, (0, 1), theta))))
    # independent reflection-composition oracle on vector-pair rotors
    for _ in range(10):
        v, w = rng.unit_vector(n), rng.unit_vector(n)
        rotor = _pair_rotor(form, v, w)
        hv = np.eye(n) - 2 * np.outer(v, v)
        hw = np.eye(n) - 2 * np.outer(w, w)
        r = max(r, float(np.linalg.norm(adjoint_matrix(rotor) - hv @ hw)))
    return [_report(cfg, "spin.adjoint-oracle", {"n": n}, r, 1e-10)]


def _pair_rotor(form, v, w) -> SpinElement:
    mv = mv_mul(Multivector.vector(form, v), Multivector.vector(form, w))
    scal = mv_mul(mv, mv.reverse()).coefficient(0).real
    return SpinElement(mv.scale(1.0 / np.sqrt(scal)), validate=False)


@_register("spin.lift-roundtrip", "spin")
def _spin_lift(cfg):
    count = int(cfg.param("count", 100))
    r = 0.0
    for n in range(2, 9):
        rng = cfg.stream(f"spin.lift-roundtrip.n{n}")
        for _ in range(count):
            rot = rng.rotation(n)
            r = max(r, float(np.linalg.norm(adjoint_matrix(lift_rotation(rot)) - rot)))
    return [_report(cfg, "spin.lift-roundtrip", {"n_range": "2..8", "count": count}, r, 1e-9)]


@_register("spin.homomorphism", "spin")
def _spin_homomorphism(cfg):
    rng = cfg.stream("spin.homomorphism")
    r = 0.0
    for n in (3, 4, 6):
        for _ in range(15):
            a, b = _random_rotor(n, rng), _random_rotor(n, rng)
            r = max(r, float(np.linalg.norm(
                adjoint_matrix(a * b) - adjoint_matrix(a) @ adjoint_matrix(b))))
    return [_report(cfg, "spin.homomorphism", {"n": "3,4,6", "samples": 45}, r, 1e-9)]


@_register("spin.kernel", "spin")
def _spin_kernel(cfg):
    rng = cfg.stream("spin.kernel")
    r = 0.0
    for n in (3, 5):
        for _ in range(10):
            a = _random_rotor(n, rng)
            lifted = lift_rotation(adjoint_matrix(a))
            r = max(r, min(a.distance(lifted), a.distance(SpinElement(-lifted.mv, validate=False))))
    ident = lift_rotation(np.eye(4))
    r = max(r, ident.distance(SpinElement.identity(4)))
    return [_report(cfg, "spin.kernel", {"n": "3,5", "samples": 20}, r, 1e-9)]


@_register("spin.monodromy", "spin")
def _spin_monodromy(cfg):
    steps = int(cfg.param("steps", 1000))
    results = {}
    ok = True
    for n in (3, 5, 8):
        single = path_monodromy(plane_rotation_loop(n, (0, 1), 1.0, steps))
        doubled = path_monodromy(plane_rotation_loop(n, (0, 1), 2.0, 2 * steps))
        results[f"n{n}"] = (single, doubled)
        ok = ok and single == -1 and doubled == +1
    refined = path_monodromy(plane_rotation_loop(3, (0, 1), 1.0, 500), steps=steps)
    ok = ok and refined == -1
    return [_flag_report(cfg, "spin.monodromy",
                         {"steps": steps, **{k: str(v) for k, v in results.items()},
                          "refinement_invariant": refined == -1}, ok)]


# --------------------------------------------------------------------------
# factorize
# --------------------------------------------------------------------------

@_register("factorize.roundtrip", "factorize")
def _factorize_roundtrip(cfg):
    count = int(cfg.param("count", 200))
    r = 0.0
    for n in range(1, 9):
        rng = cfg.stream(f"factorize.roundtrip.n{n}")
        rep = build_gamma(n, +1)
        for _ in range(count):
            x = _random_class(n, rng)
            res = factorize(rep, x.rotation(), epsilon(x, rep))
            if not res.ok:
                return [_flag_report(cfg, "factorize.roundtrip",
                                     {"n": n, "error": "factorization rejected a solution"},
                                     False)]
            r = max(r, res.element.class_distance(x))
    return [_report(cfg, "factorize.roundtrip", {"n_range": "1..8", "count": count}, r, 1e-8)]


@_register("factorize.homomorphism", "factorize")
def _factorize_homomorphism(cfg):
    pairs = int(cfg.param("pairs", 50))
    r = 0.0
    ok = True
    for n in (3, 4):
        rng = cfg.stream(f"factorize.homomorphism.n{n}")
        rep = build_gamma(n, +1)
        inst = spin_instance(rep, 20, rng, pair_hints=pairs)
        out = homomorphism_check(rep, inst)
        ok = ok and out["pass"]
        r = max(r, out["worst_residual"])
    return [_report(cfg, "factorize.homomorphism", {"n": "3,4", "pairs_per_instance": pairs},
                    r, 1e-8)]


@_register("factorize.adversarial", "factorize")
def _factorize_adversarial(cfg):
    rng = cfg.stream("factorize.adversarial")
    cases = int(cfg.param("count", 50))
    rep = build_gamma(4)
    caught = 0
    for _ in range(cases):
        x = _random_class(4, rng)
        eps = epsilon(x, rep)
        d = np.eye(rep.k, dtype=complex)
        j = rng.randint(0, rep.k - 1)
        d[j, j] = 1.5 + rng.uniform()  # non-scalar distortion, well off tolerance
        try:
            factorize(rep, x.rotation(), eps @ d)
        except NotScalar:
            caught += 1
    return [_flag_report(cfg, "factorize.adversarial",
                         {"cases": cases, "caught": caught}, caught == cases)]


@_register("factorize.uniqueness", "factorize")
def _factorize_uniqueness(cfg):
    r = 0.0
    for n in (3, 5):
        rng = cfg.stream(f"factorize.uniqueness.n{n}")
        rep = build_gamma(n, +1)
        for _ in range(20):
            x = _random_class(n, rng)
            classes = unique_lift_classes(rep, x.rotation(), epsilon(x, rep))
            for cl in classes:
                r = max(r, cl.class_distance(x))
    return [_report(cfg, "factorize.uniqueness", {"n": "3,5", "samples": 40}, r, 1e-8)]


@_register("factorize.well-defined", "factorize")
def _factorize_well_defined(cfg):
    rng = cfg.stream("factorize.well-defined")
    rep = build_gamma(4)
    r = 0.0
    for _ in range(20):
        x = _random_class(4, rng)
        flipped = SpinCElement(SpinElement(-x.a.mv, validate=False), -x.c)
        r = max(r, float(np.linalg.norm(epsilon(x, rep) - epsilon(flipped, rep))))
        r = max(r, x.class_distance(flipped))
    return [_report(cfg, "factorize.well-defined", {"samples": 20}, r, 1e-12)]


@_register("factorize.unitary-variant", "factorize")
def _factorize_unitary(cfg):
    rng = cfg.stream("factorize.unitary-variant")
    rep = build_gamma(4)
    r = 0.0
    for _ in range(25):
        phase = np.exp(2j * np.pi * rng.uniform())
        x = SpinCElement(_random_rotor(4, rng), phase)
        res = factorize(rep, x.rotation(), epsilon(x, rep))
        r = max(r, abs(abs(res.element.c) - 1.0))
    return [_report(cfg, "factorize.unitary-variant", {"samples": 25}, r, 1e-9)]


@_register("factorize.equivariance", "factorize")
def _factorize_equivariance(cfg):
    rng = cfg.stream("factorize.equivariance")
    r = 0.0
    for n in (3, 4, 5):
        rep = build_gamma(n, +1)
        form = BilinearForm.negative_euclidean(n)
        for _ in range(10):
            x = _random_class(n, rng)
            for j in range(n):
                y = Multivector.basis_vector(form, j)
                r = max(r, equivariance_residual(rep, x, y))
        # identity element: exactly zero
        r = max(r, equivariance_residual(rep, SpinCElement.identity(n),
                                         Multivector.basis_vector(form, 0)))
    return [_report(cfg, "factorize.equivariance", {"n": "3,4,5", "samples": 30}, r, 1e-10)]


@_register("factorize.scalar-extract", "factorize")
def _factorize_scalar_extract(cfg):
    ok = True
    c = scalar_extract(2.5j * np.eye(6), 1e-10)
    ok = ok and abs(c - 2.5j) < 1e-12
    try:
        scalar_extract(np.diag([1.0, 1.0, 3.0]).astype(complex), 1e-8)
        ok = False
    except NotScalar:
        pass
    return [_flag_report(cfg, "factorize.scalar-extract", {}, ok)]


# --------------------------------------------------------------------------
# u-embed
# --------------------------------------------------------------------------

@_register("uembed.exterior-rep", "u-embed")
def _uembed_rep(cfg):
    from .exterior import exterior_gamma_rep
    m_max = int(cfg.param("m", 4))
    r = 0.0
    ok = True
    for m in range(1, m_max + 1):
        rep = exterior_gamma_rep(m)
        r = max(r, rep.relation_residual(), rep.unitary_skew_residual())
        if m <= 3:
            ok = ok and commutant_dim(rep) == 1
    return [_report(cfg, "uembed.exterior-rep", {"m_max": m_max, "commutant_ok": ok}, r, 1e-12)]


@_register("uembed.model-equivariance", "u-embed")
def _uembed_equivariance(cfg):
    from .exterior import exterior_equivariance_residual
    count = int(cfg.param("count", 50))
    m_max = int(cfg.param("m", 4))
    r = 0.0
    for m in range(1, m_max + 1):
        rng = cfg.stream(f"uembed.model-equivariance.m{m}")
        for _ in range(count):
            u = rng.unitary(m)
            j = rng.randint(0, 2 * m - 1)
            y = np.eye(2 * m)[:, j]
            r = max(r, exterior_equivariance_residual(m, u, y))
    return [_report(cfg, "uembed.model-equivariance", {"m_range": f"1..{m_max}", "count": count},
                    r, 1e-10)]


@_register("uembed.factorize", "u-embed")
def _uembed_factorize(cfg):
    from .exterior import realify, unitary_exterior_instance
    m_max = int(cfg.param("m", 4))
    count = int(cfg.param("count", 12))
    rot_r = 0.0
    unit_r = 0.0
    for m in range(1, m_max + 1):
        rng = cfg.stream(f"uembed.factorize.m{m}")
        us = [rng.unitary(m) for _ in range(count)]
        inst = unitary_exterior_instance(m, us)
        rep = build_gamma(2 * m)
        for u, res in zip(us, factorize_instance(rep, inst)):
            rot_r = max(rot_r, float(np.linalg.norm(adjoint_matrix(res.element.a) - realify(u))))
            unit_r = max(unit_r, abs(abs(res.element.c) - 1.0))
    rep = _report(cfg, "uembed.factorize",
                  {"m_range": f"1..{m_max}", "count": count,
                   "unitary_scalar_residual": unit_r}, max(rot_r, unit_r), 1e-9)
    return [rep]


@_register("uembed.homomorphism", "u-embed")
def _uembed_homomorphism(cfg):
    from .exterior import unitary_exterior_instance
    pairs = int(cfg.param("pairs", 50))
    rng = cfg.stream("uembed.homomorphism")
    us = [rng.unitary(2) for _ in range(15)]
    inst = unitary_exterior_instance(2, us, pair_hints=pairs, rng=rng)
    rep = build_gamma(4)
    out = homomorphism_check(rep, inst)
    return [_report(cfg, "uembed.homomorphism", {"m": 2, "pairs": pairs},
                    out["worst_residual"], 1e-8)]


@_register("uembed.m1-example", "u-embed")
def _uembed_m1(cfg):
    from .exterior import functorial_power, realify
    theta = 0.7
    u = np.array([[np.exp(1j * theta)]])
    r = float(np.linalg.norm(realify(u) - plane_rotation(2, (0, 1), theta)))
    lam = functorial_power(u)
    r = max(r, float(np.linalg.norm(lam - np.diag([1.0, np.exp(1j * theta)]))))
    return [_report(cfg, "uembed.m1-example", {"theta": theta}, r, 1e-12)]


@_register("uembed.bijection", "u-embed", "factorize")
def _bijection(cfg):
    from .exterior import unitary_exterior_instance
    rng = cfg.stream("uembed.bijection")
    r = 0.0
    ok = True
    rep3 = build_gamma(3, +1)
    inst = spin_instance(rep3, 15, rng.stream("spin"))
    out = bijection_roundtrip(rep3, inst)
    ok = ok and out["pass"]
    r = max(r, out["forward_residual"], out["backward_residual"])
    rep4 = build_gamma(4)
    us = [rng.stream("u").unitary(2) for _ in range(10)]
    inst_u = unitary_exterior_instance(2, us)
    out_u = bijection_roundtrip(rep4, inst_u)
    ok = ok and out_u["pass"]
    r = max(r, out_u["forward_residual"], out_u["backward_residual"])
    rep = _report(cfg, "uembed.bijection", {"instances": "spin-n3,unitary-m2"}, r, 1e-8)
    rep.passed = rep.passed and ok
    return [rep]


# --------------------------------------------------------------------------
# so-obstruction
# --------------------------------------------------------------------------

@_register("so-obstruction.monodromy", "so-obstruction")
def _so_obstruction(cfg):
    n = int(cfg.param("n", 3))
    steps = int(cfg.param("steps", 1000))
    out = so_obstruction_demo(n, steps)
    return [_flag_report(cfg, "so-obstruction.monodromy",
                         {"n": n, "steps": steps, "monodromy": out["monodromy"],
                          "doubled": out["doubled_monodromy"],
                          "conclusion": out["conclusion"]}, out["pass"])]


# --------------------------------------------------------------------------
# dirac
# --------------------------------------------------------------------------

@_register("dirac.examples", "dirac")
def _dirac_examples(cfg):
    gam = dr.ExactGamma(paper_gamma3())
    ok = True
    f = dr.PolySpinor(3, [{(1, 0, 0): QC(1)}, {}])
    ok = ok and dr.dirac_apply(gam, f).components == [{(0, 0, 0): QC(0, 1)}, {}]
    f2 = dr.PolySpinor(3, [{(2, 0, 0): QC(1)}, {}])
    ok = ok and dr.laplacian_apply(f2).components == [{(0, 0, 0): QC(-2)}, {}]
    harmonic = dr.PolySpinor(3, [{(2, 0, 0): QC(1), (0, 2, 0): QC(-1)}, {}])
    ok = ok and dr.laplacian_apply(harmonic).is_zero()
    const = dr.PolySpinor(3, [{(0, 0, 0): QC(3, 1)}, {(0, 0, 0): QC(2)}])
    ok = ok and dr.dirac_apply(gam, const).is_zero()
    return [_flag_report(cfg, "dirac.examples", {}, ok)]


@_register("dirac.linearity", "dirac")
def _dirac_linearity(cfg):
    rng = cfg.stream("dirac.linearity")
    rep = build_gamma(3, +1)
    gam = dr.ExactGamma(rep)
    ok = True
    for _ in range(10):
        f = dr.random_poly_spinor(3, 2, 4, rng)
        g = dr.random_poly_spinor(3, 2, 4, rng)
        fg = dr.PolySpinor(3, [dict(a) for a in f.components])
        for comp, other in zip(fg.components, g.components):
            dr.poly_add_scaled(comp, other, QC(1))
        lhs = dr.dirac_apply(gam, fg)
        rhs = dr.dirac_apply(gam, f)
        for comp, other in zip(rhs.components, dr.dirac_apply(gam, g).components):
            dr.poly_add_scaled(comp, other, QC(1))
        ok = ok and lhs == dr.PolySpinor(3, rhs.components)
    return [_flag_report(cfg, "dirac.linearity", {"samples": 10}, ok)]


@_register("dirac.square-exact", "dirac")
def _dirac_square(cfg):
    count = int(cfg.param("count", 100))
    degree = int(cfg.param("degree", 5))
    checked = 0
    for n in range(2, 9):
        rng = cfg.stream(f"dirac.square-exact.n{n}")
        rep = build_gamma(n, +1)
        gam = dr.ExactGamma(rep)
        for _ in range(count):
            f = dr.random_poly_spinor(n, rep.k, degree, rng)
            if not dr.verify_square(gam, f):
                return [_flag_report(cfg, "dirac.square-exact",
                                     {"n": n, "error": "identity failed"}, False)]
            checked += 1
        # odd n: identity is branch independent
        if n % 2:
            gam_minus = dr.ExactGamma(build_gamma(n, -1))
            f = dr.random_poly_spinor(n, rep.k, degree, rng)
            if not dr.verify_square(gam_minus, f):
                return [_flag_report(cfg, "dirac.square-exact",
                                     {"n": n, "error": "branch -1 failed"}, False)]
    return [_flag_report(cfg, "dirac.square-exact",
                         {"n_range": "2..8", "count": count, "degree": degree,
                          "checked": checked}, True)]


@_register("dirac.square-paper", "dirac")
def _dirac_square_paper(cfg):
    count = int(cfg.param("count", 100))
    rng = cfg.stream("dirac.square-paper")
    gam = dr.ExactGamma(paper_gamma3())
    for _ in range(count):
        if not dr.verify_square(gam, dr.random_poly_spinor(3, 2, 5, rng)):
            return [_flag_report(cfg, "dirac.square-paper", {"count": count}, False)]
    return [_flag_report(cfg, "dirac.square-paper", {"count": count}, True)]


@_register("dirac.corruption", "dirac")
def _dirac_corruption(cfg):
    from fractions import Fraction
    gam = dr.ExactGamma(build_gamma(3, +1))
    probe = dr.PolySpinor(3, [{(2, 0, 0): QC(1), (0, 1, 1): QC(1)},
                              {(0, 2, 0): QC(1), (1, 1, 0): QC(1)}])
    detected = 0
    cases = 0
    for j in (0, 1, 2):
        for (a, b) in ((0, 0), (0, 1), (1, 0)):
            bad = gam.perturbed(j, a, b, QC(Fraction(1, 10 ** 6)))
            cases += 1
            if dr.square_defect(bad, probe) is not None:
                detected += 1
    return [_flag_report(cfg, "dirac.corruption",
                         {"cases": cases, "detected": detected,
                          "magnitude": "1e-6"}, detected == cases)]


@_register("dirac.plane-waves", "dirac")
def _dirac_plane_waves(cfg):
    count = int(cfg.param("count", 100))
    r = 0.0
    for n in range(2, 9):
        rng = cfg.stream(f"dirac.plane-waves.n{n}")
        rep = build_gamma(n, +1)
        r = max(r, dr.plane_wave_check(rep, dr.PlaneWaveSpinor(
            np.zeros(n), np.ones(rep.k, dtype=complex))))
        for _ in range(count // 7 + 1):
            xi = rng.normals(n) * 2.0
            v = rng.complex_normals(rep.k)
            r = max(r, dr.plane_wave_check(rep, dr.PlaneWaveSpinor(xi, v)))
    return [_report(cfg, "dirac.plane-waves", {"n_range": "2..8", "count": count}, r, 1e-11)]


@_register("dirac.anticommute-witness", "dirac")
def _dirac_anticommute(cfg):
    rng = cfg.stream("dirac.anticommute-witness")
    r = 0.0
    for n in (3, 5, 8):
        rep = build_gamma(n, +1)
        for _ in range(10):
            xi = rng.unit_vector(n)
            eta = rng.unit_vector(n)
            eta = eta - (eta @ xi) * xi
            eta /= np.linalg.norm(eta)
            mx = 1j * sum(x * g for x, g in zip(xi, rep.gammas))
            me = 1j * sum(x * g for x, g in zip(eta, rep.gammas))
            r = max(r, float(np.linalg.norm(mx @ me + me @ mx)))
    return [_report(cfg, "dirac.anticommute-witness", {"n": "3,5,8", "samples": 30}, r, 1e-12)]


# --------------------------------------------------------------------------
# weyl
# --------------------------------------------------------------------------

@_register("weyl.ladder-oracle", "weyl")
def _weyl_ladder(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    r = 0.0
    for n in sorted({8, 16, cutoff}):
        r = max(r, float(np.max(np.abs(wl.position_matrix(n) - wl.quadrature_position_matrix(n)))))
        r = max(r, float(np.max(np.abs(wl.derivative_matrix(n) - wl.quadrature_derivative_matrix(n)))))
    qx = wl.quadrature_position_matrix(8)
    r = max(r, abs(qx[0, 1] - 1 / np.sqrt(2)))  # <h0| x |h1>
    qd = wl.quadrature_derivative_matrix(8)
    r = max(r, abs(qd[0, 1] - 1 / np.sqrt(2)))  # d h_1 has +sqrt(1/2) h_0
    r = max(r, abs(qd[2, 1] + 1.0))             # and -sqrt(2/2) h_2
    return [_report(cfg, "weyl.ladder-oracle", {"cutoffs": f"8,16,{cutoff}"}, r, 1e-12)]


@_register("weyl.ccr-interior", "weyl")
def _weyl_ccr(cfg):
    residuals = {}
    for n in (16, 24, 32):
        model = wl.build_hermite_model(1, n)
        residuals[n] = wl.ccr_residual(model, [1.0, 0.0], [0.0, 1.0])
    r = max(residuals.values())
    # truncation error must not grow; 1e-13 slack absorbs float noise on
    # residuals that are already exactly zero up to rounding
    monotone = residuals[24] <= residuals[16] + 1e-13 and residuals[32] <= residuals[24] + 1e-13
    rep = _report(cfg, "weyl.ccr-interior",
                  {"cutoffs": "16,24,32", "monotone_within_noise": monotone,
                   **{f"r{k}": float(v) for k, v in residuals.items()}}, r, 1e-10)
    rep.passed = rep.passed and monotone
    return [rep]


@_register("weyl.ccr-cross-mode", "weyl")
def _weyl_cross(cfg):
    model = wl.build_hermite_model(2, 12)
    r_cross = wl.ccr_residual(model, [1, 0, 0, 0], [0, 1, 0, 0])
    r_self = wl.ccr_residual(model, [1, 0, 0, 0], [1, 0, 0, 0])
    r_pair = wl.ccr_residual(model, [1, 0, 0, 0], [0, 0, 1, 0])
    ok = r_cross == 0.0 and r_self == 0.0 and r_pair < 1e-10
    return [_flag_report(cfg, "weyl.ccr-cross-mode",
                         {"modes": 2, "cutoff": 12, "cross": r_cross, "self": r_self,
                          "conjugate_pair": r_pair}, ok)]


@_register("weyl.operator-structure", "weyl")
def _weyl_structure(cfg):
    cutoff = int(cfg.param("cutoff", 16))
    model = wl.build_hermite_model(1, cutoff)
    x = model.xops[0]
    d = model.dops[0]
    r = float(np.max(np.abs(x.real)))                       # X purely imaginary
    sym = (x / 1j)
    r = max(r, float(np.max(np.abs(sym - sym.T))))          # i*(real symmetric)
    r = max(r, float(np.max(np.abs(d.imag))))
    r = max(r, float(np.max(np.abs(d.real + d.real.T))))    # antisymmetric
    from .errors import CutoffTooSmall
    raised = False
    try:
        wl.build_hermite_model(1, 4)
    except CutoffTooSmall:
        raised = True
    rep = _report(cfg, "weyl.operator-structure", {"cutoff": cutoff, "cutoff_guard": raised},
                  r, 1e-14)
    rep.passed = rep.passed and raised
    return [rep]


# --------------------------------------------------------------------------
# mp
# --------------------------------------------------------------------------

def _mp_generators(model, which=("osc", "squeeze", "shear")):
    gens = {
        "osc": wl.QuadraticHamiltonian.oscillator(model.modes, 0),
        "squeeze": wl.QuadraticHamiltonian.squeeze(model.modes, 0),
        "shear": wl.QuadraticHamiltonian.shear(model.modes, 0),
    }
    return {k: gens[k] for k in which}


@_register("mp.flow-oracle", "mp")
def _mp_flow(cfg):
    rng = cfg.stream("mp.flow-oracle")
    j = wl.symplectic_form(1)
    t = 0.3
    s = wl.sp_one_param(wl.QuadraticHamiltonian.oscillator(1, 0), t)
    expect = np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    r = float(np.linalg.norm(s - expect))
    r = max(r, float(np.linalg.norm(wl.sp_one_param(wl.QuadraticHamiltonian.oscillator(1, 0), 0.0)
                                    - np.eye(2))))
    for _ in range(15):
        a, b, c = rng.normal(), rng.normal(), rng.normal()
        h = wl.QuadraticHamiltonian(np.array([[a, b], [b, c]]))
        t = 2.0 * rng.uniform() - 1.0
        s = wl.sp_one_param(h, t)
        r = max(r, float(np.linalg.norm(s.T @ j @ s - j)))
    return [_report(cfg, "mp.flow-oracle", {"samples": 15}, r, 1e-10)]


@_register("mp.equivariance", "mp")
def _mp_equivariance(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    modes = int(cfg.param("modes", 1))
    tmax = float(cfg.param("tmax", 1.0))
    which = cfg.param("generators", ("osc", "squeeze", "shear"))
    model = wl.build_hermite_model(modes, cutoff)
    rng = cfg.stream("mp.equivariance")
    r = 0.0
    per = {}
    for name, h in _mp_generators(model, which).items():
        worst = 0.0
        for t in (-tmax, -0.5 * tmax, 0.25 * tmax, tmax):
            g = wl.mp_one_param(model, h, t)
            for _ in range(3):
                y = rng.normals(2 * modes)
                y /= np.linalg.norm(y)
                worst = max(worst, wl.mp_equivariance_residual(model, g, y))
        per[name] = worst
        r = max(r, worst)
    # scalar tags cancel: residual unchanged for z = 3
    h = wl.QuadraticHamiltonian.oscillator(modes, 0)
    g = wl.mp_one_param(model, h, 0.5)
    g_scaled = wl.MpCElement(s=g.s, u=g.u, z=3.0, path=g.path, work=g.work)
    y = np.eye(2 * modes)[:, 0]
    r = max(r, abs(wl.mp_equivariance_residual(model, g, y)
                   - wl.mp_equivariance_residual(model, g_scaled, y)))
    return [_report(cfg, "mp.equivariance",
                    {"cutoff": cutoff, "tmax": tmax,
                     **{k: float(v) for k, v in per.items()}}, r, 1e-6)]


@_register("mp.multimode-oscillator", "mp")
def _mp_multimode(cfg):
    model = wl.build_hermite_model(2, 10)
    h = wl.QuadraticHamiltonian.oscillator(2, 0) + wl.QuadraticHamiltonian.oscillator(2, 1)
    g = wl.mp_one_param(model, h, 0.6)
    r = 0.0
    for j in range(4):
        y = np.eye(4)[:, j]
        r = max(r, wl.mp_equivariance_residual(model, g, y))
    return [_report(cfg, "mp.multimode-oscillator", {"modes": 2, "cutoff": 10}, r, 1e-6)]


@_register("mp.osc-diagonal", "mp")
def _mp_osc_diagonal(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    model = wl.build_hermite_model(1, cutoff)
    t = 0.7
    g = wl.mp_one_param(model, wl.QuadraticHamiltonian.oscillator(1, 0), t)
    levels = np.arange(cutoff - 1)  # the top level diagonal is truncation-polluted
    expect = np.exp(-1j * t * (levels + 0.5))
    r = float(np.max(np.abs(np.diag(g.u)[:cutoff - 1] - expect)))
    off = g.u - np.diag(np.diag(g.u))
    r = max(r, float(np.max(np.abs(off))))
    return [_report(cfg, "mp.osc-diagonal", {"cutoff": cutoff, "t": t}, r, 1e-12)]


@_register("mp.factorize-roundtrip", "mp")
def _mp_factorize(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    model = wl.build_hermite_model(1, cutoff)
    rng = cfg.stream("mp.factorize-roundtrip")
    r = 0.0
    for name, h, t in (("osc", wl.QuadraticHamiltonian.oscillator(1, 0), 0.9),
                       ("squeeze", wl.QuadraticHamiltonian.squeeze(1, 0), 0.25),
                       ("shear", wl.QuadraticHamiltonian.shear(1, 0), 0.25)):
        g = wl.mp_one_param(model, h, t)
        z = complex(rng.normal(), rng.normal())
        if abs(z) < 0.1:
            z = 1.0
        res = wl.mp_factorize(model, g.s, z * g.u)
        canon_u, canon_z = wl.MpCElement(s=g.s, u=g.u, z=z).class_canonical()
        r = max(r, abs(res.c - canon_z),
                float(np.max(np.abs(res.u_canonical - canon_u))))
    # scalar multiplicativity along the oscillator flow
    h = wl.QuadraticHamiltonian.oscillator(1, 0)
    za, zb = 1.2 + 0.1j, 0.8 - 0.5j
    ga, gb = wl.mp_one_param(model, h, 0.4), wl.mp_one_param(model, h, 0.35)
    gab = wl.mp_one_param(model, h, 0.75)
    ca = wl.mp_factorize(model, ga.s, za * ga.u).c
    cb = wl.mp_factorize(model, gb.s, zb * gb.u).c
    cab = wl.mp_factorize(model, gab.s, (za * zb) * gab.u).c
    r = max(r, abs(ca * cb - cab))
    return [_report(cfg, "mp.factorize-roundtrip", {"cutoff": cutoff}, r, 1e-8)]


@_register("mp.factorize-adversarial", "mp")
def _mp_adversarial(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    model = wl.build_hermite_model(1, cutoff)
    g = wl.mp_one_param(model, wl.QuadraticHamiltonian.oscillator(1, 0), 0.4)
    pert = np.eye(cutoff, dtype=complex)
    pert[5, 5] = 1.5
    caught = False
    try:
        wl.mp_factorize(model, g.s, (1.3 * g.u) @ pert)
    except NotScalar:
        caught = True
    # class well-definedness: (U, z) and (-U, -z) factor identically
    res1 = wl.mp_factorize(model, g.s, 1.3 * g.u)
    res2 = wl.mp_factorize(model, g.s, (-1.3) * (-g.u))
    same = abs(res1.c - res2.c) < 1e-12 and np.allclose(res1.u_canonical, res2.u_canonical)
    unreachable = False
    try:
        # det 1 but outside every registered one-parameter family
        wl.mp_factorize(model, np.array([[2.0, 1.0], [1.0, 1.0]]),
                        np.eye(cutoff, dtype=complex))
    except wl.PathUnavailable:
        unreachable = True
    return [_flag_report(cfg, "mp.factorize-adversarial",
                         {"cutoff": cutoff, "caught": caught, "class_well_defined": same,
                          "unreachable_flagged": unreachable},
                         caught and same and unreachable)]


@_register("mp.monodromy", "mp")
def _mp_monodromy_check(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    model = wl.build_hermite_model(1, cutoff)
    out = wl.mp_monodromy(model)
    return [_flag_report(cfg, "mp.monodromy",
                         {"cutoff": cutoff, "monodromy": out["monodromy"],
                          "phase_defect": out["phase_defect"],
                          "doubled_defect": out["doubled_defect"]}, out["pass"])]


@_register("mp.unitarity", "mp")
def _mp_unitarity(cfg):
    cutoff = int(cfg.param("cutoff", 32))
    model = wl.build_hermite_model(1, cutoff)
    mask = model.interior_mask()
    r = 0.0
    g = wl.mp_one_param(model, wl.QuadraticHamiltonian.oscillator(1, 0), 0.8)
    gram = g.u.conj().T @ g.u - np.eye(cutoff)
    r = max(r, float(np.linalg.norm(gram[np.ix_(mask, mask)])))
    sh = wl.mp_one_param(model, wl.QuadraticHamiltonian.shear(1, 0), 1.0)
    uw = sh.work["u"] if sh.work else sh.u
    nw = uw.shape[0]
    gram = uw.conj().T @ uw - np.eye(nw)
    r = max(r, float(np.linalg.norm(gram[:, :model.interior_bound + 1])))
    # unitary eps' extracts a unit-modulus scalar
    phase = np.exp(0.4j)
    res = wl.mp_factorize(model, g.s, phase * g.u)
    r = max(r, abs(abs(res.c) - 1.0))
    return [_report(cfg, "mp.unitarity", {"cutoff": cutoff}, r, 1e-8)]
