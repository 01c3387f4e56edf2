"""Universal factorization through rotor-plus-scalar classes.

The group at the center of the library: pairs (A, c) of a rotor and a
nonzero complex scalar, modulo the identification (A, c) ~ (-A, -c). Such a
class acts on the spinor space by c * rho(A), covers a rotation through the
adjoint of A, and is the universal solution of the intertwining condition

    rho(p(g) y) = eps(g) rho(y) eps(g)^{-1}.

`factorize` is the constructive content: given a rotation p'(g) and an
invertible matrix eps'(g) satisfying the condition, lift the rotation to a
rotor A, extract the scalar c with rho(A^{-1}) eps'(g) = c I, and return the
canonical class [A, c]. Sampled "solution instances" (finite families with
closure hints) stand in for a group G'; the checks below certify
factorization round trips, multiplicativity, uniqueness, the two bijection
directions, and the rotation-group obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .clifford import BilinearForm, Multivector, mv_mul
from .errors import NotScalar
from .gamma import GammaRep, rep_apply
from .rng import SplitMix64
from .spin import SpinElement, adjoint_matrix, lift_rotation, path_monodromy, plane_rotation_loop

CLASS_TOL = 1e-8  # cross-module round-trip tolerance


class SpinCElement:
    """Class [A, c] with the canonical-sign representative stored."""

    __slots__ = ("a", "c")

    def __init__(self, a: SpinElement, c: complex):
        c = complex(c)
        if c == 0:
            raise ValueError("scalar part must be nonzero")
        canon, sign = a.canonical()
        self.a = canon
        self.c = sign * c

    @property
    def n(self) -> int:
        return self.a.n

    @classmethod
    def identity(cls, n: int) -> "SpinCElement":
        return cls(SpinElement.identity(n), 1.0)

    def __mul__(self, other: "SpinCElement") -> "SpinCElement":
        return SpinCElement(self.a * other.a, self.c * other.c)

    def inverse(self) -> "SpinCElement":
        return SpinCElement(self.a.inverse(), 1.0 / self.c)

    def class_distance(self, other: "SpinCElement") -> float:
        """Distance between canonical representatives (0 iff same class)."""
        return max(self.a.distance(other.a), abs(self.c - other.c))

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return abs(abs(self.c) - 1.0) <= tol

    def rotation(self) -> np.ndarray:
        return adjoint_matrix(self.a)

    def __repr__(self):
        return f"SpinCElement(c={self.c:.6g}, a={self.a.mv!r})"


def epsilon(x: SpinCElement, rep: GammaRep) -> np.ndarray:
    """Action of the class on the spinor space: c * rho(A)."""
    return x.c * rep_apply(rep, x.a.mv)


def rotate_multivector(r: np.ndarray, y: Multivector) -> Multivector:
    """Rotation action on the algebra: rotate grade-1 factors of every blade."""
    form = y.form
    out = Multivector(form, {})
    for mask, coeff in zip(y.masks, y.coeffs):
        term = Multivector.scalar(form, complex(coeff))
        mask = int(mask)
        j = 0
        while mask:
            if mask & 1:
                term = mv_mul(term, Multivector.vector(form, r[:, j]))
            mask >>= 1
            j += 1
        out = out + term
    return out


def equivariance_residual(rep: GammaRep, x: SpinCElement, y: Multivector) -> float:
    """Frobenius defect of rho(p(x) y) = eps(x) rho(y) eps(x)^{-1}."""
    r = adjoint_matrix(x.a)
    lhs = rep_apply(rep, rotate_multivector(r, y))
    e = epsilon(x, rep)
    rhs = e @ rep_apply(rep, y) @ np.linalg.inv(e)
    return float(np.linalg.norm(lhs - rhs))


def scalar_extract(m: np.ndarray, tol: float = CLASS_TOL) -> complex:
    """Scalar c with m = c I, certified by the off-scalar residual.

    Raises NotScalar when the residual exceeds tol * max(1, |m|) or the
    scalar is below tol (not invertible).
    """
    m = np.asarray(m, dtype=np.complex128)
    k = m.shape[0]
    c = complex(np.trace(m) / k)
    residual = float(np.linalg.norm(m - c * np.eye(k)))
    if residual > tol * max(1.0, float(np.linalg.norm(m))):
        raise NotScalar(f"off-scalar residual {residual:.3e}", residual=residual)
    if abs(c) <= tol:
        raise NotScalar("extracted scalar is numerically zero", residual=residual)
    return c


@dataclass
class FactorizationResult:
    """Canonical class recovered from one (p', eps') sample."""

    element: SpinCElement
    scalar_residual: float
    ok: bool
    eps_residual: float = 0.0
    rotation_residual: float = 0.0


def factorize(rep: GammaRep, p_prime: np.ndarray, eps_prime: np.ndarray,
              tol: float = CLASS_TOL) -> FactorizationResult:
    """Factor one sample through the rotor-scalar group.

    Lift the rotation, extract the scalar, and certify both compatibility
    conditions (p' = p o f and eps' = eps o f) on the result.
    """
    a = lift_rotation(p_prime)
    rho_a_inv = rep_apply(rep, a.inverse().mv)
    m = rho_a_inv @ np.asarray(eps_prime, dtype=np.complex128)
    c = scalar_extract(m, tol)
    elem = SpinCElement(a, c)
    scalar_residual = float(np.linalg.norm(m - c * np.eye(rep.k))
                            / max(1.0, float(np.linalg.norm(m))))
    eps_residual = float(np.linalg.norm(epsilon(elem, rep) - eps_prime))
    rot_residual = float(np.linalg.norm(adjoint_matrix(elem.a) - p_prime))
    ok = scalar_residual < tol and eps_residual < tol * max(1.0, abs(c)) * rep.k \
        and rot_residual < tol
    return FactorizationResult(elem, scalar_residual, ok, eps_residual, rot_residual)


def unique_lift_classes(rep: GammaRep, p_prime, eps_prime,
                        tol: float = CLASS_TOL) -> list[SpinCElement]:
    """All classes [A', c'] over the two lifts +-A matching the sample.

    Uniqueness check: both signs of the rotor produce the same class, so the
    returned list always collapses to a single canonical class for genuine
    solutions.
    """
    base = lift_rotation(p_prime)
    classes = []
    for a in (base, SpinElement(-base.mv, validate=False)):
        m = rep_apply(rep, a.inverse().mv) @ np.asarray(eps_prime, dtype=np.complex128)
        c = scalar_extract(m, tol)
        classes.append(SpinCElement(a, c))
    return classes


@dataclass
class SolutionInstance:
    """Finite sampled stand-in for (G', p', eps').

    samples[i] = (tag, p_i in SO(n), eps_i invertible); closure_hints lists
    index triples (i, j, k) with sample k the product of samples i and j.
    """

    label: str
    samples: list[tuple[str, np.ndarray, np.ndarray]]
    closure_hints: list[tuple[int, int, int]] = field(default_factory=list)

    def validate(self, tol: float = 1e-8):
        from .spin import check_rotation
        for tag, p, e in self.samples:
            check_rotation(p, tol)
            s = np.linalg.svd(e, compute_uv=False)
            if s[-1] <= 1e-12 * s[0]:
                raise ValueError(f"sample {tag}: eps' is numerically singular")
        for i, j, k in self.closure_hints:
            if not (0 <= i < len(self.samples) and 0 <= j < len(self.samples)
                    and 0 <= k < len(self.samples)):
                raise ValueError("closure hint indices out of range")


def spin_instance(rep: GammaRep, count: int, rng: SplitMix64,
                  pair_hints: int = 0) -> SolutionInstance:
    """Instance sampling the rotor group itself: p' = Ad, eps' = rho.

    Elements are products of two to four random unit vectors; hinted product
    samples are appended after the base samples.
    """
    n = rep.n
    form = BilinearForm.negative_euclidean(n)
    elements = []
    for _ in range(count):
        factors = 2 * rng.randint(1, 2)
        mv = Multivector.scalar(form, 1.0)
        for _ in range(factors):
            mv = mv_mul(mv, Multivector.vector(form, rng.unit_vector(n)))
        scal = mv_mul(mv, mv.reverse()).coefficient(0).real
        elements.append(SpinElement(mv.scale(1.0 / np.sqrt(scal)), validate=False))
    samples = [(f"s{i}", adjoint_matrix(a), rep_apply(rep, a.mv))
               for i, a in enumerate(elements)]
    hints = []
    for h in range(pair_hints):
        i = rng.randint(0, count - 1)
        j = rng.randint(0, count - 1)
        prod = elements[i] * elements[j]
        samples.append((f"p{h}", adjoint_matrix(prod), rep_apply(rep, prod.mv)))
        hints.append((i, j, len(samples) - 1))
    inst = SolutionInstance("spin-adjoint", samples, hints)
    inst.validate()
    return inst


def factorize_instance(rep: GammaRep, inst: SolutionInstance,
                       tol: float = CLASS_TOL) -> list[FactorizationResult]:
    return [factorize(rep, p, e, tol) for _, p, e in inst.samples]


def homomorphism_check(rep: GammaRep, inst: SolutionInstance,
                       tol: float = CLASS_TOL) -> dict:
    """Certify f(g_i g_j) = f(g_i) f(g_j) on every hinted product."""
    results = factorize_instance(rep, inst, tol)
    worst = 0.0
    detail = []
    for i, j, k in inst.closure_hints:
        prod = results[i].element * results[j].element
        d = prod.class_distance(results[k].element)
        worst = max(worst, d)
        detail.append({"pair": [i, j, k], "residual": d})
    return {
        "label": inst.label,
        "pairs": len(inst.closure_hints),
        "worst_residual": worst,
        "pass": worst < tol and all(r.ok for r in results),
        "detail": detail,
    }


def bijection_roundtrip(rep: GammaRep, inst: SolutionInstance,
                        tol: float = CLASS_TOL) -> dict:
    """Both round trips of the representation <-> homomorphism bijection.

    Forward: factoring eps' gives classes whose action reproduces eps'.
    Backward: rebuilding eps from those classes and factoring again returns
    the same canonical classes.
    """
    results = factorize_instance(rep, inst, tol)
    fwd = 0.0
    back = 0.0
    for (tag, p, e), res in zip(inst.samples, results):
        fwd = max(fwd, float(np.linalg.norm(epsilon(res.element, rep) - e)))
        rebuilt = epsilon(res.element, rep)
        refactored = factorize(rep, p, rebuilt, tol)
        back = max(back, refactored.element.class_distance(res.element))
    return {
        "label": inst.label,
        "samples": len(inst.samples),
        "forward_residual": fwd,
        "backward_residual": back,
        "pass": fwd < tol and back < tol,
    }


def so_obstruction_demo(n: int, steps: int = 1000) -> dict:
    """Monodromy witness that the identity map on rotations admits no section.

    The generator loop of the rotation group's fundamental group lifts to a
    path ending at the opposite rotor; a continuous factorization over the
    identity would contradict that sign.
    """
    if n < 3:
        raise ValueError("obstruction demo requires n >= 3")
    if steps < 100:
        raise ValueError("steps must be >= 100")
    m = path_monodromy(plane_rotation_loop(n, (0, 1), 1.0, steps))
    doubled = path_monodromy(plane_rotation_loop(n, (0, 1), 2.0, 2 * steps))
    return {
        "n": n,
        "steps": steps,
        "monodromy": m,
        "doubled_monodromy": doubled,
        "conclusion": "no section" if m == -1 else "inconclusive",
        "pass": m == -1 and doubled == +1,
    }
