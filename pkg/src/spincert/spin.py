"""Rotors: even unit multivectors, their adjoint rotations, and lifting.

A rotor A is an even multivector over the d_j = -1 form with A rev(A) = 1
whose conjugation A e_j A^{-1} preserves the grade-1 subspace. Conjugation
by A is a rotation; conversely every rotation lifts to exactly two rotors
+-A, collapsed here by a deterministic sign rule so lifting is a function.

Lifting is constructive: factor the rotation into Householder reflections
(greedy column reduction), multiply the reflection vectors in the Clifford
algebra, and normalize. Path lifting along a loop of rotations tracks the
nearest-sign continuation and reports whether the lift closes (+1) or ends
at the opposite rotor (-1).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
import scipy.linalg

from .clifford import BilinearForm, Multivector, mv_mul
from .errors import NotSpecial, NotSpin, StepTooCoarse

ORTHO_TOL = 1e-8       # acceptance tolerance for rotation-matrix inputs
CANON_EPS = 1e-8       # smallest coefficient modulus considered for the sign rule


def check_rotation(r: np.ndarray, tol: float = ORTHO_TOL) -> np.ndarray:
    """Validate an SO(n) matrix (orthogonality and det +1)."""
    r = np.asarray(r, dtype=np.float64)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError("rotation must be a square matrix")
    n = r.shape[0]
    if np.linalg.norm(r.T @ r - np.eye(n)) > tol:
        raise ValueError("matrix is not orthogonal within tolerance")
    if np.linalg.det(r) < 0:
        raise NotSpecial("matrix has determinant -1; no rotor lift exists")
    return r


def canonical_sign(mv: Multivector) -> tuple[Multivector, int]:
    """Deterministic representative of {+-mv}.

    Scan blades in ascending mask order for the first coefficient with
    modulus > CANON_EPS; keep the sign that puts its argument in
    (-pi/2, pi/2]; near-boundary (pure-imaginary) coefficients defer to the
    next blade, with positive imaginary part accepted as the boundary case.
    """
    for m, c in zip(mv.masks, mv.coeffs):
        mag = abs(c)
        if mag <= CANON_EPS:
            continue
        re, im = c.real / mag, c.imag / mag
        if re > 1e-12:
            return mv, +1
        if re < -1e-12:
            return -mv, -1
        if im > 1e-12:
            return mv, +1
        if im < -1e-12:
            return -mv, -1
    return mv, +1


class SpinElement:
    """Even unit multivector acting on R^n by conjugation."""

    __slots__ = ("mv",)

    def __init__(self, mv: Multivector, validate: bool = True):
        if validate:
            if any(g % 2 for g in mv.grades()):
                raise NotSpin("rotor must be an even multivector")
            unit = mv_mul(mv, mv.reverse())
            defect = unit - Multivector.scalar(mv.form, 1.0)
            if defect.norm() > 1e-10:
                raise NotSpin(f"not unit-normalized: |A rev(A) - 1| = {defect.norm():.3e}")
        self.mv = mv

    @property
    def n(self) -> int:
        return self.mv.form.dim

    @classmethod
    def identity(cls, n: int) -> "SpinElement":
        form = BilinearForm.negative_euclidean(n)
        return cls(Multivector.scalar(form, 1.0), validate=False)

    def inverse(self) -> "SpinElement":
        return SpinElement(self.mv.reverse(), validate=False)

    def __mul__(self, other: "SpinElement") -> "SpinElement":
        return SpinElement(mv_mul(self.mv, other.mv), validate=False)

    def __neg__(self) -> "SpinElement":
        return SpinElement(-self.mv, validate=False)

    def canonical(self) -> tuple["SpinElement", int]:
        mv, sign = canonical_sign(self.mv)
        return SpinElement(mv, validate=False), sign

    def distance(self, other: "SpinElement") -> float:
        return self.mv.distance(other.mv)

    def __repr__(self):
        return f"SpinElement({self.mv!r})"


def adjoint_matrix(a: SpinElement, tol: float = 1e-8) -> np.ndarray:
    """Rotation matrix of y -> A y A^{-1}; column j is the image of e_j."""
    mv = a.mv
    form = mv.form
    rev = mv.reverse()
    n = form.dim
    r = np.zeros((n, n))
    for j in range(n):
        img = mv_mul(mv_mul(mv, Multivector.basis_vector(form, j)), rev)
        vec = img.vector_part()
        rest = img.distance(Multivector.vector(form, vec))
        if rest > tol or np.max(np.abs(vec.imag)) > tol:
            raise NotSpin(f"conjugation does not preserve grade 1 (residual {rest:.3e})")
        r[:, j] = vec.real
    return r


def lift_rotation(r: np.ndarray) -> SpinElement:
    """Constructive lift SO(n) -> rotors, canonical-sign representative.

    Greedy Householder factorization r = H_{v1} ... H_{vm}: step j reflects
    the current j-th column onto e_j. det +1 forces m even, and the Clifford
    product v1 ... vm conjugates exactly as r.
    """
    r = check_rotation(r)
    n = r.shape[0]
    form = BilinearForm.negative_euclidean(n)
    m = r.copy()
    vs = []
    for j in range(n):
        col = m[:, j].copy()
        col[j] -= 1.0
        norm = np.linalg.norm(col)
        if norm < 1e-9:
            continue
        v = col / norm
        m = m - 2.0 * np.outer(v, v @ m)
        vs.append(v)
    if len(vs) % 2 != 0:
        # unreachable for det +1 inputs within tolerance
        raise NotSpecial("odd reflection count; matrix is not special orthogonal")
    out = Multivector.scalar(form, 1.0)
    for v in vs:
        out = mv_mul(out, Multivector.vector(form, v))
    # products of unit vectors satisfy A rev(A) = 1 up to rounding; renormalize
    scal = mv_mul(out, out.reverse()).coefficient(0).real
    out = out.scale(1.0 / np.sqrt(scal))
    return SpinElement(canonical_sign(out)[0], validate=False)


def _refine_segment(r_a: np.ndarray, r_b: np.ndarray, parts: int) -> list[np.ndarray]:
    """Geodesic subdivision of one step (relative rotation is near identity)."""
    gen = scipy.linalg.logm(r_a.T @ r_b).real
    return [r_a @ scipy.linalg.expm((i / parts) * gen) for i in range(1, parts + 1)]


def path_monodromy(loop: Sequence[np.ndarray], steps: int | None = None) -> int:
    """Sign acquired by the nearest-sign rotor lift around a closed loop.

    `loop` is a closed discrete path in SO(n) (first and last entries equal);
    consecutive entries must be within 0.5 in operator norm. If `steps`
    exceeds the given resolution the path is refined geodesically first.
    """
    loop = [check_rotation(r) for r in loop]
    if len(loop) < 2:
        return +1
    if np.linalg.norm(loop[0] - loop[-1]) > 1e-8:
        raise ValueError("loop is not closed")
    if steps is not None and steps > len(loop) - 1:
        parts = -(-steps // (len(loop) - 1))  # ceil division
        refined = [loop[0]]
        for a, b in zip(loop[:-1], loop[1:]):
            refined.extend(_refine_segment(a, b, parts))
        loop = refined
    for a, b in zip(loop[:-1], loop[1:]):
        if np.linalg.norm(b - a, 2) > 0.5:
            raise StepTooCoarse("consecutive loop entries farther than 0.5 apart")

    aligned = lift_rotation(loop[0])
    start = aligned
    for r in loop[1:]:
        lifted = lift_rotation(r)
        d_plus = aligned.distance(lifted)
        d_minus = aligned.distance(-lifted)
        if min(d_plus, d_minus) > 0.9:
            raise StepTooCoarse("lift continuation is not sign-separable")
        aligned = lifted if d_plus <= d_minus else -lifted
    d_close = aligned.distance(start)
    d_flip = aligned.distance(SpinElement((-start.mv), validate=False))
    if min(d_close, d_flip) > 1e-6:
        raise StepTooCoarse("lifted endpoint is not in the fiber over the start")
    return +1 if d_close < d_flip else -1


def plane_rotation(n: int, plane: tuple[int, int], angle: float) -> np.ndarray:
    """Rotation by `angle` in the coordinate plane (i, j), identity elsewhere."""
    i, j = plane
    r = np.eye(n)
    c, s = np.cos(angle), np.sin(angle)
    r[i, i] = c
    r[j, j] = c
    r[i, j] = -s
    r[j, i] = s
    return r


def plane_rotation_loop(n: int, plane: tuple[int, int] = (0, 1), turns: float = 1.0,
                        steps: int = 1000) -> list[np.ndarray]:
    """Closed loop of `turns` full rotations in a coordinate plane."""
    loop = [plane_rotation(n, plane, 2.0 * np.pi * turns * t / steps)
            for t in range(steps)]
    loop.append(loop[0].copy())
    return loop
