"""Exterior-algebra spinor model for the unitary-group instance.

Identify R^{2m} with C^m via zeta(y) = y[:m] + i*y[m:]. On the exterior
algebra Lambda C^m (dimension 2^m, basis indexed by subset bit masks) the
operator

    rho(y) = zeta(y) wedge  -  contraction by zeta(y)

squares to -|y|^2 and realizes the d_j = -1 Clifford relations, with each
rho(y) skew-Hermitian. A unitary U acts functorially by Lambda(U)
(determinant action on each subset), the realification of U is special
orthogonal, and

    rho(realify(U) y) = Lambda(U) rho(y) Lambda(U)^{-1}

holds exactly, which is what makes the unitary group a solution family.
An intertwiner to the canonical gamma construction transports the whole
instance onto the canonical representation for factorization.
"""

from __future__ import annotations

import numpy as np

from .errors import NotUnitary
from .gamma import GammaRep, build_gamma, intertwiner_solve
from .rng import SplitMix64
from .spinc import SolutionInstance


def creation_matrix(m: int, j: int) -> np.ndarray:
    """Wedge by the j-th basis vector on subset-indexed Lambda C^m."""
    dim = 1 << m
    w = np.zeros((dim, dim), dtype=np.complex128)
    bit = 1 << j
    for s in range(dim):
        if s & bit:
            continue
        sign = (-1.0) ** (s & (bit - 1)).bit_count()
        w[s | bit, s] = sign
    return w


def wedge_operator(m: int, z: np.ndarray) -> np.ndarray:
    """Wedge by the complex vector z."""
    out = np.zeros((1 << m, 1 << m), dtype=np.complex128)
    for j in range(m):
        if z[j] != 0:
            out += z[j] * creation_matrix(m, j)
    return out


def rho_exterior(m: int, y: np.ndarray) -> np.ndarray:
    """Clifford action of the real vector y: wedge minus contraction."""
    y = np.asarray(y, dtype=np.float64)
    z = y[:m] + 1j * y[m:]
    w = wedge_operator(m, z)
    return w - w.conj().T


def exterior_gamma_rep(m: int) -> GammaRep:
    """The 2m generator images as a GammaRep over Lambda C^m."""
    eye = np.eye(2 * m)
    gammas = [rho_exterior(m, eye[:, j]) for j in range(2 * m)]
    return GammaRep(2 * m, gammas, branch=+1)


def functorial_power(u: np.ndarray) -> np.ndarray:
    """Action of a linear map on the exterior algebra, built by iterated wedges."""
    m = u.shape[0]
    dim = 1 << m
    creations = [creation_matrix(m, j) for j in range(m)]
    columns_ops = [sum(u[i, j] * creations[i] for i in range(m)) for j in range(m)]
    out = np.zeros((dim, dim), dtype=np.complex128)
    for s in range(dim):
        vec = np.zeros(dim, dtype=np.complex128)
        vec[0] = 1.0
        for j in reversed(range(m)):
            if s & (1 << j):
                vec = columns_ops[j] @ vec
        out[:, s] = vec
    return out


def realify(u: np.ndarray) -> np.ndarray:
    """Standard inclusion of a unitary into SO(2m): z = x + iy coordinates."""
    x, y = u.real, u.imag
    return np.block([[x, -y], [y, x]])


def check_unitary(u: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) > tol:
        raise NotUnitary("matrix is not unitary within tolerance")
    return u


def exterior_equivariance_residual(m: int, u: np.ndarray, y: np.ndarray) -> float:
    """Defect of the model-level intertwining for one unitary and one vector."""
    u = check_unitary(u)
    lam = functorial_power(u)
    lhs = rho_exterior(m, realify(u) @ np.asarray(y, dtype=np.float64))
    rhs = lam @ rho_exterior(m, y) @ lam.conj().T
    return float(np.linalg.norm(lhs - rhs))


def unitary_exterior_instance(m: int, us: list[np.ndarray],
                              pair_hints: int = 0,
                              rng: SplitMix64 | None = None) -> SolutionInstance:
    """Solution instance for the unitary group, transported to the canonical rep.

    Samples are (realify(U), T Lambda(U) T^{-1}) with T the unitarized
    intertwiner from the exterior model to build_gamma(2m); hinted products
    U_i U_j are appended as genuine group products.
    """
    us = [check_unitary(u) for u in us]
    t = intertwiner_solve(exterior_gamma_rep(m), build_gamma(2 * m))
    t_inv = t.conj().T  # unitary intertwiner
    def transport(u):
        return t @ functorial_power(u) @ t_inv

    samples = [(f"u{i}", realify(u), transport(u)) for i, u in enumerate(us)]
    hints = []
    if pair_hints and rng is not None:
        for h in range(pair_hints):
            i = rng.randint(0, len(us) - 1)
            j = rng.randint(0, len(us) - 1)
            prod = us[i] @ us[j]
            samples.append((f"p{h}", realify(prod), transport(prod)))
            hints.append((i, j, len(samples) - 1))
    inst = SolutionInstance(f"unitary-exterior-m{m}", samples, hints)
    inst.validate()
    return inst
