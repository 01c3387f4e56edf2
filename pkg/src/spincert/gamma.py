"""Irreducible gamma-matrix representations of the complexified algebra C_n^c.

The generators satisfy

    g_j g_l + g_l g_j = 0  (j != l),      g_j^2 = -I,

on C^k with k = 2^floor(n/2), and each g_j is unitary and skew-Hermitian.

Construction is a deterministic 2x2 tensor recursion with all entries
Gaussian integers (0, +-1, +-i):

  * n = 2 seed:  g_1 = i*sigma3, g_2 = -i*sigma2.
  * n -> n+2:    existing generators tensor sigma1 on the right; the two new
    generators are I (x) i*sigma3 and I (x) -i*sigma2.
  * odd n:       generators 1..n-1 from the even recursion; the last one is
    branch * mu_n * (g_1 ... g_{n-1}) with mu_n = i for n = 1 mod 4 and
    mu_n = -1 for n = 3 mod 4, so the two branch choices produce opposite
    central products. With branch = +1 and n = 3 this lands exactly on the
    classical 2x2 triple (i*sigma3, -i*sigma2, i*sigma1).

For odd n there are two inequivalent representations; `branch` picks one.
For even n the branch argument is ignored.
"""

from __future__ import annotations

import numpy as np

from .clifford import BilinearForm, Multivector
from .errors import FormMismatch, NoIntertwiner, NotCentral, OddOnly

_SIGMA1 = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_I_SIGMA3 = np.array([[1j, 0], [0, -1j]], dtype=np.complex128)
_NEG_I_SIGMA2 = np.array([[0, -1], [1, 0]], dtype=np.complex128)

SV_RTOL = 1e-9  # relative singular-value threshold for rank/nullity decisions


class GammaRep:
    """n anticommuting k x k generators, k = 2^floor(n/2), plus odd-n branch tag."""

    def __init__(self, n: int, gammas, branch: int = +1):
        self.n = int(n)
        self.branch = int(branch)
        self.gammas = [np.asarray(g, dtype=np.complex128) for g in gammas]
        self.k = self.gammas[0].shape[0] if self.gammas else 1
        self._blade_cache: dict[int, np.ndarray] = {0: np.eye(self.k, dtype=np.complex128)}

    def blade_matrix(self, mask: int) -> np.ndarray:
        """Image of a basis blade: ordered product of generators in the mask."""
        cached = self._blade_cache.get(mask)
        if cached is not None:
            return cached
        low = mask & -mask
        j = low.bit_length() - 1
        m = self.gammas[j] @ self.blade_matrix(mask ^ low)
        self._blade_cache[mask] = m
        return m

    def relation_residual(self) -> float:
        """Max entry error in g_j g_l + g_l g_j + 2 delta_jl I over all pairs."""
        eye2 = 2.0 * np.eye(self.k)
        worst = 0.0
        for j in range(self.n):
            for l in range(j, self.n):
                anti = self.gammas[j] @ self.gammas[l] + self.gammas[l] @ self.gammas[j]
                if j == l:
                    anti = anti + eye2
                worst = max(worst, float(np.max(np.abs(anti))))
        return worst

    def unitary_skew_residual(self) -> float:
        worst = 0.0
        for g in self.gammas:
            worst = max(worst, float(np.max(np.abs(g.conj().T @ g - np.eye(self.k)))))
            worst = max(worst, float(np.max(np.abs(g.conj().T + g))))
        return worst


def _even_gammas(n: int) -> list[np.ndarray]:
    if n == 0:
        return []
    gam = [_I_SIGMA3.copy(), _NEG_I_SIGMA2.copy()]
    for _ in range((n - 2) // 2):
        eye = np.eye(gam[0].shape[0], dtype=np.complex128)
        gam = [np.kron(g, _SIGMA1) for g in gam]
        gam.append(np.kron(eye, _I_SIGMA3))
        gam.append(np.kron(eye, _NEG_I_SIGMA2))
    return gam


def build_gamma(n: int, branch: int = +1) -> GammaRep:
    """Deterministic generator construction for C_n^c; see the module docstring."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    if n % 2 == 0:
        return GammaRep(n, _even_gammas(n), branch=+1)
    gam = _even_gammas(n - 1)
    k = gam[0].shape[0] if gam else 1
    omega = np.eye(k, dtype=np.complex128)
    for g in gam:
        omega = omega @ g
    mu = 1j if n % 4 == 1 else -1.0
    gam.append(branch * mu * omega)
    return GammaRep(n, gam, branch=branch)


def paper_gamma3() -> GammaRep:
    """The classical three 2x2 generators (i*sigma3, -i*sigma2, i*sigma1)."""
    g1 = np.array([[1j, 0], [0, -1j]])
    g2 = np.array([[0, -1], [1, 0]])
    g3 = np.array([[0, 1j], [1j, 0]])
    return GammaRep(3, [g1, g2, g3], branch=+1)


def rep_apply(rep: GammaRep, x: Multivector) -> np.ndarray:
    """Algebra-homomorphism extension of the representation to a multivector."""
    if x.form.dim != rep.n or not x.form.is_negative_euclidean():
        raise FormMismatch("multivector must live over the d_j = -1 form of matching dimension")
    out = np.zeros((rep.k, rep.k), dtype=np.complex128)
    for m, c in zip(x.masks, x.coeffs):
        out += c * rep.blade_matrix(int(m))
    return out


def _nullspace(mat: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the nullspace, singular values below SV_RTOL * s_max.

    A numerically-zero matrix (s_max below 1e-12; pure float noise for the
    O(1)-normalized operators used here) has a full nullspace.
    """
    _, s, vh = np.linalg.svd(mat)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > SV_RTOL * smax)) if smax > 1e-12 else 0
    return vh[rank:].conj().T


def commutant_matrices(gammas: list[np.ndarray]) -> np.ndarray:
    """Orthonormal basis (columns = vectorized matrices) of {X : X g = g X for all g}.

    Intersects kernels one generator at a time; the first SVD dominates the
    cost and later systems shrink quickly.
    """
    k = gammas[0].shape[0]
    eye = np.eye(k)
    basis = None  # columns span the current candidate space, as k^2-vectors
    for g in gammas:
        c = np.kron(g, eye) - np.kron(eye, g.T)  # row-major vec of g@X - X@g
        mat = c if basis is None else c @ basis
        null = _nullspace(mat)
        basis = null if basis is None else basis @ null
        if basis.shape[1] == 0:
            break
    return basis if basis is not None else np.eye(k * k)


def commutant_dim(rep: GammaRep | list[np.ndarray]) -> int:
    """Dimension of the joint commutant; 1 certifies a scalar commutant."""
    gammas = rep.gammas if isinstance(rep, GammaRep) else list(rep)
    return commutant_matrices(gammas).shape[1]


def branch_invariant(rep: GammaRep) -> complex:
    """Scalar value of the ordered product of all generators (odd n only)."""
    if rep.n % 2 == 0:
        raise OddOnly("the central generator product is scalar only for odd n")
    prod = rep.blade_matrix((1 << rep.n) - 1)
    scal = complex(np.trace(prod) / rep.k)
    if np.linalg.norm(prod - scal * np.eye(rep.k)) > 1e-12 * max(1.0, np.linalg.norm(prod)):
        raise NotCentral("generator product is not a scalar matrix")
    return scal


def intertwiner_space(rep_a: GammaRep, rep_b: GammaRep) -> np.ndarray:
    """Basis of {T : T g_j^A = g_j^B T}, columns as vectorized k x k matrices."""
    if rep_a.n != rep_b.n:
        raise ValueError("representations have different dimension")
    k = rep_a.k
    eye = np.eye(k)
    blocks = [np.kron(eye, ga.T) - np.kron(gb, eye)
              for ga, gb in zip(rep_a.gammas, rep_b.gammas)]
    return _nullspace(np.vstack(blocks))


def intertwiner_solve(rep_a: GammaRep, rep_b: GammaRep) -> np.ndarray:
    """Invertible T with T g_j^A T^{-1} = g_j^B, unitarized; NoIntertwiner if none.

    For irreducible inputs the solution space is at most one-dimensional
    (scalar commutant), so any nonzero solution is a candidate; invertibility
    is certified by its smallest singular value.
    """
    k = rep_a.k
    space = intertwiner_space(rep_a, rep_b)
    for col in range(space.shape[1]):
        t = space[:, col].reshape(k, k)
        s = np.linalg.svd(t, compute_uv=False)
        if s[-1] > SV_RTOL * s[0] and s[0] > 0:
            # both reps unitary => T^dag T commutes with rep_a => T/sqrt(scale) unitary
            scale = np.sqrt(np.trace(t.conj().T @ t).real / k)
            return t / scale
    raise NoIntertwiner("no invertible intertwiner (inequivalent representations)")


def blade_span_dimension(rep: GammaRep, even_only: bool = False) -> int:
    """Rank of the span of all blade images (surjectivity measure)."""
    mats = []
    for mask in range(1 << rep.n):
        if even_only and mask.bit_count() % 2 == 1:
            continue
        mats.append(rep.blade_matrix(mask).reshape(-1))
    stack = np.array(mats)
    s = np.linalg.svd(stack, compute_uv=False)
    return int(np.sum(s > SV_RTOL * s[0]))
