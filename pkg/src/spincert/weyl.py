"""Truncated Hermite model of the symplectic side.

Orthonormal Hermite functions h_0 .. h_{N-1} per mode carry the canonical
ladder recurrences

    x h_m = sqrt(m/2) h_{m-1} + sqrt((m+1)/2) h_{m+1}
    d h_m = sqrt(m/2) h_{m-1} - sqrt((m+1)/2) h_{m+1}

so multiplication by i*x_j and differentiation d/dx_j become banded matrices
on the N^n-dimensional tensor basis. These are the images of the first and
second half of the standard basis of R^{2n} under the phase-space action;
their commutators reproduce -i * omega(v, w) exactly on the interior block
(all mode levels <= N - 3), the only place truncation cannot reach.

One-parameter flows exp(t J H) of per-mode quadratic generators (phase
rotation, squeeze, shear, and commuting sums) quantize to exp(t Q) with
Q = -(i/2) sum (-J H J)_{ab} sym(xi_a xi_b). For hyperbolic generators the
exponential is computed in an enlarged working cutoff (chosen so spill-over
tails beyond the working space are < 1e-9 for interior states) and then
compressed back to the model dimension; without the enlargement the
truncated exponential is not accurate at any useful tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .errors import (CutoffTooSmall, NotScalar, PathUnavailable, UnsupportedGenerator)

WORK_DIM_CAP = 4096  # hard cap on any working-space dimension


# -- single-mode ladder matrices and their quadrature oracle ----------------

def position_matrix(n: int) -> np.ndarray:
    """<h_a| x |h_b> from the ladder recurrence (real symmetric tridiagonal)."""
    x = np.zeros((n, n))
    for m in range(1, n):
        x[m - 1, m] = x[m, m - 1] = np.sqrt(m / 2.0)
    return x


def derivative_matrix(n: int) -> np.ndarray:
    """<h_a| d/dx |h_b> from the ladder recurrence (real antisymmetric)."""
    d = np.zeros((n, n))
    for b in range(n):
        if b >= 1:
            d[b - 1, b] = np.sqrt(b / 2.0)
        if b + 1 < n:
            d[b + 1, b] = -np.sqrt((b + 1) / 2.0)
    return d


def _hermite_values(n: int, x: np.ndarray) -> np.ndarray:
    """Normalized Hermite polynomial parts P_m(x) = h_m(x) e^{x^2/2}, m < n."""
    vals = np.zeros((n, x.size))
    vals[0] = np.pi ** -0.25
    if n > 1:
        vals[1] = np.sqrt(2.0) * x * vals[0]
    for m in range(1, n - 1):
        vals[m + 1] = (x * np.sqrt(2.0 / (m + 1)) * vals[m]
                       - np.sqrt(m / (m + 1.0)) * vals[m - 1])
    return vals


def quadrature_position_matrix(n: int) -> np.ndarray:
    """Brute-force <h_a| x |h_b> by Gauss-Hermite integration."""
    nodes, weights = np.polynomial.hermite.hermgauss(n + 8)
    p = _hermite_values(n, nodes)
    return np.einsum("q,aq,bq->ab", weights * nodes, p, p)


def quadrature_derivative_matrix(n: int) -> np.ndarray:
    """Brute-force <h_a| h_b'> by Gauss-Hermite integration.

    h_b' has polynomial part sqrt(2b) P_{b-1} - x P_b (derivative of the
    Gaussian included).
    """
    nodes, weights = np.polynomial.hermite.hermgauss(n + 8)
    p = _hermite_values(n, nodes)
    dp = np.zeros_like(p)
    for b in range(n):
        dp[b] = -nodes * p[b]
        if b >= 1:
            dp[b] += np.sqrt(2.0 * b) * p[b - 1]
    return np.einsum("q,aq,bq->ab", weights, p, dp)


# -- the tensor model --------------------------------------------------------

def _embed(op: np.ndarray, mode: int, modes: int, cutoff: int) -> np.ndarray:
    out = np.array([[1.0]])
    for j in range(modes):
        out = np.kron(out, op if j == mode else np.eye(cutoff))
    return out


class HermiteModel:
    """N^n-dimensional Hermite-basis surrogate with phase-space operators."""

    def __init__(self, modes: int, cutoff: int):
        if cutoff < 8:
            raise CutoffTooSmall("cutoff must be at least 8")
        self.modes = int(modes)
        self.cutoff = int(cutoff)
        self.dim = cutoff ** modes
        self.interior_bound = cutoff - 3
        x1 = position_matrix(cutoff)
        d1 = derivative_matrix(cutoff)
        self.xops = [1j * _embed(x1, j, modes, cutoff) for j in range(modes)]
        self.dops = [_embed(d1, j, modes, cutoff).astype(np.complex128)
                     for j in range(modes)]
        self._interior = None

    def interior_mask(self, bound: int | None = None) -> np.ndarray:
        """Boolean mask of basis states with every mode level <= bound."""
        if bound is None:
            bound = self.interior_bound
            if self._interior is not None:
                return self._interior
        mask = np.ones(self.dim, dtype=bool)
        for state in range(self.dim):
            s = state
            for _ in range(self.modes):
                if s % self.cutoff > bound:
                    mask[state] = False
                    break
                s //= self.cutoff
        if bound == self.interior_bound:
            self._interior = mask
        return mask


def build_hermite_model(modes: int, cutoff: int) -> HermiteModel:
    return HermiteModel(modes, cutoff)


def symplectic_form(modes: int) -> np.ndarray:
    """Matrix J of omega(x, y) = sum x_j y_{n+j} - x_{n+j} y_j."""
    eye = np.eye(modes)
    z = np.zeros((modes, modes))
    return np.block([[z, eye], [-eye, z]])


def omega(v: np.ndarray, w: np.ndarray) -> float:
    n = len(v) // 2
    return float(np.dot(v[:n], w[n:]) - np.dot(v[n:], w[:n]))


def check_symplectic(s: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    n2 = s.shape[0]
    j = symplectic_form(n2 // 2)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        raise ValueError("symplectic matrix must be square of even dimension")
    if np.linalg.norm(s.T @ j @ s - j) > tol:
        raise ValueError("matrix does not preserve the symplectic form")
    return s


def clifford_mult(model: HermiteModel, y: Sequence[float]) -> np.ndarray:
    """Phase-space action of the real 2n-vector y."""
    y = np.asarray(y, dtype=np.float64)
    n = model.modes
    out = np.zeros((model.dim, model.dim), dtype=np.complex128)
    for j in range(n):
        if y[j] != 0:
            out += y[j] * model.xops[j]
        if y[n + j] != 0:
            out += y[n + j] * model.dops[j]
    return out


def ccr_residual(model: HermiteModel, v: Sequence[float], w: Sequence[float]) -> float:
    """| ([rho(v), rho(w)] + i omega(v,w) I) restricted to interior columns |."""
    rv = clifford_mult(model, v)
    rw = clifford_mult(model, w)
    c = rv @ rw - rw @ rv + 1j * omega(np.asarray(v, float), np.asarray(w, float)) \
        * np.eye(model.dim)
    return float(np.linalg.norm(c[:, model.interior_mask()]))


# -- quadratic generators -----------------------------------------------------

@dataclass
class QuadraticHamiltonian:
    """Symmetric coefficient matrix of a phase-space quadratic form."""

    matrix: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.float64)
        if np.linalg.norm(self.matrix - self.matrix.T) > 1e-12:
            raise ValueError("coefficient matrix must be symmetric")

    def __add__(self, other: "QuadraticHamiltonian") -> "QuadraticHamiltonian":
        return QuadraticHamiltonian(self.matrix + other.matrix,
                                    f"{self.label}+{other.label}")

    @classmethod
    def oscillator(cls, modes: int, mode: int = 0) -> "QuadraticHamiltonian":
        h = np.zeros((2 * modes, 2 * modes))
        h[mode, mode] = 1.0
        h[modes + mode, modes + mode] = 1.0
        return cls(h, f"osc{mode}")

    @classmethod
    def squeeze(cls, modes: int, mode: int = 0) -> "QuadraticHamiltonian":
        h = np.zeros((2 * modes, 2 * modes))
        h[mode, modes + mode] = h[modes + mode, mode] = 1.0
        return cls(h, f"squeeze{mode}")

    @classmethod
    def shear(cls, modes: int, mode: int = 0) -> "QuadraticHamiltonian":
        h = np.zeros((2 * modes, 2 * modes))
        h[mode, mode] = 1.0
        return cls(h, f"shear{mode}")


def sp_one_param(h: QuadraticHamiltonian, t: float) -> np.ndarray:
    """exp(t J H), the classical flow of the quadratic generator."""
    j = symplectic_form(h.matrix.shape[0] // 2)
    return scipy.linalg.expm(t * (j @ h.matrix))


def _mode_blocks(h: QuadraticHamiltonian, modes: int) -> list[np.ndarray]:
    """Per-mode 2x2 blocks; UnsupportedGenerator on any cross-mode coupling."""
    m = h.matrix
    for a in range(2 * modes):
        for b in range(2 * modes):
            if m[a, b] != 0 and (a % modes) != (b % modes):
                raise UnsupportedGenerator(
                    "cross-mode couplings are outside the supported families")
    return [np.array([[m[j, j], m[j, modes + j]],
                      [m[modes + j, j], m[modes + j, modes + j]]])
            for j in range(modes)]


def _quantize(h: QuadraticHamiltonian, xops, dops, dim: int) -> np.ndarray:
    """Q with [Q, rho(y)] = rho(J H y): symmetrized quadratic in (q, p)."""
    modes = len(xops)
    j = symplectic_form(modes)
    hp = -j @ h.matrix @ j
    xi = [-1j * op for op in xops] + [-1j * op for op in dops]
    q = np.zeros((dim, dim), dtype=np.complex128)
    for a in range(2 * modes):
        for b in range(a, 2 * modes):
            coeff = hp[a, b] if a == b else 2.0 * hp[a, b]
            if coeff == 0:
                continue
            sym = xi[a] @ xi[b] if a == b else 0.5 * (xi[a] @ xi[b] + xi[b] @ xi[a])
            q += coeff * sym
    return -0.5j * q


def _work_cutoff(base: int, interior: int, s: np.ndarray) -> int:
    """Working cutoff for hyperbolic flows: room for level growth plus tails.

    sigma = largest singular value of the classical flow; levels of
    transformed interior states grow like sigma^2 and coefficients decay
    geometrically with ratio (sigma^2-1)/(sigma^2+1) per two levels.
    Constants calibrated so residuals land below 1e-7 at t = 1, N = 32.
    """
    sigma = float(np.linalg.svd(s, compute_uv=False)[0])
    if sigma <= 1.0 + 1e-9:
        return base
    s2 = sigma * sigma
    beta = (s2 - 1.0) / (s2 + 1.0)
    need = int(np.ceil((interior + 2) * s2 * 1.35
                       + 2.0 * np.log(1e9) / np.log(1.0 / beta) + 48))
    return max(base, need)


@dataclass
class MpCElement:
    """Class [(flow, z)]: symplectic matrix, model-space action, scalar tag.

    For hyperbolic generators `u` is the compression of the accurate
    working-space propagator; `work` keeps that propagator for residual
    checks at full accuracy.
    """

    s: np.ndarray
    u: np.ndarray
    z: complex = 1.0
    path: tuple = ()
    work: dict | None = field(default=None, repr=False)

    def action(self) -> np.ndarray:
        return self.z * self.u

    def class_canonical(self) -> tuple[np.ndarray, complex]:
        """Representative of (u, z) ~ (-u, -z) by the leading-entry sign rule."""
        flat = self.u.reshape(-1)
        for entry in flat:
            if abs(entry) > 1e-8:
                re, im = entry.real, entry.imag
                if re > 1e-12 or (abs(re) <= 1e-12 and im > 0):
                    return self.u, self.z
                return -self.u, -self.z
        return self.u, self.z


def mp_one_param(model: HermiteModel, h: QuadraticHamiltonian, t: float) -> MpCElement:
    """Quantized one-parameter flow, z = 1.

    Per-mode families only. Hyperbolic directions are exponentiated in an
    enlarged working space (see `_work_cutoff`) and compressed; growth beyond
    WORK_DIM_CAP (multi-mode squeezes at large |t|) is rejected.
    """
    _mode_blocks(h, model.modes)  # validates the family
    s = sp_one_param(h, t)
    n_work = _work_cutoff(model.cutoff, model.interior_bound, s)
    if n_work == model.cutoff:
        q = _quantize(h, model.xops, model.dops, model.dim)
        u = scipy.linalg.expm(t * q)
        return MpCElement(s=s, u=u, path=((h, t),))
    if model.modes > 1:
        raise UnsupportedGenerator(
            "hyperbolic generators with several modes exceed the working-space budget")
    if n_work > WORK_DIM_CAP:
        raise UnsupportedGenerator(
            f"working cutoff {n_work} exceeds the cap; reduce |t|")
    xw = [1j * position_matrix(n_work).astype(np.complex128)]
    dw = [derivative_matrix(n_work).astype(np.complex128)]
    q = _quantize(h, xw, dw, n_work)
    u_work = scipy.linalg.expm(t * q)
    u = u_work[:model.cutoff, :model.cutoff].copy()
    return MpCElement(s=s, u=u, path=((h, t),),
                      work={"cutoff": n_work, "u": u_work})


def mp_equivariance_residual(model: HermiteModel, g: MpCElement,
                             y: Sequence[float]) -> float:
    """| (eps(g) rho(y) eps(g)^{-1} - rho(S y)) on interior columns |.

    The scalar tag cancels under conjugation. Elements carrying working-space
    data are checked there (the compressed block alone cannot represent a
    hyperbolic flow to useful accuracy).
    """
    y = np.asarray(y, dtype=np.float64)
    sy = g.s @ y
    if g.work is not None:
        nw = g.work["cutoff"]
        u = g.work["u"]
        xw = 1j * position_matrix(nw)
        dw = derivative_matrix(nw)
        rho_y = y[0] * xw + y[1] * dw
        rho_sy = sy[0] * xw + sy[1] * dw
        cols = model.interior_bound + 1
        e = u @ rho_y @ np.linalg.inv(u) - rho_sy
        return float(np.linalg.norm(e[:, :cols]))
    u = g.u
    e = u @ clifford_mult(model, y) @ np.linalg.inv(u) - clifford_mult(model, sy)
    return float(np.linalg.norm(e[:, model.interior_mask()]))


REGISTERED_FAMILIES = ("osc", "squeeze", "shear")


def _match_single_generator(model: HermiteModel, s: np.ndarray):
    """Search registered one-parameter families for a flow equal to s."""
    n = model.modes
    for j in range(n):
        block = np.array([[s[j, j], s[j, n + j]], [s[n + j, j], s[n + j, n + j]]])
        candidates = [
            (QuadraticHamiltonian.oscillator(n, j), float(np.arctan2(block[0, 1], block[0, 0]))),
            (QuadraticHamiltonian.squeeze(n, j), float(np.log(block[0, 0])) if block[0, 0] > 0 else None),
            (QuadraticHamiltonian.shear(n, j), float(-block[1, 0])),
        ]
        for h, t in candidates:
            if t is None:
                continue
            if np.linalg.norm(sp_one_param(h, t) - s) < 1e-8:
                return h, t
    return None


@dataclass
class MpFactorization:
    """Outcome of factoring one (p', eps') sample on the symplectic side."""

    path: tuple
    c: complex
    scalar_residual: float
    ok: bool
    u_canonical: np.ndarray = field(default=None, repr=False)


def mp_factorize(model: HermiteModel, p_prime: np.ndarray, eps_prime: np.ndarray,
                 path: Sequence[tuple[QuadraticHamiltonian, float]] | None = None,
                 tol: float = 1e-8) -> MpFactorization:
    """Factor a sample through the metaplectic-plus-scalar classes.

    Builds eps(A) along the (given or searched) generator path, forms
    D = eps(A)^{-1} eps'(g) and extracts the scalar as the interior diagonal
    mean, certifying the off-scalar residual on interior columns.
    """
    p_prime = check_symplectic(p_prime)
    if path is None:
        hit = _match_single_generator(model, p_prime)
        if hit is None:
            raise PathUnavailable("no registered one-parameter flow matches p'")
        path = [hit]
    u_a = np.eye(model.dim, dtype=np.complex128)
    s_total = np.eye(2 * model.modes)
    legs = []
    for h, t in path:
        leg = mp_one_param(model, h, t)
        u_a = u_a @ leg.u
        s_total = s_total @ leg.s
        legs.append((h.label, float(t)))
    if np.linalg.norm(s_total - p_prime) > 1e-7:
        raise PathUnavailable("provided path does not reach p'")

    eps_prime = np.asarray(eps_prime, dtype=np.complex128)
    d = np.linalg.solve(u_a, eps_prime)
    mask = model.interior_mask()
    diag = np.diag(d)[mask]
    c = complex(np.mean(diag))
    dint = d[:, mask]
    residual = float(np.linalg.norm(dint - c * np.eye(model.dim)[:, mask])
                     / max(1.0, float(np.linalg.norm(dint))))
    if residual > tol:
        raise NotScalar(f"off-scalar residual {residual:.3e} on interior", residual=residual)
    if abs(c) <= tol:
        raise NotScalar("extracted scalar is numerically zero", residual=residual)
    elem = MpCElement(s=s_total, u=u_a, z=c, path=tuple(legs))
    u_canon, c_canon = elem.class_canonical()
    return MpFactorization(tuple(legs), c_canon, residual, True, u_canon)


def mp_monodromy(model: HermiteModel) -> dict:
    """Phase-rotation loop: classical flow closes, quantized flow flips sign.

    At t = 2 pi the flow matrix is the identity while the quantized diagonal
    phases e^{-i 2 pi (m + 1/2)} all equal -1. The truncated top level has a
    polluted diagonal value, so entries are compared on the interior mask
    (for even cutoffs the top entry happens to be -1 as well).
    """
    h = QuadraticHamiltonian.oscillator(model.modes, 0)
    full = mp_one_param(model, h, 2.0 * np.pi)
    half = mp_one_param(model, h, np.pi)
    mask = model.interior_mask()
    diag = np.diag(full.u)[mask]
    phase_defect = float(np.max(np.abs(diag + 1.0)))
    s_defect = float(np.linalg.norm(full.s - np.eye(2 * model.modes)))
    half_sq_defect = float(np.max(np.abs(np.diag(half.u @ half.u)[mask] + 1.0)))
    doubled = mp_one_param(model, h, 4.0 * np.pi)
    doubled_defect = float(np.max(np.abs(np.diag(doubled.u)[mask] - 1.0)))
    closed = phase_defect < 1e-10 and s_defect < 1e-10
    return {
        "monodromy": -1 if closed else 0,
        "phase_defect": phase_defect,
        "flow_closure_defect": s_defect,
        "half_loop_square_defect": half_sq_defect,
        "doubled_defect": doubled_defect,
        "pass": closed and half_sq_defect < 1e-10 and doubled_defect < 1e-10,
    }
