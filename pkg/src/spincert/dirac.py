"""Squared first-order operator versus the vector Laplacian, exactly.

Polynomial spinors carry exact Gaussian-rational coefficients; the generator
matrices from the tensor recursion have Gaussian-integer entries, so

    (sum_j g_j d/dx_j)^2  =  -sum_j d^2/dx_j^2   (componentwise)

is checked as an identity of rational numbers, not to a tolerance. A
plane-wave family provides the matching floating-point check: on
exp(i<xi, x>) v the squared operator acts as |xi|^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ShapeMismatch
from .exact import QC
from .gamma import GammaRep
from .rng import SplitMix64

Monomial = tuple[int, ...]
Poly = dict[Monomial, QC]


def poly_diff(p: Poly, j: int) -> Poly:
    out: Poly = {}
    for exps, c in p.items():
        e = exps[j]
        if e == 0:
            continue
        key = exps[:j] + (e - 1,) + exps[j + 1:]
        add = c * QC(e)
        prev = out.get(key)
        out[key] = add if prev is None else prev + add
    return {k: v for k, v in out.items() if v}


def poly_add_scaled(target: Poly, p: Poly, scale: QC):
    for exps, c in p.items():
        add = c * scale
        prev = target.get(exps)
        s = add if prev is None else prev + add
        if s:
            target[exps] = s
        elif exps in target:
            del target[exps]


@dataclass
class PolySpinor:
    """k polynomial components in n variables, exact coefficients."""

    n: int
    components: list[Poly]

    def __post_init__(self):
        self.components = [{k: v for k, v in comp.items() if v}
                           for comp in self.components]
        for comp in self.components:
            for exps in comp:
                if len(exps) != self.n:
                    raise ShapeMismatch("monomial exponent length disagrees with n")

    @property
    def k(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        return self.n == other.n and self.components == other.components

    def is_zero(self) -> bool:
        return all(not comp for comp in self.components)


@dataclass
class PlaneWaveSpinor:
    """exp(i<xi, x>) v with a real frequency vector and complex amplitude."""

    xi: np.ndarray
    v: np.ndarray


class ExactGamma:
    """Gamma matrices with exact entries, stored as sparse columns.

    cols[j][b] lists (row, value) for the nonzero entries of generator j's
    column b; the recursion produces signed-unit permutation matrices, so
    each column has a single entry and the operator application is linear
    in the number of stored monomials.
    """

    def __init__(self, rep: GammaRep):
        self.n = rep.n
        self.k = rep.k
        self.cols: list[list[list[tuple[int, QC]]]] = []
        for j, g in enumerate(rep.gammas):
            col_maps = []
            for b in range(self.k):
                entries = []
                for a in range(self.k):
                    z = complex(g[a, b])
                    if z != 0:
                        entries.append((a, QC.from_complex_unit(z, f"g{j + 1}[{a},{b}]")))
                col_maps.append(entries)
            self.cols.append(col_maps)

    def perturbed(self, j: int, a: int, b: int, delta: QC) -> "ExactGamma":
        """Copy with delta added to one entry (for failure-sensitivity tests)."""
        import copy
        other = copy.copy(self)
        other.cols = [[list(col) for col in colmap] for colmap in self.cols]
        col = other.cols[j][b]
        for idx, (row, val) in enumerate(col):
            if row == a:
                s = val + delta
                if s:
                    col[idx] = (row, s)
                else:
                    del col[idx]
                break
        else:
            col.append((a, delta))
        return other


def dirac_apply(gam: ExactGamma, f: PolySpinor) -> PolySpinor:
    """sum_j g_j (d f / dx_j), exactly."""
    if gam.n != f.n or gam.k != f.k:
        raise ShapeMismatch("representation and spinor dimensions disagree")
    out: list[Poly] = [{} for _ in range(gam.k)]
    for j in range(gam.n):
        cols = gam.cols[j]
        for b, comp in enumerate(f.components):
            if not comp:
                continue
            d = poly_diff(comp, j)
            if not d:
                continue
            for a, val in cols[b]:
                poly_add_scaled(out[a], d, val)
    return PolySpinor(f.n, out)


def laplacian_apply(f: PolySpinor) -> PolySpinor:
    """Negative sum of second partials, componentwise and exact."""
    out: list[Poly] = []
    for comp in f.components:
        acc: Poly = {}
        for j in range(f.n):
            poly_add_scaled(acc, poly_diff(poly_diff(comp, j), j), QC(-1))
        out.append(acc)
    return PolySpinor(f.n, out)


def square_defect(gam: ExactGamma, f: PolySpinor):
    """First differing monomial of (P^2 - Delta) f, or None if they agree."""
    lhs = dirac_apply(gam, dirac_apply(gam, f))
    rhs = laplacian_apply(f)
    for a, (lc, rc) in enumerate(zip(lhs.components, rhs.components)):
        keys = sorted(set(lc) | set(rc))
        for exps in keys:
            lv = lc.get(exps, QC())
            rv = rc.get(exps, QC())
            if lv != rv:
                return {"component": a, "monomial": exps, "squared": lv, "laplacian": rv}
    return None


def verify_square(gam: ExactGamma, f: PolySpinor) -> bool:
    """Exact equality of the squared operator and the vector Laplacian on f."""
    return square_defect(gam, f) is None


def plane_wave_check(rep: GammaRep, w: PlaneWaveSpinor) -> float:
    """| (i rho(xi))^2 v - |xi|^2 v |, the Fourier-side residual."""
    xi = np.asarray(w.xi, dtype=np.float64)
    v = np.asarray(w.v, dtype=np.complex128)
    m = 1j * sum(x * g for x, g in zip(xi, rep.gammas))
    return float(np.linalg.norm(m @ (m @ v) - float(xi @ xi) * v))


def random_poly_spinor(n: int, k: int, degree: int, rng: SplitMix64,
                       terms: int = 6) -> PolySpinor:
    """Sparse random spinor with small rational coefficients."""
    comps: list[Poly] = [{} for _ in range(k)]
    for _ in range(terms):
        b = rng.randint(0, k - 1)
        d = rng.randint(0, degree)
        exps = [0] * n
        for _ in range(d):
            exps[rng.randint(0, n - 1)] += 1
        num = rng.randint(-9, 9) or 1
        den = rng.randint(1, 4)
        num_i = rng.randint(-9, 9)
        coeff = QC(Fraction(num, den), Fraction(num_i, den))
        key = tuple(exps)
        prev = comps[b].get(key)
        comps[b][key] = coeff if prev is None else prev + coeff
    return PolySpinor(n, comps)
