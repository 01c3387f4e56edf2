"""Clifford algebra over a diagonal bilinear form, with bit-mask blades.

Basis blades of Cl(V, B) are indexed by bit masks: bit j set means the j-th
orthogonal generator is present, so mask 0 is the scalar blade and mask
0b101 is e1*e3. Products reduce by the generator relations

    e_j e_l = -e_l e_j   (j != l),      e_j^2 = d_j = B(e_j, e_j),

which at blade level means the product mask is the XOR of the factors, with
a sign from counting transpositions and one factor d_j per contracted index.

Coefficients are complex doubles by default. `ExactMultivector` provides the
exact-rational mode (Gaussian-rational coefficients, structural zeros removed
exactly) used by the symbolic identity checks.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

import numpy as np

from . import kernel
from .errors import FormMismatch, NonFinite, ParseError
from .exact import QC

COEFF_EPS = 1e-14


class BilinearForm:
    """Diagonal symmetric bilinear form: B(e_j, e_j) = diag[j]."""

    __slots__ = ("dim", "diag")

    def __init__(self, diag: Iterable[float]):
        d = np.asarray(tuple(diag), dtype=np.float64)
        if d.ndim != 1 or d.size < 1:
            raise ValueError("diag must be a nonempty 1-d sequence")
        if np.any(d == 0.0):
            raise ValueError("degenerate forms are not supported")
        self.dim = int(d.size)
        self.diag = d
        self.diag.setflags(write=False)

    @classmethod
    def negative_euclidean(cls, n: int) -> "BilinearForm":
        """The form with d_j = -1 defining C_n."""
        return cls([-1.0] * n)

    def is_negative_euclidean(self) -> bool:
        return bool(np.all(self.diag == -1.0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self.diag, other.diag)

    def __hash__(self):
        return hash((self.dim, self.diag.tobytes()))

    def __repr__(self):
        return f"BilinearForm({self.diag.tolist()})"


def blade_mul(a: int, b: int, form: BilinearForm) -> tuple[int, complex]:
    """Product of two basis blades: (result mask, scalar factor)."""
    if a >= (1 << form.dim) or b >= (1 << form.dim) or a < 0 or b < 0:
        raise ValueError("blade mask out of range for this form")
    return a ^ b, complex(kernel.blade_factor(a, b, form.diag))


class Multivector:
    """Immutable sparse multivector: ascending blade masks + complex coefficients."""

    __slots__ = ("form", "masks", "coeffs")

    def __init__(self, form: BilinearForm, terms: Mapping[int, complex] | None = None,
                 *, _masks=None, _coeffs=None):
        self.form = form
        if _masks is not None:
            self.masks = _masks
            self.coeffs = _coeffs
        else:
            terms = terms or {}
            items = sorted((int(m), complex(c)) for m, c in terms.items()
                           if c != 0 and abs(c) >= COEFF_EPS)
            for m, _ in items:
                if m < 0 or m >= (1 << form.dim):
                    raise ValueError(f"blade mask {m} out of range")
            self.masks = np.array([m for m, _ in items], dtype=np.int64)
            self.coeffs = np.array([c for _, c in items], dtype=np.complex128)
        self.masks.setflags(write=False)
        self.coeffs.setflags(write=False)

    # -- constructors ------------------------------------------------------

    @classmethod
    def scalar(cls, form: BilinearForm, value: complex) -> "Multivector":
        return cls(form, {0: value})

    @classmethod
    def basis_vector(cls, form: BilinearForm, j: int) -> "Multivector":
        return cls(form, {1 << j: 1.0})

    @classmethod
    def vector(cls, form: BilinearForm, comps: Iterable[complex]) -> "Multivector":
        return cls(form, {1 << j: c for j, c in enumerate(comps)})

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[int, complex]:
        return {int(m): complex(c) for m, c in zip(self.masks, self.coeffs)}

    def coefficient(self, mask: int) -> complex:
        i = np.searchsorted(self.masks, mask)
        if i < len(self.masks) and self.masks[i] == mask:
            return complex(self.coeffs[i])
        return 0j

    def grades(self) -> set[int]:
        return {int(m).bit_count() for m in self.masks}

    def grade_part(self, r: int) -> "Multivector":
        keep = np.array([int(m).bit_count() == r for m in self.masks], dtype=bool)
        return Multivector(self.form, _masks=self.masks[keep].copy(),
                           _coeffs=self.coeffs[keep].copy())

    def vector_part(self) -> np.ndarray:
        """Grade-1 coefficients as a length-n complex array."""
        v = np.zeros(self.form.dim, dtype=np.complex128)
        for m, c in zip(self.masks, self.coeffs):
            m = int(m)
            if m.bit_count() == 1:
                v[m.bit_length() - 1] = c
        return v

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.linalg.norm(self.coeffs))

    def is_zero(self) -> bool:
        return len(self.masks) == 0

    # -- arithmetic --------------------------------------------------------

    def _check_form(self, other: "Multivector"):
        if self.form != other.form:
            raise FormMismatch("multivectors live over different forms")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_form(other)
        t = self.terms()
        for m, c in zip(other.masks, other.coeffs):
            t[int(m)] = t.get(int(m), 0j) + c
        return Multivector(self.form, t)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __neg__(self) -> "Multivector":
        return Multivector(self.form, _masks=self.masks, _coeffs=-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: complex) -> "Multivector":
        c = complex(c)
        if c == 0:
            return Multivector(self.form, {})
        out = self.coeffs * c
        keep = np.abs(out) >= COEFF_EPS
        return Multivector(self.form, _masks=self.masks[keep].copy(), _coeffs=out[keep])

    def reverse(self) -> "Multivector":
        signs = np.array([(-1.0) ** ((r * (r - 1)) // 2)
                          for r in (int(m).bit_count() for m in self.masks)])
        return Multivector(self.form, _masks=self.masks, _coeffs=self.coeffs * signs)

    def distance(self, other: "Multivector") -> float:
        """Euclidean distance between coefficient vectors (union of blades)."""
        self._check_form(other)
        t = self.terms()
        for m, c in zip(other.masks, other.coeffs):
            t[int(m)] = t.get(int(m), 0j) - c
        return float(np.sqrt(sum(abs(v) ** 2 for v in t.values())))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return (self.form == other.form
                and np.array_equal(self.masks, other.masks)
                and np.array_equal(self.coeffs, other.coeffs))

    def __repr__(self):
        parts = [f"{c:.6g}*b{int(m):b}" for m, c in zip(self.masks, self.coeffs)]
        return "Multivector(" + (" + ".join(parts) or "0") + ")"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.form.dim,
            "diag": [float(d) for d in self.form.diag],
            "terms": [
                {"mask": int(m), "re": float(c.real), "im": float(c.imag)}
                for m, c in zip(self.masks, self.coeffs)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Multivector":
        try:
            n = int(obj["n"])
            diag = [float(x) for x in obj["diag"]]
            raw = obj["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad multivector payload: {exc}") from exc
        if len(diag) != n:
            raise ParseError("diag length disagrees with n")
        form = BilinearForm(diag)
        terms = {}
        prev = -1
        for entry in raw:
            try:
                mask = int(entry["mask"])
                c = complex(float(entry["re"]), float(entry["im"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad term entry: {exc}") from exc
            if not (np.isfinite(c.real) and np.isfinite(c.imag)):
                raise NonFinite("multivector coefficient is not finite")
            if mask <= prev:
                raise ParseError("term masks must be strictly ascending")
            prev = mask
            terms[mask] = c
        return cls(form, terms)

    @classmethod
    def from_json(cls, text: str) -> "Multivector":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return cls.from_json_dict(obj)


def mv_mul(x: Multivector, y: Multivector) -> Multivector:
    """Clifford product, bilinear extension of the blade product."""
    if x.form != y.form:
        raise FormMismatch("multivectors live over different forms")
    m, c = kernel.mul_terms(x.masks, x.coeffs, y.masks, y.coeffs,
                            x.form.diag, COEFF_EPS)
    return Multivector(x.form, _masks=m, _coeffs=c)


def mv_reverse(x: Multivector) -> Multivector:
    return x.reverse()


def mv_grades(x: Multivector) -> set[int]:
    return x.grades()


def mv_product(form: BilinearForm, factors: Iterable[Multivector]) -> Multivector:
    out = Multivector.scalar(form, 1.0)
    for f in factors:
        out = mv_mul(out, f)
    return out


class ExactMultivector:
    """Exact-rational coefficient mode: dict of blade mask -> QC.

    Shares the blade sign/contraction rule with the float mode (the form diag
    must be integer-valued, as it is for C_n). Zero removal is exact.
    """

    __slots__ = ("form", "terms")

    def __init__(self, form: BilinearForm, terms: Mapping[int, QC] | None = None):
        if not np.all(self.diag_ints(form) == form.diag):
            raise ValueError("exact mode requires an integer-valued diag")
        self.form = form
        self.terms: dict[int, QC] = {int(m): c for m, c in (terms or {}).items() if c}

    @staticmethod
    def diag_ints(form: BilinearForm) -> np.ndarray:
        return np.round(form.diag)

    @classmethod
    def scalar(cls, form: BilinearForm, value: QC) -> "ExactMultivector":
        return cls(form, {0: value})

    def __add__(self, other: "ExactMultivector") -> "ExactMultivector":
        if self.form != other.form:
            raise FormMismatch("multivectors live over different forms")
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, QC()) + c
        return ExactMultivector(self.form, t)

    def __neg__(self) -> "ExactMultivector":
        return ExactMultivector(self.form, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "ExactMultivector") -> "ExactMultivector":
        return self + (-other)

    def __mul__(self, other: "ExactMultivector") -> "ExactMultivector":
        if self.form != other.form:
            raise FormMismatch("multivectors live over different forms")
        diag = [int(d) for d in self.diag_ints(self.form)]
        acc: dict[int, QC] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign = -1 if kernel.swap_parity(ma, mb) else 1
                common = ma & mb
                j = 0
                while common:
                    if common & 1:
                        sign *= diag[j]
                    common >>= 1
                    j += 1
                key = ma ^ mb
                add = ca * cb * QC(sign)
                acc[key] = acc.get(key, QC()) + add
        return ExactMultivector(self.form, acc)

    def reverse(self) -> "ExactMultivector":
        out = {}
        for m, c in self.terms.items():
            r = m.bit_count()
            out[m] = -c if ((r * (r - 1)) // 2) % 2 else c
        return ExactMultivector(self.form, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMultivector):
            return NotImplemented
        return self.form == other.form and self.terms == other.terms

    def to_float(self) -> Multivector:
        return Multivector(self.form, {m: complex(c) for m, c in self.terms.items()})
