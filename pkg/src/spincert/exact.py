"""Exact complex-rational scalars (Gaussian rationals).

Coefficients for the exact multivector mode and for the polynomial Dirac
checks, where the squared-operator identity must hold as an equality rather
than to a tolerance.
"""

from __future__ import annotations

from fractions import Fraction


class QC:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def from_complex_unit(cls, z: complex, where: str = "") -> "QC":
        """Convert a float complex whose parts are (near-)integers.

        Gamma matrices from the tensor recursion have entries in {0, +-1, +-i};
        anything farther than 1e-9 from a Gaussian integer is rejected.
        """
        re, im = round(z.real), round(z.imag)
        if abs(z.real - re) > 1e-9 or abs(z.imag - im) > 1e-9:
            raise ValueError(f"entry {z!r} is not a Gaussian integer {where}")
        return cls(re, im)

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QC):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return float(self.re) + 1j * float(self.im)

    def __repr__(self) -> str:
        return f"QC({self.re}, {self.im})"


QC_ZERO = QC(0, 0)
QC_ONE = QC(1, 0)
