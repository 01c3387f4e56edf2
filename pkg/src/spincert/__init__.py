"""spincert: algebraic verification suite for spinor representations.

Exact Clifford arithmetic, gamma-matrix construction and certification,
rotor lifting with double-cover monodromy, universal factorization checks
for rotation- and symplectic-compatible representations, and Dirac/Weyl
operator identities, all driven by a deterministic seeded CLI.
"""

from .clifford import BilinearForm, ExactMultivector, Multivector, blade_mul, mv_grades, mv_mul, mv_reverse
from .kernel import backend

__version__ = "0.1.0"

__all__ = [
    "BilinearForm",
    "ExactMultivector",
    "Multivector",
    "backend",
    "blade_mul",
    "mv_grades",
    "mv_mul",
    "mv_reverse",
    "__version__",
]
