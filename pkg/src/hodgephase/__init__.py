"""Exact Clifford-algebra kernel for Hodge-paired phase spaces.

Modules:

* :mod:`hodgephase.algebra` -- Cl(p,q) multivectors, products, duals
* :mod:`hodgephase.identities` -- Hodge relation and duality identity suites
* :mod:`hodgephase.phase_space` -- position/momentum pairing and commutation audit
* :mod:`hodgephase.spha` -- SPHA generators in Cl(4) / Cl(3,1)
* :mod:`hodgephase.dynamics` -- graded Hamiltonian flow, brackets, integrators
"""

from .algebra import (
    EXACT,
    BasisBlade,
    CoefficientMode,
    Multivector,
    Signature,
    anticommutator,
    blade_product,
    commutator,
    dot,
    geometric_inverse,
    geometric_product,
    grade_project,
    hodge_dual,
    inner,
    inverse,
    reversion,
    wedge,
)
from .textfmt import format_multivector, parse_multivector

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "BasisBlade",
    "CoefficientMode",
    "Multivector",
    "Signature",
    "anticommutator",
    "blade_product",
    "commutator",
    "dot",
    "format_multivector",
    "geometric_inverse",
    "geometric_product",
    "grade_project",
    "hodge_dual",
    "inner",
    "inverse",
    "parse_multivector",
    "reversion",
    "wedge",
]
