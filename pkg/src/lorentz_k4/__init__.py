"""Computations with the full Lorentz group O(1,3) = SO+(1,3) x| K4."""
from .k4 import ChargeVector, K4Charge, charge_outer, irrep_sign, mul
from .semidirect import ExtendedElement, act, compose, inverse, to_matrix
from .tensors import RepTensor, VectorRepKind, apply_reflection, infer_charge

__all__ = [
    "ChargeVector",
    "ExtendedElement",
    "K4Charge",
    "RepTensor",
    "VectorRepKind",
    "act",
    "apply_reflection",
    "charge_outer",
    "compose",
    "infer_charge",
    "inverse",
    "irrep_sign",
    "mul",
    "to_matrix",
]

__version__ = "0.1.0"
