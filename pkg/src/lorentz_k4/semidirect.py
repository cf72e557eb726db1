"""O(1,3) as the semidirect product SO+(1,3) x| K4."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .k4 import K4Charge, irrep_sign
from .lorentz import MEMBERSHIP_ATOL, NotLorentzError, is_proper_orthochronous, outer_automorphism

__all__ = [
    "ExtendedElement",
    "psi",
    "compose",
    "inverse",
    "to_matrix",
    "from_matrix",
    "reflection_matrix",
    "act",
    "IDENTITY",
]

_FLIPS_BOOSTS = frozenset({K4Charge.P, K4Charge.T})

_D = {
    K4Charge.ONE: np.eye(4),
    K4Charge.P: np.diag([1.0, -1.0, -1.0, -1.0]),
    K4Charge.T: np.diag([-1.0, 1.0, 1.0, 1.0]),
    K4Charge.PT: -np.eye(4),
}


def reflection_matrix(kappa: K4Charge) -> np.ndarray:
    """Defining-representation matrix of a reflection."""
    return _D[K4Charge(kappa)].copy()


def psi(kappa: K4Charge, lam: np.ndarray) -> np.ndarray:
    """The automorphism of SO+(1,3) attached to ``kappa``."""
    if kappa in _FLIPS_BOOSTS:
        return outer_automorphism(lam)
    return np.asarray(lam, dtype=float)


@dataclass(frozen=True, eq=False)
class ExtendedElement:
    lam: np.ndarray
    kappa: K4Charge

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "kappa", K4Charge(self.kappa))

    def validate(self, atol: float = MEMBERSHIP_ATOL) -> "ExtendedElement":
        if not is_proper_orthochronous(self.lam, atol):
            raise NotLorentzError("Lorentz part must be proper orthochronous")
        return self

    def __mul__(self, other: "ExtendedElement") -> "ExtendedElement":
        return compose(self, other)

    def isclose(self, other: "ExtendedElement", atol: float = 1e-9) -> bool:
        return self.kappa == other.kappa and bool(
            np.allclose(self.lam, other.lam, atol=atol, rtol=0)
        )

    def __repr__(self) -> str:
        return f"ExtendedElement(kappa={self.kappa}, lam=\n{self.lam})"


IDENTITY = ExtendedElement(np.eye(4), K4Charge.ONE)


def compose(e2: ExtendedElement, e1: ExtendedElement) -> ExtendedElement:
    """``(L2, k2) . (L1, k1) = (L2 psi_k2(L1), k2 k1)``."""
    return ExtendedElement(e2.lam @ psi(e2.kappa, e1.lam), e2.kappa * e1.kappa)


def _lorentz_inverse(lam: np.ndarray) -> np.ndarray:
    g = _D[K4Charge.P]
    return g @ lam.T @ g


def inverse(e: ExtendedElement) -> ExtendedElement:
    return ExtendedElement(psi(e.kappa, _lorentz_inverse(e.lam)), e.kappa)


def to_matrix(e: ExtendedElement) -> np.ndarray:
    return e.lam @ _D[e.kappa]


def from_matrix(m: np.ndarray, atol: float = MEMBERSHIP_ATOL) -> ExtendedElement:
    """Inverse of :func:`to_matrix` on O(1,3)."""
    from .lorentz import component_of

    kappa = {"1": K4Charge.ONE, "R": K4Charge.P, "-R": K4Charge.T, "-1": K4Charge.PT}[
        component_of(m, atol)
    ]
    return ExtendedElement(np.asarray(m, dtype=float) @ _D[kappa], kappa)


def act(e: ExtendedElement, v):
    """Apply ``(lam, kappa)`` to a representation-typed tensor.

    The reflection acts first (defining matrix times the label's sign),
    then the Lorentz transform.
    """
    from .tensors import transform

    reflected = transform(v, _D[e.kappa], sign=irrep_sign(v.label, e.kappa))
    return transform(reflected, e.lam)
