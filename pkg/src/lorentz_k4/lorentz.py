"""Concrete 4x4 realization of SO+(1,3) and its reflections.

Index 0 is time and the metric is ``diag(+1, -1, -1, -1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

__all__ = [
    "METRIC",
    "REFLECTION",
    "PARITY_DEF",
    "TIME_DEF",
    "NotLorentzError",
    "AlgebraElement",
    "generator",
    "commutator",
    "expm",
    "boost",
    "rotation",
    "is_lorentz",
    "is_proper_orthochronous",
    "component_of",
    "polar_decompose",
    "outer_automorphism",
    "algebra_automorphism_matrix",
    "MEMBERSHIP_ATOL",
]

MEMBERSHIP_ATOL = 1e-9
MAX_RAPIDITY = 20.0

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
REFLECTION = METRIC.copy()  # the matrix R of the four-component picture
PARITY_DEF = REFLECTION
TIME_DEF = -REFLECTION

_EPS3 = np.zeros((3, 3, 3))
_EPS3[0, 1, 2] = _EPS3[1, 2, 0] = _EPS3[2, 0, 1] = 1.0
_EPS3[0, 2, 1] = _EPS3[2, 1, 0] = _EPS3[1, 0, 2] = -1.0


class NotLorentzError(ValueError):
    pass


def _boost_generator(i: int) -> np.ndarray:
    k = np.zeros((4, 4))
    k[0, i + 1] = k[i + 1, 0] = 1.0
    return k


def _rotation_generator(i: int) -> np.ndarray:
    l = np.zeros((4, 4))
    l[1:, 1:] = -_EPS3[i]
    return l


_K = tuple(_boost_generator(i) for i in range(3))
_L = tuple(_rotation_generator(i) for i in range(3))


def generator(kind: Literal["boost", "rotation"], axis: int) -> np.ndarray:
    """Basis generator K_axis or L_axis, with axis in 1..3."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis!r}")
    if kind == "boost":
        return _K[axis - 1].copy()
    if kind == "rotation":
        return _L[axis - 1].copy()
    raise ValueError(f"unknown generator kind {kind!r}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class AlgebraElement:
    """Element ``omega . K + theta . L`` of the Lorentz Lie algebra."""

    rapidity: tuple[float, float, float]
    angle: tuple[float, float, float]

    @classmethod
    def from_coords(cls, coords) -> "AlgebraElement":
        c = [float(x) for x in coords]
        if len(c) != 6:
            raise ValueError("expected six coordinates (boost x3, rotation x3)")
        return cls(tuple(c[:3]), tuple(c[3:]))

    @classmethod
    def from_matrix(cls, m: np.ndarray, atol: float = 1e-12) -> "AlgebraElement":
        m = np.asarray(m, dtype=float)
        omega = m[0, 1:]
        theta = np.array([m[3, 2], m[1, 3], m[2, 1]])
        out = cls(tuple(omega), tuple(theta))
        if not np.allclose(out.matrix, m, atol=atol, rtol=0):
            raise ValueError("matrix is not in the Lorentz algebra")
        return out

    @property
    def coords(self) -> np.ndarray:
        return np.array(self.rapidity + self.angle)

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        for w, k in zip(self.rapidity, _K):
            m += w * k
        for a, l in zip(self.angle, _L):
            m += a * l
        return m

    def exp(self) -> np.ndarray:
        return expm(self.matrix)


def expm(a: np.ndarray, tail: float = 1e-16) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core."""
    a = np.asarray(a, dtype=float)
    norm = np.max(np.sum(np.abs(a), axis=1)) if a.size else 0.0
    squarings = max(0, int(np.ceil(np.log2(norm / 0.5)))) if norm > 0.5 else 0
    x = a / (2.0**squarings)
    result = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    k = 1
    while True:
        term = term @ x / k
        result = result + term
        if np.max(np.abs(term)) <= tail * np.max(np.abs(result)) or k > 60:
            break
        k += 1
    for _ in range(squarings):
        result = result @ result
    return result


def boost(rapidity) -> np.ndarray:
    w = np.asarray(rapidity, dtype=float).reshape(3)
    if not np.all(np.isfinite(w)):
        raise ValueError("rapidity must be finite")
    return AlgebraElement(tuple(w), (0.0, 0.0, 0.0)).exp()


def rotation(axis_angle) -> np.ndarray:
    t = np.asarray(axis_angle, dtype=float).reshape(3)
    if not np.all(np.isfinite(t)):
        raise ValueError("axis-angle must be finite")
    return AlgebraElement((0.0, 0.0, 0.0), tuple(t)).exp()


def metric_defect(m: np.ndarray) -> float:
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m.T @ METRIC @ m - METRIC)))


def is_lorentz(m: np.ndarray, atol: float = MEMBERSHIP_ATOL) -> bool:
    m = np.asarray(m, dtype=float)
    return m.shape == (4, 4) and metric_defect(m) < atol


def component_of(m: np.ndarray, atol: float = MEMBERSHIP_ATOL) -> str:
    """Connected component tag: ``"1"``, ``"R"``, ``"-R"`` or ``"-1"``.

    ``R = diag(1, -1, -1, -1)``; the tag names the component's
    representative diagonal matrix.
    """
    m = np.asarray(m, dtype=float)
    if not is_lorentz(m, atol):
        raise NotLorentzError(f"metric condition violated by {metric_defect(m):.3e}")
    proper = np.linalg.det(m) > 0
    orthochronous = m[0, 0] > 0
    return {
        (True, True): "1",
        (False, True): "R",
        (False, False): "-R",
        (True, False): "-1",
    }[(bool(proper), bool(orthochronous))]


def is_proper_orthochronous(m: np.ndarray, atol: float = MEMBERSHIP_ATOL) -> bool:
    try:
        return component_of(m, atol) == "1"
    except NotLorentzError:
        return False


def polar_decompose(lam: np.ndarray, atol: float = MEMBERSHIP_ATOL) -> tuple[np.ndarray, np.ndarray]:
    """Split ``lam = R @ B`` into a spatial rotation R and a pure boost B.

    B is the symmetric positive-definite square root of ``lam.T @ lam``.
    Since R fixes the time axis, row 0 of ``lam`` equals row 0 of B, which
    determines B in closed form without squaring the condition number.
    """
    lam = np.asarray(lam, dtype=float)
    if not is_proper_orthochronous(lam, atol):
        raise NotLorentzError("polar decomposition needs a proper orthochronous matrix")
    gamma = lam[0, 0]
    u = lam[0, 1:]  # gamma * beta
    b = np.empty((4, 4))
    b[0, 0] = gamma
    b[0, 1:] = b[1:, 0] = u
    b[1:, 1:] = np.eye(3) + np.outer(u, u) / (1.0 + gamma)
    # inverse of a Lorentz matrix is g B^T g
    r = lam @ (METRIC @ b @ METRIC)
    return r, b


def outer_automorphism(lam: np.ndarray) -> np.ndarray:
    """Boost-reflecting automorphism: conjugation by R."""
    return REFLECTION @ np.asarray(lam, dtype=float) @ REFLECTION


def algebra_automorphism_matrix() -> np.ndarray:
    """Action of the outer automorphism on the basis (K1, K2, K3, L1, L2, L3)."""
    basis = [*_K, *_L]
    cols = [AlgebraElement.from_matrix(outer_automorphism(b)).coords for b in basis]
    return np.array(cols).T
