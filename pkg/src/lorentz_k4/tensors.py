"""Representation-typed Lorentzian tensors.

A :class:`RepTensor` is a dense real tensor over four-dimensional spacetime
with a variance flag per index and a single K4 quartet label.  The label
records how the tensor's true parity/time-reversal action differs in sign
from naively applying the defining reflection matrices to every index.
"""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .k4 import COORDINATE_CHARGES, ChargeVector, K4Charge, fold, irrep_sign
from .lorentz import METRIC
from .semidirect import reflection_matrix

__all__ = [
    "UP",
    "DOWN",
    "RepTensor",
    "TensorError",
    "VectorRepKind",
    "scalar",
    "vector",
    "transform",
    "tensor_product",
    "contract",
    "raise_lower",
    "apply_reflection",
    "enumerate_consistent_vector_reps",
    "reflection_operator",
    "angular_momentum",
    "angular_momentum_parts",
    "faraday",
    "faraday_fields",
    "malament_identity_check",
    "levi_civita",
    "metric",
    "pauli_lubanski",
    "pauli_lubanski_components",
    "observer_fields",
    "infer_charge",
    "derived_quartet_table",
    "QUARTET_LABELS",
]

UP = "up"
DOWN = "down"
MAX_RANK = 8
NORMALIZATION_ATOL = 1e-9


class TensorError(ValueError):
    pass


def _as_charge(c) -> K4Charge:
    return c if isinstance(c, K4Charge) else K4Charge.parse(c)


@dataclass(frozen=True, eq=False)
class RepTensor:
    components: np.ndarray
    variance: tuple[str, ...]
    label: K4Charge = K4Charge.ONE
    rep_name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        comps = np.array(self.components, dtype=float)
        variance = tuple(self.variance)
        if len(variance) > MAX_RANK:
            raise TensorError(f"rank {len(variance)} exceeds cap {MAX_RANK}")
        if comps.shape != (4,) * len(variance):
            raise TensorError(
                f"components shape {comps.shape} does not match rank {len(variance)}"
            )
        bad = [v for v in variance if v not in (UP, DOWN)]
        if bad:
            raise TensorError(f"variance flags must be 'up'/'down', got {bad}")
        comps.setflags(write=False)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "variance", variance)
        object.__setattr__(self, "label", _as_charge(self.label))

    @property
    def rank(self) -> int:
        return len(self.variance)

    def with_components(self, components) -> "RepTensor":
        return RepTensor(components, self.variance, self.label, self.rep_name)

    def isclose(self, other: "RepTensor", atol: float = 1e-9) -> bool:
        return (
            self.variance == other.variance
            and self.label == other.label
            and bool(np.allclose(self.components, other.components, atol=atol, rtol=0))
        )

    def to_dict(self) -> dict:
        d = {
            "rank": self.rank,
            "variance": list(self.variance),
            "label": str(self.label),
            "components": [float(x) for x in self.components.ravel(order="C")],
        }
        if self.rep_name is not None:
            d["rep_name"] = self.rep_name
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RepTensor":
        rank = int(d["rank"])
        variance = tuple(d["variance"])
        if len(variance) != rank:
            raise TensorError("variance length does not match rank")
        comps = np.asarray(d["components"], dtype=float)
        if comps.size != 4**rank:
            raise TensorError(f"expected {4**rank} components, got {comps.size}")
        return cls(comps.reshape((4,) * rank), variance, K4Charge.parse(d["label"]), d.get("rep_name"))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "RepTensor":
        return cls.from_dict(json.loads(text))


def scalar(value: float, label=K4Charge.ONE) -> RepTensor:
    return RepTensor(np.asarray(float(value)), (), label)


class VectorRepKind(enum.Enum):
    """The four consistent four-vector types and their quartet labels."""

    COORDINATE = ("c", K4Charge.ONE)
    MOMENTUM = ("m", K4Charge.T)
    AXIAL = ("a", K4Charge.PT)
    POLARIZATION = ("p", K4Charge.P)

    @property
    def short(self) -> str:
        return self.value[0]

    @property
    def quartet_label(self) -> K4Charge:
        return self.value[1]

    @property
    def sign_pair(self) -> tuple[int, int]:
        """Sign of (P, T) relative to the defining operators."""
        lab = self.quartet_label
        return irrep_sign(lab, K4Charge.P), irrep_sign(lab, K4Charge.T)

    @property
    def charges(self) -> ChargeVector:
        return COORDINATE_CHARGES.twist(self.quartet_label)

    @classmethod
    def from_label(cls, label: K4Charge) -> "VectorRepKind":
        for kind in cls:
            if kind.quartet_label == label:
                return kind
        raise ValueError(label)

    @classmethod
    def parse(cls, text: str) -> "VectorRepKind":
        for kind in cls:
            if text in (kind.short, kind.name.lower()):
                return kind
        raise ValueError(f"unknown vector kind {text!r}")


def vector(components, kind: VectorRepKind | K4Charge = VectorRepKind.COORDINATE, variance: str = UP) -> RepTensor:
    label = kind.quartet_label if isinstance(kind, VectorRepKind) else _as_charge(kind)
    return RepTensor(np.asarray(components, dtype=float).reshape(4), (variance,), label)


def _apply_on_axis(comps: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    moved = np.tensordot(mat, comps, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def transform(t: RepTensor, m: np.ndarray, sign: int = 1) -> RepTensor:
    """Apply ``m`` to every upper index and ``m^-T`` to every lower one."""
    m = np.asarray(m, dtype=float)
    comps = t.components
    cov = None
    for axis, var in enumerate(t.variance):
        if var == UP:
            comps = _apply_on_axis(comps, m, axis)
        else:
            if cov is None:
                cov = np.linalg.inv(m).T
            comps = _apply_on_axis(comps, cov, axis)
    return t.with_components(sign * comps)


def tensor_product(a: RepTensor, b: RepTensor) -> RepTensor:
    return RepTensor(
        np.multiply.outer(a.components, b.components),
        a.variance + b.variance,
        a.label * b.label,
    )


def contract(t: RepTensor, i: int, j: int) -> RepTensor:
    """Einstein sum over an upper/lower index pair."""
    n = t.rank
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise TensorError(f"bad index pair ({i}, {j}) for rank {n}")
    if t.variance[i] == t.variance[j]:
        raise TensorError("contraction needs one upper and one lower index; raise or lower first")
    comps = np.trace(t.components, axis1=i, axis2=j)
    variance = tuple(v for k, v in enumerate(t.variance) if k not in (i, j))
    return RepTensor(comps, variance, t.label)


def raise_lower(t: RepTensor, i: int) -> RepTensor:
    """Flip the variance of index ``i`` with the metric (a 1-type tensor)."""
    if not 0 <= i < t.rank:
        raise TensorError(f"index {i} out of range for rank {t.rank}")
    # g_{ab} and g^{ab} have the same components in this signature
    comps = _apply_on_axis(t.components, METRIC, i)
    variance = list(t.variance)
    variance[i] = DOWN if variance[i] == UP else UP
    return RepTensor(comps, tuple(variance), t.label, t.rep_name)


def _with_all(t: RepTensor, var: str) -> RepTensor:
    for i, v in enumerate(t.variance):
        if v != var:
            t = raise_lower(t, i)
    return t


def apply_reflection(t: RepTensor, r) -> RepTensor:
    """True action of reflection ``r`` (P, T or PT) on ``t``."""
    r = _as_charge(r)
    if r == K4Charge.ONE:
        return t
    return transform(t, reflection_matrix(r), sign=irrep_sign(t.label, r))


def enumerate_consistent_vector_reps() -> list[ChargeVector]:
    """All per-component charge patterns that every observer agrees on.

    Brute force over the 256 assignments (A, B, C, D): rotations force equal
    spatial charges, boosts (rapidity charged PT) force ``B * PT == A``.
    """
    survivors = [
        ChargeVector(c)
        for c in itertools.product(K4Charge, repeat=4)
        if c[1] == c[2] == c[3] and c[1] * K4Charge.PT == c[0]
    ]
    order = [kind.charges for kind in VectorRepKind]
    return sorted(survivors, key=order.index)


def reflection_operator(kind: VectorRepKind, r) -> np.ndarray:
    r = _as_charge(r)
    return irrep_sign(kind.quartet_label, r) * reflection_matrix(r)


def derived_quartet_table(rng: np.random.Generator | None = None) -> dict[tuple[VectorRepKind, VectorRepKind], K4Charge]:
    """Label of each product of two vector kinds, read off numerically.

    The correct action on ``a (x) b`` is the kind-specific operator on each
    index; comparing with the defining operators gives the sign pair.
    """
    rng = rng or np.random.default_rng(0)
    table = {}
    for ka, kb in itertools.product(VectorRepKind, repeat=2):
        va, vb = rng.normal(size=4), rng.normal(size=4)
        signs = []
        for r in (K4Charge.P, K4Charge.T):
            true = np.outer(reflection_operator(ka, r) @ va, reflection_operator(kb, r) @ vb)
            d = reflection_matrix(r)
            naive = d @ np.outer(va, vb) @ d.T
            signs.append(int(np.sign(np.sum(true * naive))))
        p_sign, t_sign = signs
        table[ka, kb] = K4Charge.from_bits(p_sign < 0, t_sign < 0)
    return table


def _antisym_from_vectors(first_row, triple) -> np.ndarray:
    """Matrix with ``first_row`` in row 0 and ``triple`` in the
    (23, 31, 12) slots: entries (1,2)=t_z, (1,3)=-t_y, (2,3)=t_x."""
    a, (tx, ty, tz) = np.asarray(first_row, dtype=float), triple
    m = np.zeros((4, 4))
    m[0, 1:] = a
    m[1:, 0] = -a
    m[1, 2], m[2, 1] = tz, -tz
    m[1, 3], m[3, 1] = -ty, ty
    m[2, 3], m[3, 2] = tx, -tx
    return m


def _check_antisym_T(t: RepTensor, what: str) -> None:
    if t.rank != 2 or t.variance != (UP, UP):
        raise TensorError(f"{what} must be a rank-2 contravariant tensor")
    if t.label != K4Charge.T:
        raise TensorError(f"{what} must carry quartet label T, got {t.label}")
    if not np.allclose(t.components, -t.components.T, atol=1e-12, rtol=0):
        raise TensorError(f"{what} must be antisymmetric")


def _check_vector(t: RepTensor, label: K4Charge, what: str) -> RepTensor:
    if t.rank != 1:
        raise TensorError(f"{what} must be a vector")
    if t.label != label:
        raise TensorError(f"{what} must carry quartet label {label}, got {t.label}")
    return _with_all(t, UP)


def angular_momentum(x: RepTensor, p: RepTensor) -> RepTensor:
    """``M^{ab} = x^a p^b - x^b p^a`` for coordinate x and momentum p."""
    x = _check_vector(x, K4Charge.ONE, "x")
    p = _check_vector(p, K4Charge.T, "p")
    xp = tensor_product(x, p)
    comps = xp.components - xp.components.T
    return RepTensor(comps, (UP, UP), xp.label, "(1,0)⊕(0,1)")


def angular_momentum_parts(m: RepTensor) -> tuple[np.ndarray, np.ndarray]:
    """(N, J) of ``M(N, J)``."""
    c = m.components
    return c[0, 1:].copy(), np.array([c[2, 3], -c[1, 3], c[1, 2]])


def faraday(e, b) -> RepTensor:
    """``F^{mu nu}(E, B)``: -E in row 0, B in the spatial block."""
    bx, by, bz = np.asarray(b, dtype=float)
    comps = _antisym_from_vectors(-np.asarray(e, dtype=float), (-bx, -by, -bz))
    return RepTensor(comps, (UP, UP), K4Charge.T, "(1,0)⊕(0,1)")


def faraday_fields(f: RepTensor) -> tuple[np.ndarray, np.ndarray]:
    c = f.components
    return -c[0, 1:].copy(), np.array([-c[2, 3], c[1, 3], -c[1, 2]])


def malament_identity_check(f: RepTensor) -> bool:
    """Time reversal of F equals minus its defining parity conjugate."""
    _check_antisym_T(f, "F")
    lhs = apply_reflection(f, K4Charge.T).components
    p = reflection_matrix(K4Charge.P)
    rhs = -(p @ f.components @ p.T)
    return bool(np.array_equal(lhs, rhs))


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def levi_civita() -> RepTensor:
    """All-lower epsilon with ``eps_{0123} = +1``; quartet label PT."""
    comps = np.zeros((4,) * 4)
    for perm in itertools.permutations(range(4)):
        comps[perm] = _permutation_sign(perm)
    return RepTensor(comps, (DOWN,) * 4, K4Charge.PT)


def metric() -> RepTensor:
    return RepTensor(METRIC, (DOWN, DOWN), K4Charge.ONE)


def pauli_lubanski(m: RepTensor, p: RepTensor) -> RepTensor:
    """``W_mu = 1/2 eps_{mu nu sigma rho} M^{nu sigma} p^rho`` (lower index)."""
    _check_antisym_T(m, "M")
    p = _check_vector(p, K4Charge.T, "p")
    t = tensor_product(tensor_product(levi_civita(), m), p)
    # indices: eps 0..3, M 4..5, p 6
    t = contract(t, 1, 4)  # -> eps0 eps2 eps3 M5 p6
    t = contract(t, 1, 3)  # -> eps0 eps3 p6
    t = contract(t, 1, 2)  # -> eps0
    return RepTensor(0.5 * t.components, t.variance, t.label)


def pauli_lubanski_components(n, j, energy: float, p3) -> np.ndarray:
    """Closed form ``(J.p, E J - p x N)`` of the contravariant W."""
    n, j, p3 = (np.asarray(v, dtype=float) for v in (n, j, p3))
    return np.concatenate([[j @ p3], energy * j - np.cross(p3, n)])


def observer_fields(f: RepTensor, u: RepTensor) -> tuple[RepTensor, RepTensor]:
    """Electric and magnetic four-vectors seen by an observer of velocity u.

    ``E^mu = F^{mu nu} u_nu`` and ``B^mu = Ftilde^{mu nu} u_nu`` where the
    dual uses the upper epsilon normalized to ``eps^{0123} = +1``, so the rest
    frame gives ``(0, E)`` and ``(0, B)``.
    """
    _check_antisym_T(f, "F")
    u_up = _check_vector(u, K4Charge.T, "u")
    norm = float(u_up.components @ METRIC @ u_up.components)
    if abs(norm - 1.0) > NORMALIZATION_ATOL:
        raise TensorError(f"observer velocity must satisfy u.u = 1, got {norm}")
    u_down = raise_lower(u_up, 0)

    e = contract(tensor_product(f, u_down), 1, 2)
    e = RepTensor(e.components, e.variance, e.label, "(1/2,1/2)")

    eps_up = _with_all(levi_civita(), UP)
    f_down = _with_all(f, DOWN)
    t = tensor_product(tensor_product(eps_up, f_down), u_down)
    # indices: eps 0..3, F 4..5, u 6
    t = contract(t, 2, 4)  # -> eps0 eps1 eps3 F5 u6
    t = contract(t, 2, 3)  # -> eps0 eps1 u6
    t = contract(t, 1, 2)  # -> eps0
    # eps^{0123} = det(g) eps_{0123} = -1, hence the overall minus
    b = RepTensor(-0.5 * t.components, t.variance, t.label, "(1/2,1/2)")
    return e, b


def infer_charge(labels: Iterable) -> K4Charge:
    return fold(_as_charge(c) for c in labels)


# quartet labels of named objects, used for ad-hoc charge inference
QUARTET_LABELS: dict[str, K4Charge] = {
    "mu": K4Charge.ONE,
    "e": K4Charge.ONE,
    "theta": K4Charge.ONE,
    "omega": K4Charge.PT,
    "ddtau": K4Charge.T,
    "x": K4Charge.ONE,
    "X": K4Charge.ONE,
    "g": K4Charge.ONE,
    "p": K4Charge.T,
    "u": K4Charge.T,
    "A": K4Charge.T,
    "M": K4Charge.T,
    "F": K4Charge.T,
    "eps": K4Charge.PT,
    "W": K4Charge.PT,
    "Eobs": K4Charge.ONE,
    "Bobs": K4Charge.PT,
}
