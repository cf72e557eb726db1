"""Klein four group arithmetic.

Elements double as labels of the four one-dimensional irreps, so a single
type covers both group elements and reflection charges.
"""
from __future__ import annotations

import enum
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "K4Charge",
    "ChargeVector",
    "mul",
    "irrep_sign",
    "charge_outer",
    "character_table",
    "multiplication_table",
    "COORDINATE_CHARGES",
]


class K4Charge(enum.IntEnum):
    """An element of K4 stored as ``p_bit | t_bit << 1``."""

    ONE = 0
    P = 1
    T = 2
    PT = 3

    @property
    def p_bit(self) -> int:
        return int(self) & 1

    @property
    def t_bit(self) -> int:
        return (int(self) >> 1) & 1

    @classmethod
    def from_bits(cls, p_bit: int, t_bit: int) -> "K4Charge":
        return cls((p_bit & 1) | ((t_bit & 1) << 1))

    @classmethod
    def parse(cls, text: str) -> "K4Charge":
        try:
            return _BY_NAME[text.strip()]
        except KeyError:
            raise ValueError(f"not a K4 charge: {text!r}") from None

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, K4Charge):
            return NotImplemented
        return K4Charge(int(self) ^ int(other))

    __rmul__ = __mul__

    def inverse(self) -> "K4Charge":
        return self

    @property
    def display(self) -> str:
        return _NAMES[self]

    def __str__(self) -> str:
        return _NAMES[self]

    def __repr__(self) -> str:
        return f"K4Charge({_NAMES[self]})"


_NAMES = {K4Charge.ONE: "1", K4Charge.P: "P", K4Charge.T: "T", K4Charge.PT: "PT"}
_BY_NAME = {v: k for k, v in _NAMES.items()}

# Tab. I ordering of rows and columns
TABLE_ORDER = (K4Charge.ONE, K4Charge.T, K4Charge.P, K4Charge.PT)
ELEMENT_ORDER = (K4Charge.ONE, K4Charge.P, K4Charge.T, K4Charge.PT)


def mul(a: K4Charge, b: K4Charge) -> K4Charge:
    return a * b


def irrep_sign(rep: K4Charge, g: K4Charge) -> int:
    """Value of the one-dimensional irrep labelled ``rep`` at element ``g``."""
    overlap = (rep.p_bit & g.p_bit) ^ (rep.t_bit & g.t_bit)
    return -1 if overlap else 1


def fold(charges: Iterable[K4Charge]) -> K4Charge:
    return reduce(mul, charges, K4Charge.ONE)


class ChargeVector(tuple):
    """Per-component charges of a tensor component slot list."""

    def __new__(cls, entries: Iterable[K4Charge | str]):
        items = [e if isinstance(e, K4Charge) else K4Charge.parse(e) for e in entries]
        return super().__new__(cls, items)

    def twist(self, c: K4Charge) -> "ChargeVector":
        return ChargeVector(e * c for e in self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self) + ")"


COORDINATE_CHARGES = ChargeVector([K4Charge.T, K4Charge.P, K4Charge.P, K4Charge.P])


def charge_outer(a: Sequence[K4Charge], b: Sequence[K4Charge]) -> np.ndarray:
    """Rank-2 object array with entry (i, j) = a_i * b_j."""
    out = np.empty((len(a), len(b)), dtype=object)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i, j] = ai * bj
    return out


def character_table() -> list[list[int]]:
    """Rows rho_1, rho_T, rho_P, rho_PT; columns 1, P, T, PT."""
    return [[irrep_sign(r, g) for g in ELEMENT_ORDER] for r in TABLE_ORDER]


def multiplication_table() -> list[list[K4Charge]]:
    return [[a * b for b in ELEMENT_ORDER] for a in ELEMENT_ORDER]
