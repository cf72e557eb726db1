"""Gaussian elimination over GF(2) with rows packed into ints."""
from __future__ import annotations

from typing import Iterator, Sequence


def solve(rows: Sequence[int], rhs: Sequence[int], nvars: int) -> tuple[int, list[int]] | None:
    """Solve ``A x = b``; bit ``k`` of a row is the coefficient of ``x_k``.

    Returns ``(particular, nullspace_basis)`` or ``None`` if inconsistent.
    """
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, row, rhs)
    for row, b in zip(rows, rhs):
        b &= 1
        for bit, prow, pb in pivots:
            if row >> bit & 1:
                row ^= prow
                b ^= pb
        if row == 0:
            if b:
                return None
            continue
        bit = row.bit_length() - 1
        # keep the basis fully reduced
        reduced = []
        for obit, orow, ob in pivots:
            if orow >> bit & 1:
                orow ^= row
                ob ^= b
            reduced.append((obit, orow, ob))
        pivots = reduced + [(bit, row, b)]

    particular = 0
    for bit, _, b in pivots:
        if b:
            particular |= 1 << bit
    pivot_bits = {bit for bit, _, _ in pivots}
    basis = []
    for free in range(nvars):
        if free in pivot_bits:
            continue
        vec = 1 << free
        for bit, row, _ in pivots:
            if row >> free & 1:
                vec |= 1 << bit
        basis.append(vec)
    return particular, basis


def span(particular: int, basis: Sequence[int]) -> Iterator[int]:
    """Every point of the affine space ``particular + span(basis)``."""
    for mask in range(1 << len(basis)):
        x = particular
        for i, v in enumerate(basis):
            if mask >> i & 1:
                x ^= v
        yield x
