"""Reflection-homogeneity verdicts for parsed models."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from ..k4 import K4Charge
from . import gf2
from .parser import UNKNOWN, Equation, Model, Term

__all__ = [
    "SymbolicCharge",
    "POLYMORPHIC",
    "term_charge",
    "Verdict",
    "Report",
    "check",
    "solve_constraints",
]


class _Polymorphic:
    def __repr__(self) -> str:
        return "POLYMORPHIC"

    def __str__(self) -> str:
        return "*"


POLYMORPHIC = _Polymorphic()


@dataclass(frozen=True)
class SymbolicCharge:
    """``constant * prod(unknowns)``: an affine expression over GF(2)^2."""

    constant: K4Charge
    unknowns: frozenset[str] = frozenset()

    def __str__(self) -> str:
        parts = [str(self.constant)] + [f"K[{u}]" for u in sorted(self.unknowns)]
        return " * ".join(parts)


def term_charge(term: Term, env: Mapping[str, object]):
    """Charge of a product term.

    Zero is polymorphic; a term touching unknowns gives a
    :class:`SymbolicCharge` (unknowns appearing an even number of times
    cancel since every charge squares to 1).
    """
    if term.is_zero:
        return POLYMORPHIC
    constant = K4Charge.ONE
    odd: set[str] = set()
    touched = False
    for name in term.factors:
        c = env[name]
        if c is UNKNOWN:
            touched = True
            odd ^= {name}
        else:
            constant = constant * c
    if touched:
        return SymbolicCharge(constant, frozenset(odd))
    return constant


@dataclass
class Verdict:
    equation: str
    kind: str  # Homogeneous | Inhomogeneous | Unsatisfiable | SolvedWith
    charge: K4Charge | None = None
    conflict: list[K4Charge] = field(default_factory=list)
    assignments: list[dict[str, K4Charge]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.kind in ("Homogeneous", "SolvedWith")

    def to_dict(self) -> dict:
        d: dict = {"equation": self.equation, "verdict": self.kind}
        if self.kind == "Homogeneous":
            d["charge"] = None if self.charge is None else str(self.charge)
        elif self.kind == "Inhomogeneous":
            d["conflict"] = [str(c) for c in self.conflict]
        elif self.kind == "SolvedWith":
            d["assignments"] = [{k: str(v) for k, v in a.items()} for a in self.assignments]
        return d

    def __str__(self) -> str:
        if self.kind == "Homogeneous":
            return f"{self.equation}: Homogeneous({'*' if self.charge is None else self.charge})"
        if self.kind == "Inhomogeneous":
            return f"{self.equation}: Inhomogeneous({', '.join(str(c) for c in self.conflict)})"
        if self.kind == "SolvedWith":
            shown = "; ".join(
                ", ".join(f"{k}={v}" for k, v in a.items()) or "-" for a in self.assignments
            )
            return f"{self.equation}: SolvedWith({shown})"
        return f"{self.equation}: Unsatisfiable"


@dataclass
class Report:
    verdicts: list[Verdict]
    joint: list[dict[str, K4Charge]] | None = None  # None when no unknowns
    unknowns: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        joint_ok = not self.unknowns or bool(self.joint)
        return joint_ok and all(v.ok for v in self.verdicts)

    @property
    def charges(self) -> list:
        return [v.charge for v in self.verdicts]

    def to_dict(self) -> dict:
        d: dict = {"equations": [v.to_dict() for v in self.verdicts]}
        if self.unknowns:
            d["joint"] = {
                "verdict": "SolvedWith" if self.joint else "Unsatisfiable",
                "assignments": [{k: str(v) for k, v in a.items()} for a in self.joint or []],
            }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def render(self) -> str:
        lines = [str(v) for v in self.verdicts]
        if self.unknowns:
            if self.joint:
                lines.append(f"joint: SolvedWith {len(self.joint)} assignment(s) of {', '.join(self.unknowns)}")
            else:
                lines.append(f"joint: Unsatisfiable over {', '.join(self.unknowns)}")
        return "\n".join(lines)


def _constraints(eq: Equation, env: Mapping[str, object]) -> list:
    """Charges of the non-zero terms of ``eq``, source order."""
    return [c for c in (term_charge(t, env) for t in eq.terms) if c is not POLYMORPHIC]


def _lift(c) -> SymbolicCharge:
    return c if isinstance(c, SymbolicCharge) else SymbolicCharge(c)


def solve_constraints(charge_lists: Sequence[Sequence], unknowns: Sequence[str]) -> list[dict[str, K4Charge]]:
    """All assignments of ``unknowns`` making every list's charges equal.

    K4 is (Z/2)^2, so the P bits and T bits give two independent GF(2)
    systems sharing one coefficient matrix.
    """
    index = {u: k for k, u in enumerate(unknowns)}
    rows: list[int] = []
    rhs_p: list[int] = []
    rhs_t: list[int] = []
    for charges in charge_lists:
        lifted = [_lift(c) for c in charges]
        for other in lifted[1:]:
            first = lifted[0]
            row = 0
            for u in first.unknowns ^ other.unknowns:
                row ^= 1 << index[u]
            diff = first.constant * other.constant
            rows.append(row)
            rhs_p.append(diff.p_bit)
            rhs_t.append(diff.t_bit)
    n = len(unknowns)
    sol_p = gf2.solve(rows, rhs_p, n)
    sol_t = gf2.solve(rows, rhs_t, n)
    if sol_p is None or sol_t is None:
        return []
    out = []
    for xp in gf2.span(*sol_p):
        for xt in gf2.span(*sol_t):
            out.append(
                {u: K4Charge.from_bits(xp >> k & 1, xt >> k & 1) for u, k in index.items()}
            )
    out.sort(key=lambda a: tuple(int(a[u]) for u in unknowns))
    return out


def check(model: Model) -> Report:
    env = model.declarations
    verdicts = []
    all_eqs = []  # the joint system includes unknown-free equations too
    for eq in model.equations:
        charges = _constraints(eq, env)
        all_eqs.append(charges)
        symbolic = [c for c in charges if isinstance(c, SymbolicCharge)]
        if not symbolic:
            distinct = sorted(set(charges))
            if len(distinct) <= 1:
                verdicts.append(Verdict(eq.name, "Homogeneous", charge=distinct[0] if distinct else None))
            else:
                verdicts.append(Verdict(eq.name, "Inhomogeneous", conflict=list(charges)))
            continue
        names = sorted(set().union(*(c.unknowns for c in symbolic)) | {
            f for t in eq.terms for f in t.factors if env.get(f) is UNKNOWN
        })
        sols = solve_constraints([charges], names)
        if sols:
            verdicts.append(Verdict(eq.name, "SolvedWith", assignments=sols))
        else:
            verdicts.append(Verdict(eq.name, "Unsatisfiable"))
    unknowns = model.unknowns
    joint = solve_constraints(all_eqs, unknowns) if unknowns else None
    return Report(verdicts, joint, unknowns)


def brute_force_check(model: Model) -> list[tuple[str, object]]:
    """Exhaustive reference evaluator (exponential; small models only).

    Returns per-equation ``(kind, payload)`` pairs comparable with
    :func:`check`: payload is the charge, the conflict list, or the set of
    satisfying assignments.
    """
    env = model.declarations
    out = []
    for eq in model.equations:
        names = sorted({f for t in eq.terms for f in t.factors if env.get(f) is UNKNOWN})
        if not names:
            charges = []
            for t in eq.terms:
                if "0" in t.factors:
                    continue
                c = K4Charge.ONE
                for f in t.factors:
                    c = c * env[f]
                charges.append(c)
            if len(set(charges)) <= 1:
                out.append(("Homogeneous", charges[0] if charges else None))
            else:
                out.append(("Inhomogeneous", charges))
            continue
        good = []
        for combo in itertools.product(K4Charge, repeat=len(names)):
            a = dict(zip(names, combo))
            local = {**env, **a}
            charges = set()
            for t in eq.terms:
                if "0" in t.factors:
                    continue
                c = K4Charge.ONE
                for f in t.factors:
                    c = c * local[f]
                charges.add(c)
            if len(charges) <= 1:
                good.append(a)
        out.append(("SolvedWith", good) if good else ("Unsatisfiable", None))
    return out
