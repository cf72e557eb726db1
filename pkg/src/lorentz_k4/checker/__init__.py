"""Static checker for reflection homogeneity of equations."""
from importlib import resources

from .check import POLYMORPHIC, Report, SymbolicCharge, Verdict, brute_force_check, check, solve_constraints, term_charge
from .parser import PRELUDE, UNKNOWN, Equation, Model, ParseError, Term, builtin_prelude, parse

__all__ = [
    "POLYMORPHIC",
    "PRELUDE",
    "UNKNOWN",
    "Equation",
    "Model",
    "ParseError",
    "Report",
    "SymbolicCharge",
    "Term",
    "Verdict",
    "brute_force_check",
    "builtin_prelude",
    "check",
    "check_source",
    "corpus_path",
    "parse",
    "solve_constraints",
    "term_charge",
]


def check_source(source: str, prelude: bool = False) -> Report:
    return check(parse(source, builtin_prelude() if prelude else None))


def corpus_path(name: str):
    """Path of a shipped ``.refl`` file, e.g. ``corpus_path("maxwell.refl")``."""
    return resources.files("lorentz_k4") / "corpus" / name
