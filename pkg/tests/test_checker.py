import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lorentz_k4.checker import (
    POLYMORPHIC,
    UNKNOWN,
    ParseError,
    SymbolicCharge,
    Term,
    brute_force_check,
    check,
    check_source,
    corpus_path,
    parse,
    term_charge,
)
from lorentz_k4.checker import gf2
from lorentz_k4.k4 import K4Charge

ONE, P, T, PT = K4Charge.ONE, K4Charge.P, K4Charge.T, K4Charge.PT
CHARGE_TEXT = {ONE: "1", P: "P", T: "T", PT: "PT"}


def shipped(name):
    return corpus_path(name).read_text()


# ---- parser ---------------------------------------------------------------


def test_parse_basic():
    m = parse("charge a = P\ncharge b = ?  # unknown\n\neq e1 : a*b = -a + 0\n")
    assert m.declarations == {"a": P, "b": UNKNOWN}
    assert m.unknowns == ["b"]
    (eq,) = m.equations
    assert eq.name == "e1" and eq.line == 4
    assert eq.lhs == (Term(("a", "b"), 1),)
    assert eq.rhs == (Term(("a",), -1), Term(("0",), 1))


def test_parse_all_charges():
    m = parse("charge a = 1\ncharge b = P\ncharge c = T\ncharge d = PT\n")
    assert list(m.declarations.values()) == [ONE, P, T, PT]


@pytest.mark.parametrize(
    "source,line,col",
    [
        ("charge a = Q\n", 1, 12),
        ("charge a = P\neq e : a = b\n", 2, 12),
        ("charge a P\n", 1, 10),
        ("charge a = P\neq e : a = \n", 2, 11),
        ("charge a = P\neq e : a = a a\n", 2, 14),
        ("charge a = P\ncharge a = T\n", 2, 8),
        ("charge a = P\neq e : a = a\neq e : a = a\n", 3, 4),
        ("wibble\n", 1, 1),
        ("charge a = P\neq e : a = 2\n", 2, 12),
        ("charge a = P\neq e : a = a / a\n", 2, 14),
    ],
)
def test_parse_errors_carry_position(source, line, col):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}:")


def test_undeclared_symbol_may_be_declared_later():
    m = parse("eq e : a = a\ncharge a = T\n")
    assert m.declarations["a"] == T


def test_prelude_and_override():
    m = parse("eq e : E = B\n", {"E": P, "B": T})
    assert check(m).verdicts[0].kind == "Inhomogeneous"
    m = parse("charge B = P\neq e : E = B\n", {"E": P, "B": T})
    assert check(m).verdicts[0].kind == "Homogeneous"
    r = check_source("eq gauss : grad*E = rho\n", prelude=True)
    assert r.charges == [ONE]
    with pytest.raises(ParseError):
        check_source("eq gauss : grad*E = rho\n")


def test_term_charge_examples():
    env = {"ddt": T, "B": T, "grad": P, "E": P, "u": UNKNOWN}
    assert term_charge(Term(("ddt", "B")), env) == ONE
    assert term_charge(Term(("grad", "E")), env) == ONE
    assert term_charge(Term(("0",)), env) is POLYMORPHIC
    assert term_charge(Term(("E", "0")), env) is POLYMORPHIC
    assert term_charge(Term(("ddt", "u")), env) == SymbolicCharge(T, frozenset({"u"}))
    assert term_charge(Term(("u", "u", "E")), env) == SymbolicCharge(P, frozenset())


# ---- verdicts -------------------------------------------------------------


def test_shipped_maxwell():
    r = check(parse(shipped("maxwell.refl")))
    assert [v.kind for v in r.verdicts] == ["Homogeneous"] * 4
    assert r.charges == [ONE, PT, ONE, PT]
    assert r.ok and r.joint is None


def test_shipped_heat_is_unsatisfiable():
    r = check(parse(shipped("heat.refl")))
    assert [v.kind for v in r.verdicts] == ["Unsatisfiable"]
    assert r.joint == [] and not r.ok


def test_shipped_empty():
    r = check(parse(shipped("empty.refl")))
    assert r.verdicts == [] and r.ok


def test_trivial_and_zero_equations():
    r = check_source("charge rho = 1\neq triv : rho = rho\neq z : 0 = 0\n")
    assert str(r.verdicts[0]) == "triv: Homogeneous(1)"
    assert r.verdicts[1].kind == "Homogeneous" and r.verdicts[1].charge is None


def test_inhomogeneous_reports_conflict():
    r = check_source("charge a = P\ncharge b = T\neq bad : a = b + 0\n")
    v = r.verdicts[0]
    assert v.kind == "Inhomogeneous" and v.conflict == [P, T]
    assert v.to_dict() == {"equation": "bad", "verdict": "Inhomogeneous", "conflict": ["P", "T"]}


def test_solved_with_unique_assignment():
    r = check_source("charge grad = P\ncharge x = ?\ncharge one = 1\neq e : grad*x = one\n")
    v = r.verdicts[0]
    assert v.kind == "SolvedWith" and v.assignments == [{"x": P}]
    assert r.joint == [{"x": P}]


def test_underdetermined_enumerates_all():
    r = check_source("charge a = ?\ncharge b = ?\neq e : a = b\n")
    assert len(r.verdicts[0].assignments) == 4
    assert all(s["a"] == s["b"] for s in r.verdicts[0].assignments)


def test_joint_can_fail_when_each_equation_passes():
    src = "charge u = ?\ncharge p = P\ncharge t = T\neq a : u = p\neq b : u = t\n"
    r = check_source(src)
    assert [v.kind for v in r.verdicts] == ["SolvedWith", "SolvedWith"]
    assert r.joint == [] and not r.ok
    assert r.to_dict()["joint"]["verdict"] == "Unsatisfiable"


def test_even_multiplicity_cancels():
    r = check_source("charge u = ?\ncharge p = P\neq e : u*u = p\n")
    assert r.verdicts[0].kind == "Unsatisfiable"


def test_global_twist_is_covariant():
    src = "charge x = ?\ncharge one = 1\neq e : x = one\n"
    assert check_source(src).verdicts[0].assignments == [{"x": ONE}]


# ---- random models against brute force -------------------------------------


def random_model(rnd, n_known, n_unknown, n_eqs):
    names = [f"k{i}" for i in range(n_known)] + [f"u{i}" for i in range(n_unknown)]
    lines = [f"charge k{i} = {CHARGE_TEXT[rnd.choice(list(K4Charge))]}" for i in range(n_known)]
    lines += [f"charge u{i} = ?" for i in range(n_unknown)]
    for e in range(n_eqs):
        sides = []
        for _ in range(2):
            terms = []
            for _ in range(rnd.randint(1, 3)):
                if rnd.random() < 0.1:
                    terms.append("0")
                else:
                    terms.append("*".join(rnd.choice(names) for _ in range(rnd.randint(1, 3))))
            sides.append(" + ".join(terms))
        lines.append(f"eq e{e} : {sides[0]} = {sides[1]}")
    return "\n".join(lines) + "\n"


def joint_brute_force(model):
    names = model.unknowns
    good = []
    for combo in itertools.product(K4Charge, repeat=len(names)):
        env = {**model.declarations, **dict(zip(names, combo))}
        ok = True
        for eq in model.equations:
            charges = set()
            for t in eq.terms:
                if t.is_zero:
                    continue
                c = ONE
                for f in t.factors:
                    c = c * env[f]
                charges.add(c)
            ok &= len(charges) <= 1
        if ok:
            good.append(dict(zip(names, combo)))
    return good


def compare_with_brute_force(model):
    report = check(model)
    for v, (kind, payload) in zip(report.verdicts, brute_force_check(model), strict=True):
        assert v.kind == kind
        if kind == "Homogeneous":
            assert v.charge == payload
        elif kind == "Inhomogeneous":
            assert v.conflict == payload
        elif kind == "SolvedWith":
            key = lambda a: sorted((k, int(c)) for k, c in a.items())
            assert sorted(map(key, v.assignments)) == sorted(map(key, payload))
    if model.unknowns:
        key = lambda a: tuple(int(a[u]) for u in model.unknowns)
        assert sorted(map(key, report.joint)) == sorted(map(key, joint_brute_force(model)))


def test_random_models_without_unknowns():
    rnd = random.Random(7)
    for _ in range(200):
        compare_with_brute_force(parse(random_model(rnd, rnd.randint(1, 5), 0, rnd.randint(1, 4))))


def test_random_models_with_unknowns():
    rnd = random.Random(11)
    for _ in range(100):
        compare_with_brute_force(parse(random_model(rnd, rnd.randint(1, 4), rnd.randint(1, 4), rnd.randint(1, 3))))


def test_many_unknowns_against_exhaustive():
    rnd = random.Random(3)
    for _ in range(5):
        compare_with_brute_force(parse(random_model(rnd, 3, 6, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(list(K4Charge)))
def test_global_twist_invariance(seed, g):
    # multiplying every declared charge by g multiplies each term by g^len;
    # on single-factor models this leaves all verdict kinds unchanged
    rnd = random.Random(seed)
    names = [f"s{i}" for i in range(4)]
    charges = {n: rnd.choice(list(K4Charge)) for n in names}
    eqs = [f"eq e{k} : {rnd.choice(names)} = {rnd.choice(names)} + {rnd.choice(names)}" for k in range(3)]

    def source(env):
        return "\n".join([f"charge {n} = {CHARGE_TEXT[c]}" for n, c in env.items()] + eqs)

    base = check(parse(source(charges)))
    twisted = check(parse(source({n: c * g for n, c in charges.items()})))
    assert [v.kind for v in base.verdicts] == [v.kind for v in twisted.verdicts]
    for a, b in zip(base.verdicts, twisted.verdicts):
        if a.charge is not None:
            assert b.charge == a.charge * g


# ---- GF(2) ----------------------------------------------------------------


def test_gf2_against_exhaustive():
    rnd = random.Random(5)
    for _ in range(300):
        n = rnd.randint(0, 8)
        m = rnd.randint(0, 10)
        rows = [rnd.getrandbits(n) if n else 0 for _ in range(m)]
        rhs = [rnd.getrandbits(1) for _ in range(m)]
        truth = {x for x in range(2**n) if all(bin(r & x).count("1") % 2 == b for r, b in zip(rows, rhs))}
        sol = gf2.solve(rows, rhs, n)
        if sol is None:
            assert not truth
        else:
            got = list(gf2.span(*sol))
            assert len(got) == len(set(got)) and set(got) == truth


def test_gf2_inconsistent():
    assert gf2.solve([0b11, 0b11], [0, 1], 2) is None
    assert gf2.solve([0], [1], 1) is None
    assert sorted(gf2.span(*gf2.solve([], [], 2))) == [0, 1, 2, 3]
