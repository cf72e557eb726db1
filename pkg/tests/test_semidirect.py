import numpy as np
import pytest

from lorentz_k4.k4 import K4Charge
from lorentz_k4.lorentz import NotLorentzError, boost, component_of
from lorentz_k4.semidirect import (
    IDENTITY,
    ExtendedElement,
    act,
    compose,
    from_matrix,
    inverse,
    reflection_matrix,
    to_matrix,
)
from lorentz_k4.tensors import VectorRepKind, vector

from conftest import random_lorentz

ONE, P, T, PT = K4Charge.ONE, K4Charge.P, K4Charge.T, K4Charge.PT
I4 = np.eye(4)


def random_element(rng, kappa=None):
    k = K4Charge(int(rng.integers(4))) if kappa is None else kappa
    return ExtendedElement(random_lorentz(rng), k)


def test_pure_reflection_sector():
    assert compose(ExtendedElement(I4, P), ExtendedElement(I4, T)).isclose(ExtendedElement(I4, PT))


def test_reflection_flips_following_boost():
    w, v = 0.8, -0.35
    e = compose(ExtendedElement(boost([w, 0, 0]), P), ExtendedElement(boost([v, 0, 0]), ONE))
    assert e.isclose(ExtendedElement(boost([w, 0, 0]) @ boost([-v, 0, 0]), P))


def test_subgroup_embedding(rng):
    a, b = random_lorentz(rng), random_lorentz(rng)
    assert compose(ExtendedElement(a, ONE), ExtendedElement(b, ONE)).isclose(ExtendedElement(a @ b, ONE))


def test_pt_does_not_twist(rng):
    a, b = random_lorentz(rng), random_lorentz(rng)
    assert compose(ExtendedElement(a, PT), ExtendedElement(b, ONE)).isclose(ExtendedElement(a @ b, PT))


def test_inverse_examples():
    assert inverse(ExtendedElement(I4, P)).isclose(ExtendedElement(I4, P))
    b = boost([0.9, 0, 0])
    assert inverse(ExtendedElement(b, ONE)).isclose(ExtendedElement(boost([-0.9, 0, 0]), ONE))
    assert inverse(ExtendedElement(b, T)).isclose(ExtendedElement(b, T))


def test_inverse_against_matrix_inverse(rng):
    for _ in range(100):
        e = random_element(rng)
        assert compose(e, inverse(e)).isclose(IDENTITY)
        assert compose(inverse(e), e).isclose(IDENTITY)
        np.testing.assert_allclose(to_matrix(inverse(e)), np.linalg.inv(to_matrix(e)), atol=1e-9)


def test_defining_matrices():
    np.testing.assert_array_equal(to_matrix(ExtendedElement(I4, P)), np.diag([1.0, -1, -1, -1]))
    np.testing.assert_array_equal(to_matrix(ExtendedElement(I4, T)), np.diag([-1.0, 1, 1, 1]))
    np.testing.assert_array_equal(to_matrix(ExtendedElement(I4, PT)), -I4)


def test_homomorphism(rng):
    for _ in range(1000):
        a, b = random_element(rng), random_element(rng)
        lhs = to_matrix(compose(a, b))
        assert np.max(np.abs(lhs - to_matrix(a) @ to_matrix(b))) < 1e-9


def test_associativity(rng):
    for _ in range(500):
        a, b, c = (random_element(rng) for _ in range(3))
        left = compose(compose(a, b), c)
        right = compose(a, compose(b, c))
        assert left.kappa == right.kappa
        assert np.max(np.abs(to_matrix(left) - to_matrix(right))) < 1e-9


@pytest.mark.parametrize("kappa,tag", [(ONE, "1"), (P, "R"), (T, "-R"), (PT, "-1")])
def test_components_by_sector(rng, kappa, tag):
    for _ in range(50):
        assert component_of(to_matrix(random_element(rng, kappa))) == tag


def test_from_matrix_inverts_to_matrix(rng):
    for _ in range(100):
        e = random_element(rng)
        assert from_matrix(to_matrix(e)).isclose(e)


def test_injective_on_samples(rng):
    elems = [random_element(rng) for _ in range(50)]
    mats = [to_matrix(e) for e in elems]
    for i in range(len(elems)):
        for j in range(i):
            assert np.max(np.abs(mats[i] - mats[j])) > 1e-6


def test_reflection_boost_commutation(rng):
    for _ in range(20):
        w = rng.normal(size=3)
        for r in (P, T):
            d = reflection_matrix(r)
            np.testing.assert_allclose(d @ boost(w), boost(-w) @ d, atol=1e-12)


def test_validate():
    with pytest.raises(NotLorentzError):
        ExtendedElement(np.diag([1.0, -1, -1, -1]), ONE).validate()
    ExtendedElement(boost([0.2, 0, 0]), T).validate()


def test_act_time_reversal_on_coordinates_and_momenta():
    x = vector([1.0, 2.0, 3.0, 4.0], VectorRepKind.COORDINATE)
    p = vector([5.0, 6.0, 7.0, 8.0], VectorRepKind.MOMENTUM)
    t = ExtendedElement(I4, T)
    np.testing.assert_array_equal(act(t, x).components, [-1, 2, 3, 4])
    np.testing.assert_array_equal(act(t, p).components, [5, -6, -7, -8])
    assert act(t, p).label == K4Charge.T


def test_act_lorentz_only(rng):
    lam = random_lorentz(rng)
    v = vector(rng.normal(size=4))
    np.testing.assert_allclose(act(ExtendedElement(lam, ONE), v).components, lam @ v.components)


def test_act_is_an_action(rng):
    # reflections act first, then Lorentz: (a.b) v == a (b v)
    for kind in VectorRepKind:
        v = vector(rng.normal(size=4), kind)
        for _ in range(20):
            a, b = random_element(rng), random_element(rng)
            lhs = act(compose(a, b), v).components
            rhs = act(a, act(b, v)).components
            np.testing.assert_allclose(lhs, rhs, atol=1e-9)
