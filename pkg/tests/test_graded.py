"""The graded hom complex: composition, differential, Leibniz."""

import random

from dualseq.gen import random_graded_element, random_seq
from dualseq.graded import (compose, differential, identity_element,
                            is_morphism, make_element, shift_element,
                            zero_element)
from dualseq.linalg import Field, Matrix
from dualseq.seq import interval

F2 = Field(2)
F5 = Field(5)
Q = Field(None)

RNG_SEED = 20260814


def test_identity_is_closed_morphism():
    v = interval(F5, 0, 2)
    e = identity_element(v)
    assert is_morphism(e)
    assert differential(e).is_zero


def test_differential_raises_degree():
    rng = random.Random(RNG_SEED)
    v = random_seq(rng, F2, max_bars=3, lo=-2, hi=2)
    w = random_seq(rng, F2, max_bars=3, lo=-2, hi=2)
    g = random_graded_element(rng, v, w, degree=1)
    assert differential(g).degree == 2


def _diff_element(v):
    return make_element(v, v, 1, v.lo - 1, v.hi + 1, lambda i: v.map_at(i))


def test_differential_square_formula():
    # the hom sequence is not a complex: d^2(g) = d_w^2 g - g d_v^2,
    # which vanishes only when both endpoint sequences are complexes
    rng = random.Random(RNG_SEED + 1)
    for _ in range(30):
        f = rng.choice([F2, F5, Q])
        v = random_seq(rng, f, max_bars=3, lo=-3, hi=3)
        w = random_seq(rng, f, max_bars=3, lo=-3, hi=3)
        n = rng.randint(-2, 2)
        g = random_graded_element(rng, v, w, degree=n)
        dv2 = compose(_diff_element(v), _diff_element(v))
        dw2 = compose(_diff_element(w), _diff_element(w))
        assert differential(differential(g)) == compose(dw2, g) - compose(g, dv2)


def test_leibniz_rule():
    # d(g f) = d(g) f + (-1)^n g d(f) for g of degree n
    rng = random.Random(RNG_SEED + 2)
    for _ in range(40):
        f = rng.choice([F2, F5])
        u = random_seq(rng, f, max_bars=3, lo=-3, hi=3)
        v = random_seq(rng, f, max_bars=3, lo=-3, hi=3)
        w = random_seq(rng, f, max_bars=3, lo=-3, hi=3)
        m = rng.randint(-2, 2)
        n = rng.randint(-2, 2)
        a = random_graded_element(rng, u, v, degree=m)
        b = random_graded_element(rng, v, w, degree=n)
        lhs = differential(compose(b, a))
        sign = f.coerce((-1) ** n)
        rhs = compose(differential(b), a) + compose(b, differential(a)).scale(sign)
        assert lhs == rhs


def test_compose_associative():
    rng = random.Random(RNG_SEED + 3)
    for _ in range(15):
        f = rng.choice([F2, F5, Q])
        objs = [random_seq(rng, f, max_bars=2, lo=-2, hi=2) for _ in range(4)]
        els = [random_graded_element(rng, objs[i], objs[i + 1],
                                     degree=rng.randint(-1, 1))
               for i in range(3)]
        left = compose(els[2], compose(els[1], els[0]))
        right = compose(compose(els[2], els[1]), els[0])
        assert left == right


def test_zero_and_identity_compose():
    v = interval(F2, 0, 1)
    w = interval(F2, 1, 2)
    z = zero_element(v, w, 0)
    assert compose(z, identity_element(v)) == z
    assert compose(identity_element(w), z) == z


def test_shift_element_preserves_closedness():
    v = interval(F5, 0, 2)
    e = identity_element(v)
    s = shift_element(e, 1)
    assert differential(s).is_zero


def test_is_morphism_detects_noncommuting():
    v = interval(F2, 0, 1)

    def fn(i):
        if i == 0:
            return Matrix.identity(F2, 1)
        return Matrix.zeros(F2, v.dim(i), v.dim(i))

    g = make_element(v, v, 0, 0, 1, fn)
    assert not is_morphism(g)
