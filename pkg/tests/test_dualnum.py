"""Minimal models over the dual numbers: reduction, certificates, transfer."""

import math
import random

import pytest

from dualseq.dualnum import (EpsComplex, as_complex, cohomology,
                             eps_cohomology, from_seq, hom_k, make_minimal,
                             minimize, to_seq, validate)
from dualseq.errors import ValidationFailed
from dualseq.gen import random_eps_complex, random_minimal
from dualseq.hom import get_context
from dualseq.linalg import Field, Matrix
from dualseq.seq import interval

F2 = Field(2)
F5 = Field(5)
Q = Field(None)


def nz(h):
    return {i: d for i, d in h.items() if d}


def test_validate_rejects_broken_leibniz():
    # d1.deps + deps.d1 = 2 != 0 over F5 (over F2 this example would cancel)
    c = EpsComplex(F5, 0, (1, 2, 1),
                   (Matrix(F5, 2, 1, (1, 0)), Matrix(F5, 1, 2, (0, 1))),
                   (Matrix(F5, 2, 1, (0, 1)), Matrix(F5, 1, 2, (1, 0))))
    rep = validate(c)
    assert not rep.ok


def test_validate_accepts_pure_eps():
    c = EpsComplex(F5, 0, (1, 1), (Matrix.zeros(F5, 1, 1),),
                   (Matrix.identity(F5, 1),))
    assert validate(c).ok


def test_minimize_contractible_is_zero():
    c = EpsComplex(F2, 0, (1, 1), (Matrix.identity(F2, 1),),
                   (Matrix.zeros(F2, 1, 1),))
    nm, he = minimize(c)
    assert sum(nm.ranks) == 0
    he.verify()


def test_minimize_of_minimal_is_identity_shape():
    rng = random.Random(31)
    for _ in range(10):
        f = rng.choice([F2, F5, Q])
        n = random_minimal(rng, f, max_len=4, max_rank=3)
        nm, he = minimize(as_complex(n))
        assert nm.ranks == tuple(r for r in n.ranks) or sum(nm.ranks) == sum(n.ranks)
        he.verify()


def test_minimize_laws_random():
    rng = random.Random(32)
    for k in range(60):
        f = [F2, F5, Q][k % 3]
        c = random_eps_complex(rng, f, max_len=6, max_rank=4)
        nm, he = minimize(c)
        he.verify()
        assert nz(eps_cohomology(c)) == nz(eps_cohomology(as_complex(nm)))


def test_eps_cohomology_examples():
    # rank-1 square-zero: H = k in both window degrees
    c = EpsComplex(F5, 0, (1, 1), (Matrix.zeros(F5, 1, 1),),
                   (Matrix.identity(F5, 1),))
    assert nz(eps_cohomology(c)) == {0: 1, 1: 1}


def test_cohomology_of_intervals():
    assert nz(cohomology(interval(F2, 0, 1))) == {0: 1, 1: 1}
    # S_{0,0} corresponds to free k[eps] in degree 0: H^0 is 2-dimensional
    assert nz(cohomology(interval(F5, 0, 0))) == {0: 2}
    assert nz(cohomology(interval(Q, -math.inf, math.inf))) == {}


def test_to_seq_from_seq_roundtrip():
    rng = random.Random(33)
    for _ in range(20):
        f = rng.choice([F2, F5, Q])
        n = random_minimal(rng, f, max_len=4, max_rank=3)
        v = to_seq(n)
        back = from_seq(v)
        assert to_seq(back) == v


def test_from_seq_rejects_iso_tails():
    with pytest.raises(ValidationFailed):
        from_seq(interval(F2, 0, math.inf))


def test_hom_k_matches_seq_homs():
    # the dictionary: hom over k[eps] computed on minimal complexes agrees
    # with the enlarged seq homs of the corresponding sequences
    pairs = [((0, 0), (0, 0)), ((0, 1), (0, 1)), ((0, 0), (0, 1)),
             ((0, 1), (0, 0)), ((1, 2), (1, 1))]
    for (a1, b1), (a2, b2) in pairs:
        for f in (F2, F5, Q):
            v = interval(f, a1, b1)
            w = interval(f, a2, b2)
            m, n = from_seq(v), from_seq(w)
            ctx = get_context(v, w)
            assert hom_k(m, n) == (ctx.dim_hom, ctx.dim_eps)


def test_make_minimal_validates_shapes():
    # deps entries must match the declared ranks; note deps itself need not
    # square to zero, the total differential does automatically
    with pytest.raises(ValidationFailed):
        make_minimal(F2, 0, (1, 2, 1),
                     (Matrix.identity(F2, 1), Matrix.identity(F2, 1)))
    n = make_minimal(F2, 0, (1, 1, 1),
                     (Matrix.identity(F2, 1), Matrix.identity(F2, 1)))
    assert validate(as_complex(n)).ok


def test_minimize_preserves_field():
    c = random_eps_complex(random.Random(34), Q, max_len=5, max_rank=3)
    nm, _ = minimize(c)
    assert nm.field == Q
