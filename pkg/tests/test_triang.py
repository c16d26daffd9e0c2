"""Triangles: cones, extensions, short exact sequences, truncations."""

import math
import random

import pytest

from dualseq.barcode import decompose, is_isomorphic
from dualseq.errors import NotExact, ValidationFailed
from dualseq.gen import random_seq
from dualseq.hom import (compose_hat, get_context, hat_eps, identity_hat,
                         zero_hat)
from dualseq.linalg import Field
from dualseq.seq import direct_sum_seq, interval, shift, zero_seq
from dualseq.triang import (Triangle, cone, cone_triangle, extension_from_eps,
                            splits, triangle_from_ses, truncate_above,
                            truncate_below, truncation_inclusion,
                            truncation_projection, truncation_triangle)

F2 = Field(2)
F5 = Field(5)
Q = Field(None)
INF = math.inf


def random_hat(rng, f, v, w, want_eps=None):
    ctx = get_context(v, w)
    h = zero_hat(v, w)
    if ctx.dim_hom and want_eps is not True:
        from dualseq.hom import hat
        coeffs = [f.coerce(rng.randint(0, 2)) for _ in range(ctx.dim_hom)]
        for c, g in zip(coeffs, ctx.hom_basis()):
            if c != f.zero:
                h = h + hat(g).scale(c)
    if ctx.dim_eps and want_eps is not False:
        coeffs = [f.coerce(rng.randint(0, 2)) for _ in range(ctx.dim_eps)]
        for c, g in zip(coeffs, ctx.eps_basis()):
            if c != f.zero:
                h = h + hat_eps(g).scale(c)
    return h


def test_cone_of_identity_is_zero():
    for f in (F2, F5, Q):
        rng = random.Random(51)
        for _ in range(5):
            v = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
            u, _, _ = cone(identity_hat(v))
            assert u == zero_seq(f)


def test_cone_of_zero_is_sum_with_shift():
    rng = random.Random(52)
    for _ in range(12):
        f = rng.choice([F2, F5, Q])
        v = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
        w = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
        u, _, _ = cone(zero_hat(v, w))
        assert is_isomorphic(u, direct_sum_seq(v, shift(w, -1)))


def test_cone_triangle_verifies():
    rng = random.Random(53)
    checked = 0
    while checked < 15:
        f = rng.choice([F2, F5])
        v = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
        w = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
        h = random_hat(rng, f, v, w)
        tri = cone_triangle(h)
        tri.verify()
        assert tri.c == v and tri.a == shift(w, -1)
        assert tri.w == h
        checked += 1


def test_triangle_endpoint_validation():
    v = interval(F2, 0, 1)
    w = interval(F2, 1, 2)
    with pytest.raises(ValidationFailed):
        Triangle(v, v, v, identity_hat(v), identity_hat(v), identity_hat(v))


def test_extension_class_roundtrip_interval():
    # the ses attached to an eps class recovers that class as its connecting
    # morphism, exactly
    rng = random.Random(54)
    pairs = [((0, 0), (0, 0)), ((0, 1), (1, 1)), ((1, 1), (1, 2)),
             ((0, 0), (0, 2))]
    for f in (F2, F5):
        for (a1, b1), (a2, b2) in pairs:
            v = interval(f, a1, b1)
            w = interval(f, a2, b2)
            ctx = get_context(v, w)
            if ctx.dim_eps == 0:
                continue
            g = ctx.eps_basis()[0]
            e = extension_from_eps(g)
            tri = triangle_from_ses(e.incl, e.proj)
            assert tri.w.feps == hat_eps(g).feps


def test_splits_iff_zero_class():
    from dualseq.graded import zero_element
    for f in (F2, F5, Q):
        v = interval(f, 0, 0)
        ctx = get_context(v, v)
        e = extension_from_eps(ctx.eps_basis()[0])
        assert splits(e) is None
        e0 = extension_from_eps(zero_element(v, v, 0))
        assert splits(e0) is not None


def test_split_extension_total_is_sum():
    v = interval(F2, 0, 1)
    w = interval(F2, 0, 1)
    from dualseq.graded import zero_element
    e = extension_from_eps(zero_element(v, w, 0))
    assert is_isomorphic(e.total, direct_sum_seq(v, shift(w, -1)))


def test_extension_of_s00_by_s00_is_s01():
    # gluing two point intervals along the nonzero eps class gives S_{0,1}
    v = interval(F5, 0, 0)
    ctx = get_context(v, v)
    e = extension_from_eps(ctx.eps_basis()[0])
    assert is_isomorphic(e.total, interval(F5, 0, 1))


def test_triangle_from_ses_rejects_nonexact():
    v = interval(F2, 0, 1)
    with pytest.raises(NotExact):
        # identity followed by identity is not exact in the middle
        triangle_from_ses(identity_hat(v), identity_hat(v))


def test_triangle_from_ses_rejects_eps_maps():
    v = interval(F2, 0, 0)
    ctx = get_context(v, v)
    e = hat_eps(ctx.eps_basis()[0])
    with pytest.raises(ValidationFailed):
        triangle_from_ses(e, identity_hat(v))


def test_truncation_shapes():
    v = interval(F2, 0, 3)
    above = truncate_above(v, 2)
    assert [above.dim(i) for i in range(0, 5)] == [0, 0, 1, 1, 0]
    below = truncate_below(v, 2)
    assert [below.dim(i) for i in range(0, 5)] == [1, 1, 0, 0, 0]


def test_truncation_morphisms_compose_to_zero():
    v = interval(F5, -1, 2)
    inc = truncation_inclusion(v, 1)
    proj = truncation_projection(v, 1)
    assert compose_hat(proj, inc).is_zero or compose_hat(inc, proj).is_zero


def test_truncation_triangle_verifies():
    rng = random.Random(55)
    for _ in range(8):
        f = rng.choice([F2, F5, Q])
        v = random_seq(rng, f, max_bars=3, lo=-2, hi=2)
        n = rng.randint(-1, 2)
        tri = truncation_triangle(v, n)
        tri.verify()


def test_truncation_connecting_class_nonzero():
    # V = S_{0,1} truncated at 1: the connecting morphism carries the bottom
    # part S_{0,0} into the shifted top part with coefficient -1
    for f in (F2, F5, Q):
        v = interval(f, 0, 1)
        tri = truncation_triangle(v, 1)
        assert tri.w.is_type_eps and not tri.w.is_zero
        comp = tri.w.feps.component(0)
        assert comp.rows == comp.cols == 1
        assert comp.entry(0, 0) == f.coerce(-1)


def test_truncation_of_glued_vs_split():
    # truncating S_{0,1} separates the bar; the middle object of the
    # triangle still carries the glued bar, the split sum does not
    v = interval(F5, 0, 1)
    tri = truncation_triangle(v, 1)
    assert decompose(tri.b).counts() == decompose(v).counts()
    top = truncate_above(v, 1)
    bottom = truncate_below(v, 1)
    assert tri.a == top and tri.c == bottom
    assert decompose(direct_sum_seq(top, bottom)).counts() != \
        decompose(v).counts()


def test_cone_shift_consistency():
    # the wrapped shift really is inverse to shifting back
    v = interval(F2, 0, 2)
    assert shift(shift(v, -1), 1) == v
