"""Phantom detection and the derivation harness."""

import math
import random

import pytest

from dualseq.errors import StabilizationDepthExceeded, ValidationFailed
from dualseq.gen import random_seq
from dualseq.hom import (compose_hat, get_context, hat, hat_eps, identity_hat,
                         zero_hat)
from dualseq.linalg import Field
from dualseq.phantom import (Derivation, Diagram, check_derivation,
                             inner_derivation, is_phantom, phantom_basis,
                             solve_inner)
from dualseq.seq import interval

F2 = Field(2)
F5 = Field(5)
Q = Field(None)
INF = math.inf


def small_hproj(field, lo=-2, hi=2):
    out = []
    for a in [-INF] + list(range(lo, hi + 1)):
        for b in range(int(max(a, lo)), hi + 1):
            out.append(interval(field, a, b))
    return out


def test_phantom_requires_h_projective():
    v = interval(F2, 0, INF)
    with pytest.raises(ValidationFailed):
        is_phantom(zero_hat(v, v))


def test_type_one_morphisms_never_phantom():
    v = interval(F5, 0, 1)
    verdict = is_phantom(identity_hat(v))
    assert not verdict.phantom
    assert "type-1" in verdict.reason


def test_compact_source_phantom_iff_zero():
    v = interval(F2, 0, 1)
    w = interval(F2, 1, 1)
    assert is_phantom(zero_hat(v, w)).phantom
    ctx = get_context(v, w)
    h = hat_eps(ctx.eps_basis()[0])
    assert not is_phantom(h).phantom


def test_phantom_space_zero_on_grid():
    # interval objects with finite windows admit no nonzero phantoms
    for f in (F2, F5):
        objs = small_hproj(f, -1, 1)
        for v in objs:
            for w in objs:
                basis, cert = phantom_basis(v, w, depth=12)
                assert basis == []
                assert cert.levels[-1][1] == 0


def test_phantom_depth_stability():
    objs = small_hproj(F2, -1, 1)
    for v in objs[:4]:
        for w in objs[:4]:
            b1, _ = phantom_basis(v, w, depth=12)
            b2, _ = phantom_basis(v, w, depth=14)
            assert len(b1) == len(b2)


def test_noncompact_class_survives_truncation():
    # the eps class from the left ray to the point is nonzero but killed by
    # no truncation level deep enough, so it is rejected with a certificate
    v = interval(F2, -INF, 0)
    w = interval(F2, 0, 0)
    ctx = get_context(v, w)
    h = hat_eps(ctx.eps_basis()[0])
    verdict = is_phantom(h)
    assert not verdict.phantom
    assert verdict.certificate is not None
    ns = [n for n, _ in verdict.certificate.levels]
    assert ns == sorted(ns, reverse=True)


def test_depth_exceeded_raises():
    v = interval(F2, -INF, 0)
    w = interval(F2, 0, 0)
    ctx = get_context(v, w)
    h = hat_eps(ctx.eps_basis()[0])
    with pytest.raises(StabilizationDepthExceeded):
        is_phantom(h, depth=1)


# -- diagrams and derivations ---------------------------------------------


def _two_object_diagram(field):
    a = interval(field, 1, 2)
    b = interval(field, 1, 1)
    fab = hat(get_context(a, b).hom_basis()[0])          # projection
    gba = hat_eps(get_context(b, a).eps_basis()[0])      # eps class back
    h = compose_hat(gba, fab)
    assert h.is_type_eps and not h.is_zero
    diag = Diagram(objects={"A": a, "B": b},
                   generators={"f": ("A", "B", fab),
                               "g": ("B", "A", gba),
                               "h": ("A", "A", h)},
                   relations=(("g", "f", "h"),))
    return diag


def test_diagram_validates_relations():
    diag = _two_object_diagram(F2)
    assert set(diag.generators) == {"f", "g", "h"}
    bad = dict(diag.generators)
    bad["h"] = ("A", "A", zero_hat(diag.objects["A"], diag.objects["A"]))
    with pytest.raises(ValidationFailed):
        Diagram(objects=diag.objects, generators=bad,
                relations=(("g", "f", "h"),))


def test_zero_derivation_is_inner_with_zero_theta():
    diag = _two_object_diagram(F5)
    der = Derivation(diagram=diag, assignment={})
    assert check_derivation(diag, der) is None
    theta = solve_inner(diag, der)
    assert theta is not None
    assert all(t.is_zero for t in theta.values())


def test_inner_by_construction_roundtrip():
    rng = random.Random(71)
    for _ in range(10):
        f = rng.choice([F2, F5])
        diag = _two_object_diagram(f)
        theta = {}
        for name, v in diag.objects.items():
            ctx = get_context(v, v)
            if ctx.dim_eps:
                g = ctx.eps_basis()[rng.randrange(ctx.dim_eps)]
                theta[name] = hat_eps(g)
        der = inner_derivation(diag, theta)
        assert check_derivation(diag, der) is None
        sol = solve_inner(diag, der)
        assert sol is not None
        again = inner_derivation(diag, sol)
        for name in diag.generators:
            assert again.at(name) == der.at(name)


def test_eps_generator_derivation_not_inner():
    # with only eps generators, inner derivations vanish, so a nonzero
    # assignment on such a generator cannot be realized
    f = F2
    b = interval(f, 1, 1)
    a = interval(f, 1, 2)
    gba = hat_eps(get_context(b, a).eps_basis()[0])
    diag = Diagram(objects={"A": a, "B": b},
                   generators={"g": ("B", "A", gba)}, relations=())
    der = Derivation(diagram=diag, assignment={"g": gba})
    assert check_derivation(diag, der) is None
    assert solve_inner(diag, der) is None


def test_derivation_rejects_type_one_values():
    diag = _two_object_diagram(F2)
    a = diag.objects["A"]
    with pytest.raises(ValidationFailed):
        Derivation(diagram=diag, assignment={"h": identity_hat(a)})
