"""Hom spaces between tailed sequences, and the enlarged morphism category.

For sequences ``V``, ``W`` the graded Hom complex carries the differential

    d^n(f)^i = d_W^(n+i) f^i - (-1)^n f^(i+1) d_V^i .

Two spaces matter everywhere:

* ``Hom_S(V, W)  = ker(d^0)``  - honest sequence morphisms;
* ``Hom_eps(V, W) = cok(d^-1)`` - the extra "epsilon" component of the
  enlarged category, whose morphisms are pairs ``f_1 + [f_eps]`` composing by
  ``(g o f)_1 = g_1 f_1`` and ``(g o f)_eps = g_1 f_eps + g_eps f_1``.

Both are computed on a finite window ``[L, R]`` obtained by widening the
combined irregular region by a margin.  On such a window the computation is
a finite kernel/cokernel problem:

* morphisms are parity-constant beyond the window (ISO transitions force
  ``f^(i+1) = f^i``), so window solutions extend uniquely;
* cokernel classes are detected by window coordinates alone, because targets
  supported in a stable half-line are always hit (solve the transition
  recurrence outward), at the price of one extra variable column ``h^(R+1)``.

The margin is accepted only when two further one-step widenings reproduce
every dimension; the widening count is capped, and hitting the cap raises
``StabilizationDepthExceeded``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .config import Config, DEFAULT
from .errors import StabilizationDepthExceeded, ValidationFailed
from .graded import (GradedHomElement, compose, differential, identity_element,
                     is_morphism, make_element, shift_element, zero_element)
from .linalg import Matrix, _rref, reduce_row_mod, subspaces
from .seq import Seq, Tail, direct_sum_seq, shift as shift_seq


@dataclass(frozen=True)
class StabilizationCertificate:
    """Record of the widening loop: the accepted margin, the window it gave,
    and the (margin, dim Hom_S, dim Hom_eps) triples that had to agree."""

    window: Tuple[int, int]
    margin: int
    checks: Tuple[Tuple[int, int, int], ...]
    depth_limit: int


class HomContext:
    """Everything the package needs to know about one ordered pair (V, W)."""

    def __init__(self, v: Seq, w: Seq, config: Config = DEFAULT):
        if v.field != w.field:
            raise ValidationFailed("hom between sequences over different fields")
        self.src = v
        self.dst = w
        self.field = v.field
        self.lo_irr = min(v.lo, w.lo - 1)
        self.hi_irr = max(v.hi, w.hi + 1)
        span = self.hi_irr - self.lo_irr
        limit = config.depth_limit(span, 0)
        margin = config.base_margin
        checks = []
        widenings = 0
        while True:
            probe = [self._dims_at(margin + k) for k in range(config.extra_checks + 1)]
            checks = tuple((margin + k, probe[k][0], probe[k][1])
                           for k in range(len(probe)))
            if all(p == probe[0] for p in probe):
                break
            margin += 1
            widenings += 1
            if widenings > limit:
                raise StabilizationDepthExceeded(
                    f"hom dimensions between windows [{v.lo},{v.hi}] and "
                    f"[{w.lo},{w.hi}] did not stabilize", limit)
        self.margin = margin
        self._populate(margin)
        self.certificate = StabilizationCertificate(
            (self.L, self.R), margin, checks, limit)

    # -- window layout --------------------------------------------------

    def _layout(self, m: int):
        L = self.lo_irr - m
        R = self.hi_irr + m
        v, w = self.src, self.dst
        off0 = {}
        n = 0
        for i in range(L, R + 1):
            off0[i] = n
            n += w.dim(i) * v.dim(i)
        return L, R, off0, n

    def _d0_rows(self, L, R, off0, n) -> list:
        """Constraint matrix of d^0 on window coordinates (row per entry of
        each (df)^i with i in [L, R-1])."""
        v, w = self.src, self.dst
        zero = self.field.zero
        rows = []
        for i in range(L, R):
            dv = v.map_at(i).to_lists()
            dw = w.map_at(i).to_lists()
            vi, vi1 = v.dim(i), v.dim(i + 1)
            wi, wi1 = w.dim(i), w.dim(i + 1)
            for a in range(wi1):
                for b in range(vi):
                    row = [zero] * n
                    base_i = off0[i]
                    for c in range(wi):
                        coef = dw[a][c]
                        if coef:
                            row[base_i + c * vi + b] = coef
                    base_i1 = off0[i + 1]
                    for c in range(vi1):
                        coef = dv[c][b]
                        if coef:
                            row[base_i1 + a * vi1 + c] = self.field.neg(coef)
                    rows.append(row)
        return rows

    def _dm1_rows(self, L, R, off0, n) -> list:
        """Image vectors of d^-1: one row (in Hom^0 window coordinates) per
        entry of each h^j with j in [L, R+1]."""
        v, w = self.src, self.dst
        zero = self.field.zero
        rows = []
        for j in range(L, R + 2):
            wj1 = w.dim(j - 1)
            vj = v.dim(j)
            if wj1 * vj == 0:
                continue
            dwp = w.map_at(j - 1).to_lists()   # W^(j-1) -> W^j
            dvp = v.map_at(j - 1).to_lists()   # V^(j-1) -> V^j
            vjm = v.dim(j - 1)
            wj = w.dim(j)
            for r in range(wj1):
                for c in range(vj):
                    row = [zero] * n
                    if j <= R:
                        base = off0[j]
                        for a in range(wj):
                            coef = dwp[a][r]
                            if coef:
                                row[base + a * vj + c] = coef
                    if j - 1 >= L:
                        # disjoint from the block above: different degree slice
                        base = off0[j - 1]
                        for b in range(vjm):
                            coef = dvp[c][b]
                            if coef:
                                row[base + r * vjm + b] = coef
                    rows.append(row)
        return rows

    def _dims_at(self, m: int) -> tuple:
        L, R, off0, n = self._layout(m)
        d0 = self._d0_rows(L, R, off0, n)
        rank0, _ = _rref(self.field, d0, n)
        dm1 = self._dm1_rows(L, R, off0, n)
        rank1, _ = _rref(self.field, dm1, n)
        return (n - rank0, n - rank1)

    def _populate(self, m: int):
        v, w = self.src, self.dst
        self.L, self.R, self.off0, self.N = self._layout(m)
        d0_rows = self._d0_rows(self.L, self.R, self.off0, self.N)
        self.d0 = Matrix(self.field, len(d0_rows), self.N,
                         tuple(x for row in d0_rows for x in row))
        ker = subspaces(self.d0).kernel if d0_rows else Matrix.identity(self.field, self.N)
        self.dim_hom = ker.cols
        self.ker_basis_vecs = [ker.col(j) for j in range(ker.cols)]
        dm1_rows = self._dm1_rows(self.L, self.R, self.off0, self.N)
        self.dminus1 = Matrix(self.field, len(dm1_rows), self.N,
                              tuple(x for row in dm1_rows for x in row)).transpose()
        work = [list(r) for r in dm1_rows]
        rank1, pivots = _rref(self.field, work, self.N)
        self.img_rows = work[:rank1]
        self.img_pivots = pivots
        self.dim_eps = self.N - rank1
        pivset = set(pivots)
        self.nonpivots = [j for j in range(self.N) if j not in pivset]

    # -- coordinates <-> elements ----------------------------------------

    def vec_of(self, g: GradedHomElement) -> list:
        if (g.src, g.dst, g.degree) != (self.src, self.dst, 0):
            raise ValidationFailed("element does not belong to this hom context")
        out = []
        for i in range(self.L, self.R + 1):
            out.extend(g.component(i).data)
        return out

    def element_from_vec(self, vec: list, constant_tails: bool = False) -> GradedHomElement:
        v, w, f = self.src, self.dst, self.field
        mats = {}
        for i in range(self.L, self.R + 1):
            r, c = w.dim(i), v.dim(i)
            o = self.off0[i]
            mats[i] = Matrix(f, r, c, tuple(vec[o:o + r * c]))

        if constant_tails:
            def fn(i):
                if i < self.L:
                    return mats[self.L]
                if i > self.R:
                    return mats[self.R]
                return mats[i]
        else:
            def fn(i):
                if i < self.L or i > self.R:
                    return Matrix.zeros(f, w.dim(i), v.dim(i))
                return mats[i]
        return make_element(v, w, 0, self.L, self.R, fn)

    def reduce_vec(self, vec: list) -> list:
        return reduce_row_mod(vec, self.img_rows, self.img_pivots, self.field)

    def canonical_eps(self, g: GradedHomElement) -> GradedHomElement:
        """Canonical representative of the class of ``g`` in Hom_eps.

        Components outside the window do not affect the class (stable-zone
        targets are absorbable), so the representative is window-supported
        with zeros in every pivot coordinate of the image row space.
        """
        return self.element_from_vec(self.reduce_vec(self.vec_of(g)))

    def eps_coords(self, g: GradedHomElement) -> list:
        red = self.reduce_vec(self.vec_of(g))
        return [red[j] for j in self.nonpivots]

    def eps_from_coords(self, coords: list) -> GradedHomElement:
        vec = [self.field.zero] * self.N
        for j, c in zip(self.nonpivots, coords):
            vec[j] = self.field.coerce(c)
        return self.element_from_vec(vec)

    def hom_basis(self) -> list:
        out = []
        for vec in self.ker_basis_vecs:
            el = self.element_from_vec(vec, constant_tails=True)
            if not is_morphism(el):
                raise ValidationFailed("internal: kernel vector failed the morphism check")
            out.append(el)
        return out

    def eps_basis(self) -> list:
        out = []
        for j in self.nonpivots:
            vec = [self.field.zero] * self.N
            vec[j] = self.field.one
            out.append(self.element_from_vec(vec))
        return out


@lru_cache(maxsize=None)
def get_context(v: Seq, w: Seq, config: Config = DEFAULT) -> HomContext:
    return HomContext(v, w, config)


@dataclass(frozen=True, eq=False)
class HomData:
    """Result bundle of ``hom_complex``."""

    dim_hom: int
    dim_eps: int
    hom_basis: Tuple[GradedHomElement, ...]
    eps_basis: Tuple[GradedHomElement, ...]
    d0: Matrix
    dminus1: Matrix
    window: Tuple[int, int]
    certificate: StabilizationCertificate


def hom_complex(v: Seq, w: Seq, config: Config = DEFAULT) -> HomData:
    """Bases of Hom_S(v, w) and Hom_eps(v, w) plus the window differentials."""
    ctx = get_context(v, w, config)
    return HomData(ctx.dim_hom, ctx.dim_eps,
                   tuple(ctx.hom_basis()), tuple(ctx.eps_basis()),
                   ctx.d0, ctx.dminus1, (ctx.L, ctx.R), ctx.certificate)


# -- morphisms of the enlarged category ---------------------------------


@dataclass(frozen=True, eq=False)
class HatMorphism:
    """A morphism ``f_1 + [f_eps]`` with ``f_eps`` kept in canonical form."""

    f1: GradedHomElement
    feps: GradedHomElement

    def __post_init__(self):
        if (self.f1.src, self.f1.dst) != (self.feps.src, self.feps.dst):
            raise ValidationFailed("morphism parts disagree on source/target")
        if self.f1.degree != 0 or self.feps.degree != 0:
            raise ValidationFailed("morphism parts must have degree 0")

    @property
    def feps_class(self) -> GradedHomElement:
        """The canonical coset representative (alias for ``feps``)."""
        return self.feps

    @property
    def src(self) -> Seq:
        return self.f1.src

    @property
    def dst(self) -> Seq:
        return self.f1.dst

    @property
    def is_zero(self) -> bool:
        return self.f1.is_zero and self.feps.is_zero

    @property
    def is_type_one(self) -> bool:
        return self.feps.is_zero

    @property
    def is_type_eps(self) -> bool:
        return self.f1.is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, HatMorphism):
            return NotImplemented
        return self.f1 == other.f1 and self.feps == other.feps

    def __hash__(self):
        raise TypeError("HatMorphism is not hashable")

    def __add__(self, other: "HatMorphism") -> "HatMorphism":
        # canonical representatives form a linear subspace, so no re-reduction
        return HatMorphism(self.f1 + other.f1, self.feps + other.feps)

    def __neg__(self) -> "HatMorphism":
        return HatMorphism(-self.f1, -self.feps)

    def __sub__(self, other: "HatMorphism") -> "HatMorphism":
        return self + (-other)

    def scale(self, c) -> "HatMorphism":
        return HatMorphism(self.f1.scale(c), self.feps.scale(c))


def hat(f1: GradedHomElement, feps: Optional[GradedHomElement] = None,
        config: Config = DEFAULT) -> HatMorphism:
    """Build a morphism, checking the type-1 part and canonicalizing the
    epsilon part."""
    if not is_morphism(f1):
        raise ValidationFailed("type-1 part does not commute with the differentials")
    if feps is None:
        feps = zero_element(f1.src, f1.dst, 0)
    ctx = get_context(f1.src, f1.dst, config)
    return HatMorphism(f1, ctx.canonical_eps(feps))


def hat_eps(feps: GradedHomElement, config: Config = DEFAULT) -> HatMorphism:
    return hat(zero_element(feps.src, feps.dst, 0), feps, config)


def identity_hat(v: Seq) -> HatMorphism:
    return HatMorphism(identity_element(v), zero_element(v, v, 0))


def zero_hat(v: Seq, w: Seq) -> HatMorphism:
    return HatMorphism(zero_element(v, w, 0), zero_element(v, w, 0))


def compose_hat(g: HatMorphism, f: HatMorphism, config: Config = DEFAULT) -> HatMorphism:
    """``g o f = g_1 f_1 + [g_1 f_eps + g_eps f_1]`` (epsilon squares to zero)."""
    if f.dst != g.src:
        raise ValidationFailed("compose: target/source mismatch")
    f1 = compose(g.f1, f.f1)
    eps = compose(g.f1, f.feps) + compose(g.feps, f.f1)
    ctx = get_context(f.src, g.dst, config)
    return HatMorphism(f1, ctx.canonical_eps(eps))


def shift_hat(h: HatMorphism, k: int, config: Config = DEFAULT) -> HatMorphism:
    f1 = shift_element(h.f1, k)
    eps = shift_element(h.feps, k)
    ctx = get_context(f1.src, f1.dst, config)
    return HatMorphism(f1, ctx.canonical_eps(eps))


# -- direct sums ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DirectSum:
    seq: Seq
    include_left: HatMorphism
    include_right: HatMorphism
    project_left: HatMorphism
    project_right: HatMorphism


def direct_sum(v: Seq, w: Seq) -> DirectSum:
    """Blockwise direct sum with its inclusion and projection morphisms."""
    s = direct_sum_seq(v, w)
    f = v.field
    z = Matrix.zeros

    def inc_l(i):
        return Matrix.identity(f, v.dim(i)).vstack(z(f, w.dim(i), v.dim(i)))

    def inc_r(i):
        return z(f, v.dim(i), w.dim(i)).vstack(Matrix.identity(f, w.dim(i)))

    def pr_l(i):
        return Matrix.identity(f, v.dim(i)).hstack(z(f, v.dim(i), w.dim(i)))

    def pr_r(i):
        return z(f, w.dim(i), v.dim(i)).hstack(Matrix.identity(f, w.dim(i)))

    lo, hi = min(v.lo, w.lo), max(v.hi, w.hi)
    il = hat(make_element(v, s, 0, lo, hi, inc_l))
    ir = hat(make_element(w, s, 0, lo, hi, inc_r))
    pl = hat(make_element(s, v, 0, lo, hi, pr_l))
    pr = hat(make_element(s, w, 0, lo, hi, pr_r))
    return DirectSum(s, il, ir, pl, pr)
