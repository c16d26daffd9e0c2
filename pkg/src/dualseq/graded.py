"""Degree-``n`` graded Hom elements between two sequences.

An element of ``Hom^n(V, W)`` is a family of matrices ``f^i : V^i -> W^(n+i)``.
Between tailed sequences the family is stored on a finite window together
with one matrix per parity on each side: outside the window every quantity
in play (dimensions, transition maps, and the elements this package ever
constructs) depends on the degree only through its parity, because ISO tails
carry the alternating-sign normal form.  The stored window always contains
the combined window of source and target, so the tail matrices have constant
shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import ValidationFailed
from .linalg import Matrix
from .seq import Seq, shift as shift_seq


def base_window(src: Seq, dst: Seq, degree: int) -> tuple:
    return (min(src.lo, dst.lo - degree), max(src.hi, dst.hi - degree))


@dataclass(frozen=True, eq=False)
class GradedHomElement:
    src: Seq
    dst: Seq
    degree: int
    lo: int
    comps: Tuple[Matrix, ...]
    ltail: Tuple[Matrix, Matrix]   # indexed by degree parity (even, odd)
    rtail: Tuple[Matrix, Matrix]

    def __post_init__(self):
        blo, bhi = base_window(self.src, self.dst, self.degree)
        if self.lo > blo or self.hi < bhi:
            raise ValidationFailed("stored window must contain the combined window")
        for k, m in enumerate(self.comps):
            i = self.lo + k
            if m.rows != self.dst.dim(self.degree + i) or m.cols != self.src.dim(i):
                raise ValidationFailed(f"component at degree {i} has wrong shape")
        for par in (0, 1):
            for mat, probe in ((self.ltail[par], self.lo - 2 + (self.lo - par) % 2),
                               (self.rtail[par], self.hi + 2 - (self.hi - par) % 2)):
                if mat.rows != self.dst.dim(self.degree + probe) or mat.cols != self.src.dim(probe):
                    raise ValidationFailed("tail matrix has wrong shape")

    @property
    def hi(self) -> int:
        return self.lo + len(self.comps) - 1

    def component(self, i: int) -> Matrix:
        if i < self.lo:
            return self.ltail[i % 2]
        if i > self.hi:
            return self.rtail[i % 2]
        return self.comps[i - self.lo]

    @property
    def is_zero(self) -> bool:
        return (all(m.is_zero for m in self.comps)
                and all(m.is_zero for m in self.ltail)
                and all(m.is_zero for m in self.rtail))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedHomElement):
            return NotImplemented
        if (self.src, self.dst, self.degree) != (other.src, other.dst, other.degree):
            return False
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        if any(self.component(i) != other.component(i) for i in range(lo, hi + 1)):
            return False
        return self.ltail == other.ltail and self.rtail == other.rtail

    def __hash__(self):
        raise TypeError("GradedHomElement is not hashable")

    # -- linear structure ----------------------------------------------

    def __add__(self, other: "GradedHomElement") -> "GradedHomElement":
        if (self.src, self.dst, self.degree) != (other.src, other.dst, other.degree):
            raise ValidationFailed("cannot add graded elements of different type")
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return make_element(self.src, self.dst, self.degree, lo, hi,
                            lambda i: self.component(i) + other.component(i))

    def __sub__(self, other: "GradedHomElement") -> "GradedHomElement":
        return self + (-other)

    def __neg__(self) -> "GradedHomElement":
        return make_element(self.src, self.dst, self.degree, self.lo, self.hi,
                            lambda i: -self.component(i))

    def scale(self, c) -> "GradedHomElement":
        return make_element(self.src, self.dst, self.degree, self.lo, self.hi,
                            lambda i: self.component(i).scale(c))


def make_element(src: Seq, dst: Seq, degree: int, lo: int, hi: int,
                 fn: Callable[[int], Matrix]) -> GradedHomElement:
    """Build an element from a component function.

    ``fn`` must be total and parity-periodic below/above the requested
    window; the tail matrices are sampled just outside it.
    """
    blo, bhi = base_window(src, dst, degree)
    lo = min(lo, blo)
    hi = max(hi, bhi)
    comps = tuple(fn(i) for i in range(lo, hi + 1))
    lt = [None, None]
    lt[(lo - 1) % 2] = fn(lo - 1)
    lt[(lo - 2) % 2] = fn(lo - 2)
    rt = [None, None]
    rt[(hi + 1) % 2] = fn(hi + 1)
    rt[(hi + 2) % 2] = fn(hi + 2)
    return GradedHomElement(src, dst, degree, lo, comps, (lt[0], lt[1]), (rt[0], rt[1]))


def zero_element(src: Seq, dst: Seq, degree: int) -> GradedHomElement:
    blo, bhi = base_window(src, dst, degree)
    z = Matrix.zeros
    return make_element(src, dst, degree, blo, bhi,
                        lambda i: z(src.field, dst.dim(degree + i), src.dim(i)))


def identity_element(v: Seq) -> GradedHomElement:
    return make_element(v, v, 0, v.lo, v.hi,
                        lambda i: Matrix.identity(v.field, v.dim(i)))


def compose(g: GradedHomElement, f: GradedHomElement) -> GradedHomElement:
    """Composite ``g o f`` of ``f: X -> Y`` (degree m) and ``g: Y -> Z`` (degree n)."""
    if f.dst != g.src:
        raise ValidationFailed("composition target/source mismatch")
    m = f.degree
    lo = min(f.lo, g.lo - m)
    hi = max(f.hi, g.hi - m)
    return make_element(f.src, g.dst, m + g.degree, lo, hi,
                        lambda i: g.component(m + i) @ f.component(i))


def differential(f: GradedHomElement) -> GradedHomElement:
    """``d(f)^i = d_W^(n+i) f^i - (-1)^n f^(i+1) d_V^i`` for ``f`` of degree n."""
    n = f.degree
    src, dst = f.src, f.dst
    sign = 1 if n % 2 == 0 else -1

    def fn(i: int) -> Matrix:
        a = dst.map_at(n + i) @ f.component(i)
        b = f.component(i + 1) @ src.map_at(i)
        return a - b if sign == 1 else a + b

    return make_element(src, dst, n + 1, f.lo - 1, f.hi + 1, fn)


def is_morphism(f: GradedHomElement) -> bool:
    """True when ``f`` is a degree-0 element commuting with the differentials."""
    return f.degree == 0 and differential(f).is_zero


def shift_element(f: GradedHomElement, k: int) -> GradedHomElement:
    """Transport ``f`` along the degree shift: component ``i`` becomes ``f^(k+i)``."""
    return make_element(shift_seq(f.src, k), shift_seq(f.dst, k), f.degree,
                        f.lo - k, f.hi - k, lambda i: f.component(k + i))
