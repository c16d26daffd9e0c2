"""Z-indexed sequences of finite-dimensional vector spaces with tame tails.

A ``Seq`` stores a finite window ``[lo, hi]`` of dimensions and the maps
``d^i : V^i -> V^(i+1)`` inside it.  Behaviour outside the window is declared
per side:

* ``Tail.ZERO``  - every degree beyond the window is the zero space;
* ``Tail.ISO``   - every degree beyond the window keeps the boundary
  dimension and the transition maps are ``(-1)^i * identity``.

The alternating sign is the normal form used throughout the package: with it,
shifting by ``n`` sends the rank-one interval object supported on ``[a, b]``
to the one supported on ``[a-n, b-n]`` on the nose, and all tail formulas
become periodic with period at most 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from .errors import ValidationFailed
from .linalg import Field, Matrix

NEG_INF = -math.inf
POS_INF = math.inf


class Tail(Enum):
    ZERO = "zero"
    ISO = "iso"


def signed_identity(field: Field, n: int, degree: int) -> Matrix:
    """The transition ``(-1)^degree * id`` used by ISO tails."""
    return Matrix.scalar_matrix(field, n, 1 if degree % 2 == 0 else -1)


@dataclass(frozen=True)
class Seq:
    field: Field
    lo: int
    hi: int
    dims: Tuple[int, ...]
    maps: Tuple[Matrix, ...]
    left_tail: Tail
    right_tail: Tail

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValidationFailed("window must satisfy lo <= hi")
        n = self.hi - self.lo + 1
        if len(self.dims) != n:
            raise ValidationFailed("dims length does not match window")
        if len(self.maps) != n - 1:
            raise ValidationFailed("maps length does not match window")
        if any(d < 0 for d in self.dims):
            raise ValidationFailed("negative dimension")
        for k, m in enumerate(self.maps):
            if m.field != self.field:
                raise ValidationFailed("map over wrong field")
            if m.rows != self.dims[k + 1] or m.cols != self.dims[k]:
                raise ValidationFailed(
                    f"map at degree {self.lo + k} has shape {m.rows}x{m.cols}, "
                    f"expected {self.dims[k + 1]}x{self.dims[k]}")

    # -- degreewise access (tail-aware) --------------------------------

    def dim(self, i: int) -> int:
        if i < self.lo:
            return self.dims[0] if self.left_tail is Tail.ISO else 0
        if i > self.hi:
            return self.dims[-1] if self.right_tail is Tail.ISO else 0
        return self.dims[i - self.lo]

    def map_at(self, i: int) -> Matrix:
        """The map ``d^i : V^i -> V^(i+1)``, materializing tails on demand."""
        if self.lo <= i < self.hi:
            return self.maps[i - self.lo]
        if i >= self.hi:
            if self.right_tail is Tail.ISO:
                return signed_identity(self.field, self.dims[-1], i)
            return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))
        # i < lo
        if self.left_tail is Tail.ISO:
            return signed_identity(self.field, self.dims[0], i)
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    def materialize(self, m: int, n: int) -> tuple:
        """Explicit ``(dims, maps)`` over degrees ``m..n`` (maps ``m..n-1``)."""
        if n < m:
            raise ValidationFailed("materialize: empty range")
        return ([self.dim(i) for i in range(m, n + 1)],
                [self.map_at(i) for i in range(m, n)])

    # -- global facts ---------------------------------------------------

    @property
    def is_zero_object(self) -> bool:
        return (all(d == 0 for d in self.dims)
                and self.left_tail is Tail.ZERO and self.right_tail is Tail.ZERO)

    @property
    def span(self) -> int:
        return self.hi - self.lo

    def stable_dim(self, side: str) -> int:
        if side == "left":
            return self.dims[0] if self.left_tail is Tail.ISO else 0
        return self.dims[-1] if self.right_tail is Tail.ISO else 0


def make_seq(field: Field, lo: int, dims, maps, left_tail: Tail, right_tail: Tail) -> Seq:
    """Build a Seq in normal form.

    Normalization: an ISO tail with stable dimension zero is the same object
    as a ZERO tail; zero-dimensional window edges under a ZERO tail and
    signed-identity edge maps under an ISO tail are trimmed.  The zero object
    normalizes to window [0,0], dims (0,).
    """
    dims = list(dims)
    maps = list(maps)
    if len(dims) != len(maps) + 1:
        raise ValidationFailed("dims/maps length mismatch")
    if dims and dims[0] == 0 and left_tail is Tail.ISO:
        left_tail = Tail.ZERO
    if dims and dims[-1] == 0 and right_tail is Tail.ISO:
        right_tail = Tail.ZERO
    changed = True
    while changed and len(dims) > 1:
        changed = False
        if left_tail is Tail.ZERO and dims[0] == 0:
            dims.pop(0)
            maps.pop(0)
            lo += 1
            changed = True
        elif (left_tail is Tail.ISO and dims[0] == dims[1]
              and maps[0] == signed_identity(field, dims[0], lo)):
            dims.pop(0)
            maps.pop(0)
            lo += 1
            changed = True
        if len(dims) > 1 and right_tail is Tail.ZERO and dims[-1] == 0:
            dims.pop()
            maps.pop()
            changed = True
        elif (len(dims) > 1 and right_tail is Tail.ISO and dims[-1] == dims[-2]
              and maps[-1] == signed_identity(field, dims[-1], lo + len(dims) - 2)):
            dims.pop()
            maps.pop()
            changed = True
        if dims[0] == 0 and left_tail is Tail.ISO:
            left_tail = Tail.ZERO
            changed = True
        if dims[-1] == 0 and right_tail is Tail.ISO:
            right_tail = Tail.ZERO
            changed = True
    if len(dims) == 1 and dims[0] == 0:
        return Seq(field, 0, 0, (0,), (), Tail.ZERO, Tail.ZERO)
    return Seq(field, lo, lo + len(dims) - 1, tuple(dims), tuple(maps),
               left_tail, right_tail)


def zero_seq(field: Field) -> Seq:
    return Seq(field, 0, 0, (0,), (), Tail.ZERO, Tail.ZERO)


def interval(field: Field, a, b) -> Seq:
    """The interval indecomposable: rank one on degrees ``a..b`` with
    transitions ``(-1)^i``, zero elsewhere.  Endpoints may be ``-inf``/``inf``."""
    left_inf = a == NEG_INF
    right_inf = b == POS_INF
    if not left_inf and not isinstance(a, int):
        raise ValidationFailed(f"bad interval endpoint: {a!r}")
    if not right_inf and not isinstance(b, int):
        raise ValidationFailed(f"bad interval endpoint: {b!r}")
    if not left_inf and not right_inf and a > b:
        raise ValidationFailed("interval endpoints out of order")
    if left_inf and right_inf:
        return Seq(field, 0, 0, (1,), (), Tail.ISO, Tail.ISO)
    if left_inf:
        return Seq(field, b, b, (1,), (), Tail.ISO, Tail.ZERO)
    if right_inf:
        return Seq(field, a, a, (1,), (), Tail.ZERO, Tail.ISO)
    dims = (1,) * (b - a + 1)
    maps = tuple(signed_identity(field, 1, i) for i in range(a, b))
    return Seq(field, a, b, dims, maps, Tail.ZERO, Tail.ZERO)


def shift(v: Seq, n: int) -> Seq:
    """Degree shift: ``shift(v, n)`` has ``V^(n+i)`` in degree ``i`` and
    differential ``(-1)^n d^(n+i)``."""
    if n % 2 == 0:
        maps = v.maps
    else:
        maps = tuple(-m for m in v.maps)
    return make_seq(v.field, v.lo - n, v.dims, maps, v.left_tail, v.right_tail)


def direct_sum_seq(v: Seq, w: Seq) -> Seq:
    """Blockwise direct sum on the union window (inclusions live in hom.py)."""
    if v.field != w.field:
        raise ValidationFailed("direct sum over different fields")
    lo = min(v.lo, w.lo)
    hi = max(v.hi, w.hi)
    left = Tail.ISO if Tail.ISO in (v.left_tail, w.left_tail) else Tail.ZERO
    right = Tail.ISO if Tail.ISO in (v.right_tail, w.right_tail) else Tail.ZERO
    # one past the union window both summands are stable, so the boundary
    # dimension there is the true stable dimension of the sum
    if left is Tail.ISO:
        lo -= 1
    if right is Tail.ISO:
        hi += 1
    vd, vm = v.materialize(lo, hi)
    wd, wm = w.materialize(lo, hi)
    dims = [a + b for a, b in zip(vd, wd)]
    f = v.field
    maps = []
    for k in range(hi - lo):
        a, b = vm[k], wm[k]
        top = a.hstack(Matrix.zeros(f, a.rows, b.cols))
        bot = Matrix.zeros(f, b.rows, a.cols).hstack(b)
        maps.append(top.vstack(bot))
    return make_seq(f, lo, dims, maps, left, right)
