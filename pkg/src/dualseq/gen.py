"""Random generators for tests and experiment scripts.

All functions take an explicit ``random.Random`` so callers control seeds.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .barcode import Interval, Barcode, assemble, make_barcode
from .dualnum import EpsComplex, MinimalComplex, make_minimal, validate
from .graded import GradedHomElement, make_element
from .linalg import Field, Matrix, _rref
from .seq import NEG_INF, POS_INF, Seq, Tail, make_seq


def random_scalar(rng: random.Random, field: Field):
    if field.p is None:
        return field.coerce(rng.randint(-3, 3))
    return field.coerce(rng.randrange(field.p))


def random_matrix(rng: random.Random, field: Field, rows: int, cols: int) -> Matrix:
    return Matrix(field, rows, cols,
                  tuple(random_scalar(rng, field) for _ in range(rows * cols)))


def random_invertible(rng: random.Random, field: Field, n: int) -> Matrix:
    from .linalg import rank as matrix_rank
    while True:
        m = random_matrix(rng, field, n, n)
        if matrix_rank(m) == n:
            return m


def random_interval(rng: random.Random, lo: int = -4, hi: int = 4) -> Interval:
    a = rng.choice([NEG_INF] + list(range(lo, hi + 1)))
    floor = int(a) if isinstance(a, int) else lo
    b = rng.choice(list(range(floor, hi + 1)) + [POS_INF])
    return Interval(a, b)


def random_barcode(rng: random.Random, field: Field, max_bars: int = 8,
                   lo: int = -4, hi: int = 4) -> Barcode:
    n = rng.randint(0, max_bars)
    return make_barcode(field, [random_interval(rng, lo, hi) for _ in range(n)])


def random_seq(rng: random.Random, field: Field, max_bars: int = 8,
               lo: int = -4, hi: int = 4, scrambled: bool = True) -> Seq:
    """A random sequence, optionally conjugated by random basis changes so
    it does not arrive in normal form."""
    v = assemble(random_barcode(rng, field, max_bars, lo, hi))
    if not scrambled or v.is_zero_object:
        return v
    from .linalg import inverse
    u = {i: random_invertible(rng, field, v.dim(i))
         for i in range(v.lo, v.hi + 1)}
    maps = []
    for i in range(v.lo, v.hi):
        maps.append(u[i + 1] @ v.map_at(i) @ inverse(u[i]))
    # boundary changes of basis must respect the declared tails, so only
    # interior degrees are scrambled when a tail is Iso
    if v.left_tail is Tail.ISO or v.right_tail is Tail.ISO:
        fixed_lo = v.left_tail is Tail.ISO
        fixed_hi = v.right_tail is Tail.ISO
        maps = []
        for i in range(v.lo, v.hi):
            a = Matrix.identity(field, v.dim(i)) if (fixed_lo and i == v.lo) else u[i]
            b = Matrix.identity(field, v.dim(i + 1)) if (fixed_hi and i + 1 == v.hi) else u[i + 1]
            maps.append(b @ v.map_at(i) @ inverse(a))
    return make_seq(field, v.lo, tuple(v.dim(i) for i in range(v.lo, v.hi + 1)),
                    maps, v.left_tail, v.right_tail)


def random_d1(rng: random.Random, field: Field, ranks: List[int]) -> List[Matrix]:
    """Random differentials with d1.d1 = 0: a staircase profile conjugated
    by random invertible matrices."""
    n = len(ranks)
    s = [0] * n  # s[k] = rank of d1 at position k (degree lo+k)
    for k in range(n - 1):
        cap = min(ranks[k] - (s[k - 1] if k else 0), ranks[k + 1])
        s[k] = rng.randint(0, max(cap, 0)) if cap > 0 else 0
    u = [random_invertible(rng, field, r) for r in ranks]
    from .linalg import inverse
    maps = []
    for k in range(n - 1):
        src_used = s[k - 1] if k else 0
        stair = Matrix.zeros(field, ranks[k + 1], ranks[k]).to_lists()
        for t in range(s[k]):
            stair[t][src_used + t] = field.one
        d = Matrix.from_rows(field, stair) if ranks[k + 1] and ranks[k] \
            else Matrix.zeros(field, ranks[k + 1], ranks[k])
        maps.append(u[k + 1] @ d @ inverse(u[k]))
    return maps


def random_deps_for(rng: random.Random, field: Field, ranks: List[int],
                    d1: List[Matrix]) -> List[Matrix]:
    """Uniform sample from the solution space of the mixed differential law
    d1^(i+1) deps^i + deps^(i+1) d1^i = 0 (one global linear system)."""
    n = len(ranks)
    off = []
    total = 0
    for k in range(n - 1):
        off.append(total)
        total += ranks[k + 1] * ranks[k]
    rows = []
    for k in range(n - 2):
        d_next = d1[k + 1].to_lists()
        d_here = d1[k].to_lists()
        for a in range(ranks[k + 2]):
            for b in range(ranks[k]):
                row = [field.zero] * total
                for c in range(ranks[k + 1]):
                    if d_next[a][c]:
                        row[off[k] + c * ranks[k] + b] = d_next[a][c]
                for c in range(ranks[k + 1]):
                    if d_here[c][b]:
                        cur = row[off[k + 1] + a * ranks[k + 1] + c]
                        val = cur + d_here[c][b]
                        if field.p is not None:
                            val = val % field.p
                        row[off[k + 1] + a * ranks[k + 1] + c] = val
                rows.append(row)
    work = [list(r) for r in rows]
    rk, pivots = _rref(field, work, total)
    pivset = set(pivots)
    free = [j for j in range(total) if j not in pivset]
    vec = [field.zero] * total
    for j in free:
        vec[j] = random_scalar(rng, field)
    # back-substitute pivots so the full law holds
    for r in range(rk):
        prow = work[r]
        pcol = pivots[r]
        s = field.zero
        for j in free:
            if prow[j] and vec[j]:
                term = prow[j] * vec[j]
                s = s + term
        if field.p is not None:
            s = s % field.p
        vec[pcol] = field.neg(s)
    out = []
    for k in range(n - 1):
        r, c = ranks[k + 1], ranks[k]
        seg = vec[off[k]:off[k] + r * c]
        out.append(Matrix(field, r, c, tuple(field.coerce(x) for x in seg)))
    return out


def random_eps_complex(rng: random.Random, field: Field, max_len: int = 6,
                       max_rank: int = 4, lo_range: int = 3) -> EpsComplex:
    n = rng.randint(1, max_len)
    ranks = [rng.randint(0, max_rank) for _ in range(n)]
    if all(r == 0 for r in ranks):
        ranks[rng.randrange(n)] = 1
    lo = rng.randint(-lo_range, lo_range)
    d1 = random_d1(rng, field, ranks)
    deps = random_deps_for(rng, field, ranks, d1)
    c = EpsComplex(field, lo, tuple(ranks), tuple(d1), tuple(deps))
    rep = validate(c)
    if not rep.ok:
        raise AssertionError(f"generator produced invalid complex: {rep}")
    return c


def random_minimal(rng: random.Random, field: Field, max_len: int = 6,
                   max_rank: int = 4, lo_range: int = 3) -> MinimalComplex:
    n = rng.randint(1, max_len)
    ranks = [rng.randint(0, max_rank) for _ in range(n)]
    if all(r == 0 for r in ranks):
        ranks[rng.randrange(n)] = 1
    lo = rng.randint(-lo_range, lo_range)
    deps = [random_matrix(rng, field, ranks[k + 1], ranks[k])
            for k in range(n - 1)]
    return make_minimal(field, lo, ranks, deps)


def random_graded_element(rng: random.Random, v: Seq, w: Seq,
                          degree: int = 0) -> GradedHomElement:
    """A random graded-hom element with parity-periodic tails."""
    f = v.field
    lo = min(v.lo, w.lo - degree) - 1
    hi = max(v.hi, w.hi - degree) + 1
    window = {i: random_matrix(rng, f, w.dim(degree + i), v.dim(i))
              for i in range(lo, hi + 1)}
    tails = {}

    def fn(i):
        if lo <= i <= hi:
            return window[i]
        key = ("l" if i < lo else "r", i % 2)
        if key not in tails:
            tails[key] = random_matrix(rng, f, w.dim(degree + i), v.dim(i))
        return tails[key]

    return make_element(v, w, degree, lo, hi, fn)
