"""Complexes of finite-rank free modules over the dual numbers k[eps].

A differential is stored split as ``D = d1 + eps * deps``; ``D^2 = 0`` is
equivalent to the two relations

    d1^(i+1) d1^i = 0
    d1^(i+1) deps^i + deps^(i+1) d1^i = 0 .

``minimize`` reduces any valid complex to one with ``d1 = 0`` by choosing,
in every degree, a basis adapted to ``B = im(d1) <= Z = ker(d1)`` and a
complement ``C`` with ``d1 : C -> B`` the identity in the new coordinates.
The reduction comes with an explicit homotopy equivalence whose identities
are verified exactly, split into 1-part and eps-part.

Minimal complexes are the same data as sequences with both tails Zero
(``D = eps * d_V``); ``to_seq``/``from_seq`` realize that dictionary, and
``hom_k`` computes homotopy classes of chain maps directly on the complex
side, independent of the sequence machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .errors import ValidationFailed
from .linalg import (Field, Matrix, _rref, block_matrix, complement, inverse,
                     rank as matrix_rank, solve, subspaces)
from .seq import Seq, Tail, make_seq


@dataclass(frozen=True)
class EpsComplex:
    """Free k[eps]-modules of the given ranks with differential d1 + eps*deps."""

    field: Field
    lo: int
    ranks: Tuple[int, ...]
    d1: Tuple[Matrix, ...]
    deps: Tuple[Matrix, ...]

    def __post_init__(self):
        if not self.ranks:
            raise ValidationFailed("complex needs at least one degree")
        if any(r < 0 for r in self.ranks):
            raise ValidationFailed("negative rank")
        n = len(self.ranks)
        if len(self.d1) != n - 1 or len(self.deps) != n - 1:
            raise ValidationFailed("wrong number of differentials")
        for k in range(n - 1):
            for part, name in ((self.d1[k], "d1"), (self.deps[k], "deps")):
                if part.field != self.field:
                    raise ValidationFailed(f"{name} over wrong field")
                if part.rows != self.ranks[k + 1] or part.cols != self.ranks[k]:
                    raise ValidationFailed(
                        f"{name} at degree {self.lo + k} has shape "
                        f"{part.rows}x{part.cols}, expected "
                        f"{self.ranks[k + 1]}x{self.ranks[k]}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def rank_at(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def d1_at(self, i: int) -> Matrix:
        if self.lo <= i < self.hi:
            return self.d1[i - self.lo]
        return Matrix.zeros(self.field, self.rank_at(i + 1), self.rank_at(i))

    def deps_at(self, i: int) -> Matrix:
        if self.lo <= i < self.hi:
            return self.deps[i - self.lo]
        return Matrix.zeros(self.field, self.rank_at(i + 1), self.rank_at(i))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    degree: Optional[int] = None
    law: Optional[str] = None

    def __str__(self):
        if self.ok:
            return "ok"
        return f"violated {self.law} at degree {self.degree}"


def validate(c: EpsComplex) -> ValidationReport:
    """Check the two differential laws, reporting the first violation."""
    for i in range(c.lo, c.hi - 1):
        if not (c.d1_at(i + 1) @ c.d1_at(i)).is_zero:
            return ValidationReport(False, i, "d1.d1 = 0")
    for i in range(c.lo, c.hi - 1):
        mixed = c.d1_at(i + 1) @ c.deps_at(i) + c.deps_at(i + 1) @ c.d1_at(i)
        if not mixed.is_zero:
            return ValidationReport(False, i, "d1.deps + deps.d1 = 0")
    return ValidationReport(True)


@dataclass(frozen=True)
class MinimalComplex:
    """A complex whose differential is pure eps: D = eps * deps."""

    field: Field
    lo: int
    ranks: Tuple[int, ...]
    deps: Tuple[Matrix, ...]

    def __post_init__(self):
        as_complex(self)  # reuse the shape validation

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1


def as_complex(n: MinimalComplex) -> EpsComplex:
    zero_d1 = tuple(Matrix.zeros(n.field, n.ranks[k + 1], n.ranks[k])
                    for k in range(len(n.ranks) - 1))
    return EpsComplex(n.field, n.lo, n.ranks, zero_d1, n.deps)


def make_minimal(field: Field, lo: int, ranks, deps) -> MinimalComplex:
    """Normal form: zero ranks at the ends are trimmed."""
    ranks = list(ranks)
    deps = list(deps)
    while len(ranks) > 1 and ranks[0] == 0:
        ranks.pop(0)
        deps.pop(0)
        lo += 1
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
        deps.pop()
    if len(ranks) == 1 and ranks[0] == 0:
        lo = 0
    return MinimalComplex(field, lo, tuple(ranks), tuple(deps))


# -- the dictionary with sequences ----------------------------------------


def to_seq(n: MinimalComplex) -> Seq:
    """Minimal complexes are sequences with both tails Zero: D = eps*d_V."""
    return make_seq(n.field, n.lo, n.ranks, n.deps, Tail.ZERO, Tail.ZERO)


def from_seq(v: Seq) -> MinimalComplex:
    if v.left_tail is not Tail.ZERO or v.right_tail is not Tail.ZERO:
        raise ValidationFailed(
            "only sequences with both tails Zero correspond to finite "
            "complexes of free modules")
    return make_minimal(v.field, v.lo, v.dims, v.maps)


# -- cohomology ------------------------------------------------------------


def cohomology(v: Seq) -> Dict[int, int]:
    """dim H^i = dim ker(d^i) + dim cok(d^(i-1)), degree by degree.

    Both tails contribute nothing (zero maps on zero spaces, or signed
    identities), so the support lies inside the window.
    """
    out: Dict[int, int] = {}
    for i in range(v.lo, v.hi + 1):
        d_here = v.map_at(i)
        d_prev = v.map_at(i - 1)
        ker = d_here.cols - matrix_rank(d_here)
        cok = v.dim(i) - matrix_rank(d_prev)
        out[i] = ker + cok
    return out


def total_matrix(d1: Matrix, deps: Matrix) -> Matrix:
    """The differential over k on the underlying 2r-dimensional spaces,
    in the basis (e, eps*e)."""
    f = d1.field
    zero = Matrix.zeros(f, d1.rows, d1.cols)
    return block_matrix(f, [[d1, zero], [deps, d1]])


def eps_cohomology(c: EpsComplex) -> Dict[int, int]:
    """Cohomology dimensions of the complex over k (the underlying total
    complex); homotopy equivalences over k[eps] preserve these."""
    out: Dict[int, int] = {}
    prev_rank = 0
    for i in range(c.lo, c.hi + 1):
        here = total_matrix(c.d1_at(i), c.deps_at(i))
        r = matrix_rank(here)
        out[i] = 2 * c.rank_at(i) - r - prev_rank
        prev_rank = r
    return out


# -- minimal model reduction ------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomotopyEquivalence:
    """Chain maps f: M -> N, g: N -> M and homotopy k with f g = id and
    g f - id = D k + k D, all split into (1, eps) parts per degree.

    Component index t corresponds to degree M.lo + t; f, g have one entry
    per degree of M's window, k maps degree i to i-1.
    """

    src: EpsComplex
    dst: MinimalComplex
    f1: Tuple[Matrix, ...]
    feps: Tuple[Matrix, ...]
    g1: Tuple[Matrix, ...]
    geps: Tuple[Matrix, ...]
    k1: Tuple[Matrix, ...]
    keps: Tuple[Matrix, ...]

    def _pair(self, comps: Tuple[Matrix, ...], i: int, rows: int, cols: int):
        t = i - self.src.lo
        if 0 <= t < len(comps):
            return comps[t]
        return Matrix.zeros(self.src.field, rows, cols)

    def f_at(self, i):
        m, n = self.src, self.dst
        r, c = (n.ranks[i - n.lo] if n.lo <= i <= n.hi else 0), m.rank_at(i)
        return (self._pair(self.f1, i, r, c), self._pair(self.feps, i, r, c))

    def g_at(self, i):
        m, n = self.src, self.dst
        r, c = m.rank_at(i), (n.ranks[i - n.lo] if n.lo <= i <= n.hi else 0)
        return (self._pair(self.g1, i, r, c), self._pair(self.geps, i, r, c))

    def k_at(self, i):
        m = self.src
        r, c = m.rank_at(i - 1), m.rank_at(i)
        return (self._pair(self.k1, i, r, c), self._pair(self.keps, i, r, c))

    def verify(self) -> None:
        m = self.src
        nd = as_complex(self.dst)
        lo = min(m.lo, nd.lo) - 1
        hi = max(m.hi, nd.hi) + 1

        def n_rank(i):
            return nd.rank_at(i)

        def n_deps(i):
            return nd.deps_at(i)

        for i in range(lo, hi + 1):
            f1_i, fe_i = self.f_at(i)
            f1_n, fe_n = self.f_at(i + 1)
            g1_i, ge_i = self.g_at(i)
            g1_n, ge_n = self.g_at(i + 1)
            dm1, dme = m.d1_at(i), m.deps_at(i)
            dne = n_deps(i)
            # f chain map: 1-part and eps-part
            if not (f1_n @ dm1).is_zero:
                raise ValidationFailed(f"f fails the 1-part chain law at {i}")
            if (dne @ f1_i) != (f1_n @ dme + fe_n @ dm1):
                raise ValidationFailed(f"f fails the eps chain law at {i}")
            # g chain map
            if not (dm1 @ g1_i).is_zero:
                raise ValidationFailed(f"g fails the 1-part chain law at {i}")
            if (dme @ g1_i + dm1 @ ge_i) != (g1_n @ dne):
                raise ValidationFailed(f"g fails the eps chain law at {i}")
            # f g = id on the target
            ident = Matrix.identity(m.field, n_rank(i))
            if (f1_i @ g1_i) != ident:
                raise ValidationFailed(f"f g is not the identity at {i}")
            if not (f1_i @ ge_i + fe_i @ g1_i).is_zero:
                raise ValidationFailed(f"(f g)_eps is nonzero at {i}")
            # g f - id = D k + k D
            k1_i, ke_i = self.k_at(i)
            k1_n, ke_n = self.k_at(i + 1)
            dm1p, dmep = m.d1_at(i - 1), m.deps_at(i - 1)
            lhs1 = g1_i @ f1_i - Matrix.identity(m.field, m.rank_at(i))
            rhs1 = dm1p @ k1_i + k1_n @ dm1
            if lhs1 != rhs1:
                raise ValidationFailed(f"homotopy identity (1-part) fails at {i}")
            lhse = g1_i @ fe_i + ge_i @ f1_i
            rhse = dmep @ k1_i + dm1p @ ke_i + ke_n @ dm1 + k1_n @ dme
            if lhse != rhse:
                raise ValidationFailed(f"homotopy identity (eps-part) fails at {i}")


def _solve_cols(a: Matrix, b: Matrix) -> Matrix:
    if b.cols == 0:
        return Matrix.zeros(a.field, a.cols, 0)
    cols = []
    for j in range(b.cols):
        x = solve(a, b.column_matrix(j))
        if x is None:
            raise ValidationFailed("internal: vector outside subspace")
        cols.append(x)
    out = cols[0]
    for c in cols[1:]:
        out = out.hstack(c)
    return out


def minimize(c: EpsComplex) -> Tuple[MinimalComplex, HomotopyEquivalence]:
    """Reduce to a complex with d1 = 0 and certify the reduction.

    Per degree the basis is reordered as (B | H | C): image of the previous
    d1, a complement of it inside the kernel, and a complement of the
    kernel.  The new basis of B^(i+1) is d1(C^i basis), which makes d1 the
    identity from the C block to the next B block; the minimal model is the
    H block with the conjugated eps differential restricted to it.
    """
    report = validate(c)
    if not report.ok:
        raise ValidationFailed(f"cannot minimize: {report}")
    f = c.field
    lo, hi = c.lo, c.hi
    n = hi - lo + 1
    Z, C, B, H, P, Pinv = {}, {}, {}, {}, {}, {}
    B[lo] = Matrix.zeros(f, c.rank_at(lo), 0)
    for i in range(lo, hi + 1):
        r = c.rank_at(i)
        Z[i] = subspaces(c.d1_at(i)).kernel  # full space at i = hi
        C[i] = complement(Z[i], r)
        if i < hi:
            B[i + 1] = c.d1_at(i) @ C[i]
        beta = _solve_cols(Z[i], B[i])
        gamma = complement(beta, Z[i].cols)
        H[i] = Z[i] @ gamma
        P[i] = B[i].hstack(H[i]).hstack(C[i])
        if P[i].rows != P[i].cols:
            raise ValidationFailed("internal: basis count mismatch")
        Pinv[i] = inverse(P[i])
    bdim = {i: B[i].cols for i in range(lo, hi + 1)}
    hdim = {i: H[i].cols for i in range(lo, hi + 1)}
    cdim = {i: C[i].cols for i in range(lo, hi + 1)}
    bdim[hi + 1] = 0

    E = {}
    for i in range(lo, hi):
        E[i] = Pinv[i + 1] @ c.deps_at(i) @ P[i]

    def block(mat: Matrix, row_i: int, row_part: str, col_i: int, col_part: str) -> Matrix:
        row_off = {"B": 0, "H": bdim[row_i], "C": bdim[row_i] + hdim[row_i]}
        col_off = {"B": 0, "H": bdim[col_i], "C": bdim[col_i] + hdim[col_i]}
        sizes = {"B": bdim, "H": hdim, "C": cdim}
        r0 = row_off[row_part]
        c0 = col_off[col_part]
        nr = sizes[row_part][row_i]
        nc = sizes[col_part][col_i]
        data = []
        for a in range(nr):
            row = mat.row(r0 + a)
            data.append(row[c0:c0 + nc])
        return Matrix.from_rows(f, data) if nr and nc else Matrix.zeros(f, nr, nc)

    deps_n = tuple(block(E[i], i + 1, "H", i, "H") for i in range(lo, hi))
    nmin = make_minimal(f, lo, tuple(hdim[i] for i in range(lo, hi + 1)), deps_n)

    f1, feps, g1, geps, k1, keps = [], [], [], [], [], []
    for i in range(lo, hi + 1):
        r = c.rank_at(i)
        h = hdim[i]
        # f1 = [0 I 0] and g1 = [0;I;0] in the adapted basis
        sel = Matrix.zeros(f, h, bdim[i]).hstack(Matrix.identity(f, h)) \
                    .hstack(Matrix.zeros(f, h, cdim[i]))
        f1.append(sel @ Pinv[i])
        g1.append(P[i] @ sel.transpose())
        # feps = [-(H,C block of E^(i-1)) 0 0]: columns of B^i are indexed by
        # the C^(i-1) basis through B^(i+1) := d1(C^i)
        if i > lo:
            ctil = block(E[i - 1], i, "H", i - 1, "C")
        else:
            ctil = Matrix.zeros(f, h, 0)
        fe = (-ctil).hstack(Matrix.zeros(f, h, hdim[i])) \
                    .hstack(Matrix.zeros(f, h, cdim[i]))
        feps.append(fe @ Pinv[i])
        # geps = [0;0;-(B,H block of E^i)]
        if i < hi:
            a_blk = block(E[i], i + 1, "B", i, "H")
        else:
            a_blk = Matrix.zeros(f, 0, h)
        ge = Matrix.zeros(f, bdim[i], h).vstack(Matrix.zeros(f, hdim[i], h)) \
                                        .vstack(-a_blk)
        geps.append(P[i] @ ge)
        # k (already sign-adjusted so that g f - id = D k + k D):
        # k1 = -id from B^i back to C^(i-1), keps = +(B,C block of E^(i-1))
        if i > lo:
            rb = c.rank_at(i - 1)
            k1_new = Matrix.zeros(f, bdim[i - 1] + hdim[i - 1], r).vstack(
                (-Matrix.identity(f, bdim[i])).hstack(
                    Matrix.zeros(f, bdim[i], hdim[i] + cdim[i])))
            b_blk = block(E[i - 1], i, "B", i - 1, "C")
            ke_new = Matrix.zeros(f, bdim[i - 1] + hdim[i - 1], r).vstack(
                b_blk.hstack(Matrix.zeros(f, cdim[i - 1], hdim[i] + cdim[i])))
            k1.append(P[i - 1] @ k1_new @ Pinv[i])
            keps.append(P[i - 1] @ ke_new @ Pinv[i])
        else:
            k1.append(Matrix.zeros(f, 0, r))
            keps.append(Matrix.zeros(f, 0, r))

    he = HomotopyEquivalence(c, nmin, tuple(f1), tuple(feps), tuple(g1),
                             tuple(geps), tuple(k1), tuple(keps))
    he.verify()
    return nmin, he


# -- homotopy classes of chain maps (oracle side) ---------------------------


def hom_k(m: MinimalComplex, n: MinimalComplex) -> Tuple[int, int]:
    """(dim of 1-part chain maps, dim of eps classes) between minimal
    complexes: chain maps are pairs (f1 intertwining deps, feps arbitrary),
    and null-homotopic ones are exactly f1 = 0 with feps of the form
    deps k1 + k1 deps."""
    if m.field != n.field:
        raise ValidationFailed("hom over different fields")
    f = m.field
    lo = min(m.lo, n.lo)
    hi = max(m.hi, n.hi)

    def rm(i):
        return m.ranks[i - m.lo] if m.lo <= i <= m.hi else 0

    def rn(i):
        return n.ranks[i - n.lo] if n.lo <= i <= n.hi else 0

    def dm(i):
        if m.lo <= i < m.hi:
            return m.deps[i - m.lo]
        return Matrix.zeros(f, rm(i + 1), rm(i))

    def dn(i):
        if n.lo <= i < n.hi:
            return n.deps[i - n.lo]
        return Matrix.zeros(f, rn(i + 1), rn(i))

    # unknowns: f^i entries, i in [lo, hi]
    off = {}
    total = 0
    for i in range(lo, hi + 1):
        off[i] = total
        total += rn(i) * rm(i)
    rows = []
    for i in range(lo, hi):
        dn_l = dn(i).to_lists()
        dm_l = dm(i).to_lists()
        for a in range(rn(i + 1)):
            for b in range(rm(i)):
                row = [f.zero] * total
                for cidx in range(rn(i)):
                    if dn_l[a][cidx]:
                        row[off[i] + cidx * rm(i) + b] = dn_l[a][cidx]
                for cidx in range(rm(i + 1)):
                    if dm_l[cidx][b]:
                        row[off[i + 1] + a * rm(i + 1) + cidx] = f.neg(dm_l[cidx][b])
                rows.append(row)
    r1, _ = _rref(f, rows, total)
    dim1 = total - r1

    # homotopy image: k^i maps degree i to i-1
    img_rows = []
    for j in range(lo, hi + 2):
        rm_j, rn_jm = rm(j), rn(j - 1)
        if rm_j * rn_jm == 0:
            continue
        dn_l = dn(j - 1).to_lists()
        dm_l = dm(j - 1).to_lists()
        for rr in range(rn_jm):
            for cc in range(rm_j):
                row = [f.zero] * total
                if j <= hi:
                    for a in range(rn(j)):
                        if dn_l[a][rr]:
                            row[off[j] + a * rm(j) + cc] = dn_l[a][rr]
                if j - 1 >= lo:
                    for b in range(rm(j - 1)):
                        if dm_l[cc][b]:
                            row[off[j - 1] + rr * rm(j - 1) + b] = dm_l[cc][b]
                img_rows.append(row)
    r2, _ = _rref(f, img_rows, total)
    return dim1, total - r2
