"""Vectors, projective points and subspaces of F_q^k.

A vector is a tuple of field elements.  It is also identified by its packed
integer ``sum(x_i * q**(k-1-i))``, so numeric order on packed integers is the
lexicographic order on coordinate tuples.  A projective point is the
representative whose first nonzero coordinate is 1.

Subspaces are kept in reduced row echelon form, which makes equality of
subspaces equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .config import current_caps
from .errors import DimensionMismatch, EnumerationTooLarge, SpaceTooLarge, ZeroVector
from .field import FieldCtx
from .qcombinatorics import gaussian_binomial

Vector = tuple[int, ...]


# -- packing ------------------------------------------------------------------

def place_values(ctx: FieldCtx, k: int) -> np.ndarray:
    return ctx.q ** np.arange(k - 1, -1, -1, dtype=np.int64)


def encode(ctx: FieldCtx, v: Sequence[int]) -> int:
    x = 0
    for c in v:
        x = x * ctx.q + int(c)
    return x


def decode(ctx: FieldCtx, k: int, x: int) -> Vector:
    out = []
    for _ in range(k):
        x, c = divmod(x, ctx.q)
        out.append(c)
    return tuple(reversed(out))


def pack_rows(ctx: FieldCtx, digits: np.ndarray) -> np.ndarray:
    digits = np.asarray(digits, dtype=np.int64)
    return digits @ place_values(ctx, digits.shape[-1])


def unpack(ctx: FieldCtx, k: int, packed) -> np.ndarray:
    packed = np.asarray(packed, dtype=np.int64)
    return (packed[..., None] // place_values(ctx, k)) % ctx.q


def check_space(ctx: FieldCtx, k: int) -> None:
    if ctx.q**k > current_caps().max_qk:
        raise SpaceTooLarge(f"q^k = {ctx.q}^{k} exceeds the cap {current_caps().max_qk}")


# -- vectors and projective points ---------------------------------------------

def unit(k: int, i: int) -> Vector:
    """The i-th standard basis vector (0-based)."""
    return tuple(1 if j == i else 0 for j in range(k))


def normalize(ctx: FieldCtx, v: Sequence[int]) -> tuple[Vector, int]:
    """Return ``(rep, s)`` with ``v = s * rep`` and rep's leading entry 1."""
    for c in v:
        if c:
            s = int(c)
            inv = ctx.inv(s)
            return tuple(ctx.mul(inv, int(x)) for x in v), s
    raise ZeroVector("the zero vector has no projective point")


def projective_packed(ctx: FieldCtx, k: int) -> np.ndarray:
    """Packed representatives of all points of PG(k-1, q), ascending."""
    check_space(ctx, k)
    q = ctx.q
    # Representatives with leading 1 in position i: q^(k-1-i) of them, packed
    # as q^(k-1-i) + tail; iterating i upward would give descending blocks.
    blocks = [q ** (k - 1 - i) + np.arange(q ** (k - 1 - i), dtype=np.int64) for i in range(k - 1, -1, -1)]
    return np.concatenate(blocks)


def enumerate_projective_points(ctx: FieldCtx, k: int) -> list[Vector]:
    """All (q^k - 1)/(q - 1) normalized representatives in lexicographic order."""
    return [tuple(int(c) for c in row) for row in unpack(ctx, k, projective_packed(ctx, k))]


def dot(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        acc = ctx.add(acc, ctx.mul(int(x), int(y)))
    return acc


def lin_comb(ctx: FieldCtx, coeffs: Sequence[int], vectors: Sequence[Sequence[int]]) -> Vector:
    k = len(vectors[0])
    out = [0] * k
    for c, v in zip(coeffs, vectors):
        for i in range(k):
            out[i] = ctx.add(out[i], ctx.mul(int(c), int(v[i])))
    return tuple(out)


# -- row reduction ----------------------------------------------------------------

def rref(ctx: FieldCtx, rows: Sequence[Sequence[int]], k: int | None = None) -> list[list[int]]:
    """Reduced row echelon form with zero rows dropped."""
    mat = [[int(x) for x in r] for r in rows]
    if not mat:
        return []
    ncols = len(mat[0]) if k is None else k
    out_rows = 0
    for col in range(ncols):
        piv = next((i for i in range(out_rows, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[out_rows], mat[piv] = mat[piv], mat[out_rows]
        inv = ctx.inv(mat[out_rows][col])
        mat[out_rows] = [ctx.mul(inv, x) for x in mat[out_rows]]
        for i in range(len(mat)):
            if i != out_rows and mat[i][col]:
                c = mat[i][col]
                mat[i] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(mat[i], mat[out_rows])]
        out_rows += 1
        if out_rows == len(mat):
            break
    return mat[:out_rows]


def rank(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(ctx, rows)) if len(rows) else 0


def pivots_of(basis: Sequence[Sequence[int]]) -> list[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


# -- subspaces ----------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    ctx: FieldCtx = field(compare=False, repr=False, hash=False)
    k: int
    basis: tuple[Vector, ...]
    q: int = field(default=0)

    def __post_init__(self):
        if not self.q:
            object.__setattr__(self, "q", self.ctx.q)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return pivots_of(self.basis)

    def points(self) -> list[Vector]:
        """Normalized representatives of the 1-dim subspaces inside."""
        if not self.basis:
            return []
        coeffs = unpack(self.ctx, self.dim, projective_packed(self.ctx, self.dim))
        pts = self.ctx.matmul(coeffs, np.array(self.basis, dtype=np.int64))
        return [tuple(int(c) for c in row) for row in pts]

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __repr__(self) -> str:
        return f"Subspace(q={self.q}, k={self.k}, basis={list(self.basis)})"


def _check_ambient(*spaces: Subspace) -> None:
    first = spaces[0]
    for s in spaces[1:]:
        if s.k != first.k or s.q != first.q:
            raise DimensionMismatch(f"subspaces live in different ambient spaces: {first.q, first.k} vs {s.q, s.k}")


def span(ctx: FieldCtx, k: int, vectors: Sequence[Sequence[int]]) -> Subspace:
    for v in vectors:
        if len(v) != k:
            raise DimensionMismatch(f"vector {tuple(v)} does not have length {k}")
    return Subspace(ctx, k, tuple(tuple(r) for r in rref(ctx, vectors, k)))


def zero_space(ctx: FieldCtx, k: int) -> Subspace:
    return Subspace(ctx, k, ())


def full_space(ctx: FieldCtx, k: int) -> Subspace:
    return Subspace(ctx, k, tuple(unit(k, i) for i in range(k)))


def coordinate_subspace(ctx: FieldCtx, k: int, coords: Sequence[int]) -> Subspace:
    return span(ctx, k, [unit(k, i) for i in coords])


def orthogonal_complement(a: Subspace) -> Subspace:
    """Complement under the standard bilinear form sum(x_i * y_i)."""
    ctx, k = a.ctx, a.k
    basis = [list(r) for r in a.basis]
    piv = pivots_of(basis)
    free = [j for j in range(k) if j not in piv]
    out = []
    for f in free:
        v = [0] * k
        v[f] = 1
        for row, p in zip(basis, piv):
            v[p] = ctx.neg(row[f])
        out.append(v)
    return span(ctx, k, out)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return span(a.ctx, a.k, list(a.basis) + list(b.basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return orthogonal_complement(subspace_sum(orthogonal_complement(a), orthogonal_complement(b)))


def contains(a: Subspace, v: Sequence[int]) -> bool:
    if len(v) != a.k:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {a.k}")
    ctx = a.ctx
    w = [int(x) for x in v]
    for row, p in zip(a.basis, a.pivots):
        if w[p]:
            c = w[p]
            w = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(w, row)]
    return not any(w)


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    return all(contains(b, v) for v in a.basis)


# -- enumeration -------------------------------------------------------------------

def _row_candidates(ctx: FieldCtx, k: int, pivots: tuple[int, ...]) -> list[np.ndarray]:
    """Packed values each RREF row can take for the given pivot columns."""
    q = ctx.q
    pv = place_values(ctx, k)
    pset = set(pivots)
    out = []
    for p in pivots:
        free = [j for j in range(p + 1, k) if j not in pset]
        vals = np.array([pv[p]], dtype=np.int64)
        for j in free:
            vals = (vals[:, None] + np.arange(q, dtype=np.int64)[None, :] * pv[j]).reshape(-1)
        out.append(vals)
    return out


def pivot_patterns(k: int, r: int) -> list[tuple[int, ...]]:
    return list(combinations(range(k), r))


def rref_batches(
    ctx: FieldCtx, k: int, r: int, batch: int = 1 << 16, patterns: Sequence[tuple[int, ...]] | None = None
) -> Iterator[np.ndarray]:
    """Yield arrays of shape (B, r): the packed RREF rows of every r-dim subspace.

    Pivot patterns are walked in lexicographic order and the free entries in
    mixed-radix order, so the sequence is deterministic.  ``patterns``
    restricts the walk to a subset of pivot patterns, which is how work is
    split between processes.
    """
    if r == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    for pivots in pivot_patterns(k, r) if patterns is None else patterns:
        cands = _row_candidates(ctx, k, pivots)
        sizes = [len(c) for c in cands]
        total = int(np.prod(sizes, dtype=object))
        for start in range(0, total, batch):
            idx = np.arange(start, min(total, start + batch), dtype=np.int64)
            rows = np.empty((len(idx), r), dtype=np.int64)
            for i in range(r - 1, -1, -1):
                idx, choice = np.divmod(idx, sizes[i])
                rows[:, i] = cands[i][choice]
            yield rows


def check_enumeration(ctx: FieldCtx, k: int, r: int) -> int:
    count = gaussian_binomial(k, r, ctx.q)
    cap = current_caps().max_subspaces
    if count > cap:
        raise EnumerationTooLarge(f"Gaussian({k},{r})_{ctx.q} = {count} subspaces exceeds the cap {cap}")
    return count


def enumerate_subspaces(ctx: FieldCtx, k: int, r: int) -> Iterator[Subspace]:
    """Every r-dim subspace of F_q^k exactly once, as canonical RREF bases."""
    if not 0 <= r <= k:
        raise DimensionMismatch(f"no {r}-dim subspaces in dimension {k}")
    check_enumeration(ctx, k, r)
    for rows in rref_batches(ctx, k, r):
        digits = unpack(ctx, k, rows)
        for basis in digits.tolist():
            yield Subspace(ctx, k, tuple(tuple(row) for row in basis))


def batch_rank(ctx: FieldCtx, mats: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices, shape (B, R, C) -> (B,)."""
    m = np.array(mats, dtype=np.int64, copy=True)
    b_count, nrows, ncols = m.shape
    ranks = np.zeros(b_count, dtype=np.int64)
    used = np.zeros((b_count, nrows), dtype=bool)
    for c in range(ncols):
        cand = (m[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        piv = np.argmax(cand[b], axis=1)
        prow = m[b, piv]
        prow = ctx.vmul(prow, ctx.inv_table[prow[:, c]][:, None])
        m[b, piv] = prow
        factors = m[b, :, c].copy()
        factors[np.arange(len(b)), piv] = 0
        m[b] = ctx.vsub(m[b], ctx.vmul(factors[:, :, None], prow[:, None, :]))
        used[b, piv] = True
        ranks[b] += 1
    return ranks
