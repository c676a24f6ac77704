"""Projective linear codes and their brute-force analysis engines.

A code is stored as the list of its generator-matrix columns, each a
normalized projective point of F_q^k.  Everything is computed through the
hyperplane correspondence: the codeword a·G has weight n minus the number of
columns lying in the hyperplane a^⊥, and an r-dim subcode spanned by the
functionals in W has support n minus the number of columns orthogonal to W.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from . import vectorspace as vs
from .config import current_caps
from .errors import CapExceeded, DimensionMismatch, InvariantViolation, RangeError, ZeroVector
from .field import FieldCtx
from .qcombinatorics import gaussian_binomial

# elements per temporary (B, n) block in the chunked engines
_BLOCK = 1 << 21


def _spans(ctx: FieldCtx, k: int, cols: np.ndarray) -> bool:
    """Rank test on an evenly spread sample first; the full matrix only if that falls short."""
    if len(cols) > 64 * k:
        sample = cols[np.linspace(0, len(cols) - 1, 16 * k).astype(np.int64)]
        if vs.batch_rank(ctx, sample[None])[0] == k:
            return True
    return bool(vs.batch_rank(ctx, cols[None])[0] == k)


@dataclass(frozen=True, eq=False)
class LinearCode:
    ctx: FieldCtx
    k: int
    columns: np.ndarray = field(repr=False)  # (n, k) normalized points
    origin: dict[str, Any] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_columns(cls, ctx: FieldCtx, k: int, columns, origin: dict | None = None) -> "LinearCode":
        """Validate and normalize the columns; they must be distinct points spanning F_q^k."""
        cols = np.asarray(columns, dtype=np.int64).reshape(-1, k)
        if cols.size and (cols.min() < 0 or cols.max() >= ctx.q):
            raise RangeError(f"column entries must lie in range({ctx.q})")
        if len(cols) == 0:
            raise InvariantViolation("a code needs at least one column")
        if not (cols != 0).any(axis=1).all():
            raise ZeroVector("zero column in generator matrix")
        cols, _ = ctx.normalize_rows(cols)
        packed = vs.pack_rows(ctx, cols)
        if len(np.unique(packed)) != len(packed):
            raise InvariantViolation("columns are not pairwise distinct projective points")
        if not _spans(ctx, k, cols):
            raise InvariantViolation(f"columns do not span F_{ctx.q}^{k}")
        cols = np.ascontiguousarray(cols)
        cols.setflags(write=False)
        return cls(ctx, k, cols, origin)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return len(self.columns)

    @cached_property
    def packed(self) -> np.ndarray:
        return vs.pack_rows(self.ctx, self.columns)

    @cached_property
    def packed_order(self) -> np.ndarray:
        return np.argsort(self.packed, kind="stable")

    @cached_property
    def sorted_packed(self) -> np.ndarray:
        return self.packed[self.packed_order]

    def has_column(self, v: Sequence[int]) -> bool:
        rep, _ = vs.normalize(self.ctx, v)
        x = vs.encode(self.ctx, rep)
        i = np.searchsorted(self.sorted_packed, x)
        return bool(i < self.n and self.sorted_packed[i] == x)

    def column_index(self, v: Sequence[int]) -> int:
        """Position of the column proportional to v, or -1."""
        rep, _ = vs.normalize(self.ctx, v)
        x = vs.encode(self.ctx, rep)
        i = np.searchsorted(self.sorted_packed, x)
        return int(self.packed_order[i]) if i < self.n and self.sorted_packed[i] == x else -1

    def permuted(self, perm: Sequence[int]) -> "LinearCode":
        return LinearCode.from_columns(self.ctx, self.k, self.columns[np.asarray(perm)], self.origin)

    @cached_property
    def weight_distribution(self) -> "WeightDistribution":
        return weight_distribution(self)

    @property
    def min_distance(self) -> int:
        return self.weight_distribution.min_distance

    @property
    def parameters(self) -> tuple[int, int, int]:
        return self.n, self.k, self.min_distance

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, k={self.k})"


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    k: int
    q: int
    counts: dict[int, int]

    def __post_init__(self):
        if self.counts.get(0) != 1:
            raise InvariantViolation("the zero codeword must appear exactly once")
        if sum(self.counts.values()) != self.q**self.k:
            raise InvariantViolation("weight distribution does not sum to q^k")

    @property
    def min_distance(self) -> int:
        return min((w for w, m in self.counts.items() if w and m), default=0)

    def nonzero(self) -> dict[int, int]:
        return {w: m for w, m in sorted(self.counts.items()) if w and m}

    def pairs(self) -> list[list[int]]:
        return [[w, m] for w, m in sorted(self.counts.items()) if m]

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)


@dataclass(frozen=True)
class SSWDTable:
    r: int
    n: int
    k: int
    q: int
    entries: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def min_weight(self) -> int:
        return min(w for w, c in self.entries.items() if c)

    def pairs(self) -> list[list[int]]:
        return [[w, c] for w, c in sorted(self.entries.items()) if c]


# -- weights of single codewords ------------------------------------------------

def weight_of_functional(code: LinearCode, a: Sequence[int]) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.shape != (code.k,):
        raise DimensionMismatch(f"functional must have length {code.k}")
    if not a.any():
        raise ZeroVector("the zero functional does not define a hyperplane")
    vals = code.ctx.matmul(code.columns, a[:, None])[:, 0]
    return int(np.count_nonzero(vals))


def encode_message(code: LinearCode, a: Sequence[int]) -> np.ndarray:
    """The codeword a·G."""
    return code.ctx.matmul(np.asarray(a, dtype=np.int64)[None, :], code.columns.T)[0]


# -- weight distribution --------------------------------------------------------

def _functionals(code: LinearCode) -> np.ndarray:
    return vs.unpack(code.ctx, code.k, vs.projective_packed(code.ctx, code.k))


def _direct_weights(code: LinearCode) -> np.ndarray:
    """Weight of a·G for every projective functional a, by field matmul."""
    funcs = _functionals(code)
    step = max(1, _BLOCK // max(1, code.n))
    out = np.empty(len(funcs), dtype=np.int64)
    cols_t = code.columns.T
    for s in range(0, len(funcs), step):
        prod = code.ctx.matmul(funcs[s : s + step], cols_t)
        out[s : s + step] = np.count_nonzero(prod, axis=1)
    return out


def _binary_weights(code: LinearCode) -> np.ndarray:
    """q = 2: a·g is the parity of popcount(a & g) on bit-packed words."""
    if code.q != 2 or code.k > 63:
        raise RangeError("the bit-packed engine needs q = 2 and k <= 63")
    cols = code.packed.astype(np.uint64)
    funcs = vs.projective_packed(code.ctx, code.k).astype(np.uint64)
    step = max(1, _BLOCK // max(1, code.n))
    out = np.empty(len(funcs), dtype=np.int64)
    for s in range(0, len(funcs), step):
        par = np.bitwise_count(funcs[s : s + step, None] & cols[None, :]) & 1
        out[s : s + step] = par.sum(axis=1)
    return out


def fwht(f: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform of a length-2^k integer vector."""
    h = 1
    while h < len(f):
        f = f.reshape(-1, 2, h)
        f = np.stack([f[:, 0] + f[:, 1], f[:, 0] - f[:, 1]], axis=1).reshape(-1)
        h *= 2
    return f


def _spectral_weights(code: LinearCode) -> np.ndarray:
    """Prime q: count columns in each hyperplane through a discrete Fourier transform.

    With f the indicator of the column set on F_p^k and F its transform,
    #{g : a·g = 0} = (n + sum over nonzero λ of F(λa)) / p.
    """
    ctx, k, p = code.ctx, code.k, code.q
    if not ctx.is_prime_field:
        raise RangeError("the spectral engine needs a prime field")
    vs.check_space(ctx, k)
    funcs = _functionals(code)
    if p == 2:
        # fast Walsh-Hadamard transform: S(a) = sum_g (-1)^{a·g} = n - 2 wt(a)
        f = np.zeros(2**k, dtype=np.int64)
        f[code.packed] = 1
        f = fwht(f)
        return (code.n - f[vs.projective_packed(ctx, k)]) // 2
    grid = np.zeros((p,) * k, dtype=np.float64)
    grid[tuple(code.columns.T)] = 1.0
    spec = np.fft.fftn(grid)
    acc = np.zeros(len(funcs), dtype=np.complex128)
    for lam in range(1, p):
        idx = (funcs * lam) % p
        acc += spec[tuple(idx.T)]
    in_hyperplane = np.rint((code.n + acc.real) / p).astype(np.int64)
    return code.n - in_hyperplane


ENGINES = ("direct", "binary", "spectral")


def weight_distribution(code: LinearCode, method: str = "auto") -> WeightDistribution:
    """Exact weight distribution by iterating over projective functionals.

    Each functional stands for q-1 codewords.  ``method`` picks the engine;
    all engines are tested to agree.
    """
    vs.check_space(code.ctx, code.k)
    if method == "auto":
        # transform cost k q^k beats the n q^k of the other engines on prime fields
        method = "spectral" if code.ctx.m == 1 else "direct"
    engine = {"direct": _direct_weights, "binary": _binary_weights, "spectral": _spectral_weights}.get(method)
    if engine is None:
        raise ValueError(f"unknown weight engine {method!r}; choose from {ENGINES}")
    weights = engine(code)
    values, mult = np.unique(weights, return_counts=True)
    counts = {0: 1}
    for w, m in zip(values.tolist(), mult.tolist()):
        counts[w] = counts.get(w, 0) + m * (code.q - 1)
    return WeightDistribution(code.n, code.k, code.q, counts)


def minimum_distance(code: LinearCode) -> int:
    return code.min_distance


def dual_distance_at_least_3(code: LinearCode) -> bool:
    """Projectivity: nonzero columns, pairwise non-proportional."""
    cols = code.columns
    if not (cols != 0).any(axis=1).all():
        return False
    normed, _ = code.ctx.normalize_rows(cols)
    packed = vs.pack_rows(code.ctx, normed)
    return len(np.unique(packed)) == len(packed)


# -- subspace statistics --------------------------------------------------------

def m_G(code: LinearCode, v: vs.Subspace) -> int:
    """Number of columns inside V."""
    if v.k != code.k or v.q != code.q:
        raise DimensionMismatch(f"subspace lives in F_{v.q}^{v.k}, code in F_{code.q}^{code.k}")
    if v.dim == 0:
        return 0
    if v.dim == code.k:
        return code.n
    w = np.array(vs.orthogonal_complement(v).basis, dtype=np.int64)
    prod = code.ctx.matmul(w, code.columns.T)
    return int(np.count_nonzero(~prod.any(axis=0)))


def _mask_table(code: LinearCode) -> tuple[np.ndarray, np.ndarray]:
    """For every projective point a: bitset of the columns lying in a^⊥."""
    points = vs.projective_packed(code.ctx, code.k)
    words = (code.n + 63) // 64
    bits = len(points) * words * 64
    cap = current_caps().max_mask_bits
    if bits > cap:
        raise CapExceeded(f"hyperplane bitsets need {bits} bits, above the cap {cap}")
    funcs = vs.unpack(code.ctx, code.k, points)
    masks = np.zeros((len(points), words), dtype=np.uint64)
    step = max(1, _BLOCK // max(1, code.n))
    weights = np.uint64(1) << (np.arange(64, dtype=np.uint64))
    pad = words * 64 - code.n
    for s in range(0, len(points), step):
        zero = code.ctx.matmul(funcs[s : s + step], code.columns.T) == 0
        zero = np.pad(zero, ((0, 0), (0, pad))).reshape(len(zero), words, 64)
        masks[s : s + step] = (zero.astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)
    return points, masks


def _support_hist_masks(code: LinearCode, r: int, patterns) -> Counter:
    points, masks = _mask_table(code)
    hist: Counter = Counter()
    for rows in vs.rref_batches(code.ctx, code.k, r, patterns=patterns):
        idx = np.searchsorted(points, rows)
        acc = np.bitwise_and.reduce(masks[idx], axis=1)
        inside = np.bitwise_count(acc).sum(axis=1, dtype=np.int64)
        vals, cnt = np.unique(code.n - inside, return_counts=True)
        hist.update(dict(zip(vals.tolist(), cnt.tolist())))
    return hist


def _support_hist_direct(code: LinearCode, r: int, patterns) -> Counter:
    hist: Counter = Counter()
    cols_t = code.columns.T
    step = max(1, _BLOCK // max(1, code.n * r))
    for rows in vs.rref_batches(code.ctx, code.k, r, patterns=patterns):
        digits = vs.unpack(code.ctx, code.k, rows)
        for s in range(0, len(digits), step):
            prod = code.ctx.matmul(digits[s : s + step], cols_t)
            support = prod.any(axis=1).sum(axis=1)
            vals, cnt = np.unique(support, return_counts=True)
            hist.update(dict(zip(vals.tolist(), cnt.tolist())))
    return hist


def _support_hist_span(code: LinearCode, r: int, patterns) -> Counter:
    """Dual route: an r-dim W misses exactly the columns inside V = W^⊥.

    Walks the (k-r)-dim spaces V (``patterns`` are their pivot patterns) and
    counts the code columns among the points of V.
    """
    ctx, k, l = code.ctx, code.k, code.k - r
    coeffs = vs.unpack(ctx, l, vs.projective_packed(ctx, l))
    hist: Counter = Counter()
    step = max(1, _BLOCK // max(1, len(coeffs) * k))
    for rows in vs.rref_batches(ctx, k, l, patterns=patterns):
        bases = vs.unpack(ctx, k, rows)
        for s in range(0, len(bases), step):
            # leading-one combinations of RREF rows are already normalized
            pts = ctx.matmul(coeffs[None, :, :], bases[s : s + step])
            packed = vs.pack_rows(ctx, pts.reshape(-1, k)).reshape(len(pts), len(coeffs))
            inside = np.isin(packed, code.sorted_packed).sum(axis=1)
            vals, cnt = np.unique(code.n - inside, return_counts=True)
            hist.update(dict(zip(vals.tolist(), cnt.tolist())))
    return hist


_ENGINES = {"masks": _support_hist_masks, "direct": _support_hist_direct, "span": _support_hist_span}


def _hist_task(args) -> Counter:
    code, r, patterns, method = args
    return _ENGINES[method](code, r, patterns)


def _pick_method(code: LinearCode, r: int) -> str:
    words = (code.n + 63) // 64
    points = (code.q**code.k - 1) // (code.q - 1)
    dual_points = (code.q ** (code.k - r) - 1) // (code.q - 1)
    # per-subspace cost: r bitset ANDs versus a lookup per point of W^⊥ (measured ~16x dearer)
    if 16 * dual_points <= r * words or points * words * 64 > current_caps().max_mask_bits:
        return "span"
    return "masks"


def support_histogram(code: LinearCode, r: int, method: str = "auto", workers: int = 1) -> Counter:
    """Histogram of |supp(D)| over all r-dim subcodes D.

    Subcodes correspond to r-dim spaces W of functionals; the support of the
    subcode is the number of columns not orthogonal to W.
    """
    if not 1 <= r <= code.k:
        raise RangeError(f"subcode dimension must lie in 1..{code.k}, got {r}")
    if r == code.k:
        return Counter({code.n: 1})
    vs.check_enumeration(code.ctx, code.k, r)
    if method == "auto":
        method = _pick_method(code, r)
    if method not in _ENGINES:
        raise ValueError(f"unknown subspace engine {method!r}")
    patterns = vs.pivot_patterns(code.k, code.k - r if method == "span" else r)
    if workers <= 1 or len(patterns) < 2:
        return _hist_task((code, r, patterns, method))
    chunks = [patterns[i::workers] for i in range(workers)]
    total: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_hist_task, [(code, r, c, method) for c in chunks if c]):
            total.update(part)
    return total


def sswd(code: LinearCode, r: int, method: str = "auto", workers: int = 1) -> SSWDTable:
    hist = support_histogram(code, r, method, workers)
    table = SSWDTable(r, code.n, code.k, code.q, dict(sorted(hist.items())))
    if table.total != gaussian_binomial(code.k, r, code.q):
        raise InvariantViolation("subcode count does not match the Gaussian binomial")
    return table


def ghw(code: LinearCode, r: int, method: str = "auto", workers: int = 1) -> int:
    """r-th generalized Hamming weight: the smallest support of an r-dim subcode."""
    return min(support_histogram(code, r, method, workers))


def ghw_hierarchy(code: LinearCode, method: str = "auto", workers: int = 1) -> list[int]:
    """[d_1, ..., d_k]; the caller must keep every Gaussian(k, r) within the cap."""
    return [ghw(code, r, method, workers) for r in range(1, code.k + 1)]


def ghw_within_caps(code: LinearCode) -> dict[int, int]:
    """GHW for those r whose subcode enumeration fits the cap."""
    out = {}
    cap = current_caps().max_subspaces
    for r in range(1, code.k + 1):
        if r == 1:
            out[r] = code.min_distance  # spectral weight engine, cheaper than any subspace walk
        elif r == code.k or gaussian_binomial(code.k, r, code.q) <= cap:
            out[r] = ghw(code, r)
    return out


def simplex_code(ctx: FieldCtx, k: int) -> LinearCode:
    cols = vs.unpack(ctx, k, vs.projective_packed(ctx, k))
    return LinearCode.from_columns(ctx, k, cols, {"family": "simplex"})


def default_workers() -> int:
    return max(1, len(os.sched_getaffinity(0)))
