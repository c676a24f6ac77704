"""Locality, repair sets and the Cadambe-Mazumdar bound.

A coordinate i is repaired by a set A_i when column g_i is a linear
combination of the columns indexed by A_i.  The locality is the smallest r
such that every coordinate has a repair set of size at most r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import vectorspace as vs
from .bounds import kopt_upper
from .codes import LinearCode, fwht
from .config import current_caps
from .constructions import Family1Params, Family2Params, Layout
from .errors import CapExceeded, InvariantViolation, LayoutNotSupported, ProofCaseFailed, RangeError

MAX_LOCALITY = 3


@dataclass(frozen=True, eq=False)
class RepairPlan:
    """Repair set of coordinate i is ``sets[i]`` with -1 padding; ``coefficients`` is 0 there."""

    r: int
    sets: np.ndarray
    coefficients: np.ndarray

    @classmethod
    def from_lists(cls, r: int, sets: Sequence[Sequence[int]], coefficients: Sequence[Sequence[int]]) -> RepairPlan:
        width = max((len(x) for x in sets), default=0)
        idx = np.full((len(sets), width), -1, dtype=np.int64)
        coef = np.zeros((len(sets), width), dtype=np.int64)
        for i, (st, cf) in enumerate(zip(sets, coefficients)):
            if len(st) != len(cf):
                raise RangeError(f"coordinate {i}: {len(st)} helpers but {len(cf)} coefficients")
            idx[i, : len(st)] = st
            coef[i, : len(cf)] = cf
        return cls(r, idx, coef)

    def repair_set(self, i: int) -> tuple[int, ...]:
        return tuple(int(j) for j in self.sets[i] if j >= 0)

    @property
    def max_size(self) -> int:
        return int((self.sets >= 0).sum(axis=1).max(initial=0))

    def as_dict(self) -> dict:
        live = self.sets >= 0
        return {
            "r": self.r,
            "sets": [row[m].tolist() for row, m in zip(self.sets, live)],
            "coefficients": [row[m].tolist() for row, m in zip(self.coefficients, live)],
        }


def verify_repair(code: LinearCode, i: int, idx: Sequence[int], coeffs: Sequence[int]) -> bool:
    """g_i == sum c_j g_j over the field, with i not among the helpers."""
    if i in idx or len(set(idx)) != len(idx):
        return False
    ctx = code.ctx
    acc = np.zeros(code.k, dtype=np.int64)
    for j, c in zip(idx, coeffs):
        acc = ctx.vadd(acc, ctx.vmul(code.columns[j], int(c)))
    return bool(np.array_equal(acc, code.columns[i]))


def verify_plan(code: LinearCode, plan: RepairPlan) -> bool:
    """Check every repair equation by field arithmetic, all coordinates at once."""
    idx, coef = np.asarray(plan.sets), np.asarray(plan.coefficients)
    if idx.shape != coef.shape or idx.ndim != 2 or len(idx) != code.n:
        return False
    live = idx >= 0
    if not live.any(axis=1).all() or (live.sum(axis=1) > plan.r).any():
        return False
    if idx.max() >= code.n or (coef[live] == 0).any() or (idx == np.arange(code.n)[:, None]).any():
        return False
    srt = np.sort(idx, axis=1)
    if ((srt[:, 1:] == srt[:, :-1]) & (srt[:, 1:] >= 0)).any():
        return False
    ctx = code.ctx
    safe = np.where(live, idx, 0)
    coef = np.where(live, coef, 0)
    if ctx.q == 2:  # vectors over GF(2) packed into integers add by XOR
        return bool(np.array_equal(np.bitwise_xor.reduce(np.where(live, code.packed[safe], 0), axis=1), code.packed))
    gathered = code.columns[safe]
    if ctx.m == 1:
        acc = sum(gathered[:, t] * coef[:, t : t + 1] for t in range(idx.shape[1])) % ctx.p
    else:
        acc = np.zeros((code.n, code.k), dtype=np.int64)
        for t in range(idx.shape[1]):
            acc = ctx.vadd(acc, ctx.vmul(gathered[:, t], coef[:, t : t + 1]))
    return bool(np.array_equal(acc, code.columns))


def _packed_multiple(code: LinearCode, c: int) -> np.ndarray:
    return code.packed if c == 1 else vs.pack_rows(code.ctx, code.ctx.vmul(code.columns, c))


class _ColumnIndex:
    """Maps a vector to (column index, s) with vector = s * column, or (-1, 0).

    Dense table over F_q^k when it fits the cap, sorted packed points otherwise.
    """

    def __init__(self, code: LinearCode):
        self.code = code
        ctx, q, n = code.ctx, code.q, code.n
        self.dense = q**code.k <= current_caps().max_qk
        if self.dense:
            self.idx = np.full(q**code.k, -1, dtype=np.int64)
            self.scale = np.zeros(q**code.k, dtype=np.int64)
            for c in range(1, q):
                pk = _packed_multiple(code, c)
                self.idx[pk] = np.arange(n)
                self.scale[pk] = c
        else:
            self.order = np.argsort(code.packed)
            self.sorted = code.packed[self.order]

    def find(self, vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ctx, code = self.code.ctx, self.code
        if self.dense:
            pk = vs.pack_rows(ctx, vecs)
            return self.idx[pk], self.scale[pk]
        normed, scale = ctx.normalize_rows(vecs.reshape(-1, code.k))
        packed = vs.pack_rows(ctx, normed)
        pos = np.clip(np.searchsorted(self.sorted, packed), 0, code.n - 1)
        hit = (self.sorted[pos] == packed) & (scale != 0)
        shape = vecs.shape[:-1]
        return np.where(hit, self.order[pos], -1).reshape(shape), np.where(hit, scale, 0).reshape(shape)


def cone_convolution(code: LinearCode) -> np.ndarray | None:
    """conv[x] = number of ordered pairs (a, b) of nonzero column multiples with a + b = x.

    Self-convolution of the indicator of all nonzero column multiples, by a
    Walsh-Hadamard transform for q = 2 and an FFT on the (p,)*k grid for odd p.
    None for extension fields or when q^k exceeds the cap.
    """
    ctx, k, q = code.ctx, code.k, code.q
    if not ctx.is_prime_field or q**k > current_caps().max_qk:
        return None
    cone = np.concatenate([_packed_multiple(code, c) for c in range(1, q)])
    if q == 2:
        f = np.zeros(2**k, dtype=np.int64)
        f[cone] = 1
        h = fwht(f)
        return fwht(h * h) >> k
    grid = np.zeros(q**k, dtype=np.float64)
    grid[cone] = 1.0
    shape = (q,) * k
    spec = np.fft.rfftn(grid.reshape(shape))
    return np.rint(np.fft.irfftn(spec * spec, s=shape, axes=tuple(range(k)))).astype(np.int64).reshape(-1)


def pair_counts(code: LinearCode, conv: np.ndarray | None = None) -> np.ndarray | None:
    """Per column g: ordered pairs of multiples of two other columns summing to g.

    The q - 2 splits of g into two multiples of itself are removed, so the count
    is positive exactly when g is a combination of two other columns.
    """
    conv = cone_convolution(code) if conv is None else conv
    return None if conv is None else conv[code.packed] - (code.q - 2)


class _Budget:
    def __init__(self, what: str):
        self.left = current_caps().max_locality_work
        self.what = what

    def spend(self, amount: int) -> None:
        self.left -= amount
        if self.left < 0:
            raise CapExceeded(f"{self.what} exceeded the locality work cap")


_SAMPLE_WIDTHS = (1, 4, 32)
_CHUNK_CELLS = 1 << 21


def _pair_witnesses(
    code: LinearCode,
    index: _ColumnIndex,
    targets: np.ndarray,
    exclude: np.ndarray,
    budget: _Budget,
    possible: np.ndarray | None = None,
    packed: np.ndarray | None = None,
) -> np.ndarray:
    """For each target x find helpers j != l, outside its exclude row, with x = c1 g_j + c2 g_l.

    Returns rows (j, l, c1, c2), with j = -1 where no pair exists.  Random
    helpers are tried first, since a target usually has many pairs; the
    remaining targets get an exhaustive scan over every helper.  Targets with
    ``possible`` False are known to have no pair and are skipped.
    """
    ctx, n, q = code.ctx, code.n, code.q
    cols = code.columns
    scalars = np.arange(1, q, dtype=np.int64)
    out = np.full((len(targets), 4), -1, dtype=np.int64)
    rng = np.random.default_rng(0)
    binary = q == 2 and index.dense
    packed_targets = (vs.pack_rows(ctx, targets) if packed is None else packed) if binary else None

    def attempt(rows: np.ndarray, helpers: np.ndarray) -> np.ndarray:
        budget.spend(helpers.size * len(scalars))
        if binary:  # over GF(2) the packed difference is an XOR
            y = (packed_targets[rows][:, None] ^ code.packed[helpers])[:, :, None]
            l, s = index.idx[y], index.scale[y]
        else:  # y[t, b, c] = x_t - c * g_{helpers[t, b]}
            y = ctx.vsub(targets[rows][:, None, None, :], ctx.vmul(cols[helpers][:, :, None, :], scalars[None, None, :, None]))
            l, s = index.find(y)
        ex = exclude[rows][:, None, None, :]
        good = (l >= 0) & (l != helpers[:, :, None]) & (l[..., None] != ex).all(-1) & (helpers[:, :, None, None] != ex).all(-1)
        flat = good.reshape(len(rows), -1)
        hit = flat.any(axis=1)
        first = np.argmax(flat, axis=1)[hit]
        b, c = np.divmod(first, len(scalars))
        hr = np.nonzero(hit)[0]
        out[rows[hit]] = np.stack([helpers[hr, b], l[hr, b, c], scalars[c], s[hr, b, c]], axis=1)
        return rows[~hit]

    todo = np.arange(len(targets)) if possible is None else np.nonzero(possible)[0]
    for width in _SAMPLE_WIDTHS:
        if not len(todo):
            return out
        chunk = max(1, _CHUNK_CELLS // (width * len(scalars) * (1 if binary else code.k)))
        left = [attempt(ch, rng.integers(0, n, size=(len(ch), width))) for ch in np.array_split(todo, max(1, -(-len(todo) // chunk)))]
        todo = np.concatenate(left) if left else todo
    step = max(1, _CHUNK_CELLS // (max(1, len(todo)) * len(scalars) * (1 if binary else code.k)))
    for start in range(0, n, step):
        if not len(todo):
            break
        helpers = np.broadcast_to(np.arange(start, min(n, start + step)), (len(todo), min(n, start + step) - start))
        todo = attempt(todo, np.ascontiguousarray(helpers))
    return out


def locality(code: LinearCode) -> tuple[int, RepairPlan]:
    """Smallest r <= 3 with a repair set of size at most r for every coordinate.

    r = 1 would need two proportional columns, which a ``LinearCode`` cannot
    hold, so the search starts at pairs.  Raises CapExceeded when some
    coordinate needs more than 3 helpers or the search exceeds its work cap.
    On prime fields a spectral pair count decides which coordinates have a pair
    and the search supplies witnesses; a count the search cannot realize is an error.
    """
    n, ctx = code.n, code.ctx
    budget = _Budget("repair-set search")
    index = _ColumnIndex(code)
    cols = code.columns
    every = np.arange(n)

    conv = cone_convolution(code)
    counts = pair_counts(code, conv)
    found = _pair_witnesses(code, index, cols, every[:, None], budget, None if counts is None else counts > 0, code.packed)
    if counts is not None and not np.array_equal(counts > 0, found[:, 0] >= 0):
        bad = np.nonzero((counts > 0) != (found[:, 0] >= 0))[0]
        raise AssertionError(f"spectral pair count disagrees with the search at coordinates {bad[:5].tolist()}")
    lacking = np.nonzero(found[:, 0] < 0)[0]
    if not len(lacking):
        return 2, RepairPlan(2, found[:, :2].copy(), found[:, 2:].copy())

    sets = np.full((n, 3), -1, dtype=np.int64)
    coeffs = np.zeros((n, 3), dtype=np.int64)
    sets[:, :2], coeffs[:, :2] = found[:, :2], np.where(found[:, :2] >= 0, found[:, 2:], 0)
    # triples: g_i = c g_j + (a pair for g_i - c g_j avoiding i and j)
    rest = lacking
    for j in np.random.default_rng(1).permutation(n).tolist():
        if not len(rest):
            break
        for c in range(1, code.q):
            live = rest[rest != j]
            if not len(live):
                continue
            x = ctx.vsub(cols[live], ctx.vmul(cols[j], c))
            possible = None if conv is None else conv[vs.pack_rows(ctx, x)] > 0
            w = _pair_witnesses(code, index, x, np.stack([live, np.full(len(live), j)], axis=1), budget, possible)
            done = w[:, 0] >= 0
            hit = live[done]
            sets[hit] = np.column_stack([np.full(len(hit), j), w[done, :2]])
            coeffs[hit] = np.column_stack([np.full(len(hit), c), w[done, 2:]])
            rest = np.setdiff1d(rest, hit, assume_unique=True)
    if len(rest):
        raise CapExceeded(f"coordinate {int(rest[0])} needs more than {MAX_LOCALITY} helpers; search is capped there")
    return 3, RepairPlan(3, sets, coeffs)


# -- repair pairs prescribed by the constructive argument ---------------------------

@dataclass(frozen=True)
class RepairPair:
    i: int
    j: int
    l: int
    coefficients: tuple[int, int]
    case: str

    def verify(self, code: LinearCode) -> bool:
        return verify_repair(code, self.i, (self.j, self.l), self.coefficients)


def _independent_split(ctx, a: np.ndarray) -> np.ndarray:
    """Lexicographically first b with b and a - b nonzero and, when dim >= 2, b not in span(a)."""
    dim = len(a)
    for x in range(1, ctx.q**dim):
        b = np.array(vs.decode(ctx, dim, x), dtype=np.int64)
        gam = ctx.vsub(a, b)
        if not gam.any():
            continue
        if dim >= 2 and vs.rank(ctx, [a.tolist(), b.tolist()]) < 2:
            continue
        return b
    raise ProofCaseFailed(f"no split of block {a.tolist()}")


def _family1_candidates(code: LinearCode, p: Family1Params, alpha: np.ndarray):
    ctx, k, u, h = code.ctx, code.k, p.u, p.h
    if p.layout is Layout.BLOCK_DISJOINT:
        if k > u * h:
            if not alpha[u * h :].any():
                beta = np.zeros(k, dtype=np.int64)
                beta[k - 1] = 1
                yield "tail zero: beta = e_k", beta
            else:
                beta = np.zeros(k, dtype=np.int64)
                beta[: u * h] = 1
                yield "tail nonzero: beta = e_1 + ... + e_uh", beta
            return
        blocks = [alpha[b * u : (b + 1) * u] for b in range(h)]
        live = [b for b in range(h) if blocks[b].any()]
        for x in range(len(live)):
            for y in range(x + 1, len(live)):
                bi, bj = live[x], live[y]
                beta = np.zeros(k, dtype=np.int64)
                beta[bi * u : (bi + 1) * u] = _independent_split(ctx, blocks[bi])
                beta[bj * u : (bj + 1) * u] = _independent_split(ctx, blocks[bj])
                yield f"k = uh: split blocks {bi + 1} and {bj + 1}", beta
        return
    if p.layout is Layout.PENCIL:
        if k > 8:
            zeros = [i for i in range(8, k) if alpha[i] == 0]
            for i in zeros:
                beta = np.zeros(k, dtype=np.int64)
                beta[i] = 1
                yield f"k > 8: a_{i + 1} = 0, beta = e_{i + 1}", beta
            if not zeros:
                beta = np.zeros(k, dtype=np.int64)
                beta[1] = 1
                yield "k > 8: tail nowhere zero, beta = e_2", beta
            return
        zeros = [i for i in (1, 3, 5, 7) if alpha[i] == 0]
        for i in zeros:
            beta = np.zeros(k, dtype=np.int64)
            beta[i] = 1
            yield f"k = 8: a_{i + 1} = 0, beta = e_{i + 1}", beta
        if not zeros:
            beta = np.zeros(k, dtype=np.int64)
            beta[1] = alpha[1]
            yield "k = 8: beta = a_2 e_2", beta
        return
    raise LayoutNotSupported(f"no constructive repair rule for layout {p.layout.value}")


def _family2_candidates(code: LinearCode, p: Family2Params, alpha: np.ndarray):
    if p.layout is not Layout.COMMON_BLOCK:
        raise LayoutNotSupported(f"no constructive repair rule for layout {p.layout.value}")
    ctx, k, u0 = code.ctx, code.k, p.u0
    w = p.span_dim
    if k > w:
        beta = np.zeros(k, dtype=np.int64)
        if not alpha[w:].any():
            beta[k - 1] = 1
            yield "tail zero: beta = e_k", beta
        else:
            beta[:w] = 1
            yield "tail nonzero: beta = e_1 + ... + e_w", beta
        return
    starts = [u0]
    for u in p.us:
        starts.append(starts[-1] + u - u0)
    spans = [(starts[b], starts[b + 1]) for b in range(p.h)]
    live = [b for b in range(p.h) if alpha[spans[b][0] : spans[b][1]].any()]
    for x in range(len(live)):
        for y in range(x + 1, len(live)):
            beta = np.zeros(k, dtype=np.int64)
            for b in (live[x], live[y]):
                lo, hi = spans[b]
                beta[lo:hi] = _independent_split(ctx, alpha[lo:hi])
            if not alpha[:u0].any():
                beta[0] = 1
                case = "alpha_0 = 0: beta = e_1 + split"
            else:
                case = "alpha_0 != 0: beta = split"
            yield f"k = w, blocks {live[x] + 1},{live[y] + 1}, {case}", beta


def constructive_repair_pair(code: LinearCode, i: int) -> RepairPair:
    """The repair pair (beta, gamma = alpha - beta) prescribed for the standard layouts.

    Candidates are tried in the prescribed order and each is verified: both
    must be columns of the code and independent of alpha.  Raises
    ProofCaseFailed when none survives.
    """
    if not 0 <= i < code.n:
        raise RangeError(f"coordinate {i} out of range")
    p = (code.origin or {}).get("params")
    if isinstance(p, Family1Params):
        cands = _family1_candidates(code, p, code.columns[i])
    elif isinstance(p, Family2Params):
        cands = _family2_candidates(code, p, code.columns[i])
    else:
        raise LayoutNotSupported("constructive repair needs a code built from a standard layout")
    ctx = code.ctx
    alpha = code.columns[i]
    tried = []
    for case, beta in cands:
        gamma = ctx.vsub(alpha, beta)
        tried.append(case)
        if not beta.any() or not gamma.any():
            continue
        j = code.column_index(beta)
        l = code.column_index(gamma)
        if j < 0 or l < 0 or len({i, j, l}) < 3:
            continue
        c1 = vs.normalize(ctx, beta)[1]
        c2 = vs.normalize(ctx, gamma)[1]
        pair = RepairPair(i, j, l, (c1, c2), case)
        if pair.verify(code):
            return pair
    raise ProofCaseFailed(f"column {alpha.tolist()}: no prescribed pair is valid (tried: {'; '.join(tried)})")


@dataclass(frozen=True)
class ConstructiveAudit:
    total: int
    failures: tuple[tuple[int, str], ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def audit_constructive_pairs(code: LinearCode, columns: Sequence[int] | None = None) -> ConstructiveAudit:
    """Run the prescribed pair on the given columns (all by default) and collect failures."""
    cols = range(code.n) if columns is None else [int(i) for i in columns]
    fails = []
    for i in cols:
        try:
            constructive_repair_pair(code, i)
        except ProofCaseFailed as exc:
            fails.append((i, str(exc)))
    return ConstructiveAudit(len(cols), tuple(fails))


# -- Cadambe-Mazumdar bound ----------------------------------------------------------------

class CMVerdict(str, Enum):
    MEETS_CM = "MeetsCM"
    DEFECT_AT_MOST = "DefectAtMost"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CMReport:
    n: int
    k: int
    d: int
    q: int
    r: int
    values: dict[int, int]
    bound_upper: int | None
    cm_defect_upper: int | None
    verdict: CMVerdict

    @property
    def label(self) -> str:
        if self.verdict is CMVerdict.DEFECT_AT_MOST:
            return f"DefectAtMost({self.cm_defect_upper})"
        return self.verdict.value

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "r": self.r,
            "values": [[t, v] for t, v in sorted(self.values.items())],
            "bound_upper": self.bound_upper,
            "cm_defect_upper": self.cm_defect_upper,
            "verdict": self.label,
        }


def cm_report_params(q: int, n: int, k: int, d: int, r: int) -> CMReport:
    """Evaluate t*r + kopt_upper(n - t(r+1), d) for t = 1 .. floor((n-d)/(r+1)).

    kopt_upper over-estimates k_opt, so the minimum over-estimates the bound
    and the reported defect is a certified upper bound.
    """
    if r < 1 or n < 1 or d < 1 or k < 1:
        raise RangeError("CM report needs positive n, k, d, r")
    values = {t: t * r + kopt_upper(q, n - t * (r + 1), d) for t in range(1, (n - d) // (r + 1) + 1)}
    if not values:
        return CMReport(n, k, d, q, r, values, None, None, CMVerdict.UNKNOWN)
    bound = min(values.values())
    defect = bound - k
    if defect < 0:
        raise InvariantViolation(f"[{n},{k},{d}]_{q} exceeds its own CM bound estimate {bound}")
    verdict = CMVerdict.MEETS_CM if defect == 0 else CMVerdict.DEFECT_AT_MOST
    return CMReport(n, k, d, q, r, values, bound, defect, verdict)


def cm_report(code: LinearCode, r: int) -> CMReport:
    return cm_report_params(code.q, code.n, code.k, code.min_distance, r)


__all__ = [
    "RepairPlan",
    "RepairPair",
    "CMReport",
    "CMVerdict",
    "locality",
    "verify_plan",
    "verify_repair",
    "pair_counts",
    "cone_convolution",
    "constructive_repair_pair",
    "audit_constructive_pairs",
    "kopt_upper",
    "cm_report",
    "cm_report_params",
]
