"""Closed-form weight distributions, GHW and SSWD for the standard layouts.

Each function refuses (HypothesisNotMet) configurations its formula does not
cover; brute-force analysis in ``codes`` works for everything.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import comb, prod

from .codes import SSWDTable, WeightDistribution
from .constructions import Family1Params, Family2Params, Layout
from .errors import HypothesisNotMet, RangeError
from .qcombinatorics import count_meeting_common_pair


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisNotMet(msg)


def _rank_ok1(p: Family1Params) -> bool:
    return p.q**p.k - p.q ** (p.k - 1) > p.h * (p.q**p.u - 1)


def _check_block(p: Family1Params) -> None:
    _need(p.layout is Layout.BLOCK_DISJOINT, f"closed forms need the block-disjoint layout, got {p.layout.value}")
    _need(p.k >= p.h * p.u, f"block-disjoint closed forms need k >= h*u ({p.k} < {p.h * p.u})")
    _need(p.u >= 2 and p.h >= 1 and _rank_ok1(p), "first-family parameters are invalid")


def _check_pencil(p: Family1Params) -> None:
    _need(p.layout is Layout.PENCIL, f"pencil closed forms need the pencil layout, got {p.layout.value}")
    _need(p.u == 2 and p.h == 2 * p.q and p.k >= 8, "pencil closed forms need u = 2, h = 2q, k >= 8")


def _check_common(p: Family2Params) -> None:
    q = p.q
    _need(p.layout is Layout.COMMON_BLOCK, f"closed forms need the common-block layout, got {p.layout.value}")
    _need(p.h >= 2 and 1 <= p.u0 < p.us[0] and list(p.us) == sorted(p.us), "second-family parameters are invalid")
    _need(p.h <= q, f"closed forms need h <= q ({p.h} > {q})")
    _need(p.k >= p.span_dim, f"closed forms need k >= sum(u) - (h-1)u0 = {p.span_dim}")
    _need(
        (q - 1) * p.us[0] > (p.h - 1) * (q**p.u0 - 1),
        f"closed forms need u1 > (h-1)(q^u0-1)/(q-1) = {(p.h - 1) * (q**p.u0 - 1) / (q - 1):g}",
    )
    deleted = q**p.u0 - 1 + sum(q**u - q**p.u0 for u in p.us)
    _need(q**p.k - q ** (p.k - 1) > deleted, "rank condition fails")


def _distribution(p, rows: Counter) -> WeightDistribution:
    counts = {0: 1}
    for w, m in sorted(rows.items()):
        if m:
            counts[w] = counts.get(w, 0) + m
    return WeightDistribution(p.n, p.k, p.q, counts)


# -- weight distributions ----------------------------------------------------------

def _wd_block(p: Family1Params) -> WeightDistribution:
    q, k, u, h = p.q, p.k, p.u, p.h
    rows: Counter = Counter()
    tail = q ** (k - h * u)
    # x = number of the U_i inside the hyperplane
    for x in range(h + 1):
        w = q ** (k - 1) - (h - x) * q ** (u - 1)
        rows[w] += tail - 1 if x == h else comb(h, x) * (q**u - 1) ** (h - x) * tail
    return _distribution(p, rows)


def pencil_factor(q: int) -> int:
    return q**4 - q**3 + q - 1


def _wd_pencil(p: Family1Params) -> WeightDistribution:
    q, k = p.q, p.k
    f = pencil_factor(q)
    top = q ** (k - 1)
    rows: Counter = Counter()
    rows[top] += q ** (k - 8) - 1
    rows[top - q**2 + q] += 2 * q * (q**2 - 1) * q ** (k - 8)
    rows[top - q**2] += 2 * f * q ** (k - 8)
    rows[top - 2 * q**2 + 2 * q] += (q**2 - 1) ** 2 * q ** (k - 6)
    rows[top - 2 * q**2 + q] += 2 * q * (q**2 - 1) * f * q ** (k - 8)
    rows[top - 2 * q**2] += f**2 * q ** (k - 8)
    return _distribution(p, rows)


def _wd_common(p: Family2Params) -> WeightDistribution:
    """Sums over every set T of indices whose U_i is not in the hyperplane.

    Hyperplanes not containing U_0 give the single heavy row.
    """
    q, k, u0, us, h = p.q, p.k, p.u0, p.us, p.h
    rows: Counter = Counter()
    rows[q ** (k - 1) + (h - 1) * q ** (u0 - 1) - sum(q ** (u - 1) for u in us)] += (q**u0 - 1) * q ** (k - u0)
    base = q ** (k + (h - 1) * u0 - sum(us))
    for size in range(h + 1):
        for t in combinations(range(h), size):
            w = q ** (k - 1) - sum(q ** (us[i] - 1) for i in t)
            m = prod(q ** (us[i] - u0) - 1 for i in t) * base
            rows[w] += m - 1 if size == 0 else m
    return _distribution(p, rows)


def predicted_weight_distribution(p: Family1Params | Family2Params) -> WeightDistribution:
    if isinstance(p, Family2Params):
        _check_common(p)
        return _wd_common(p)
    if p.layout is Layout.PENCIL:
        _check_pencil(p)
        return _wd_pencil(p)
    _check_block(p)
    return _wd_block(p)


def prefix_rows_family2(p: Family2Params) -> dict[int, int]:
    """The rows listed for prefix index sets only ({1..i} inside the hyperplane)."""
    q, k, u0, us, h = p.q, p.k, p.u0, p.us, p.h
    base = q ** (k + (h - 1) * u0 - sum(us))
    rows: Counter = Counter()
    rows[q ** (k - 1) + (h - 1) * q ** (u0 - 1) - sum(q ** (u - 1) for u in us)] += (q**u0 - 1) * q ** (k - u0)
    for i in range(h + 1):
        rest = us[i:]
        m = prod(q ** (u - u0) - 1 for u in rest) * base
        rows[q ** (k - 1) - sum(q ** (u - 1) for u in rest)] += m - 1 if i == h else m
    return dict(sorted(rows.items()))


# -- generalized Hamming weights ---------------------------------------------------------

def predicted_ghw(p: Family1Params | Family2Params, r: int) -> int:
    if not 1 <= r <= p.k:
        raise RangeError(f"r must lie in 1..{p.k}, got {r}")
    q, k = p.q, p.k
    if isinstance(p, Family2Params):
        _check_common(p)
        _need(p.h == 2, "the GHW closed form covers h = 2 only")
        u0, (u1, u2) = p.u0, p.us
        if r <= u1 - u0:
            num = q**k - q ** (k - r) - (q**u1 - q ** (u1 - r)) - (q**u2 - q ** (u2 - r))
        elif r <= u2:
            num = q**k - q ** (k - r) - q**u1 - (q**u2 - q ** (u2 - r)) + q**u0
        else:
            num = q**k - q ** (k - r) - q**u1 - q**u2 + q**u0 + 1
        return num // (q - 1)
    if p.layout is Layout.PENCIL:
        _check_pencil(p)
        if r == 1:
            return q ** (k - 1) - 2 * q**2
        return ((q**k - q ** (k - r)) - 2 * q * (q**2 - 1)) // (q - 1)
    _check_block(p)
    u, h = p.u, p.h
    if r <= u:
        return ((q**k - q ** (k - r)) - h * (q**u - q ** (u - r))) // (q - 1)
    return ((q**k - q ** (k - r)) - h * (q**u - 1)) // (q - 1)


def ghw_branches_family2(p: Family2Params, r: int) -> list[int]:
    """Values of every GHW branch whose r-range contains r (for boundary checks)."""
    q, k, u0, (u1, u2) = p.q, p.k, p.u0, p.us
    out = []
    if 1 <= r <= u1 - u0:
        out.append((q**k - q ** (k - r) - (q**u1 - q ** (u1 - r)) - (q**u2 - q ** (u2 - r))) // (q - 1))
    if u1 - u0 <= r <= u2:
        out.append((q**k - q ** (k - r) - q**u1 - (q**u2 - q ** (u2 - r)) + q**u0) // (q - 1))
    if u2 <= r <= k:
        out.append((q**k - q ** (k - r) - q**u1 - q**u2 + q**u0 + 1) // (q - 1))
    return out


# -- subcode support weight distribution ------------------------------------------------

def _gauss_count(q: int, v: int) -> int:
    """Points of a v-dim space: (q^v - 1)/(q - 1)."""
    return (q**v - 1) // (q - 1)


def sswd_index_set(p: Family2Params, r: int, upper: str = "min"):
    """Yield (v0, v1, v2, j): intersection dimensions of a (k-r)-dim V with U_0, U_1,
    U_2 and the support size of the matching r-dim subcode.

    ``upper`` is the bound on each v_i: ``"min"`` uses min{k-r, u_i}, the
    feasible range; ``"max"`` uses max{k-r, u_i}, which admits tuples that no
    subspace realizes.
    """
    q, k, u0, (u1, u2) = p.q, p.k, p.u0, p.us
    l = k - r
    us = (u0, u1, u2)
    pick = min if upper == "min" else max
    bounds = [range(max(u - r, 0), pick(l, u) + 1) for u in us]
    shift = (q**k - q**u1 - q**u2 + q**u0 - q**l + 1) // (q - 1)
    for v0 in bounds[0]:
        for v1 in bounds[1]:
            for v2 in bounds[2]:
                if v0 > v1 or v0 > v2:
                    continue
                if v1 - v0 > u1 - u0 or v2 - v0 > u2 - u0:
                    continue
                if v1 + v2 - v0 > l:
                    continue
                j = shift + _gauss_count(q, v1) + _gauss_count(q, v2) - _gauss_count(q, v0)
                yield v0, v1, v2, j


def predicted_sswd(p: Family2Params, r: int, upper: str = "min") -> SSWDTable:
    if not isinstance(p, Family2Params):
        raise HypothesisNotMet("the SSWD closed form covers the second family only")
    _check_common(p)
    _need(p.h == 2, "the SSWD closed form covers h = 2 only")
    if not 1 <= r < p.k:
        raise RangeError(f"r must lie in 1..{p.k - 1}, got {r}")
    u0, (u1, u2) = p.u0, p.us
    table: Counter = Counter()
    for v0, v1, v2, j in sswd_index_set(p, r, upper):
        if v0 > u0 or v1 > u1 or v2 > u2 or max(v0, v1, v2) > p.k - r:
            continue  # infeasible: no subspace has these intersection dimensions
        c = count_meeting_common_pair(p.k, u0, u1, u2, p.k - r, v0, v1, v2, p.q)
        if c:
            table[j] += c
    return SSWDTable(r, p.n, p.k, p.q, dict(sorted(table.items())))
