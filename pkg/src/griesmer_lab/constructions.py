"""Codes obtained by deleting a union of subspaces from the simplex code.

First family: h subspaces U_1..U_h of common dimension u meeting pairwise in
{0}.  Second family: U_1..U_h of dimensions u_1 <= ... <= u_h meeting
pairwise in a common U_0 of dimension u0.  The generator matrix has one
column per projective point of F_q^k outside U_1 ∪ ... ∪ U_h.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np

from . import vectorspace as vs
from .bounds import OptimalityCertificate, certify, floor_sum
from .codes import LinearCode
from .errors import CapExceeded, HypothesisNotMet, InvariantViolation, RangeError
from .field import gf
from .qcombinatorics import q_adic


class Layout(str, Enum):
    BLOCK_DISJOINT = "block-disjoint"
    PENCIL = "pencil"
    PARTIAL_SPREAD = "partial-spread"
    COMMON_BLOCK = "common-block"
    USER = "user"


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class Family1Params:
    q: int
    k: int
    u: int
    h: int
    layout: Layout = Layout.BLOCK_DISJOINT
    subspaces: tuple[vs.Subspace, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return ((self.q**self.k - 1) - self.h * (self.q**self.u - 1)) // (self.q - 1)

    @property
    def d_formula(self) -> int:
        return self.q ** (self.k - 1) - self.h * self.q ** (self.u - 1)

    @property
    def d_asserted(self) -> bool:
        """The formula for d is proven only when h <= q^u; otherwise it is a lower bound."""
        return self.h <= self.q**self.u

    def label(self) -> str:
        return f"family1(q={self.q},k={self.k},u={self.u},h={self.h},{self.layout.value})"


@dataclass(frozen=True)
class Family2Params:
    q: int
    k: int
    u0: int
    us: tuple[int, ...]
    layout: Layout = Layout.COMMON_BLOCK
    subspaces: tuple[vs.Subspace, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "us", tuple(self.us))

    @property
    def h(self) -> int:
        return len(self.us)

    @property
    def span_dim(self) -> int:
        """dim(U_1 + ... + U_h) when the tails are independent."""
        return sum(self.us) - (self.h - 1) * self.u0

    @property
    def n(self) -> int:
        q = self.q
        return (q**self.k - q**self.u0 - sum(q**u - q**self.u0 for u in self.us)) // (q - 1)

    @property
    def d_formula(self) -> int:
        return self.q ** (self.k - 1) - sum(self.q ** (u - 1) for u in self.us)

    @property
    def d_asserted(self) -> bool:
        return self.h <= self.q ** (self.us[0] - self.u0)

    def label(self) -> str:
        us = ",".join(map(str, self.us))
        return f"family2(q={self.q},k={self.k},u0={self.u0},u=[{us}],{self.layout.value})"


# -- subspace layouts ----------------------------------------------------------

def _unit_span(ctx, k: int, coords: Sequence[int]) -> vs.Subspace:
    return vs.coordinate_subspace(ctx, k, list(coords))


def block_disjoint_subspaces(q: int, k: int, u: int, h: int) -> list[vs.Subspace]:
    """U_i spanned by the i-th block of u coordinates."""
    if k < h * u:
        raise InvariantViolation(f"block-disjoint layout needs k >= h*u ({k} < {h * u})")
    ctx = gf(q)
    return [_unit_span(ctx, k, range(i * u, (i + 1) * u)) for i in range(h)]


def pencil_elements(q: int) -> list[int]:
    """Field elements ordered f_1 = 0, f_2, ..., f_{q-1}, f_q = 1."""
    return [0] + list(range(2, q)) + [1]


def pencil_subspaces(q: int, k: int) -> list[vs.Subspace]:
    """2q planes: span{e1 + f e2, e3 + f e4} and span{e5 + f e6, e7 + f e8} over all f."""
    if k < 8:
        raise RangeError(f"the pencil layout needs k >= 8, got {k}")
    ctx = gf(q)
    out = []
    for base in (0, 4):
        for f in pencil_elements(q):
            a = [0] * k
            b = [0] * k
            a[base], a[base + 1] = 1, f
            b[base + 2], b[base + 3] = 1, f
            out.append(vs.span(ctx, k, [a, b]))
    return out


def common_block_subspaces(q: int, k: int, u0: int, us: Sequence[int]) -> list[vs.Subspace]:
    """U_0 = span{e_1..e_u0}; U_i adds its own block of u_i - u0 further coordinates."""
    h = len(us)
    need = sum(us) - (h - 1) * u0
    if k < need:
        raise InvariantViolation(f"common-block layout needs k >= sum(u) - (h-1)u0 = {need}, got {k}")
    ctx = gf(q)
    out = [_unit_span(ctx, k, range(u0))]
    start = u0
    for u in us:
        out.append(_unit_span(ctx, k, list(range(u0)) + list(range(start, start + u - u0))))
        start += u - u0
    return out


def partial_spread(q: int, k: int, u: int, h: int) -> list[vs.Subspace]:
    """h pairwise trivially-intersecting u-dim subspaces, found by a deterministic search.

    Seeds with as many coordinate blocks as fit, then backtracks over the
    remaining u-dim subspaces in RREF enumeration order.
    """
    ctx = gf(q)
    vs.check_enumeration(ctx, k, u)
    points = vs.projective_packed(ctx, k)
    index = {int(x): i for i, x in enumerate(points)}

    def point_mask(s: vs.Subspace) -> int:
        m = 0
        for p in s.points():
            m |= 1 << index[vs.encode(ctx, p)]
        return m

    seeds = [_unit_span(ctx, k, range(i * u, (i + 1) * u)) for i in range(min(h, k // u))]
    cands = [(s, point_mask(s)) for s in seeds]
    seen = {s.basis for s in seeds}
    for s in vs.enumerate_subspaces(ctx, k, u):
        if s.basis not in seen:
            cands.append((s, point_mask(s)))

    chosen: list[int] = []
    budget = [200_000]

    def search(start: int, used: int) -> bool:
        if len(chosen) == h:
            return True
        for i in range(start, len(cands)):
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceeded("partial spread search exceeded its step budget")
            if len(cands) - i < h - len(chosen):
                return False
            m = cands[i][1]
            if used & m:
                continue
            chosen.append(i)
            if search(i + 1, used | m):
                return True
            chosen.pop()
        return False

    if not search(0, 0):
        raise InvariantViolation(f"no {h} pairwise disjoint {u}-dim subspaces exist in F_{q}^{k}")
    return [cands[i][0] for i in chosen]


def auto_layout_family1(q: int, k: int, u: int, h: int) -> Layout:
    return Layout.BLOCK_DISJOINT if k >= h * u else Layout.PARTIAL_SPREAD


def family1_subspaces(p: Family1Params) -> list[vs.Subspace]:
    if p.layout is Layout.BLOCK_DISJOINT:
        return block_disjoint_subspaces(p.q, p.k, p.u, p.h)
    if p.layout is Layout.PENCIL:
        return pencil_subspaces(p.q, p.k)
    if p.layout is Layout.PARTIAL_SPREAD:
        return partial_spread(p.q, p.k, p.u, p.h)
    if p.layout is Layout.USER:
        if not p.subspaces:
            raise InvariantViolation("user layout needs explicit subspaces")
        return list(p.subspaces)
    raise InvariantViolation(f"layout {p.layout.value} does not apply to the first family")


def family2_subspaces(p: Family2Params) -> list[vs.Subspace]:
    """[U_0, U_1, ..., U_h]."""
    if p.layout is Layout.COMMON_BLOCK:
        return common_block_subspaces(p.q, p.k, p.u0, p.us)
    if p.layout is Layout.USER:
        if not p.subspaces or len(p.subspaces) < 2:
            raise InvariantViolation("user layout needs at least two subspaces U_1, U_2")
        ups = list(p.subspaces)
        u0 = vs.intersect(ups[0], ups[1])
        return [u0] + ups
    raise InvariantViolation(f"layout {p.layout.value} does not apply to the second family")


# -- validation ----------------------------------------------------------------

def validate_family1(p: Family1Params) -> list[vs.Subspace]:
    gf(p.q)
    if p.u < 2:
        raise InvariantViolation(f"u must be >= 2, got {p.u}")
    if p.h < 1:
        raise InvariantViolation(f"h must be >= 1, got {p.h}")
    if p.k < p.u:
        raise InvariantViolation(f"k = {p.k} is smaller than u = {p.u}")
    if p.layout is Layout.PENCIL and (p.u != 2 or p.h != 2 * p.q):
        raise InvariantViolation(f"the pencil layout has u = 2 and h = 2q = {2 * p.q}")
    if p.layout is Layout.PENCIL and p.k < 8:
        raise RangeError(f"the pencil layout needs k >= 8, got {p.k}")
    if not p.q**p.k - p.q ** (p.k - 1) > p.h * (p.q**p.u - 1):
        raise InvariantViolation(
            f"rank condition q^k - q^(k-1) > h(q^u - 1) fails: {p.q**p.k - p.q ** (p.k - 1)} <= {p.h * (p.q**p.u - 1)}"
        )
    subs = family1_subspaces(p)
    if len(subs) != p.h:
        raise InvariantViolation(f"expected {p.h} subspaces, got {len(subs)}")
    for s in subs:
        if s.k != p.k or s.q != p.q:
            raise InvariantViolation("subspace lives in the wrong ambient space")
        if s.dim != p.u:
            raise InvariantViolation(f"subspace of dimension {s.dim}, expected {p.u}")
    for a, b in combinations(range(p.h), 2):
        if vs.intersect(subs[a], subs[b]).dim:
            raise InvariantViolation(f"U_{a + 1} and U_{b + 1} intersect nontrivially")
    return subs


def validate_family2(p: Family2Params) -> list[vs.Subspace]:
    gf(p.q)
    q = p.q
    if p.h < 2:
        raise InvariantViolation(f"the second family needs h >= 2, got {p.h}")
    if list(p.us) != sorted(p.us):
        raise InvariantViolation("u_1 <= ... <= u_h required")
    if not 1 <= p.u0 < p.us[0]:
        raise InvariantViolation(f"1 <= u0 < u1 required (u0={p.u0}, u1={p.us[0]})")
    if p.us[-1] > p.k:
        raise InvariantViolation("u_h exceeds k")
    deleted = q**p.u0 - 1 + sum(q**u - q**p.u0 for u in p.us)
    if not q**p.k - q ** (p.k - 1) > deleted:
        raise InvariantViolation(f"rank condition fails: {q**p.k - q ** (p.k - 1)} <= {deleted}")
    subs = family2_subspaces(p)
    u0, ups = subs[0], subs[1:]
    if len(ups) != p.h:
        raise InvariantViolation(f"expected {p.h} subspaces, got {len(ups)}")
    if u0.dim != p.u0:
        raise InvariantViolation(f"common part has dimension {u0.dim}, expected {p.u0}")
    for s, u in zip(ups, p.us):
        if s.k != p.k or s.q != q:
            raise InvariantViolation("subspace lives in the wrong ambient space")
        if s.dim != u:
            raise InvariantViolation(f"subspace of dimension {s.dim}, expected {u}")
    for a, b in combinations(range(p.h), 2):
        if vs.intersect(ups[a], ups[b]) != u0:
            raise InvariantViolation(f"U_{a + 1} ∩ U_{b + 1} differs from U_0")
    return subs


# -- builders --------------------------------------------------------------------

def _delete_union(q: int, k: int, subs: Sequence[vs.Subspace]) -> np.ndarray:
    ctx = gf(q)
    vs.check_space(ctx, k)
    pts = vs.projective_packed(ctx, k)
    deleted = set()
    for s in subs:
        deleted.update(vs.encode(ctx, p) for p in s.points())
    keep = pts[~np.isin(pts, np.fromiter(deleted, dtype=np.int64, count=len(deleted)))]
    return vs.unpack(ctx, k, keep)


def _bases(subs: Sequence[vs.Subspace]) -> list[list[list[int]]]:
    return [[list(r) for r in s.basis] for s in subs]


def _finish(code: LinearCode, d_formula: int, asserted: bool, verify: bool) -> LinearCode:
    if verify and asserted and code.min_distance != d_formula:
        raise InvariantViolation(f"brute-force d = {code.min_distance} differs from the formula {d_formula}")
    return code


def build_family1(p: Family1Params, verify: bool = False) -> LinearCode:
    subs = validate_family1(p)
    cols = _delete_union(p.q, p.k, subs)
    if len(cols) != p.n:
        raise InvariantViolation(f"built {len(cols)} columns, expected n = {p.n}")
    origin = {
        "family": 1,
        "params": p,
        "layout": p.layout.value,
        "subspaces": _bases(subs),
        "d_formula": p.d_formula,
        "d_asserted": p.d_asserted,
    }
    code = LinearCode.from_columns(gf(p.q), p.k, cols, origin)
    return _finish(code, p.d_formula, p.d_asserted, verify)


def build_family1_pencil(q: int, k: int, verify: bool = False) -> LinearCode:
    if k < 8:
        raise RangeError(f"the pencil construction needs k >= 8, got {k}")
    return build_family1(Family1Params(q, k, 2, 2 * q, Layout.PENCIL), verify)


def build_family2(p: Family2Params, verify: bool = False) -> LinearCode:
    subs = validate_family2(p)
    cols = _delete_union(p.q, p.k, subs[1:])
    if len(cols) != p.n:
        raise InvariantViolation(f"built {len(cols)} columns, expected n = {p.n}")
    origin = {
        "family": 2,
        "params": p,
        "layout": p.layout.value,
        "subspaces": _bases(subs[1:]),
        "common": _bases(subs[:1])[0],
        "d_formula": p.d_formula,
        "d_asserted": p.d_asserted,
    }
    code = LinearCode.from_columns(gf(p.q), p.k, cols, origin)
    return _finish(code, p.d_formula, p.d_asserted, verify)


def build(p: Family1Params | Family2Params, verify: bool = False) -> LinearCode:
    return build_family1(p, verify) if isinstance(p, Family1Params) else build_family2(p, verify)


# -- optimality certificates ------------------------------------------------------

def family1_defect(p: Family1Params) -> int:
    """Griesmer defect of the first family when d attains its formula."""
    return floor_sum(p.h, p.q, p.k - p.u)


def family1_condition(p: Family1Params) -> bool:
    """Sufficient condition for distance optimality: i_h + u > sum floor(h/q^i)."""
    return q_adic(p.h, p.q).i_h + p.u > family1_defect(p)


def certify_optimality_family1(p: Family1Params, d: int | None = None) -> OptimalityCertificate:
    """Certificate for the first family; ``d`` defaults to the formula value.

    Pass the brute-force d to certify a built code; required when h > q^u.
    """
    if d is None:
        if not p.d_asserted:
            raise HypothesisNotMet(f"h = {p.h} > q^u = {p.q**p.u}: the distance formula is only a bound")
        d = p.d_formula
    return certify(
        p.q,
        p.n,
        p.k,
        d,
        predicted_defect=family1_defect(p) if p.d_asserted else None,
        family_condition=family1_condition(p),
        condition_text="i_h + u > sum floor(h/q^i)",
        q_adic=q_adic(p.h, p.q),
    )


def _multiplicity_pattern(us: Sequence[int]) -> list[int]:
    out: list[int] = []
    for i, u in enumerate(us):
        if i and u == us[i - 1]:
            out[-1] += 1
        else:
            out.append(1)
    return out


def family2_defect_bound(p: Family2Params) -> int | None:
    """Griesmer defect bound for the second family, or None if neither case applies."""
    base = (p.h - 1) * (p.q**p.u0 - 1) // (p.q - 1)
    if all(s < p.q for s in _multiplicity_pattern(p.us)):
        return base
    if len(set(p.us)) == 1:
        return base + floor_sum(p.h, p.q, p.k - p.us[0])
    return None


def family2_condition(p: Family2Params) -> bool | None:
    base = (p.h - 1) * (p.q**p.u0 - 1) // (p.q - 1)
    if all(s < p.q for s in _multiplicity_pattern(p.us)):
        return p.us[0] > base
    if len(set(p.us)) == 1:
        return q_adic(p.h, p.q).i_h + p.us[0] > base + floor_sum(p.h, p.q, p.k - p.us[0])
    return None


def certify_optimality_family2(p: Family2Params, d: int | None = None) -> OptimalityCertificate:
    if d is None:
        if not p.d_asserted:
            raise HypothesisNotMet(f"h = {p.h} > q^(u1-u0): the distance formula is only a bound")
        d = p.d_formula
    cond = family2_condition(p)
    equal = len(set(p.us)) == 1 and not all(s < p.q for s in _multiplicity_pattern(p.us))
    text = "i_h + u > (h-1)(q^u0-1)/(q-1) + sum floor(h/q^i)" if equal else "u1 > (h-1)(q^u0-1)/(q-1)"
    return certify(
        p.q,
        p.n,
        p.k,
        d,
        predicted_defect=family2_defect_bound(p) if p.d_asserted else None,
        family_condition=cond,
        condition_text=text,
    )


def certify_optimality(p: Family1Params | Family2Params, d: int | None = None) -> OptimalityCertificate:
    if isinstance(p, Family1Params):
        return certify_optimality_family1(p, d)
    return certify_optimality_family2(p, d)


def certify_code(code: LinearCode) -> OptimalityCertificate:
    """Certificate using the code's brute-force minimum distance."""
    origin = code.origin or {}
    p = origin.get("params")
    if p is not None:
        return certify_optimality(p, code.min_distance)
    return certify(code.q, code.n, code.k, code.min_distance)
