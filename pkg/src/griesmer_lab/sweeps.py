"""Closed form versus brute force over every valid parameter set within a size bound."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

from .codes import LinearCode, ghw_within_caps
from .config import current_caps
from .constructions import Family1Params, Family2Params, Layout, build
from .errors import HypothesisNotMet
from .predictions import predicted_ghw, predicted_weight_distribution
from .qcombinatorics import gaussian_binomial


def _fits(q: int, k: int, max_qk: int) -> bool:
    return q**k <= max_qk


def block_parameter_sets(q: int, max_qk: int) -> Iterator[Family1Params]:
    k = 2
    while _fits(q, k, max_qk):
        for u in range(2, k + 1):
            for h in range(1, k // u + 1):
                if q**k - q ** (k - 1) > h * (q**u - 1):
                    yield Family1Params(q, k, u, h, Layout.BLOCK_DISJOINT, None)
        k += 1


def pencil_parameter_sets(q: int, max_qk: int) -> Iterator[Family1Params]:
    k = 8
    while _fits(q, k, max_qk):
        yield Family1Params(q, k, 2, 2 * q, Layout.PENCIL, None)
        k += 1


def _nondecreasing(lo: int, hi: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for a in range(lo, hi + 1):
        for rest in _nondecreasing(a, hi, length - 1):
            yield (a,) + rest


def common_parameter_sets(q: int, max_qk: int) -> Iterator[Family2Params]:
    """Every (k, u0, u_1 <= ... <= u_h), 2 <= h <= q, meeting the closed-form hypotheses."""
    k = 3
    while _fits(q, k, max_qk):
        for h in range(2, q + 1):
            for u0 in range(1, k):
                for us in _nondecreasing(u0 + 1, k, h):
                    if sum(us) - (h - 1) * u0 > k:
                        continue
                    if not (q - 1) * us[0] > (h - 1) * (q**u0 - 1):
                        continue
                    deleted = q**u0 - 1 + sum(q**u - q**u0 for u in us)
                    if not q**k - q ** (k - 1) > deleted:
                        continue
                    yield Family2Params(q, k, u0, us, Layout.COMMON_BLOCK, None)
        k += 1


def all_parameter_sets(qs=(2, 3), max_qk: int = 2**18) -> list[Family1Params | Family2Params]:
    out: list = []
    for q in qs:
        out += list(block_parameter_sets(q, max_qk))
        out += list(pencil_parameter_sets(q, max_qk))
        out += list(common_parameter_sets(q, max_qk))
    return out


@dataclass
class SweepResult:
    params: Family1Params | Family2Params
    n: int
    d: int
    wd_match: bool
    ghw_checked: dict[int, tuple[int, int]] = field(default_factory=dict)
    ghw_refused: str = ""
    seconds: float = 0.0
    code: LinearCode | None = field(default=None, repr=False)

    @property
    def ghw_match(self) -> bool:
        return all(a == b for a, b in self.ghw_checked.values())

    @property
    def ok(self) -> bool:
        return self.wd_match and self.ghw_match

    def mismatches(self) -> list[str]:
        out = []
        if not self.wd_match:
            out.append("weight distribution")
        out += [f"d_{r}: closed {a} vs brute {b}" for r, (a, b) in self.ghw_checked.items() if a != b]
        return out


def check_closed_forms(p: Family1Params | Family2Params, keep_code: bool = False) -> SweepResult:
    """Compare predicted weight distribution and GHW against brute force.

    GHW is compared for every r whose subcode enumeration fits the cap; the
    second-family GHW formula covers h = 2 only, so other h skip it.
    """
    t0 = time.perf_counter()
    code = build(p)
    wd = code.weight_distribution
    wd_ok = predicted_weight_distribution(p).counts == wd.counts
    res = SweepResult(p, code.n, wd.min_distance, wd_ok)
    try:
        predicted_ghw(p, 1)
    except HypothesisNotMet as exc:
        res.ghw_refused = str(exc)
    else:
        for r, brute in ghw_within_caps(code).items():
            res.ghw_checked[r] = (predicted_ghw(p, r), brute)
    res.seconds = time.perf_counter() - t0
    if keep_code:
        res.code = code
    return res


def ghw_rs_within_caps(q: int, k: int) -> list[int]:
    cap = current_caps().max_subspaces
    return [r for r in range(1, k + 1) if r in (1, k) or gaussian_binomial(k, r, q) <= cap]
