"""Griesmer sums, defects and distance-optimality certificates."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import RangeError
from .qcombinatorics import QAdicProfile


def griesmer_sum(q: int, k: int, d: int) -> int:
    """g_q(k, d) = sum_{i<k} ceil(d / q^i), the shortest length an [n,k,d]_q code can have."""
    if k < 1 or d < 1:
        raise RangeError(f"Griesmer sum needs k >= 1 and d >= 1 (got k={k}, d={d})")
    return sum(-(-d // q**i) for i in range(k))


def griesmer_defect(q: int, n: int, k: int, d: int) -> int:
    return n - griesmer_sum(q, k, d)


def delta(q: int, k: int, d: int, dd: int = 1) -> int:
    """g_q(k, d + dd) - g_q(k, d)."""
    return griesmer_sum(q, k, d + dd) - griesmer_sum(q, k, d)


def floor_sum(h: int, q: int, top: int) -> int:
    """sum_{i=1}^{top} floor(h / q^i)."""
    return sum(h // q**i for i in range(1, top + 1))


def distance_exceeds_griesmer(q: int, n: int, k: int, d: int) -> bool:
    """True when no [n, k, d+1]_q code can exist, i.e. g_q(k, d+1) > n."""
    return griesmer_sum(q, k, d + 1) > n


class Verdict(str, Enum):
    GRIESMER_OPTIMAL = "GriesmerOptimal"
    DISTANCE_OPTIMAL = "DistanceOptimal"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class OptimalityCertificate:
    n: int
    k: int
    d: int
    q: int
    griesmer_sum: int
    griesmer_defect: int
    delta: int
    verdict: Verdict
    reason: str
    q_adic: QAdicProfile | None = None
    # the family's own prediction of the defect (exact value or upper bound)
    predicted_defect: int | None = None
    family_condition: bool | None = None
    direct_check: bool = False

    def as_dict(self) -> dict:
        out = {
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "q": self.q,
            "griesmer_sum": self.griesmer_sum,
            "griesmer_defect": self.griesmer_defect,
            "delta": self.delta,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "predicted_defect": self.predicted_defect,
            "family_condition": self.family_condition,
            "direct_check": self.direct_check,
        }
        if self.q_adic is not None:
            out["q_adic"] = {"h": self.q_adic.h, "digits": list(self.q_adic.digits), "i_h": self.q_adic.i_h}
        return out


def certify(
    q: int,
    n: int,
    k: int,
    d: int,
    *,
    predicted_defect: int | None = None,
    family_condition: bool | None = None,
    condition_text: str = "",
    q_adic: QAdicProfile | None = None,
) -> OptimalityCertificate:
    """Certificate from the direct Griesmer test, annotated with a family condition.

    The verdict never rests on the family condition alone: DistanceOptimal
    is issued only when g_q(k, d+1) > n holds.
    """
    g = griesmer_sum(q, k, d)
    defect = n - g
    direct = distance_exceeds_griesmer(q, n, k, d)
    parts = []
    if defect == 0:
        verdict = Verdict.GRIESMER_OPTIMAL
        parts.append(f"n = g_q(k,d) = {g}")
    elif direct:
        verdict = Verdict.DISTANCE_OPTIMAL
        parts.append(f"g_q(k,d+1) = {griesmer_sum(q, k, d + 1)} > n = {n}")
    else:
        verdict = Verdict.NOT_CERTIFIED
        parts.append(f"g_q(k,d+1) = {griesmer_sum(q, k, d + 1)} <= n = {n}")
    if family_condition is not None:
        parts.append(f"{condition_text} {'holds' if family_condition else 'fails'}".strip())
    return OptimalityCertificate(
        n=n,
        k=k,
        d=d,
        q=q,
        griesmer_sum=g,
        griesmer_defect=defect,
        delta=griesmer_sum(q, k, d + 1) - g,
        verdict=verdict,
        reason="; ".join(parts),
        q_adic=q_adic,
        predicted_defect=predicted_defect,
        family_condition=family_condition,
        direct_check=direct or defect == 0,
    )


def kopt_upper(q: int, n: int, d: int) -> int:
    """Largest k with g_q(k, d) <= n (0 if none): a Griesmer upper bound on k_opt(n, d)."""
    if d < 1:
        raise RangeError(f"d must be >= 1, got {d}")
    if n < d:
        return 0
    k = 0
    while griesmer_sum(q, k + 1, d) <= n:
        k += 1
    return k
