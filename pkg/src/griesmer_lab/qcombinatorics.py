"""q-analog counting: Gaussian binomials, q-adic digits, and closed forms for
the number of subspaces with prescribed intersection dimensions.

Each closed form has a brute-force twin (``oracle_*``) that enumerates the
subspaces of a concrete configuration.  The oracles are the ground truth; the
closed forms are the fast path and are tested against them.

Notation used below: U1, U2 are fixed subspaces of dimensions u1, u2.  In the
"disjoint" counts U1 ∩ U2 = 0; in the "common" counts U1 ∩ U2 = U0 of
dimension u0.  A candidate subspace V meets U0, U1, U2 in dimensions v0, v1,
v2, and t is the dimension V ∩ (U1 + U2) has beyond what those intersections
force.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import RangeError


@lru_cache(maxsize=None)
def gaussian_binomial(k: int, r: int, q: int) -> int:
    """Number of r-dim subspaces of F_q^k."""
    if not 0 <= r <= k:
        raise RangeError(f"Gaussian({k},{r}) needs 0 <= r <= k")
    num = den = 1
    for i in range(r):
        num *= q**k - q**i
        den *= q**r - q**i
    return num // den


def _gb(k: int, r: int, q: int) -> int:
    """Gaussian binomial that is 0 outside 0 <= r <= k."""
    if k < 0 or r < 0 or r > k:
        return 0
    return gaussian_binomial(k, r, q)


def gl_order(t: int, q: int) -> int:
    """|GL_t(F_q)| = (q^t - 1)(q^t - q)...(q^t - q^(t-1))."""
    out = 1
    for i in range(t):
        out *= q**t - q**i
    return out


@dataclass(frozen=True)
class QAdicProfile:
    h: int
    q: int
    digits: tuple[int, ...]
    i_h: int  # position of the least significant nonzero digit


def q_adic(h: int, q: int) -> QAdicProfile:
    if h < 1:
        raise RangeError(f"q-adic profile needs h >= 1, got {h}")
    if q < 2:
        raise RangeError(f"base must be >= 2, got {q}")
    digits = []
    rest = h
    while rest:
        rest, d = divmod(rest, q)
        digits.append(d)
    i_h = next(i for i, d in enumerate(digits) if d)
    return QAdicProfile(h, q, tuple(digits), i_h)


def _nonneg(**values: int) -> None:
    for name, v in values.items():
        if v < 0:
            raise RangeError(f"{name} must be non-negative, got {v}")


# -- closed forms ---------------------------------------------------------------

def count_meeting_subspace(k: int, u1: int, l: int, t: int, q: int) -> int:
    """l-dim subspaces of F_q^k meeting a fixed u1-dim subspace in dimension t."""
    _nonneg(k=k, u1=u1, l=l, t=t)
    if u1 > k or l > k:
        raise RangeError(f"need u1, l <= k (got u1={u1}, l={l}, k={k})")
    if t > min(u1, l):
        raise RangeError(f"t={t} exceeds min(u1, l)")
    return q ** ((u1 - t) * (l - t)) * _gb(k - u1, l - t, q) * _gb(u1, t, q)


def count_inside_direct_sum(u1: int, u2: int, v1: int, v2: int, t: int, q: int) -> int:
    """(t+v1+v2)-dim subspaces V of U1 ⊕ U2 with dim V∩U1 = v1, dim V∩U2 = v2."""
    _nonneg(u1=u1, u2=u2, v1=v1, v2=v2, t=t)
    if v1 > u1 or v2 > u2:
        raise RangeError("need v1 <= u1 and v2 <= u2")
    base = gaussian_binomial(u1, v1, q) * gaussian_binomial(u2, v2, q)
    if t == 0:
        return base
    return gl_order(t, q) * _gb(u1 - v1, t, q) * _gb(u2 - v2, t, q) * base


def count_meeting_disjoint_pair(k: int, u1: int, u2: int, l: int, v1: int, v2: int, q: int) -> int:
    """l-dim subspaces of F_q^k meeting trivially-intersecting U1, U2 in v1, v2."""
    _nonneg(k=k, u1=u1, u2=u2, l=l, v1=v1, v2=v2)
    if u1 + u2 > k:
        raise RangeError(f"u1 + u2 = {u1 + u2} exceeds k = {k}")
    if v1 > u1 or v2 > u2 or l > k:
        raise RangeError("need v1 <= u1, v2 <= u2, l <= k")
    total = 0
    for t in range(min(u1 - v1, u2 - v2) + 1):
        s = t + v1 + v2
        if s > l:
            break
        total += q ** ((u1 + u2 - s) * (l - s)) * count_inside_direct_sum(u1, u2, v1, v2, t, q) * _gb(
            k - u1 - u2, l - s, q
        )
    return total


def _check_common(u0: int, u1: int, u2: int, v0: int, v1: int, v2: int) -> None:
    _nonneg(u0=u0, u1=u1, u2=u2, v0=v0, v1=v1, v2=v2)
    if not (u0 <= u1 and u0 <= u2):
        raise RangeError("the common part must satisfy u0 <= min(u1, u2)")
    if v0 > u0 or v1 > u1 or v2 > u2:
        raise RangeError("need v_i <= u_i")


def count_inside_common_sum(
    u0: int, u1: int, u2: int, v0: int, v1: int, v2: int, t: int, q: int, *, exponent: str = "lifted"
) -> int:
    """(t+v1+v2-v0)-dim subspaces V of U1 + U2 (with U1 ∩ U2 = U0) having the
    intersection dimensions v0, v1, v2.

    Every such V lifts uniquely from its image in (U1 + U2)/U0 once V ∩ U0 is
    fixed, up to a choice of q^((u0-v0) * dim image) complements.  The
    ``exponent`` switch selects that lifted exponent (default) or the
    alternative ``(u0-v0)(t-v1+v2-v0)`` so the two can be compared with the
    oracle.
    """
    _check_common(u0, u1, u2, v0, v1, v2)
    _nonneg(t=t)
    if v0 > min(v1, v2) or v1 - v0 > u1 - u0 or v2 - v0 > u2 - u0:
        return 0  # no subspace has these intersection dimensions
    if exponent == "lifted":
        e = (u0 - v0) * (t + v1 + v2 - 2 * v0)
    elif exponent == "alternative":
        e = (u0 - v0) * (t - v1 + v2 - v0)
    else:
        raise ValueError(f"unknown exponent form {exponent!r}")
    inner = count_inside_direct_sum(u1 - u0, u2 - u0, v1 - v0, v2 - v0, t, q)
    if not inner:
        return 0
    return gaussian_binomial(u0, v0, q) * _pow(q, e) * inner


def _pow(q: int, e: int):
    # a negative exponent only arises from the alternative form; keep it exact
    from fractions import Fraction

    return q**e if e >= 0 else Fraction(1, q ** (-e))


def count_meeting_common_pair(
    k: int, u0: int, u1: int, u2: int, l: int, v0: int, v1: int, v2: int, q: int, *, gaussian_arg: str = "lifted"
) -> int:
    """l-dim subspaces of F_q^k meeting U0, U1, U2 (U1 ∩ U2 = U0) in v0, v1, v2.

    ``gaussian_arg="alternative"`` swaps the argument of the Gaussian factor
    to ``l-t-u1-u2+v0`` for comparison against the oracle.
    """
    _check_common(u0, u1, u2, v0, v1, v2)
    _nonneg(k=k, l=l)
    w = u1 + u2 - u0
    if w > k or l > k:
        raise RangeError(f"dim(U1 + U2) = {w} and l = {l} must not exceed k = {k}")
    total = 0
    for t in range(min(u1 - v1, u2 - v2) + 1):
        s = t + v1 + v2 - v0
        if gaussian_arg == "lifted":
            g = _gb(k - w, l - s, q)
        elif gaussian_arg == "alternative":
            g = _gb(k - w, l - t - u1 - u2 + v0, q)
        else:
            raise ValueError(f"unknown Gaussian argument form {gaussian_arg!r}")
        if not g or s > l:
            continue
        total += q ** ((w - s) * (l - s)) * g * count_inside_common_sum(u0, u1, u2, v0, v1, v2, t, q)
    return total


# -- brute-force oracles -------------------------------------------------------------

def intersection_profile(q: int, k: int, l: int, subspaces) -> Counter:
    """Histogram of (dim V∩S for S in subspaces) over all l-dim V ⊆ F_q^k."""
    from . import vectorspace as vs
    from .field import gf

    ctx = gf(q)
    bases = [list(s.basis) for s in subspaces]
    hist: Counter = Counter()
    for rows in vs.rref_batches(ctx, k, l):
        digits = vs.unpack(ctx, k, rows)
        cols = []
        for basis in bases:
            if not basis:
                cols.append([0] * len(rows))
                continue
            ub = np.broadcast_to(np.array(basis, dtype=np.int64), (len(rows), len(basis), k))
            stacked = np.concatenate([digits, ub], axis=1)
            cols.append((l + len(basis) - vs.batch_rank(ctx, stacked)).tolist())
        hist.update(zip(*cols))
    return hist


def _coordinate(q: int, k: int, coords):
    from . import vectorspace as vs
    from .field import gf

    return vs.coordinate_subspace(gf(q), k, list(coords))


@lru_cache(maxsize=None)
def _profile_single(q, k, u1, l):
    return intersection_profile(q, k, l, [_coordinate(q, k, range(u1))])


@lru_cache(maxsize=None)
def _profile_disjoint(q, k, u1, u2, l):
    return intersection_profile(q, k, l, [_coordinate(q, k, range(u1)), _coordinate(q, k, range(u1, u1 + u2))])


def _common_layout(q, k, u0, u1, u2):
    return [
        _coordinate(q, k, range(u0)),
        _coordinate(q, k, range(u1)),
        _coordinate(q, k, list(range(u0)) + list(range(u1, u1 + u2 - u0))),
    ]


@lru_cache(maxsize=None)
def _profile_common(q, k, u0, u1, u2, l):
    return intersection_profile(q, k, l, _common_layout(q, k, u0, u1, u2))


def oracle_meeting_subspace(k: int, u1: int, l: int, t: int, q: int) -> int:
    return _profile_single(q, k, u1, l)[(t,)]


def oracle_inside_direct_sum(u1: int, u2: int, v1: int, v2: int, t: int, q: int) -> int:
    l = t + v1 + v2
    if l > u1 + u2:
        return 0
    return _profile_disjoint(q, u1 + u2, u1, u2, l)[(v1, v2)]


def oracle_meeting_disjoint_pair(k: int, u1: int, u2: int, l: int, v1: int, v2: int, q: int) -> int:
    return _profile_disjoint(q, k, u1, u2, l)[(v1, v2)]


def oracle_inside_common_sum(u0: int, u1: int, u2: int, v0: int, v1: int, v2: int, t: int, q: int) -> int:
    w = u1 + u2 - u0
    l = t + v1 + v2 - v0
    if not 0 <= l <= w:
        return 0
    return _profile_common(q, w, u0, u1, u2, l)[(v0, v1, v2)]


def oracle_meeting_common_pair(k: int, u0: int, u1: int, u2: int, l: int, v0: int, v1: int, v2: int, q: int) -> int:
    return _profile_common(q, k, u0, u1, u2, l)[(v0, v1, v2)]


# -- exhaustive comparison --------------------------------------------------------------

FORMS = ("meeting-subspace", "inside-direct-sum", "meeting-disjoint-pair", "inside-common-sum", "meeting-common-pair")


@dataclass(frozen=True)
class SweepRow:
    form: str
    q: int
    params: tuple[tuple[str, int], ...]
    closed: int
    oracle: int
    alternative: object = None  # the competing printed form, where one exists

    @property
    def match(self) -> bool:
        return self.closed == self.oracle

    @property
    def alternative_match(self) -> bool | None:
        return None if self.alternative is None else self.alternative == self.oracle


def _row(form, q, closed, oracle, alternative=None, **params) -> SweepRow:
    return SweepRow(form, q, tuple(params.items()), closed, oracle, alternative)


def sweep_form(form: str, q: int, kmax: int = 5):
    """Yield a SweepRow for every valid parameter tuple of one closed form with ambient dim <= kmax."""
    if form == "meeting-subspace":
        for k in range(1, kmax + 1):
            for u1 in range(0, k):
                for l in range(k + 1):
                    for t in range(min(u1, l) + 1):
                        yield _row(form, q, count_meeting_subspace(k, u1, l, t, q),
                                   oracle_meeting_subspace(k, u1, l, t, q), k=k, u1=u1, l=l, t=t)
    elif form == "inside-direct-sum":
        for u1 in range(1, kmax):
            for u2 in range(1, kmax - u1 + 1):
                for v1 in range(u1 + 1):
                    for v2 in range(u2 + 1):
                        for t in range(min(u1 - v1, u2 - v2) + 1):
                            yield _row(form, q, count_inside_direct_sum(u1, u2, v1, v2, t, q),
                                       oracle_inside_direct_sum(u1, u2, v1, v2, t, q),
                                       u1=u1, u2=u2, v1=v1, v2=v2, t=t)
    elif form == "meeting-disjoint-pair":
        for k in range(2, kmax + 1):
            for u1 in range(1, k):
                for u2 in range(1, k - u1 + 1):
                    for l in range(k + 1):
                        for v1 in range(min(u1, l) + 1):
                            for v2 in range(min(u2, l) + 1):
                                yield _row(form, q, count_meeting_disjoint_pair(k, u1, u2, l, v1, v2, q),
                                           oracle_meeting_disjoint_pair(k, u1, u2, l, v1, v2, q),
                                           k=k, u1=u1, u2=u2, l=l, v1=v1, v2=v2)
    elif form == "inside-common-sum":
        for u0, u1, u2 in _common_triples(kmax):
            for v0 in range(u0 + 1):
                for v1 in range(v0, u1 + 1):
                    for v2 in range(v0, u2 + 1):
                        if v1 - v0 > u1 - u0 or v2 - v0 > u2 - u0:
                            continue
                        for t in range(min(u1 - v1, u2 - v2) + 1):
                            args = (u0, u1, u2, v0, v1, v2, t, q)
                            yield _row(form, q, count_inside_common_sum(*args),
                                       oracle_inside_common_sum(*args),
                                       count_inside_common_sum(*args, exponent="alternative"),
                                       u0=u0, u1=u1, u2=u2, v0=v0, v1=v1, v2=v2, t=t)
    elif form == "meeting-common-pair":
        for k in range(3, kmax + 1):
            for u0, u1, u2 in _common_triples(k):
                for l in range(k + 1):
                    for v0 in range(min(u0, l) + 1):
                        for v1 in range(v0, min(u1, l) + 1):
                            for v2 in range(v0, min(u2, l) + 1):
                                args = (k, u0, u1, u2, l, v0, v1, v2, q)
                                yield _row(form, q, count_meeting_common_pair(*args),
                                           oracle_meeting_common_pair(*args),
                                           count_meeting_common_pair(*args, gaussian_arg="alternative"),
                                           k=k, u0=u0, u1=u1, u2=u2, l=l, v0=v0, v1=v1, v2=v2)
    else:
        raise ValueError(f"unknown counting form {form!r}; choose from {FORMS}")


def _common_triples(kmax: int):
    """(u0, u1, u2) with 1 <= u0 < min(u1, u2), u1 <= u2 and u1 + u2 - u0 <= kmax."""
    for u0 in range(1, kmax):
        for u1 in range(u0 + 1, kmax + 1):
            for u2 in range(u1, kmax + 1):
                if u1 + u2 - u0 <= kmax:
                    yield u0, u1, u2


@dataclass(frozen=True)
class SweepSummary:
    form: str
    q: int
    cases: int
    mismatches: int
    alternative_cases: int
    alternative_mismatches: int
    first_alternative_mismatch: SweepRow | None


def summarize(form: str, q: int, kmax: int = 5) -> SweepSummary:
    cases = mism = alt_cases = alt_mism = 0
    first = None
    for row in sweep_form(form, q, kmax):
        cases += 1
        mism += not row.match
        if row.alternative is not None:
            alt_cases += 1
            if not row.alternative_match:
                alt_mism += 1
                first = first or row
    return SweepSummary(form, q, cases, mism, alt_cases, alt_mism, first)


def typo_verdict(summaries: list[SweepSummary]) -> str:
    """Plain-text verdict on the two competing printed forms."""
    lines = []
    for form, what, ours, theirs in (
        ("inside-common-sum", "exponent of q", "(u0-v0)(t+v1+v2-2v0)", "(u0-v0)(t-v1+v2-v0)"),
        ("meeting-common-pair", "Gaussian argument", "l-t-v1-v2+v0", "l-t-u1-u2+v0"),
    ):
        rel = [s for s in summaries if s.form == form]
        if not rel:
            continue
        cases = sum(s.alternative_cases for s in rel)
        bad_ours = sum(s.mismatches for s in rel)
        bad_alt = sum(s.alternative_mismatches for s in rel)
        ex = next((s.first_alternative_mismatch for s in rel if s.first_alternative_mismatch), None)
        lines.append(
            f"{form}: {what} {ours} matches the oracle in {cases - bad_ours}/{cases} cases; "
            f"{theirs} matches in {cases - bad_alt}/{cases}."
        )
        if ex is not None:
            params = ", ".join(f"{k}={v}" for k, v in ex.params)
            lines.append(f"  counterexample (q={ex.q}, {params}): oracle {ex.oracle}, alternative {ex.alternative}")
        verdict = "confirmed" if bad_ours == 0 else "REFUTED"
        alt = "refuted" if bad_alt else "not refuted"
        lines.append(f"  verdict: {ours} {verdict}; {theirs} {alt}.")
    return "\n".join(lines)


_FORM_ARGS = {
    "meeting-subspace": ("k", "u1", "l", "t"),
    "inside-direct-sum": ("u1", "u2", "v1", "v2", "t"),
    "meeting-disjoint-pair": ("k", "u1", "u2", "l", "v1", "v2"),
    "inside-common-sum": ("u0", "u1", "u2", "v0", "v1", "v2", "t"),
    "meeting-common-pair": ("k", "u0", "u1", "u2", "l", "v0", "v1", "v2"),
}


def form_arguments(form: str) -> tuple[str, ...]:
    if form not in _FORM_ARGS:
        raise ValueError(f"unknown counting form {form!r}; choose from {FORMS}")
    return _FORM_ARGS[form]


def evaluate_form(form: str, q: int, **params: int) -> SweepRow:
    """Closed form, brute-force oracle and (where one exists) the competing printed variant."""
    names = form_arguments(form)
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise RangeError(f"{form} needs {', '.join(missing)}")
    args = tuple(int(params[n]) for n in names) + (q,)
    closed_fn, oracle_fn = {
        "meeting-subspace": (count_meeting_subspace, oracle_meeting_subspace),
        "inside-direct-sum": (count_inside_direct_sum, oracle_inside_direct_sum),
        "meeting-disjoint-pair": (count_meeting_disjoint_pair, oracle_meeting_disjoint_pair),
        "inside-common-sum": (count_inside_common_sum, oracle_inside_common_sum),
        "meeting-common-pair": (count_meeting_common_pair, oracle_meeting_common_pair),
    }[form]
    alternative = None
    if form == "inside-common-sum":
        alternative = count_inside_common_sum(*args, exponent="alternative")
    elif form == "meeting-common-pair":
        alternative = count_meeting_common_pair(*args, gaussian_arg="alternative")
    return SweepRow(form, q, tuple((n, int(params[n])) for n in names), closed_fn(*args), oracle_fn(*args), alternative)
