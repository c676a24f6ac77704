from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from griesmer_lab import vectorspace as vs
from griesmer_lab.codes import LinearCode, simplex_code
from griesmer_lab.config import caps_override
from griesmer_lab.constructions import Family1Params, Family2Params, Layout, build
from griesmer_lab.errors import CapExceeded, LayoutNotSupported, ProofCaseFailed
from griesmer_lab.field import gf
from griesmer_lab.lrc import (
    CMVerdict,
    RepairPlan,
    audit_constructive_pairs,
    cm_report,
    cm_report_params,
    constructive_repair_pair,
    locality,
    pair_counts,
    verify_plan,
    verify_repair,
)


def naive_locality(q: int, columns: list) -> int | None:
    """Smallest r such that every column lies in the span of some r other columns (None above 3)."""
    worst = 0
    for i, g in enumerate(columns):
        others = columns[:i] + columns[i + 1 :]
        need = next((s for s in (1, 2, 3) if any(tuple(g) in naive.span(q, list(c)) for c in combinations(others, s))), None)
        if need is None:
            return None
        worst = max(worst, need)
    return worst


def naive_pair_counts(q: int, columns: list) -> list[int]:
    """Ordered pairs (a g_j, b g_l), j != l both different from i, summing to g_i."""
    out = []
    for i, g in enumerate(columns):
        c = 0
        for j, gj in enumerate(columns):
            for l, gl in enumerate(columns):
                if len({i, j, l}) < 3:
                    continue
                for a in range(1, q):
                    for b in range(1, q):
                        c += all((a * x + b * y - z) % q == 0 for x, y, z in zip(gj, gl, g))
        out.append(c)
    return out


def test_simplex_has_locality_two():
    code = simplex_code(gf(2), 3)
    r, plan = locality(code)
    assert r == 2 and verify_plan(code, plan)
    r4, plan4 = locality(simplex_code(gf(4), 3))
    assert r4 == 2 and verify_plan(simplex_code(gf(4), 3), plan4)


def test_table_code_has_locality_two():
    code = build(Family1Params(2, 5, 2, 3, Layout.PARTIAL_SPREAD))
    r, plan = locality(code)
    assert r == 2 and verify_plan(code, plan)
    assert all(verify_repair(code, i, plan.repair_set(i), plan.coefficients[i][: len(plan.repair_set(i))]) for i in range(code.n))
    with pytest.raises(LayoutNotSupported):
        constructive_repair_pair(code, 0)


def test_single_subspace_with_k_equal_u_plus_one_needs_three():
    code = build(Family1Params(2, 3, 2, 1))
    r, plan = locality(code)
    assert r == 3 and verify_plan(code, plan) and naive_locality(2, code.columns.tolist()) == 3
    audit = audit_constructive_pairs(code)
    assert len(audit.failures) == code.n
    with pytest.raises(ProofCaseFailed):
        constructive_repair_pair(code, 0)


def test_single_subspace_prescribed_pair_fails_but_locality_is_two():
    code = build(Family1Params(2, 4, 2, 1))
    r, plan = locality(code)
    assert r == 2 and verify_plan(code, plan)
    assert not audit_constructive_pairs(code).ok


def test_repair_search_is_capped_at_three():
    f = gf(2)
    cols = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)]
    code = LinearCode.from_columns(f, 4, cols)
    assert naive_locality(2, cols) is None
    with pytest.raises(CapExceeded):
        locality(code)
    with caps_override(max_locality_work=10):
        with pytest.raises(CapExceeded):
            locality(simplex_code(f, 4))


def test_constructive_cases():
    code = build(Family1Params(2, 6, 2, 2))
    tail_zero = code.column_index((1, 0, 0, 1, 0, 0))
    pair = constructive_repair_pair(code, tail_zero)
    assert pair.case == "tail zero: beta = e_k" and pair.verify(code)
    split = build(Family1Params(2, 4, 2, 2))
    for i in range(split.n):
        pair = constructive_repair_pair(split, i)
        assert pair.case.startswith("k = uh") and pair.verify(split)


@pytest.mark.parametrize(
    "p",
    [
        Family1Params(2, 8, 2, 4),
        Family1Params(2, 8, 2, 4, Layout.PENCIL),
        Family1Params(3, 8, 2, 6, Layout.PENCIL),
        Family2Params(2, 6, 2, (4, 4)),
        Family2Params(3, 5, 1, (2, 2)),
    ],
    ids=lambda p: p.label(),
)
def test_prescribed_pairs_on_standard_layouts(p):
    code = build(p)
    assert audit_constructive_pairs(code).ok
    r, plan = locality(code)
    assert r == 2 and verify_plan(code, plan)


def test_pair_counts_match_naive():
    for p in (Family1Params(2, 4, 2, 1), Family1Params(3, 4, 2, 1), Family2Params(2, 5, 1, (2, 3))):
        code = build(p)
        assert pair_counts(code).tolist() == naive_pair_counts(p.q, code.columns.tolist())


def test_verify_plan_rejects_bad_plans():
    code = simplex_code(gf(3), 3)
    r, plan = locality(code)
    assert verify_plan(code, plan)
    bad = plan.coefficients.copy()
    bad[0, 0] = 3 - bad[0, 0]
    assert not verify_plan(code, RepairPlan(r, plan.sets, bad))
    selfref = plan.sets.copy()
    selfref[0, 0] = 0
    assert not verify_plan(code, RepairPlan(r, selfref, plan.coefficients))
    assert not verify_plan(code, RepairPlan(1, plan.sets, plan.coefficients))
    assert RepairPlan.from_lists(2, [(1, 2)], [(1, 1)]).as_dict() == {"r": 2, "sets": [[1, 2]], "coefficients": [[1, 1]]}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 4), st.data())
def test_locality_matches_naive(q, k, data):
    f = gf(q)
    pts = vs.enumerate_projective_points(f, k)
    chosen = data.draw(st.lists(st.sampled_from(pts), min_size=k + 1, max_size=min(len(pts), 12), unique=True))
    if vs.rank(f, chosen) < k:
        return
    code = LinearCode.from_columns(f, k, chosen)
    expected = naive_locality(q, code.columns.tolist())
    if expected is None:
        with pytest.raises(CapExceeded):
            locality(code)
        return
    r, plan = locality(code)
    assert max(r, 2) == max(expected, 2)  # r = 1 cannot occur for distinct points
    assert verify_plan(code, plan)


def test_cm_examples():
    assert cm_report(build(Family2Params(2, 7, 1, (2, 3))), 2).verdict is CMVerdict.MEETS_CM
    for us in ((2, 3), (2, 4), (3, 4)):
        k = sum(us) - 1
        while True:
            try:
                code = build(Family2Params(2, k, 1, us))
                break
            except Exception:
                k += 1
        assert cm_report(code, 2).verdict is CMVerdict.MEETS_CM
    pencil2 = cm_report(build(Family1Params(2, 8, 2, 4, Layout.PENCIL)), 2)
    assert pencil2.cm_defect_upper <= 2
    pencil3 = cm_report(build(Family1Params(3, 8, 2, 6, Layout.PENCIL)), 2)
    assert pencil3.cm_defect_upper <= 1


def test_cm_report_params():
    rep = cm_report_params(2, 243, 8, 120, 2)
    assert min(rep.values) == 1 and max(rep.values) == (243 - 120) // 3
    assert rep.bound_upper == min(rep.values.values()) and rep.cm_defect_upper == rep.bound_upper - 8
    assert cm_report_params(2, 5, 2, 4, 2).verdict is CMVerdict.UNKNOWN
    values = rep.as_dict()["values"]
    assert values[0][0] == 1 and np.all(np.diff([t for t, _ in values]) == 1)
