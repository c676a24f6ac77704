from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from griesmer_lab import vectorspace as vs
from griesmer_lab.codes import (
    ENGINES,
    LinearCode,
    dual_distance_at_least_3,
    ghw,
    ghw_hierarchy,
    m_G,
    minimum_distance,
    simplex_code,
    sswd,
    support_histogram,
    weight_distribution,
    weight_of_functional,
)
from griesmer_lab.constructions import Family1Params, Family2Params, Layout, build
from griesmer_lab.errors import InvariantViolation, RangeError, ZeroVector
from griesmer_lab.field import gf

C22 = Family1Params(2, 5, 2, 3, Layout.PARTIAL_SPREAD)
C36 = Family2Params(2, 6, 2, (4, 4), Layout.COMMON_BLOCK)
C25 = Family2Params(2, 5, 1, (2, 3), Layout.COMMON_BLOCK)
SMALL = [C36, C25, Family1Params(3, 4, 2, 1, Layout.BLOCK_DISJOINT), Family1Params(2, 6, 2, 2, Layout.BLOCK_DISJOINT)]


def test_from_columns_validation():
    f = gf(3)
    with pytest.raises(ZeroVector):
        LinearCode.from_columns(f, 2, [[0, 0], [1, 0]])
    with pytest.raises(InvariantViolation):
        LinearCode.from_columns(f, 2, [[1, 1], [2, 2], [0, 1]])
    with pytest.raises(InvariantViolation):
        LinearCode.from_columns(f, 2, [[1, 1]])
    with pytest.raises(RangeError):
        LinearCode.from_columns(f, 2, [[3, 1], [0, 1]])


def test_weight_of_functional():
    f = gf(3)
    simplex = simplex_code(f, 3)
    for a in naive.vectors(3, 3)[1:]:
        assert weight_of_functional(simplex, a) == 9
    single = LinearCode.from_columns(gf(2), 1, [[1]])
    assert weight_of_functional(single, [1]) == 1
    two = LinearCode.from_columns(gf(2), 2, [[1, 0], [0, 1]])
    assert weight_of_functional(two, [0, 1]) == 1


def test_weight_distribution_examples():
    assert build(C36).weight_distribution.counts == {0: 1, 16: 9, 18: 48, 24: 6}
    k1 = LinearCode.from_columns(gf(5), 1, [[1]])
    assert k1.weight_distribution.counts == {0: 1, 1: 4}
    assert build(C22).min_distance == 10
    assert build(Family1Params(3, 4, 2, 4, Layout.PARTIAL_SPREAD)).min_distance == 15


@pytest.mark.parametrize("p", SMALL, ids=lambda p: p.label())
def test_engines_agree_with_naive(p):
    code = build(p)
    expected = naive.weight_distribution(p.q, code.columns.tolist())
    for method in ENGINES:
        if method == "binary" and p.q != 2:
            continue
        assert weight_distribution(code, method).counts == expected


def test_extension_field_weights():
    f = gf(4)
    code = simplex_code(f, 3)
    assert weight_distribution(code).counts == {0: 1, 16: 63}
    assert ghw(code, 2) == 20


def test_m_g_examples():
    code = build(C22)
    f = code.ctx
    assert m_G(code, vs.full_space(f, 5)) == code.n
    assert m_G(code, vs.zero_space(f, 5)) == 0
    assert m_G(code, vs.span(f, 5, [(0, 0, 0, 0, 1)])) == 1


def test_ghw_examples():
    code = build(C22)
    assert ghw(code, 5) == code.n
    assert ghw(code, 1) == minimum_distance(code) == 10
    assert ghw(code, 2) == 15
    assert naive.min_support(2, code.columns.tolist(), 2) == 15


@pytest.mark.parametrize("p", SMALL[:2], ids=lambda p: p.label())
def test_ghw_matches_naive(p):
    code = build(p)
    for r in (1, 2):
        assert ghw(code, r) == naive.min_support(p.q, code.columns.tolist(), r)


@pytest.mark.parametrize("p", SMALL, ids=lambda p: p.label())
def test_support_engines_agree(p):
    code = build(p)
    for r in range(1, code.k + 1):
        hists = {m: support_histogram(code, r, method=m) for m in ("masks", "direct", "span")}
        assert hists["masks"] == hists["direct"] == hists["span"]


def test_sswd_consistency():
    code = build(C36)
    wd = code.weight_distribution
    one = sswd(code, 1)
    assert {w: c * (code.q - 1) for w, c in one.entries.items() if c} == wd.nonzero()
    assert sswd(code, code.k).entries == {code.n: 1}
    assert sswd(code, 4).total == 651


def test_ghw_strictly_increasing_and_worker_independent():
    code = build(C25)
    seq = ghw_hierarchy(code)
    assert all(a < b for a, b in zip(seq, seq[1:]))
    assert seq[-1] == code.n
    assert ghw_hierarchy(code, workers=2) == seq
    assert support_histogram(code, 2, workers=2) == support_histogram(code, 2)


def test_dual_distance():
    assert dual_distance_at_least_3(build(C22))


def test_permutation_invariance():
    code = build(C25)
    perm = np.random.default_rng(3).permutation(code.n)
    other = code.permuted(perm)
    assert other.weight_distribution == code.weight_distribution
    assert ghw_hierarchy(other) == ghw_hierarchy(code)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 4), st.data())
def test_random_projective_codes(q, k, data):
    f = gf(q)
    pts = vs.enumerate_projective_points(f, k)
    chosen = data.draw(st.lists(st.sampled_from(pts), min_size=k, max_size=len(pts), unique=True))
    if vs.rank(f, chosen) < k:
        return
    code = LinearCode.from_columns(f, k, chosen)
    wd = code.weight_distribution
    assert sum(wd.counts.values()) == q**k
    # every column is nonzero under a fraction (q-1)/q of the functionals
    assert sum(w * m for w, m in wd.counts.items()) == code.n * (q**k - q ** (k - 1))
    assert wd.counts == naive.weight_distribution(q, chosen)
    seq = ghw_hierarchy(code)
    assert seq[0] == wd.min_distance and all(a < b for a, b in zip(seq, seq[1:]))
