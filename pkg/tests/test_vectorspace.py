from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from griesmer_lab import vectorspace as vs
from griesmer_lab.config import caps_override
from griesmer_lab.errors import DimensionMismatch, EnumerationTooLarge
from griesmer_lab.field import gf
from griesmer_lab.qcombinatorics import gaussian_binomial


def _members(s: vs.Subspace) -> frozenset:
    """All vectors of a subspace, spanned by the naive oracle."""
    if not s.basis:
        return frozenset({tuple([0] * s.k)})
    return naive.span(s.q, list(s.basis))


def e(k: int, *coords: int) -> tuple[int, ...]:
    return tuple(1 if i in coords else 0 for i in range(k))


def test_projective_points():
    assert len(vs.enumerate_projective_points(gf(2), 3)) == 7
    assert vs.enumerate_projective_points(gf(3), 2) == [(0, 1), (1, 0), (1, 1), (1, 2)]
    assert len(vs.enumerate_projective_points(gf(2), 1)) == 1
    for q, k in [(2, 4), (3, 3), (4, 2), (5, 2)]:
        pts = vs.enumerate_projective_points(gf(q), k)
        assert len(pts) == (q**k - 1) // (q - 1)
        if q in (2, 3, 5):
            assert sorted(pts) == sorted(naive.projective_points(q, k))


def test_span_intersect_sum():
    f = gf(2)
    a = vs.span(f, 4, [e(4, 0), e(4, 1)])
    b = vs.span(f, 4, [e(4, 2), e(4, 3)])
    assert vs.intersect(a, b).dim == 0
    assert vs.subspace_sum(a, b).dim == 4
    c = vs.span(f, 4, [e(4, 0), e(4, 1), e(4, 2)])
    d = vs.span(f, 4, [e(4, 1), e(4, 2), e(4, 3)])
    meet = vs.intersect(c, d)
    assert meet.dim == 2 and _members(meet) == _members(vs.span(f, 4, [e(4, 1), e(4, 2)]))
    assert vs.contains(c, (1, 1, 0, 0)) and not vs.contains(c, e(4, 3))


def test_orthogonal_complement_examples():
    f2 = gf(2)
    comp = vs.orthogonal_complement(vs.span(f2, 3, [e(3, 0)]))
    assert _members(comp) == _members(vs.span(f2, 3, [e(3, 1), e(3, 2)]))
    assert vs.orthogonal_complement(vs.full_space(f2, 3)).dim == 0
    f3 = gf(3)
    comp3 = vs.orthogonal_complement(vs.span(f3, 3, [(1, 1, 1)]))
    assert comp3.dim == 2
    assert _members(comp3) == frozenset(v for v in naive.vectors(3, 3) if sum(v) % 3 == 0)


def test_enumeration_counts():
    f2 = gf(2)
    assert sum(1 for _ in vs.enumerate_subspaces(f2, 2, 1)) == 3
    assert sum(1 for _ in vs.enumerate_subspaces(f2, 4, 2)) == 35
    assert sum(1 for _ in vs.enumerate_subspaces(gf(3), 3, 0)) == 1


@pytest.mark.parametrize("q,k,r", [(2, 3, 1), (2, 3, 2), (2, 4, 2), (3, 3, 1), (3, 3, 2)])
def test_enumeration_matches_naive(q, k, r):
    ours = {_members(s) for s in vs.enumerate_subspaces(gf(q), k, r)}
    assert ours == naive.all_subspaces(q, k, r)


@pytest.mark.parametrize("q,kmax", [(2, 6), (3, 4), (4, 3)])
def test_enumeration_count_is_gaussian(q, kmax):
    f = gf(q)
    for k in range(kmax + 1):
        for r in range(k + 1):
            subs = list(vs.enumerate_subspaces(f, k, r))
            assert len(subs) == gaussian_binomial(k, r, q)
            assert len({s.basis for s in subs}) == len(subs)


def test_enumeration_errors():
    with pytest.raises(DimensionMismatch):
        list(vs.enumerate_subspaces(gf(2), 3, 4))
    with caps_override(max_subspaces=10):
        with pytest.raises(EnumerationTooLarge):
            list(vs.enumerate_subspaces(gf(2), 4, 2))
    with pytest.raises(DimensionMismatch):
        vs.intersect(vs.full_space(gf(2), 3), vs.full_space(gf(2), 4))


def test_encode_decode_roundtrip():
    f = gf(3)
    for v in naive.vectors(3, 3):
        assert vs.decode(f, 3, vs.encode(f, v)) == v


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.data())
def test_batch_rank_matches_rref(q, k, data):
    f = gf(q)
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=k, max_size=k), min_size=1, max_size=5))
    assert vs.batch_rank(f, np.array([rows]))[0] == vs.rank(f, rows)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.data())
def test_dimension_formula_and_complement(q, data):
    k = 4
    f = gf(q)
    vec = st.lists(st.integers(0, q - 1), min_size=k, max_size=k)
    a = vs.span(f, k, data.draw(st.lists(vec, max_size=3)))
    b = vs.span(f, k, data.draw(st.lists(vec, max_size=3)))
    assert vs.subspace_sum(a, b).dim + vs.intersect(a, b).dim == a.dim + b.dim
    assert _members(vs.intersect(a, b)) == _members(a) & _members(b)
    comp = vs.orthogonal_complement(a)
    assert comp.dim == k - a.dim
    assert all(vs.dot(f, x, y) == 0 for x in a.basis for y in comp.basis)
    assert vs.is_subspace_of(vs.intersect(a, b), a)
