from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import naive
from griesmer_lab.errors import RangeError
from griesmer_lab.qcombinatorics import (
    count_inside_common_sum,
    count_inside_direct_sum,
    count_meeting_common_pair,
    count_meeting_disjoint_pair,
    count_meeting_subspace,
    evaluate_form,
    gaussian_binomial,
    q_adic,
    summarize,
    typo_verdict,
)


def _dim_meet(q, a, b):
    return naive.dim(q, a & b)


def test_gaussian_binomial_values():
    assert gaussian_binomial(7, 0, 3) == 1
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(2, 1, 3) == 4
    assert gaussian_binomial(5, 2, 2) == 155
    assert len(naive.all_subspaces(2, 4, 2)) == 35
    with pytest.raises(RangeError):
        gaussian_binomial(2, 3, 2)


@given(st.integers(0, 9), st.sampled_from([2, 3, 4, 5]), st.data())
def test_gaussian_binomial_identities(k, q, data):
    r = data.draw(st.integers(0, k))
    assert gaussian_binomial(k, r, q) == gaussian_binomial(k, k - r, q)
    if 0 < r < k:  # q-Pascal rule
        assert gaussian_binomial(k, r, q) == gaussian_binomial(k - 1, r - 1, q) + q**r * gaussian_binomial(k - 1, r, q)


def test_q_adic_examples():
    assert (q_adic(3, 2).digits, q_adic(3, 2).i_h) == ((1, 1), 0)
    assert (q_adic(4, 2).digits, q_adic(4, 2).i_h) == ((0, 0, 1), 2)
    assert (q_adic(6, 3).digits, q_adic(6, 3).i_h) == ((0, 2), 1)
    with pytest.raises(RangeError):
        q_adic(0, 2)


@given(st.integers(1, 10**6), st.integers(2, 9))
def test_q_adic_reconstructs(h, q):
    prof = q_adic(h, q)
    assert sum(d * q**i for i, d in enumerate(prof.digits)) == h
    assert prof.digits[prof.i_h] and not any(prof.digits[: prof.i_h])


# -- values frozen from the itertools oracle in tests/naive.py ----------------

def test_meeting_subspace_values():
    assert count_meeting_subspace(4, 2, 2, 1, 2) == 18
    assert count_meeting_subspace(3, 1, 1, 0, 2) == 6
    assert count_meeting_subspace(3, 3, 2, 2, 2) == gaussian_binomial(3, 2, 2)


def test_meeting_subspace_against_naive():
    u1 = naive.coord_space(2, 4, [0, 1])
    hist = {}
    for v in naive.all_subspaces(2, 4, 2):
        t = _dim_meet(2, v, u1)
        hist[t] = hist.get(t, 0) + 1
    assert hist == {t: count_meeting_subspace(4, 2, 2, t, 2) for t in range(3)}


def test_inside_direct_sum_values():
    assert count_inside_direct_sum(2, 2, 0, 0, 1, 2) == 9
    assert count_inside_direct_sum(1, 1, 1, 1, 0, 2) == 1
    assert count_inside_direct_sum(2, 3, 1, 2, 0, 3) == gaussian_binomial(2, 1, 3) * gaussian_binomial(3, 2, 3)


def test_meeting_disjoint_pair_values():
    assert count_meeting_disjoint_pair(4, 1, 1, 2, 1, 1, 2) == 1
    assert count_meeting_disjoint_pair(4, 2, 2, 2, 2, 0, 2) == 1
    assert count_meeting_disjoint_pair(3, 1, 2, 3, 1, 2, 2) == 1
    assert count_meeting_disjoint_pair(3, 1, 2, 3, 0, 2, 2) == 0


def test_common_forms_values():
    assert count_inside_common_sum(1, 2, 2, 0, 1, 1, 0, 2) == 4
    assert count_inside_common_sum(1, 2, 2, 1, 2, 2, 0, 2) == 1
    assert count_meeting_common_pair(5, 1, 2, 2, 2, 0, 1, 0, 2) == 24
    # with no common part the first form reduces to the direct-sum count
    assert count_inside_common_sum(0, 2, 2, 0, 1, 1, 1, 2) == count_inside_direct_sum(2, 2, 1, 1, 1, 2)


def test_common_forms_against_naive():
    q, k = 2, 4
    u1 = naive.coord_space(q, k, [0, 1])
    u2 = naive.coord_space(q, k, [0, 2, 3])
    u0 = u1 & u2
    for l in range(k + 1):
        hist = {}
        for v in naive.all_subspaces(q, k, l):
            key = (_dim_meet(q, v, u0), _dim_meet(q, v, u1), _dim_meet(q, v, u2))
            hist[key] = hist.get(key, 0) + 1
        for (v0, v1, v2), count in hist.items():
            assert count_meeting_common_pair(k, 1, 2, 3, l, v0, v1, v2, q) == count


def test_alternative_forms_have_counterexamples():
    row = evaluate_form("inside-common-sum", 2, u0=1, u1=2, u2=2, v0=0, v1=1, v2=0, t=0)
    assert row.match and row.oracle == 2 and row.alternative == Fraction(1, 2)
    row = evaluate_form("meeting-common-pair", 2, k=3, u0=1, u1=2, u2=2, l=0, v0=0, v1=0, v2=0)
    assert row.match and row.oracle == 1 and row.alternative == 0


def test_evaluate_form_needs_every_argument():
    with pytest.raises(RangeError):
        evaluate_form("meeting-subspace", 2, k=3, u1=1)
    with pytest.raises(ValueError):
        evaluate_form("no-such-form", 2)


def test_small_sweep_and_verdict():
    summaries = [summarize(form, 2, kmax=4) for form in ("inside-common-sum", "meeting-common-pair")]
    assert all(s.cases and s.mismatches == 0 for s in summaries)
    assert all(s.alternative_mismatches > 0 for s in summaries)
    text = typo_verdict(summaries)
    assert text.count("confirmed") == 2 and text.count("refuted") == 2


def test_range_errors():
    with pytest.raises(RangeError):
        count_meeting_subspace(3, 4, 1, 0, 2)
    with pytest.raises(RangeError):
        count_meeting_disjoint_pair(3, 2, 2, 1, 0, 0, 2)
    with pytest.raises(RangeError):
        count_inside_common_sum(3, 2, 2, 0, 0, 0, 0, 2)
