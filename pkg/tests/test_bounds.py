from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from griesmer_lab.bounds import Verdict, certify, delta, floor_sum, griesmer_defect, griesmer_sum, kopt_upper
from griesmer_lab.errors import RangeError


def _ceil_sum(q, k, d):
    total = 0
    for i in range(k):
        total += (d + q**i - 1) // q**i
    return total


def test_griesmer_sum_values():
    assert griesmer_sum(2, 5, 10) == 10 + 5 + 3 + 2 + 1
    assert griesmer_sum(2, 5, 11) == 23
    assert griesmer_sum(3, 4, 15) == 15 + 5 + 2 + 1
    assert griesmer_defect(2, 22, 5, 10) == 1
    assert delta(2, 5, 10) == 2
    with pytest.raises(RangeError):
        griesmer_sum(2, 0, 3)


def test_kopt_upper():
    assert kopt_upper(2, 240, 120) == 8  # g_2(8,120) = 240, g_2(9,120) = 241
    assert griesmer_sum(2, 8, 120) == 240 and griesmer_sum(2, 9, 120) == 241
    assert kopt_upper(2, 5, 10) == 0
    assert kopt_upper(3, 13, 9) == 3


@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 12), st.integers(1, 400))
def test_griesmer_sum_matches_ceilings(q, k, d):
    assert griesmer_sum(q, k, d) == _ceil_sum(q, k, d)
    assert griesmer_sum(q, k, d + 1) > griesmer_sum(q, k, d)


@given(st.sampled_from([2, 3]), st.integers(1, 200), st.integers(1, 60))
def test_kopt_upper_is_maximal(q, n, d):
    k = kopt_upper(q, n, d)
    assert griesmer_sum(q, k + 1, d) > n
    if k:
        assert griesmer_sum(q, k, d) <= n


def test_certificates():
    c = certify(2, 22, 5, 10)
    assert c.verdict is Verdict.DISTANCE_OPTIMAL and c.griesmer_defect == 1 and c.direct_check
    assert certify(2, 7, 3, 4).verdict is Verdict.GRIESMER_OPTIMAL  # simplex code
    assert certify(2, 30, 5, 10).verdict is Verdict.NOT_CERTIFIED
    # a family condition is only an annotation: it cannot make a verdict
    lie = certify(2, 30, 5, 10, family_condition=True, condition_text="claimed")
    assert lie.verdict is Verdict.NOT_CERTIFIED and "claimed holds" in lie.reason


def test_floor_sum():
    assert floor_sum(3, 2, 3) == 1
    assert floor_sum(4, 2, 6) == 3
    assert floor_sum(1, 2, 10) == 0
