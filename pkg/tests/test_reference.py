from __future__ import annotations

from griesmer_lab.reference import EXAMPLES, TABLE_ROWS, check_example, reproduce
from griesmer_lab.sweeps import all_parameter_sets, check_closed_forms


def test_table_rows_reproduce():
    rows = reproduce()
    assert len(rows) == len(TABLE_ROWS) + len(EXAMPLES) == 17
    assert all(r.passed for r in rows), [r.as_dict() for r in rows if not r.passed]


def test_only_filter():
    rows = reproduce("243")
    assert {r.name for r in rows} == {TABLE_ROWS[7].label, "243-block", "243-pencil"}
    assert check_example(EXAMPLES[1]).checks["weight_distribution"]


def test_small_sweep_agrees():
    sets = all_parameter_sets(max_qk=2**9)
    assert len(sets) > 20
    results = [check_closed_forms(p) for p in sets]
    assert all(r.ok for r in results), [r.mismatches() for r in results if not r.ok]
    assert any(r.ghw_checked for r in results)
