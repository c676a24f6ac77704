from __future__ import annotations

import csv
import io
import json

from griesmer_lab.constructions import Family1Params, Family2Params, Layout, build
from griesmer_lab.report import AnalysisReport, Status, analyze, render, to_csv

P22 = Family1Params(2, 5, 2, 3, Layout.PARTIAL_SPREAD)
P36 = Family2Params(2, 6, 2, (4, 4))


def test_report_fields_and_agreement():
    rep = analyze(build(P36), ("wd", "ghw", "sswd", "optimality", "lrc", "cm"))
    assert (rep.n, rep.k, rep.d) == (36, 6, 16)
    assert rep.weight_distribution == [[0, 1], [16, 9], [18, 48], [24, 6]]
    assert rep.ghw[0] == [1, 16] and rep.ghw[-1] == [6, 36]
    assert rep.lrc["locality"] == 2
    assert not rep.mismatches
    assert rep.agreement["wd"].status is Status.MATCH
    assert rep.construction["family"] == "2" and rep.construction["u"] == [4, 4]


def test_partial_spread_closed_forms_not_applicable():
    rep = analyze(build(P22), ("wd", "optimality"))
    assert rep.d == 10 and rep.optimality["verdict"] == "DistanceOptimal"
    assert rep.agreement["wd"].status is Status.NOT_APPLICABLE
    assert rep.agreement["defect"].status is Status.MATCH


def test_json_round_trip_and_determinism():
    code = build(P36)
    rep = analyze(code, ("wd", "ghw", "sswd", "optimality", "cm"))
    assert AnalysisReport.from_json(rep.to_json()) == rep
    again = analyze(build(P36), ("wd", "ghw", "sswd", "optimality", "cm"))
    assert rep.to_json(timing=False) == again.to_json(timing=False)


def test_big_integers_are_strings():
    rep = AnalysisReport(2, 3, 2, 2, weight_distribution=[[0, 1], [2, 2**60]])
    data = json.loads(rep.to_json())
    assert data["weight_distribution"][1][1] == str(2**60)
    assert AnalysisReport.from_json(rep.to_json()).weight_distribution[1][1] == 2**60


def test_csv_and_text():
    rep = analyze(build(P36), ("wd", "optimality"))
    rows = list(csv.reader(io.StringIO(to_csv(rep))))
    assert rows[0] == ["# parameters"] and rows[1] == ["q", "n", "k", "d"] and rows[2] == ["2", "36", "6", "16"]
    assert ["# weight_distribution"] in rows
    text = render(rep, "text")
    assert text.startswith("[36,6,16]_2") and "| weight | multiplicity |" in text
