"""Analysis reports: brute-force results, closed-form agreement flags and serializers.

JSON layout: one top-level key per analysis, distributions as sorted
[value, multiplicity] pairs, and integers beyond 2^53 as decimal strings so
that any JSON reader keeps them exact.
"""

from __future__ import annotations

import csv
import io
import json
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from .codes import LinearCode, ghw, sswd, weight_distribution
from .constructions import Family1Params, Family2Params, certify_code
from .errors import CapExceeded, HypothesisNotMet, LayoutNotSupported
from .lrc import audit_constructive_pairs, cm_report, locality
from .predictions import predicted_ghw, predicted_sswd, predicted_weight_distribution

ANALYSES = ("wd", "ghw", "sswd", "optimality", "lrc", "cm")
_SAFE = 2**53
_DIGITS = re.compile(r"-?\d+")


class Status(str, Enum):
    MATCH = "Match"
    MISMATCH = "Mismatch"
    NOT_APPLICABLE = "NotApplicable"


@dataclass
class Agreement:
    status: Status
    detail: str = ""

    def as_dict(self) -> dict:
        return {"status": self.status.value, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> "Agreement":
        return cls(Status(d["status"]), d.get("detail", ""))


def _compare(closed: Any, brute: Any, what: str) -> Agreement:
    if closed == brute:
        return Agreement(Status.MATCH)
    return Agreement(Status.MISMATCH, f"{what}: closed form {closed} vs brute force {brute}")


@dataclass
class AnalysisReport:
    q: int
    n: int
    k: int
    d: int
    construction: dict = field(default_factory=dict)
    weight_distribution: list[list[int]] | None = None
    ghw: list[list[int]] | None = None
    sswd: list[dict] | None = None
    optimality: dict | None = None
    lrc: dict | None = None
    cm: dict | None = None
    agreement: dict[str, Agreement] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def mismatches(self) -> list[str]:
        return [k for k, a in self.agreement.items() if a.status is Status.MISMATCH]

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "parameters": {"q": self.q, "n": self.n, "k": self.k, "d": self.d},
            "construction": self.construction,
            "weight_distribution": self.weight_distribution,
            "ghw": self.ghw,
            "sswd": self.sswd,
            "optimality": self.optimality,
            "lrc": self.lrc,
            "cm": self.cm,
            "agreement": {k: a.as_dict() for k, a in self.agreement.items()},
        }
        if timing:
            out["timing"] = dict(self.timing)
        return _encode(out)

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        data = _decode(data)
        p = data["parameters"]
        return cls(
            q=p["q"],
            n=p["n"],
            k=p["k"],
            d=p["d"],
            construction=data.get("construction") or {},
            weight_distribution=data.get("weight_distribution"),
            ghw=data.get("ghw"),
            sswd=data.get("sswd"),
            optimality=data.get("optimality"),
            lrc=data.get("lrc"),
            cm=data.get("cm"),
            agreement={k: Agreement.from_dict(v) for k, v in (data.get("agreement") or {}).items()},
            timing=data.get("timing") or {},
        )

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def _encode(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= _SAFE else x
    if isinstance(x, dict):
        return {str(k): _encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_encode(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _decode(x: Any) -> Any:
    # only integers beyond 2^53 were written as strings
    if isinstance(x, str) and _DIGITS.fullmatch(x) and abs(int(x)) >= _SAFE:
        return int(x)
    if isinstance(x, dict):
        return {k: _decode(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_decode(v) for v in x]
    return x


# -- building a report -------------------------------------------------------------------

def _construction_echo(code: LinearCode) -> dict:
    origin = code.origin or {}
    p = origin.get("params")
    out: dict = {}
    if isinstance(p, Family1Params):
        out = {"family": "1-pencil" if p.layout.value == "pencil" else "1", "q": p.q, "k": p.k, "u": p.u, "h": p.h}
    elif isinstance(p, Family2Params):
        out = {"family": "2", "q": p.q, "k": p.k, "u0": p.u0, "u": list(p.us)}
    if origin:
        out["layout"] = origin.get("layout")
        out["d_formula"] = origin.get("d_formula")
        out["d_asserted"] = origin.get("d_asserted")
        if "common" in origin:
            out["common_subspace"] = [list(r) for r in origin["common"]]
        out["subspaces"] = [[list(r) for r in b] for b in origin.get("subspaces", [])]
    return out


def _predict(fn, *args):
    try:
        return fn(*args), ""
    except HypothesisNotMet as exc:
        return None, str(exc)


def analyze(
    code: LinearCode,
    analyses: Iterable[str] = ("wd", "optimality"),
    ghw_range: Iterable[int] | None = None,
    sswd_range: Iterable[int] | None = None,
    workers: int = 1,
    cm_r: int = 2,
) -> AnalysisReport:
    """Run the requested analyses; closed-form disagreements are recorded, never raised."""
    wanted = set(analyses)
    unknown = wanted - set(ANALYSES)
    if unknown:
        raise ValueError(f"unknown analyses: {', '.join(sorted(unknown))}")
    p = (code.origin or {}).get("params")
    timing: dict[str, float] = {}
    t0 = time.perf_counter()
    wd = weight_distribution(code)
    timing["wd"] = time.perf_counter() - t0
    rep = AnalysisReport(code.q, code.n, code.k, wd.min_distance, construction=_construction_echo(code), timing=timing)
    if p is not None and (code.origin or {}).get("d_asserted"):
        rep.agreement["d"] = _compare(p.d_formula, wd.min_distance, "minimum distance")

    if "wd" in wanted:
        rep.weight_distribution = wd.pairs()
        pred, why = _predict(predicted_weight_distribution, p) if p is not None else (None, "no construction")
        rep.agreement["wd"] = (
            _compare(pred.pairs(), wd.pairs(), "weight distribution") if pred else Agreement(Status.NOT_APPLICABLE, why)
        )

    if "ghw" in wanted:
        rs = sorted(set(ghw_range or range(1, code.k + 1)))
        t0 = time.perf_counter()
        rep.ghw = [[r, wd.min_distance if r == 1 else ghw(code, r, workers=workers)] for r in rs]
        timing["ghw"] = time.perf_counter() - t0
        for r, brute in rep.ghw:
            pred, why = _predict(predicted_ghw, p, r) if p is not None else (None, "no construction")
            rep.agreement[f"ghw[{r}]"] = (
                _compare(pred, brute, f"d_{r}") if pred is not None else Agreement(Status.NOT_APPLICABLE, why)
            )

    if "sswd" in wanted:
        rs = sorted(set(sswd_range or range(1, code.k)))
        t0 = time.perf_counter()
        rep.sswd = []
        for r in rs:
            table = sswd(code, r, workers=workers)
            rep.sswd.append({"r": r, "pairs": table.pairs()})
            pred, why = _predict(predicted_sswd, p, r) if isinstance(p, Family2Params) else (None, "no closed form")
            rep.agreement[f"sswd[{r}]"] = (
                _compare(pred.pairs(), table.pairs(), f"SSWD r={r}") if pred else Agreement(Status.NOT_APPLICABLE, why)
            )
        timing["sswd"] = time.perf_counter() - t0

    if "optimality" in wanted:
        cert = certify_code(code)
        rep.optimality = cert.as_dict()
        if cert.predicted_defect is None:
            rep.agreement["defect"] = Agreement(Status.NOT_APPLICABLE, "no defect prediction for these parameters")
        elif isinstance(p, Family2Params):
            ok = cert.griesmer_defect <= cert.predicted_defect
            rep.agreement["defect"] = Agreement(
                Status.MATCH if ok else Status.MISMATCH,
                f"defect {cert.griesmer_defect}, bound {cert.predicted_defect}",
            )
        else:
            rep.agreement["defect"] = _compare(cert.predicted_defect, cert.griesmer_defect, "Griesmer defect")

    if "lrc" in wanted:
        t0 = time.perf_counter()
        try:
            r, plan = locality(code)
            rep.lrc = {"locality": r, "max_repair_set": plan.max_size, "verified": True}
        except CapExceeded as exc:
            rep.lrc = {"locality": None, "error": str(exc)}
        try:
            audit = audit_constructive_pairs(code)
            rep.lrc["constructive_failures"] = [i for i, _ in audit.failures]
            rep.agreement["locality"] = Agreement(
                Status.MATCH if audit.ok and rep.lrc.get("locality") == 2 else Status.MISMATCH,
                "" if audit.ok else f"{len(audit.failures)} coordinates lack the prescribed repair pair",
            )
        except LayoutNotSupported as exc:
            rep.agreement["locality"] = Agreement(Status.NOT_APPLICABLE, str(exc))
        timing["lrc"] = time.perf_counter() - t0

    if "cm" in wanted:
        rep.cm = cm_report(code, cm_r).as_dict()
    return rep


# -- CSV and text ----------------------------------------------------------------------------

def _sections(rep: AnalysisReport) -> list[tuple[str, list[str], list[list[Any]]]]:
    out = [("parameters", ["q", "n", "k", "d"], [[rep.q, rep.n, rep.k, rep.d]])]
    if rep.weight_distribution is not None:
        out.append(("weight_distribution", ["weight", "multiplicity"], rep.weight_distribution))
    if rep.ghw is not None:
        out.append(("ghw", ["r", "d_r"], rep.ghw))
    for t in rep.sswd or []:
        out.append((f"sswd r={t['r']}", ["support", "count"], t["pairs"]))
    if rep.optimality is not None:
        o = rep.optimality
        cols = ["griesmer_sum", "griesmer_defect", "delta", "verdict", "predicted_defect", "family_condition"]
        out.append(("optimality", cols, [[o.get(c) for c in cols]]))
    if rep.lrc is not None:
        out.append(("lrc", ["locality", "constructive_failures"], [[rep.lrc.get("locality"), len(rep.lrc.get("constructive_failures", []))]]))
    if rep.cm is not None:
        out.append(("cm_terms", ["t", "t*r + kopt_upper"], rep.cm["values"]))
        out.append(("cm", ["r", "bound_upper", "cm_defect_upper", "verdict"], [[rep.cm[c] for c in ("r", "bound_upper", "cm_defect_upper", "verdict")]]))
    if rep.agreement:
        out.append(("agreement", ["item", "status", "detail"], [[k, a.status.value, a.detail] for k, a in rep.agreement.items()]))
    return out


def to_csv(rep: AnalysisReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for name, header, rows in _sections(rep):
        w.writerow([f"# {name}"])
        w.writerow(header)
        w.writerows(rows)
        w.writerow([])
    return buf.getvalue()


def text_table(header: list[str], rows: list[list[Any]]) -> str:
    cells = [list(map(str, header))] + [["" if c is None else str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    line = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    fmt = lambda r: "| " + " | ".join(c.rjust(w) for c, w in zip(r, widths)) + " |"  # noqa: E731
    return "\n".join([line, fmt(cells[0]), line] + [fmt(r) for r in cells[1:]] + [line])


def to_text(rep: AnalysisReport) -> str:
    parts = [f"[{rep.n},{rep.k},{rep.d}]_{rep.q}"]
    for name, header, rows in _sections(rep):
        parts.append(f"\n{name}\n{text_table(header, rows)}")
    return "\n".join(parts) + "\n"


def render(rep: AnalysisReport, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json() + "\n"
    if fmt == "csv":
        return to_csv(rep)
    if fmt == "text":
        return to_text(rep)
    raise ValueError(f"unknown format {fmt!r}")


__all__ = ["AnalysisReport", "Agreement", "Status", "analyze", "render", "to_csv", "to_text", "text_table", "ANALYSES"]
