"""Finite-field workbench for optimal linear codes with positive Griesmer defect.

Builds codes by deleting subspaces from the simplex code, computes weight
distributions, generalized Hamming weights and subcode support weight
distributions both by closed form and by brute force, and certifies
distance-optimality, locality and Cadambe-Mazumdar defect bounds.
"""

from .bounds import Verdict, certify, griesmer_defect, griesmer_sum, kopt_upper
from .codes import LinearCode, SSWDTable, WeightDistribution, ghw, sswd, weight_distribution
from .constructions import Family1Params, Family2Params, Layout, build, certify_code
from .field import FieldCtx, field_new, gf
from .lrc import cm_report, constructive_repair_pair, locality
from .predictions import predicted_ghw, predicted_sswd, predicted_weight_distribution
from .qcombinatorics import gaussian_binomial
from .report import AnalysisReport, analyze

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "Family1Params",
    "Family2Params",
    "FieldCtx",
    "Layout",
    "LinearCode",
    "SSWDTable",
    "Verdict",
    "WeightDistribution",
    "analyze",
    "build",
    "certify",
    "certify_code",
    "cm_report",
    "constructive_repair_pair",
    "field_new",
    "gaussian_binomial",
    "ghw",
    "gf",
    "griesmer_defect",
    "griesmer_sum",
    "kopt_upper",
    "locality",
    "predicted_ghw",
    "predicted_sswd",
    "predicted_weight_distribution",
    "sswd",
    "weight_distribution",
]
