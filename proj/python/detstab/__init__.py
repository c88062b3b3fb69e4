"""Spectral stability of strong detonation waves in the rescaled Majda model."""

import json as _json

from ._core import (
    CriterionReport,
    DomainError,
    EvansFunction,
    IgnitionFunction,
    ModelParams,
    ProfileTable,
    SignScan,
    TemperatureProfile,
    WindingCertificate,
    boundary_slope,
    check_arrhenius,
    check_criterion,
    critical_E,
    sign_condition,
    solve_profile,
    stability_svg,
    sturm_coefficients,
    sweep_json,
)


def sweep(grid, T=None, threads=0):
    """Criterion sweep over "bz-t1" or "bz-t2"; returns the report as a dict."""
    return _json.loads(sweep_json(grid, T, threads))


__all__ = [
    "CriterionReport",
    "DomainError",
    "EvansFunction",
    "IgnitionFunction",
    "ModelParams",
    "ProfileTable",
    "SignScan",
    "TemperatureProfile",
    "WindingCertificate",
    "boundary_slope",
    "check_arrhenius",
    "check_criterion",
    "critical_E",
    "sign_condition",
    "solve_profile",
    "stability_svg",
    "sturm_coefficients",
    "sweep",
    "sweep_json",
]
