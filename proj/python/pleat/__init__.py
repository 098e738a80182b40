"""Pleating rays, BM-slices and cusp groups of quasifuchsian punctured tori."""

import json

from ._pleat import (
    SCHEMA_VERSION,
    PleatError,
    critical_point,
    f_value,
    fuchsian_limit_set,
    intersection_number,
    markov_residual,
    normalize_slope,
    quakebend_trace,
    run_cli,
    stern_brocot,
    trace_of_slope,
    triple_from_fn,
)
from . import _pleat

__all__ = [
    "SCHEMA_VERSION",
    "PleatError",
    "bm_slice",
    "boundary_catalog",
    "critical_point",
    "cusp_point",
    "f_value",
    "fuchsian_limit_set",
    "intersection_number",
    "locate_group",
    "markov_residual",
    "normalize_slope",
    "quakebend_trace",
    "run_cli",
    "stern_brocot",
    "trace_of_slope",
    "trace_ray",
    "triple_from_fn",
]


def trace_ray(mu, nu, c, samples=64, tol=1e-10, branch="upper"):
    """Pleating ray of (mu, nu) at l_mu = c, as a dict."""
    return json.loads(_pleat._trace_ray(mu, nu, c, samples, tol, branch))


def cusp_point(mu, nu, c, tol=1e-10, branch="upper"):
    return json.loads(_pleat._cusp_point(mu, nu, c, tol, branch))


def locate_group(mu, nu, c, d):
    """Group on the ray with l_nu = d; raises PleatError (kind OutOfRegion) unless 0 < d < f(c)."""
    return json.loads(_pleat._locate_group(mu, nu, c, d))


def bm_slice(mu, c, depth, samples=32, tol=1e-10, workers=1):
    return json.loads(_pleat._bm_slice(mu, c, depth, samples, tol, workers))


def boundary_catalog(mu, c, depth, workers=1):
    return json.loads(_pleat._boundary_catalog(mu, c, depth, workers))
