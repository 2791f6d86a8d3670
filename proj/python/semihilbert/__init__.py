"""A-Davis-Wielandt radius and related quantities under a positive semidefinite metric."""

import json

import numpy as np

from ._core import (
    Metric,
    RadiusEstimate,
    SemiHilbertError,
    abs_sq,
    crawford,
    dw_exact_0x,
    dw_exact_ix,
    dw_radius,
    im_a,
    in_ba,
    is_a_bounded,
    is_a_selfadjoint,
    is_a_unitary,
    min_modulus,
    numerical_radius,
    op_seminorm,
    oracle_extremum,
    phi,
    re_a,
    semi_inner,
    semi_norm,
    sharp,
)
from . import _core


def as_matrix(a):
    """Coerces array-likes to a complex 2-D array."""
    return np.asarray(a, dtype=np.complex128)


def build_metric(a, rank_tol=1e-10):
    return Metric(as_matrix(a), rank_tol)


def cardano_theta0(b):
    return json.loads(_core.cardano_theta0_json(b))


def verify_all(metric, t, seed=42, samples=200000):
    return json.loads(_core.verify_all_json(metric, as_matrix(t), seed, samples))


def verify_pair(metric, x, y, seed=42, samples=200000):
    return json.loads(_core.verify_pair_json(metric, as_matrix(x), as_matrix(y), seed, samples))


__all__ = [
    "Metric",
    "RadiusEstimate",
    "SemiHilbertError",
    "abs_sq",
    "as_matrix",
    "build_metric",
    "cardano_theta0",
    "crawford",
    "dw_exact_0x",
    "dw_exact_ix",
    "dw_radius",
    "im_a",
    "in_ba",
    "is_a_bounded",
    "is_a_selfadjoint",
    "is_a_unitary",
    "min_modulus",
    "numerical_radius",
    "op_seminorm",
    "oracle_extremum",
    "phi",
    "re_a",
    "semi_inner",
    "semi_norm",
    "sharp",
    "verify_all",
    "verify_pair",
]
