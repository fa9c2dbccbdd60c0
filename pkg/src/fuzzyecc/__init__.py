"""Elliptic-curve scalar multiplication with recoded scalars and a fuzzy window-size controller."""

from .curve import INFINITY, CurveParams, CurvePoint, make_curve, point_add, point_double
from .field import FieldElement, PrimeField, fuzzy_modmul, make_field
from .scalarmul import (
    CostReport,
    mul_double_add,
    mul_runs,
    mul_signed_window,
    mul_window,
    multiply,
    precompute_table,
)

__all__ = [
    "INFINITY",
    "CostReport",
    "CurveParams",
    "CurvePoint",
    "FieldElement",
    "PrimeField",
    "fuzzy_modmul",
    "make_curve",
    "make_field",
    "mul_double_add",
    "mul_runs",
    "mul_signed_window",
    "mul_window",
    "multiply",
    "point_add",
    "point_double",
    "precompute_table",
]
