"""Finite fields, subspaces of GF(q)^n, classical group orders and projective actions."""

from .actions import (
    FLAGS,
    POINTS,
    enumerate_flags,
    enumerate_subspaces,
    extend_to_pgammal,
    form_action,
    matrix_action,
    objects,
    psl_action,
    sl_generators,
    standard_alternating_form,
)
from .field import GF, factor_prime_power, field, is_prime_power
from .linalg import MatrixGL, ProjSubspace
from .orders import (
    check_order_bounds,
    classical_order,
    gaussian_binomial,
    gcd_identity,
    order_bounds,
    parabolic_index,
)

FieldSpec = GF

__all__ = [
    "FLAGS",
    "POINTS",
    "FieldSpec",
    "GF",
    "MatrixGL",
    "ProjSubspace",
    "check_order_bounds",
    "classical_order",
    "enumerate_flags",
    "enumerate_subspaces",
    "extend_to_pgammal",
    "factor_prime_power",
    "field",
    "form_action",
    "gaussian_binomial",
    "gcd_identity",
    "is_prime_power",
    "matrix_action",
    "objects",
    "order_bounds",
    "parabolic_index",
    "psl_action",
    "sl_generators",
    "standard_alternating_form",
]
