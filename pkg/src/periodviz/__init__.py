"""Gaussian periods as cyclic supercharacter values: evaluation, checks, images."""
from .arith import OrbitSpec, crt_split, factorize, mult_order, orbit, totient
from .asymptotic import (
    discrepancy_estimate,
    eval_g,
    eval_h,
    hypocycloid,
    in_hypocycloid,
    lambda_set,
    verify_containment,
    verify_hypocycloid,
    weyl_sum,
)
from .cyclotomic import cyclotomic_poly, reduction_matrix
from .render import RenderConfig, rasterize, scatter_torus, write_image
from .report import VerifyReport
from .supercharacter import (
    PeriodImage,
    eval_supercharacter,
    image,
    verify_multiplicativity,
    verify_symmetry,
)

__all__ = [
    "OrbitSpec",
    "PeriodImage",
    "RenderConfig",
    "VerifyReport",
    "crt_split",
    "cyclotomic_poly",
    "discrepancy_estimate",
    "eval_g",
    "eval_h",
    "eval_supercharacter",
    "factorize",
    "hypocycloid",
    "image",
    "in_hypocycloid",
    "lambda_set",
    "mult_order",
    "orbit",
    "rasterize",
    "reduction_matrix",
    "scatter_torus",
    "totient",
    "verify_containment",
    "verify_hypocycloid",
    "verify_multiplicativity",
    "verify_symmetry",
    "weyl_sum",
    "write_image",
]
