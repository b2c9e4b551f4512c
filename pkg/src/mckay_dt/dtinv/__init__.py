"""Generating functions: universal series, framed and McKay products, limits."""

from .framed import (
    SQSeries,
    c3_series,
    framed_series,
    hilbert_series_ZY,
    hilbert_series_ZY_exp,
    local_factor,
    local_factor_data,
    mckay_grading,
    mckay_series,
)
from .limits import EulerSeries, euler_limit, gv_extract, macmahon, macmahon_coefficients, pt_euler_symbolic
from .universal import (
    OmegaTable,
    affine_kac_table,
    is_positive,
    jordan_kac_table,
    mckay_box_grading,
    omega_extract,
    universal_series,
    universal_series_via_pow,
)

__all__ = [
    "SQSeries",
    "c3_series",
    "framed_series",
    "hilbert_series_ZY",
    "hilbert_series_ZY_exp",
    "local_factor",
    "local_factor_data",
    "mckay_grading",
    "mckay_series",
    "EulerSeries",
    "euler_limit",
    "gv_extract",
    "macmahon",
    "macmahon_coefficients",
    "pt_euler_symbolic",
    "OmegaTable",
    "affine_kac_table",
    "is_positive",
    "jordan_kac_table",
    "mckay_box_grading",
    "omega_extract",
    "universal_series",
    "universal_series_via_pow",
]
