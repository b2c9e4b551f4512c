"""Motivic Donaldson-Thomas invariants of loop-doubled affine ADE quivers."""

from .coeff_ring import MotiveScalar, gl_motive, pochhammer
from .series import Grading, MSeries, exp_lambda, log_lambda, pow_structure

__all__ = [
    "MotiveScalar",
    "gl_motive",
    "pochhammer",
    "Grading",
    "MSeries",
    "exp_lambda",
    "log_lambda",
    "pow_structure",
]
