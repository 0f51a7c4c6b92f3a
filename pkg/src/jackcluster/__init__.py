"""Exact-arithmetic Jack/Hermite/Laguerre/Macdonald polynomial engine with a
verification harness for staircase clustering and factorization identities."""

__version__ = "0.1.0"

from .exactnum import BigRational, FieldElement, ParamPoly, PoleError
from .partlib import (AlphaMode, Composition, FrequencyNotation, Partition,
                      QtMode, alpha_mode, build_kappa, qt_mode_parse)
from .mpoly import MPoly, OperatorTag
from .report import IdentityCase, IdentityReport

__all__ = [
    "BigRational", "FieldElement", "ParamPoly", "PoleError",
    "AlphaMode", "Composition", "FrequencyNotation", "Partition", "QtMode",
    "alpha_mode", "build_kappa", "qt_mode_parse",
    "MPoly", "OperatorTag", "IdentityCase", "IdentityReport",
]
