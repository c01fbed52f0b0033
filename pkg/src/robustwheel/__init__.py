"""Robust parameter design for arc-blended stair-climbing wheels.

Orthogonal-array experiments, smaller-the-better S/N ratios, grey
relational analysis, ANOVA with additive grade prediction, and the wheel
geometry that bounds the design space.
"""

from .anova import (
    AnovaTable,
    Prediction,
    TaguchiAnova,
    anova_from_grades,
    confirm,
    predict_grade,
    significant_factors,
)
from .gra import (
    AttributeSpec,
    GreyRelationalAnalysis,
    InfluenceTable,
    grades,
    grey_coefficients,
    influence,
    normalize,
)
from .taguchi import (
    ExperimentPlan,
    Factor,
    ResponseMatrix,
    SmallerTheBetterSN,
    build_l9,
    snr_column,
    snr_smaller_better,
)

__version__ = "0.1.0"

__all__ = [
    "AnovaTable",
    "AttributeSpec",
    "ExperimentPlan",
    "Factor",
    "GreyRelationalAnalysis",
    "InfluenceTable",
    "Prediction",
    "ResponseMatrix",
    "SmallerTheBetterSN",
    "TaguchiAnova",
    "anova_from_grades",
    "build_l9",
    "confirm",
    "grades",
    "grey_coefficients",
    "influence",
    "normalize",
    "predict_grade",
    "significant_factors",
    "snr_column",
    "snr_smaller_better",
]
