"""Generic Euclidean distance degrees of determinantal neurovarieties via
Schubert calculus and torus localization."""

from .ged import GedResult, MathInconsistency, SupportSpec, ged_det, ged_neuro
from .localization import WeightSpec, integrate_localized, localized_cm_degrees

__all__ = ["GedResult", "MathInconsistency", "SupportSpec", "WeightSpec", "ged_det",
           "ged_neuro", "integrate_localized", "localized_cm_degrees"]
