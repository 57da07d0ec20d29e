"""
flatfront
=========
Null curves in PSL(2, C) and C^3, Legendrian curves, and the flat fronts in
hyperbolic 3-space they project to, with a gallery of complete examples.
"""

from flatfront.config import FrontConfig
from flatfront.exceptions import (
    DegenerateCurveError,
    FlatFrontError,
    GalleryParameterError,
    SpecError,
    VerificationError,
)

__version__ = "0.1.0"
__all__ = [
    "FrontConfig",
    "DegenerateCurveError",
    "FlatFrontError",
    "GalleryParameterError",
    "SpecError",
    "VerificationError",
]
