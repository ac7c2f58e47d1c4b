"""Computer algebra for building and certifying ACM projective schemes."""

from .construct import (
    ConstructionCertificate,
    HypothesisReport,
    certify,
    construct_acm,
    construct_from_scheme,
    infinitesimal_double,
    koszul_reconstruct,
    serre_codim2,
    split_dichotomy_test,
    syzygy_module,
    twist_extension,
    verify_hypotheses,
)
from .presentations import IdealHandle, ModulePresentation, Seed
from .ring import PolyRing, Polynomial, RingError

__all__ = [
    "PolyRing",
    "Polynomial",
    "RingError",
    "IdealHandle",
    "ModulePresentation",
    "Seed",
    "ConstructionCertificate",
    "HypothesisReport",
    "certify",
    "construct_acm",
    "construct_from_scheme",
    "infinitesimal_double",
    "koszul_reconstruct",
    "serre_codim2",
    "split_dichotomy_test",
    "syzygy_module",
    "twist_extension",
    "verify_hypotheses",
]

__version__ = "0.1.0"
