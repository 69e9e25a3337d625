"""Positive-definite cones, the Sigma_r and dual norms, and Fourier-space checks."""

from .blocks import BlockDecomposition, block_functional, functional_from_blocks, wedderburn_blocks
from .cones import gram_matrix, is_extendible, is_positive_definite_star, is_restricted_pd
from .fourier import (
    PlateauResult,
    SpanReport,
    fourier_spans,
    plateau,
    positive_pool,
    separation_suite,
    unit_witness,
    verify_convolution_bound,
    verify_lemma_2_7,
)
from .norms import NormReport, b_norm, sigma_r_norm
from .._linalg import PsdCertificate

__all__ = [
    "BlockDecomposition",
    "NormReport",
    "PlateauResult",
    "PsdCertificate",
    "SpanReport",
    "b_norm",
    "block_functional",
    "fourier_spans",
    "functional_from_blocks",
    "gram_matrix",
    "is_extendible",
    "is_positive_definite_star",
    "is_restricted_pd",
    "plateau",
    "positive_pool",
    "separation_suite",
    "sigma_r_norm",
    "unit_witness",
    "verify_convolution_bound",
    "verify_lemma_2_7",
    "wedderburn_blocks",
]
