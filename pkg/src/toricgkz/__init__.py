"""Exact toric ideals, standard pairs and A-hypergeometric rank-jump certificates."""

from .binomial import Configuration, toric_ideal
from .kernels import BACKEND

__all__ = ["BACKEND", "Configuration", "toric_ideal"]
__version__ = "0.1.0"
