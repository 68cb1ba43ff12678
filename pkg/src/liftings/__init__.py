"""Exact computation of liftings of projective schemes via Gröbner strata and marked bases."""

__version__ = "0.1.0"
