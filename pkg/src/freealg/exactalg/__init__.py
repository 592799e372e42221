"""Exact scalars, words, noncommutative polynomials and capped series."""

from .field import GF, QQ, Field, FieldMismatchError, GFElement, Scalar, characteristic_of
from .linalg import Echelon, complement, kernel, rank_of
from .poly import (
    NEG_INF,
    POS_INF,
    NcPoly,
    Word,
    check_common_field,
    component,
    default_name,
    deglex_key,
    format_word,
    nu_low,
    nu_top,
    poly_add,
    poly_mul,
    words,
)
from .series import WindowSeries

__all__ = [
    "GF", "QQ", "Field", "FieldMismatchError", "GFElement", "Scalar", "characteristic_of",
    "Echelon", "complement", "kernel", "rank_of",
    "NEG_INF", "POS_INF", "NcPoly", "Word", "check_common_field", "component",
    "default_name", "deglex_key", "format_word", "nu_low", "nu_top", "poly_add",
    "poly_mul", "words", "WindowSeries",
]
