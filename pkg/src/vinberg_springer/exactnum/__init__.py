"""Exact fields, truncated Laurent series and matrices over them."""

from .fields import GF, QQ, ExtensionField, Field, PrimeField, RationalField, get_field
from .matrix import SeriesMatrix, exterior_power, valuation_pivots
from .series import DEFAULT_HORIZON, EXACT, HORIZON_LADDER, LaurentSeries, certified, series

__all__ = [
    "GF", "QQ", "ExtensionField", "Field", "PrimeField", "RationalField", "get_field",
    "SeriesMatrix", "exterior_power", "valuation_pivots",
    "DEFAULT_HORIZON", "EXACT", "HORIZON_LADDER", "LaurentSeries", "certified", "series",
]
