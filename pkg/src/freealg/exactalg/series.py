"""Degree-capped noncommutative formal power series over a finite window."""

from __future__ import annotations

from typing import Dict, Iterable, Optional

from .field import QQ, Field, FieldMismatchError, GFElement
from .poly import NcPoly


class WindowSeries:
    """A formal series known exactly in every degree up to ``cap`` (inclusive).

    Products and sums take the smaller of the two caps, so a value never
    claims more precision than its inputs carry.
    """

    __slots__ = ("poly", "cap", "_window")

    def __init__(self, poly: NcPoly, cap: int, window: Optional[Iterable[int]] = None):
        if cap < 0:
            raise ValueError("series cap must be non-negative")
        self.poly = poly.truncate(cap)
        self.cap = cap
        self._window = frozenset(window) if window is not None else None

    @classmethod
    def from_components(cls, components: Dict[int, NcPoly], cap: int, field: Field = QQ) -> WindowSeries:
        total = NcPoly.zero(field)
        for d, c in components.items():
            if not c.is_zero and (not c.is_homogeneous() or c.nu_top() != d):
                raise ValueError(f"component at degree {d} is not homogeneous of that degree")
            total = total + c
        return cls(total, cap)

    @classmethod
    def constant(cls, c, cap: int, field: Field = QQ) -> WindowSeries:
        return cls(NcPoly.constant(c, field), cap)

    @property
    def field(self) -> Field:
        return self.poly.field

    @property
    def window(self) -> frozenset:
        if self._window is not None:
            return self._window
        return self.poly.window

    @property
    def components(self) -> Dict[int, NcPoly]:
        comps = self.poly.components()
        return {d: comps.get(d, NcPoly.zero(self.field)) for d in range(self.cap + 1)}

    def component(self, d: int) -> NcPoly:
        if d > self.cap:
            raise ValueError(f"degree {d} is beyond the series cap {self.cap}")
        return self.poly.component(d)

    def nu_low(self):
        """Order of the series; ``+inf`` when it vanishes up to the cap."""
        return self.poly.nu_low()

    def low_component(self) -> NcPoly:
        return self.poly.low_component()

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def with_cap(self, cap: int) -> WindowSeries:
        if cap > self.cap:
            raise ValueError("cannot raise the cap of a truncated series")
        return WindowSeries(self.poly, cap, self._window)

    def _other(self, other) -> Optional[WindowSeries]:
        if isinstance(other, WindowSeries):
            if other.field != self.field:
                raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, NcPoly):
            return WindowSeries(other, self.cap)
        if isinstance(other, int) or isinstance(other, GFElement) or hasattr(other, "denominator"):
            return WindowSeries(NcPoly.constant(other, self.field), self.cap)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return WindowSeries(self.poly + other.poly, min(self.cap, other.cap))

    __radd__ = __add__

    def __neg__(self):
        return WindowSeries(-self.poly, self.cap, self._window)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return WindowSeries(self.poly - other.poly, min(self.cap, other.cap))

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (WindowSeries, NcPoly)):
            other = self._other(other)
            cap = min(self.cap, other.cap)
            return WindowSeries(self.poly.mul(other.poly, max_degree=cap), cap)
        if isinstance(other, (int, GFElement)) or hasattr(other, "denominator"):
            return WindowSeries(self.poly.scale(other), self.cap, self._window)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, NcPoly):
            return WindowSeries(other, self.cap) * self
        return self.__mul__(other)

    def equals_up_to_cap(self, other: WindowSeries) -> bool:
        cap = min(self.cap, other.cap)
        return self.poly.truncate(cap) == other.poly.truncate(cap)

    def __eq__(self, other):
        if isinstance(other, WindowSeries):
            return self.cap == other.cap and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.cap))

    def format(self, names=None) -> str:
        return f"{self.poly.format(names)} + O(deg > {self.cap})"

    def __repr__(self):
        return f"WindowSeries({self.poly.format()!r}, cap={self.cap})"

