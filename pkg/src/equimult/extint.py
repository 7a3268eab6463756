"""Extended integers: ordinary ints plus distinguished infinite values.

Orders of zero polynomials are ``INFINITY``; differences of two infinite
orders are ``UNDEFINED``. These are singletons, never sentinel integers.
"""

from __future__ import annotations

import functools


@functools.total_ordering
class _Infinite:
    __slots__ = ("_sign",)

    def __init__(self, sign: int) -> None:
        self._sign = sign

    def __repr__(self) -> str:
        return "INFINITY" if self._sign > 0 else "NEG_INFINITY"

    def __str__(self) -> str:
        return "inf" if self._sign > 0 else "-inf"

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return hash(("inf", self._sign))

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (int, _Infinite)):
            return self._sign < 0
        return NotImplemented

    def __neg__(self) -> "_Infinite":
        return NEG_INFINITY if self._sign > 0 else INFINITY

    def __add__(self, other):
        if isinstance(other, int):
            return self
        if isinstance(other, _Infinite):
            return self if other is self else UNDEFINED
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        if isinstance(other, _Infinite):
            return self if other is not self else UNDEFINED
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return -self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other > 0:
                return self
            if other < 0:
                return -self
            raise ValueError("0 * infinity is undefined")
        return NotImplemented

    __rmul__ = __mul__


class _Undefined:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __str__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        raise TypeError("UNDEFINED has no truth value")


INFINITY = _Infinite(1)
NEG_INFINITY = _Infinite(-1)
UNDEFINED = _Undefined()


def is_finite(value) -> bool:
    return isinstance(value, int)


def ext_sub(a, b):
    """``a - b`` for extended integers; ``inf - inf`` is ``UNDEFINED``."""
    if a is UNDEFINED or b is UNDEFINED:
        return UNDEFINED
    if isinstance(a, int) and isinstance(b, int):
        return a - b
    if isinstance(a, int):
        return -b
    return a - b


def to_json(value):
    if isinstance(value, int):
        return value
    return str(value)
