"""Exact rational scalars and their complex pairs.

The rational backend is selected once at import time: ``gmpy2.mpq`` when
available (GMP arithmetic, roughly an order of magnitude faster), else the
stdlib ``fractions.Fraction``.  Set ``MOMENTSYNTH_RATIONAL_BACKEND`` to
``gmpy2`` or ``fractions`` to force one; ``benchmarks/bench_backends.py``
compares the two.

Floats are deliberately rejected by :func:`rat` -- a rational computation that
silently absorbs a binary float is no longer exact.  Use the float backend of
:class:`~momentsynth.sequences.TruncatedSequence` for floating point work.
"""

from __future__ import annotations

import os
from fractions import Fraction

_requested = os.environ.get("MOMENTSYNTH_RATIONAL_BACKEND", "auto")

if _requested in ("auto", "gmpy2"):
    try:
        from gmpy2 import mpq as RAT

        RATIONAL_IMPL = "gmpy2"
    except ImportError:
        if _requested == "gmpy2":
            raise
        RAT = Fraction
        RATIONAL_IMPL = "fractions"
elif _requested == "fractions":
    RAT = Fraction
    RATIONAL_IMPL = "fractions"
else:
    raise ValueError(
        f"MOMENTSYNTH_RATIONAL_BACKEND={_requested!r}; expected 'auto', 'gmpy2' or 'fractions'"
    )

RZERO = RAT(0)
RONE = RAT(1)


def rational_backend_name() -> str:
    """Name of the active exact-arithmetic implementation."""
    return RATIONAL_IMPL


def rat(value):
    """Coerce ``value`` (int, string ``"p/q"``, Fraction, mpq) to the backend type."""
    if isinstance(value, (RAT, int)):
        return RAT(value)
    if isinstance(value, (Fraction, str)):
        return RAT(value)
    if isinstance(value, float):
        raise TypeError(
            f"refusing to coerce float {value!r} to an exact rational; "
            "pass a string 'p/q', an int, or a Fraction"
        )
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(q) -> str:
    """Canonical lowest-terms string, ``"p"`` or ``"p/q"``."""
    return str(q)


class RationalComplex:
    """Immutable complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", rat(re))
        object.__setattr__(self, "im", rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("RationalComplex is immutable")

    @classmethod
    def from_value(cls, value) -> "RationalComplex":
        """Build from an int, rational, string, pair ``(re, im)`` or RationalComplex."""
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, tuple):
            re, im = value
            return cls(re, im)
        if isinstance(value, complex):
            raise TypeError(
                "refusing to coerce a float complex to RationalComplex; pass exact parts"
            )
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def norm2(self):
        """Squared modulus ``re^2 + im^2`` as an exact rational."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        other = RationalComplex.from_value(other)
        return RationalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalComplex.from_value(other)
        return RationalComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return RationalComplex.from_value(other) - self

    def __mul__(self, other):
        other = RationalComplex.from_value(other)
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalComplex.from_value(other)
        den = other.norm2()
        if not den:
            raise ZeroDivisionError("division by zero RationalComplex")
        return RationalComplex(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __rtruediv__(self, other):
        return RationalComplex.from_value(other) / self

    def __neg__(self):
        return RationalComplex(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, str)) or type(other) in (RAT, Fraction):
            other = RationalComplex(other)
        if not isinstance(other, RationalComplex):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    def __abs__(self) -> float:
        return abs(self.to_complex())

    def __repr__(self):
        if not self.im:
            return f"RationalComplex({str(self.re)!r})"
        return f"RationalComplex({str(self.re)!r}, {str(self.im)!r})"


QC_ZERO = RationalComplex(0)
QC_ONE = RationalComplex(1)
