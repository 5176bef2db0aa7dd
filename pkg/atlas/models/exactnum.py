"""
Exact scalars of the number field Q(i, sqrt2, sqrt3).

A ``FieldScalar`` stores eight rationals on the basis {1, r2, r3, r6} x {1, i}
(r2 = sqrt2, r3 = sqrt3, r6 = sqrt6). The basis is linearly independent over Q,
so the coordinate tuple is a canonical form and equality is tuple equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from atlas.core.exceptions import FieldDivisionError, ScalarParseError

RationalLike = Union[int, Fraction]
ScalarLike = Union["FieldScalar", int, Fraction]

_ZERO = Fraction(0)
_RADICALS = ("", "r2", "r3", "r6")
_RADICAL_VALUES = (1.0, math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0))

# r_p * r_q = coefficient * r_result
_RADICAL_PRODUCT: dict[tuple[int, int], tuple[int, int]] = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (2, 0), (1, 2): (1, 3), (1, 3): (2, 2),
    (2, 0): (1, 2), (2, 1): (1, 3), (2, 2): (3, 0), (2, 3): (3, 1),
    (3, 0): (1, 3), (3, 1): (2, 2), (3, 2): (3, 1), (3, 3): (6, 0),
}  # fmt: skip

# Galois automorphisms as coordinate sign patterns.
_SIGMA2 = (1, -1, 1, -1, 1, -1, 1, -1)
_SIGMA3 = (1, 1, -1, -1, 1, 1, -1, -1)
_TAU = (1, 1, 1, 1, -1, -1, -1, -1)

_TERM = re.compile(r"^([+-]?)(?:(\d+)(?:/(\d+))?)?(?:(?<=\d)\*)?(r2|r3|r6)?$")


def _fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


class FieldScalar:
    """Immutable element a + b r2 + c r3 + d r6 + i(e + f r2 + g r3 + h r6)."""

    __slots__ = ("_coords", "_support", "_hash")

    def __init__(self, coords: Iterable[RationalLike] = ()):
        values = tuple(_fraction(c) for c in coords)
        if len(values) > 8:
            raise ValueError("a field scalar has at most eight coordinates")
        values = values + (_ZERO,) * (8 - len(values))
        self._coords: tuple[Fraction, ...] = values
        self._support: tuple[int, ...] = tuple(k for k, c in enumerate(values) if c)
        self._hash: int | None = None

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def rational(cls, value: RationalLike) -> FieldScalar:
        return cls((value,))

    @classmethod
    def of(
        cls,
        a: RationalLike = 0,
        r2: RationalLike = 0,
        r3: RationalLike = 0,
        r6: RationalLike = 0,
        *,
        i: RationalLike = 0,
        i_r2: RationalLike = 0,
        i_r3: RationalLike = 0,
        i_r6: RationalLike = 0,
    ) -> FieldScalar:
        """Build a scalar from named coordinates."""
        return cls((a, r2, r3, r6, i, i_r2, i_r3, i_r6))

    @classmethod
    def coerce(cls, value: ScalarLike) -> FieldScalar:
        if isinstance(value, FieldScalar):
            return value
        return cls.rational(value)

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self._coords

    def is_zero(self) -> bool:
        return not self._support

    def __bool__(self) -> bool:
        return bool(self._support)

    def is_real(self) -> bool:
        return all(k < 4 for k in self._support)

    def is_rational(self) -> bool:
        return all(k == 0 for k in self._support)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._coords[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self._coords[0].denominator == 1

    @property
    def real(self) -> FieldScalar:
        return FieldScalar(self._coords[:4])

    @property
    def imag(self) -> FieldScalar:
        return FieldScalar(self._coords[4:])

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: ScalarLike) -> FieldScalar:
        if not isinstance(other, (FieldScalar, int, Fraction)):
            return NotImplemented
        other = FieldScalar.coerce(other)
        if not other._support:
            return self
        if not self._support:
            return other
        return FieldScalar(a + b for a, b in zip(self._coords, other._coords))

    __radd__ = __add__

    def __neg__(self) -> FieldScalar:
        return FieldScalar(-c for c in self._coords)

    def __sub__(self, other: ScalarLike) -> FieldScalar:
        if not isinstance(other, (FieldScalar, int, Fraction)):
            return NotImplemented
        other = FieldScalar.coerce(other)
        if not other._support:
            return self
        return FieldScalar(a - b for a, b in zip(self._coords, other._coords))

    def __rsub__(self, other: ScalarLike) -> FieldScalar:
        return FieldScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> FieldScalar:
        if isinstance(other, (int, Fraction)):
            return self._scale(_fraction(other))
        if not isinstance(other, FieldScalar):
            return NotImplemented
        if other._support == (0,):
            return self._scale(other._coords[0])
        if self._support == (0,):
            return other._scale(self._coords[0])
        out = [_ZERO] * 8
        for p in self._support:
            x = self._coords[p]
            for q in other._support:
                coef, radical = _RADICAL_PRODUCT[(p & 3, q & 3)]
                imag = (p >> 2) + (q >> 2)
                if imag == 2:
                    coef, imag = -coef, 0
                out[(imag << 2) | radical] += coef * x * other._coords[q]
        return FieldScalar(out)

    __rmul__ = __mul__

    def _scale(self, factor: Fraction) -> FieldScalar:
        if not factor:
            return ZERO
        if factor == 1:
            return self
        return FieldScalar(c * factor for c in self._coords)

    def _twist(self, pattern: tuple[int, ...]) -> FieldScalar:
        return FieldScalar(c if s > 0 else -c for c, s in zip(self._coords, pattern))

    def inverse(self) -> FieldScalar:
        """Multiplicative inverse through the norm down the tower Q(i,r2,r3) > Q(i,r3) > Q(i) > Q."""
        if not self._support:
            raise FieldDivisionError("division by zero in Q(i, sqrt2, sqrt3)")
        if self._support == (0,):
            return FieldScalar.rational(1 / self._coords[0])
        s2 = self._twist(_SIGMA2)
        y = self * s2
        s3 = y._twist(_SIGMA3)
        z = y * s3
        t = z._twist(_TAU)
        w = (z * t).as_fraction()
        return (s2 * s3 * t)._scale(1 / w)

    def __truediv__(self, other: ScalarLike) -> FieldScalar:
        if not isinstance(other, (FieldScalar, int, Fraction)):
            return NotImplemented
        return self * FieldScalar.coerce(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> FieldScalar:
        return FieldScalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> FieldScalar:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> FieldScalar:
        """Complex conjugation i -> -i; radicals are fixed."""
        return self._twist(_TAU)

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldScalar):
            return self._coords == other._coords
        if isinstance(other, (int, Fraction)):
            return self._support in ((), (0,)) and self._coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._coords[0])
            else:
                self._hash = hash(self._coords)
        return self._hash

    def sign(self) -> int:
        """Exact sign of a real scalar."""
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        a, b, c, d = self._coords[:4]
        # (a + b r2) + r3 (c + d r2)
        p, q = (a, b), (c, d)
        sp, sq = _sign_r2(p), _sign_r2(q)
        if sq == 0 or sp == sq:
            return sp if sp else sq
        if sp == 0:
            return sq
        # opposite signs: compare p^2 against 3 q^2 inside Q(r2)
        p2 = (p[0] * p[0] + 2 * p[1] * p[1], 2 * p[0] * p[1])
        q2 = (q[0] * q[0] + 2 * q[1] * q[1], 2 * q[0] * q[1])
        return sp * _sign_r2((p2[0] - 3 * q2[0], p2[1] - 3 * q2[1]))

    def __lt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: ScalarLike) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return (self - other).sign() >= 0

    # ------------------------------------------------------------------
    # Conversion
    # ------------------------------------------------------------------

    def to_float(self) -> tuple[float, float]:
        """Approximate (real, imaginary) pair; for rendering only."""
        c = self._coords
        re_part = sum(float(c[k]) * _RADICAL_VALUES[k] for k in range(4))
        im_part = sum(float(c[k + 4]) * _RADICAL_VALUES[k] for k in range(4))
        return re_part, im_part

    def __str__(self) -> str:
        real = _render_part(self._coords[:4])
        if self.is_real():
            return real or "0"
        imag = f"i*({_render_part(self._coords[4:])})"
        return f"{real}+{imag}" if real else imag

    def __repr__(self) -> str:
        return f"FieldScalar('{self}')"

    @classmethod
    def parse(cls, text: str) -> FieldScalar:
        """Parse ``a+b*r2+c*r3+d*r6+i*(e+f*r2+g*r3+h*r6)``; zero terms may be omitted."""
        source = text.replace(" ", "")
        if not source:
            raise ScalarParseError("empty scalar text")
        real_text, imag_text = source, ""
        marker = source.find("i*(")
        if marker >= 0:
            if not source.endswith(")"):
                raise ScalarParseError(f"unbalanced imaginary part in {text!r}")
            imag_text = source[marker + 3 : -1]
            real_text = source[:marker]
            sign = 1
            if real_text.endswith("+"):
                real_text = real_text[:-1]
            elif real_text.endswith("-"):
                real_text, sign = real_text[:-1], -1
            elif real_text:
                raise ScalarParseError(f"missing operator before imaginary part in {text!r}")
            imag = _parse_part(imag_text, text)
            if sign < 0:
                imag = [-c for c in imag]
        else:
            imag = [_ZERO] * 4
        real = _parse_part(real_text, text) if real_text else [_ZERO] * 4
        return cls(real + imag)


def _sign_r2(pair: tuple[Fraction, Fraction]) -> int:
    """Sign of x + y r2."""
    x, y = pair
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0)
    if sy == 0 or sx == sy:
        return sx if sx else sy
    if sx == 0:
        return sy
    delta = x * x - 2 * y * y
    return sx * ((delta > 0) - (delta < 0))


def _render_part(coords: tuple[Fraction, ...]) -> str:
    text = ""
    for radical, value in zip(_RADICALS, coords):
        if not value:
            continue
        sign = "-" if value < 0 else "+"
        magnitude = abs(value)
        if radical and magnitude == 1:
            body = radical
        elif radical:
            body = f"{magnitude}*{radical}"
        else:
            body = str(magnitude)
        text += f"{sign}{body}" if text or sign == "-" else body
    return text


def _parse_part(part: str, original: str) -> list[Fraction]:
    values = [_ZERO] * 4
    terms = re.findall(r"[+-]?[^+-]+", part)
    if "".join(terms) != part or not terms:
        raise ScalarParseError(f"cannot parse scalar {original!r}")
    for term in terms:
        match = _TERM.match(term)
        if not match or (match.group(2) is None and match.group(4) is None):
            raise ScalarParseError(f"bad term {term!r} in scalar {original!r}")
        sign, num, den, radical = match.groups()
        if den is not None and int(den) == 0:
            raise ScalarParseError(f"zero denominator in {original!r}")
        value = Fraction(int(num), int(den) if den else 1) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        values[_RADICALS.index(radical or "")] += value
    return values


def sqrt_of_rational(value: RationalLike) -> FieldScalar | None:
    """Exact square root of a non-negative rational when it lies in Q(r2, r3)."""
    q = _fraction(value)
    if q < 0:
        return None
    if q == 0:
        return ZERO
    product = q.numerator * q.denominator
    square, free = 1, 1
    n, p = product, 2
    while p * p <= n:
        while n % (p * p) == 0:
            square *= p
            n //= p * p
        if n % p == 0:
            free *= p
            n //= p
        p += 1
    free *= n
    if free not in (1, 2, 3, 6):
        return None
    coefficient = Fraction(square, q.denominator)
    coords = [_ZERO] * 4
    coords[(1, 2, 3, 6).index(free)] = coefficient
    return FieldScalar(coords)


ZERO = FieldScalar()
ONE = FieldScalar.rational(1)
HALF = FieldScalar.rational(Fraction(1, 2))
I = FieldScalar.of(i=1)
SQRT2 = FieldScalar.of(r2=1)
SQRT3 = FieldScalar.of(r3=1)
SQRT6 = FieldScalar.of(r6=1)
