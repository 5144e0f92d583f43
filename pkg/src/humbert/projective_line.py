"""Exact arithmetic on the rational projective line Q ∪ {∞}."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from humbert.errors import HumbertDomainError


class Infinity:
    """The point at infinity; a singleton."""

    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtendedRational = Union[Fraction, Infinity]


def to_extended(value) -> ExtendedRational:
    """Coerce ints, Fractions, strings and INF to an ExtendedRational."""
    if value is INF:
        return INF
    if isinstance(value, str):
        return parse_extended(value)
    if isinstance(value, bool):
        raise HumbertDomainError(f"not a rational value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise HumbertDomainError(f"not an exact rational value: {value!r}")


def parse_extended(text: str) -> ExtendedRational:
    """Parse "p/q", an integer, or "inf"."""
    s = text.strip().lower()
    if s in ("inf", "infinity", "∞"):
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise HumbertDomainError(f"cannot parse rational {text!r}: {e}") from e


def format_extended(value: ExtendedRational) -> str:
    return "inf" if value is INF else str(value)


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with exact rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise HumbertDomainError("Mobius map has zero determinant")

    @classmethod
    def identity(cls) -> MobiusMap:
        return cls(1, 0, 0, 1)

    def __call__(self, z: ExtendedRational) -> ExtendedRational:
        if z is INF:
            return INF if self.c == 0 else self.a / self.c
        den = self.c * z + self.d
        if den == 0:
            return INF
        return (self.a * z + self.b) / den

    def inverse(self) -> MobiusMap:
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: MobiusMap) -> MobiusMap:
        """self ∘ other."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def same_map(self, other: MobiusMap) -> bool:
        """Equality as maps, i.e. of matrices up to a nonzero scalar."""
        pairs = list(zip((self.a, self.b, self.c, self.d), (other.a, other.b, other.c, other.d)))
        return all(m1 * t2 == t1 * m2 for m1, t1 in pairs for m2, t2 in pairs)

    def to_json(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


def cross_ratio(
    z: ExtendedRational,
    b1: ExtendedRational,
    b2: ExtendedRational,
    b3: ExtendedRational,
) -> ExtendedRational:
    """
    (z - b2)(b3 - b1) / ((z - b1)(b3 - b2)), the image of z under the Mobius map
    sending b1, b2, b3 to ∞, 0, 1. Factors holding ∞ cancel in pairs.
    """
    z, b1, b2, b3 = (to_extended(v) for v in (z, b1, b2, b3))
    if len({format_extended(b) for b in (b1, b2, b3)}) != 3:
        raise HumbertDomainError("cross ratio needs three distinct points")
    if z == b1:
        return INF
    if z == b2:
        return Fraction(0)
    if z == b3:
        return Fraction(1)
    if z is INF:
        num, den = [b3 - b1], [b3 - b2]
    elif b1 is INF:
        num, den = [z - b2], [b3 - b2]
    elif b2 is INF:
        num, den = [b3 - b1], [z - b1]
    elif b3 is INF:
        num, den = [z - b2], [z - b1]
    else:
        num, den = [z - b2, b3 - b1], [z - b1, b3 - b2]
    return Fraction(math.prod(num)) / math.prod(den)


def cross_ratio_orbit(mu: ExtendedRational) -> frozenset[Fraction]:
    """Images of mu under the six Mobius maps permuting {∞, 0, 1}."""
    if mu is INF or mu in (0, 1):
        raise HumbertDomainError(f"cross-ratio orbit undefined for {format_extended(mu)}")
    return frozenset({
        mu,
        1 - mu,
        1 / mu,
        1 / (1 - mu),
        (mu - 1) / mu,
        mu / (mu - 1),
    })


def orbit_key(mu: ExtendedRational) -> tuple[Fraction, ...]:
    """Hashable, sortable name of the cross-ratio orbit of mu."""
    return tuple(sorted(cross_ratio_orbit(mu)))
