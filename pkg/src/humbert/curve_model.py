"""
Numeric model of the generalized Humbert curve

    x1^2 + x2^2 + x3^2 = 0,   λ_j x1^2 + x2^2 + x_{j+3}^2 = 0   (j = 1..n-2)

in P^n, with the deck group H acting by sign changes and π = -(x2/x1)^2.
Points are built by sign enumeration over square roots, so every fiber is an
H-orbit by construction and residuals sit at rounding level.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number
from typing import Union

import mpmath
from mpmath.ctx_mp import MPContext

from humbert.errors import HumbertDomainError, PrecisionError
from humbert.moduli_action import ParameterTuple
from humbert.projective_line import INF, ExtendedRational, Infinity, format_extended

DEFAULTS: dict = {
    "precision_bits": 128,
    "min_precision_bits": 64,
    "digits": 12,
    "key_digits": 15,
}

PRECISION_ENV = "HUMBERT_PRECISION_BITS"


@dataclass(frozen=True)
class PrecisionContext:
    bits: int
    tolerance: object = None
    ctx: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or self.bits < DEFAULTS["min_precision_bits"]:
            raise HumbertDomainError(
                f"precision must be an integer >= {DEFAULTS['min_precision_bits']} bits, got {self.bits!r}"
            )
        ctx = MPContext()
        ctx.prec = self.bits
        object.__setattr__(self, "ctx", ctx)
        tolerance = ctx.mpf(2) ** (-(self.bits // 2)) if self.tolerance is None else ctx.mpf(self.tolerance)
        if tolerance <= 0:
            raise HumbertDomainError("tolerance must be positive")
        object.__setattr__(self, "tolerance", tolerance)

    @classmethod
    def from_env(cls) -> PrecisionContext:
        """Precision from HUMBERT_PRECISION_BITS, read at call time."""
        raw = os.getenv(PRECISION_ENV)
        if raw is None or not raw.strip():
            return cls(DEFAULTS["precision_bits"])
        try:
            bits = int(raw)
        except ValueError:
            raise HumbertDomainError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
        return cls(bits)

    def number(self, value) -> mpmath.mpc:
        if isinstance(value, Fraction):
            return self.ctx.mpc(self.ctx.mpf(value.numerator) / value.denominator)
        return self.ctx.mpc(value)


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        if not coords or all(x == 0 for x in coords):
            raise HumbertDomainError("projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def normalized(cls, coords) -> ProjectivePoint:
        """Scale so the first coordinate of largest modulus becomes 1."""
        coords = tuple(coords)
        moduli = [abs(x) for x in coords]
        top = max(moduli)
        if top == 0:
            raise HumbertDomainError("projective point needs a nonzero coordinate")
        pivot = coords[moduli.index(top)]
        return cls(tuple(x / pivot for x in coords))

    def key(self, digits: int | None = None) -> tuple[str, ...]:
        """Hashable rounding of the coordinates for deduplication."""
        digits = DEFAULTS["key_digits"] if digits is None else digits
        return tuple(mpmath.nstr(x, digits) for x in self.coords)

    def distance(self, other: ProjectivePoint) -> mpmath.mpf:
        if len(self.coords) != len(other.coords):
            raise HumbertDomainError("points live in different projective spaces")
        return max(abs(x - y) for x, y in zip(self.coords, other.coords))

    def render(self, digits: int | None = None) -> str:
        digits = DEFAULTS["digits"] if digits is None else digits
        return "[" + " : ".join(mpmath.nstr(x, digits) for x in self.coords) + "]"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class CurveSystem:
    params: ParameterTuple

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def branch_values(self) -> tuple[ExtendedRational, ...]:
        return (INF, Fraction(0), Fraction(1), *self.params.lambdas)

    def quadrics(self, pt: ProjectivePoint, prec: PrecisionContext) -> list:
        x = pt.coords
        if len(x) != self.n + 1:
            raise HumbertDomainError(f"point has {len(x)} coordinates, the curve lives in P^{self.n}")
        x1sq, x2sq = x[0] ** 2, x[1] ** 2
        values = [x1sq + x2sq + x[2] ** 2]
        for j, lam in enumerate(self.params.lambdas, start=3):
            values.append(prec.number(lam) * x1sq + x2sq + x[j] ** 2)
        return values


def residual(system: CurveSystem, pt: ProjectivePoint, prec: PrecisionContext | None = None) -> mpmath.mpf:
    prec = PrecisionContext.from_env() if prec is None else prec
    return max(abs(v) for v in system.quadrics(pt, prec))


def apply_automorphism(pt: ProjectivePoint, j: int) -> ProjectivePoint:
    """a_j negates x_j; a_{n+1} is applied as the composite a_1 ... a_n."""
    size = len(pt.coords)
    if not isinstance(j, int) or not 1 <= j <= size:
        raise HumbertDomainError(f"automorphism index {j!r} outside 1..{size}")
    if j == size:
        flipped = [-x for x in pt.coords[:-1]] + [pt.coords[-1]]
    else:
        flipped = list(pt.coords)
        flipped[j - 1] = -flipped[j - 1]
    return ProjectivePoint.normalized(flipped)


def project(pt: ProjectivePoint) -> Union[mpmath.mpc, Infinity]:
    x1, x2 = pt.coords[0], pt.coords[1]
    if x1 == 0:
        return INF
    return -((x2 / x1) ** 2)


def _fiber_squares(system: CurveSystem, z, prec: PrecisionContext) -> tuple[list, list]:
    """Fixed leading coordinates and the squares of the remaining ones."""
    one = prec.ctx.mpc(1)
    if z is INF:
        return [prec.ctx.mpc(0), one], [-one] * (system.n - 1)
    w = prec.number(z)
    squares = [-w, w - 1] + [w - prec.number(lam) for lam in system.params.lambdas]
    return [one], squares


def sample_fiber(system: CurveSystem, z, prec: PrecisionContext | None = None) -> list[ProjectivePoint]:
    """All points of π^{-1}(z), one per sign choice of the nonzero square roots."""
    prec = PrecisionContext.from_env() if prec is None else prec
    if not (z is INF or isinstance(z, (Fraction, Number, mpmath.mpf, mpmath.mpc))):
        raise HumbertDomainError(f"fiber parameter must be a number or INF, got {z!r}")

    lead, squares = _fiber_squares(system, z, prec)
    roots = [prec.ctx.sqrt(s) for s in squares]
    free = [k for k, r in enumerate(roots) if r != 0]

    points = []
    for signs in itertools.product((1, -1), repeat=len(free)):
        coords = list(roots)
        for k, sign in zip(free, signs):
            coords[k] = sign * coords[k]
        pt = ProjectivePoint.normalized(lead + coords)
        r = residual(system, pt, prec)
        if r > prec.tolerance:
            raise PrecisionError(
                f"residual {mpmath.nstr(r, 5)} over z={_label(z)} exceeds tolerance "
                f"{mpmath.nstr(prec.tolerance, 5)} at {prec.bits} bits; raise {PRECISION_ENV}"
            )
        points.append(pt)
    return points


def _label(z) -> str:
    if z is INF or isinstance(z, Fraction):
        return format_extended(z)
    return mpmath.nstr(z, 8)


def fixed_locus(system: CurveSystem, j: int, prec: PrecisionContext | None = None) -> list[ProjectivePoint]:
    """Fix(a_j): the fiber over the j-th branch value, where x_j vanishes."""
    if not isinstance(j, int) or not 1 <= j <= system.n + 1:
        raise HumbertDomainError(f"automorphism index {j!r} outside 1..{system.n + 1}")
    return sample_fiber(system, system.branch_values[j - 1], prec)


def _regular_value(system: CurveSystem) -> Fraction:
    taken = set(system.branch_values)
    return next(Fraction(-1, q) for q in itertools.count(2) if Fraction(-1, q) not in taken)


def sampled_genus(system: CurveSystem, prec: PrecisionContext | None = None) -> int:
    """Riemann-Hurwitz from the sampled fiber sizes over a regular value and every branch value."""
    prec = PrecisionContext.from_env() if prec is None else prec
    degree = len(sample_fiber(system, _regular_value(system), prec))
    ramification = sum(degree - len(sample_fiber(system, b, prec)) for b in system.branch_values)
    twice_genus = ramification - 2 * degree + 2
    if twice_genus % 2:
        raise PrecisionError("sampled fiber sizes are inconsistent with a closed surface")
    return twice_genus // 2
