"""
Exact hyperelliptic equations y^2 = f(x) for the quotients S/K.

Every builder returns a HyperellipticEquation that remembers the branched cover of
the sphere it was read off from and the branch values that cover must hit, so the
equation can be re-verified in exact rational arithmetic.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from humbert.errors import HumbertDomainError
from humbert.projective_line import (
    INF,
    ExtendedRational,
    MobiusMap,
    cross_ratio,
    format_extended,
    to_extended,
)


class Shape(str, Enum):
    ROOT_LIST = "root_list"
    EVEN_QUADRATICS = "even_quadratics"
    EVEN_QUARTICS_MU = "even_quartics_mu"
    EVEN_QUARTICS_W = "even_quartics_w"


@dataclass(frozen=True)
class BranchSet:
    """The ordered branch values (∞, 0, 1, λ_1, ..., λ_{n-2})."""

    values: tuple[ExtendedRational, ...]

    def __post_init__(self) -> None:
        values = tuple(to_extended(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 5:
            raise HumbertDomainError(f"need at least 5 branch values (n >= 4), got {len(values)}")
        if values[0] is not INF or values[1] != 0 or values[2] != 1:
            raise HumbertDomainError("branch list must start with inf, 0, 1")
        lambdas = values[3:]
        if any(v is INF or v in (0, 1) for v in lambdas):
            raise HumbertDomainError("lambda values must be finite and different from 0 and 1")
        if len(set(lambdas)) != len(lambdas):
            raise HumbertDomainError("lambda values must be pairwise distinct")

    @classmethod
    def from_lambdas(cls, lambdas: Iterable) -> BranchSet:
        return cls((INF, Fraction(0), Fraction(1), *lambdas))

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def lambdas(self) -> tuple[Fraction, ...]:
        return self.values[3:]

    @property
    def indices(self) -> range:
        return range(1, len(self.values) + 1)

    def value(self, index: int) -> ExtendedRational:
        if not isinstance(index, int) or not 1 <= index <= len(self.values):
            raise HumbertDomainError(f"branch index {index!r} outside 1..{len(self.values)}")
        return self.values[index - 1]

    def select(self, indices: Iterable[int], size: int) -> tuple[int, ...]:
        """Validate a selection of distinct branch indices."""
        items = tuple(indices)
        for j in items:
            self.value(j)
        if len(items) != size or len(set(items)) != size:
            raise HumbertDomainError(f"expected {size} distinct branch indices, got {items}")
        return items

    def remaining(self, excluded: Iterable[int]) -> tuple[ExtendedRational, ...]:
        excluded = set(excluded)
        return tuple(self.value(j) for j in self.indices if j not in excluded)


@dataclass(frozen=True)
class EvenCover:
    """The map z -> post(z^degree); degree 2 for pair covers, 4 for towers."""

    post: MobiusMap
    degree: int = 2

    def __call__(self, z: ExtendedRational) -> ExtendedRational:
        if z is INF:
            return self.post(INF)
        return self.post(z ** self.degree)

    @property
    def critical_values(self) -> tuple[ExtendedRational, ExtendedRational]:
        return (self.post(INF), self.post(Fraction(0)))

    def to_json(self) -> dict:
        return {
            "kind": "even",
            "degree": self.degree,
            "post": self.post.to_json(),
            "critical_values": [format_extended(v) for v in self.critical_values],
        }


# U(z) = ((1 + z^2) / 2z)^2 as numerator and denominator, highest degree first
U_NUMERATOR: tuple[int, ...] = (1, 0, 2, 0, 1)
U_DENOMINATOR: tuple[int, ...] = (0, 0, 4, 0, 0)


def quartic_factor(mu: Fraction) -> tuple[Fraction, ...]:
    """Coefficients of x^4 + 2(1 - 2 mu) x^2 + 1, highest degree first."""
    mu = Fraction(mu)
    return (Fraction(1), Fraction(0), 2 * (1 - 2 * mu), Fraction(0), Fraction(1))


def _evaluate(coefficients: Sequence[int], z: Fraction) -> Fraction:
    value = Fraction(0)
    for c in coefficients:
        value = value * z + c
    return value


@dataclass(frozen=True)
class QuarticNormalizer:
    """
    The degree-4 cover T^{-1} ∘ U with U(z) = ((1 + z^2) / 2z)^2: a factor with
    parameter mu lies over T^{-1}(mu).
    """

    normalizer: MobiusMap

    def __call__(self, z: ExtendedRational) -> ExtendedRational:
        if z is INF or z == 0:
            return self.normalizer.inverse()(INF)
        u = _evaluate(U_NUMERATOR, z) / _evaluate(U_DENOMINATOR, z)
        return self.normalizer.inverse()(u)

    @property
    def normalized_triple(self) -> tuple[ExtendedRational, ExtendedRational, ExtendedRational]:
        """The branch values sent to ∞, 0 and 1."""
        inverse = self.normalizer.inverse()
        return (inverse(INF), inverse(Fraction(0)), inverse(Fraction(1)))

    def fiber_polynomial(self, value: ExtendedRational) -> tuple[Fraction, ...]:
        """Numerator of U(z) - mu with mu the cross ratio of `value`; its roots lie over `value`."""
        mu = cross_ratio(value, *self.normalized_triple)
        if mu is INF:
            raise HumbertDomainError(f"{format_extended(value)} is sent to ∞ by the normalizer")
        return tuple(Fraction(a) - mu * b for a, b in zip(U_NUMERATOR, U_DENOMINATOR))

    def to_json(self) -> dict:
        return {"kind": "quartic_normalizer", "normalizer": self.normalizer.to_json()}


Cover = Union[EvenCover, QuarticNormalizer, MobiusMap]


def cover_to_json(cover: Cover | None) -> dict | None:
    if cover is None:
        return None
    if isinstance(cover, MobiusMap):
        return {"kind": "mobius", "normalizer": cover.to_json()}
    return cover.to_json()


@dataclass(frozen=True)
class HyperellipticEquation:
    """
    y^2 = f(x) in one of four factor shapes:

      ROOT_LIST         f = prod (x - r)
      EVEN_QUADRATICS   f = prod (x^2 - s)
      EVEN_QUARTICS_MU  f = prod (x^4 + 2(1 - 2 mu) x^2 + 1)
      EVEN_QUARTICS_W   f = prod (x^4 - w)
    """

    shape: Shape
    constants: tuple[Fraction, ...]
    cover: Cover | None = field(default=None, compare=False)
    expected: tuple[ExtendedRational, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        constants = tuple(Fraction(c) for c in self.constants)
        object.__setattr__(self, "shape", Shape(self.shape))
        object.__setattr__(self, "constants", constants)
        object.__setattr__(self, "expected", tuple(to_extended(v) for v in self.expected))
        if not constants:
            raise HumbertDomainError("equation needs at least one factor")
        if len(set(constants)) != len(constants):
            raise HumbertDomainError(f"repeated factor constants make f non-squarefree: {constants}")
        if self.shape in (Shape.EVEN_QUADRATICS, Shape.EVEN_QUARTICS_W) and 0 in constants:
            raise HumbertDomainError("factor constant 0 gives a repeated root at x = 0")
        if self.shape is Shape.EVEN_QUARTICS_MU and any(c in (0, 1) for c in constants):
            raise HumbertDomainError("mu = 0 or 1 gives a repeated quartic root")

    @property
    def branch_count(self) -> int:
        k = len(self.constants)
        if self.shape is Shape.ROOT_LIST:
            return k + 1 if k % 2 else k
        if self.shape is Shape.EVEN_QUADRATICS:
            return 2 * k
        return 4 * k

    @property
    def genus(self) -> int:
        return self.branch_count // 2 - 1

    def factors_text(self) -> list[str]:
        return [_factor_text(self.shape, c) for c in self.constants]

    def __str__(self) -> str:
        return "y^2 = " + "".join(self.factors_text())

    def to_json(self) -> dict:
        return {
            "shape": self.shape.value,
            "genus": self.genus,
            "factors": [str(c) for c in self.constants],
            "equation": str(self),
            "cover": cover_to_json(self.cover),
            "branch_values": [format_extended(v) for v in self.expected],
        }


def _signed(coef: Fraction, monomial: str = "") -> str:
    if coef == 0:
        return ""
    sign = "+" if coef > 0 else "-"
    size = abs(coef)
    if monomial and size == 1:
        return f"{sign}{monomial}"
    return f"{sign}{size}{monomial}"


def _factor_text(shape: Shape, c: Fraction) -> str:
    if shape is Shape.ROOT_LIST:
        return "x" if c == 0 else f"(x{_signed(-c)})"
    if shape is Shape.EVEN_QUADRATICS:
        return f"(x^2{_signed(-c)})"
    if shape is Shape.EVEN_QUARTICS_W:
        return f"(x^4{_signed(-c)})"
    return f"(x^4{_signed(quartic_factor(c)[2], 'x^2')}+1)"


def pair_cover(b1: ExtendedRational, b2: ExtendedRational) -> EvenCover:
    """Degree-2 even cover Q with Q(∞) = b1 and Q(0) = b2."""
    b1, b2 = to_extended(b1), to_extended(b2)
    if b1 == b2:
        raise HumbertDomainError(f"pair cover needs two distinct values, got {format_extended(b1)} twice")
    if b2 is INF:
        b1, b2 = b2, b1
    if b1 is INF:
        return EvenCover(MobiusMap(1, b2, 0, 1))
    return EvenCover(MobiusMap(b1, b2, 1, 1))


def preimage_square(cover: EvenCover, c: ExtendedRational) -> Fraction:
    """The value w with cover(z) = c exactly when z^degree = w."""
    c = to_extended(c)
    if c in cover.critical_values:
        raise HumbertDomainError(f"{format_extended(c)} is a critical value of the cover")
    return cover.post.inverse()(c)


def triple_normalizer(b1: ExtendedRational, b2: ExtendedRational, b3: ExtendedRational) -> MobiusMap:
    """The Mobius map T with T(b1) = ∞, T(b2) = 0, T(b3) = 1."""
    b1, b2, b3 = (to_extended(b) for b in (b1, b2, b3))
    if b1 == b2 or b1 == b3 or b2 == b3:
        raise HumbertDomainError("normalizer needs three distinct points")
    if b1 is INF:
        return MobiusMap(1, -b2, 0, b3 - b2)
    if b2 is INF:
        return MobiusMap(0, b3 - b1, 1, -b1)
    if b3 is INF:
        return MobiusMap(1, -b2, 1, -b1)
    return MobiusMap(b3 - b1, -b2 * (b3 - b1), b3 - b2, -b1 * (b3 - b2))


def pair_quotient_curve(branch: BranchSet, omitted: Iterable[int]) -> HyperellipticEquation:
    """Genus n-2 curve of S/K for the pair subgroup K omitting {p, q}."""
    p, q = sorted(branch.select(omitted, 2))
    cover = pair_cover(branch.value(p), branch.value(q))
    remaining = branch.remaining((p, q))
    constants = tuple(preimage_square(cover, c) for c in remaining)
    return HyperellipticEquation(Shape.EVEN_QUADRATICS, constants, cover, remaining)


def triple_quotient_curve(
    branch: BranchSet,
    triple: Sequence[int],
    *,
    keep_order: bool = False,
) -> HyperellipticEquation:
    """
    Genus 2n-5 curve for the triple subgroup omitting three indices. The triple is
    normalized to (∞, 0, 1) in ascending index order unless keep_order is set.
    """
    chosen = branch.select(triple, 3)
    if not keep_order:
        chosen = tuple(sorted(chosen))
    T = triple_normalizer(*(branch.value(j) for j in chosen))
    remaining = branch.remaining(chosen)
    mus = tuple(T(v) for v in remaining)
    return HyperellipticEquation(Shape.EVEN_QUARTICS_MU, mus, QuarticNormalizer(T), remaining)


def tower_quartic_curve(branch: BranchSet, omitted_pair: Iterable[int], b3_index: int) -> HyperellipticEquation:
    p, q = sorted(branch.select(omitted_pair, 2))
    (r,) = branch.select([b3_index], 1)
    if r in (p, q):
        raise HumbertDomainError(f"b3 index {r} collides with the omitted pair {(p, q)}")
    cover = pair_cover(branch.value(p), branch.value(q))
    remaining = branch.remaining((p, q, r))
    constants = tuple(preimage_square(cover, c) for c in remaining)
    return HyperellipticEquation(Shape.EVEN_QUARTICS_W, constants, EvenCover(cover.post, 4), remaining)


def full_rank_quotient_curve(branch: BranchSet) -> HyperellipticEquation:
    """y^2 = x(x-1)(x-λ_1)...(x-λ_{n-2}) for n odd."""
    if branch.n % 2 == 0:
        raise HumbertDomainError(
            f"n={branch.n} is even: the rank-{branch.n - 1} subgroups act non-freely"
        )
    return HyperellipticEquation(Shape.ROOT_LIST, branch.values[1:], MobiusMap.identity(), branch.values)


def single_omission_curve(branch: BranchSet, omitted: int) -> HyperellipticEquation:
    """Genus (n-2)/2 curve through the n branch values other than B_omitted, n even."""
    if branch.n % 2:
        raise HumbertDomainError(f"single omission needs n even, got n={branch.n}")
    (p,) = branch.select([omitted], 1)
    kept = [j for j in branch.indices if j != p]
    T = triple_normalizer(*(branch.value(j) for j in kept[:3]))
    roots = (Fraction(0), Fraction(1), *(T(branch.value(j)) for j in kept[3:]))
    return HyperellipticEquation(Shape.ROOT_LIST, roots, T, branch.remaining([p]))


def square_over(b1: ExtendedRational, b2: ExtendedRational, c: ExtendedRational) -> Fraction:
    """
    The w with Q(z) = c exactly when z^2 = w, read off Q(z) = (b1 z^2 + b2) / (z^2 + 1),
    or Q(z) = z^2 + b2 when b1 = ∞.
    """
    b1, b2, c = (to_extended(v) for v in (b1, b2, c))
    if c == b1 or c == b2:
        raise HumbertDomainError(f"{format_extended(c)} is a critical value of the cover")
    if b1 is INF:
        return c - b2
    if c is INF:
        return Fraction(-1)
    return (c - b2) / (b1 - c)


def verify_cover_consistency(
    eq: HyperellipticEquation,
    cover: Cover | None = None,
    expected: Iterable[ExtendedRational] | None = None,
) -> bool:
    """
    Recompute every factor from the expected branch values through the closed form of
    the cover and compare with the equation. Quadratic and w-quartic factors come from
    the pair cover formula at the cover's two critical values; mu-quartics must equal
    the numerator of U(z) - mu with mu a cross ratio; roots are cross ratios.
    """
    cover = eq.cover if cover is None else cover
    expected = eq.expected if expected is None else tuple(to_extended(v) for v in expected)

    if eq.shape in (Shape.EVEN_QUADRATICS, Shape.EVEN_QUARTICS_W):
        degree = 2 if eq.shape is Shape.EVEN_QUADRATICS else 4
        if not isinstance(cover, EvenCover) or cover.degree != degree:
            raise HumbertDomainError(f"{eq.shape.value} needs an even cover of degree {degree}")
        b1, b2 = cover.critical_values
        if any(c in (b1, b2) for c in expected):
            return False
        return Counter(eq.constants) == Counter(square_over(b1, b2, c) for c in expected)

    if eq.shape is Shape.EVEN_QUARTICS_MU:
        if not isinstance(cover, QuarticNormalizer):
            raise HumbertDomainError("even_quartics_mu needs the triple normalizer")
        if any(c in cover.normalized_triple for c in expected):
            return False
        ours = Counter(quartic_factor(mu) for mu in eq.constants)
        return ours == Counter(cover.fiber_polynomial(c) for c in expected)

    if not isinstance(cover, MobiusMap):
        raise HumbertDomainError("root_list needs the Mobius normalizer")
    inverse = cover.inverse()
    triple = (inverse(INF), inverse(Fraction(0)), inverse(Fraction(1)))
    roots = list(eq.constants)
    if len(roots) % 2:
        roots.append(INF)
    return Counter(roots) == Counter(cross_ratio(c, *triple) for c in expected)


def scaling_between(first: Sequence[Fraction], second: Sequence[Fraction]) -> Fraction | None:
    """σ with {second} = {σ * first} as multisets, trying σ = 1 first."""
    first, second = [Fraction(c) for c in first], [Fraction(c) for c in second]
    if len(first) != len(second):
        return None
    target = Counter(second)
    if not first:
        return Fraction(1)
    candidates = [Fraction(1)] + [second[0] / c for c in first if c != 0]
    for sigma in candidates:
        if sigma != 0 and Counter(sigma * c for c in first) == target:
            return sigma
    return None


def equal_up_to_scaling(eq1: HyperellipticEquation, eq2: HyperellipticEquation) -> Fraction | None:
    """
    σ with {constants of eq2} = {σ * constants of eq1}, i.e. eq2 is eq1 after
    x -> x / sqrt(σ) (quadratics) or x -> x / σ^(1/4) (w-quartics).
    """
    if eq1.shape != eq2.shape:
        raise HumbertDomainError(f"cannot compare {eq1.shape.value} with {eq2.shape.value}")
    if eq1.shape is Shape.ROOT_LIST:
        raise HumbertDomainError("scaling comparison applies to even factor shapes only")
    if eq1.shape is Shape.EVEN_QUARTICS_MU:
        return Fraction(1) if Counter(eq1.constants) == Counter(eq2.constants) else None
    return scaling_between(eq1.constants, eq2.constants)
