"""
Combinatorics of the generalized Humbert group H = Z_2^n.

Elements are bitmasks over the standard generators a_1..a_{n+1} (bit j-1 holds a_j)
taken modulo the relation a_1 a_2 ... a_{n+1} = 1, so a subset and its complement
name the same element. Subgroups are GF(2) subspaces kept in reduced echelon form,
which makes equality of subgroups plain equality of bases.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from humbert.errors import CapacityError, HumbertDomainError

DEFAULTS: dict = {
    # Largest n for which every rank-k subspace is swept
    "max_exhaustive_n": 8,
}


@dataclass(frozen=True)
class GroupContext:
    """Type index n of the Humbert pair and the derived sizes."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 4:
            raise HumbertDomainError(f"type index must be an integer n >= 4, got {self.n!r}")

    @property
    def generator_count(self) -> int:
        return self.n + 1

    @property
    def group_order(self) -> int:
        return 2 ** self.n

    @property
    def ambient_genus(self) -> int:
        return 1 - 2 ** self.n + (self.n + 1) * 2 ** (self.n - 2)

    @property
    def full_mask(self) -> int:
        return (1 << (self.n + 1)) - 1

    @property
    def indices(self) -> range:
        return range(1, self.n + 2)

    def generator(self, j: int) -> GroupElement:
        return make_element(self, {j})

    def identity(self) -> GroupElement:
        return GroupElement(self, 0)

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        """All 2^n elements in weight-then-lexicographic order."""
        items = (_element_from_vector(self, v) for v in range(self.group_order))
        return tuple(sorted(items, key=lambda e: e.sort_key))


def _canonical_mask(ctx: GroupContext, mask: int) -> int:
    weight = mask.bit_count()
    size = ctx.n + 1
    if 2 * weight > size or (2 * weight == size and (mask >> ctx.n) & 1):
        return mask ^ ctx.full_mask
    return mask


@dataclass(frozen=True)
class GroupElement:
    """An element of H stored as its canonical mask."""

    context: GroupContext
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask > self.context.full_mask:
            raise HumbertDomainError(f"mask {self.mask:#b} exceeds {self.context.n + 1} generators")
        if _canonical_mask(self.context, self.mask) != self.mask:
            raise HumbertDomainError(f"mask {self.mask:#b} is not canonical; use make_element")

    @property
    def weight(self) -> int:
        return self.mask.bit_count()

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.context.n + 1) if (self.mask >> j) & 1)

    @property
    def is_identity(self) -> bool:
        return self.mask == 0

    @property
    def vector(self) -> int:
        """Linear coordinates: the representative that avoids a_{n+1}."""
        if (self.mask >> self.context.n) & 1:
            return self.mask ^ self.context.full_mask
        return self.mask

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.weight, self.indices)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        return "*".join(f"a{j}" for j in self.indices)


def _element_from_vector(ctx: GroupContext, vector: int) -> GroupElement:
    return GroupElement(ctx, _canonical_mask(ctx, vector))


def make_element(ctx: GroupContext, indices: Iterable[int]) -> GroupElement:
    """Canonical representative of the product of the a_j with j in indices."""
    mask = 0
    for j in indices:
        if not isinstance(j, int) or not 1 <= j <= ctx.n + 1:
            raise HumbertDomainError(f"generator index {j!r} outside 1..{ctx.n + 1}")
        mask ^= 1 << (j - 1)
    return GroupElement(ctx, _canonical_mask(ctx, mask))


def multiply(e1: GroupElement, e2: GroupElement) -> GroupElement:
    if e1.context != e2.context:
        raise HumbertDomainError("cannot multiply elements of different Humbert groups")
    return GroupElement(e1.context, _canonical_mask(e1.context, e1.mask ^ e2.mask))


def has_fixed_points(e: GroupElement) -> bool:
    """Only the standard generators a_1..a_{n+1} act with fixed points."""
    if e.is_identity:
        raise HumbertDomainError("fixed-point predicate undefined for identity")
    return e.weight == 1


def _is_standard_vector(ctx: GroupContext, vector: int) -> bool:
    # a_j for j <= n has one bit; a_{n+1} = a_1...a_n has all n bits
    return vector.bit_count() in (1, ctx.n)


def _echelon(vectors: Iterable[int]) -> list[int]:
    """Fully reduced GF(2) echelon rows, pivot = lowest set bit, sorted by pivot."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v & (r & -r):
                v ^= r
        if not v:
            continue
        pivot = v & -v
        rows = [r ^ v if r & pivot else r for r in rows]
        rows.append(v)
    return sorted(rows, key=lambda r: r & -r)


def _span_vectors(rows: Iterable[int]) -> list[int]:
    out = [0]
    for r in rows:
        out += [x ^ r for x in out]
    return out


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of H given by its reduced echelon basis."""

    context: GroupContext
    basis: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        vectors = [e.vector for e in self.basis]
        if any(e.context != self.context for e in self.basis):
            raise HumbertDomainError("basis elements belong to a different Humbert group")
        if _echelon(vectors) != vectors:
            raise HumbertDomainError("basis is not in reduced echelon form; build subgroups with span()")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2 ** self.rank

    @cached_property
    def vectors(self) -> frozenset[int]:
        return frozenset(_span_vectors(e.vector for e in self.basis))

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        items = (_element_from_vector(self.context, v) for v in self.vectors)
        return tuple(sorted(items, key=lambda e: e.sort_key))

    @property
    def sort_key(self) -> tuple:
        return (self.rank, tuple(e.sort_key for e in self.basis))

    def __contains__(self, e: GroupElement) -> bool:
        return e.context == self.context and e.vector in self.vectors

    def issubgroup(self, other: Subgroup) -> bool:
        return self.context == other.context and self.vectors <= other.vectors

    def __str__(self) -> str:
        return "<" + ", ".join(str(e) for e in self.basis) + ">"


def span(ctx: GroupContext, generators: Iterable[GroupElement]) -> Subgroup:
    generators = list(generators)
    if any(g.context != ctx for g in generators):
        raise HumbertDomainError("generators belong to a different Humbert group")
    rows = _echelon(g.vector for g in generators)
    return Subgroup(ctx, tuple(_element_from_vector(ctx, r) for r in rows))


def acts_freely(K: Subgroup) -> bool:
    ctx = K.context
    return not any(v and _is_standard_vector(ctx, v) for v in K.vectors)


def _iter_echelon_bases(n: int, rank: int) -> Iterator[tuple[int, ...]]:
    """Every reduced echelon basis of a rank-`rank` subspace of GF(2)^n."""
    for pivots in itertools.combinations(range(n), rank):
        pivot_set = set(pivots)
        options: list[list[int]] = []
        for p in pivots:
            free = [c for c in range(p + 1, n) if c not in pivot_set]
            row_options = []
            for size in range(len(free) + 1):
                for cols in itertools.combinations(free, size):
                    row_options.append((1 << p) | sum(1 << c for c in cols))
            options.append(row_options)
        yield from itertools.product(*options)


def enumerate_free_subgroups(
    ctx: GroupContext,
    rank: int,
    *,
    max_n: int | None = None,
) -> list[Subgroup]:
    """Exhaustive census of the rank-`rank` subgroups acting freely."""
    max_n = DEFAULTS["max_exhaustive_n"] if max_n is None else max_n
    if not isinstance(rank, int) or not 1 <= rank <= ctx.n:
        raise HumbertDomainError(f"rank must lie in 1..{ctx.n}, got {rank!r}")
    if ctx.n > max_n:
        raise CapacityError(
            f"exhaustive enumeration is capped at n <= {max_n} (max_exhaustive_n); got n={ctx.n}"
        )

    found: list[Subgroup] = []
    for rows in _iter_echelon_bases(ctx.n, rank):
        if any(v and _is_standard_vector(ctx, v) for v in _span_vectors(rows)):
            continue
        found.append(Subgroup(ctx, tuple(_element_from_vector(ctx, r) for r in rows)))
    return sorted(found, key=lambda sg: sg.sort_key)


def _check_indices(ctx: GroupContext, indices: Iterable[int], size: int | None = None) -> tuple[int, ...]:
    items = tuple(indices)
    for j in items:
        if not isinstance(j, int) or not 1 <= j <= ctx.n + 1:
            raise HumbertDomainError(f"generator index {j!r} outside 1..{ctx.n + 1}")
    if len(set(items)) != len(items):
        raise HumbertDomainError(f"indices must be distinct, got {items}")
    if size is not None and len(items) != size:
        raise HumbertDomainError(f"expected {size} indices, got {items}")
    return tuple(sorted(items))


def even_subgroup(ctx: GroupContext, included: Iterable[int]) -> Subgroup:
    """All products of an even number of the a_j with j in `included`."""
    included = _check_indices(ctx, included)
    if not included:
        return span(ctx, [])
    first = included[0]
    return span(ctx, [make_element(ctx, (first, j)) for j in included[1:]])


def pair_subgroup(ctx: GroupContext, omitted: Iterable[int]) -> Subgroup:
    omitted = _check_indices(ctx, omitted, size=2)
    return even_subgroup(ctx, [j for j in ctx.indices if j not in omitted])


def triple_subgroup(ctx: GroupContext, omitted: Iterable[int]) -> Subgroup:
    omitted = _check_indices(ctx, omitted, size=3)
    return even_subgroup(ctx, [j for j in ctx.indices if j not in omitted])


def full_rank_free_subgroup(ctx: GroupContext) -> Subgroup:
    if ctx.n % 2 == 0:
        raise HumbertDomainError(f"n={ctx.n} is even: every rank-{ctx.n - 1} subgroup acts non-freely")
    return even_subgroup(ctx, ctx.indices)


def constructive_free_subgroups(ctx: GroupContext, rank: int) -> list[Subgroup]:
    """Free subgroups of rank n-3, n-2 or n-1 from the explicit families, re-verified."""
    n = ctx.n
    if rank == n - 1:
        family = [full_rank_free_subgroup(ctx)] if n % 2 else []
    elif rank == n - 2:
        family = [pair_subgroup(ctx, pair) for pair in itertools.combinations(ctx.indices, 2)]
    elif rank == n - 3:
        family = [triple_subgroup(ctx, triple) for triple in itertools.combinations(ctx.indices, 3)]
    else:
        raise HumbertDomainError(f"no constructive family for rank {rank} (n={n})")

    for sg in family:
        if not acts_freely(sg):
            raise RuntimeError(f"constructed subgroup {sg} does not act freely")
    return sorted(set(family), key=lambda sg: sg.sort_key)


@dataclass(frozen=True)
class Coset:
    subgroup: Subgroup
    representative: GroupElement

    @cached_property
    def elements(self) -> tuple[GroupElement, ...]:
        items = (self.representative * k for k in self.subgroup.elements)
        return tuple(sorted(items, key=lambda e: e.sort_key))

    @property
    def generator_count(self) -> int:
        return sum(1 for e in self.elements if e.weight == 1)

    @property
    def is_identity(self) -> bool:
        return self.representative.is_identity

    def __str__(self) -> str:
        return f"{self.representative}K"


def coset_of(K: Subgroup, e: GroupElement) -> Coset:
    if e.context != K.context:
        raise HumbertDomainError("element and subgroup belong to different Humbert groups")
    rep = min((e * k for k in K.elements), key=lambda x: x.sort_key)
    return Coset(K, rep)


def cosets(K: Subgroup) -> list[Coset]:
    """The cosets of K in H, ordered by representative."""
    seen: set[int] = set()
    out: list[Coset] = []
    for e in K.context.elements:
        if e.vector in seen:
            continue
        coset = coset_of(K, e)
        seen.update(x.vector for x in coset.elements)
        out.append(coset)
    return sorted(out, key=lambda c: c.representative.sort_key)


@dataclass(frozen=True)
class ProfileRow:
    coset: Coset
    generator_count: int
    fixed_points: int


@dataclass(frozen=True)
class QuotientProfile:
    """Fixed-point data of the involutions of H/K acting on S/K."""

    subgroup: Subgroup
    quotient_genus: int
    rows: tuple[ProfileRow, ...]
    hyperelliptic_witness: Coset | None

    def rows_with(self, fixed_points: int, *, include_identity: bool = False) -> list[ProfileRow]:
        return [
            r for r in self.rows
            if r.fixed_points == fixed_points and (include_identity or not r.coset.is_identity)
        ]

    @property
    def witness_count(self) -> int:
        return len(self.rows_with(2 * self.quotient_genus + 2))


def quotient_profile(K: Subgroup) -> QuotientProfile:
    """
    Genus of S/K and, for each coset of K, the number of standard generators it
    contains and the fixed points of the induced involution on S/K.

    Each Fix(a_j) has 2^{n-1} points and K permutes them freely, so a coset
    holding c standard generators fixes c * 2^{n-1-rank} points of S/K.
    """
    if not acts_freely(K):
        raise HumbertDomainError(f"subgroup {K} does not act freely")
    ctx = K.context
    genus_shift, remainder = divmod(ctx.ambient_genus - 1, K.order)
    if remainder:
        raise HumbertDomainError(f"2^{K.rank} does not divide g_n - 1 for n={ctx.n}")
    genus = 1 + genus_shift

    scale = 2 ** (ctx.n - 1 - K.rank)
    rows = tuple(ProfileRow(c, c.generator_count, c.generator_count * scale) for c in cosets(K))
    witness = next(
        (r.coset for r in rows if not r.coset.is_identity and r.fixed_points == 2 * genus + 2),
        None,
    )
    return QuotientProfile(K, genus, rows, witness)


def has_hyperelliptic_witness(K: Subgroup) -> bool:
    """Whether H/K contains an involution of S/K with 2g + 2 fixed points."""
    return quotient_profile(K).hyperelliptic_witness is not None


def orbifold_genus(deck_order: int, cone_count: int) -> int:
    """Riemann-Hurwitz for a regular cover of the sphere branched over order-2 cone points."""
    euler = Fraction(deck_order) * (2 - Fraction(cone_count, 2))
    genus = 1 - euler / 2
    if genus.denominator != 1:
        raise HumbertDomainError(f"no surface covers {cone_count} cone points with degree {deck_order}")
    return int(genus)


def hyperelliptic_rank_bound(ctx: GroupContext) -> frozenset[int]:
    n = ctx.n
    if n % 2:
        return frozenset({n - 3, n - 2, n - 1})
    return frozenset({n - 3, n - 2})


def _require_even(ctx: GroupContext) -> None:
    if ctx.n % 2:
        raise HumbertDomainError(f"extension census is defined for even n, got n={ctx.n}")


def hyperelliptic_extensions(ctx: GroupContext) -> list[Subgroup]:
    """<K, a_j> with K a pair subgroup and a_j one of its included generators."""
    _require_even(ctx)
    found: dict[Subgroup, None] = {}
    for pair in itertools.combinations(ctx.indices, 2):
        K = pair_subgroup(ctx, pair)
        for j in ctx.indices:
            if j not in pair:
                found.setdefault(span(ctx, [*K.basis, ctx.generator(j)]), None)
    return sorted(found, key=lambda sg: sg.sort_key)


def non_hyperelliptic_extensions(ctx: GroupContext) -> list[Subgroup]:
    """<K, a_p> with K the pair subgroup omitting {p, q}."""
    _require_even(ctx)
    found: dict[Subgroup, None] = {}
    for pair in itertools.combinations(ctx.indices, 2):
        K = pair_subgroup(ctx, pair)
        for j in pair:
            found.setdefault(span(ctx, [*K.basis, ctx.generator(j)]), None)
    return sorted(found, key=lambda sg: sg.sort_key)


def omitted_pair_of(U: Subgroup) -> tuple[int, int]:
    ctx = U.context
    for pair in itertools.combinations(ctx.indices, 2):
        if pair_subgroup(ctx, pair) == U:
            return pair
    raise HumbertDomainError(f"{U} is not generated by the even products over n-1 indices")


def check_lemma2(U1: Subgroup, U2: Subgroup, r: int) -> bool:
    """Whether <U1, a_r> = <U2, a_r> for two pair subgroups that both omit a_r."""
    ctx = U1.context
    if U2.context != ctx:
        raise HumbertDomainError("subgroups belong to different Humbert groups")
    _check_indices(ctx, [r])
    for U in (U1, U2):
        if r not in omitted_pair_of(U):
            raise HumbertDomainError(f"index {r} lies in the included index set of {U}")
    a_r = ctx.generator(r)
    return span(ctx, [*U1.basis, a_r]) == span(ctx, [*U2.basis, a_r])
