"""
The symmetric group action on the parameter space V_n.

A tuple (λ_1, ..., λ_{n-2}) stands for the branch list (∞, 0, 1, λ_1, ..., λ_{n-2}).
Each generator is a Mobius map z -> k / (k - z) that sends one branch value to ∞,
followed by relabelling, so every generator permutes the positions of the branch list:

  t   (n+1)-cycle on all positions
  b   swaps the positions of ∞ and 0 (z -> 1/z)
  s   (n-1)-cycle fixing the last two positions
  c   swaps the last two positions
  u   n-cycle fixing the last position
"""
from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import networkx as nx

from humbert.errors import CapacityError, HumbertDomainError
from humbert.projective_line import to_extended

DEFAULTS: dict = {
    "max_orbit_size": 40320,
    # numerators and denominators of random tuples are drawn from 1..max_height
    "max_height": 12,
}


@dataclass(frozen=True, order=True)
class ParameterTuple:
    lambdas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(to_extended(v) for v in self.lambdas)
        if len(values) < 2:
            raise HumbertDomainError(f"V_n needs n >= 4, i.e. at least 2 lambdas; got {len(values)}")
        for v in values:
            if not isinstance(v, Fraction) or v in (0, 1):
                raise HumbertDomainError(f"lambda values must be finite and not 0 or 1, got {v}")
        if len(set(values)) != len(values):
            raise HumbertDomainError(f"lambda values must be pairwise distinct, got {values}")
        object.__setattr__(self, "lambdas", values)

    @property
    def n(self) -> int:
        return len(self.lambdas) + 2

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.lambdas) + ")"

    def to_json(self) -> list[str]:
        return [str(v) for v in self.lambdas]


def parse_tuple(text: str, n: int | None = None) -> ParameterTuple:
    """Parse "2,3" or "5/2,7/3"; with n given, the length must be n-2."""
    parts = [p for p in text.split(",") if p.strip()]
    p = ParameterTuple(tuple(to_extended(s) for s in parts))
    if n is not None and p.n != n:
        raise HumbertDomainError(f"expected {n - 2} lambdas for n={n}, got {len(p.lambdas)}")
    return p


def _pole_map(k: Fraction, images: Iterable[Fraction]) -> ParameterTuple:
    return ParameterTuple(tuple(k / (k - z) for z in images))


def _t(p: ParameterTuple) -> ParameterTuple:
    *rest, k = p.lambdas
    return _pole_map(k, [Fraction(1), *rest])


def _b(p: ParameterTuple) -> ParameterTuple:
    return ParameterTuple(tuple(1 / v for v in p.lambdas))


def _s(p: ParameterTuple) -> ParameterTuple:
    lam = p.lambdas
    if p.n == 4:
        return ParameterTuple(tuple(1 / (1 - v) for v in lam))
    k = lam[-3]
    return _pole_map(k, [Fraction(1), *lam[:-3], *lam[-2:]])


def _c(p: ParameterTuple) -> ParameterTuple:
    lam = p.lambdas
    return ParameterTuple((*lam[:-2], lam[-1], lam[-2]))


def _u(p: ParameterTuple) -> ParameterTuple:
    lam = p.lambdas
    k = lam[-2]
    return _pole_map(k, [Fraction(1), *lam[:-2], lam[-1]])


GENERATORS: dict[str, Callable[[ParameterTuple], ParameterTuple]] = {
    "t": _t,
    "b": _b,
    "s": _s,
    "c": _c,
    "u": _u,
}


def apply_generator(g: str, p: ParameterTuple) -> ParameterTuple:
    try:
        fn = GENERATORS[g]
    except KeyError:
        raise HumbertDomainError(f"unknown generator {g!r}; expected one of {''.join(GENERATORS)}") from None
    return fn(p)


def apply_word(word: str, p: ParameterTuple) -> ParameterTuple:
    """Apply the letters of `word` left to right."""
    for g in word:
        p = apply_generator(g, p)
    return p


def _check_generators(gens: str) -> str:
    letters = "".join(dict.fromkeys(gens))
    if not letters:
        raise HumbertDomainError("generator set is empty")
    for g in letters:
        if g not in GENERATORS:
            raise HumbertDomainError(f"unknown generator {g!r}; expected one of {''.join(GENERATORS)}")
    return letters


def generated_order(gens: str, n: int) -> int | None:
    """Order of the permutation group the generator set realizes, when it is a known one."""
    known = {
        frozenset("tb"): math.factorial(n + 1),
        frozenset("sbc"): 2 * math.factorial(n - 1),
        frozenset("sb"): math.factorial(n - 1),
        frozenset("ub"): math.factorial(n),
        frozenset("b"): 2,
        frozenset("c"): 2,
    }
    return known.get(frozenset(gens))


@dataclass(frozen=True)
class Orbit:
    seed: ParameterTuple
    generators: str
    members: tuple[ParameterTuple, ...]
    words: dict[ParameterTuple, str] = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def group_order(self) -> int | None:
        return generated_order(self.generators, self.seed.n)

    @property
    def is_full(self) -> bool:
        """True when the stabilizer of the seed is trivial."""
        return self.size == self.group_order

    def __contains__(self, p: ParameterTuple) -> bool:
        return p in self.words

    def to_json(self) -> dict:
        return {
            "seed": self.seed.to_json(),
            "generators": list(self.generators),
            "size": self.size,
            "members": [m.to_json() for m in self.members],
        }


def orbit(p: ParameterTuple, gens: str = "tb", *, max_size: int | None = None) -> Orbit:
    """Breadth-first closure of p under the generators, recording a reaching word for each member."""
    max_size = DEFAULTS["max_orbit_size"] if max_size is None else max_size
    gens = _check_generators(gens)

    words = {p: ""}
    queue = deque([p])
    while queue:
        current = queue.popleft()
        for g in gens:
            image = apply_generator(g, current)
            if image in words:
                continue
            words[image] = words[current] + g
            if len(words) > max_size:
                raise CapacityError(f"orbit of {p} under <{gens}> exceeds max_orbit_size={max_size}")
            queue.append(image)
    return Orbit(p, gens, tuple(sorted(words)), words)


def _require_same_n(p1: ParameterTuple, p2: ParameterTuple) -> None:
    if p1.n != p2.n:
        raise HumbertDomainError(f"tuples live in different spaces: n={p1.n} and n={p2.n}")


def equivalence_witness(p1: ParameterTuple, p2: ParameterTuple, *, max_size: int | None = None) -> str | None:
    """A word in t, b carrying p1 to p2, or None when the curves are not equivalent."""
    _require_same_n(p1, p2)
    return orbit(p1, "tb", max_size=max_size).words.get(p2)


def are_equivalent(p1: ParameterTuple, p2: ParameterTuple, *, max_size: int | None = None) -> bool:
    return equivalence_witness(p1, p2, max_size=max_size) is not None


@dataclass(frozen=True)
class SuborbitPartition:
    orbit: Orbit
    generators: str
    class_sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.class_sizes)

    def to_json(self) -> dict:
        return {
            "seed": self.orbit.seed.to_json(),
            "orbit_size": self.orbit.size,
            "generators": list(self.generators),
            "count": self.count,
            "class_sizes": list(self.class_sizes),
        }


def suborbit_partition(p: ParameterTuple, gens: str = "sbc", *, max_size: int | None = None) -> SuborbitPartition:
    """Split the <t,b>-orbit of p into the orbits of the subgroup generated by `gens`."""
    gens = _check_generators(gens)
    full = orbit(p, "tb", max_size=max_size)

    graph = nx.Graph()
    graph.add_nodes_from(full.members)
    for member in full.members:
        for g in gens:
            image = apply_generator(g, member)
            if image not in full:
                raise RuntimeError(f"generator {g} leaves the <t,b>-orbit at {member}")
            graph.add_edge(member, image)

    sizes = sorted((len(c) for c in nx.connected_components(graph)), reverse=True)
    return SuborbitPartition(full, gens, tuple(sizes))


def suborbit_count(p: ParameterTuple, *, max_size: int | None = None) -> int:
    return suborbit_partition(p, "sbc", max_size=max_size).count


def omission_class_count(p: ParameterTuple, *, max_size: int | None = None) -> int:
    return suborbit_partition(p, "ub", max_size=max_size).count


def random_parameter_tuple(n: int, rng: random.Random, *, max_height: int | None = None) -> ParameterTuple:
    max_height = DEFAULTS["max_height"] if max_height is None else max_height
    if n < 4:
        raise HumbertDomainError(f"n must be >= 4, got {n}")
    if max_height < 3:
        raise HumbertDomainError("max_height must be at least 3")

    chosen: dict[Fraction, None] = {}
    while len(chosen) < n - 2:
        value = Fraction(rng.randint(-max_height, max_height), rng.randint(1, max_height))
        if value not in (0, 1):
            chosen.setdefault(value, None)
    return ParameterTuple(tuple(chosen))
