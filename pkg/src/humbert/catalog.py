"""
The n = 4 catalog: every hyperelliptic quotient of C(λ1, λ2) next to its printed closed form.

Printed forms are stored as functions of (l, m) = (λ1, λ2). For the quadratic and
w-quartic families they give the constants a of factors x^k + a; the computed
equations store s = -a. Known sign errata carry the cover-consistent replacement.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from humbert.errors import HumbertDomainError
from humbert.group_core import (
    GroupContext,
    Subgroup,
    make_element,
    non_hyperelliptic_extensions,
    pair_subgroup,
    span,
    triple_subgroup,
)
from humbert.moduli_action import ParameterTuple, apply_generator
from humbert.projective_line import orbit_key
from humbert.quotient_equations import (
    BranchSet,
    HyperellipticEquation,
    pair_quotient_curve,
    scaling_between,
    single_omission_curve,
    tower_quartic_curve,
    triple_quotient_curve,
)

Form = Callable[[Fraction, Fraction], tuple[Fraction, ...]]

# Rank-1 free subgroups L_k = <a_i a_j>
PRINTED_L: dict[str, tuple[int, int]] = {
    f"L{k}": pair for k, pair in enumerate(itertools.combinations(range(1, 6), 2), start=1)
}

# Rank-2 free subgroups K_j = <a_1 a_i, a_1 a_j> / <a_i a_j, a_i a_k>
PRINTED_K: dict[str, tuple[tuple[int, int], tuple[int, int]]] = {
    "K1": ((1, 2), (1, 3)),
    "K2": ((1, 2), (1, 4)),
    "K3": ((1, 2), (1, 5)),
    "K4": ((1, 3), (1, 4)),
    "K5": ((1, 3), (1, 5)),
    "K6": ((1, 4), (1, 5)),
    "K7": ((2, 3), (2, 4)),
    "K8": ((2, 3), (2, 5)),
    "K9": ((2, 4), (2, 5)),
    "K10": ((3, 4), (3, 5)),
}

# The printed (a, b) list of the quartic family, in printed order
PRINTED_QUARTICS: dict[str, Form] = {
    "Q1": lambda l, m: (l, m),
    "Q2": lambda l, m: (1 - l, m * (1 - l) / (m - l)),
    "Q3": lambda l, m: (l / (l - 1), (m - l) / (1 - l)),
    "Q4": lambda l, m: (1 / l, m / l),
    "Q5": lambda l, m: (1 - m, l * (1 - m) / (l - m)),
    "Q6": lambda l, m: (m / (m - 1), (l - m) / (1 - m)),
    "Q7": lambda l, m: (1 / m, l / m),
    "Q8": lambda l, m: ((1 - l) / (1 - m), m * (1 - l) / (l * (1 - m))),
    "Q9": lambda l, m: (m / l, (1 - m) / (1 - l)),
    "Q10": lambda l, m: (l / m, l * (1 - m) / (m * (1 - l))),
}

# Omitted triple of branch indices -> printed (a, b) entry
QUARTIC_LABELS: dict[tuple[int, int, int], str] = {
    (1, 2, 3): "Q1",
    (1, 2, 4): "Q4",
    (1, 2, 5): "Q7",
    (1, 3, 4): "Q3",
    (1, 3, 5): "Q6",
    (1, 4, 5): "Q9",
    (2, 3, 4): "Q2",
    (2, 3, 5): "Q5",
    (2, 4, 5): "Q10",
    (3, 4, 5): "Q8",
}

# Omitted pair -> C_j, following the order (i)..(x) of the cover pairs {b1, b2}
CURVE_LABELS: dict[tuple[int, int], str] = {
    pair: f"C{k}" for k, pair in enumerate(itertools.combinations(range(1, 6), 2), start=1)
}

PRINTED_CURVES: dict[str, Form] = {
    "C1": lambda l, m: (Fraction(1), l, m),
    "C2": lambda l, m: (Fraction(1), 1 - l, 1 - m),
    "C3": lambda l, m: (l, l - 1, l - m),
    "C4": lambda l, m: (m, m - 1, m - l),
    "C5": lambda l, m: (Fraction(1), (l - 1) / l, (m - 1) / l),
    "C6": lambda l, m: (Fraction(1), 1 - l, (m - l) / m),
    "C7": lambda l, m: (Fraction(1), 1 - m, (l - m) / l),
    "C8": lambda l, m: (Fraction(1), l, (m - l) / (1 - m)),
    "C9": lambda l, m: (Fraction(1), m, (l - m) / (1 - l)),
    "C10": lambda l, m: (Fraction(1), m / l, (m - 1) / (l - 1)),
}

# Rescaled companions of C3 and C4
PRINTED_ALTERNATES: dict[str, tuple[str, Form]] = {
    "C3'": ("C3", lambda l, m: (Fraction(1), (l - 1) / l, (l - m) / l)),
    "C4'": ("C4", lambda l, m: (Fraction(1), (m - 1) / m, (m - l) / m)),
}

ERRATA: dict[str, Form] = {
    "C5": lambda l, m: (Fraction(1), (l - 1) / l, (m - 1) / m),
    "C8": lambda l, m: (Fraction(1), l, (m - l) / (m - 1)),
    "C9": lambda l, m: (Fraction(1), m, (l - m) / (l - 1)),
}

# Towers over the pair {λ1, λ2}, keyed by the index of b3
PRINTED_TOWERS: dict[int, Form] = {
    3: lambda l, m: (Fraction(1), m / l),
    1: lambda l, m: (m / l, (m - 1) / (l - 1)),
    2: lambda l, m: (Fraction(1), (m - 1) / (l - 1)),
}

# Images of C10 = C_{λ1, λ2} under the generators s, b and c
PRINTED_IMAGES: dict[str, Form] = {
    "s": lambda l, m: (Fraction(1), (l - 1) / (m - 1), m * (l - 1) / (l * (m - 1))),
    "b": lambda l, m: (Fraction(1), l / m, l * (m - 1) / (m * (l - 1))),
    "c": lambda l, m: (Fraction(1), l / m, (l - 1) / (m - 1)),
}

# Single omission of branch index p -> printed third root
PRINTED_SINGLE_ROOTS: dict[int, Callable[[Fraction, Fraction], Fraction]] = {
    1: lambda l, m: l * (m - 1) / (m * (l - 1)),
    2: lambda l, m: (m - 1) / (l - 1),
    3: lambda l, m: l / m,
    4: lambda l, m: m,
    5: lambda l, m: l,
}


class Relation:
    EXACT = "exact"
    SCALED = "scaled"
    CROSS_RATIO = "cross_ratio"
    ERRATUM = "erratum"
    MISMATCH = "mismatch"


@dataclass(frozen=True)
class CatalogRecord:
    family: str
    selection: tuple[int, ...]
    subgroup: Subgroup
    subgroup_label: str
    curve_label: str
    equation: HyperellipticEquation
    printed: tuple[Fraction, ...]
    relation: str
    sigma: Fraction | None = None

    @property
    def erratum(self) -> bool:
        return self.relation == Relation.ERRATUM

    @property
    def ok(self) -> bool:
        return self.relation != Relation.MISMATCH

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "selection": list(self.selection),
            "subgroup": str(self.subgroup),
            "subgroup_label": self.subgroup_label,
            "curve_label": self.curve_label,
            "genus": self.equation.genus,
            "shape": self.equation.shape.value,
            "factors": [str(c) for c in self.equation.constants],
            "equation": str(self.equation),
            "printed": [str(c) for c in self.printed],
            "relation": self.relation,
            "sigma": None if self.sigma is None else str(self.sigma),
            "erratum": self.erratum,
        }


def _negated(values: Iterable[Fraction]) -> tuple[Fraction, ...]:
    return tuple(-v for v in values)


def subgroup_labels(ctx: GroupContext) -> dict[Subgroup, str]:
    """L_k and K_j labels, matched against the printed generators."""
    if ctx.n != 4:
        raise HumbertDomainError("printed subgroup labels exist for n = 4 only")
    labels = {span(ctx, [make_element(ctx, pair)]): name for name, pair in PRINTED_L.items()}
    for name, gens in PRINTED_K.items():
        labels[span(ctx, [make_element(ctx, g) for g in gens])] = name
    return labels


def compare_pair_curve(label: str, ours: tuple[Fraction, ...], l: Fraction, m: Fraction) -> tuple[tuple[Fraction, ...], str, Fraction | None]:
    printed = _negated(PRINTED_CURVES[label](l, m))
    sigma = scaling_between(ours, printed)
    if sigma == 1:
        return printed, Relation.EXACT, sigma
    if sigma is not None:
        return printed, Relation.SCALED, sigma
    if label in ERRATA and scaling_between(ours, _negated(ERRATA[label](l, m))) == 1:
        return printed, Relation.ERRATUM, None
    return printed, Relation.MISMATCH, None


def compare_quartic_curve(label: str, ours: tuple[Fraction, ...], l: Fraction, m: Fraction) -> tuple[tuple[Fraction, ...], str]:
    printed = PRINTED_QUARTICS[label](l, m)
    if Counter(ours) == Counter(printed):
        return printed, Relation.EXACT
    if Counter(orbit_key(v) for v in ours) == Counter(orbit_key(v) for v in printed):
        return printed, Relation.CROSS_RATIO
    return printed, Relation.MISMATCH


def compare_single_root(p: int, ours: tuple[Fraction, ...], l: Fraction, m: Fraction) -> tuple[tuple[Fraction, ...], str]:
    printed = (Fraction(0), Fraction(1), PRINTED_SINGLE_ROOTS[p](l, m))
    if Counter(ours) == Counter(printed):
        return printed, Relation.EXACT
    if orbit_key(ours[2]) == orbit_key(printed[2]):
        return printed, Relation.CROSS_RATIO
    return printed, Relation.MISMATCH


def compare_tower(r: int, ours: tuple[Fraction, ...], l: Fraction, m: Fraction) -> tuple[tuple[Fraction, ...], str]:
    printed = _negated(PRINTED_TOWERS[r](l, m))
    return printed, Relation.EXACT if Counter(ours) == Counter(printed) else Relation.MISMATCH


def build_catalog(lambdas: Iterable) -> list[CatalogRecord]:
    """Quartic family, then pair family, then single omissions; 25 records."""
    branch = BranchSet.from_lambdas(lambdas)
    if branch.n != 4:
        raise HumbertDomainError(f"the catalog covers n = 4 only, got n={branch.n}")
    l, m = branch.lambdas
    ctx = GroupContext(4)
    labels = subgroup_labels(ctx)
    records: list[CatalogRecord] = []

    for triple in itertools.combinations(branch.indices, 3):
        eq = triple_quotient_curve(branch, triple)
        K = triple_subgroup(ctx, triple)
        label = QUARTIC_LABELS[triple]
        printed, relation = compare_quartic_curve(label, eq.constants, l, m)
        records.append(CatalogRecord("triple", triple, K, labels[K], label, eq, printed, relation))

    for pair in itertools.combinations(branch.indices, 2):
        eq = pair_quotient_curve(branch, pair)
        K = pair_subgroup(ctx, pair)
        label = CURVE_LABELS[pair]
        printed, relation, sigma = compare_pair_curve(label, eq.constants, l, m)
        records.append(CatalogRecord("pair", pair, K, labels[K], label, eq, printed, relation, sigma))

    extensions = non_hyperelliptic_extensions(ctx)
    for p in branch.indices:
        eq = single_omission_curve(branch, p)
        a_p = ctx.generator(p)
        K = next(U for U in extensions if a_p in U)
        printed, relation = compare_single_root(p, eq.constants, l, m)
        records.append(CatalogRecord("single", (p,), K, f"E{p}", f"R{p}", eq, printed, relation))

    return records


def tower_records(lambdas: Iterable) -> list[tuple[int, HyperellipticEquation, tuple[Fraction, ...], str]]:
    """The three towers over the omitted pair {4, 5} against their printed forms."""
    branch = BranchSet.from_lambdas(lambdas)
    if branch.n != 4:
        raise HumbertDomainError(f"the catalog covers n = 4 only, got n={branch.n}")
    l, m = branch.lambdas
    rows = []
    for r in (3, 1, 2):
        eq = tower_quartic_curve(branch, (4, 5), r)
        printed, relation = compare_tower(r, eq.constants, l, m)
        rows.append((r, eq, printed, relation))
    return rows


def catalog_to_json(records: Iterable[CatalogRecord]) -> list[dict]:
    return [r.to_json() for r in records]


@dataclass(frozen=True)
class ImageRecord:
    generator: str
    image: ParameterTuple
    equation: HyperellipticEquation
    printed: tuple[Fraction, ...]
    relation: str

    def to_json(self) -> dict:
        return {
            "generator": self.generator,
            "image": self.image.to_json(),
            "equation": str(self.equation),
            "printed": [str(c) for c in self.printed],
            "relation": self.relation,
        }


def image_records(lambdas: Iterable) -> list[ImageRecord]:
    """C10 rebuilt over the images of (λ1, λ2) under s, b and c, against the printed images."""
    params = ParameterTuple(tuple(lambdas))
    if params.n != 4:
        raise HumbertDomainError(f"the catalog covers n = 4 only, got n={params.n}")
    l, m = params.lambdas
    rows = []
    for g, form in PRINTED_IMAGES.items():
        image = apply_generator(g, params)
        eq = pair_quotient_curve(BranchSet.from_lambdas(image.lambdas), (4, 5))
        printed = _negated(form(l, m))
        relation = Relation.EXACT if Counter(eq.constants) == Counter(printed) else Relation.MISMATCH
        rows.append(ImageRecord(g, image, eq, printed, relation))
    return rows
