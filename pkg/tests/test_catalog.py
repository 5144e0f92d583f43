"""Tests for the n = 4 catalog against the golden fixture and the printed forms."""
import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from humbert.catalog import (
    ERRATA,
    PRINTED_ALTERNATES,
    QUARTIC_LABELS,
    Relation,
    PRINTED_IMAGES,
    build_catalog,
    catalog_to_json,
    image_records,
    subgroup_labels,
    tower_records,
)
from humbert.errors import HumbertDomainError
from humbert.group_core import GroupContext, pair_subgroup, triple_subgroup
from humbert.moduli_action import ParameterTuple, apply_generator, random_parameter_tuple
from humbert.quotient_equations import BranchSet, pair_quotient_curve, scaling_between

GOLDEN = Path(__file__).resolve().parents[1] / "data" / "golden" / "catalog_2_3.json"
LAMBDAS = (F(2), F(3))


@pytest.fixture(scope="module")
def records():
    return build_catalog(LAMBDAS)


def by_label(records, label):
    (record,) = [r for r in records if r.curve_label == label]
    return record


def test_matches_golden_fixture(records):
    golden = json.loads(GOLDEN.read_text(encoding="utf-8"))
    produced = catalog_to_json(records)
    assert len(produced) == len(golden) == 25
    for got, want in zip(produced, golden):
        assert {key: got[key] for key in want} == want


def test_family_sizes_and_genera(records):
    genera = {}
    for r in records:
        genera.setdefault(r.family, set()).add(r.equation.genus)
    assert genera == {"triple": {3}, "pair": {2}, "single": {1}}
    assert [r.family for r in records].count("triple") == 10
    assert [r.family for r in records].count("pair") == 10
    assert [r.family for r in records].count("single") == 5


def test_every_record_matches_its_printed_form(records):
    assert all(r.ok for r in records)
    assert {r.curve_label for r in records if r.erratum} == set(ERRATA)


def test_c1_is_printed_after_sign_change(records):
    c1 = by_label(records, "C1")
    assert c1.relation == Relation.SCALED
    assert c1.sigma == -1


def test_c3_companion_scales_by_inverse_lambda1():
    l, m = LAMBDAS
    c3 = pair_quotient_curve(BranchSet.from_lambdas(LAMBDAS), (1, 4))
    _, form = PRINTED_ALTERNATES["C3'"]
    assert scaling_between(c3.constants, [-a for a in form(l, m)]) == 1 / l


def test_subgroup_labels():
    ctx = GroupContext(4)
    labels = subgroup_labels(ctx)
    assert labels[pair_subgroup(ctx, (4, 5))] == "K1"
    assert labels[pair_subgroup(ctx, (1, 2))] == "K10"
    assert labels[triple_subgroup(ctx, (3, 4, 5))] == "L1"
    assert labels[triple_subgroup(ctx, (1, 2, 3))] == "L10"
    assert len(labels) == 20


def test_quartic_labels_cover_every_triple(records):
    assert {r.selection for r in records if r.family == "triple"} == set(QUARTIC_LABELS)


def test_single_records_use_non_hyperelliptic_extensions(records):
    ctx = GroupContext(4)
    for r in records:
        if r.family == "single":
            (p,) = r.selection
            assert ctx.generator(p) in r.subgroup
            assert r.subgroup.rank == 3


def test_towers_over_lambda_pair():
    rows = tower_records(LAMBDAS)
    assert [r for r, *_ in rows] == [3, 1, 2]
    assert all(relation == Relation.EXACT for *_, relation in rows)


@pytest.mark.parametrize("seed", range(5))
def test_catalog_holds_for_random_parameters(seed):
    params = random_parameter_tuple(4, random.Random(seed))
    records = build_catalog(params.lambdas)
    assert all(r.ok for r in records)
    assert all(relation == Relation.EXACT for *_, relation in tower_records(params.lambdas))
    assert all(row.relation == Relation.EXACT for row in image_records(params.lambdas))


def test_catalog_is_n4_only():
    with pytest.raises(HumbertDomainError):
        build_catalog((F(2), F(3), F(5)))


def test_generator_images_of_c10(records):
    rows = image_records(LAMBDAS)
    assert [row.generator for row in rows] == list(PRINTED_IMAGES) == ["s", "b", "c"]
    assert all(row.relation == Relation.EXACT for row in rows)
    s, b, c = rows
    assert s.image == ParameterTuple((F(-1), F(-1, 2)))
    assert sorted(s.equation.constants) == [F(-1), F(-3, 4), F(-1, 2)]
    assert b.image == apply_generator("b", ParameterTuple(LAMBDAS))
    assert sorted(b.equation.constants) == [F(-4, 3), F(-1), F(-2, 3)]
    assert sorted(c.equation.constants) == [F(-1), F(-2, 3), F(-1, 2)]
    assert c.to_json()["image"] == ["3", "2"]
    assert by_label(records, "C10").relation == Relation.EXACT
