"""
Self-verification suites: each check recomputes a count, a genus or an equation
and records pass, fail or erratum together with the data that decided it.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from humbert import catalog, curve_model, group_core, moduli_action, quotient_equations
from humbert.errors import CapacityError, HumbertDomainError
from humbert.projective_line import INF, format_extended, orbit_key

DEFAULTS: dict = {
    "seed": 1729,
    "samples": 20,
    "relation_samples": 100,
    # orbit closures beyond this n are skipped (7! = 5040 members at n = 6)
    "max_orbit_n": 6,
    "seed_attempts": 12,
    "lambda_seeds": (2, 3, 5, 7, 11, 13, 17, 19),
}

SUITES = ("counts", "profiles", "equations", "moduli", "model")


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    ERRATUM = "erratum"


@dataclass(frozen=True)
class Check:
    check_id: str
    statement: str
    status: Status
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.check_id,
            "statement": self.statement,
            "status": self.status.value,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    suite: str
    n: int
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, statement: str, ok: bool, witness: dict | None = None, *, erratum: bool = False) -> Check:
        if erratum and ok:
            status = Status.ERRATUM
        else:
            status = Status.PASS if ok else Status.FAIL
        check = Check(check_id, statement, status, witness or {})
        self.checks.append(check)
        return check

    def extend(self, other: VerificationReport) -> None:
        self.checks.extend(other.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status is Status.FAIL]

    @property
    def errata(self) -> list[Check]:
        return [c for c in self.checks if c.status is Status.ERRATUM]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
        }


def default_tuple(n: int) -> moduli_action.ParameterTuple:
    seeds = DEFAULTS["lambda_seeds"]
    if n - 2 > len(seeds):
        raise HumbertDomainError(f"no default parameters for n={n}")
    return moduli_action.ParameterTuple(tuple(Fraction(v) for v in seeds[: n - 2]))


def sample_tuples(n: int, rng: random.Random, samples: int) -> list[moduli_action.ParameterTuple]:
    return [default_tuple(n)] + [moduli_action.random_parameter_tuple(n, rng) for _ in range(samples)]


def _free_subgroups(ctx: group_core.GroupContext, rank: int) -> tuple[list[group_core.Subgroup], str]:
    try:
        return group_core.enumerate_free_subgroups(ctx, rank), "exhaustive"
    except CapacityError:
        return group_core.constructive_free_subgroups(ctx, rank), "constructive"


def counts_suite(n: int, **_) -> VerificationReport:
    report = VerificationReport("counts", n)
    ctx = group_core.GroupContext(n)

    free, method = _free_subgroups(ctx, n - 2)
    pairs = group_core.constructive_free_subgroups(ctx, n - 2)
    printed = n * (n + 1) // 2
    witnessed = [K for K in free if group_core.has_hyperelliptic_witness(K)]
    report.add(
        "census.pair_family",
        "the free rank n-2 subgroups whose quotient group holds the hyperelliptic involution are the n(n+1)/2 pair subgroups",
        set(witnessed) == set(pairs) and len(witnessed) == len(pairs) == printed,
        {"witnessed": len(witnessed), "pair_subgroups": len(pairs), "method": method},
    )

    pair_set = set(pairs)
    extra = [K for K in free if K not in pair_set]
    report.add(
        "census.rank_n_minus_2",
        "the rank n-2 subgroups acting freely number n(n+1)/2",
        pair_set <= set(free),
        {"found": len(free), "printed": printed, "method": method, "example": str(extra[0]) if extra else None},
        erratum=len(free) != printed,
    )

    maximal, method = _free_subgroups(ctx, n - 1)
    expected = 1 if n % 2 else 0
    report.add(
        "census.rank_n_minus_1",
        "a free rank n-1 subgroup exists exactly for n odd and is then unique",
        len(maximal) == expected,
        {"found": len(maximal), "expected": expected, "method": method},
    )

    triples = group_core.constructive_free_subgroups(ctx, n - 3)
    report.add(
        "census.triple_family",
        "the n(n^2-1)/6 triple subgroups are distinct and act freely",
        len(triples) == n * (n * n - 1) // 6,
        {"found": len(triples)},
    )

    if n == 4:
        rank_one, _ = _free_subgroups(ctx, 1)
        labelled = catalog.subgroup_labels(ctx)
        names = [labelled.get(sg) for sg in rank_one]
        report.add(
            "census.rank_one_n4",
            "the 10 free involutions of the type-4 group are L1..L10 in order",
            names == [f"L{k}" for k in range(1, 11)],
            {"labels": names},
        )
        contained = [sum(1 for L in triples if L.issubgroup(K)) for K in pairs]
        report.add(
            "census.containment_n4",
            "every rank-2 free subgroup contains exactly three free involution subgroups",
            contained == [3] * len(pairs),
            {"counts": contained},
        )

    report.add(
        "genus.ambient",
        "Riemann-Hurwitz over n+1 cone points of order 2 gives g_n",
        group_core.orbifold_genus(ctx.group_order, n + 1) == ctx.ambient_genus,
        {"genus": ctx.ambient_genus},
    )

    if n % 2 == 0:
        hyp = group_core.hyperelliptic_extensions(ctx)
        report.add(
            "census.hyperelliptic_extensions",
            "the hyperelliptic Z_2^{n-1} subgroups number n(n+1)/2",
            len(hyp) == n * (n + 1) // 2,
            {"found": len(hyp)},
        )
        non_hyp = group_core.non_hyperelliptic_extensions(ctx)
        report.add(
            "census.non_hyperelliptic_extensions",
            "the non-hyperelliptic Z_2^{n-1} subgroups number n+1",
            len(non_hyp) == n + 1,
            {"found": len(non_hyp)},
        )

    report.extend(_lemma_checks(ctx))
    return report


def _lemma_checks(ctx: group_core.GroupContext) -> VerificationReport:
    report = VerificationReport("counts", ctx.n)
    mismatches = []
    total = 0
    for r in ctx.indices:
        others = [j for j in ctx.indices if j != r]
        for p, q in itertools.product(others, repeat=2):
            U1 = group_core.pair_subgroup(ctx, (r, p))
            U2 = group_core.pair_subgroup(ctx, (r, q))
            total += 1
            holds = group_core.check_lemma2(U1, U2, r)
            expected = True if ctx.n % 2 == 0 else U1 == U2
            if holds != expected:
                mismatches.append([r, p, q])
    if ctx.n % 2 == 0:
        statement = "<U1, a_r> = <U2, a_r> for pair subgroups both omitting a_r"
    else:
        statement = "for n odd, <U1, a_r> = <U2, a_r> holds only when U1 = U2"
    report.add("lemma.extension_by_omitted_generator", statement, not mismatches, {"triples": total, "mismatches": mismatches[:5]})
    return report


def profiles_suite(n: int, **_) -> VerificationReport:
    report = VerificationReport("profiles", n)
    ctx = group_core.GroupContext(n)
    bad = []
    for K in group_core.constructive_free_subgroups(ctx, n - 2):
        profile = group_core.quotient_profile(K)
        if n % 2 == 0:
            ok = len(profile.rows_with(2)) == 2
        else:
            ok = len(profile.rows_with(0)) == 1 and len(profile.rows_with(4)) == 1
        ok = ok and profile.quotient_genus == n - 2 and profile.witness_count == 1
        if not ok:
            bad.append(str(K))
    report.add(
        "profile.rank_n_minus_2",
        "each S/K has one hyperelliptic coset and the expected fixed-point counts on the others",
        not bad,
        {"failing": bad[:5]},
    )

    genera = {}
    for K in group_core.constructive_free_subgroups(ctx, n - 3):
        profile = group_core.quotient_profile(K)
        genera.setdefault(profile.quotient_genus, 0)
        genera[profile.quotient_genus] += 1
    report.add(
        "profile.rank_n_minus_3",
        "every triple quotient has genus 2n-5",
        set(genera) == {2 * n - 5},
        {"genera": {str(g): c for g, c in genera.items()}},
    )

    if n % 2:
        profile = group_core.quotient_profile(group_core.full_rank_free_subgroup(ctx))
        report.add(
            "profile.rank_n_minus_1",
            "the full-rank quotient has genus (n-1)/2 and a hyperelliptic witness",
            profile.quotient_genus == (n - 1) // 2 and profile.hyperelliptic_witness is not None,
            {"genus": profile.quotient_genus},
        )
    return report


def _check_equations(report: VerificationReport, label: str, equations: list, genus: int, factors: int) -> None:
    failing = [
        str(eq)
        for eq in equations
        if not quotient_equations.verify_cover_consistency(eq)
        or eq.genus != genus
        or len(eq.constants) != factors
        or eq.branch_count != 2 * eq.genus + 2
    ]
    report.add(
        f"equations.{label}",
        f"{label} equations are cover-consistent with genus {genus}",
        not failing,
        {"equations": len(equations), "failing": failing[:3]},
    )


def equations_suite(n: int, *, rng: random.Random | None = None, samples: int | None = None, **_) -> VerificationReport:
    rng = random.Random(DEFAULTS["seed"]) if rng is None else rng
    samples = DEFAULTS["samples"] if samples is None else samples
    report = VerificationReport("equations", n)

    for params in sample_tuples(n, rng, samples):
        branch = quotient_equations.BranchSet.from_lambdas(params.lambdas)
        tag = str(params)
        indices = list(branch.indices)

        pairs = [quotient_equations.pair_quotient_curve(branch, p) for p in itertools.combinations(indices, 2)]
        _check_equations(report, f"pair{tag}", pairs, n - 2, n - 1)

        triples = [quotient_equations.triple_quotient_curve(branch, t) for t in itertools.combinations(indices, 3)]
        _check_equations(report, f"triple{tag}", triples, 2 * n - 5, n - 2)

        towers = [
            quotient_equations.tower_quartic_curve(branch, pair, r)
            for pair in itertools.combinations(indices, 2)
            for r in indices
            if r not in pair
        ]
        _check_equations(report, f"tower{tag}", towers, 2 * n - 5, n - 2)

        if n % 2:
            full = quotient_equations.full_rank_quotient_curve(branch)
            _check_equations(report, f"full_rank{tag}", [full], (n - 1) // 2, n)
        else:
            singles = [quotient_equations.single_omission_curve(branch, p) for p in indices]
            _check_equations(report, f"single{tag}", singles, (n - 2) // 2, n - 1)

        report.add(
            f"equations.cross_ratio{tag}",
            "reordering a triple moves each mu within its cross-ratio orbit",
            _cross_ratio_invariant(branch, (1, 2, 3)),
        )

        if n == 4:
            report.extend(_catalog_checks(params))
    return report


def _cross_ratio_invariant(branch: quotient_equations.BranchSet, triple: tuple[int, int, int]) -> bool:
    keys = set()
    for order in itertools.permutations(triple):
        eq = quotient_equations.triple_quotient_curve(branch, order, keep_order=True)
        keys.add(tuple(sorted(orbit_key(mu) for mu in eq.constants)))
    return len(keys) == 1


def _catalog_checks(params: moduli_action.ParameterTuple) -> VerificationReport:
    report = VerificationReport("equations", 4)
    tag = str(params)
    l, m = params.lambdas
    for record in catalog.build_catalog(params.lambdas):
        report.add(
            f"catalog.{record.curve_label}{tag}",
            f"{record.curve_label} over {record.subgroup_label} matches its printed form ({record.relation})",
            record.ok,
            {"computed": [str(c) for c in record.equation.constants], "printed": [str(c) for c in record.printed]},
            erratum=record.erratum,
        )

    branch = quotient_equations.BranchSet.from_lambdas(params.lambdas)
    c3 = quotient_equations.pair_quotient_curve(branch, (1, 4))
    _, form = catalog.PRINTED_ALTERNATES["C3'"]
    sigma = quotient_equations.scaling_between(c3.constants, [-a for a in form(l, m)])
    report.add(
        f"catalog.C3'{tag}",
        "C3 rescales to its printed companion by 1/lambda_1",
        sigma == 1 / l,
        {"sigma": None if sigma is None else str(sigma)},
    )

    for r, eq, printed, relation in catalog.tower_records(params.lambdas):
        report.add(
            f"catalog.tower_b3_{format_extended(branch.value(r))}{tag}",
            "the towers over {lambda_1, lambda_2} match their printed forms",
            relation == catalog.Relation.EXACT and quotient_equations.verify_cover_consistency(eq),
            {"computed": [str(c) for c in eq.constants], "printed": [str(c) for c in printed]},
        )

    for row in catalog.image_records(params.lambdas):
        report.add(
            f"catalog.image_{row.generator}{tag}",
            f"C10 over the {row.generator}-image of the parameters matches its printed form",
            row.relation == catalog.Relation.EXACT and quotient_equations.verify_cover_consistency(row.equation),
            row.to_json(),
        )
    return report


def _full_orbit_seed(n: int, rng: random.Random) -> moduli_action.Orbit | None:
    for _ in range(DEFAULTS["seed_attempts"]):
        orb = moduli_action.orbit(moduli_action.random_parameter_tuple(n, rng), "tb")
        if orb.is_full:
            return orb
    return None


def moduli_suite(n: int, *, rng: random.Random | None = None, samples: int | None = None, **_) -> VerificationReport:
    rng = random.Random(DEFAULTS["seed"]) if rng is None else rng
    samples = DEFAULTS["relation_samples"] if samples is None else samples
    report = VerificationReport("moduli", n)
    apply = moduli_action.apply_word

    relations = {
        "bb": lambda p: apply("bb", p) == p,
        "cc": lambda p: apply("cc", p) == p,
        "t^(n+1)": lambda p: apply("t" * (n + 1), p) == p,
        "sc=cs": lambda p: apply("sc", p) == apply("cs", p),
        "bc=cb": lambda p: apply("bc", p) == apply("cb", p),
    }
    tuples = sample_tuples(n, rng, max(samples - 1, 0))
    for name, relation in relations.items():
        failing = [str(p) for p in tuples if not relation(p)]
        report.add(f"moduli.relation.{name}", f"generator relation {name} holds", not failing, {"tuples": len(tuples), "failing": failing[:3]})

    if n > DEFAULTS["max_orbit_n"]:
        return report

    seed = default_tuple(n)
    for gens in ("tb", "sbc"):
        orb = moduli_action.orbit(seed, gens)
        order = moduli_action.generated_order(gens, n)
        report.add(
            f"moduli.orbit_divides.{gens}",
            f"the <{gens}>-orbit size divides the group order",
            order % orb.size == 0,
            {"seed": seed.to_json(), "size": orb.size, "group_order": order},
        )

    full = _full_orbit_seed(n, rng)
    if full is None:
        report.add("moduli.full_orbit_seed", "a random seed has a trivial stabilizer", False)
        return report

    sub = moduli_action.suborbit_partition(full.seed, "sbc")
    report.add(
        "moduli.suborbit_count",
        "a generic <t,b>-orbit splits into n(n+1)/2 orbits of <s,b,c>",
        sub.count == n * (n + 1) // 2,
        sub.to_json(),
    )
    symmetric = moduli_action.suborbit_partition(full.seed, "sb")
    report.add(
        "moduli.sb_suborbit_count",
        "a generic <t,b>-orbit splits into n(n+1) orbits of <s,b>",
        symmetric.count == n * (n + 1) and set(symmetric.class_sizes) == {moduli_action.generated_order("sb", n)},
        symmetric.to_json(),
    )
    omission = moduli_action.suborbit_partition(full.seed, "ub")
    report.add(
        "moduli.omission_classes",
        "a generic <t,b>-orbit splits into n+1 orbits of a point stabilizer",
        omission.count == n + 1,
        omission.to_json(),
    )

    word_length = rng.randint(1, 2 * n)
    target = apply("".join(rng.choice("tbsc") for _ in range(word_length)), full.seed)
    stranger = moduli_action.random_parameter_tuple(n, rng)
    base = moduli_action.are_equivalent(full.seed, stranger)
    invariant = all(
        moduli_action.are_equivalent(moduli_action.apply_generator(g, full.seed), target)
        and moduli_action.are_equivalent(moduli_action.apply_generator(g, full.seed), stranger) == base
        for g in "tbsc"
    )
    word = moduli_action.equivalence_witness(full.seed, full.members[-1])
    report.add(
        "moduli.equivalence",
        "equivalence is invariant under the generators and witnessed by a word",
        invariant and word is not None and apply(word, full.seed) == full.members[-1],
        {"word": word},
    )
    return report


def model_suite(n: int, *, prec: curve_model.PrecisionContext | None = None, **_) -> VerificationReport:
    prec = curve_model.PrecisionContext.from_env() if prec is None else prec
    report = VerificationReport("model", n)
    system = curve_model.CurveSystem(default_tuple(n))
    ctx = group_core.GroupContext(n)

    z = Fraction(-1, 2)
    fiber = curve_model.sample_fiber(system, z, prec)
    report.add(
        "model.regular_fiber",
        "a regular fiber has 2^n points",
        len(fiber) == ctx.group_order,
        {"z": str(z), "points": len(fiber)},
    )

    sizes = {format_extended(b): len(curve_model.sample_fiber(system, b, prec)) for b in system.branch_values}
    report.add(
        "model.branch_fibers",
        "each of the n+1 branch fibers has 2^(n-1) points",
        set(sizes.values()) == {ctx.group_order // 2},
        {"sizes": sizes},
    )

    invariant = all(
        _close(curve_model.project(curve_model.apply_automorphism(pt, j)), curve_model.project(pt), prec)
        for pt in fiber
        for j in ctx.indices
    )
    report.add("model.projection_invariant", "pi is invariant under every a_j", invariant)

    report.add(
        "model.transitive",
        "the sign changes act transitively on a regular fiber",
        _orbit_size(fiber[0], n) == len(fiber),
    )

    vanishing = all(
        abs(pt.coords[j - 1]) <= prec.tolerance
        for j in ctx.indices
        for pt in curve_model.fixed_locus(system, j, prec)
    )
    report.add("model.fixed_loci", "x_j vanishes on the fiber over the branch value of a_j", vanishing)

    genus = curve_model.sampled_genus(system, prec)
    report.add(
        "model.genus",
        "sampled fiber sizes reproduce g_n",
        genus == ctx.ambient_genus,
        {"sampled": genus, "expected": ctx.ambient_genus},
    )
    return report


def _close(a, b, prec: curve_model.PrecisionContext) -> bool:
    if a is INF or b is INF:
        return a is b
    return abs(a - b) <= prec.tolerance * max(1, abs(a))


def _orbit_size(start: curve_model.ProjectivePoint, n: int) -> int:
    seen = {start.key()}
    frontier = [start]
    while frontier:
        nxt = []
        for pt in frontier:
            for j in range(1, n + 2):
                image = curve_model.apply_automorphism(pt, j)
                if image.key() not in seen:
                    seen.add(image.key())
                    nxt.append(image)
        frontier = nxt
    return len(seen)


SUITE_RUNNERS: dict[str, Callable[..., VerificationReport]] = {
    "counts": counts_suite,
    "profiles": profiles_suite,
    "equations": equations_suite,
    "moduli": moduli_suite,
    "model": model_suite,
}


def run_suite(name: str, n: int, *, seed: int | None = None, samples: int | None = None) -> VerificationReport:
    """Run one suite, or all of them in order for name == "all"."""
    if name != "all" and name not in SUITE_RUNNERS:
        raise HumbertDomainError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)} or all")
    group_core.GroupContext(n)
    rng = random.Random(DEFAULTS["seed"] if seed is None else seed)
    names = SUITES if name == "all" else (name,)
    report = VerificationReport(name, n)
    for suite in names:
        report.extend(SUITE_RUNNERS[suite](n, rng=rng, samples=samples))
    return report

