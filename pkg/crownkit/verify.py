#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
The verification harness: the soluble bound max(H,G) <= |G:H| - 1, the
|G:H|^{3/2} ratio statistic, the sigma/rho split, the crown lemmas and the
block-system correspondence, run over a catalog and written as TSV or JSON.
"""

import csv
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
import yaml

from crownkit import CapExceeded, CrownkitError, __version__
from crownkit.blocks import (
    NotTransitive,
    OracleTooLarge,
    maximal_block_systems,
    oracle_maximal_system_count,
)
from crownkit.catalog import CatalogEntry
from crownkit.crowns import (
    CrownError,
    MonolithicGroup,
    NotMonolithic,
    PreconditionError,
    compute_crown,
    crown_based_power,
    crown_socle_generators,
    delta_count,
    factor_classes,
    g_equivalent,
    g_isomorphic,
    monolithic_group,
    sotto_decomposition,
)
from crownkit.lattice import (
    all_subgroups,
    conjugacy_class_representatives,
    factor_of,
    frattini,
    greedy_maximal_overgroup,
    maximal_overgroups,
    minimal_normal_subgroups,
    normal_subgroups,
    normal_subgroups_above_cap,
)
from crownkit.permcore import (
    PermGroup,
    Permutation,
    SubgroupHandle,
    core_of_subgroup,
    is_soluble,
    point_stabilizer,
    quotient,
)
from crownkit.settings import config, logger
from crownkit.util import group_cache

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"
SKIPPED = "skipped"

SUITES = ("soluble", "ratio", "lemmas", "sotto", "blocks")

TSV_COLUMNS = (
    "group",
    "H",
    "index",
    "max_count",
    "sigma",
    "rho",
    "ratio",
    "soluble",
    "verdict",
    "check",
)


class InsolubleEntry(CrownkitError):
    pass


@dataclass
class BoundReport:
    group_name: str
    H_descriptor: str
    index: Optional[int] = None
    max_count: Optional[int] = None
    sigma: Optional[int] = None
    rho: Optional[int] = None
    soluble: Optional[bool] = None
    verdict: str = NOT_APPLICABLE
    witnesses: Tuple[str, ...] = ()
    check: str = "bound"
    detail: str = ""

    @property
    def ratio(self) -> Optional[float]:
        if not self.index or self.max_count is None:
            return None
        return self.max_count / self.index**1.5

    @property
    def verdict_soluble_bound(self) -> str:
        return self.verdict

    @property
    def equality(self) -> bool:
        return self.index is not None and self.max_count == self.index - 1

    def sort_key(self):
        return (self.group_name, self.H_descriptor, self.check)

    def as_row(self) -> Dict[str, object]:
        ratio = self.ratio
        return {
            "group": self.group_name,
            "H": self.H_descriptor,
            "index": self.index,
            "max_count": self.max_count,
            "sigma": self.sigma,
            "rho": self.rho,
            "ratio": None if ratio is None else round(ratio, 12),
            "soluble": self.soluble,
            "verdict": self.verdict,
            "check": self.check,
        }

    def as_dict(self) -> Dict[str, object]:
        row = self.as_row()
        row["witnesses"] = list(self.witnesses)
        row["detail"] = self.detail
        return row


def _skip(check, name, subject, reason) -> BoundReport:
    logger.info(
        "verify: {} {} {} skipped: {}".format(check, name, subject, reason)
    )
    return BoundReport(
        name, subject, check=check, verdict=SKIPPED, detail=str(reason)
    )


#
# max(H,G) and the bound
#


def max_count(G: PermGroup, H: SubgroupHandle) -> int:
    """max(H,G); 0 for H = G."""
    if H.is_whole():
        return 0
    return len(maximal_overgroups(G, H))


def subgroup_scope(G: PermGroup, scope: str = "auto") -> List[SubgroupHandle]:
    """
    The proper subgroups H to examine: every subgroup for small groups, one
    per conjugacy class for medium ones, point stabilizers otherwise.
    """
    if not G.has_elements:
        return []
    if scope == "auto":
        if G.order <= config["SCOPE_ALL_ORDER"]:
            scope = "all"
        elif G.order <= config["SCOPE_CONJUGACY_ORDER"]:
            scope = "conjugacy"
        else:
            scope = "stabilizers"
    if scope == "stabilizers":
        found = {}
        for orbit in G.orbits:
            H = point_stabilizer(G, orbit[0])
            if not H.is_whole():
                found.setdefault(H.bits, H)
        return sorted(found.values(), key=SubgroupHandle.sort_key)
    subgroups = [H for H in all_subgroups(G) if not H.is_whole()]
    if scope == "conjugacy":
        return conjugacy_class_representatives(G, subgroups)
    if scope == "all":
        return subgroups
    raise CrownkitError("unknown subgroup scope {!r}".format(scope))


def bound_report(
    G: PermGroup, H: SubgroupHandle, soluble: Optional[bool] = None
) -> BoundReport:
    maximals = maximal_overgroups(G, H) if not H.is_whole() else []
    report = BoundReport(
        G.name,
        H.describe(),
        index=H.index,
        max_count=len(maximals),
        soluble=soluble,
        witnesses=tuple(M.describe() for M in maximals),
    )
    if soluble:
        report.verdict = PASS if report.max_count <= H.index - 1 else FAIL
        if report.equality:
            report.detail = "equality"
    return report


def _bound_rows(G: PermGroup, scope: str, with_verdict: bool):
    soluble = is_soluble(G)
    return [
        bound_report(G, H, soluble if with_verdict else None)
        for H in subgroup_scope(G, scope)
    ]


def verify_soluble_bound(
    entries: Sequence[CatalogEntry], scope: str = "auto", strict: bool = False
) -> List[BoundReport]:
    reports = []
    for entry in entries:
        G = entry.group()
        if not G.has_elements:
            reports.append(_skip("bound", G.name, "-", "element cap"))
            continue
        if not is_soluble(G):
            if strict:
                raise InsolubleEntry("{} is not soluble".format(G.name))
            logger.info("verify: {} is insoluble, skipped".format(G.name))
            continue
        reports += _bound_rows(G, scope, with_verdict=True)
    failures = [r for r in reports if r.verdict == FAIL]
    if failures:
        logger.warning(
            "verify: soluble bound violated {} times".format(len(failures))
        )
    return sorted(reports, key=BoundReport.sort_key)


@dataclass
class RatioSummary:
    reports: List[BoundReport]
    max_ratio: float = 0.0
    witness: Tuple[str, str] = ("", "")
    distribution: List[Tuple[str, str, float]] = field(default_factory=list)

    @classmethod
    def from_reports(cls, reports: Sequence[BoundReport]) -> "RatioSummary":
        rated = [r for r in reports if r.ratio is not None]
        distribution = sorted(
            (r.group_name, r.H_descriptor, r.ratio) for r in rated
        )
        summary = cls(list(reports), distribution=distribution)
        for group, H, ratio in distribution:
            if ratio > summary.max_ratio:
                summary.max_ratio = ratio
                summary.witness = (group, H)
        return summary

    @property
    def is_finite(self) -> bool:
        return all(math.isfinite(r) for _, _, r in self.distribution)


def ratio_report(
    entries: Sequence[CatalogEntry], scope: str = "auto"
) -> RatioSummary:
    reports = []
    for entry in entries:
        G = entry.group()
        if G.has_elements:
            reports += _bound_rows(G, scope, with_verdict=False)
    return RatioSummary.from_reports(sorted(reports, key=BoundReport.sort_key))


def check_ratio_baseline(summary: RatioSummary, path: str) -> BoundReport:
    """
    Compare the maximum ratio with the YAML baseline at path; the first run
    writes the baseline.
    """
    row = BoundReport(
        "ratio",
        "{} {}".format(*summary.witness),
        check="ratio_baseline",
        detail="max ratio {:.12f}".format(summary.max_ratio),
    )
    if not summary.is_finite:
        row.verdict = FAIL
        row.detail = "non-finite ratio"
        return row
    if not os.path.exists(path):
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(
                {
                    "max_ratio": float(summary.max_ratio),
                    "witness": list(summary.witness),
                    "pairs": len(summary.distribution),
                },
                f,
                sort_keys=True,
            )
        logger.info("verify: ratio baseline written to {}".format(path))
        pinned = float(summary.max_ratio)
    else:
        with open(path, encoding="utf-8") as f:
            baseline = yaml.safe_load(f) or {}
        pinned = float(baseline.get("max_ratio", math.inf))
    row.verdict = PASS if summary.max_ratio <= pinned + 1e-12 else FAIL
    row.detail += ", baseline {:.12f}".format(pinned)
    return row


#
# sigma/rho and the reductions
#


def tilde_subgroup(G: PermGroup, H: SubgroupHandle) -> SubgroupHandle:
    """The intersection of the maximal subgroups containing H."""
    maximals = maximal_overgroups(G, H)
    if not maximals:
        return G.whole
    bits = maximals[0].bits
    for M in maximals[1:]:
        bits &= M.bits
    return SubgroupHandle(G, bits)


@group_cache(maxsize=1024)
def _reduced(G: PermGroup, N: SubgroupHandle):
    return quotient(G, N)


@group_cache(maxsize=256)
def _sotto(G: PermGroup):
    return sotto_decomposition(G)


def check_reductions(G: PermGroup, H: SubgroupHandle) -> BoundReport:
    count = max_count(G, H)
    report = BoundReport(
        G.name, H.describe(), H.index, count, check="reductions"
    )
    failures = []
    if max_count(G, tilde_subgroup(G, H)) != count:
        failures.append("max(H~,G)")
    for N in normal_subgroups(G):
        if N.is_trivial() or not N <= H:
            continue
        hom = _reduced(G, N)
        if max_count(hom.target, hom.image(H)) != count:
            failures.append("max(H/N,G/N) for N={}".format(N.describe()))
    report.verdict = FAIL if failures else PASS
    report.detail = "; ".join(failures)
    return report


def sigma_rho_report(G: PermGroup, H: SubgroupHandle) -> BoundReport:
    """
    Replace H by H~ and G by G/core_G(H~), then split the maximal overgroups
    of H by whether they contain the D of a sotto decomposition.
    """
    G.require_elements("sigma_rho_report")
    count = max_count(G, H)
    report = BoundReport(
        G.name,
        H.describe(),
        H.index,
        count,
        soluble=is_soluble(G),
        check="sigma_rho",
    )
    if H.is_whole():
        report.sigma, report.rho = 0, 0
        return report
    tilde = tilde_subgroup(G, H)
    hom = _reduced(G, core_of_subgroup(G, tilde))
    Q, Hq = hom.target, hom.image(tilde)
    if not frattini(Q).is_trivial():
        report.detail = "Frattini subgroup nontrivial after reductions"
        return report
    try:
        witness = _sotto(Q)
    except CrownError as e:
        report.verdict = FAIL
        report.detail = str(e)
        return report
    D, R, I = witness.D, witness.R, witness.I
    maximals = maximal_overgroups(Q, Hq)
    outside = [M for M in maximals if not D <= M]
    report.sigma = len(maximals) - len(outside)
    report.rho = len(outside)

    failures = []
    if report.sigma + report.rho != count:
        failures.append("sigma+rho != max(H,G)")
    by_d = _reduced(Q, D)
    if report.sigma != max_count(by_d.target, by_d.image(Hq)):
        failures.append("sigma != max(HD/D,G/D)")
    HD = Hq.join(D)
    if report.soluble and not HD.is_whole():
        if report.sigma > HD.index - 1:
            failures.append("sigma > |G:HD|-1")
    if any(not R <= X for X in outside):
        failures.append("R not below every X_i")
    if report.rho > max_count(Q, Hq.join(R)):
        failures.append("rho > max(HR,G)")
    X = Q.whole
    for M in outside:
        X = X & M
    T = X & I
    if (Hq & D) != (T & D):
        failures.append("H∩D != T∩D")
    if D.order == (T & D).order:
        failures.append("|D:T∩D| = 1")
    report.verdict = FAIL if failures else PASS
    report.detail = "; ".join(failures) or "A={} D={}".format(
        witness.factor_class.describe(), D.describe()
    )
    return report


#
# crown lemmas
#


def _rng(*key) -> random.Random:
    return random.Random("{}:{}".format(config["SAMPLE_SEED"], key))


def _socle_power(Lk: PermGroup, L: MonolithicGroup, k: int) -> SubgroupHandle:
    gens = [
        g for coordinate in crown_socle_generators(L, k) for g in coordinate
    ]
    return SubgroupHandle.generated_by(Lk, gens)


def _placed(g: Permutation, i: int, n: int, k: int) -> Permutation:
    images = list(range(n * k))
    images[i * n : (i + 1) * n] = [i * n + x for x in g.images]
    return Permutation.trusted(images)


def _socle_samples(Lk, L, k, samples, rng):
    """Named and random subgroups of N^k, as (label, handle)."""
    n = L.group.degree
    N = L.socle_handle
    out = []
    diagonal = [
        Permutation.trusted(
            [i * n + x for i in range(k) for x in s.images]
        )
        for s in N.generators
    ]
    out.append(("diag", SubgroupHandle.generated_by(Lk, diagonal)))
    for shift in range(min(2, n)):
        gens = []
        for i in range(k):
            point = (i * shift) % n
            stab = [
                N.parent.element(j)
                for j in N.indexes
                if N.parent.images[j, point] == point
            ]
            gens += [_placed(g, i, n, k) for g in stab]
        label = "stabilizers({})".format(
            ",".join(str((i * shift) % n + 1) for i in range(k))
        )
        out.append((label, SubgroupHandle.generated_by(Lk, gens)))
    socle = _socle_power(Lk, L, k).indexes
    for s in range(samples):
        picks = rng.sample(sorted(int(x) for x in socle), min(2, len(socle)))
        H = SubgroupHandle.generated_by(Lk, [Lk.element(j) for j in picks[:1]])
        if rng.random() < 0.5:
            H = SubgroupHandle.generated_by(
                Lk, [Lk.element(j) for j in picks]
            )
        out.append(("random{}".format(s), H))
    return out


def check_lemma_crown_socle(
    L: MonolithicGroup, k: int, samples: Optional[int] = None
) -> List[BoundReport]:
    """|N^k : H'| >= 5^k for core-free H' <= N^k in L_k."""
    if L.socle_is_abelian:
        raise PreconditionError("{} has an abelian socle".format(L.name))
    samples = config["LEMMA_SAMPLES"] if samples is None else samples
    Lk = crown_based_power(L, k)
    if not Lk.has_elements:
        return [_skip("lemma_crown_socle", Lk.name, "-", "element cap")]
    Nk = _socle_power(Lk, L, k)
    rows = []
    seen = set()
    rng = _rng("socle", L.name, k)
    for label, H in _socle_samples(Lk, L, k, samples, rng):
        if H.bits in seen:
            continue
        seen.add(H.bits)
        if not core_of_subgroup(Lk, H).is_trivial():
            logger.debug(
                "verify: sample {} of {} is not core-free".format(
                    label, Lk.name
                )
            )
            continue
        index = Nk.order // H.order
        rows.append(
            BoundReport(
                Lk.name,
                "{} {}".format(label, H.describe()),
                index=index,
                check="lemma_crown_socle",
                verdict=PASS if index >= 5**k else FAIL,
                detail="equality" if index == 5**k else "",
            )
        )
    return rows


def check_lemma_normal_dichotomy(L: MonolithicGroup, k: int) -> BoundReport:
    """Every normal M of L_k satisfies M <= N^k or N^k <= M."""
    Lk = crown_based_power(L, k)
    row = BoundReport(
        Lk.name, "N^{}".format(k), check="lemma_normal_dichotomy"
    )
    socle_gens = [
        g for coordinate in crown_socle_generators(L, k) for g in coordinate
    ]
    if Lk.has_elements:
        Nk = SubgroupHandle.generated_by(Lk, socle_gens)
        normals = normal_subgroups(Lk)
        bad = [M for M in normals if not (M <= Nk or Nk <= M)]
        described = [M.describe() for M in bad]
    else:
        if Lk.order > config["STREAMING_CAP"]:
            return _skip(row.check, Lk.name, row.H_descriptor, "streaming cap")
        Nk = PermGroup(socle_gens, Lk.degree, element_cap=0)
        normals = normal_subgroups_above_cap(Lk)
        bad = [
            M
            for M in normals
            if not (Nk.contains_group(M) or M.contains_group(Nk))
        ]
        described = [M.name for M in bad]
    row.verdict = FAIL if bad else PASS
    row.detail = "{} normal subgroups{}".format(
        len(normals), "; violations " + ", ".join(described) if bad else ""
    )
    return row


def check_case1_claim(
    L: MonolithicGroup, k: int, samples: Optional[int] = None
) -> BoundReport:
    """Sampled maximal subgroups of L_k contain >= k-2 minimal normals."""
    if L.socle_is_abelian:
        raise PreconditionError("{} has an abelian socle".format(L.name))
    samples = config["LEMMA_SAMPLES"] if samples is None else samples
    row = BoundReport("({})_{}".format(L.name, k), "sampled maximals")
    row.check = "case1_claim"
    if k <= 2:
        row.verdict = PASS
        row.detail = "vacuous for k <= 2"
        return row
    try:
        Lk = crown_based_power(L, k)
    except CapExceeded as e:
        return _skip(row.check, row.group_name, row.H_descriptor, e)
    if not Lk.has_elements:
        return _skip(row.check, Lk.name, row.H_descriptor, "element cap")
    minimal = [
        SubgroupHandle.generated_by(Lk, coordinate)
        for coordinate in crown_socle_generators(L, k)
    ]
    rng = _rng("case1", L.name, k)
    seeds = [Lk.trivial]
    for _ in range(samples):
        seeds.append(
            SubgroupHandle.generated_by(
                Lk, [Lk.element(rng.randrange(Lk.order))]
            )
        )
    distribution: Dict[int, int] = {}
    failed = False
    for K in seeds:
        if K.is_whole():
            continue
        M = greedy_maximal_overgroup(Lk, K)
        contained = sum(1 for N in minimal if N <= M)
        distribution[contained] = distribution.get(contained, 0) + 1
        failed |= contained < k - 2
    row.group_name = Lk.name
    row.verdict = FAIL if failed else PASS
    row.detail = "contained minimal normals: {}".format(
        ", ".join(
            "{}x{}".format(c, n) for c, n in sorted(distribution.items())
        )
    )
    logger.info("verify: case 1 claim on {}: {}".format(Lk.name, row.detail))
    return row


def check_crown_power_normals(L: MonolithicGroup, k: int) -> BoundReport:
    """
    L_k with nonabelian socle has exactly k minimal normal subgroups, pairwise
    G-equivalent and, for k >= 2, pairwise not G-isomorphic.
    """
    Lk = crown_based_power(L, k)
    row = BoundReport(Lk.name, "minimal normals", check="crown_power_normals")
    if not Lk.has_elements:
        return _skip(row.check, Lk.name, row.H_descriptor, "element cap")
    minimal = minimal_normal_subgroups(Lk)
    factors = [factor_of(Lk, N, Lk.trivial) for N in minimal]
    failures = []
    if len(minimal) != k:
        failures.append("{} minimal normals".format(len(minimal)))
    for A, B in zip(factors, factors[1:]):
        if not g_equivalent(Lk, A, B):
            failures.append("{} !~ {}".format(A.describe(), B.describe()))
        if g_isomorphic(Lk, A, B):
            failures.append("{} ≅_G {}".format(A.describe(), B.describe()))
    row.verdict = FAIL if failures else PASS
    row.detail = "; ".join(failures)
    return row


#
# per-group checks of the sotto suite
#


def check_sotto_properties(G: PermGroup) -> BoundReport:
    row = BoundReport(G.name, "-", check="sotto", soluble=is_soluble(G))
    if G.order == 1 or not frattini(G).is_trivial():
        row.detail = "Frattini subgroup not trivial"
        return row
    try:
        witness = _sotto(G)
    except CrownError as e:
        row.verdict = FAIL
        row.detail = str(e)
        return row
    D, R = witness.D, witness.R
    if G.order <= config["SOTTO_SCAN_ORDER"]:
        candidates = list(all_subgroups(G))
    else:
        rng = _rng("sotto", G.name)
        candidates = [
            SubgroupHandle.generated_by(
                G,
                [G.element(rng.randrange(G.order)) for _ in range(1 + s % 2)],
            )
            for s in range(config["SOTTO_SAMPLES"])
        ]
    bad = [
        K
        for K in candidates
        if not K.is_whole()
        and K.join(D).is_whole()
        and K.join(R).is_whole()
    ]
    row.H_descriptor = "A={} D={}".format(
        witness.factor_class.describe(), D.describe()
    )
    row.verdict = FAIL if bad else PASS
    row.detail = "{} subgroups scanned".format(len(candidates))
    if bad:
        row.detail += "; G=KD=KR for K={}".format(bad[0].describe())
    return row


def all_chief_factors(G: PermGroup):
    normals = normal_subgroups(G)
    factors = []
    for Y in normals:
        for X in normals:
            if Y < X and not any(Y < N < X for N in normals):
                factors.append(factor_of(G, X, Y))
    return factors


def check_equivalence_relation(G: PermGroup) -> BoundReport:
    row = BoundReport(G.name, "chief factors", check="equivalence_relation")
    factors = all_chief_factors(G)
    n = len(factors)
    rel = [[g_equivalent(G, A, B) for B in factors] for A in factors]
    failures = []
    for i in range(n):
        if not rel[i][i]:
            failures.append(
                "not reflexive at {}".format(factors[i].describe())
            )
        for j in range(n):
            if rel[i][j] != rel[j][i]:
                failures.append("not symmetric")
            for m in range(n):
                if rel[i][j] and rel[j][m] and not rel[i][m]:
                    failures.append("not transitive")
    row.verdict = FAIL if failures else PASS
    row.detail = "{} factors{}".format(
        n, "; " + failures[0] if failures else ""
    )
    return row


def check_crowns(G: PermGroup) -> List[BoundReport]:
    """Crown reconstruction and delta under two chief series seeds."""
    rows = []
    for A in factor_classes(G):
        subject = A.describe()
        if G.order <= config["SCOPE_ALL_ORDER"]:
            row = BoundReport(G.name, subject, check="crown_reconstruction")
            try:
                crown = compute_crown(G, A)
                row.verdict = PASS
                row.detail = "delta={} |R|={} |I|={}".format(
                    crown.delta, crown.R.order, crown.I.order
                )
            except CrownError as e:
                row.verdict = FAIL
                row.detail = str(e)
            rows.append(row)
        first, second = delta_count(G, A, seed=0), delta_count(G, A, seed=1)
        rows.append(
            BoundReport(
                G.name,
                subject,
                check="delta_invariance",
                verdict=PASS if first == second else FAIL,
                detail="delta={},{}".format(first, second),
            )
        )
    return rows


def check_block_correspondence(G: PermGroup) -> BoundReport:
    row = BoundReport(G.name, "G_1", check="blocks")
    try:
        found = len(maximal_block_systems(G, 0))
        expected = oracle_maximal_system_count(G, 0)
    except (NotTransitive, OracleTooLarge) as e:
        return _skip(row.check, G.name, row.H_descriptor, e)
    row.verdict = PASS if found == expected else FAIL
    row.detail = "{} maximal systems, oracle {}".format(found, expected)
    return row


#
# running suites
#


def report_header(suite: str, entries: Sequence[CatalogEntry]) -> Dict:
    values = [k**2 / 5 ** (3 * (k - 2) / 2) for k in range(1, 21)]
    holds = [k for k, v in enumerate(values, start=1) if v <= 11]
    return {
        "crownkit": __version__,
        "suite": suite,
        "entries": len(entries),
        "a_prime": float(sympy.zeta(sympy.Rational(3, 2))),
        "c": "not explicit",
        "a": "not explicit: a = 11*c*a_prime/(1 - 2^(-3/2))",
        "k2_over_5_power_max": round(max(values), 12),
        "k2_over_5_power_le_11": "k={}..20; k=1 gives {:.6f}".format(
            min(holds), values[0]
        )
        if len(holds) < len(values)
        else "k=1..20",
    }


def _entry_rows(entry: CatalogEntry, suites, scope, strict, max_order):
    G = entry.group()
    if max_order is not None and G.order > max_order:
        logger.info("verify: {} above --max-order, skipped".format(G.name))
        return []
    if not G.has_elements:
        return [_skip("entry", G.name, "-", "element cap")]
    rows = []
    try:
        if "soluble" in suites or "ratio" in suites:
            soluble = is_soluble(G)
            if strict and "soluble" in suites and not soluble:
                raise InsolubleEntry("{} is not soluble".format(G.name))
            rows += _bound_rows(G, scope, with_verdict="soluble" in suites)
        if "sotto" in suites:
            rows.append(check_sotto_properties(G))
            if G.order <= config["SCOPE_CONJUGACY_ORDER"] and G.order > 1:
                rows += check_crowns(G)
                rows.append(check_equivalence_relation(G))
            if G.order <= config["SCOPE_ALL_ORDER"]:
                for H in subgroup_scope(G, "all"):
                    rows.append(check_reductions(G, H))
                    rows.append(sigma_rho_report(G, H))
        if "blocks" in suites and G.degree <= 7 and G.is_transitive():
            rows.append(check_block_correspondence(G))
    except CapExceeded as e:
        rows.append(_skip("entry", G.name, "-", e))
    return rows


def _lemma_rows(entry: CatalogEntry):
    try:
        L = monolithic_group(entry.group())
    except NotMonolithic:
        return []
    except CrownkitError as e:
        logger.info("verify: {} not used as L: {}".format(entry.name, e))
        return []
    rows = []
    for k in (1, 2, 3):
        try:
            rows.append(check_lemma_normal_dichotomy(L, k))
            if not L.socle_is_abelian:
                rows += check_lemma_crown_socle(L, k)
                rows.append(check_case1_claim(L, k))
                if k >= 2:
                    rows.append(check_crown_power_normals(L, k))
        except CapExceeded as e:
            rows.append(_skip("lemmas", "({})_{}".format(L.name, k), "-", e))
    return rows


def _run_task(task):
    kind, entry, options = task
    if kind == "lemmas":
        return _lemma_rows(entry)
    return _entry_rows(entry, **options)


def _init_worker(settings):
    config.update(settings)


@dataclass
class VerifyResult:
    header: Dict
    rows: List[BoundReport]
    summary: Optional[RatioSummary] = None

    @property
    def failures(self) -> List[BoundReport]:
        return [r for r in self.rows if r.verdict == FAIL]


def run_suite(
    entries: Sequence[CatalogEntry],
    suite: str = "all",
    jobs: Optional[int] = None,
    scope: str = "auto",
    strict: bool = False,
    max_order: Optional[int] = None,
    baseline: Optional[str] = None,
) -> VerifyResult:
    suites = SUITES if suite == "all" else (suite,)
    if any(s not in SUITES for s in suites):
        raise CrownkitError("unknown suite {!r}".format(suite))
    jobs = config["JOBS"] if jobs is None else jobs
    options = dict(
        suites=suites, scope=scope, strict=strict, max_order=max_order
    )
    tasks = [("entry", entry, options) for entry in entries]
    if "lemmas" in suites:
        tasks += [
            ("lemmas", entry, None)
            for entry in entries
            if entry.group(element_cap=0).order <= config["LEMMA_MAX_ORDER"]
        ]
    if jobs > 1:
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(dict(config),),
        ) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(task) for task in tasks]
    rows = sorted(
        (row for result in results for row in result), key=BoundReport.sort_key
    )
    result = VerifyResult(report_header(suite, entries), rows)
    if "ratio" in suites:
        result.summary = RatioSummary.from_reports(
            [r for r in rows if r.check == "bound"]
        )
        result.header["max_ratio"] = round(result.summary.max_ratio, 12)
        result.header["max_ratio_witness"] = " ".join(result.summary.witness)
        baseline = baseline or config["RATIO_BASELINE"]
        if baseline:
            result.rows.append(check_ratio_baseline(result.summary, baseline))
    logger.info(
        "verify: {} rows, {} failures".format(len(rows), len(result.failures))
    )
    return result


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return "{:.6f}".format(value)
    return str(value)


def write_report(result: VerifyResult, path: str):
    if path.endswith(".json"):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(
                {
                    "header": result.header,
                    "rows": [r.as_dict() for r in result.rows],
                },
                f,
                sort_keys=True,
                indent=1,
                ensure_ascii=False,
            )
            f.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        for key in sorted(result.header):
            f.write("# {}\t{}\n".format(key, result.header[key]))
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(TSV_COLUMNS)
        for r in result.rows:
            row = r.as_row()
            writer.writerow([_cell(row[c]) for c in TSV_COLUMNS])
