"""Witness searches and audits for the commutation conditions on grading groups.

Bounded searches never claim nonexistence on their own: an exhausted search
is inconclusive unless a closed-form certificate is attached.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import StrEnum
from math import prod

from sympy import lcm

from graded_goldie.constants import DEFAULT_M_MAX, DEFAULT_N_MAX, DEFAULT_ORDER_BOUND, DEFAULT_SEED
from graded_goldie.exceptions import FamilyMismatch, PremiseViolated
from graded_goldie.groups import (
    BaumslagSolitarGroup,
    FiniteGroup,
    InfiniteDihedralGroup,
    RestrictedDihedralGroup,
)

logger = logging.getLogger(__name__)


class SearchKind(StrEnum):
    FOUND = "found"
    EXHAUSTED_BOUND = "exhausted_bound"
    VIOLATION_FOUND = "violation_found"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a bounded search.

    ``certificate`` is a closed-form argument that upgrades an exhausted
    search to a proof for every exponent, not just those searched.
    """

    kind: SearchKind
    witness: object = None
    bound: object = None
    certificate: str | None = None

    @property
    def found(self):
        return self.kind is SearchKind.FOUND

    @property
    def exhausted(self):
        return self.kind is SearchKind.EXHAUSTED_BOUND

    @property
    def conclusive(self):
        return not self.exhausted or self.certificate is not None

    def to_dict(self, group):
        result = {"kind": str(self.kind)}
        if self.witness is not None:
            result["witness"] = self.witness.to_dict(group) if hasattr(self.witness, "to_dict") else self.witness
        if self.bound is not None:
            result["bound"] = list(self.bound) if isinstance(self.bound, tuple) else self.bound
        if self.certificate is not None:
            result["certificate"] = self.certificate
        return result


@dataclass(frozen=True)
class Cond2Witness:
    g: object
    h: object
    n: int

    def verify(self, group):
        hn = group.power(self.h, self.n)
        return group.multiply(self.g, hn) == group.multiply(hn, self.g)

    def to_dict(self, group):
        return {"g": group.format(self.g), "h": group.format(self.h), "n": self.n}


@dataclass(frozen=True)
class Cond2PrimeWitness:
    g: object
    h: object
    m: int
    n: int

    def verify(self, group):
        return group.multiply(self.g, group.power(self.h, self.m)) == group.multiply(
            group.power(self.h, self.n), self.g
        )

    def to_dict(self, group):
        return {"g": group.format(self.g), "h": group.format(self.h), "m": self.m, "n": self.n}


@dataclass(frozen=True)
class PowerPair:
    """h^k = g h^l g^-1."""

    g: object
    h: object
    k: int
    l: int  # noqa: E741

    def verify(self, group):
        return group.power(self.h, self.k) == group.conjugate(self.g, group.power(self.h, self.l))

    def to_dict(self, group):
        return {"g": group.format(self.g), "h": group.format(self.h), "k": self.k, "l": self.l}


@dataclass(frozen=True)
class AlignmentResult:
    """Minimal steps k_i with h_i^k_i = h_(i+1)^k_i and their product k."""

    h_list: tuple
    k_steps: tuple
    k: int

    def common_power(self, group):
        return group.power(self.h_list[0], self.k)

    def verify(self, group):
        target = self.common_power(group)
        return all(group.power(h, self.k) == target for h in self.h_list)

    def to_dict(self, group):
        return {
            "h_list": [group.format(h) for h in self.h_list],
            "k_steps": list(self.k_steps),
            "k": self.k,
            "common_power": group.format(self.common_power(group)),
        }


def _is_rotation(group, x):
    return isinstance(group, InfiniteDihedralGroup) and x.flip == 0 and x.k != 0


def _is_reflection(group, x):
    return isinstance(group, InfiniteDihedralGroup) and x.flip == 1


def _is_translation(group, x):
    return isinstance(group, BaumslagSolitarGroup) and x.p == 0 and x.q != 0


def _is_dilation(group, x):
    return isinstance(group, BaumslagSolitarGroup) and x.p != 0 and x.q == 0


def never_commuting_powers_certificate(group, g, h):
    """Closed-form reason why g h^n != h^n g for every n >= 1, if one is known."""
    if _is_reflection(group, g) and _is_rotation(group, h):
        return "g h^n g^-1 = h^-n differs from h^n for every n >= 1 (g a reflection, h a nontrivial rotation)"
    if _is_translation(group, g) and _is_dilation(group, h):
        return (
            "g h^n g^-1 is x -> 2^(pn) x + q(1 - 2^(pn)) with q != 0, never the pure dilation h^n "
            "(g translation by q, h dilation by 2^p)"
        )
    if _is_dilation(group, g) and _is_translation(group, h):
        return "g h^n g^-1 is translation by 2^p n q, never n q (g dilation by 2^p, h translation by q != 0)"
    return None


def no_twisted_powers_certificate(group, g, h):
    """Closed-form reason why g h^l g^-1 != h^k for all k, l >= 1, if one is known."""
    if _is_reflection(group, g) and _is_rotation(group, h):
        return "g h^l g^-1 = h^-l and h^-l = h^k forces k = -l, impossible for k, l >= 1"
    if _is_translation(group, g) and _is_dilation(group, h):
        return (
            "g h^l g^-1 is x -> 2^(pl) x + q(1 - 2^(pl)) with nonzero translation part, "
            "while every h^k is a pure dilation"
        )
    return None


def cond2_witness(group, g, h, n_max=DEFAULT_N_MAX):
    """Search the minimal n in 1..n_max with g h^n = h^n g.

    Raises:
        FamilyMismatch: If g or h is not an element of the group.
    """
    group.check(g, h)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    hn = group.identity
    for n in range(1, n_max + 1):
        hn = group.multiply(hn, h)
        if group.multiply(g, hn) == group.multiply(hn, g):
            return SearchOutcome(SearchKind.FOUND, witness=Cond2Witness(g, h, n))
    certificate = never_commuting_powers_certificate(group, g, h)
    logger.debug("cond2 search exhausted at %d for g=%s h=%s", n_max, group.format(g), group.format(h))
    return SearchOutcome(SearchKind.EXHAUSTED_BOUND, bound=n_max, certificate=certificate)


def cond2prime_witness(group, g, h, m_max=DEFAULT_M_MAX, n_max=DEFAULT_M_MAX):
    """Search the lexicographically minimal (m, n) with g h^m = h^n g.

    Raises:
        FamilyMismatch: If g or h is not an element of the group.
    """
    group.check(g, h)
    if m_max < 1 or n_max < 1:
        raise ValueError("bounds must be positive")
    right = {}
    hn = group.identity
    for n in range(1, n_max + 1):
        hn = group.multiply(hn, h)
        right.setdefault(group.multiply(hn, g), n)
    hm = group.identity
    for m in range(1, m_max + 1):
        hm = group.multiply(hm, h)
        n = right.get(group.multiply(g, hm))
        if n is not None:
            return SearchOutcome(SearchKind.FOUND, witness=Cond2PrimeWitness(g, h, m, n))
    certificate = no_twisted_powers_certificate(group, g, h)
    return SearchOutcome(SearchKind.EXHAUSTED_BOUND, bound=(m_max, n_max), certificate=certificate)


def conjugate_power_obstruction(group, g, h, k_max=DEFAULT_M_MAX, l_max=DEFAULT_M_MAX):
    """Look for k, l >= 1 with h^k = g h^l g^-1.

    Returns VIOLATION_FOUND with the lexicographically minimal (k, l) when the
    obstruction fails, otherwise EXHAUSTED_BOUND (with a certificate for the
    built-in counterexample groups).

    Raises:
        FamilyMismatch: If g or h is not an element of the group.
    """
    group.check(g, h)
    if k_max < 1 or l_max < 1:
        raise ValueError("bounds must be positive")
    g_inv = group.inverse(g)
    conjugates = {}
    hl = group.identity
    for l in range(1, l_max + 1):  # noqa: E741
        hl = group.multiply(hl, h)
        conjugates.setdefault(group.multiply(group.multiply(g, hl), g_inv), l)
    hk = group.identity
    for k in range(1, k_max + 1):
        hk = group.multiply(hk, h)
        if hk in conjugates:
            return SearchOutcome(SearchKind.VIOLATION_FOUND, witness=PowerPair(g, h, k, conjugates[hk]))
    certificate = no_twisted_powers_certificate(group, g, h)
    return SearchOutcome(SearchKind.EXHAUSTED_BOUND, bound=(k_max, l_max), certificate=certificate)


def _require_restricted_dihedral(group):
    if not isinstance(group, RestrictedDihedralGroup):
        raise FamilyMismatch(f"{group.name} is not the restricted dihedral product")


def klyachko_exponent(group, g):
    """n = 2 * prod(2j + 1) over the reflection coordinates j of g (2 when g has none)."""
    _require_restricted_dihedral(group)
    group.check(g)
    return 2 * prod(group.modulus(j) for j in g.flips)


def klyachko_verify(group, g, h):
    """Whether g commutes with h^n for the exponent n of g."""
    n = klyachko_exponent(group, g)
    return group.commutes(g, group.power(h, n))


def center_triviality_probe(group, g):
    """A partner h with g h != h g, or None when g is the identity.

    A reflection coordinate of g does not commute with the unit rotation there;
    a nontrivial rotation coordinate does not commute with the reflection there.
    """
    _require_restricted_dihedral(group)
    group.check(g)
    if g == group.identity:
        return None
    if g.flips:
        h = group.symbol(f"r{g.flips[0]}")
    else:
        rotated = [i for i, amount, _ in g.exceptions if amount]
        if rotated:
            i = rotated[0]
        else:
            # pure tail rotation c: any coordinate with 2i+1 > 2|c| rotates nontrivially
            i = max([abs(g.tail)] + [j for j, _, _ in g.exceptions]) + 1
        h = group.symbol(f"s{i}")
    if group.commutes(g, h):
        raise AssertionError(f"center probe partner {group.format(h)} commutes with {group.format(g)}")
    return h


@dataclass
class KlyachkoSurvey:
    samples: int
    failures: list = field(default_factory=list)
    max_exponent: int = 0
    tail_order: object = None
    center_samples: int = 0
    center_failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures and not self.center_failures and self.tail_order.is_infinite

    def to_dict(self):
        return {
            "samples": self.samples,
            "failures": self.failures,
            "max_exponent": self.max_exponent,
            "tail_order": self.tail_order.to_dict(),
            "center_samples": self.center_samples,
            "center_failures": self.center_failures,
        }


def klyachko_survey(group, samples=100, max_flips=3, seed=DEFAULT_SEED, center_samples=50):
    """Check the exponent formula on random pairs and probe the center.

    Also certifies that the unit tail rotation ``r`` has infinite order.
    """
    _require_restricted_dihedral(group)
    rng = random.Random(seed)
    survey = KlyachkoSurvey(samples=samples, center_samples=center_samples)
    for _ in range(samples):
        g = group.random_element(rng, radius=4, max_flips=max_flips)
        h = group.random_element(rng, radius=5, max_flips=5)
        n = klyachko_exponent(group, g)
        survey.max_exponent = max(survey.max_exponent, n)
        if not klyachko_verify(group, g, h):
            survey.failures.append({"g": group.format(g), "h": group.format(h), "n": n})
    survey.tail_order = group.element_order(group.symbol("r"), DEFAULT_ORDER_BOUND)
    probed = 0
    while probed < center_samples:
        g = group.random_element(rng, radius=4, max_flips=max_flips)
        if g == group.identity:
            continue
        probed += 1
        try:
            center_triviality_probe(group, g)
        except AssertionError as e:
            survey.center_failures.append({"g": group.format(g), "error": str(e)})
    logger.info(
        "Klyachko survey: %d pairs, %d failures, max exponent %d", samples, len(survey.failures), survey.max_exponent
    )
    return survey


@dataclass
class StarReport:
    premise: dict
    steps: list
    first_failure: int | None = None

    @property
    def passed(self):
        return self.first_failure is None

    def to_dict(self):
        return {"premise": self.premise, "steps": self.steps, "first_failure": self.first_failure}


def star_induction_check(group, g, h, m, n, d_max):
    """Check g^d h^(m^d) g^-d = h^(n^d) for d = 1..d_max.

    Raises:
        PremiseViolated: If g h^m g^-1 != h^n.
    """
    group.check(g, h)
    if group.conjugate(g, group.power(h, m)) != group.power(h, n):
        raise PremiseViolated(
            f"g h^{m} g^-1 != h^{n} for g={group.format(g)}, h={group.format(h)}"
        )
    report = StarReport(
        premise={"g": group.format(g), "h": group.format(h), "m": m, "n": n},
        steps=[],
    )
    for d in range(1, d_max + 1):
        lhs = group.conjugate(group.power(g, d), group.power(h, m**d))
        holds = lhs == group.power(h, n**d)
        report.steps.append({"d": d, "holds": holds})
        if not holds and report.first_failure is None:
            report.first_failure = d
    return report


@dataclass
class FiniteGroupAnalysis:
    commutator_subgroup: frozenset
    center: frozenset
    centralizers: dict
    k: int
    index_cent_gprime: int
    exponent: int

    @property
    def bound(self):
        return self.k ** (self.k - 1)

    @property
    def bound_holds(self):
        return self.index_cent_gprime <= self.bound

    def to_dict(self, group):
        def labels(elements):
            return sorted(group.format(x) for x in elements)

        return {
            "commutator_subgroup": labels(self.commutator_subgroup),
            "center": labels(self.center),
            "centralizer_orders": {group.format(x): len(c) for x, c in self.centralizers.items()},
            "k": self.k,
            "index_cent_gprime": self.index_cent_gprime,
            "bound": self.bound,
            "bound_holds": self.bound_holds,
            "exponent": self.exponent,
        }


def _require_finite(group):
    if not isinstance(group, FiniteGroup):
        raise FamilyMismatch(f"{group.name} is not a finite group")


def _generated_subgroup(group, generators):
    subgroup = {group.identity}
    frontier = list(subgroup)
    while frontier:
        x = frontier.pop()
        for s in generators:
            y = group.multiply(x, s)
            if y not in subgroup:
                subgroup.add(y)
                frontier.append(y)
    return frozenset(subgroup)


def finite_group_analysis(group):
    """Commutator subgroup, center, centralizers and exponent of a finite group."""
    _require_finite(group)
    elements = group.elements()
    commutators = {group.commutator(x, y) for x in elements for y in elements}
    gprime = _generated_subgroup(group, commutators)
    centralizers = {x: frozenset(y for y in elements if group.commutes(x, y)) for x in elements}
    center = frozenset(x for x in elements if len(centralizers[x]) == len(elements))
    cent_gprime = frozenset.intersection(*(centralizers[x] for x in gprime))
    exponent = int(lcm([group.element_order(x, group.order).n for x in elements]))
    return FiniteGroupAnalysis(
        commutator_subgroup=gprime,
        center=center,
        centralizers=centralizers,
        k=len(gprime),
        index_cent_gprime=len(elements) // len(cent_gprime),
        exponent=exponent,
    )


@dataclass
class Remark1Audit:
    k: int
    n_claimed: int
    holds_uniformly: bool
    counterexample_pair: tuple | None
    minimal_uniform_n: int
    pairs_checked: int

    def to_dict(self, group):
        pair = None
        if self.counterexample_pair:
            g, h = self.counterexample_pair
            pair = {"g": group.format(g), "h": group.format(h)}
        return {
            "k": self.k,
            "n_claimed": self.n_claimed,
            "holds_uniformly": self.holds_uniformly,
            "counterexample_pair": pair,
            "minimal_uniform_n": self.minimal_uniform_n,
            "pairs_checked": self.pairs_checked,
        }


def remark1_bound_audit(group):
    """Test g h^(k^k) = h^(k^k) g over all pairs, k = |G'|.

    A failure is a finding about the k^k bound, reported with the first
    failing pair and the smallest n that works uniformly.
    """
    analysis = finite_group_analysis(group)
    n_claimed = analysis.k**analysis.k
    elements = group.elements()
    counterexample = None
    for g in elements:
        for h in elements:
            hn = group.power(h, n_claimed)
            if not group.commutes(g, hn):
                counterexample = (g, h)
                break
        if counterexample:
            break
    minimal = next(
        n
        for n in range(1, analysis.exponent + 1)
        if all(group.power(h, n) in analysis.center for h in elements)
    )
    if counterexample:
        logger.warning(
            "Bound n=%d fails in %s for g=%s h=%s; minimal uniform n=%d",
            n_claimed,
            group.name,
            group.format(counterexample[0]),
            group.format(counterexample[1]),
            minimal,
        )
    return Remark1Audit(
        k=analysis.k,
        n_claimed=n_claimed,
        holds_uniformly=counterexample is None,
        counterexample_pair=counterexample,
        minimal_uniform_n=minimal,
        pairs_checked=len(elements) ** 2,
    )


def _alignment_certificate(group, x, y):
    if _is_rotation(group, x) and _is_rotation(group, y) and x != y:
        return "consecutive degrees are distinct rotations r^a, r^b and r^(ak) = r^(bk) forces a = b"
    return None


def degree_alignment(group, h_list, step_bound=DEFAULT_M_MAX):
    """Find minimal k_i <= step_bound with h_i^k_i = h_(i+1)^k_i.

    Returns FOUND with an AlignmentResult (k is the product of the steps and
    every h_i^k coincides) or EXHAUSTED_BOUND naming the failing step.
    """
    h_list = tuple(h_list)
    if not h_list:
        raise ValueError("degree list must be nonempty")
    group.check(*h_list)
    steps = []
    for i, (x, y) in enumerate(zip(h_list, h_list[1:])):
        xk, yk = group.identity, group.identity
        for k in range(1, step_bound + 1):
            xk, yk = group.multiply(xk, x), group.multiply(yk, y)
            if xk == yk:
                steps.append(k)
                break
        else:
            return SearchOutcome(
                SearchKind.EXHAUSTED_BOUND,
                witness={"step": i + 1, "h_i": group.format(x), "h_next": group.format(y)},
                bound=step_bound,
                certificate=_alignment_certificate(group, x, y),
            )
    result = AlignmentResult(h_list, tuple(steps), prod(steps))
    if not result.verify(group):
        raise AssertionError("aligned powers disagree")
    return SearchOutcome(SearchKind.FOUND, witness=result)


@dataclass
class CaseAnalysis:
    case: str
    identities: list
    order: object
    conclusion: dict

    @property
    def violations(self):
        return [i["name"] for i in self.identities if not i["holds"]]

    def to_dict(self):
        return {
            "case": self.case,
            "identities": self.identities,
            "order": self.order.to_dict(),
            "conclusion": self.conclusion,
        }


def case_analysis_check(group, g, h, k, l, m, n, order_bound=DEFAULT_ORDER_BOUND):  # noqa: E741
    """Instance check of the argument that turns h g^k h^-1 = g^l, g h^m g^-1 = h^n into m = n.

    Every intermediate identity is evaluated exactly. When h has structurally
    infinite order the exponents must agree; otherwise only the residual
    congruence modulo the order of h is reported.

    Raises:
        PremiseViolated: If either premise fails.
    """
    group.check(g, h)
    if group.conjugate(h, group.power(g, k)) != group.power(g, l):
        raise PremiseViolated(f"h g^{k} h^-1 != g^{l}")
    if group.conjugate(g, group.power(h, m)) != group.power(h, n):
        raise PremiseViolated(f"g h^{m} g^-1 != h^{n}")

    def hp(e):
        return group.power(h, e)

    def conj_g(d, x):
        return group.conjugate(group.power(g, d), x)

    identities = []
    if k == l:
        case = "k=l"
        identities.append({"name": "h g^k = g^k h", "holds": group.commutes(h, group.power(g, k))})
        identities.append({"name": "h^(n^k) = h^(m^k)", "holds": hp(n**k) == hp(m**k)})
        lhs, rhs = m**k, n**k
    else:
        case = "k>l" if k > l else "k<l"
        lo, hi = min(k, l), max(k, l)
        identities.append({"name": "star at d=max(k,l)", "holds": conj_g(hi, hp(m**hi)) == hp(n**hi)})
        identities.append({"name": "g^lo h^(m^hi) g^-lo = h^(n^hi)", "holds": conj_g(lo, hp(m**hi)) == hp(n**hi)})
        identities.append(
            {
                "name": "h^(n^hi) = g^lo h^(m^lo n^(hi-lo)) g^-lo",
                "holds": hp(n**hi) == conj_g(lo, hp(m**lo * n ** (hi - lo))),
            }
        )
        identities.append(
            {"name": "h^(m^hi) = h^(m^lo n^(hi-lo))", "holds": hp(m**hi) == hp(m**lo * n ** (hi - lo))}
        )
        lhs, rhs = m**hi, m**lo * n ** (hi - lo)
    order = group.element_order(h, order_bound)
    if order.is_infinite:
        conclusion = {"m_equals_n": m == n}
    elif order.is_finite:
        conclusion = {"modulus": order.n, "congruence_holds": (lhs - rhs) % order.n == 0, "m_equals_n": m == n}
    else:
        conclusion = {"undetermined": True}
    return CaseAnalysis(case=case, identities=identities, order=order, conclusion=conclusion)


@dataclass
class MnConclusionAudit:
    pairs_checked: int = 0
    violations: list = field(default_factory=list)
    unequal_exponents: int = 0
    missing_premises: int = 0

    def to_dict(self):
        return {
            "pairs_checked": self.pairs_checked,
            "violations": self.violations,
            "unequal_exponents": self.unequal_exponents,
            "missing_premises": self.missing_premises,
        }


def mn_conclusion_audit(group, bound=None):
    """Run case_analysis_check on every pair of a finite group with minimal premise exponents."""
    _require_finite(group)
    bound = bound or group.order
    audit = MnConclusionAudit()
    for g in group.elements():
        for h in group.elements():
            first = cond2prime_witness(group, h, g, bound, bound)
            second = cond2prime_witness(group, g, h, bound, bound)
            if not (first.found and second.found):
                audit.missing_premises += 1
                continue
            k, l = first.witness.m, first.witness.n  # noqa: E741
            m, n = second.witness.m, second.witness.n
            analysis = case_analysis_check(group, g, h, k, l, m, n, group.order)
            audit.pairs_checked += 1
            if m != n:
                audit.unequal_exponents += 1
            if analysis.violations or not analysis.conclusion.get("congruence_holds", True):
                audit.violations.append(
                    {"g": group.format(g), "h": group.format(h), "failed": analysis.violations}
                )
    return audit
