"""Homogeneous annihilators, regularity certificates and the regular-element constructions.

Every search runs inside an explicit degree window. A search that finds
nothing says so (REGULAR_UP_TO_BOUND, strict-up-to-window) and never turns
into a global claim on its own.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import StrEnum

from graded_goldie.conditions import degree_alignment
from graded_goldie.constants import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_ORDER_BOUND,
    DEFAULT_SEED,
    MAX_SHAPE_BASIS,
    WINDOW_CAP,
)
from graded_goldie.exceptions import (
    AlignmentExhausted,
    ExhaustedBound,
    InfiniteOrderDegree,
    InstanceMismatch,
    NonConjugateDegrees,
    NotHomogeneous,
    PremiseViolated,
    VanishingCandidate,
    WindowTooLarge,
)
from graded_goldie.linalg import combine, nullspace_vectors, solve, span_equal
from graded_goldie.rings import GradedMatrixRing, degree_of, random_homogeneous, window

logger = logging.getLogger(__name__)

RIGHT = "right"
LEFT = "left"


def _check_window(total):
    if total > WINDOW_CAP:
        raise WindowTooLarge(f"search window holds {total} basis elements, cap is {WINDOW_CAP}")


def _side_product(ring, a, x, side):
    return ring.mul(a, x) if side == RIGHT else ring.mul(x, a)


@dataclass
class AnnihilatorBasis:
    element: object
    side: str
    degrees: tuple
    bound: int
    basis: list = field(default_factory=list)

    def values(self):
        return [b.value for b in self.basis]

    def to_dict(self):
        ring = self.element.ring
        return {
            "element": self.element.format(),
            "side": self.side,
            "degrees": [ring.format_degree(d) for d in self.degrees],
            "bound": self.bound,
            "basis": [b.format() for b in self.basis],
        }


def annihilator_solve(ring, a, side=RIGHT, bound=DEFAULT_MAX_DEGREE, degrees=None):
    """Basis of the homogeneous x in the window with a x = 0 (right) or x a = 0 (left).

    Raises:
        WindowTooLarge: If the window exceeds the configured cap.
    """
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be '{RIGHT}' or '{LEFT}'")
    components = ring.components(bound)
    degrees = tuple(components if degrees is None else degrees)
    _check_window(sum(len(components.get(d, [])) for d in degrees))
    result = AnnihilatorBasis(a, side, degrees, bound)
    for sigma in degrees:
        basis = components.get(sigma, [])
        if not basis:
            continue
        images = [_side_product(ring, a.value, b, side) for b in basis]
        for vec in nullspace_vectors(ring, images):
            x = combine(ring, basis, vec)
            if not ring.is_zero(_side_product(ring, a.value, x, side)):
                raise AssertionError("annihilator solution does not verify")
            result.basis.append(ring.element(x))
    logger.debug("%s annihilator of %s: %d basis elements", side, a.format(), len(result.basis))
    return result


class Verdict(StrEnum):
    GLOBAL_UNIT = "global_unit"
    ZERO_DIVISOR = "zero_divisor"
    REGULAR_UP_TO_BOUND = "regular_up_to_bound"


@dataclass(frozen=True)
class RegularityCertificate:
    """Unit with exhibited inverse, zero divisor with cofactor, or regular within a window.

    ``reason`` upgrades a bounded verdict when a global argument applies
    (nonzero elements of an integral domain are regular).
    """

    element: object
    verdict: Verdict
    inverse: object = None
    witness: object = None
    side: str | None = None
    bound: int | None = None
    reason: str | None = None

    @property
    def is_unit(self):
        return self.verdict is Verdict.GLOBAL_UNIT

    @property
    def is_zero_divisor(self):
        return self.verdict is Verdict.ZERO_DIVISOR

    @property
    def conclusive(self):
        return self.verdict is not Verdict.REGULAR_UP_TO_BOUND or self.reason is not None

    def verify(self):
        ring = self.element.ring
        one = ring.element(ring.one())
        if self.is_unit:
            return self.element * self.inverse == one and self.inverse * self.element == one
        if self.is_zero_divisor:
            product = self.element * self.witness if self.side == RIGHT else self.witness * self.element
            return product.is_zero and not self.witness.is_zero
        return True

    def to_dict(self):
        result = {"element": self.element.format(), "verdict": str(self.verdict)}
        if self.inverse is not None:
            result["inverse"] = self.inverse.format()
        if self.witness is not None:
            result["witness"] = self.witness.format()
            result["side"] = self.side
        if self.bound is not None:
            result["bound"] = self.bound
        if self.reason is not None:
            result["reason"] = self.reason
        return result


def regularity_certify(ring, a, bound=DEFAULT_MAX_DEGREE):
    """Classify a nonzero homogeneous element as unit, zero divisor or regular up to bound.

    Raises:
        NotHomogeneous: If ``a`` is zero or not homogeneous.
    """
    degree_of(a)
    inv = ring.invert_value(a.value)
    if inv is not None and ring.contains_value(inv):
        inverse = ring.element(inv)
        cert = RegularityCertificate(a, Verdict.GLOBAL_UNIT, inverse=inverse)
        if cert.verify():
            return cert
    mask = getattr(ring, "mask_witness", None)
    found = mask(a.value) if mask else None
    if found:
        side, cofactor = found
        return RegularityCertificate(a, Verdict.ZERO_DIVISOR, witness=ring.element(cofactor), side=side)
    for side in (RIGHT, LEFT):
        ann = annihilator_solve(ring, a, side, bound)
        if ann.basis:
            return RegularityCertificate(a, Verdict.ZERO_DIVISOR, witness=ann.basis[0], side=side)
    reason = "nonzero element of an integral domain" if ring.is_domain else None
    return RegularityCertificate(a, Verdict.REGULAR_UP_TO_BOUND, bound=bound, reason=reason)


@dataclass
class CensusEntry:
    degree: object
    shape: tuple
    certificate: RegularityCertificate


def _is_scalar_diagonal(ring, value):
    if not isinstance(ring, GradedMatrixRing):
        return False
    identity = ring.group.identity
    for i, row in enumerate(value):
        for j, x in enumerate(row):
            if i != j and not ring.base.is_zero(x):
                return False
            if i == j and set(ring.base.split(x)) - {identity}:
                return False
    return True


@dataclass
class CensusReport:
    ring: object = field(repr=False)
    window: object = None
    entries: list = field(default_factory=list)

    @property
    def units(self):
        return [e for e in self.entries if e.certificate.is_unit]

    @property
    def zero_divisors(self):
        return [e for e in self.entries if e.certificate.is_zero_divisor]

    @property
    def inconclusive(self):
        return [e for e in self.entries if e.certificate.verdict is Verdict.REGULAR_UP_TO_BOUND]

    @property
    def unit_degrees(self):
        degrees = []
        for e in self.units:
            if e.degree not in degrees:
                degrees.append(e.degree)
        return degrees

    @property
    def units_at_identity_only(self):
        return all(e.degree == self.ring.group.identity for e in self.units)

    @property
    def scalar_diagonal_only(self):
        return all(_is_scalar_diagonal(self.ring, e.certificate.element.value) for e in self.units)

    @property
    def complete(self):
        return not self.inconclusive

    def summary(self):
        if self.inconclusive:
            return f"inconclusive: {len(self.inconclusive)} shapes regular only up to the window"
        if self.units_at_identity_only:
            if isinstance(self.ring, GradedMatrixRing) and self.scalar_diagonal_only:
                return "S = scalar diagonal units"
            if len(self.units) == 1:
                return "S = k*"
            return "S = units of the identity component"
        labels = ", ".join(self.ring.format_degree(d) for d in self.unit_degrees)
        return f"S = homogeneous units in degrees {labels}"

    def to_dict(self):
        ring = self.ring
        return {
            "instance": ring.describe(),
            "window": {
                "degrees": [ring.format_degree(d) for d in self.window.degrees],
                "coeff_bound": self.window.coeff_bound,
            },
            "shapes": len(self.entries),
            "units": len(self.units),
            "zero_divisors": len(self.zero_divisors),
            "inconclusive": len(self.inconclusive),
            "unit_degrees": [ring.format_degree(d) for d in self.unit_degrees],
            "units_at_identity_only": self.units_at_identity_only,
            "summary": self.summary(),
            "entries": [
                {"degree": ring.format_degree(e.degree), "shape": list(e.shape), **e.certificate.to_dict()}
                for e in self.entries
            ],
        }


def regular_census(ring, bound=DEFAULT_MAX_DEGREE, radius=None, seed=DEFAULT_SEED):
    """Classify every homogeneous shape in the window as unit or zero divisor.

    A shape is a nonempty set of component basis elements; it is represented
    by a combination with seeded random nonzero coefficients.

    Raises:
        WindowTooLarge: If a component has more basis elements than shapes allow.
    """
    rng = random.Random(seed)
    win = window(ring, bound, radius)
    report = CensusReport(ring, win)
    components = ring.components(bound)
    for sigma in win.degrees:
        basis = components[sigma]
        if len(basis) > MAX_SHAPE_BASIS:
            raise WindowTooLarge(f"component {ring.format_degree(sigma)} has {len(basis)} basis elements")
        for mask in range(1, 2 ** len(basis)):
            chosen = [b for i, b in enumerate(basis) if mask >> i & 1]
            coeffs = [ring.field.random_nonzero(rng) for _ in chosen]
            rep = ring.element(combine(ring, chosen, coeffs))
            cert = regularity_certify(ring, rep, bound)
            if not cert.verify():
                raise AssertionError(f"census certificate for {rep.format()} does not verify")
            shape = tuple(ring.format_value(b) for b in chosen)
            report.entries.append(CensusEntry(sigma, shape, cert))
    logger.info(
        "Census of %s: %d shapes, %d units, %d zero divisors, %d inconclusive",
        ring.describe(),
        len(report.entries),
        len(report.units),
        len(report.zero_divisors),
        len(report.inconclusive),
    )
    return report


@dataclass
class ChainReport:
    element: str
    steps: list = field(default_factory=list)
    stabilized_at: int | None = None

    @property
    def strictly_descending(self):
        return self.stabilized_at is None

    @property
    def contained(self):
        return all(step["contained"] for step in self.steps)

    def to_dict(self):
        return {
            "element": self.element,
            "steps": self.steps,
            "stabilized_at": self.stabilized_at,
            "contained": self.contained,
        }


def _chain_basis(ring, degree, win):
    components = ring.components(win)
    if degree is not None:
        return components.get(degree, [])
    return [b for part in components.values() for b in part]


def descending_chain_report(ring, a, steps=10, bound=None):
    """Decide a^(i+1)R in a^iR and a^i in a^(i+1)R by exact solves, for i = 1..steps.

    a^(i+1) is formed on the left as a * a^i and the forward inclusion needs a
    cofactor b with a^i * b = a^(i+1); b = a works exactly when the product
    is associative on these powers. The solve window defaults to one more
    than the largest polynomial degree involved; for homogeneous a only the
    components of degree deg(a) and deg(a)^-1 matter.
    """
    report = ChainReport(a.format())
    cofactor_degree = a.degree if a.is_homogeneous else None
    inverse_degree = ring.group.inverse(a.degree) if a.is_homogeneous else None
    cofactors = _chain_basis(ring, cofactor_degree, bound if bound is not None else ring.weight(a.value) + 1)
    _check_window(len(cofactors))
    power = a
    for i in range(1, steps + 1):
        nxt = a * power
        forward = solve(ring, [ring.mul(power.value, b) for b in cofactors], nxt.value) if cofactors else None
        if forward is None and ring.is_zero(nxt.value):
            forward = []
        win = bound if bound is not None else ring.weight(power.value) + 1
        basis = _chain_basis(ring, inverse_degree, win)
        _check_window(len(basis))
        coeffs = solve(ring, [ring.mul(nxt.value, b) for b in basis], power.value) if basis else None
        if coeffs is None and ring.is_zero(power.value):
            coeffs = []
        step = {"i": i, "contained": forward is not None, "strict": coeffs is None, "window": win}
        if coeffs is not None:
            step["cofactor"] = ring.format_value(combine(ring, basis, coeffs))
            if report.stabilized_at is None:
                report.stabilized_at = i
        report.steps.append(step)
        power = nxt
    return report


@dataclass
class EFaithfulReport:
    entries: list = field(default_factory=list)

    @property
    def failures(self):
        return [e for e in self.entries if e["witness"] is None]

    @property
    def faithful(self):
        return not self.failures

    def to_dict(self):
        return {"checked": len(self.entries), "failures": self.failures, "faithful": self.faithful}


def e_faithful_probe(ring, bound=DEFAULT_MAX_DEGREE, degrees=None):
    """For each basis element r of R_g, look for r' in R_(g^-1) with r r' != 0."""
    components = ring.components(bound)
    degrees = list(components if degrees is None else degrees)
    report = EFaithfulReport()
    for sigma in degrees:
        inverse_basis = components.get(ring.group.inverse(sigma), [])
        for r in components.get(sigma, []):
            witness = next((b for b in inverse_basis if not ring.is_zero(ring.mul(r, b))), None)
            report.entries.append(
                {
                    "degree": ring.format_degree(sigma),
                    "element": ring.format_value(r),
                    "inverse_component": [ring.format_value(b) for b in inverse_basis],
                    "witness": None if witness is None else ring.format_value(witness),
                }
            )
    return report


@dataclass
class PeriodicRegularization:
    steps: list
    total: object
    certificate: RegularityCertificate | None

    def to_dict(self):
        return {
            "steps": self.steps,
            "total": self.total.format(),
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def _finite_order(group, sigma, order_bound):
    order = group.element_order(sigma, order_bound)
    if not order.is_finite:
        raise InfiniteOrderDegree(f"degree {group.format(sigma)} has no finite order up to {order_bound}")
    return order.n


def periodic_power_regularize(ring, a_list, bound=DEFAULT_MAX_DEGREE, order_bound=DEFAULT_ORDER_BOUND):
    """Sum of a_i^(k_i) with k_i the order of deg a_i; every power lies in R_e.

    Also audits r(a_i^k_i) = r(a_i) within the window and certifies the sum.

    Raises:
        InfiniteOrderDegree: If some degree has no finite order within ``order_bound``.
    """
    group = ring.group
    steps = []
    total = ring.element(ring.zero())
    for a in a_list:
        k = _finite_order(group, degree_of(a), order_bound)
        p = a**k
        in_identity = p.is_zero or p.degree == group.identity
        left = annihilator_solve(ring, a, RIGHT, bound).values()
        right = annihilator_solve(ring, p, RIGHT, bound).values()
        steps.append(
            {
                "a": a.format(),
                "k": k,
                "power": p.format(),
                "in_identity_component": in_identity,
                "annihilators_equal": span_equal(ring, left, right),
            }
        )
        total = total + p
    certificate = regularity_certify(ring, total, bound) if total.is_homogeneous else None
    return PeriodicRegularization(steps, total, certificate)


@dataclass
class GSCandidateSet:
    a_list: list
    s_list: list
    c: object
    d_list: list
    degrees: list
    conjugators: list
    k: int
    d: object
    cofactors: list
    annihilator_inclusions: list
    certificate: RegularityCertificate

    def to_dict(self):
        ring = self.c.ring
        return {
            "a": [a.format() for a in self.a_list],
            "s": [s.format() for s in self.s_list],
            "c": self.c.format(),
            "d_list": [d.format() for d in self.d_list],
            "degrees": [ring.format_degree(h) for h in self.degrees],
            "conjugators": [ring.format_degree(x) for x in self.conjugators],
            "k": self.k,
            "d": self.d.format(),
            "cofactors": self.cofactors,
            "annihilator_inclusions": self.annihilator_inclusions,
            "certificate": self.certificate.to_dict(),
        }


def gs_candidate_build(ring, a_list, s_list, alignment_bound=DEFAULT_ORDER_BOUND, certify_bound=DEFAULT_MAX_DEGREE):
    """Build c = s_1 a_1^2 ... s_n a_n^2 and d_i, align their degrees and certify d = sum d_i^k.

    With u_i = s_1 a_1^2 ... s_i a_i and v_i = a_i s_(i+1) a_(i+1)^2 ... s_n a_n^2
    one has c = u_i v_i and d_i = v_i u_i, so deg d_i is deg c conjugated by deg u_i.

    Raises:
        NotHomogeneous: If an input is not homogeneous.
        VanishingCandidate: If c, some d_i or d is zero.
        NonConjugateDegrees: If the degrees of the d_i are not conjugate.
        AlignmentExhausted: If the degrees cannot be aligned within the bound.
    """
    n = len(a_list)
    if n == 0 or len(s_list) != n:
        raise ValueError("a_list and s_list must be nonempty and of equal length")
    for x in list(a_list) + list(s_list):
        degree_of(x)
    group = ring.group
    one = ring.element(ring.one())
    prefix = [one]
    for a, s in zip(a_list, s_list):
        prefix.append(prefix[-1] * s * a * a)
    suffix = [one] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = s_list[i] * a_list[i] * a_list[i] * suffix[i + 1]
    c = prefix[n]
    if c.is_zero:
        raise VanishingCandidate("c = s_1 a_1^2 ... s_n a_n^2 vanishes")
    u = [prefix[i] * s_list[i] * a_list[i] for i in range(n)]
    v = [a_list[i] * suffix[i + 1] for i in range(n)]
    d_list, degrees, conjugators = [], [], []
    for i in range(n):
        if u[i] * v[i] != c:
            raise AssertionError("u_i v_i differs from c")
        d = v[i] * u[i]
        if d.is_zero:
            raise VanishingCandidate(f"d_{i + 1} vanishes")
        x = u[i].degree
        h = d.degree
        if h != group.multiply(group.multiply(group.inverse(x), c.degree), x):
            raise NonConjugateDegrees(f"deg d_{i + 1} = {group.format(h)} is not deg c conjugated by deg u_{i + 1}")
        d_list.append(d)
        degrees.append(h)
        conjugators.append(x)
    alignment = degree_alignment(group, degrees, alignment_bound)
    if not alignment.found:
        raise AlignmentExhausted(f"degrees of d_i do not align within {alignment_bound}")
    k = alignment.witness.k
    total = ring.element(ring.zero())
    cofactors, inclusions = [], []
    for i, d in enumerate(d_list):
        dk = d**k
        left = suffix[i + 1] * u[i] * d ** (k - 1)
        right = d ** (k - 1) * v[i] * prefix[i] * s_list[i]
        cofactors.append(
            {
                "i": i + 1,
                "d_i^k = a_i w": a_list[i] * left == dk,
                "d_i^k = w' a_i": right * a_list[i] == dk,
            }
        )
        ann = annihilator_solve(ring, a_list[i], RIGHT, certify_bound)
        inclusions.append({"i": i + 1, "checked": len(ann.basis), "holds": all((dk * x).is_zero for x in ann.basis)})
        total = total + dk
    if total.is_zero:
        raise VanishingCandidate("d = sum d_i^k vanishes")
    certificate = regularity_certify(ring, total, certify_bound)
    return GSCandidateSet(
        a_list=list(a_list),
        s_list=list(s_list),
        c=c,
        d_list=d_list,
        degrees=degrees,
        conjugators=conjugators,
        k=k,
        d=total,
        cofactors=cofactors,
        annihilator_inclusions=inclusions,
        certificate=certificate,
    )


@dataclass
class SimplicityReport:
    entries: list = field(default_factory=list)

    @property
    def failures(self):
        return [e for e in self.entries if not e["verified"]]

    def to_dict(self):
        return {"samples": len(self.entries), "failures": self.failures, "entries": self.entries}


def simplicity_expression(ring, a, multiplier_bound):
    """Homogeneous pairs (u_i, v_i) with sum u_i a v_i = 1.

    Units use a^-1 a 1. Otherwise, with c t^m the first nonzero entry at (p, q),
    u_i = c^-1 t^-m e_ip and v_i = e_qi.

    Raises:
        ExhaustedBound: If the multipliers need t-degree above ``multiplier_bound``.
    """
    if not isinstance(ring, GradedMatrixRing):
        raise InstanceMismatch(f"{ring.describe()} is not a matrix ring")
    one = ring.one()
    inv = ring.invert_value(a.value)
    if inv is not None and ring.weight(inv) <= multiplier_bound:
        return [(ring.element(inv), ring.element(one))]
    for p in range(ring.n):
        for q in range(ring.n):
            entry = a.value[p][q]
            if ring.base.is_zero(entry):
                continue
            entry_inv = ring.base.invert_value(entry)
            if entry_inv is None or ring.base.weight(entry_inv) > multiplier_bound:
                raise ExhaustedBound(f"entry {ring.base.format_value(entry)} needs multipliers beyond the bound")
            return [
                (
                    ring.element(ring.matrix_unit(i + 1, p + 1, entry_inv)),
                    ring.element(ring.matrix_unit(q + 1, i + 1)),
                )
                for i in range(ring.n)
            ]
    raise ExhaustedBound("zero has no expression")


def gr_simplicity_probe(ring, samples=50, multiplier_bound=4, seed=DEFAULT_SEED):
    """Find sum u_i A v_i = 1 for seeded random nonzero homogeneous A."""
    rng = random.Random(seed)
    one = ring.element(ring.one())
    report = SimplicityReport()
    for _ in range(samples):
        a = random_homogeneous(ring, rng, multiplier_bound)
        terms = simplicity_expression(ring, a, multiplier_bound)
        total = ring.element(ring.zero())
        for u, v in terms:
            degree_of(u)
            degree_of(v)
            total = total + u * a * v
        report.entries.append(
            {
                "element": a.format(),
                "terms": [[u.format(), v.format()] for u, v in terms],
                "verified": total == one,
            }
        )
    return report


@dataclass
class StabilityReport:
    element: str
    dim_a: int
    dim_a2: int
    equal: bool

    def to_dict(self):
        return {"element": self.element, "dim_a": self.dim_a, "dim_a2": self.dim_a2, "equal": self.equal}


def annihilator_stability_check(ring, a, bound=DEFAULT_MAX_DEGREE):
    """Compare r(a) and r(a^2) within the window."""
    first = annihilator_solve(ring, a, RIGHT, bound).values()
    second = annihilator_solve(ring, a * a, RIGHT, bound).values()
    return StabilityReport(a.format(), len(first), len(second), span_equal(ring, first, second))


@dataclass
class IdentityLift:
    exponent: int
    power: object
    in_identity_component: bool
    annihilates: bool
    nonzero: bool

    def to_dict(self):
        return {
            "l": self.exponent,
            "power": self.power.format(),
            "in_identity_component": self.in_identity_component,
            "annihilates": self.annihilates,
            "nonzero": self.nonzero,
        }


def identity_component_lift(ring, p, r, side=RIGHT, order_bound=DEFAULT_ORDER_BOUND):
    """Given p in R_e and homogeneous r with p r = 0 (or r p = 0), return r^l in R_e still annihilating p.

    Raises:
        NotHomogeneous: If p is not in the identity component or r is not homogeneous.
        PremiseViolated: If p and r do not multiply to zero on the given side.
        InfiniteOrderDegree: If deg r has no finite order.
    """
    group = ring.group
    if degree_of(p) != group.identity:
        raise NotHomogeneous(f"{p.format()} is not in the identity component")
    sigma = degree_of(r)
    product = p * r if side == RIGHT else r * p
    if not product.is_zero:
        raise PremiseViolated(f"{p.format()} and {r.format()} do not multiply to zero on the {side}")
    exponent = _finite_order(group, sigma, order_bound)
    power = r**exponent
    annihilates = (p * power if side == RIGHT else power * p).is_zero
    in_identity = power.is_zero or power.degree == group.identity
    return IdentityLift(exponent, power, in_identity, annihilates, not power.is_zero)

