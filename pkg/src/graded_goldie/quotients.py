"""Fractions, trivial-quotient claims and the explicit maximal graded quotient computations."""

import logging
import random
from dataclasses import dataclass, field

from graded_goldie.constants import DEFAULT_MAX_DEGREE, DEFAULT_ORDER_BOUND, DEFAULT_SEED
from graded_goldie.exceptions import (
    CensusInconclusive,
    InfiniteOrderDegree,
    InstanceMismatch,
    NotInIdeal,
)
from graded_goldie.linalg import nullspace_vectors
from graded_goldie.rings import (
    DirectSumLaurentRing,
    GradedMatrixRing,
    GradedPolyRing,
    NastasescuRing,
    degree_of,
    random_element,
    random_homogeneous,
)
from graded_goldie.scalars import LaurentPoly, XYQuotientValue

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GradedFraction:
    """r s^-1 kept as (numerator, denominator) with the denominator in R_e."""

    numerator: object
    denominator: object
    original: tuple
    k: int

    def cross_check(self):
        """numerator * s = r * s^k, i.e. the pair is equivalent to (r, s)."""
        r, s = self.original
        return self.numerator * s == r * self.denominator

    def to_dict(self):
        r, s = self.original
        return {
            "r": r.format(),
            "s": s.format(),
            "k": self.k,
            "numerator": self.numerator.format(),
            "denominator": self.denominator.format(),
            "cross_check": self.cross_check(),
        }


def fraction_normalize_periodic(ring, r, s, order_bound=DEFAULT_ORDER_BOUND):
    """Rewrite r s^-1 as (r s^(k-1)) (s^k)^-1 with k the order of deg s.

    Raises:
        NotHomogeneous: If s is not homogeneous.
        InfiniteOrderDegree: If deg s has no finite order within ``order_bound``.
    """
    group = ring.group
    sigma = degree_of(s)
    order = group.element_order(sigma, order_bound)
    if not order.is_finite:
        raise InfiniteOrderDegree(f"deg {s.format()} = {group.format(sigma)} has no finite order")
    k = order.n
    fraction = GradedFraction(r * s ** (k - 1), s**k, (r, s), k)
    if fraction.denominator.degree != group.identity or not fraction.cross_check():
        raise AssertionError("normalized fraction does not verify")
    return fraction


@dataclass(frozen=True)
class TrivialQuotientClaim:
    instance: str
    statement: str
    units: list
    unit_degrees: list
    shapes: int

    def to_dict(self):
        return {
            "instance": self.instance,
            "statement": self.statement,
            "units": self.units,
            "unit_degrees": self.unit_degrees,
            "shapes": self.shapes,
        }


def quotient_is_trivial(ring, census):
    """Certify Q_cl^gr(R) = R from a census in which every regular shape is a unit.

    Raises:
        InstanceMismatch: If the census was taken on another ring.
        CensusInconclusive: If some shape is regular only up to the window.
    """
    if census.ring is not ring:
        raise InstanceMismatch("census was taken on a different instance")
    pending = census.inconclusive
    if pending:
        shapes = ", ".join(e.certificate.element.format() for e in pending[:5])
        raise CensusInconclusive(f"{len(pending)} shapes are regular only within the window: {shapes}")
    return TrivialQuotientClaim(
        instance=ring.describe(),
        statement="Q_cl^gr(R) = R",
        units=[e.certificate.element.format() for e in census.units],
        unit_degrees=[ring.format_degree(d) for d in census.unit_degrees],
        shapes=len(census.entries),
    )


def _require_nastasescu(ring):
    if not isinstance(ring, NastasescuRing):
        raise InstanceMismatch(f"{ring.describe()} is not k[x,y]/(xy)")


def quotient_target(ring):
    """k[x,x^-1] + k[y,y^-1] with the grading matching ``ring``."""
    _require_nastasescu(ring)
    return DirectSumLaurentRing(ring.group, ring.h, ring.field)


def nastasescu_embed(ring, a, target=None):
    """Image of c + p(x) + q(y) under x -> (x, 0), y -> (0, y), 1 -> (1, 1)."""
    _require_nastasescu(ring)
    target = target or quotient_target(ring)
    value = a.value
    constant = LaurentPoly.monomial(ring.field, 0, value.constant) if value.constant else LaurentPoly(ring.field)
    f = constant + LaurentPoly.from_poly(value.x_part)
    g = constant + LaurentPoly.from_poly(value.y_part)
    return target.element((f, g))


def image_check(b):
    """Pairs (f, g) in the image of R satisfy f(0) = g(0)."""
    f, g = b.value
    return f.coefficient(0) == g.coefficient(0)


@dataclass
class EmbeddingReport:
    samples: int
    window: int
    violations: list = field(default_factory=list)
    image_failures: list = field(default_factory=list)
    kernel_dimension: int = 0

    @property
    def passed(self):
        return not self.violations and not self.image_failures and self.kernel_dimension == 0

    def to_dict(self):
        return {
            "samples": self.samples,
            "window": self.window,
            "violations": self.violations,
            "image_failures": self.image_failures,
            "kernel_dimension": self.kernel_dimension,
        }


def embedding_audit(ring, samples=500, bound=DEFAULT_MAX_DEGREE, seed=DEFAULT_SEED):
    """Sample the embedding for the homomorphism laws, degree preservation and the image rule.

    Injectivity is checked on the spanning window of monomials of degree <= bound.
    """
    _require_nastasescu(ring)
    target = quotient_target(ring)
    rng = random.Random(seed)
    report = EmbeddingReport(samples, bound)

    def embed(x):
        return nastasescu_embed(ring, x, target)

    for _ in range(samples):
        a, b = random_element(ring, rng, bound), random_element(ring, rng, bound)
        checks = {
            "multiplicative": embed(a * b) == embed(a) * embed(b),
            "additive": embed(a + b) == embed(a) + embed(b),
        }
        h = random_homogeneous(ring, rng, bound)
        image = embed(h)
        checks["degree"] = image.is_homogeneous and image.degree == h.degree
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            report.violations.append({"a": a.format(), "b": b.format(), "h": h.format(), "failed": failed})
        for x in (a, b, a * b):
            if not image_check(embed(x)):
                report.image_failures.append(x.format())
    one = ring.element(ring.one())
    if embed(one).value != target.one():
        report.violations.append({"a": "1", "failed": ["unital"]})
    basis = [value for _, value in ring.monomials(bound)]
    images = [embed(ring.element(v)).value for v in basis]
    report.kernel_dimension = len(nullspace_vectors(target, images))
    logger.info("Embedding audit: %d samples, %d violations", samples, len(report.violations))
    return report


def _x_inverse_domain_defect(value):
    return value.constant or value.x_part.coefficient(1)


def x_inverse_apply(ring, a):
    """Right R-module map (x^2, y) -> R given by multiplication with x^-1 = (x^-1, 0).

    Raises:
        NotInIdeal: If ``a`` has a constant or a linear x term.
    """
    _require_nastasescu(ring)
    value = a.value
    if _x_inverse_domain_defect(value):
        raise NotInIdeal(f"{a.format()} is not in the ideal (x^2, y)")
    shifted = {n - 1: c for n, c in value.x_terms().items()}
    return ring.element(XYQuotientValue.from_parts(ring.field, 0, shifted))


@dataclass
class XInverseAudit:
    samples: int
    violations: list = field(default_factory=list)
    literal_rule: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {"samples": self.samples, "violations": self.violations, "literal_rule": self.literal_rule}


def _ideal_sample(ring, rng, bound):
    value = random_element(ring, rng, bound).value
    x_terms = {n: c for n, c in value.x_terms().items() if n >= 2}
    value = XYQuotientValue.from_parts(ring.field, 0, x_terms, value.y_terms())
    if not value:
        value = XYQuotientValue.x_power(ring.field, 2)
    return ring.element(value)


def x_inverse_audit(ring, samples=200, bound=DEFAULT_MAX_DEGREE, seed=DEFAULT_SEED):
    """Check right R-linearity of x^-1 on (x^2, y) and agreement with (x^-1, 0) in the quotient.

    Also records why the rule x -> 1, y -> 0 does not define a module map on (x, y).
    """
    _require_nastasescu(ring)
    target = quotient_target(ring)
    x_inverse = target.element((LaurentPoly.monomial(ring.field, -1), LaurentPoly(ring.field)))
    rng = random.Random(seed)
    audit = XInverseAudit(samples)
    for _ in range(samples):
        a, b = _ideal_sample(ring, rng, bound), _ideal_sample(ring, rng, bound)
        r = random_element(ring, rng, bound)
        fa = x_inverse_apply(ring, a)
        checks = {
            "right_linear": x_inverse_apply(ring, a * r) == fa * r,
            "additive": x_inverse_apply(ring, a + b) == fa + x_inverse_apply(ring, b),
            "quotient_agrees": nastasescu_embed(ring, fa, target) == x_inverse * nastasescu_embed(ring, a, target),
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            audit.violations.append({"a": a.format(), "r": r.format(), "failed": failed})
    symbols = ring.symbols()
    x, y = ring.element(symbols["x"]), ring.element(symbols["y"])
    image_of_product = ring.element(ring.zero())
    product_of_image = ring.element(ring.one()) * y
    audit.literal_rule = {
        "x*y": (x * y).format(),
        "f(x*y)": image_of_product.format(),
        "f(x)*y": product_of_image.format(),
        "right_linear": image_of_product == product_of_image,
    }
    return audit


@dataclass(frozen=True)
class GradedHom:
    """phi_ij: I = M_2(t k[t])(e, g) -> R, left multiplication by t^-1 e_ij."""

    i: int
    j: int

    def __post_init__(self):
        if self.i not in (1, 2) or self.j not in (1, 2):
            raise ValueError("phi indices must be 1 or 2")

    @property
    def name(self):
        return f"phi{self.i}{self.j}"

    def degree(self, ring):
        """deg(t^-1 e_ij) under the matrix grading."""
        _require_counterexample(ring)
        return ring.entry_degree(self.i - 1, self.j - 1, ring.group.inverse(ring.base.h))


def _require_counterexample(ring):
    if not isinstance(ring, GradedMatrixRing) or type(ring.base) is not GradedPolyRing or ring.n != 2:
        raise InstanceMismatch(f"{ring.describe()} is not M_2(k[t])(e, g)")


def in_ideal(ring, value):
    return all(not entry.eval_at_zero() for row in value for entry in row)


def phi_apply(ring, hom, a):
    """Row i of the result is row j of A divided by t; the other row is zero.

    Raises:
        NotInIdeal: If an entry of A has a nonzero constant term.
    """
    _require_counterexample(ring)
    if not in_ideal(ring, a.value):
        raise NotInIdeal(f"{a.format()} has an entry with nonzero constant term")
    source = [entry.shift_down() for entry in a.value[hom.j - 1]]
    z = ring.base.zero()
    rows = [source if r == hom.i - 1 else [z, z] for r in range(2)]
    return ring.element(ring.from_rows(rows))


@dataclass
class PhiAudit:
    hom: str
    degree: str
    samples: int
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {"hom": self.hom, "degree": self.degree, "samples": self.samples, "violations": self.violations}


def _ideal_matrix(ring, rng, max_degree):
    t = ring.base.symbols()["t"]
    value = random_element(ring, rng, max(max_degree - 1, 0)).value
    return ring.element(tuple(tuple(ring.base.mul(t, entry) for entry in row) for row in value))


def phi_module_audit(ring, hom, samples=200, max_degree=8, seed=DEFAULT_SEED):
    """Sample phi(A r) = phi(A) r, additivity and the degree shift by deg(t^-1 e_ij)."""
    _require_counterexample(ring)
    group = ring.group
    shift = hom.degree(ring)
    rng = random.Random(seed)
    audit = PhiAudit(hom.name, ring.format_degree(shift), samples)
    for _ in range(samples):
        a, b = _ideal_matrix(ring, rng, max_degree), _ideal_matrix(ring, rng, max_degree)
        r = random_element(ring, rng, max_degree)
        fa = phi_apply(ring, hom, a)
        checks = {
            "right_linear": phi_apply(ring, hom, a * r) == fa * r,
            "additive": phi_apply(ring, hom, a + b) == fa + phi_apply(ring, hom, b),
            "degree": all(
                _has_degree(phi_apply(ring, hom, ring.element(part)), group.multiply(shift, sigma))
                for sigma, part in ring.split(a.value).items()
            ),
        }
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            audit.violations.append({"a": a.format(), "r": r.format(), "failed": failed})
    logger.info("Audit of %s: %d samples, %d violations", hom.name, samples, len(audit.violations))
    return audit


def _has_degree(element, sigma):
    return element.is_zero or (element.is_homogeneous and element.degree == sigma)
