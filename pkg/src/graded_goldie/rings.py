"""Group-graded rings: the abstraction, the built-in instances and grading audits.

Each ring works on its own flat value type (field scalars, Poly, LaurentPoly,
XYQuotientValue, matrices as tuples of rows, ...). ``GradedElement`` wraps a
value split into its homogeneous components.
"""

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import product as cartesian

from sympy.polys.matrices import DomainMatrix

from graded_goldie.constants import DEFAULT_SEED
from graded_goldie.exceptions import (
    GradingViolation,
    InstanceMismatch,
    InvalidInstance,
    NotAUnit,
    NotHomogeneous,
    UnknownSymbol,
    UnreachableDegree,
)
from graded_goldie.groups import IntegerGroup
from graded_goldie.scalars import (
    CoefficientField,
    LaurentPoly,
    Poly,
    XYQuotientValue,
    format_combination,
    laurent_unit_invert,
)

logger = logging.getLogger(__name__)


class GradedRing(ABC):
    """A G-graded ring R = sum of components R_g with R_g R_h in R_gh."""

    kind = "graded-ring"
    is_domain = False

    def __init__(self, group, field=None):
        self.group = group
        self.field = field or CoefficientField()

    @abstractmethod
    def zero(self):
        ...

    @abstractmethod
    def one(self):
        ...

    @abstractmethod
    def add(self, a, b):
        ...

    @abstractmethod
    def neg(self, a):
        ...

    @abstractmethod
    def mul(self, a, b):
        ...

    @abstractmethod
    def scale(self, a, c):
        ...

    @abstractmethod
    def split(self, a):
        """Homogeneous parts of ``a`` as ``{degree: value}``, zero parts omitted."""

    @abstractmethod
    def coordinates(self, a):
        """Nonzero coefficients of ``a`` in the ring's fixed monomial basis."""

    @abstractmethod
    def monomials(self, bound):
        """``(degree, value)`` for every basis monomial of polynomial degree <= bound."""

    @abstractmethod
    def format_value(self, a):
        ...

    @abstractmethod
    def describe(self):
        ...

    def symbols(self):
        """Names usable in ring expressions."""
        return {}

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero()

    def scalar(self, c):
        return self.scale(self.one(), c)

    def weight(self, a):
        """Largest polynomial degree occurring in ``a``; sizes search windows."""
        return 0

    def contains_value(self, a):
        return True

    def invert_value(self, a):
        """Two-sided inverse of ``a`` when this ring can exhibit one, else None."""
        return None

    def power_value(self, a, n):
        if n < 0:
            inv = self.invert_value(a)
            if inv is None:
                raise NotAUnit(f"{self.format_value(a)} has no inverse in {self.describe()}")
            a, n = inv, -n
        result = self.one()
        for _ in range(n):
            result = self.mul(result, a)
        return result

    def symbol_power(self, name, n):
        table = self.symbols()
        if name not in table:
            raise UnknownSymbol(f"unknown symbol '{name}' in {self.describe()}")
        return self.power_value(table[name], n)

    def components(self, bound):
        """Bases of the nonzero components within ``bound``, sorted by degree."""
        grouped = {}
        for degree, value in self.monomials(bound):
            grouped.setdefault(degree, []).append(value)
        return {d: grouped[d] for d in sorted(grouped, key=self.group.sort_key)}

    def component_basis(self, sigma, bound):
        return self.components(bound).get(sigma, [])

    def support(self, bound):
        return list(self.components(bound))

    def element(self, value):
        return GradedElement.from_value(self, value)

    def homogeneous(self, value):
        element = self.element(value)
        degree_of(element)
        return element

    def format_degree(self, degree):
        return self.group.format(degree)


@dataclass(frozen=True)
class GradedElement:
    """An element of a graded ring kept as its homogeneous decomposition.

    ``terms`` holds ``(degree, value)`` pairs with nonzero values and distinct
    degrees, sorted by printed degree.
    """

    ring: GradedRing = field(compare=False, repr=False)
    terms: tuple = ()

    @classmethod
    def from_value(cls, ring, value):
        parts = ring.split(value)
        return cls(ring, tuple(sorted(parts.items(), key=lambda item: ring.group.sort_key(item[0]))))

    @property
    def value(self):
        total = self.ring.zero()
        for _, v in self.terms:
            total = self.ring.add(total, v)
        return total

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_homogeneous(self):
        return len(self.terms) == 1

    @property
    def degree(self):
        return degree_of(self)

    def component(self, degree):
        for d, v in self.terms:
            if d == degree:
                return GradedElement(self.ring, ((d, v),))
        return GradedElement(self.ring)

    def __add__(self, other):
        _same_ring(self.ring, other)
        return self.ring.element(self.ring.add(self.value, other.value))

    def __neg__(self):
        return GradedElement(self.ring, tuple((d, self.ring.neg(v)) for d, v in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ring_mul(self.ring, self, other)

    def __pow__(self, n):
        result = self.ring.element(self.ring.one())
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c):
        return self.ring.element(self.ring.scale(self.value, c))

    def format(self):
        return self.ring.format_value(self.value)

    def __str__(self):
        return self.format()


def _same_ring(ring, *elements):
    for a in elements:
        if not isinstance(a, GradedElement) or a.ring is not ring:
            raise InstanceMismatch(f"operand does not belong to {ring.describe()}")


def ring_mul(ring, a, b):
    """Exact product of two elements, checking the grading law termwise.

    Raises:
        InstanceMismatch: If an operand belongs to another ring.
        GradingViolation: If a product of components leaves the product degree.
    """
    _same_ring(ring, a, b)
    total = ring.zero()
    for sigma, x in a.terms:
        for tau, y in b.terms:
            p = ring.mul(x, y)
            if ring.is_zero(p):
                continue
            expected = ring.group.multiply(sigma, tau)
            degrees = set(ring.split(p))
            if degrees != {expected}:
                raise GradingViolation(
                    f"{ring.format_value(x)} * {ring.format_value(y)} leaves degree {ring.format_degree(expected)}",
                    witness={
                        "left": ring.format_value(x),
                        "right": ring.format_value(y),
                        "expected_degree": ring.format_degree(expected),
                        "found_degrees": sorted(ring.format_degree(d) for d in degrees),
                    },
                )
            total = ring.add(total, p)
    return ring.element(total)


def decompose(ring, a):
    """Homogeneous parts of ``a`` as ``[(degree, element)]``."""
    _same_ring(ring, a)
    return [(d, GradedElement(ring, ((d, v),))) for d, v in a.terms]


def degree_of(a):
    """Degree of a nonzero homogeneous element.

    Raises:
        NotHomogeneous: For zero or for an element with several components.
    """
    if len(a.terms) != 1:
        raise NotHomogeneous(f"{a.format()} is not a nonzero homogeneous element")
    return a.terms[0][0]


@dataclass(frozen=True)
class DegreeWindow:
    degrees: tuple
    coeff_bound: int


def window(ring, coeff_bound, radius=None):
    """The degrees carrying a nonzero component within ``coeff_bound``.

    With ``radius`` the degrees are restricted to words of that length.
    """
    degrees = ring.support(coeff_bound)
    if radius is not None:
        ball = set(ring.group.ball(radius))
        degrees = [d for d in degrees if d in ball]
    return DegreeWindow(tuple(degrees), coeff_bound)


def enumerate_homogeneous(ring, sigma, coeff_bound):
    """Basis of R_sigma truncated at polynomial degree ``coeff_bound``.

    Raises:
        UnreachableDegree: If the component is zero within the bound.
    """
    ring.group.check(sigma)
    basis = ring.component_basis(sigma, coeff_bound)
    if not basis:
        raise UnreachableDegree(f"component of degree {ring.format_degree(sigma)} is zero in {ring.describe()}")
    return [GradedElement(ring, ((sigma, b),)) for b in basis]


def random_homogeneous(ring, rng, bound, degrees=None):
    """Seeded random nonzero homogeneous element of polynomial degree <= bound."""
    components = ring.components(bound)
    choices = [d for d in (degrees if degrees is not None else components) if components.get(d)]
    if not choices:
        raise UnreachableDegree("no nonzero component to sample from")
    sigma = rng.choice(choices)
    basis = components[sigma]
    value = ring.zero()
    while ring.is_zero(value):
        for b in basis:
            if rng.random() < 0.6:
                value = ring.add(value, ring.scale(b, ring.field.random_nonzero(rng)))
    return GradedElement(ring, ((sigma, value),))


def random_element(ring, rng, bound, parts=3):
    total = ring.element(ring.zero())
    for _ in range(rng.randint(1, parts)):
        total = total + random_homogeneous(ring, rng, bound)
    return total


@dataclass
class GradingAudit:
    instance: str
    samples: int
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {"instance": self.instance, "samples": self.samples, "violations": self.violations}


def grading_axiom_audit(ring, samples=1000, bound=4, seed=DEFAULT_SEED):
    """Sample homogeneous pairs and check closure and degree multiplicativity."""
    rng = random.Random(seed)
    audit = GradingAudit(ring.describe(), samples)
    for _ in range(samples):
        a = random_homogeneous(ring, rng, bound)
        b = random_homogeneous(ring, rng, bound)
        try:
            p = ring_mul(ring, a, b)
        except GradingViolation as e:
            audit.violations.append(e.witness)
            continue
        if not ring.contains_value(p.value):
            audit.violations.append({"left": a.format(), "right": b.format(), "closure": False})
    if audit.violations:
        logger.warning("Grading audit of %s found %d violations", ring.describe(), len(audit.violations))
    return audit


class ScalarFieldRing(GradedRing):
    """The coefficient field concentrated in the identity degree."""

    kind = "scalar-field"
    is_domain = True

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a * c

    def split(self, a):
        return {self.group.identity: a} if a else {}

    def coordinates(self, a):
        return {0: a} if a else {}

    def monomials(self, bound):
        return [(self.group.identity, self.field.one)]

    def invert_value(self, a):
        return self.field.inverse(a) if a else None

    def format_value(self, a):
        return self.field.format(a)

    def format_entry_monomial(self, value):
        return ""

    def describe(self):
        return f"k graded by {self.group.name}"


class GradedPolyRing(GradedRing):
    """k[t] graded by deg t = h, for h of infinite order."""

    kind = "graded-poly"
    is_domain = True

    def __init__(self, group, h, field=None):
        super().__init__(group, field)
        group.check(h)
        if not group.structurally_infinite(h):
            raise InvalidInstance(f"deg t = {group.format(h)} must have structurally infinite order")
        self.h = h

    def zero(self):
        return Poly(self.field)

    def one(self):
        return Poly.constant(self.field, self.field.one)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def degree_of_exponent(self, n):
        return self.group.power(self.h, n)

    def split(self, a):
        return {self.degree_of_exponent(n): Poly.monomial(self.field, n, c) for n, c in a.terms().items()}

    def weight(self, a):
        return max(a.degree, 0)

    def coordinates(self, a):
        return a.terms()

    def monomials(self, bound):
        return [(self.degree_of_exponent(n), Poly.monomial(self.field, n)) for n in range(bound + 1)]

    def invert_value(self, a):
        if a.degree == 0:
            return Poly.constant(self.field, self.field.inverse(a.coeffs[0]))
        return None

    def symbols(self):
        return {"t": Poly.monomial(self.field, 1)}

    def format_value(self, a):
        return a.format()

    def format_entry_monomial(self, value):
        (n,) = value.terms()
        return "" if n == 0 else ("t" if n == 1 else f"t^{n}")

    def describe(self):
        return f"k[t] over {self.group.name}, deg t = {self.group.format(self.h)}"


class GradedLaurentRing(GradedPolyRing):
    """k[t, t^-1] graded by deg t = h."""

    kind = "graded-laurent"

    def weight(self, a):
        return max((abs(n) for n in a.terms()), default=0)

    def zero(self):
        return LaurentPoly(self.field)

    def one(self):
        return LaurentPoly.monomial(self.field, 0)

    def split(self, a):
        return {self.degree_of_exponent(n): LaurentPoly.monomial(self.field, n, c) for n, c in a.terms().items()}

    def monomials(self, bound):
        return [(self.degree_of_exponent(n), LaurentPoly.monomial(self.field, n)) for n in range(-bound, bound + 1)]

    def invert_value(self, a):
        return laurent_unit_invert(a) if a.is_monomial() else None

    def symbols(self):
        return {"t": LaurentPoly.monomial(self.field, 1)}

    def describe(self):
        return f"k[t,t^-1] over {self.group.name}, deg t = {self.group.format(self.h)}"


class NastasescuRing(GradedRing):
    """k[x,y]/(xy) graded by deg x = h, deg y = h^-1."""

    kind = "nastasescu"

    def __init__(self, group, h, field=None):
        super().__init__(group, field)
        group.check(h)
        if not group.structurally_infinite(h):
            raise InvalidInstance(f"deg x = {group.format(h)} must have structurally infinite order")
        self.h = h

    def zero(self):
        return XYQuotientValue.from_parts(self.field)

    def one(self):
        return XYQuotientValue.from_parts(self.field, self.field.one)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scale(self, a, c):
        return a.scale(c)

    def split(self, a):
        parts = {}
        if a.constant:
            parts[self.group.identity] = XYQuotientValue.from_parts(self.field, a.constant)
        for n, c in a.x_terms().items():
            parts[self.group.power(self.h, n)] = XYQuotientValue.x_power(self.field, n, c)
        for n, c in a.y_terms().items():
            parts[self.group.power(self.h, -n)] = XYQuotientValue.y_power(self.field, n, c)
        return parts

    def coordinates(self, a):
        coords = {("1", 0): a.constant} if a.constant else {}
        coords.update({("x", n): c for n, c in a.x_terms().items()})
        coords.update({("y", n): c for n, c in a.y_terms().items()})
        return coords

    def monomials(self, bound):
        result = [(self.group.identity, self.one())]
        for n in range(1, bound + 1):
            result.append((self.group.power(self.h, n), XYQuotientValue.x_power(self.field, n)))
            result.append((self.group.power(self.h, -n), XYQuotientValue.y_power(self.field, n)))
        return result

    def weight(self, a):
        return max(a.x_part.degree, a.y_part.degree, 0)

    def invert_value(self, a):
        if a.constant and not a.x_part and not a.y_part:
            return XYQuotientValue.from_parts(self.field, self.field.inverse(a.constant))
        return None

    def symbols(self):
        return {"x": XYQuotientValue.x_power(self.field, 1), "y": XYQuotientValue.y_power(self.field, 1)}

    def format_value(self, a):
        return a.format()

    def describe(self):
        return f"k[x,y]/(xy) over {self.group.name}, deg x = {self.group.format(self.h)}"


class GradedMatrixRing(GradedRing):
    """M_n(base)(g_1, ..., g_n): entry (i, j) of degree tau sits in degree g_i tau g_j^-1.

    Values are tuples of rows of base values. Matrix units are numbered from 1
    in symbols (``e12``) and in ``matrix_unit``.
    """

    def __init__(self, base, shifts, kind="graded-matrix"):
        super().__init__(base.group, base.field)
        self.base = base
        self.shifts = tuple(shifts)
        if not self.shifts:
            raise InvalidInstance("a matrix ring needs at least one shift")
        base.group.check(*self.shifts)
        self.n = len(self.shifts)
        self.kind = kind

    def entry_degree(self, i, j, tau):
        """Degree of a base element of degree tau placed at entry (i, j), 0-based."""
        group = self.group
        return group.multiply(group.multiply(self.shifts[i], tau), group.inverse(self.shifts[j]))

    def entry_source_degree(self, i, j, sigma):
        """The base degree g_i^-1 sigma g_j feeding entry (i, j) of R_sigma."""
        group = self.group
        return group.multiply(group.multiply(group.inverse(self.shifts[i]), sigma), self.shifts[j])

    def from_rows(self, rows):
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise InstanceMismatch(f"expected a {self.n}x{self.n} matrix")
        return tuple(tuple(row) for row in rows)

    def _filled(self, entry):
        return tuple(tuple(entry(i, j) for j in range(self.n)) for i in range(self.n))

    def zero(self):
        z = self.base.zero()
        return self._filled(lambda i, j: z)

    def one(self):
        z, o = self.base.zero(), self.base.one()
        return self._filled(lambda i, j: o if i == j else z)

    def diagonal(self, entries):
        z = self.base.zero()
        return self._filled(lambda i, j: entries[i] if i == j else z)

    def matrix_unit(self, i, j, entry=None):
        z = self.base.zero()
        entry = self.base.one() if entry is None else entry
        return self._filled(lambda r, c: entry if (r, c) == (i - 1, j - 1) else z)

    def add(self, a, b):
        return self._filled(lambda i, j: self.base.add(a[i][j], b[i][j]))

    def neg(self, a):
        return self._filled(lambda i, j: self.base.neg(a[i][j]))

    def scale(self, a, c):
        return self._filled(lambda i, j: self.base.scale(a[i][j], c))

    def mul(self, a, b):
        base = self.base

        def entry(i, j):
            total = base.zero()
            for k in range(self.n):
                if base.is_zero(a[i][k]) or base.is_zero(b[k][j]):
                    continue
                total = base.add(total, base.mul(a[i][k], b[k][j]))
            return total

        return self._filled(entry)

    def split(self, a):
        parts = {}
        for i, j in cartesian(range(self.n), repeat=2):
            for tau, part in self.base.split(a[i][j]).items():
                sigma = self.entry_degree(i, j, tau)
                rows = parts.setdefault(sigma, [[self.base.zero()] * self.n for _ in range(self.n)])
                rows[i][j] = self.base.add(rows[i][j], part)
        return {sigma: self.from_rows(rows) for sigma, rows in parts.items()}

    def coordinates(self, a):
        coords = {}
        for i, j in cartesian(range(self.n), repeat=2):
            for key, c in self.base.coordinates(a[i][j]).items():
                coords[(i, j, key)] = c
        return coords

    def monomials(self, bound):
        result = []
        for tau, b in self.base.monomials(bound):
            for i, j in cartesian(range(self.n), repeat=2):
                result.append((self.entry_degree(i, j, tau), self.matrix_unit(i + 1, j + 1, b)))
        return result

    def invert_value(self, a):
        if isinstance(self.base, ScalarFieldRing):
            m = DomainMatrix([list(row) for row in a], (self.n, self.n), self.field.domain)
            if not m.det():
                return None
            return self.from_rows(m.inv().to_list())
        # monomial matrices: one base unit per row and column
        positions = []
        for i in range(self.n):
            nonzero = [j for j in range(self.n) if not self.base.is_zero(a[i][j])]
            if len(nonzero) != 1:
                return None
            positions.append(nonzero[0])
        if len(set(positions)) != self.n:
            return None
        inverses = {}
        for i, j in enumerate(positions):
            inv = self.base.invert_value(a[i][j])
            if inv is None:
                return None
            inverses[(j, i)] = inv
        z = self.base.zero()
        return self._filled(lambda r, c: inverses.get((r, c), z))

    def weight(self, a):
        return max(self.base.weight(x) for row in a for x in row)

    def mask_witness(self, a):
        """A matrix unit killing ``a`` because of a zero column or row, as (side, cofactor)."""
        for j in range(self.n):
            if all(self.base.is_zero(a[i][j]) for i in range(self.n)):
                return "right", self.matrix_unit(j + 1, j + 1)
        for i in range(self.n):
            if all(self.base.is_zero(a[i][j]) for j in range(self.n)):
                return "left", self.matrix_unit(i + 1, i + 1)
        return None

    def symbols(self):
        table = {name: self.diagonal([v] * self.n) for name, v in self.base.symbols().items()}
        for i, j in cartesian(range(1, self.n + 1), repeat=2):
            table[f"e{i}{j}"] = self.matrix_unit(i, j)
        return table

    def format_value(self, a):
        return "[" + ", ".join("[" + ", ".join(self.base.format_value(x) for x in row) + "]" for row in a) + "]"

    def describe(self):
        shifts = ", ".join(self.group.format(g) for g in self.shifts)
        return f"M_{self.n}({self.base.describe()})({shifts})"


@dataclass(frozen=True)
class ComponentPattern:
    """Entry-wise base monomials allowed in R_sigma of a matrix ring."""

    sigma: object
    grid: tuple

    def render(self):
        def cell(monos):
            if not monos:
                return "0"
            return " + ".join(f"k{m}" if m else "k" for m in monos)

        return "[" + ", ".join("[" + ", ".join(cell(c) for c in row) + "]" for row in self.grid) + "]"


def component_pattern(ring, sigma, bound):
    """For a matrix ring, the base monomials of degree g_i^-1 sigma g_j at each entry."""
    if not isinstance(ring, GradedMatrixRing):
        raise InstanceMismatch(f"{ring.describe()} is not a matrix ring")
    ring.group.check(sigma)
    base_components = ring.base.components(bound)
    grid = []
    for i in range(ring.n):
        row = []
        for j in range(ring.n):
            tau = ring.entry_source_degree(i, j, sigma)
            row.append(tuple(_entry_monomial_text(ring.base, b) for b in base_components.get(tau, [])))
        grid.append(tuple(row))
    return ComponentPattern(sigma, tuple(grid))


def _entry_monomial_text(base, value):
    if hasattr(base, "format_entry_monomial"):
        return base.format_entry_monomial(value)
    return base.format_value(value)


class GroupAlgebraRing(GradedRing):
    """k[G] for a finite group G, graded by R_g = k g."""

    kind = "group-algebra"

    def __init__(self, group, field=None):
        super().__init__(group, field)
        if not group.is_finite:
            raise InvalidInstance(f"{group.name} is not a finite group")
        self.elements = group.elements()
        self.index = {g: i for i, g in enumerate(self.elements)}

    def basis_vector(self, g, c=None):
        c = self.field.one if c is None else c
        i = self.index[g]
        return tuple(c if j == i else self.field.zero for j in range(len(self.elements)))

    def zero(self):
        return (self.field.zero,) * len(self.elements)

    def one(self):
        return self.basis_vector(self.group.identity)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        return tuple(x * c for x in a)

    def mul(self, a, b):
        result = list(self.zero())
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    result[self.index[self.group.multiply(self.elements[i], self.elements[j])]] += x * y
        return tuple(result)

    def split(self, a):
        return {self.elements[i]: self.basis_vector(self.elements[i], c) for i, c in enumerate(a) if c}

    def coordinates(self, a):
        return {i: c for i, c in enumerate(a) if c}

    def monomials(self, bound):
        return [(g, self.basis_vector(g)) for g in self.elements]

    def invert_value(self, a):
        parts = self.split(a)
        if len(parts) != 1:
            return None
        ((g, _),) = parts.items()
        c = a[self.index[g]]
        return self.basis_vector(self.group.inverse(g), self.field.inverse(c))

    def symbols(self):
        return {self.group.format(g): self.basis_vector(g) for g in self.elements}

    def format_value(self, a):
        terms = []
        for g in sorted(self.elements, key=self.group.sort_key):
            c = a[self.index[g]]
            if c:
                terms.append((c, "" if g == self.group.identity else self.group.format(g)))
        return format_combination(self.field, terms)

    def describe(self):
        return f"k[{self.group.name}]"


class DirectSumLaurentRing(GradedRing):
    """k[x,x^-1] + k[y,y^-1] with deg x = h, deg y = h^-1; values are pairs."""

    kind = "direct-sum-laurent"

    def __init__(self, group, h, field=None):
        super().__init__(group, field)
        group.check(h)
        self.h = h

    def _pair(self, f=None, g=None):
        return (f or LaurentPoly(self.field), g or LaurentPoly(self.field))

    def zero(self):
        return self._pair()

    def one(self):
        unit = LaurentPoly.monomial(self.field, 0)
        return (unit, unit)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    def scale(self, a, c):
        return (a[0].scale(c), a[1].scale(c))

    def split(self, a):
        parts = {}
        for n, c in a[0].terms().items():
            sigma = self.group.power(self.h, n)
            parts[sigma] = self.add(parts.get(sigma, self.zero()), self._pair(f=LaurentPoly.monomial(self.field, n, c)))
        for n, c in a[1].terms().items():
            sigma = self.group.power(self.h, -n)
            parts[sigma] = self.add(parts.get(sigma, self.zero()), self._pair(g=LaurentPoly.monomial(self.field, n, c)))
        return parts

    def coordinates(self, a):
        coords = {("x", n): c for n, c in a[0].terms().items()}
        coords.update({("y", n): c for n, c in a[1].terms().items()})
        return coords

    def monomials(self, bound):
        result = []
        for n in range(-bound, bound + 1):
            sigma = self.group.power(self.h, n)
            result.append((sigma, self._pair(f=LaurentPoly.monomial(self.field, n))))
            result.append((sigma, self._pair(g=LaurentPoly.monomial(self.field, -n))))
        return result

    def weight(self, a):
        return max((abs(n) for poly in a for n in poly.terms()), default=0)

    def invert_value(self, a):
        f, g = a
        if f.is_monomial() and g.is_monomial():
            return (laurent_unit_invert(f), laurent_unit_invert(g))
        return None

    def symbols(self):
        return {
            "x": self._pair(f=LaurentPoly.monomial(self.field, 1)),
            "y": self._pair(g=LaurentPoly.monomial(self.field, 1)),
            "ex": self._pair(f=LaurentPoly.monomial(self.field, 0)),
            "ey": self._pair(g=LaurentPoly.monomial(self.field, 0)),
        }

    def symbol_power(self, name, n):
        if name in ("x", "y") and n != 0:
            mono = LaurentPoly.monomial(self.field, n)
            return self._pair(f=mono) if name == "x" else self._pair(g=mono)
        return super().symbol_power(name, n)

    def format_value(self, a):
        terms = []
        for var, idem, poly in (("x", "ex", a[0]), ("y", "ey", a[1])):
            coeffs = poly.terms()
            for n in sorted(coeffs, reverse=True):
                mono = idem if n == 0 else (var if n == 1 else f"{var}^{n}")
                terms.append((coeffs[n], mono))
        return format_combination(self.field, terms)

    def describe(self):
        return f"k[x,x^-1] + k[y,y^-1] over {self.group.name}, deg x = {self.group.format(self.h)}"


def nastasescu_ring(field=None, group=None, h=None):
    """k[x,y]/(xy), by default graded by the integers with deg x = 1."""
    group = group or IntegerGroup()
    h = 1 if h is None else h
    return NastasescuRing(group, h, field)


def direct_sum_laurent(field=None, group=None, h=None):
    group = group or IntegerGroup()
    h = 1 if h is None else h
    return DirectSumLaurentRing(group, h, field)


def counterexample_ring(group, g, h, field=None):
    """M_2(k[t])(e, g) with deg t = h."""
    return GradedMatrixRing(GradedPolyRing(group, h, field), (group.identity, g), kind="counterexample")


def laurent_matrix_ring(group, g, h, field=None):
    """M_2(k[t,t^-1])(e, g) with deg t = h."""
    return GradedMatrixRing(GradedLaurentRing(group, h, field), (group.identity, g), kind="laurent-matrix")


def scalar_matrix_ring(group, shifts, field=None):
    """M_n(k)(shifts) with k in the identity degree."""
    return GradedMatrixRing(ScalarFieldRing(group, field), shifts, kind="scalar-matrix")


def group_algebra(group, field=None):
    return GroupAlgebraRing(group, field)
