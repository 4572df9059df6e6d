"""Exact coefficient arithmetic: fields, polynomials, Laurent polynomials and k[x,y]/(xy)."""

import logging
from dataclasses import dataclass
from functools import cached_property

from sympy import isprime
from sympy.polys.densearith import dup_add, dup_mul, dup_mul_ground, dup_neg, dup_sub
from sympy.polys.densebasic import dup_strip
from sympy.polys.domains import GF, QQ

from graded_goldie.constants import MAX_PRIME, RATIONAL_FIELD_FLAG
from graded_goldie.exceptions import ConfigError, FieldMismatch, NotAUnit

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoefficientField:
    """The coefficient field k: exact rationals (characteristic 0) or GF(p).

    Field values are elements of the underlying sympy domain, so they carry
    exact arithmetic and hash/compare by value.
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p and (p >= MAX_PRIME or not isprime(p)):
            raise ConfigError(f"prime field needs a prime below 2^31, got {p}")

    @classmethod
    def from_flag(cls, flag):
        """Build a field from a CLI flag: ``q`` or ``fp:P``."""
        if flag in (None, RATIONAL_FIELD_FLAG):
            return cls(0)
        if flag.startswith("fp:"):
            try:
                return cls(int(flag[3:]))
            except ValueError as e:
                raise ConfigError(f"invalid prime in field flag '{flag}'") from e
        raise ConfigError(f"unknown field flag '{flag}', expected 'q' or 'fp:P'")

    @property
    def flag(self):
        return f"fp:{self.characteristic}" if self.characteristic else RATIONAL_FIELD_FLAG

    @cached_property
    def domain(self):
        if self.characteristic:
            return GF(self.characteristic, symmetric=False)
        return QQ

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, numerator, denominator=1):
        """Convert an integer or integer ratio into the field."""
        K = self.domain
        den = K.convert(denominator)
        if not den:
            raise NotAUnit(f"denominator {denominator} vanishes in {self.flag}")
        return K.convert(numerator) / den

    def parse(self, text):
        """Convert a literal ``n`` or ``n/d``."""
        num, _, den = text.partition("/")
        return self(int(num), int(den) if den else 1)

    def inverse(self, value):
        if not value:
            raise NotAUnit("zero is not invertible")
        return self.one / value

    def is_negative(self, value):
        return bool(self.characteristic == 0 and value < 0)

    def format(self, value):
        return str(self.domain.to_sympy(value))

    def random_nonzero(self, rng, bound=5):
        if self.characteristic:
            return self(rng.randrange(1, self.characteristic))
        numerator = rng.choice([n for n in range(-bound, bound + 1) if n])
        return self(numerator, rng.randint(1, 3))


def format_combination(field, terms):
    """Render ``[(coeff, monomial_text)]`` as ``2*t^2 - t + 1/2``.

    ``monomial_text`` is empty for the constant monomial.
    """
    pieces = []
    for coeff, mono in terms:
        negative = field.is_negative(coeff)
        magnitude = -coeff if negative else coeff
        if not mono:
            body = field.format(magnitude)
        elif magnitude == field.one:
            body = mono
        else:
            body = f"{field.format(magnitude)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def _power_text(var, n):
    if n == 0:
        return ""
    return var if n == 1 else f"{var}^{n}"


def _check_fields(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine values over {a.field.flag} and {b.field.flag}")


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial in t, dense coefficients leading term first.

    ``coeffs`` never starts with a zero; the zero polynomial is ``()``.
    """

    field: CoefficientField
    coeffs: tuple = ()

    @classmethod
    def from_terms(cls, field, terms):
        """Build from a mapping ``exponent -> coefficient`` (exponents >= 0)."""
        if not terms:
            return cls(field)
        top = max(terms)
        dense = [field.domain.convert(terms.get(n, 0)) for n in range(top, -1, -1)]
        return cls(field, tuple(dup_strip(dense)))

    @classmethod
    def monomial(cls, field, n, coeff=None):
        return cls.from_terms(field, {n: field.one if coeff is None else coeff})

    @classmethod
    def constant(cls, field, coeff):
        return cls.from_terms(field, {0: coeff})

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        """Nonzero coefficients keyed by exponent."""
        d = self.degree
        return {d - i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, n):
        if n < 0 or n > self.degree:
            return self.field.zero
        return self.coeffs[self.degree - n]

    def eval_at_zero(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def valuation(self):
        terms = self.terms()
        return min(terms) if terms else None

    def __add__(self, other):
        _check_fields(self, other)
        return Poly(self.field, tuple(dup_add(list(self.coeffs), list(other.coeffs), self.field.domain)))

    def __sub__(self, other):
        _check_fields(self, other)
        return Poly(self.field, tuple(dup_sub(list(self.coeffs), list(other.coeffs), self.field.domain)))

    def __neg__(self):
        return Poly(self.field, tuple(dup_neg(list(self.coeffs), self.field.domain)))

    def __mul__(self, other):
        _check_fields(self, other)
        return Poly(self.field, tuple(dup_mul(list(self.coeffs), list(other.coeffs), self.field.domain)))

    def scale(self, coeff):
        return Poly(self.field, tuple(dup_strip(dup_mul_ground(list(self.coeffs), coeff, self.field.domain))))

    def shift_down(self):
        """Divide by t; the constant term must vanish."""
        if self.eval_at_zero():
            raise ValueError("polynomial has a nonzero constant term")
        return Poly(self.field, self.coeffs[:-1])

    def format(self, var="t"):
        terms = self.terms()
        return format_combination(self.field, [(terms[n], _power_text(var, n)) for n in sorted(terms, reverse=True)])


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial t^valuation * f(t) with f(0) != 0 (or the zero element)."""

    field: CoefficientField
    valuation: int = 0
    coeffs: tuple = ()

    @classmethod
    def normalized(cls, field, valuation, dense):
        dense = dup_strip(list(dense))
        if not dense:
            return cls(field)
        trailing = 0
        while not dense[-1 - trailing]:
            trailing += 1
        if trailing:
            dense = dense[:-trailing]
        return cls(field, valuation + trailing, tuple(dense))

    @classmethod
    def from_terms(cls, field, terms):
        terms = {n: c for n, c in terms.items() if c}
        if not terms:
            return cls(field)
        low, high = min(terms), max(terms)
        dense = [field.domain.convert(terms.get(n, 0)) for n in range(high, low - 1, -1)]
        return cls.normalized(field, low, dense)

    @classmethod
    def monomial(cls, field, n, coeff=None):
        return cls.from_terms(field, {n: field.one if coeff is None else coeff})

    @classmethod
    def from_poly(cls, poly):
        return cls.normalized(poly.field, 0, poly.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        top = self.valuation + len(self.coeffs) - 1
        return {top - i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, n):
        return self.terms().get(n, self.field.zero)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def _aligned(self, other):
        low = min(self.valuation, other.valuation)
        a = list(self.coeffs) + [self.field.zero] * (self.valuation - low)
        b = list(other.coeffs) + [self.field.zero] * (other.valuation - low)
        return low, a, b

    def __add__(self, other):
        _check_fields(self, other)
        if not self:
            return other
        if not other:
            return self
        low, a, b = self._aligned(other)
        return LaurentPoly.normalized(self.field, low, dup_add(a, b, self.field.domain))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentPoly(self.field, self.valuation, tuple(dup_neg(list(self.coeffs), self.field.domain)))

    def __mul__(self, other):
        _check_fields(self, other)
        if not self or not other:
            return LaurentPoly(self.field)
        dense = dup_mul(list(self.coeffs), list(other.coeffs), self.field.domain)
        return LaurentPoly.normalized(self.field, self.valuation + other.valuation, dense)

    def scale(self, coeff):
        return LaurentPoly.normalized(
            self.field, self.valuation, dup_mul_ground(list(self.coeffs), coeff, self.field.domain)
        )

    def format(self, var="t"):
        terms = self.terms()
        return format_combination(self.field, [(terms[n], _power_text(var, n)) for n in sorted(terms, reverse=True)])


def laurent_unit_invert(a):
    """Invert a nonzero Laurent monomial c*t^m, giving c^-1 * t^-m.

    Raises:
        NotAUnit: For zero or for anything with more than one term.
    """
    if not a.is_monomial():
        raise NotAUnit(f"{a.format()} is not a nonzero monomial")
    return LaurentPoly(a.field, -a.valuation, (a.field.inverse(a.coeffs[0]),))


@dataclass(frozen=True)
class XYQuotientValue:
    """Element c + p(x) + q(y) of k[x,y]/(xy); p and q have no constant term.

    Mixed monomials cannot be represented, so the ideal (xy) holds structurally.
    """

    field: CoefficientField
    constant: object
    x_part: Poly
    y_part: Poly

    @classmethod
    def from_parts(cls, field, constant=0, x_terms=None, y_terms=None):
        x_terms = {n: c for n, c in (x_terms or {}).items() if n > 0}
        y_terms = {n: c for n, c in (y_terms or {}).items() if n > 0}
        constant = field.domain.convert(constant)
        return cls(field, constant, Poly.from_terms(field, x_terms), Poly.from_terms(field, y_terms))

    @classmethod
    def x_power(cls, field, n, coeff=None):
        coeff = field.one if coeff is None else coeff
        if n == 0:
            return cls.from_parts(field, coeff)
        return cls.from_parts(field, 0, {n: coeff})

    @classmethod
    def y_power(cls, field, n, coeff=None):
        coeff = field.one if coeff is None else coeff
        if n == 0:
            return cls.from_parts(field, coeff)
        return cls.from_parts(field, 0, None, {n: coeff})

    def __bool__(self):
        return bool(self.constant) or bool(self.x_part) or bool(self.y_part)

    def __add__(self, other):
        _check_fields(self, other)
        return XYQuotientValue(
            self.field, self.constant + other.constant, self.x_part + other.x_part, self.y_part + other.y_part
        )

    def __neg__(self):
        return XYQuotientValue(self.field, -self.constant, -self.x_part, -self.y_part)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return xy_quotient_mul(self, other)

    def scale(self, coeff):
        return XYQuotientValue(self.field, self.constant * coeff, self.x_part.scale(coeff), self.y_part.scale(coeff))

    def x_terms(self):
        return self.x_part.terms()

    def y_terms(self):
        return self.y_part.terms()

    def format(self):
        terms = []
        y = self.y_terms()
        x = self.x_terms()
        terms.extend((y[n], _power_text("y", n)) for n in sorted(y, reverse=True))
        terms.extend((x[n], _power_text("x", n)) for n in sorted(x, reverse=True))
        if self.constant:
            terms.append((self.constant, ""))
        return format_combination(self.field, terms)


def xy_quotient_mul(a, b):
    """Multiply in k[x,y]/(xy); every x*y cross term is annihilated.

    Raises:
        FieldMismatch: If the operands live over different fields.
    """
    _check_fields(a, b)
    ca = Poly.constant(a.field, a.constant)
    cb = Poly.constant(a.field, b.constant)
    x_part = a.x_part * b.x_part + a.x_part * cb + ca * b.x_part
    y_part = a.y_part * b.y_part + a.y_part * cb + ca * b.y_part
    return XYQuotientValue(a.field, a.constant * b.constant, x_part, y_part)
