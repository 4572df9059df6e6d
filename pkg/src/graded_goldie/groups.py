"""Normal-form arithmetic for the group families used as grading groups."""

import logging
import re
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from math import gcd

from sympy import lcm

from graded_goldie.constants import DEFAULT_ORDER_BOUND, MAX_TABLE_ORDER
from graded_goldie.exceptions import ExponentOnlyIntegral, FamilyMismatch, InvalidGroupTable, UnknownGenerator

logger = logging.getLogger(__name__)

IDENTITY_SYMBOL = "e"


class OrderKind(StrEnum):
    FINITE = "finite"
    INFINITE = "infinite"
    EXHAUSTED_BOUND = "exhausted_bound"


@dataclass(frozen=True)
class OrderResult:
    """Outcome of an order computation.

    ``n`` is set for FINITE, ``proof`` ("structural" or "none") for INFINITE and
    ``bound`` for EXHAUSTED_BOUND.
    """

    kind: OrderKind
    n: int | None = None
    proof: str | None = None
    bound: int | None = None

    @property
    def is_finite(self):
        return self.kind is OrderKind.FINITE

    @property
    def is_infinite(self):
        return self.kind is OrderKind.INFINITE

    def to_dict(self):
        result = {"kind": str(self.kind)}
        if self.n is not None:
            result["n"] = self.n
        if self.proof is not None:
            result["proof"] = self.proof
        if self.bound is not None:
            result["bound"] = self.bound
        return result


def _power_word(symbol, n):
    if n == 0:
        return []
    return [symbol if n == 1 else f"{symbol}^{n}"]


def _join_word(parts):
    return " ".join(parts) if parts else IDENTITY_SYMBOL


class Group(ABC):
    """A group with exact normal forms.

    Subclasses implement the family-specific arithmetic; everything else
    (powers, words, orders, balls) is derived here.
    """

    family = "group"

    @property
    @abstractmethod
    def identity(self):
        ...

    @property
    @abstractmethod
    def generator_names(self):
        ...

    @abstractmethod
    def contains(self, a):
        """Whether ``a`` is a normal form of this group."""

    @abstractmethod
    def _multiply(self, a, b):
        ...

    @abstractmethod
    def _inverse(self, a):
        ...

    @abstractmethod
    def format(self, a):
        """Render ``a`` as a word that ``normalize_word`` maps back to ``a``."""

    @abstractmethod
    def symbol(self, name):
        """The element named by a single word token.

        Raises:
            UnknownGenerator: If the name is not a symbol of this group.
        """

    @property
    def name(self):
        return self.family

    @property
    def is_finite(self):
        return False

    def structurally_infinite(self, a):
        """Whether ``a`` has infinite order by a closed-form argument."""
        return False

    def closed_order(self, a):
        """Exact finite order when a formula is available, else None."""
        return None

    def ball_generators(self):
        """Finite generating symbols used for balls and random words."""
        return [self.symbol(n) for n in self.generator_names]

    def check(self, *elements):
        for a in elements:
            if not self.contains(a):
                raise FamilyMismatch(f"{a!r} is not an element of {self.name}")

    def multiply(self, a, b):
        self.check(a, b)
        return self._multiply(a, b)

    def inverse(self, a):
        self.check(a)
        return self._inverse(a)

    def product(self, *elements):
        result = self.identity
        for a in elements:
            result = self.multiply(result, a)
        return result

    def power(self, a, n):
        """Fast exponentiation; negative ``n`` powers the inverse."""
        self.check(a)
        if n < 0:
            a, n = self._inverse(a), -n
        result = self.identity
        base = a
        while n:
            if n & 1:
                result = self._multiply(result, base)
            base = self._multiply(base, base)
            n >>= 1
        return result

    def conjugate(self, g, h):
        """g h g^-1."""
        return self.multiply(self.multiply(g, h), self.inverse(g))

    def commutator(self, x, y):
        """x y x^-1 y^-1."""
        return self.multiply(self.multiply(x, y), self.multiply(self.inverse(x), self.inverse(y)))

    def commutes(self, a, b):
        return self.multiply(a, b) == self.multiply(b, a)

    def normalize_word(self, tokens):
        """Multiply out a word given as ``[(symbol, exponent), ...]``.

        Raises:
            UnknownGenerator: For a symbol outside the group.
            ExponentOnlyIntegral: For a non-integer exponent.
        """
        result = self.identity
        for name, exponent in tokens:
            if isinstance(exponent, bool) or not isinstance(exponent, int):
                raise ExponentOnlyIntegral(f"exponent {exponent!r} of '{name}' is not an integer")
            result = self._multiply(result, self.power(self._resolve(name), exponent))
        return result

    def _resolve(self, name):
        if name == IDENTITY_SYMBOL and IDENTITY_SYMBOL not in self.generator_names:
            return self.identity
        return self.symbol(name)

    def element_order(self, a, bound=DEFAULT_ORDER_BOUND):
        """Order of ``a``: FINITE(n) with n <= bound, INFINITE with proof, or EXHAUSTED_BOUND."""
        self.check(a)
        if bound < 1:
            raise ValueError("order bound must be positive")
        if a == self.identity:
            return OrderResult(OrderKind.FINITE, n=1)
        if self.structurally_infinite(a):
            return OrderResult(OrderKind.INFINITE, proof="structural")
        n = self.closed_order(a)
        if n is not None:
            if n <= bound:
                return OrderResult(OrderKind.FINITE, n=n)
            return OrderResult(OrderKind.EXHAUSTED_BOUND, bound=bound)
        x = a
        for n in range(1, bound + 1):
            if x == self.identity:
                return OrderResult(OrderKind.FINITE, n=n)
            x = self._multiply(x, a)
        logger.debug("Order of %s not found up to %d", self.format(a), bound)
        return OrderResult(OrderKind.EXHAUSTED_BOUND, bound=bound)

    def ball(self, radius):
        """All elements of word length <= radius, in breadth-first order."""
        steps = []
        for s in self.ball_generators():
            steps.append(s)
            inv = self._inverse(s)
            if inv != s:
                steps.append(inv)
        seen = {self.identity: 0}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            if seen[x] == radius:
                continue
            for s in steps:
                y = self._multiply(x, s)
                if y not in seen:
                    seen[y] = seen[x] + 1
                    queue.append(y)
        return list(seen)

    def random_element(self, rng, radius=4):
        steps = self.ball_generators()
        result = self.identity
        for _ in range(rng.randint(0, radius)):
            s = rng.choice(steps)
            result = self._multiply(result, s if rng.random() < 0.5 else self._inverse(s))
        return result

    def sort_key(self, a):
        return self.format(a)


class IntegerGroup(Group):
    """The additive integers, generator ``g`` = 1."""

    family = "integers"

    @property
    def identity(self):
        return 0

    @property
    def generator_names(self):
        return ("g",)

    def contains(self, a):
        return isinstance(a, int) and not isinstance(a, bool)

    def _multiply(self, a, b):
        return a + b

    def _inverse(self, a):
        return -a

    def power(self, a, n):
        self.check(a)
        return a * n

    def symbol(self, name):
        if name != "g":
            raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")
        return 1

    def structurally_infinite(self, a):
        return a != 0

    def format(self, a):
        return _join_word(_power_word("g", a))

    def ball(self, radius):
        return [0] + [s * n for n in range(1, radius + 1) for s in (1, -1)]


class FreeAbelianGroup(Group):
    """Z^rank as integer vectors, generators ``x1 .. x<rank>``."""

    family = "free-abelian"

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank

    @property
    def name(self):
        return f"free-abelian:{self.rank}"

    @property
    def identity(self):
        return (0,) * self.rank

    @property
    def generator_names(self):
        return tuple(f"x{i}" for i in range(1, self.rank + 1))

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == self.rank and all(type(c) is int for c in a)

    def _multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inverse(self, a):
        return tuple(-x for x in a)

    def symbol(self, name):
        if name not in self.generator_names:
            raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")
        i = self.generator_names.index(name)
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def structurally_infinite(self, a):
        return any(a)

    def format(self, a):
        parts = []
        for name, c in zip(self.generator_names, a):
            parts.extend(_power_word(name, c))
        return _join_word(parts)


class FiniteGroup(Group):
    """Common behaviour of groups with an explicit element list."""

    @property
    def is_finite(self):
        return True

    @property
    @abstractmethod
    def order(self):
        ...

    @abstractmethod
    def elements(self):
        ...

    def random_element(self, rng, radius=4):
        return rng.choice(self.elements())


class CyclicGroup(FiniteGroup):
    """Z/n with generator ``c``; elements are residues 0..n-1."""

    family = "cyclic"

    def __init__(self, n):
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        self.n = n

    @property
    def name(self):
        return f"cyclic:{self.n}"

    @property
    def order(self):
        return self.n

    @property
    def identity(self):
        return 0

    @property
    def generator_names(self):
        return ("c",) if self.n > 1 else ()

    def elements(self):
        return list(range(self.n))

    def contains(self, a):
        return type(a) is int and 0 <= a < self.n

    def _multiply(self, a, b):
        return (a + b) % self.n

    def _inverse(self, a):
        return -a % self.n

    def symbol(self, name):
        if name != "c" or self.n == 1:
            raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")
        return 1 % self.n

    def closed_order(self, a):
        return self.n // gcd(a, self.n)

    def format(self, a):
        return _join_word(_power_word("c", a))


class TableGroup(FiniteGroup):
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of a*b; index 0 is the identity. Element
    labels double as word symbols, so ``t12`` parses in S3 even though only
    the declared generators are listed in ``generator_names``.
    """

    family = "table"

    def __init__(self, name, table, generators, labels=None):
        self.table_name = name
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        self.labels = tuple(labels) if labels else (IDENTITY_SYMBOL,) + tuple(f"g{i}" for i in range(1, n))
        self._validate()
        self._index = {label: i for i, label in enumerate(self.labels)}
        resolved = []
        for g in generators:
            if isinstance(g, int) and 0 <= g < n:
                resolved.append(self.labels[g])
            elif g in self._index:
                resolved.append(g)
            else:
                raise InvalidGroupTable(f"generator {g!r} is not an element of {name}")
        self._generators = tuple(resolved)
        self._inverses = tuple(row.index(0) for row in self.table)

    def _validate(self):
        n = len(self.table)
        if n == 0 or n > MAX_TABLE_ORDER:
            raise InvalidGroupTable(f"table order {n} outside 1..{MAX_TABLE_ORDER}")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidGroupTable("element labels must be distinct and match the table order")
        full = set(range(n))
        for i, row in enumerate(self.table):
            if len(row) != n or set(row) != full:
                raise InvalidGroupTable(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise InvalidGroupTable(f"column {j} is not a permutation of 0..{n - 1}")
        if self.table[0] != tuple(range(n)) or any(self.table[i][0] != i for i in range(n)):
            raise InvalidGroupTable("index 0 must be the identity")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise InvalidGroupTable(f"associativity fails for ({a}, {b}, {c})")

    @property
    def name(self):
        return self.table_name

    @property
    def order(self):
        return len(self.table)

    @property
    def identity(self):
        return 0

    @property
    def generator_names(self):
        return self._generators

    def elements(self):
        return list(range(self.order))

    def contains(self, a):
        return type(a) is int and 0 <= a < self.order

    def _multiply(self, a, b):
        return self.table[a][b]

    def _inverse(self, a):
        return self._inverses[a]

    def symbol(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown symbol '{name}' for {self.name}") from None

    def _resolve(self, name):
        return self.symbol(name)

    def format(self, a):
        return self.labels[a]


@dataclass(frozen=True)
class DihedralElement:
    """r^k s^flip in the infinite dihedral group."""

    k: int
    flip: int = 0


class InfiniteDihedralGroup(Group):
    """D-infinity = <r, s | s^2 = (rs)^2 = e>."""

    family = "d-infty"

    @property
    def identity(self):
        return DihedralElement(0, 0)

    @property
    def generator_names(self):
        return ("r", "s")

    def contains(self, a):
        return isinstance(a, DihedralElement) and a.flip in (0, 1)

    def _multiply(self, a, b):
        k = a.k - b.k if a.flip else a.k + b.k
        return DihedralElement(k, a.flip ^ b.flip)

    def _inverse(self, a):
        return a if a.flip else DihedralElement(-a.k, 0)

    def symbol(self, name):
        if name == "r":
            return DihedralElement(1, 0)
        if name == "s":
            return DihedralElement(0, 1)
        raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")

    def structurally_infinite(self, a):
        return a.flip == 0 and a.k != 0

    def closed_order(self, a):
        return 2 if a.flip else None

    def format(self, a):
        return _join_word(_power_word("r", a.k) + (["s"] if a.flip else []))


@dataclass(frozen=True)
class RestrictedDihedralElement:
    """Element of the restricted product of the dihedral groups D_(2i+1), i >= 1.

    Coordinate i is rho^amount sigma^flip in the dihedral group of order
    2(2i+1). Outside ``exceptions`` the coordinate is the pure rotation by
    ``tail`` (reduced mod 2i+1). ``exceptions`` is a sorted tuple of
    ``(i, amount, flip)`` with no entry equal to the tail value.
    """

    exceptions: tuple = ()
    tail: int = 0

    def coordinate(self, i):
        for j, amount, flip in self.exceptions:
            if j == i:
                return amount, flip
        return self.tail % (2 * i + 1), 0

    @property
    def flips(self):
        return tuple(i for i, _, flip in self.exceptions if flip)


_COORD_SYMBOL = re.compile(r"^([rs])(\d+)$")


class RestrictedDihedralGroup(Group):
    """Restricted product of D_3, D_5, D_7, ...: almost every coordinate is a rotation.

    Symbols: ``r`` rotates every coordinate by one, ``r<i>`` rotates coordinate
    i only and ``s<i>`` is the reflection at coordinate i.
    """

    family = "restricted-dihedral"

    @property
    def identity(self):
        return RestrictedDihedralElement()

    @property
    def generator_names(self):
        return ("r", "r<i>", "s<i>")

    @staticmethod
    def modulus(i):
        return 2 * i + 1

    def element(self, exceptions=(), tail=0):
        """Normalise ``exceptions`` given as (i, amount, flip) triples or an i -> (amount, flip) map."""
        items = exceptions.items() if isinstance(exceptions, dict) else ((i, (a, f)) for i, a, f in exceptions)
        coords = {}
        for i, (amount, flip) in items:
            if i < 1 or flip not in (0, 1):
                raise ValueError(f"invalid coordinate ({i}, {amount}, {flip})")
            m = self.modulus(i)
            if (amount - tail) % m or flip:
                coords[i] = (amount % m, flip)
        return RestrictedDihedralElement(tuple((i, a, f) for i, (a, f) in sorted(coords.items())), tail)

    def contains(self, a):
        return isinstance(a, RestrictedDihedralElement)

    @staticmethod
    def _coordinate_product(x, y, m):
        (a1, f1), (a2, f2) = x, y
        return ((a1 - a2 if f1 else a1 + a2) % m, f1 ^ f2)

    def _multiply(self, a, b):
        keys = {i for i, _, _ in a.exceptions} | {i for i, _, _ in b.exceptions}
        coords = {i: self._coordinate_product(a.coordinate(i), b.coordinate(i), self.modulus(i)) for i in keys}
        return self.element(coords, a.tail + b.tail)

    def _inverse(self, a):
        coords = {i: ((amount if flip else -amount), flip) for i, amount, flip in a.exceptions}
        return self.element(coords, -a.tail)

    def symbol(self, name):
        if name == "r":
            return RestrictedDihedralElement((), 1)
        match = _COORD_SYMBOL.match(name)
        if not match or int(match.group(2)) < 1:
            raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")
        i = int(match.group(2))
        if match.group(1) == "r":
            return self.element({i: (1, 0)})
        return self.element({i: (0, 1)})

    def ball_generators(self):
        return [self.symbol(n) for n in ("r", "r1", "s1", "r2", "s2")]

    def structurally_infinite(self, a):
        return a.tail != 0

    def closed_order(self, a):
        if a.tail:
            return None
        orders = [2 if flip else self.modulus(i) // gcd(amount, self.modulus(i)) for i, amount, flip in a.exceptions]
        return int(lcm(orders)) if orders else 1

    def format(self, a):
        parts = _power_word("r", a.tail)
        for i, amount, flip in a.exceptions:
            parts.extend(_power_word(f"r{i}", (amount - a.tail) % self.modulus(i)))
            if flip:
                parts.append(f"s{i}")
        return _join_word(parts)

    def random_element(self, rng, radius=4, max_flips=3, max_index=8):
        """Random element with at most ``radius`` exceptions of which at most ``max_flips`` flip."""
        tail = rng.randint(-radius, radius)
        indices = rng.sample(range(1, max_index + 1), rng.randint(0, min(radius, max_index)))
        flipped = set(rng.sample(indices, rng.randint(0, min(max_flips, len(indices)))))
        coords = {i: (rng.randrange(self.modulus(i)), 1 if i in flipped else 0) for i in indices}
        return self.element(coords, tail)


@dataclass(frozen=True)
class AffineElement:
    """The affine map x -> 2^p x + q of the rationals, q dyadic."""

    p: int
    q: Fraction = Fraction(0)

    def __call__(self, x):
        return Fraction(2) ** self.p * x + self.q


class BaumslagSolitarGroup(Group):
    """BS(1,2) = <a, b | a b a^-1 = b^2>, realised faithfully by affine maps.

    a is x -> 2x and b is x -> x + 1; products compose maps, left factor last.
    """

    family = "bs12"

    @property
    def identity(self):
        return AffineElement(0, Fraction(0))

    @property
    def generator_names(self):
        return ("a", "b")

    def contains(self, a):
        if not isinstance(a, AffineElement) or not isinstance(a.q, Fraction):
            return False
        den = a.q.denominator
        return den & (den - 1) == 0

    def _multiply(self, x, y):
        return AffineElement(x.p + y.p, Fraction(2) ** x.p * y.q + x.q)

    def _inverse(self, x):
        return AffineElement(-x.p, -(Fraction(2) ** -x.p) * x.q)

    def symbol(self, name):
        if name == "a":
            return AffineElement(1, Fraction(0))
        if name == "b":
            return AffineElement(0, Fraction(1))
        raise UnknownGenerator(f"unknown generator '{name}' for {self.name}")

    def structurally_infinite(self, a):
        # BS(1,2) is torsion-free
        return a != self.identity

    def format(self, a):
        j = a.q.denominator.bit_length() - 1
        m = a.q.numerator
        if m == 0:
            return _join_word(_power_word("a", a.p))
        return _join_word(_power_word("a", -j) + _power_word("b", m) + _power_word("a", j + a.p))


class DirectProductGroup(Group):
    """Direct product of two groups; elements are pairs.

    Symbols keep their factor names when the factors' names are disjoint and
    get ``_1``/``_2`` suffixes otherwise.
    """

    family = "product"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        clash = set(left.generator_names) & set(right.generator_names)
        self._suffixes = ("_1", "_2") if clash else ("", "")

    @property
    def name(self):
        return f"product:{self.left.name},{self.right.name}"

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    @property
    def order(self):
        return self.left.order * self.right.order

    def elements(self):
        return [(x, y) for x in self.left.elements() for y in self.right.elements()]

    @property
    def identity(self):
        return (self.left.identity, self.right.identity)

    @property
    def generator_names(self):
        lsuf, rsuf = self._suffixes
        return tuple(n + lsuf for n in self.left.generator_names) + tuple(n + rsuf for n in self.right.generator_names)

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == 2 and self.left.contains(a[0]) and self.right.contains(a[1])

    def _multiply(self, a, b):
        return (self.left._multiply(a[0], b[0]), self.right._multiply(a[1], b[1]))

    def _inverse(self, a):
        return (self.left._inverse(a[0]), self.right._inverse(a[1]))

    def symbol(self, name):
        lsuf, rsuf = self._suffixes
        for factor, suffix, slot in ((self.left, lsuf, 0), (self.right, rsuf, 1)):
            if suffix and not name.endswith(suffix):
                continue
            base = name[: -len(suffix)] if suffix else name
            try:
                x = factor._resolve(base)
            except UnknownGenerator:
                continue
            return (x, self.right.identity) if slot == 0 else (self.left.identity, x)
        raise UnknownGenerator(f"unknown symbol '{name}' for {self.name}")

    def structurally_infinite(self, a):
        return self.left.structurally_infinite(a[0]) or self.right.structurally_infinite(a[1])

    def closed_order(self, a):
        left = self.left.element_order(a[0], DEFAULT_ORDER_BOUND)
        right = self.right.element_order(a[1], DEFAULT_ORDER_BOUND)
        if left.is_finite and right.is_finite:
            return int(lcm(left.n, right.n))
        return None

    def format(self, a):
        lsuf, rsuf = self._suffixes
        parts = []
        for factor, x, suffix in ((self.left, a[0], lsuf), (self.right, a[1], rsuf)):
            if x == factor.identity:
                continue
            text = factor.format(x)
            if suffix:
                text = " ".join(_suffix_token(token, suffix) for token in text.split())
            parts.append(text)
        return _join_word(parts)


def _suffix_token(token, suffix):
    base, sep, exponent = token.partition("^")
    return f"{base}{suffix}{sep}{exponent}"
