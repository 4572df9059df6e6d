"""Exact linear algebra over ring coordinates, backed by sympy DomainMatrix."""

import logging

from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


def kernel(field, rows, ncols):
    """Basis of {c : rows * c = 0} as lists of field elements."""
    if ncols == 0:
        return []
    if not rows:
        return [[field.one if i == j else field.zero for j in range(ncols)] for i in range(ncols)]
    m = DomainMatrix([list(r) for r in rows], (len(rows), ncols), field.domain)
    return [vec for vec in m.nullspace().to_list() if any(vec)]


def _keys(ring, values):
    keys = set()
    for v in values:
        keys.update(ring.coordinates(v))
    return sorted(keys, key=repr)


def coordinate_rows(ring, values, keys=None):
    """Coordinate matrix with one column per value, one row per basis key."""
    keys = _keys(ring, values) if keys is None else keys
    coords = [ring.coordinates(v) for v in values]
    return [[c.get(k, ring.field.zero) for c in coords] for k in keys]


def nullspace_vectors(ring, values):
    """All coefficient vectors c with sum c_j values_j = 0, as a basis."""
    return kernel(ring.field, coordinate_rows(ring, values), len(values))


def rank(ring, values):
    rows = coordinate_rows(ring, values)
    if not rows or not values:
        return 0
    return DomainMatrix(rows, (len(rows), len(values)), ring.field.domain).rank()


def combine(ring, values, coeffs):
    total = ring.zero()
    for v, c in zip(values, coeffs):
        if c:
            total = ring.add(total, ring.scale(v, c))
    return total


def solve(ring, columns, target):
    """Coefficients c with sum c_j columns_j = target, or None if there are none."""
    K = ring.field.domain
    keys = _keys(ring, list(columns) + [target])
    if not keys:
        return [ring.field.zero] * len(columns)
    rows = coordinate_rows(ring, list(columns) + [target], keys)
    n = len(columns)
    reduced, pivots = DomainMatrix(rows, (len(keys), n + 1), K).rref()
    if n in pivots:
        return None
    entries = reduced.to_list()
    solution = [ring.field.zero] * n
    for i, col in enumerate(pivots):
        solution[col] = entries[i][n] / entries[i][col]
    return solution


def span_contains(ring, basis, values):
    base_rank = rank(ring, basis)
    return all(rank(ring, list(basis) + [v]) == base_rank for v in values)


def span_equal(ring, left, right):
    return span_contains(ring, left, right) and span_contains(ring, right, left)
