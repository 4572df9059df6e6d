"""Built-in finite group tables, JSON table loading and group lookup by name."""

import json
import logging
from itertools import permutations
from pathlib import Path

from graded_goldie.exceptions import ConfigError, InvalidGroupTable
from graded_goldie.groups import (
    BaumslagSolitarGroup,
    CyclicGroup,
    DirectProductGroup,
    FreeAbelianGroup,
    InfiniteDihedralGroup,
    IntegerGroup,
    RestrictedDihedralGroup,
    TableGroup,
)

logger = logging.getLogger(__name__)


def _compose(p, q):
    """(p o q)(i) = p[q[i]]; the right factor acts first."""
    return tuple(p[i] for i in q)


def table_from_permutations(name, perms, labels, generators):
    """Build a TableGroup from permutations listed identity first."""
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_compose(p, q)] for q in perms] for p in perms]
    return TableGroup(name, table, generators, labels)


def _symmetric_3():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (2, 1, 0), (0, 2, 1)]
    labels = ["e", "c123", "c132", "t12", "t13", "t23"]
    return table_from_permutations("S3", perms, labels, ["c123", "t12"])


def _dihedral_4():
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    identity = (0, 1, 2, 3)
    rotations = [identity]
    for _ in range(3):
        rotations.append(_compose(r, rotations[-1]))
    perms = rotations + [_compose(rot, s) for rot in rotations]
    labels = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
    return table_from_permutations("D4", perms, labels, ["r", "s"])


_UNIT_PRODUCTS = {
    ("1", "1"): (1, "1"),
    ("1", "i"): (1, "i"),
    ("1", "j"): (1, "j"),
    ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"),
    ("i", "i"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"),
    ("j", "i"): (-1, "k"),
    ("j", "j"): (-1, "1"),
    ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"),
    ("k", "i"): (1, "j"),
    ("k", "j"): (-1, "i"),
    ("k", "k"): (-1, "1"),
}


def _quaternion_8():
    elements = [(sign, unit) for unit in ("1", "i", "j", "k") for sign in (1, -1)]
    labels = []
    for sign, unit in elements:
        base = "e" if unit == "1" else unit
        if sign == 1:
            labels.append(base)
        else:
            labels.append("m" if unit == "1" else f"m{unit}")
    index = {x: n for n, x in enumerate(elements)}
    table = []
    for s1, u1 in elements:
        row = []
        for s2, u2 in elements:
            sign, unit = _UNIT_PRODUCTS[(u1, u2)]
            row.append(index[(s1 * s2 * sign, unit)])
        table.append(row)
    return TableGroup("Q8", table, ["i", "j"], labels)


def _cyclic_2():
    return TableGroup("Z2", [[0, 1], [1, 0]], ["u"], ["e", "u"])


def _sign(p):
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def _alternating_4():
    perms = [p for p in permutations(range(4)) if _sign(p) == 1]
    labels = ["e" if p == (0, 1, 2, 3) else "p" + "".join(map(str, p)) for p in perms]
    return table_from_permutations("A4", perms, labels, ["p1203", "p1032"])


BUILTIN_TABLES = {
    "S3": _symmetric_3,
    "D4": _dihedral_4,
    "Q8": _quaternion_8,
    "Z2": _cyclic_2,
    "A4": _alternating_4,
}


def builtin_table(name):
    """Look up one of the built-in tables (case-insensitive).

    Raises:
        ConfigError: If no built-in table has that name.
    """
    for key, factory in BUILTIN_TABLES.items():
        if key.lower() == name.lower():
            return factory()
    raise ConfigError(f"unknown group table '{name}'; built-ins are {', '.join(BUILTIN_TABLES)}")


def load_group_table(path):
    """Load a finite group from a JSON table file.

    The file holds ``{"name", "order", "generators", "table"}`` and optionally
    ``"elements"`` (labels, identity first). Generators are labels or indices.

    Raises:
        InvalidGroupTable: If the file content does not describe a group.
    """
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidGroupTable(f"cannot read group table {path}: {e}") from e
    for key in ("name", "order", "generators", "table"):
        if key not in data:
            raise InvalidGroupTable(f"group table {path} is missing '{key}'")
    if data["order"] != len(data["table"]):
        raise InvalidGroupTable(f"declared order {data['order']} differs from table size {len(data['table'])}")
    group = TableGroup(data["name"], data["table"], data["generators"], data.get("elements"))
    logger.info("Loaded group table %s of order %d from %s", group.name, group.order, path)
    return group


def group_from_name(name, table_path=None):
    """Resolve a ``--group`` value to a group.

    Accepted: ``integers``, ``free-abelian:N``, ``cyclic:N``, a built-in table
    name, ``d-infty``, ``restricted-dihedral``, ``bs12``, ``product:A,B`` and
    ``table`` (with ``table_path``).

    Raises:
        ConfigError: For an unrecognised name.
    """
    key = name.strip().lower()
    if key == "table":
        if not table_path:
            raise ConfigError("group 'table' needs a table file")
        return load_group_table(table_path)
    if key in ("integers", "z"):
        return IntegerGroup()
    if key in ("d-infty", "dinf", "d_infty"):
        return InfiniteDihedralGroup()
    if key in ("restricted-dihedral", "klyachko"):
        return RestrictedDihedralGroup()
    if key in ("bs12", "bs(1,2)"):
        return BaumslagSolitarGroup()
    family, _, arg = key.partition(":")
    if family == "product" and arg:
        left, sep, right = arg.partition(",")
        if not sep:
            raise ConfigError(f"product group needs two factors, got '{name}'")
        return DirectProductGroup(group_from_name(left, table_path), group_from_name(right, table_path))
    if family in ("free-abelian", "cyclic"):
        try:
            n = int(arg)
        except ValueError as e:
            raise ConfigError(f"invalid size in group '{name}'") from e
        if n < 1:
            raise ConfigError(f"group size must be positive in '{name}'")
        return FreeAbelianGroup(n) if family == "free-abelian" else CyclicGroup(n)
    return builtin_table(name.strip())
