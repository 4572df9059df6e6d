"""Tests for group_tables.py — built-in tables, JSON loading and name lookup."""

import json

import pytest

from graded_goldie.exceptions import ConfigError, InvalidGroupTable
from graded_goldie.group_tables import BUILTIN_TABLES, builtin_table, group_from_name, load_group_table
from graded_goldie.groups import (
    BaumslagSolitarGroup,
    CyclicGroup,
    DirectProductGroup,
    FreeAbelianGroup,
    InfiniteDihedralGroup,
    IntegerGroup,
    RestrictedDihedralGroup,
)


def _write_table(tmp_path, data):
    path = tmp_path / "group.json"
    path.write_text(json.dumps(data))
    return str(path)


class TestBuiltinTables:
    @pytest.mark.parametrize("name,order", [("S3", 6), ("D4", 8), ("Q8", 8), ("Z2", 2), ("A4", 12)])
    def test_orders(self, name, order):
        assert builtin_table(name).order == order

    def test_case_insensitive(self):
        assert builtin_table("s3").name == "S3"

    def test_s3_labels(self):
        assert builtin_table("S3").labels == ("e", "c123", "c132", "t12", "t13", "t23")

    def test_all_builtins_are_valid_groups(self):
        for name in BUILTIN_TABLES:
            group = builtin_table(name)
            assert group.identity == 0
            assert all(group.multiply(x, group.inverse(x)) == 0 for x in group.elements())

    def test_d4_relation(self):
        d4 = builtin_table("D4")
        r, s = d4.symbol("r"), d4.symbol("s")
        assert d4.conjugate(s, r) == d4.inverse(r)

    def test_unknown(self):
        with pytest.raises(ConfigError, match="built-ins"):
            builtin_table("S4")


class TestLoadGroupTable:
    def test_loads_cyclic_three(self, tmp_path):
        path = _write_table(
            tmp_path,
            {"name": "Z3", "order": 3, "generators": ["a"], "elements": ["e", "a", "b"],
             "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]},
        )
        group = load_group_table(path)
        assert group.name == "Z3"
        assert group.power(group.symbol("a"), 3) == group.identity

    def test_index_generators(self, tmp_path):
        path = _write_table(tmp_path, {"name": "Z2", "order": 2, "generators": [1], "table": [[0, 1], [1, 0]]})
        assert load_group_table(path).generator_names == ("g1",)

    def test_missing_key(self, tmp_path):
        path = _write_table(tmp_path, {"name": "Z2", "order": 2, "table": [[0, 1], [1, 0]]})
        with pytest.raises(InvalidGroupTable, match="generators"):
            load_group_table(path)

    def test_order_mismatch(self, tmp_path):
        path = _write_table(tmp_path, {"name": "Z2", "order": 3, "generators": [1], "table": [[0, 1], [1, 0]]})
        with pytest.raises(InvalidGroupTable, match="declared order"):
            load_group_table(path)

    def test_non_associative(self, tmp_path):
        # Latin square with identity 0 that is not a group
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        path = _write_table(tmp_path, {"name": "L5", "order": 5, "generators": [1], "table": table})
        with pytest.raises(InvalidGroupTable, match="associativity"):
            load_group_table(path)

    def test_unreadable(self, tmp_path):
        with pytest.raises(InvalidGroupTable):
            load_group_table(str(tmp_path / "missing.json"))


class TestGroupFromName:
    @pytest.mark.parametrize(
        "name,cls",
        [
            ("integers", IntegerGroup),
            ("d-infty", InfiniteDihedralGroup),
            ("restricted-dihedral", RestrictedDihedralGroup),
            ("bs12", BaumslagSolitarGroup),
            ("cyclic:4", CyclicGroup),
            ("free-abelian:2", FreeAbelianGroup),
            ("product:cyclic:2,cyclic:3", DirectProductGroup),
        ],
    )
    def test_families(self, name, cls):
        assert isinstance(group_from_name(name), cls)

    def test_product_factors(self):
        group = group_from_name("product:d-infty,S3")
        assert group.right.name == "S3"
        assert not group.is_finite

    def test_table_file(self, tmp_path):
        path = _write_table(tmp_path, {"name": "Z2", "order": 2, "generators": [1], "table": [[0, 1], [1, 0]]})
        assert group_from_name("table", path).order == 2

    @pytest.mark.parametrize("name", ["cyclic:x", "cyclic:0", "product:cyclic:2", "table", "nope"])
    def test_rejects(self, name):
        with pytest.raises(ConfigError):
            group_from_name(name)
