"""Tests for bazhenov.py — the constrained subring of M_2(k[t])(e, s)."""

from graded_goldie.bazhenov import bazhenov_audit


def _gens(ring):
    return {name: ring.element(value) for name, value in ring.generators().items()}


class TestBazhenovRing:
    def test_xz_equals_zy(self, bazhenov):
        g = _gens(bazhenov)
        t = bazhenov.base.symbols()["t"]
        assert g["x"] * g["z"] == bazhenov.element(bazhenov.matrix_unit(1, 2, t))
        assert g["x"] * g["z"] == g["z"] * g["y"]

    def test_z_squares_to_one(self, bazhenov):
        z = _gens(bazhenov)["z"]
        assert z * z == bazhenov.element(bazhenov.one())

    def test_membership(self, bazhenov):
        base = bazhenov.base
        t, one = base.symbols()["t"], base.one()
        assert bazhenov.contains_value(bazhenov.from_rows([[t, one], [one, t]]))
        two = base.scalar(bazhenov.field(2))
        assert not bazhenov.contains_value(bazhenov.from_rows([[one, base.zero()], [base.zero(), two]]))

    def test_reflection_component_is_spanned_by_z(self, bazhenov):
        basis = bazhenov.component_basis(bazhenov.group.symbol("s"), 4)
        assert [bazhenov.format_value(b) for b in basis] == ["[[0, 1], [1, 0]]"]

    def test_identity_component_is_scalar(self, bazhenov):
        basis = bazhenov.component_basis(bazhenov.group.identity, 4)
        assert len(basis) == 1
        assert bazhenov.format_value(basis[0]) == "[[1, 0], [0, 1]]"

    def test_z_is_its_own_inverse(self, bazhenov):
        z = bazhenov.generators()["z"]
        assert bazhenov.invert_value(z) == z

    def test_matrix_units_are_not_members(self, bazhenov):
        assert bazhenov.invert_value(bazhenov.matrix_unit(1, 2)) is None
        assert bazhenov.mask_witness(bazhenov.matrix_unit(1, 1)) is None


class TestBazhenovAudit:
    def test_passes(self, bazhenov):
        audit = bazhenov_audit(bazhenov, samples=100, bound=3)
        assert audit.passed
        assert audit.relations == {"xy=0": True, "yx=0": True, "z^2=1": True, "xz=zy": True, "yz=zx": True}

    def test_reports_literal_relation(self, bazhenov):
        audit = bazhenov_audit(bazhenov, samples=10)
        assert audit.literal_relations["xz=yx"] is False
        assert audit.literal_relations["yx"] == "[[0, 0], [0, 0]]"

    def test_generator_degrees(self, bazhenov):
        degrees = bazhenov_audit(bazhenov, samples=10).degrees
        assert degrees["x"] == {"expected": "r", "found": "r", "holds": True}
        assert degrees["y"]["found"] == "r^-1"
        assert degrees["z"]["found"] == "s"
        assert degrees["R_s"]["holds"]
