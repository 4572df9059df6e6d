"""Tests for linalg.py — kernels, ranks and exact solves over ring coordinates."""

from graded_goldie.linalg import combine, kernel, nullspace_vectors, rank, solve, span_equal


def _xy(ring):
    symbols = ring.symbols()
    return symbols["x"], symbols["y"]


class TestKernel:
    def test_single_relation(self, qq):
        (vec,) = kernel(qq, [[qq(1), qq(1)]], 2)
        assert vec[0] + vec[1] == qq.zero
        assert any(vec)

    def test_no_rows_gives_standard_basis(self, qq):
        assert kernel(qq, [], 2) == [[qq.one, qq.zero], [qq.zero, qq.one]]

    def test_no_columns(self, qq):
        assert kernel(qq, [[qq(1)]], 0) == []

    def test_full_rank(self, qq):
        assert kernel(qq, [[qq(1), qq(0)], [qq(0), qq(2)]], 2) == []


class TestRank:
    def test_dependent_values(self, nastasescu):
        x, y = _xy(nastasescu)
        assert rank(nastasescu, [x, nastasescu.scale(x, nastasescu.field(2)), y]) == 2

    def test_empty(self, nastasescu):
        assert rank(nastasescu, []) == 0

    def test_nullspace(self, nastasescu):
        x, _ = _xy(nastasescu)
        (vec,) = nullspace_vectors(nastasescu, [x, nastasescu.scale(x, nastasescu.field(2))])
        assert nastasescu.is_zero(combine(nastasescu, [x, nastasescu.scale(x, nastasescu.field(2))], vec))


class TestSolve:
    def test_in_span(self, nastasescu):
        f = nastasescu.field
        x, y = _xy(nastasescu)
        target = nastasescu.add(x, nastasescu.scale(y, f(3)))
        assert solve(nastasescu, [x, y], target) == [f(1), f(3)]

    def test_outside_span(self, nastasescu):
        x, y = _xy(nastasescu)
        assert solve(nastasescu, [x], y) is None

    def test_zero_target(self, nastasescu):
        x, _ = _xy(nastasescu)
        f = nastasescu.field
        assert solve(nastasescu, [x], nastasescu.zero()) == [f.zero]


class TestSpan:
    def test_change_of_basis(self, nastasescu):
        x, y = _xy(nastasescu)
        assert span_equal(nastasescu, [x, y], [nastasescu.add(x, y), nastasescu.sub(x, y)])

    def test_proper_subspace(self, nastasescu):
        x, y = _xy(nastasescu)
        assert not span_equal(nastasescu, [x], [x, y])
