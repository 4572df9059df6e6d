"""Tests for suites.py — every suite end to end with small bounds, plus runner isolation."""

import pytest

from graded_goldie import suites
from graded_goldie.exceptions import ConfigError
from graded_goldie.report import Status, to_json
from graded_goldie.suites import run_suite

SMALL = {"samples": 10, "max_degree": 3, "n_max": 50, "m_max": 20}


def _statuses(report):
    return {check.name: check.status for check in report.checks}


class TestSuites:
    def test_counterexample(self, parameters):
        report = run_suite("counterexample", parameters("counterexample", samples=20, max_degree=3))
        assert report.exit_code == 0
        census = next(c for c in report.checks if c.name == "census")
        assert census.witness["summary"] == "S = homogeneous units in degrees e, s"
        assert report.instance == "M_2(k[t] over d-infty, deg t = r)(e, s)"

    def test_counterexample_over_bs12(self, parameters):
        params = parameters("counterexample", group="bs12", g="b", h="a", samples=20, max_degree=3)
        report = run_suite("counterexample", params)
        assert report.exit_code == 0
        checks = {check.name: check for check in report.checks}
        assert checks["premise"].status is Status.PASS
        assert checks["premise"].witness["kind"] == "exhausted_bound"
        assert "pure dilation" in checks["premise"].witness["certificate"]
        assert checks["census"].witness["summary"] == "S = scalar diagonal units"
        assert checks["quotient_trivial"].status is Status.PASS

    def test_nastasescu(self, parameters):
        report = run_suite("nastasescu", parameters("nastasescu", samples=20, max_degree=4))
        assert report.exit_code == 0
        statuses = _statuses(report)
        assert statuses["periodic_power_infinite"] is Status.PASS
        assert statuses["quotient_trivial"] is Status.PASS

    def test_bazhenov(self, parameters):
        report = run_suite("bazhenov", parameters("bazhenov", samples=20, max_degree=3))
        assert report.exit_code == 0

    def test_quotient(self, parameters):
        report = run_suite("quotient", parameters("quotient"))
        assert report.exit_code == 0
        assert "group_algebra_census" in _statuses(report)

    def test_quotient_with_chosen_group(self, parameters):
        report = run_suite("quotient", parameters("quotient", group="cyclic:3"))
        assert _statuses(report)["chosen_group_quotient_trivial"] is Status.PASS

    def test_gs_construction(self, parameters):
        assert run_suite("gs-construction", parameters("gs-construction")).exit_code == 0

    def test_phi(self, parameters):
        report = run_suite("phi", parameters("phi", samples=20))
        assert report.exit_code == 0
        assert len(report.checks) == 6

    def test_simplicity(self, parameters):
        assert run_suite("simplicity", parameters("simplicity", samples=10)).exit_code == 0

    def test_group_conditions_dihedral(self, parameters):
        report = run_suite("group-conditions", parameters("group-conditions", n_max=50, m_max=20))
        assert report.exit_code == 0
        assert report.instance == "group d-infty, g = s, h = r"

    def test_group_conditions_cyclic(self, parameters):
        report = run_suite("group-conditions", parameters("group-conditions", group="cyclic:4", n_max=50, m_max=20))
        assert report.exit_code == 0
        assert "mn_conclusion_audit" in _statuses(report)

    def test_remark1_audit(self, parameters):
        report = run_suite("remark1-audit", parameters("remark1-audit", group="S3"))
        assert report.exit_code == 0
        audit = next(c for c in report.checks if c.name == "remark1_bound")
        assert audit.witness["finding"] is not None

    def test_klyachko(self, parameters):
        assert run_suite("klyachko", parameters("klyachko", samples=20)).exit_code == 0

    def test_star(self, parameters):
        assert run_suite("star", parameters("star")).exit_code == 0

    def test_all(self, parameters):
        report = run_suite("all", parameters("all", **SMALL))
        assert report.exit_code == 0
        names = {check.name.split(".")[0] for check in report.checks}
        assert names == set(suites.SUITES)

    def test_all_is_deterministic_for_a_seed(self, parameters):
        first = to_json(run_suite("all", parameters("all", seed=0, **SMALL)))
        second = to_json(run_suite("all", parameters("all", seed=0, **SMALL)))
        assert first == second


class TestRunner:
    def test_unknown_suite(self, parameters):
        with pytest.raises(ConfigError):
            run_suite("nope", parameters("nope"))

    def test_unknown_group(self, parameters):
        with pytest.raises(ConfigError):
            run_suite("group-conditions", parameters("group-conditions", group="nope"))

    def test_raising_check_is_isolated(self, parameters, monkeypatch):
        def boom():
            raise RuntimeError("broken")

        def fake(ctx):
            return "fake", [("boom", boom), ("ok", lambda: (Status.PASS, None))]

        monkeypatch.setitem(suites.SUITES, "counterexample", fake)
        report = run_suite("counterexample", parameters("counterexample"))
        assert _statuses(report) == {"boom": Status.FAIL, "ok": Status.PASS}
        assert report.checks[0].witness == {"error": "RuntimeError: broken"}
        assert report.exit_code == 1

    def test_raising_setup(self, parameters, monkeypatch):
        def fake(ctx):
            raise RuntimeError("no ring")

        monkeypatch.setitem(suites.SUITES, "counterexample", fake)
        report = run_suite("counterexample", parameters("counterexample"))
        assert [c.name for c in report.checks] == ["counterexample.setup"]
        assert report.exit_code == 1

    def test_timings_off_by_default(self, parameters):
        report = run_suite("star", parameters("star"))
        assert all(check.elapsed_ms == 0 for check in report.checks)

    def test_exhausted_without_certificate(self, parameters, monkeypatch):
        monkeypatch.setitem(suites.SUITES, "star", lambda ctx: ("fake", [("wait", lambda: (Status.EXHAUSTED, {}))]))
        assert run_suite("star", parameters("star")).exit_code == 2
