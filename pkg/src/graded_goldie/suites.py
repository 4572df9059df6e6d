"""Verification suites: each maps a parameter set to an ordered list of checks.

A check returns ``(status, witness)``. The runner isolates checks: one that
raises is logged and recorded as a failure, and the remaining checks still run.
"""

import logging
import time
from dataclasses import dataclass, field

from graded_goldie.bazhenov import BazhenovRing, bazhenov_audit
from graded_goldie.conditions import (
    SearchKind,
    case_analysis_check,
    cond2_witness,
    cond2prime_witness,
    conjugate_power_obstruction,
    degree_alignment,
    finite_group_analysis,
    klyachko_exponent,
    klyachko_survey,
    mn_conclusion_audit,
    remark1_bound_audit,
    star_induction_check,
)
from graded_goldie.exceptions import ConfigError, InfiniteOrderDegree, NotInIdeal
from graded_goldie.goldie import (
    annihilator_solve,
    annihilator_stability_check,
    descending_chain_report,
    e_faithful_probe,
    gr_simplicity_probe,
    gs_candidate_build,
    identity_component_lift,
    periodic_power_regularize,
    regular_census,
    regularity_certify,
)
from graded_goldie.group_tables import builtin_table, group_from_name
from graded_goldie.groups import CyclicGroup, FiniteGroup, InfiniteDihedralGroup
from graded_goldie.parser import parse_element, parse_word
from graded_goldie.quotients import (
    GradedHom,
    embedding_audit,
    fraction_normalize_periodic,
    nastasescu_embed,
    phi_apply,
    phi_module_audit,
    quotient_is_trivial,
    x_inverse_audit,
)
from graded_goldie.report import Check, Report, Status
from graded_goldie.rings import (
    GradedPolyRing,
    component_pattern,
    counterexample_ring,
    grading_axiom_audit,
    group_algebra,
    laurent_matrix_ring,
    nastasescu_ring,
    scalar_matrix_ring,
)
from graded_goldie.scalars import CoefficientField

logger = logging.getLogger(__name__)

# Default (g, h) words per group family
DEFAULT_PAIRS = {
    "d-infty": ("s", "r"),
    "bs12": ("a", "b"),
    "restricted-dihedral": ("s1", "r"),
    "integers": ("g", "g"),
    "free-abelian": ("x1", "x2"),
}

# Group used when neither the command line nor the settings file names one
SUITE_GROUPS = {
    "group-conditions": "d-infty",
    "counterexample": "d-infty",
    "phi": "d-infty",
    "simplicity": "d-infty",
    "remark1-audit": "S3",
    "klyachko": "restricted-dihedral",
    "star": "bs12",
    "nastasescu": "integers",
}

# Audit sample counts used when --samples is not given
AUDIT_SAMPLES = {
    "grading": 1000,
    "embedding": 500,
    "phi": 200,
    "klyachko": 100,
    "simplicity": 50,
    "bazhenov": 500,
    "x-inverse": 200,
}

STAR_DEPTH = 5
CHAIN_STEPS = {"counterexample": 8, "nastasescu": 10, "bazhenov": 6}


@dataclass
class SuiteContext:
    suite: str
    parameters: dict
    timings: bool = False
    table_path: str | None = None
    _groups: dict = field(default_factory=dict)

    @property
    def coefficients(self):
        return CoefficientField.from_flag(self.parameters["field"])

    @property
    def group(self):
        name = self.parameters.get("group") or SUITE_GROUPS.get(self.suite, "d-infty")
        if name not in self._groups:
            self._groups[name] = group_from_name(name, self.table_path)
        return self._groups[name]

    def pair(self):
        """(g, h) from --g/--h, defaulting per group family."""
        group = self.group
        names = DEFAULT_PAIRS.get(group.family)
        if names is None:
            gens = list(group.generator_names)
            if not gens:
                raise ConfigError(f"group {group.name} has no generators to default --g/--h from")
            names = (gens[-1], gens[0])
        g_text = self.parameters.get("g") or names[0]
        h_text = self.parameters.get("h") or names[1]
        return parse_word(group, g_text), parse_word(group, h_text)

    def samples(self, audit):
        return self.parameters.get("samples") or AUDIT_SAMPLES[audit]


def _status_of(outcome):
    if outcome.exhausted and outcome.certificate is None:
        return Status.EXHAUSTED
    return Status.PASS


def _passed(flag):
    return Status.PASS if flag else Status.FAIL


def _expect_error(error_type, fn):
    try:
        result = fn()
    except error_type as e:
        return Status.PASS, {"raised": type(e).__name__, "message": str(e)}
    return Status.FAIL, {"expected": error_type.__name__, "returned": repr(result)}


def _census_checks(prefix, ring, bound, seed):
    """Census plus the trivial-quotient claim built on it."""
    state = {}

    def census():
        state["census"] = regular_census(ring, bound, seed=seed)
        report = state["census"]
        return _passed(report.complete), report.to_dict()

    def quotient():
        if "census" not in state:
            raise RuntimeError("census did not complete")
        return Status.PASS, quotient_is_trivial(ring, state["census"]).to_dict()

    return [(f"{prefix}census", census), (f"{prefix}quotient_trivial", quotient)]


def _group_conditions(ctx):
    group = ctx.group
    p = ctx.parameters
    g, h = ctx.pair()
    checks = []

    def cond2():
        outcome = cond2_witness(group, g, h, p["n_max"])
        if outcome.found and not outcome.witness.verify(group):
            return Status.FAIL, outcome.to_dict(group)
        return _status_of(outcome), outcome.to_dict(group)

    def cond2prime():
        outcome = cond2prime_witness(group, g, h, p["m_max"], p["m_max"])
        if outcome.found and not outcome.witness.verify(group):
            return Status.FAIL, outcome.to_dict(group)
        return _status_of(outcome), outcome.to_dict(group)

    def obstruction():
        outcome = conjugate_power_obstruction(group, g, h, p["m_max"], p["m_max"])
        return _status_of(outcome), outcome.to_dict(group)

    def alignment():
        outcome = degree_alignment(group, [h, group.conjugate(g, h)], p["m_max"])
        return _status_of(outcome), outcome.to_dict(group)

    checks += [("cond2", cond2), ("cond2prime", cond2prime), ("obstruction", obstruction), ("alignment", alignment)]
    if isinstance(group, FiniteGroup):

        def analysis():
            result = finite_group_analysis(group)
            return _passed(result.bound_holds), result.to_dict(group)

        def mn_audit():
            audit = mn_conclusion_audit(group)
            return _passed(not audit.violations), audit.to_dict()

        checks += [("finite_group_analysis", analysis), ("mn_conclusion_audit", mn_audit)]
    return f"group {group.name}, g = {group.format(g)}, h = {group.format(h)}", checks


def _counterexample(ctx):
    group = ctx.group
    p = ctx.parameters
    g, h = ctx.pair()
    ring = counterexample_ring(group, g, h, ctx.coefficients)
    bound = p["max_degree"]

    def premise():
        outcome = conjugate_power_obstruction(group, g, h, p["m_max"], p["m_max"])
        if outcome.kind is SearchKind.VIOLATION_FOUND:
            return Status.FAIL, outcome.to_dict(group)
        return _status_of(outcome), outcome.to_dict(group)

    def grading():
        audit = grading_axiom_audit(ring, ctx.samples("grading"), p["coeff_bound"], p["seed"])
        return _passed(audit.passed), audit.to_dict()

    def patterns():
        return Status.PASS, {
            ring.format_degree(sigma): component_pattern(ring, sigma, bound).render()
            for sigma in (group.identity, g, h)
        }

    def off_diagonal():
        cert = regularity_certify(ring, parse_element(ring, "e12"), bound)
        return _passed(cert.is_zero_divisor and cert.verify()), cert.to_dict()

    def chain():
        report = descending_chain_report(ring, parse_element(ring, "t * e11"), CHAIN_STEPS["counterexample"])
        return _passed(report.contained and report.strictly_descending), report.to_dict()

    def faithful():
        report = e_faithful_probe(ring, bound)
        return _passed(not report.faithful), report.to_dict()

    checks = [("premise", premise), ("grading_audit", grading), ("component_patterns", patterns)]
    checks += [("off_diagonal_zero_divisor", off_diagonal)]
    checks += _census_checks("", ring, bound, p["seed"])
    checks += [("descending_chain", chain), ("e_faithful", faithful)]
    return ring.describe(), checks


def _nastasescu(ctx):
    p = ctx.parameters
    group = ctx.group
    h = group.symbol(DEFAULT_PAIRS["integers"][1]) if group.family == "integers" else ctx.pair()[1]
    ring = nastasescu_ring(ctx.coefficients, group, h)
    bound = p["max_degree"]
    x = parse_element(ring, "x")

    def grading():
        audit = grading_axiom_audit(ring, ctx.samples("grading"), p["coeff_bound"], p["seed"])
        return _passed(audit.passed), audit.to_dict()

    def annihilator():
        ann = annihilator_solve(ring, x, "right", bound)
        pure_y = all(not b.value.constant and not b.value.x_part for b in ann.basis)
        return _passed(pure_y and len(ann.basis) == bound), ann.to_dict()

    def chain():
        report = descending_chain_report(ring, x, CHAIN_STEPS["nastasescu"])
        return _passed(report.contained and report.strictly_descending), report.to_dict()

    def embedding():
        audit = embedding_audit(ring, ctx.samples("embedding"), p["coeff_bound"], p["seed"])
        example = nastasescu_embed(ring, parse_element(ring, "x + 2"))
        return _passed(audit.passed), {**audit.to_dict(), "example": {"x + 2": example.format()}}

    def x_inverse():
        audit = x_inverse_audit(ring, ctx.samples("x-inverse"), p["coeff_bound"], p["seed"])
        return _passed(audit.passed), audit.to_dict()

    def faithful():
        report = e_faithful_probe(ring, bound)
        return _passed(not report.faithful), report.to_dict()

    def periodic():
        return _expect_error(InfiniteOrderDegree, lambda: periodic_power_regularize(ring, [x], bound, p["order_bound"]))

    checks = [("grading_audit", grading), ("annihilator_x", annihilator)]
    checks += _census_checks("", ring, bound, p["seed"])
    checks += [
        ("descending_chain", chain),
        ("embedding", embedding),
        ("x_inverse", x_inverse),
        ("e_faithful", faithful),
        ("periodic_power_infinite", periodic),
    ]
    return ring.describe(), checks


def _bazhenov(ctx):
    p = ctx.parameters
    ring = BazhenovRing(ctx.coefficients)
    bound = p["max_degree"]

    def audit():
        result = bazhenov_audit(ring, ctx.samples("bazhenov"), p["coeff_bound"], p["seed"])
        return _passed(result.passed), result.to_dict()

    def grading():
        result = grading_axiom_audit(ring, ctx.samples("grading"), p["coeff_bound"], p["seed"])
        return _passed(result.passed), result.to_dict()

    def chain():
        report = descending_chain_report(ring, parse_element(ring, "x"), CHAIN_STEPS["bazhenov"])
        return _passed(report.contained and report.strictly_descending), report.to_dict()

    checks = [("relations_and_membership", audit), ("grading_audit", grading)]
    checks += _census_checks("", ring, bound, p["seed"])
    checks += [("descending_chain", chain)]
    return ring.describe(), checks


def _quotient(ctx):
    p = ctx.parameters
    z2 = builtin_table("Z2")
    algebra = group_algebra(z2, ctx.coefficients)
    matrices = scalar_matrix_ring(z2, (z2.identity, z2.symbol("u")), ctx.coefficients)
    u = parse_element(algebra, "u")
    one = parse_element(algebra, "1")

    def normalize():
        fraction = fraction_normalize_periodic(algebra, one, u, p["order_bound"])
        return _passed(fraction.cross_check() and fraction.denominator == one), fraction.to_dict()

    def regularize():
        result = periodic_power_regularize(algebra, [u], p["max_degree"], p["order_bound"])
        return _passed(result.certificate is not None and result.certificate.is_unit), result.to_dict()

    def regularize_matrix():
        result = periodic_power_regularize(matrices, [parse_element(matrices, "e12 + e21")])
        in_identity = all(step["in_identity_component"] for step in result.steps)
        return _passed(in_identity and result.total == parse_element(matrices, "1")), result.to_dict()

    def chain():
        report = descending_chain_report(algebra, parse_element(algebra, "1 + u"), 3)
        return _passed(report.contained and report.stabilized_at == 1), report.to_dict()

    def faithful():
        report = e_faithful_probe(algebra)
        return _passed(report.faithful), report.to_dict()

    checks = [
        ("normalize_fraction", normalize),
        ("periodic_power", regularize),
        ("periodic_power_matrix", regularize_matrix),
    ]
    checks += _census_checks("group_algebra_", algebra, p["max_degree"], p["seed"])
    checks += [("principal_chain", chain), ("e_faithful", faithful)]
    if ctx.parameters.get("group") and isinstance(ctx.group, FiniteGroup):
        chosen = group_algebra(ctx.group, ctx.coefficients)
        checks += _census_checks("chosen_group_", chosen, p["max_degree"], p["seed"])
    return algebra.describe(), checks


def _gs_construction(ctx):
    p = ctx.parameters
    bound = p["max_degree"]
    trivial = CyclicGroup(1)
    matrices = scalar_matrix_ring(trivial, (trivial.identity, trivial.identity), ctx.coefficients)
    dihedral = InfiniteDihedralGroup()
    polys = GradedPolyRing(dihedral, dihedral.symbol("r"), ctx.coefficients)
    z2 = builtin_table("Z2")
    lifted = scalar_matrix_ring(z2, (z2.identity, z2.identity, z2.symbol("u")), ctx.coefficients)
    nastasescu = nastasescu_ring(ctx.coefficients)

    def matrix_units():
        a = [parse_element(matrices, "e11"), parse_element(matrices, "e22")]
        s = [parse_element(matrices, "e21"), parse_element(matrices, "e12")]
        built = gs_candidate_build(matrices, a, s, p["m_max"], bound)
        ok = built.k == 1 and built.d == parse_element(matrices, "1") and built.certificate.is_unit
        return _passed(ok), built.to_dict()

    def polynomial():
        t = parse_element(polys, "t")
        built = gs_candidate_build(polys, [t], [parse_element(polys, "1")], p["m_max"], bound)
        ok = built.d == parse_element(polys, "t^2") and built.certificate.conclusive
        return _passed(ok), built.to_dict()

    def stability():
        report = annihilator_stability_check(nastasescu, parse_element(nastasescu, "x"), bound)
        return _passed(report.equal), report.to_dict()

    def lift():
        result = identity_component_lift(lifted, parse_element(lifted, "e22"), parse_element(lifted, "e13 + e31"))
        ok = result.in_identity_component and result.annihilates and result.nonzero
        return _passed(ok), result.to_dict()

    checks = [
        ("matrix_units", matrix_units),
        ("polynomial", polynomial),
        ("annihilator_stability", stability),
        ("identity_component_lift", lift),
    ]
    return "M_2(k) trivially graded; k[t] over d-infty", checks


def _remark1(ctx):
    group = ctx.group

    def analysis():
        result = finite_group_analysis(group)
        return _passed(result.bound_holds), result.to_dict(group)

    def audit():
        result = remark1_bound_audit(group)
        witness = result.to_dict(group)
        # a failed k^k bound is a finding, not a failure
        witness["finding"] = None if result.holds_uniformly else "k^k bound fails for the listed pair"
        return Status.PASS, witness

    def cond2_all_pairs():
        exponent = finite_group_analysis(group).exponent
        worst = 0
        for g in group.elements():
            for h in group.elements():
                outcome = cond2_witness(group, g, h, exponent)
                if not outcome.found:
                    return Status.FAIL, {"g": group.format(g), "h": group.format(h), "bound": exponent}
                worst = max(worst, outcome.witness.n)
        return Status.PASS, {"exponent": exponent, "largest_minimal_n": worst}

    return f"group {group.name}", [
        ("finite_group_analysis", analysis),
        ("remark1_bound", audit),
        ("cond2_all_pairs", cond2_all_pairs),
    ]


def _klyachko(ctx):
    group = ctx.group
    p = ctx.parameters

    def survey():
        result = klyachko_survey(group, ctx.samples("klyachko"), seed=p["seed"])
        return _passed(result.passed), result.to_dict()

    def single_flip():
        g = parse_word(group, "s1")
        outcome = cond2_witness(group, g, parse_word(group, "r"), p["n_max"])
        n = klyachko_exponent(group, g)
        ok = n == 6 and outcome.found and outcome.witness.n == 3
        return _passed(ok), {"exponent": n, "cond2": outcome.to_dict(group)}

    return f"group {group.name}", [("survey", survey), ("single_flip", single_flip)]


def _star(ctx):
    group = ctx.group
    p = ctx.parameters
    g, h = ctx.pair()

    def chosen():
        premise = cond2prime_witness(group, g, h, p["m_max"], p["m_max"])
        if not premise.found:
            return _status_of(premise), premise.to_dict(group)
        report = star_induction_check(group, g, h, premise.witness.m, premise.witness.n, STAR_DEPTH)
        return _passed(report.passed), report.to_dict()

    def symmetric():
        s3 = builtin_table("S3")
        report = star_induction_check(s3, s3.symbol("t12"), s3.symbol("c123"), 1, 2, 3)
        return _passed(report.passed), report.to_dict()

    def case_analysis():
        s3 = builtin_table("S3")
        g3, h3 = s3.symbol("t12"), s3.symbol("c123")
        result = case_analysis_check(s3, g3, h3, 2, 2, 1, 2)
        return _passed(not result.violations), result.to_dict()

    checks = [("star_chosen_pair", chosen), ("star_s3", symmetric), ("case_analysis_s3", case_analysis)]
    return f"group {group.name}, g = {group.format(g)}, h = {group.format(h)}", checks


def _phi(ctx):
    group = ctx.group
    p = ctx.parameters
    g, h = ctx.pair()
    ring = counterexample_ring(group, g, h, ctx.coefficients)
    checks = []
    for i in (1, 2):
        for j in (1, 2):
            hom = GradedHom(i, j)

            def audit(hom=hom):
                result = phi_module_audit(ring, hom, ctx.samples("phi"), seed=p["seed"])
                return _passed(result.passed), result.to_dict()

            checks.append((f"{hom.name}_module_audit", audit))

    def table():
        a = parse_element(ring, "[[t, 2*t^2], [3*t, t^3]]")
        image = phi_apply(ring, GradedHom(1, 1), a)
        return _passed(image == parse_element(ring, "[[1, 2*t], [0, 0]]")), {"A": a.format(), "phi11": image.format()}

    def outside():
        return _expect_error(NotInIdeal, lambda: phi_apply(ring, GradedHom(1, 1), parse_element(ring, "1 + t")))

    checks += [("phi11_table", table), ("not_in_ideal", outside)]
    return ring.describe(), checks


def _simplicity(ctx):
    group = ctx.group
    p = ctx.parameters
    g, h = ctx.pair()
    ring = laurent_matrix_ring(group, g, h, ctx.coefficients)

    def probe():
        report = gr_simplicity_probe(ring, ctx.samples("simplicity"), p["max_degree"], p["seed"])
        return _passed(not report.failures), report.to_dict()

    return ring.describe(), [("gr_simple", probe)]


SUITES = {
    "group-conditions": _group_conditions,
    "counterexample": _counterexample,
    "nastasescu": _nastasescu,
    "bazhenov": _bazhenov,
    "quotient": _quotient,
    "gs-construction": _gs_construction,
    "remark1-audit": _remark1,
    "klyachko": _klyachko,
    "star": _star,
    "phi": _phi,
    "simplicity": _simplicity,
}

ALL_SUITE = "all"
SUITE_NAMES = (*SUITES, ALL_SUITE)


def _run_check(name, fn, timings):
    start = time.perf_counter()
    try:
        status, witness = fn()
    except Exception as e:
        logger.exception("Check %s raised, recording failure", name)
        status, witness = Status.FAIL, {"error": f"{type(e).__name__}: {e}"}
    elapsed = int((time.perf_counter() - start) * 1000) if timings else 0
    logger.info("Check %s: %s", name, status)
    if status is Status.EXHAUSTED:
        logger.warning("Check %s exhausted its bound without a certificate", name)
    return Check(name, status, witness, elapsed)


def _build(suite, parameters, timings, table_path):
    ctx = SuiteContext(suite, parameters, timings, table_path)
    return SUITES[suite](ctx)


def run_suite(suite, parameters, timings=False, table_path=None):
    """Run one suite (or ``all``) and assemble its report.

    Args:
        suite: Suite name from SUITE_NAMES.
        parameters: Resolved parameters (see config.resolve_parameters).
        timings: Record wall-clock time per check.
        table_path: Group table file for ``--group table``.

    Returns:
        Report: Checks in suite definition order.

    Raises:
        ConfigError: For an unknown suite name.
    """
    if suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite '{suite}'; choose from {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if suite == ALL_SUITE else [suite]
    instances, checks = [], []
    for name in names:
        try:
            instance, suite_checks = _build(name, parameters, timings, table_path)
        except ConfigError:
            raise
        except Exception as e:
            logger.exception("Failed to set up suite %s, skipping", name)
            checks.append(Check(f"{name}.setup", Status.FAIL, {"error": f"{type(e).__name__}: {e}"}))
            continue
        instances.append(instance)
        prefix = f"{name}." if suite == ALL_SUITE else ""
        checks.extend(_run_check(prefix + check_name, fn, timings) for check_name, fn in suite_checks)
    report = Report(suite, "; ".join(instances), dict(parameters), checks)
    summary = report.summary
    logger.info(
        "Suite %s: pass=%d fail=%d exhausted=%d", suite, summary["pass"], summary["fail"], summary["exhausted"]
    )
    return report
