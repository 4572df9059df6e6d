"""The subring of M_2(k[t])(e, s) over the infinite dihedral group cut out by a(0)=d(0), b(0)=c(0).

Abstractly it is generated by x = t e11, y = t e22 and z = e12 + e21 with
xy = yx = 0, z^2 = 1, xz = zy and yz = zx.
"""

import logging
import random
from dataclasses import dataclass, field

from graded_goldie.constants import DEFAULT_SEED
from graded_goldie.groups import InfiniteDihedralGroup
from graded_goldie.linalg import combine, kernel, rank
from graded_goldie.rings import GradedMatrixRing, GradedPolyRing, random_element

logger = logging.getLogger(__name__)


class BazhenovRing(GradedMatrixRing):
    def __init__(self, field=None):
        group = InfiniteDihedralGroup()
        base = GradedPolyRing(group, group.symbol("r"), field)
        super().__init__(base, (group.identity, group.symbol("s")), kind="bazhenov")

    def membership_defects(self, a):
        """(a(0) - d(0), b(0) - c(0)); both vanish exactly on members."""
        (p, q), (r, s) = a
        return (p.eval_at_zero() - s.eval_at_zero(), q.eval_at_zero() - r.eval_at_zero())

    def contains_value(self, a):
        return not any(self.membership_defects(a))

    def components(self, bound):
        result = {}
        for sigma, basis in super().components(bound).items():
            rows = list(zip(*(self.membership_defects(b) for b in basis)))
            members = [combine(self, basis, c) for c in kernel(self.field, rows, len(basis))]
            if members:
                result[sigma] = members
        return result

    def invert_value(self, a):
        inv = super().invert_value(a)
        return inv if inv is not None and self.contains_value(inv) else None

    def mask_witness(self, a):
        return None

    def generators(self):
        t = self.base.symbols()["t"]
        return {
            "x": self.matrix_unit(1, 1, t),
            "y": self.matrix_unit(2, 2, t),
            "z": self.add(self.matrix_unit(1, 2), self.matrix_unit(2, 1)),
        }

    def symbols(self):
        table = super().symbols()
        table.update(self.generators())
        return table

    def describe(self):
        return "Bazhenov subring of M_2(k[t])(e, s) over d-infty, deg t = r"


@dataclass
class BazhenovAudit:
    relations: dict = field(default_factory=dict)
    literal_relations: dict = field(default_factory=dict)
    degrees: dict = field(default_factory=dict)
    membership: dict = field(default_factory=dict)
    closure_samples: int = 0
    closure_failures: list = field(default_factory=list)

    @property
    def passed(self):
        return (
            all(self.relations.values())
            and all(d["holds"] for d in self.degrees.values())
            and self.membership["accepted"]
            and not self.membership["rejected"]
            and not self.closure_failures
        )

    def to_dict(self):
        return {
            "relations": self.relations,
            "literal_relations": self.literal_relations,
            "degrees": self.degrees,
            "membership": self.membership,
            "closure_samples": self.closure_samples,
            "closure_failures": self.closure_failures,
        }


def _member_sample(ring, rng, bound):
    value = random_element(ring, rng, bound).value
    if rng.random() < 0.5:
        value = ring.add(value, ring.scale(ring.one(), ring.field.random_nonzero(rng)))
    return value


def bazhenov_audit(ring=None, samples=500, bound=4, seed=DEFAULT_SEED):
    """Check the relations, degrees and membership predicate in the matrix model.

    The relation ``xz = yx`` as sometimes stated conflicts with the matrix
    model; it is evaluated and reported next to ``xz = zy`` without being
    required.
    """
    ring = ring or BazhenovRing()
    group = ring.group
    gens = ring.generators()
    x, y, z = (ring.element(gens[n]) for n in ("x", "y", "z"))
    zero, one = ring.element(ring.zero()), ring.element(ring.one())
    audit = BazhenovAudit()
    audit.relations = {
        "xy=0": x * y == zero,
        "yx=0": y * x == zero,
        "z^2=1": z * z == one,
        "xz=zy": x * z == z * y,
        "yz=zx": y * z == z * x,
    }
    audit.literal_relations = {"xz=yx": x * z == y * x, "xz": (x * z).format(), "yx": (y * x).format()}
    r, s = group.symbol("r"), group.symbol("s")
    for name, element, expected in (("x", x, r), ("y", y, group.inverse(r)), ("z", z, s)):
        found = element.degree
        audit.degrees[name] = {
            "expected": group.format(expected),
            "found": group.format(found),
            "holds": found == expected,
        }
    s_component = ring.component_basis(s, bound)
    audit.degrees["R_s"] = {
        "expected": ring.format_value(gens["z"]),
        "found": [ring.format_value(b) for b in s_component],
        "holds": len(s_component) == 1 and rank(ring, [s_component[0], gens["z"]]) == 1,
    }
    t = ring.base.symbols()["t"]
    one_poly, two_poly = ring.base.one(), ring.base.scalar(ring.field(2))
    accepted = ring.from_rows([[t, one_poly], [one_poly, t]])
    rejected = ring.from_rows([[one_poly, ring.base.zero()], [ring.base.zero(), two_poly]])
    audit.membership = {
        "accepted_matrix": ring.format_value(accepted),
        "accepted": ring.contains_value(accepted),
        "rejected_matrix": ring.format_value(rejected),
        "rejected": ring.contains_value(rejected),
    }
    rng = random.Random(seed)
    audit.closure_samples = samples
    for _ in range(samples):
        a, b = _member_sample(ring, rng, bound), _member_sample(ring, rng, bound)
        for op, result in (("+", ring.add(a, b)), ("*", ring.mul(a, b))):
            if not ring.contains_value(result):
                audit.closure_failures.append(
                    {"op": op, "left": ring.format_value(a), "right": ring.format_value(b)}
                )
    logger.info("Bazhenov audit: relations=%s closure failures=%d", audit.relations, len(audit.closure_failures))
    return audit
