"""Kronecker-family constructors and tame-case defect diagnostics.

The two-arrow Kronecker quiver is the workhorse tame example: its
quasi-simple modules are the (1,1) representations R_lambda indexed by the
projective line, all of defect 0, and the projective P(1) generates a
defect minus-one tower whose levels stay bricks with zero relative socle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bricks import SemiBrickCert, is_brick
from .errors import InvariantError
from .filtration import filt_membership, x_socle
from .quivers import Quiver, defect, representation_type
from .reps import Rep, cokernel
from .linalg import Field, Matrix
from .towers import Tower, tower


@dataclass(frozen=True)
class PointOnLine:
    """A point of the projective line: a field element or the infinite point."""

    value: object
    is_infinity: bool

    @classmethod
    def finite(cls, value) -> "PointOnLine":
        return cls(value, False)

    @classmethod
    def infinity(cls) -> "PointOnLine":
        return cls(None, True)

    def __repr__(self):
        return "PointOnLine(inf)" if self.is_infinity else f"PointOnLine({self.value!r})"


def kronecker(r: int) -> Quiver:
    """The r-arrow Kronecker quiver: vertices 1, 2 with r arrows 2 -> 1."""
    if not isinstance(r, int) or r < 1:
        raise InvariantError("kronecker needs an integer arrow count >= 1")
    arrows = [(f"a{i + 1}", 2, 1) for i in range(r)]
    return Quiver((1, 2), arrows, name=f"K_{r}")


def quasi_simple(field: Field, p, quiver: Quiver | None = None) -> Rep:
    """The (1,1) module R_p on the two-arrow Kronecker quiver.

    ``p`` is a PointOnLine, the string ``"inf"``, or a finite field value.
    Finite lambda gives arrow scalars (1, lambda); the infinite point gives
    (0, 1).  Distinct points are Hom-orthogonal bricks of defect 0.
    """
    if quiver is None:
        quiver = kronecker(2)
    if quiver != kronecker(2):
        raise InvariantError("quasi_simple is defined on the two-arrow Kronecker quiver")
    if not isinstance(p, PointOnLine):
        p = PointOnLine.infinity() if p == "inf" else PointOnLine.finite(p)
    if p.is_infinity:
        scalars = (field.zero, field.one)
    else:
        scalars = (field.one, field.of(p.value))
    dims = {1: 1, 2: 1}
    maps = {
        "a1": Matrix(field, 1, 1, [scalars[0]]),
        "a2": Matrix(field, 1, 1, [scalars[1]]),
    }
    return Rep(quiver, field, dims, maps)


@dataclass(frozen=True)
class PreprojectiveTowerReport:
    tower: Tower
    levels: int
    base_defect: int
    level_dims: list  # dim vector tuples, vertex order
    level_defects: list
    level_brick_status: list
    level_socle_zero: list
    quotient_membership: bool
    ok: bool


def preprojective_tower_report(
    p: Rep, sb: SemiBrickCert, r: int, budget: int | None = None
) -> PreprojectiveTowerReport:
    """Tower diagnostics for a defect minus-one base over a tame quiver.

    Every level is checked for defect exactly -1, certified brickness, and
    zero relative socle; additionally the top quotient Y(r)/Y(1) must pass
    the membership test, the finite-level form of the tower quotient lying
    in the filtered category.
    """
    q = p.quiver
    if representation_type(q) != "tame":
        raise InvariantError("preprojective towers need a tame quiver")
    if not isinstance(sb, SemiBrickCert):
        raise InvariantError("a certified semi-brick is required")
    if sb.assumed:
        raise InvariantError("preprojective reports need fully certified members")
    for i, member in enumerate(sb.members):
        if defect(q, member.dim_vector()) != 0:
            raise InvariantError(f"member {i} does not have defect 0")
    if defect(q, p.dim_vector()) != -1:
        raise InvariantError("base must have defect exactly -1")
    t = tower(p, sb, r, budget)
    level_dims = [
        tuple(level.dims[v] for v in q.vertices) for level in t.levels
    ]
    level_defects = [defect(q, level.dim_vector()) for level in t.levels]
    level_brick_status = [is_brick(level).status for level in t.levels]
    level_socle_zero = [
        x_socle(level, sb).sub.dim_total == 0 for level in t.levels
    ]
    if t.height > 1:
        quot, _ = cokernel(t.inclusion(1, t.height))
        quotient_ok = filt_membership(quot, sb).ok
    else:
        quotient_ok = True
    ok = (
        all(d == -1 for d in level_defects)
        and all(s == "certified_brick" for s in level_brick_status)
        and all(level_socle_zero)
        and quotient_ok
    )
    return PreprojectiveTowerReport(
        t,
        t.height,
        defect(q, p.dim_vector()),
        level_dims,
        level_defects,
        level_brick_status,
        level_socle_zero,
        quotient_ok,
        ok,
    )
