"""Kronecker constructors and preprojective tower diagnostics."""

import pytest

from quiverfilt import (
    GF,
    QQ,
    check_semibrick,
    defect,
    end_algebra,
    ext_basis,
    hom_basis,
    is_brick,
    kronecker,
    preprojective_tower_report,
    quasi_simple,
    representation_type,
    standard_module,
)
from quiverfilt.errors import BudgetError, InvariantError
from quiverfilt.tame import PointOnLine


def test_kronecker_shapes():
    k2 = kronecker(2)
    assert k2.vertices == (1, 2)
    assert k2.arrows == (("a1", 2, 1), ("a2", 2, 1))
    assert kronecker(5).name == "K_5"
    with pytest.raises(InvariantError):
        kronecker(0)


def test_kronecker_representation_types():
    assert representation_type(kronecker(1)) == "finite"
    assert representation_type(kronecker(2)) == "tame"
    assert representation_type(kronecker(3)) == "wild"


def test_quasi_simple_values():
    r0 = quasi_simple(QQ, QQ.of(0))
    assert r0.dim_vector() == {1: 1, 2: 1}
    assert r0.arrow_maps["a1"].at(0, 0) == QQ.one
    assert r0.arrow_maps["a2"].at(0, 0) == QQ.zero
    rinf = quasi_simple(QQ, PointOnLine.infinity())
    assert rinf.arrow_maps["a1"].at(0, 0) == QQ.zero
    assert rinf.arrow_maps["a2"].at(0, 0) == QQ.one


def test_quasi_simple_is_brick_with_one_self_extension():
    r0 = quasi_simple(QQ, QQ.of(0))
    assert is_brick(r0).status == "certified_brick"
    assert len(ext_basis(r0, r0)[0]) == 1
    assert defect(r0.quiver, r0.dim_vector()) == 0


def test_quasi_simples_orthogonal():
    r0 = quasi_simple(QQ, QQ.of(0))
    r1 = quasi_simple(QQ, QQ.of(1))
    assert hom_basis(r0, r1) == [] and hom_basis(r1, r0) == []


def test_quasi_simple_wrong_quiver():
    with pytest.raises(InvariantError):
        quasi_simple(QQ, QQ.of(0), quiver=kronecker(3))


def test_quasi_simple_over_prime_field():
    f5 = GF(5)
    r2 = quasi_simple(f5, f5.of(2))
    assert r2.field == f5
    assert is_brick(r2).status == "certified_brick"


def test_preprojective_tower_basic(k2):
    p1 = standard_module(k2, QQ, "projective", 1)
    r0 = quasi_simple(QQ, QQ.of(0))
    sb = check_semibrick([r0])
    report = preprojective_tower_report(p1, sb, 3)
    assert report.ok
    assert report.base_defect == -1
    assert report.level_dims == [(1, 0), (2, 1), (3, 2)]
    assert report.level_defects == [-1, -1, -1]
    assert all(s == "certified_brick" for s in report.level_brick_status)
    assert all(report.level_socle_zero)
    assert report.quotient_membership
    # the Proposition's division-ring claim at finite level: dim End = 1
    for level in report.tower.levels:
        assert end_algebra(level).dimension == 1


def test_preprojective_tower_two_members(k2):
    p1 = standard_module(k2, QQ, "projective", 1)
    r0 = quasi_simple(QQ, QQ.of(0))
    r1 = quasi_simple(QQ, QQ.of(1))
    sb = check_semibrick([r0, r1])
    report = preprojective_tower_report(p1, sb, 2)
    assert report.ok
    # one Ext class per member at each step
    assert report.level_dims == [(1, 0), (3, 2)]


def test_preprojective_tower_rejects_wrong_defect(k2):
    r0 = quasi_simple(QQ, QQ.of(0))
    sb = check_semibrick([r0])
    with pytest.raises(InvariantError):
        preprojective_tower_report(r0, sb, 2)  # defect 0 base
    s2 = standard_module(k2, QQ, "simple", 2)
    sb_bad_member = check_semibrick([s2])
    p1 = standard_module(k2, QQ, "projective", 1)
    with pytest.raises(InvariantError):
        preprojective_tower_report(p1, sb_bad_member, 2)  # member defect +1


def test_preprojective_tower_rejects_wild(k3):
    x = standard_module(k3, QQ, "projective", 1)
    s = standard_module(k3, QQ, "simple", 2)
    sb = check_semibrick([s])
    with pytest.raises(InvariantError):
        preprojective_tower_report(x, sb, 2)


def test_preprojective_tower_rejects_assumed_cert(k2):
    p1 = standard_module(k2, QQ, "projective", 1)
    r0 = quasi_simple(QQ, QQ.of(0))
    from quiverfilt import universal_sequence

    sb0 = check_semibrick([r0])
    y2 = universal_sequence(r0, sb0).middle
    assumed = check_semibrick([y2], assume_bricks=True)
    assert assumed.ok and assumed.assumed
    with pytest.raises(InvariantError):
        preprojective_tower_report(p1, assumed, 2)


def test_preprojective_tower_budget(k2):
    p1 = standard_module(k2, QQ, "projective", 1)
    r0 = quasi_simple(QQ, QQ.of(0))
    sb = check_semibrick([r0])
    with pytest.raises(BudgetError):
        preprojective_tower_report(p1, sb, 4, budget=4)
