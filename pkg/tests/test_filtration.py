"""Relative socles, semisimple decomposition, socle filtrations, membership."""

import pytest

from quiverfilt import (
    QQ,
    Rep,
    check_semibrick,
    decompose_semisimple,
    direct_sum,
    ext_basis,
    extension_middle,
    filt_membership,
    kronecker,
    quasi_simple,
    standard_module,
    tower,
    universal_sequence,
    verify_filtration,
    x_socle,
    x_socle_filtration,
)
from quiverfilt.errors import InvariantError
from quiverfilt.filtration import Filtration

from conftest import make_x11


@pytest.fixture
def sb0(r0):
    return check_semibrick([r0])


def test_socle_of_member_is_everything(r0, sb0):
    soc = x_socle(r0, sb0)
    assert soc.sub.dim_vector() == r0.dim_vector()


def test_socle_preprojective_zero(k2, sb0):
    p1 = standard_module(k2, QQ, "projective", 1)
    assert x_socle(p1, sb0).sub.dim_total == 0


def test_socle_of_truncation_is_base(r0, sb0):
    y2 = universal_sequence(r0, sb0).middle
    soc = x_socle(y2, sb0)
    assert soc.sub.dim_vector() == {1: 1, 2: 1}


def test_socle_requires_certificate(r0):
    refusal = check_semibrick([r0, r0])
    with pytest.raises(InvariantError):
        x_socle(r0, refusal)


def test_decompose_multiplicities(r0, r1):
    sb = check_semibrick([r0, r1])
    l, _, _ = direct_sum([r0, r0, r1])
    dec = decompose_semisimple(l, sb)
    assert dec.ok and list(dec.multiplicities) == [2, 1]
    assert dec.witness.is_isomorphism()


def test_decompose_refuses_nonsplit_middle(r0, sb0):
    e = ext_basis(r0, r0)[0][0]
    mid = extension_middle(r0, r0, e).middle
    dec = decompose_semisimple(mid, sb0)
    assert not dec.ok
    assert dec.diagnostics["reason"]


def test_decompose_zero_rep(k2, r0, sb0):
    dec = decompose_semisimple(Rep.zero(k2, QQ), sb0)
    assert dec.ok and list(dec.multiplicities) == [0]


def test_filtration_of_member_single_step(r0, sb0):
    res = x_socle_filtration(r0, sb0)
    assert res.ok and res.steps_completed == 1
    assert len(res.filtration.chain) == 2


def test_filtration_of_tower_level(r0, sb0):
    t = tower(r0, sb0, 3)
    res = x_socle_filtration(t.levels[-1], sb0)
    assert res.ok
    dims = [i.sub.dim_vector() for i in res.filtration.chain]
    assert dims == [
        {1: 0, 2: 0},
        {1: 1, 2: 1},
        {1: 2, 2: 2},
        {1: 3, 2: 3},
    ]
    for layer in res.filtration.layers:
        assert list(layer.multiplicities) == [1]


def test_filtration_stalls_on_preprojective(k2, sb0):
    p1 = standard_module(k2, QQ, "projective", 1)
    res = x_socle_filtration(p1, sb0)
    assert not res.ok and res.filtration is None
    assert res.diagnostics["hom_dims_into_quotient"] == [0]


def test_membership_direct_sum(r0, r1):
    sb = check_semibrick([r0, r1])
    s, _, _ = direct_sum([r0, r1, r1])
    res = filt_membership(s, sb)
    assert res.ok and res.steps_completed == 1


def test_membership_extension_middle(r0, sb0):
    e = ext_basis(r0, r0)[0][0]
    mid = extension_middle(r0, r0, e).middle
    res = filt_membership(mid, sb0)
    assert res.ok and res.steps_completed == 2


def test_membership_refuses_simple(k2, sb0):
    s1 = standard_module(k2, QQ, "simple", 1)
    res = filt_membership(s1, sb0)
    assert not res.ok


def test_verify_filtration_accepts_genuine(r0, sb0):
    t = tower(r0, sb0, 2)
    res = x_socle_filtration(t.levels[-1], sb0)
    assert verify_filtration(res.filtration, sb0)


def test_verify_filtration_rejects_gap(r0, sb0):
    t = tower(r0, sb0, 3)
    res = x_socle_filtration(t.levels[-1], sb0)
    filt = res.filtration
    # drop the middle chain element: the remaining layer is not semisimple
    broken = Filtration(
        ambient=filt.ambient,
        chain=[filt.chain[0], filt.chain[1], filt.chain[3]],
        layers=[filt.layers[0], filt.layers[1]],
        layer_reps=[filt.layer_reps[0], filt.layer_reps[1]],
    )
    assert not verify_filtration(broken, sb0)


def test_wild_singleton_filtration(k3):
    x = make_x11(k3, QQ, [1, 0, 0])
    sb = check_semibrick([x])
    t = tower(x, sb, 2)
    res = x_socle_filtration(t.levels[-1], sb)
    assert res.ok
    assert [i.sub.dim_vector() for i in res.filtration.chain] == [
        {1: 0, 2: 0},
        {1: 1, 2: 1},
        {1: 3, 2: 3},
    ]
    assert list(res.filtration.layers[1].multiplicities) == [2]
