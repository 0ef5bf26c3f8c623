"""Internal groupoids, the two conversions, and their round trips."""

import pytest

from xmodlab import catalog
from xmodlab.core import pair_index, pair_split
from xmodlab.errors import InvalidCrossedModule, RoundTripFailure
from xmodlab.groupoid import (
    InternalFunctor,
    check_internal_functor,
    identity_functor,
    make_groupoid,
    pair_groupoid,
    roundtrip_crossed_module,
    roundtrip_groupoid,
    to_crossed_module,
    to_internal_groupoid,
    validate_groupoid,
)
from xmodlab.xmod import make_crossed_module, validate_crossed_module
from xmodlab.actions import trivial_action

Z2 = catalog.cyclic_group(2)
Z3 = catalog.cyclic_group(3)
Z4 = catalog.cyclic_group(4)
S3 = catalog.symmetric_group_3()

GROUPOID_NAMES = catalog.names("groupoid")
XMOD_NAMES = catalog.names("xmod")


@pytest.mark.parametrize("name", GROUPOID_NAMES)
def test_catalog_groupoids_valid(name):
    assert validate_groupoid(catalog.load(name).payload).valid


def test_pair_groupoid_composition_is_index_splicing():
    g = pair_groupoid(S3)
    n = S3.order
    for p in range(n):
        for q in range(n):
            for s in range(n):
                left = pair_index(p, q, n)
                right = pair_index(q, s, n)
                assert g.compose(left, right) == pair_index(p, s, n)


def test_conversion_of_z2_identity_trivial_gives_klein_arrows():
    x = catalog.load("Z2-id-trivial").payload
    g = to_internal_groupoid(x)
    assert g.arrows.add == catalog.klein_four().add
    for a in range(2):
        for b in range(2):
            assert g.d1[pair_index(a, b, 2)] == (a + b) % 2


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_conversion_composition_rule(name):
    # derived composition on converted arrows is (a, b) o (a1, b1) = (a+a1, b1)
    x = catalog.load(name).payload
    g = to_internal_groupoid(x)
    nb = x.base.order
    for left, right in g.composable_pairs():
        a, b = pair_split(left, nb)
        a1, b1 = pair_split(right, nb)
        assert g.compose(left, right) == pair_index(x.top.add[a][a1], b1, nb)


def test_pair_groupoid_of_trivial_algebra():
    g = pair_groupoid(catalog.trivial_algebra())
    assert g.arrows.order == 1
    assert validate_groupoid(g).valid


def test_single_object_conversion_composes_by_addition():
    x = catalog.load("Z4-to-0").payload
    g = to_internal_groupoid(x)
    assert g.objects.order == 1
    for left in range(g.arrows.order):
        for right in range(g.arrows.order):
            assert g.compose(left, right) == g.arrows.add[left][right]


def test_discrete_conversion_has_identity_endpoint_maps():
    x = catalog.load("0-to-S3").payload
    g = to_internal_groupoid(x)
    assert g.arrows.order == S3.order
    assert g.d0 == g.d1 == tuple(range(S3.order))


def test_invalid_crossed_module_rejected():
    x = make_crossed_module(S3, S3, tuple(range(6)), trivial_action(S3, S3))
    with pytest.raises(InvalidCrossedModule):
        to_internal_groupoid(x)


def test_reverse_conversion_of_pair_groupoid():
    g = pair_groupoid(Z3)
    x = to_crossed_module(g)
    assert validate_crossed_module(x).valid
    assert x.top.order == 3 and x.base.order == 3
    assert sorted(x.boundary) == [0, 1, 2]  # bijective boundary


def test_reverse_conversion_of_discrete_groupoid():
    n = S3.order
    g = make_groupoid("disc", S3, S3, range(n), range(n), range(n))
    x = to_crossed_module(g)
    assert x.top.order == 1
    assert x.base.add == S3.add


def test_eps_not_a_section_reported():
    g = make_groupoid("bad", catalog.klein_four(), Z2,
                      [b % 2 for b in range(4)], [b % 2 for b in range(4)], [0, 0])
    report = validate_groupoid(g)
    assert any(v.rule == "eps-section-d0" for v in report.violations)


def test_roundtrip_rejects_corrupted_action():
    dot = [list(r) for r in Z4.add]  # b.a = b+a is not an action
    from xmodlab.actions import make_action
    from xmodlab.xmod import make_crossed_module as mk
    bad = mk(Z4, Z4, (0, 1, 2, 3), make_action(Z4, Z4, dot))
    with pytest.raises(RoundTripFailure):
        roundtrip_crossed_module(bad)


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_roundtrip_crossed_module(name):
    x = catalog.load(name).payload
    m = roundtrip_crossed_module(x)
    back = m.target
    assert validate_crossed_module(back).valid
    assert sorted(m.f1) == list(range(x.top.order))
    assert m.f0 == tuple(range(x.base.order))


@pytest.mark.parametrize("name", GROUPOID_NAMES)
def test_roundtrip_groupoid(name):
    g = catalog.load(name).payload
    F = roundtrip_groupoid(g)
    assert sorted(F.f1) == list(range(g.arrows.order))
    assert F.f0 == tuple(range(g.objects.order))
    assert check_internal_functor(F).valid


@pytest.mark.parametrize("name", GROUPOID_NAMES)
def test_identity_functor_valid(name):
    g = catalog.load(name).payload
    assert check_internal_functor(identity_functor(g)).valid


def test_broken_functor_detected():
    g = pair_groupoid(Z2)
    F = InternalFunctor(g, g, (0, 1, 2, 3), (1, 0))  # objects permuted, arrows not
    report = check_internal_functor(F)
    assert not report.valid


def test_inverse_formula_produces_two_sided_inverses():
    # validate_groupoid checks this; assert directly on one groupoid as well
    g = catalog.load("S3-conj-gpd").payload
    for a in range(g.arrows.order):
        inv = g.inverse(a)
        assert g.compose(inv, a) == g.eps[g.d0[a]]
        assert g.compose(a, inv) == g.eps[g.d1[a]]
        assert g.inverse(inv) == a
