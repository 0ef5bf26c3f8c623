"""Twisted actions, derived crossed modules and isomorphism chains."""

import itertools

import pytest

from xmodlab import catalog
from xmodlab.actions import SplitExtension, action_from_section, canonical_split_extension, check_derived_action
from xmodlab.core import AlgMorphism, inverse_permutation, pair_index
from xmodlab.derivations import (
    enumerate_derivations,
    is_regular,
    make_derivation,
    zero_derivation,
)
from xmodlab.derived import (
    derived_action_general,
    derived_action_regular,
    derived_crossed_module,
    derived_iso,
    iterate_chain,
    transport_derivation,
)
from xmodlab.errors import NotRegular
from xmodlab.xmod import check_xmod_morphism, is_covering, validate_crossed_module

X4 = catalog.load("Z4-id-trivial").payload
XMOD_NAMES = catalog.names("xmod")


def regular_catalog_derivations():
    for name in XMOD_NAMES:
        x = catalog.load(name).payload
        for d in enumerate_derivations(x):
            if is_regular(d).regular:
                yield name, x, d


def singular_catalog_derivations():
    for name in XMOD_NAMES:
        x = catalog.load(name).payload
        for d in enumerate_derivations(x):
            if not is_regular(d).regular:
                yield name, x, d


def permutation_order(perm):
    n = 1
    current = perm
    identity = tuple(range(len(perm)))
    while current != identity:
        current = tuple(perm[x] for x in current)
        n += 1
    return n


# ---------------------------------------------------------------------------
# twisted actions

def test_zero_derivation_leaves_action_unchanged():
    for name in XMOD_NAMES:
        x = catalog.load(name).payload
        assert derived_action_general(x, zero_derivation(x)) == x.action
        assert derived_action_regular(x, zero_derivation(x)) == x.action


def test_twist_by_doubling_on_z4_is_still_trivial():
    d = make_derivation(X4, (0, 2, 0, 2))
    act = derived_action_general(X4, d)
    assert act.dot == tuple(tuple(range(4)) for _ in range(4))
    assert act.star_tables == ()


def test_singular_derivations_still_give_derived_actions():
    count = 0
    for name, x, d in singular_catalog_derivations():
        act = derived_action_general(x, d)
        assert check_derived_action(act).valid
        count += 1
    assert count > 0
    with pytest.raises(NotRegular):
        derived_action_regular(X4, make_derivation(X4, (0, 1, 2, 3)))


def test_regular_and_general_twists_agree():
    for name, x, d in regular_catalog_derivations():
        assert derived_action_regular(x, d) == derived_action_general(x, d)


def test_twist_bridge_identity_from_peiffer_condition():
    # f0(b).a = d(b) + (b.a) - d(b) for every derivation, regular or not
    for name in XMOD_NAMES:
        x = catalog.load(name).payload
        addA, negA = x.top.add, x.top.neg
        for d in enumerate_derivations(x):
            for b in range(x.base.order):
                for a in range(x.top.order):
                    twisted = addA[addA[d.table[b]][x.action.dot[b][a]]][negA[d.table[b]]]
                    assert x.action.dot[d.f0[b]][a] == twisted


def test_general_twist_matches_shifted_section():
    for name, x, d in itertools.islice(regular_catalog_derivations(), 0, None):
        ext = canonical_split_extension(x.action)
        nb = x.base.order
        shifted = AlgMorphism(
            x.base, ext.total,
            tuple(pair_index(d.table[b], b, nb) for b in range(nb)))
        new_ext = SplitExtension(ext.sub, ext.total, ext.quotient, ext.i, ext.p, shifted)
        assert action_from_section(new_ext) == derived_action_general(x, d)


def test_regular_twist_matches_twisted_projection_extension():
    # the extension with section b -> (0, f0(b)) and projection
    # (a, b) -> f0_inverse(b) also recovers the regular twisted action
    for name, x, d in regular_catalog_derivations():
        ext = canonical_split_extension(x.action)
        nb = x.base.order
        f0_inv = inverse_permutation(d.f0)
        section = AlgMorphism(x.base, ext.total,
                              tuple(pair_index(0, d.f0[b], nb) for b in range(nb)))
        projection = AlgMorphism(ext.total, x.base,
                                 tuple(f0_inv[b] for _ in range(x.top.order)
                                       for b in range(nb)))
        new_ext = SplitExtension(ext.sub, ext.total, ext.quotient,
                                 ext.i, projection, section)
        assert action_from_section(new_ext) == derived_action_regular(x, d)


def test_every_catalog_action_round_trips_through_its_extension():
    for name in catalog.names("xmod"):
        act = catalog.load(name).payload.action
        assert action_from_section(canonical_split_extension(act)) == act


# ---------------------------------------------------------------------------
# derived crossed modules

def test_zero_derivation_reproduces_the_module():
    for name in XMOD_NAMES:
        x = catalog.load(name).payload
        assert derived_crossed_module(x, zero_derivation(x)) == x


def test_doubling_twist_inverts_the_boundary():
    d = make_derivation(X4, (0, 2, 0, 2))
    derived = derived_crossed_module(X4, d)
    assert derived.boundary == (0, 3, 2, 1)
    assert derived.action == X4.action


def test_every_derived_module_validates():
    for name, x, d in regular_catalog_derivations():
        assert validate_crossed_module(derived_crossed_module(x, d)).valid


def test_derived_iso_is_a_bijective_covering():
    for name, x, d in regular_catalog_derivations():
        m = derived_iso(x, d)
        assert check_xmod_morphism(m).valid
        assert m.f1 == tuple(range(x.top.order))
        assert m.f0 == inverse_permutation(d.f0)
        assert sorted(m.f0) == list(range(x.base.order))
        assert is_covering(m)


def test_derived_module_needs_regularity():
    with pytest.raises(NotRegular):
        derived_crossed_module(X4, make_derivation(X4, (0, 1, 2, 3)))
    with pytest.raises(NotRegular):
        derived_iso(X4, make_derivation(X4, (0, 1, 2, 3)))


# ---------------------------------------------------------------------------
# transported derivations

def test_transport_of_zero_is_zero():
    d = transport_derivation(X4, zero_derivation(X4))
    assert d.table == (0, 0, 0, 0)


def test_transport_of_doubling_is_itself():
    d = make_derivation(X4, (0, 2, 0, 2))
    moved = transport_derivation(X4, d)
    assert moved.table == d.table  # d(3b) = 6b = 2b
    assert moved.base == derived_crossed_module(X4, d)


def test_transport_preserves_the_top_map_and_regularity():
    for name, x, d in regular_catalog_derivations():
        moved = transport_derivation(x, d)
        assert moved.f1 == d.f1
        assert is_regular(moved).regular


# ---------------------------------------------------------------------------
# chains

def test_zero_chain_is_constant():
    chain = iterate_chain(X4, zero_derivation(X4))
    assert chain.period == 1
    assert chain.stages == (X4,)


def test_doubling_chain_alternates_boundaries():
    d = make_derivation(X4, (0, 2, 0, 2))
    chain = iterate_chain(X4, d)
    assert chain.period == 2
    assert [s.boundary for s in chain.stages] == [(0, 1, 2, 3), (0, 3, 2, 1)]
    assert permutation_order(d.f0) == 2


def test_chain_stage_boundaries_follow_base_map_powers():
    for name, x, d in regular_catalog_derivations():
        chain = iterate_chain(x, d)
        inv = inverse_permutation(d.f0)
        power = tuple(range(x.base.order))
        for k, stage in enumerate(chain.stages):
            expected = tuple(power[x.boundary[a]] for a in range(x.top.order))
            assert stage.boundary == expected
            power = tuple(inv[p] for p in power)
        assert permutation_order(d.f0) % chain.period == 0


def test_chain_links_are_valid_isomorphisms():
    for name, x, d in regular_catalog_derivations():
        chain = iterate_chain(x, d)
        assert len(chain.links) == chain.period
        for k, link in enumerate(chain.links):
            assert link.source == chain.stages[k]
            assert check_xmod_morphism(link).valid
            assert sorted(link.f0) == list(range(x.base.order))


def test_chain_requires_regular_start():
    with pytest.raises(NotRegular):
        iterate_chain(X4, make_derivation(X4, (0, 1, 2, 3)))
