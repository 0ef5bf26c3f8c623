"""Catalog self-test and the isomorphism identifier."""

import pytest

from xmodlab import catalog
from xmodlab.errors import UnknownName
from xmodlab.groupoid import roundtrip_crossed_module, roundtrip_groupoid


def test_names_are_stable_and_kinded():
    names = catalog.names()
    assert names == catalog.names()
    assert "Z4" in catalog.names("algebra")
    assert "S3-conj-xmod" in catalog.names("xmod")
    assert len(catalog.names("xmod")) >= 6


@pytest.mark.parametrize("name", catalog.names())
def test_every_entry_loads_and_validates(name):
    entry = catalog.load(name)
    assert entry.name == name
    assert entry.kind in ("algebra", "action", "xmod", "groupoid")


def test_unknown_name_raises():
    with pytest.raises(UnknownName):
        catalog.load("no-such-thing")


def test_load_is_cached():
    assert catalog.load("S3") is catalog.load("S3")


@pytest.mark.parametrize("name", catalog.names("xmod"))
def test_every_xmod_entry_round_trips(name):
    roundtrip_crossed_module(catalog.load(name).payload)


@pytest.mark.parametrize("name", catalog.names("groupoid"))
def test_every_groupoid_entry_round_trips(name):
    roundtrip_groupoid(catalog.load(name).payload)


def test_largest_catalog_groupoid_has_36_arrows():
    sizes = [catalog.load(n).payload.arrows.order for n in catalog.names("groupoid")]
    assert max(sizes) == 36


def test_isomorphism_identifier_distinguishes_order_four_groups():
    z4 = catalog.cyclic_group(4)
    v4 = catalog.klein_four()
    assert catalog.group_isomorphism_type(z4.add, 4) == "Z4"
    assert catalog.group_isomorphism_type(v4.add, 4) == "V4"
    # a relabelled copy of the Klein table is still recognized
    relabel = (0, 2, 3, 1)
    inverse = (0, 3, 1, 2)
    shuffled = [[relabel[v4.add[inverse[i]][inverse[j]]] for j in range(4)]
                for i in range(4)]
    assert catalog.group_isomorphism_type(shuffled, 4) == "V4"


def test_isomorphism_identifier_on_nonabelian_groups():
    s3 = catalog.symmetric_group_3()
    d4 = catalog.dihedral_group_4()
    assert catalog.group_isomorphism_type(s3.add, 6) == "S3"
    assert catalog.group_isomorphism_type(d4.add, 8) == "D4"
    assert catalog.group_isomorphism_type(catalog.cyclic_group(6).add, 6) == "Z6"


def test_isomorphism_identifier_returns_none_when_unknown():
    z5 = catalog.cyclic_group(5)
    assert catalog.group_isomorphism_type(z5.add, 5) is None
