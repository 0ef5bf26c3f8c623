"""Homotopies of crossed-module morphisms and natural isomorphisms."""

import itertools

import pytest

from xmodlab import catalog
from xmodlab.derivations import (
    derivation_as_homotopy,
    endomorphism_of,
    enumerate_derivations,
    whitehead_compose,
)
from xmodlab.errors import EndpointMismatch, NotComposable, NotDeltaImage
from xmodlab.homotopy import (
    GroupoidHomotopy,
    XModHomotopy,
    functor_of_morphism,
    homotopy_to_natural_iso,
    horizontal_compose,
    morphism_of_functor,
    natural_iso_to_homotopy,
    validate_groupoid_homotopy,
    validate_xmod_homotopy,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from xmodlab.groupoid import compose_internal_functors, to_internal_groupoid
from xmodlab.xmod import compose_xmod_morphisms, identity_xmod_morphism

X4 = catalog.load("Z4-id-trivial").payload
DERS4 = enumerate_derivations(X4)
ENDOS4 = [endomorphism_of(d) for d in DERS4]
IDENT4 = identity_xmod_morphism(X4)


def test_zero_homotopy_on_identity_morphism():
    for name in ("Z4-id-trivial", "S3-conj-xmod", "Z4zr-conj-xmod", "V4swap-id-trivial"):
        x = catalog.load(name).payload
        ident = identity_xmod_morphism(x)
        h = XModHomotopy(ident, ident, (0,) * x.base.order)
        assert validate_xmod_homotopy(h).valid


@pytest.mark.parametrize("index", range(len(DERS4)))
def test_derivations_are_homotopies_from_identity(index):
    h = derivation_as_homotopy(DERS4[index])
    assert h.source_morphism == IDENT4
    assert validate_xmod_homotopy(h).valid


def test_zero_table_with_distinct_endpoints_fails_boundary_condition():
    f = IDENT4
    g = ENDOS4[1]  # maps are x -> 2x
    h = XModHomotopy(f, g, (0, 0, 0, 0))
    report = validate_xmod_homotopy(h)
    assert not report.valid
    assert any(v.rule == "H-iv" for v in report.violations)


def test_unary_condition_fires():
    x = catalog.load("V4swap-id-trivial").payload
    ident = identity_xmod_morphism(x)
    bit_projection = (0, 0, 2, 2)  # additive but does not commute with swap
    h = XModHomotopy(ident, ident, bit_projection)
    report = validate_xmod_homotopy(h)
    rules = {v.rule for v in report.violations}
    assert "H-iii:swap" in rules


def test_mismatched_endpoints_raise():
    other = catalog.load("Z2-conj-xmod").payload
    with pytest.raises(EndpointMismatch):
        validate_xmod_homotopy(
            XModHomotopy(IDENT4, identity_xmod_morphism(other), (0, 0, 0, 0)))


# ---------------------------------------------------------------------------
# the natural-isomorphism picture

def test_natural_iso_of_derivation_homotopy():
    d = DERS4[2]
    h = derivation_as_homotopy(d)
    n = homotopy_to_natural_iso(h)
    assert validate_groupoid_homotopy(n).valid
    # arrows start at f0(b) = b and end at g0(b)
    g = n.source_functor.target
    for b in range(4):
        assert g.d0[n.eta[b]] == b
        assert g.d1[n.eta[b]] == d.f0[b]


def test_identity_natural_iso_is_zero_homotopy():
    h = XModHomotopy(IDENT4, IDENT4, (0, 0, 0, 0))
    n = homotopy_to_natural_iso(h)
    back = natural_iso_to_homotopy(n, X4, X4)
    assert back.d == (0, 0, 0, 0)


@pytest.mark.parametrize("fi,gi", [(f, g) for f in range(4) for g in range(4)])
def test_equivalence_of_both_pictures_exhaustive(fi, gi):
    """A table is a homotopy f => g exactly when its packaged arrows form a
    natural isomorphism between the converted functors."""
    f, g = ENDOS4[fi], ENDOS4[gi]
    src_g = to_internal_groupoid(X4)
    F = functor_of_morphism(f, src_g, src_g)
    G = functor_of_morphism(g, src_g, src_g)
    hits = 0
    for d in itertools.product(range(4), repeat=4):
        lhs = validate_xmod_homotopy(XModHomotopy(f, g, d)).valid
        eta = tuple(d[b] * 4 + f.f0[b] for b in range(4))
        rhs = validate_groupoid_homotopy(GroupoidHomotopy(F, G, eta)).valid
        assert lhs == rhs
        hits += lhs
    # the identity boundary pins d(b) = g0(b) - f0(b), so exactly one table fits
    assert hits == 1


def test_roundtrip_of_homotopies_is_identity():
    for d in DERS4:
        h = derivation_as_homotopy(d)
        n = homotopy_to_natural_iso(h)
        back = natural_iso_to_homotopy(n, X4, X4)
        assert back.d == h.d
        assert back.source_morphism == h.source_morphism
        assert back.target_morphism == h.target_morphism


def test_morphism_of_functor_requires_componentwise_shape():
    g = to_internal_groupoid(X4)
    F = functor_of_morphism(IDENT4, g, g)
    twisted = list(F.f1)
    twisted[5] = twisted[5] ^ 1  # breaks the pairwise structure
    with pytest.raises(NotDeltaImage):
        morphism_of_functor(
            type(F)(F.source, F.target, tuple(twisted), F.f0), X4, X4)


# ---------------------------------------------------------------------------
# vertical composition

def test_vertical_compose_with_zero_is_neutral():
    d = DERS4[1]
    h = derivation_as_homotopy(d)
    zero_before = XModHomotopy(IDENT4, IDENT4, (0, 0, 0, 0))
    assert vertical_compose(h, zero_before).d == h.d
    target = h.target_morphism
    zero_after = XModHomotopy(target, target, (0, 0, 0, 0))
    after = vertical_compose(zero_after, h)
    assert after.d == h.d and after.target_morphism == target


def test_vertical_composition_with_pointwise_inverse_gives_zero():
    d = DERS4[2]
    h = derivation_as_homotopy(d)
    n = homotopy_to_natural_iso(h)
    g = n.source_functor.target
    inverse_eta = tuple(g.inverse(e) for e in n.eta)
    back = natural_iso_to_homotopy(
        GroupoidHomotopy(n.target_functor, n.source_functor, inverse_eta), X4, X4)
    composite = vertical_compose(back, h)
    assert composite.d == (0, 0, 0, 0)
    assert composite.source_morphism == composite.target_morphism == IDENT4


def test_vertical_composition_matches_whitehead_composition():
    # whisker the first factor so the composite runs identity => product
    for d1, d2 in itertools.product(DERS4, repeat=2):
        h_inner = derivation_as_homotopy(d2)
        m2 = endomorphism_of(d2)
        target = compose_xmod_morphisms(endomorphism_of(d1), m2)
        whiskered = XModHomotopy(m2, target, tuple(d1.table[d2.f0[b]] for b in range(4)))
        assert validate_xmod_homotopy(whiskered).valid
        composite = vertical_compose(whiskered, h_inner)
        assert composite.d == whitehead_compose(d1, d2).table


def test_vertical_composition_not_composable():
    h = derivation_as_homotopy(DERS4[1])
    with pytest.raises(NotComposable):
        vertical_compose(h, h)


def test_vertical_composite_equals_pointwise_groupoid_composite():
    for d1, d2 in itertools.product(DERS4, repeat=2):
        h_inner = derivation_as_homotopy(d2)
        m2 = endomorphism_of(d2)
        target = compose_xmod_morphisms(endomorphism_of(d1), m2)
        whiskered = XModHomotopy(m2, target, tuple(d1.table[d2.f0[b]] for b in range(4)))
        composite = vertical_compose(whiskered, h_inner)
        n1 = homotopy_to_natural_iso(h_inner)
        n2 = homotopy_to_natural_iso(whiskered)
        n = homotopy_to_natural_iso(composite)
        gpd = n1.source_functor.target
        for b in range(4):
            assert n.eta[b] == gpd.compose(n2.eta[b], n1.eta[b])


# ---------------------------------------------------------------------------
# whiskering and horizontal composition on the groupoid side

def _cells_and_functors():
    cells = [homotopy_to_natural_iso(derivation_as_homotopy(d)) for d in DERS4]
    gpd = cells[0].source_functor.source
    functors = {m: functor_of_morphism(m, gpd, gpd) for m in ENDOS4}
    return cells, functors


def test_whiskering_preserves_validity():
    cells, functors = _cells_and_functors()
    for n in cells:
        for F in functors.values():
            left = whisker_left(F, n)
            assert validate_groupoid_homotopy(left).valid
            right = whisker_right(n, F)
            assert validate_groupoid_homotopy(right).valid


def test_horizontal_composition_interchange():
    # both whiskering orders must agree; horizontal_compose asserts it and
    # the result is a valid 2-cell with composed endpoints
    cells, functors = _cells_and_functors()
    for n1, n2 in itertools.product(cells, repeat=2):
        h = horizontal_compose(n2, n1)
        assert validate_groupoid_homotopy(h).valid
        assert h.source_functor == compose_internal_functors(
            n2.source_functor, n1.source_functor)
        assert h.target_functor == compose_internal_functors(
            n2.target_functor, n1.target_functor)


def test_horizontal_composition_matches_whitehead_on_derivation_cells():
    # 2-cells out of the identity compose horizontally like derivations
    cells, _ = _cells_and_functors()
    for i, j in itertools.product(range(4), repeat=2):
        h = horizontal_compose(cells[i], cells[j])
        composed = whitehead_compose(DERS4[i], DERS4[j])
        expected = homotopy_to_natural_iso(derivation_as_homotopy(composed))
        assert h.eta == expected.eta


def test_whisker_rejects_mismatched_endpoints():
    cells, _ = _cells_and_functors()
    other = catalog.load("Z2-conj-xmod").payload
    other_gpd = to_internal_groupoid(other)
    from xmodlab.groupoid import identity_functor
    with pytest.raises(NotComposable):
        whisker_left(identity_functor(other_gpd), cells[0])


def test_vertical_composition_associative_on_derivation_cells():
    # 2-cells stacked by whiskering; compare both bracketings
    for d1, d2, d3 in itertools.product(DERS4[:3], repeat=3):
        h3 = derivation_as_homotopy(d3)
        m3 = endomorphism_of(d3)
        m23 = compose_xmod_morphisms(endomorphism_of(d2), m3)
        h2 = XModHomotopy(m3, m23, tuple(d2.table[d3.f0[b]] for b in range(4)))
        m123 = compose_xmod_morphisms(endomorphism_of(d1), m23)
        h1 = XModHomotopy(m23, m123,
                          tuple(d1.table[d2.f0[d3.f0[b]]] for b in range(4)))
        left = vertical_compose(h1, vertical_compose(h2, h3))
        right = vertical_compose(vertical_compose(h1, h2), h3)
        assert left.d == right.d
        assert left.source_morphism == right.source_morphism
        assert left.target_morphism == right.target_morphism
