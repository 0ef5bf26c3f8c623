"""Homotopies between crossed-module morphisms and between internal
groupoid morphisms, and the translation between the two pictures.

A homotopy from (f1, f0) to (g1, g0) is a table d on the source base with
values in the target top, satisfying five conditions; packaging d with f0
as arrows V(b) = (d(b), f0(b)) of the target's groupoid gives a natural
isomorphism between the converted functors, and conversely the first
component of such a natural isomorphism is a homotopy table.  Vertical
composition is computed on the groupoid side with the derived composition
and translated back.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import AlgMorphism, Row, check_morphism, freeze_row, pair_index, pair_split
from .errors import (
    EndpointMismatch,
    InternalInconsistency,
    InvalidHomotopy,
    InvalidMorphism,
    NotComposable,
    NotDeltaImage,
)
from .groupoid import (
    InternalFunctor,
    InternalGroupoid,
    check_internal_functor,
    compose_internal_functors,
    to_internal_groupoid,
)
from .reporting import ReportBuilder, ValidationReport
from .xmod import CrossedModule, XModMorphism, check_xmod_morphism


@dataclass(frozen=True)
class XModHomotopy:
    """d runs from source_morphism to target_morphism (direction matters)."""

    source_morphism: XModMorphism
    target_morphism: XModMorphism
    d: Row


@dataclass(frozen=True)
class GroupoidHomotopy:
    """eta assigns to each source object an arrow of the target groupoid."""

    source_functor: InternalFunctor
    target_functor: InternalFunctor
    eta: Row


def make_xmod_homotopy(f: XModMorphism, g: XModMorphism, d) -> XModHomotopy:
    _require_parallel(f, g)
    return XModHomotopy(f, g, freeze_row(d))


def _require_parallel(f: XModMorphism, g: XModMorphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise EndpointMismatch("the two morphisms are not parallel")


def _require_valid_morphism(m: XModMorphism, label: str) -> None:
    report = check_xmod_morphism(m)
    if not report.valid:
        raise InvalidMorphism(f"{label} is not a crossed module morphism: {report.summary()}")


def validate_xmod_homotopy(h: XModHomotopy) -> ValidationReport:
    """Check the five homotopy conditions, reported as H-i .. H-v."""
    f, g = h.source_morphism, h.target_morphism
    _require_parallel(f, g)
    _require_valid_morphism(f, "source morphism")
    _require_valid_morphism(g, "target morphism")
    src, tgt = f.source, f.target
    B = src.base
    C, D = tgt.top, tgt.base
    d = h.d
    if len(d) != B.order or any(not 0 <= v < C.order for v in d):
        raise EndpointMismatch("homotopy table must map the source base into the target top")

    rb = ReportBuilder("homotopy")
    addC, addB = C.add, B.add
    dot_t = tgt.action.dot

    done = False
    for b in range(B.order):
        db = d[b]
        frow = dot_t[f.f0[b]]
        for b1 in range(B.order):
            if d[addB[b][b1]] != addC[db][frow[d[b1]]]:
                rb.add("H-i", (b, b1), "d(b+b1) != d(b) + f0(b).d(b1)")
                done = True
                break
        if done:
            break
    for op in B.signature.binary_ops:
        mulB = B.binary_table(op)
        mulC = C.binary_table(op)
        star_t = tgt.action.star_table(op)
        mixed_t = tgt.action.mixed_star(op)
        done = False
        for b in range(B.order):
            db = d[b]
            for b1 in range(B.order):
                db1 = d[b1]
                rhs = addC[addC[mulC[db][db1]][mixed_t[f.f0[b1]][db]]][star_t[f.f0[b]][db1]]
                if d[mulB[b][b1]] != rhs:
                    rb.add(f"H-ii:{op}", (b, b1),
                           "d(b*b1) != d(b)*d(b1) + d(b)*f0(b1) + f0(b)*d(b1)")
                    done = True
                    break
            if done:
                break
    for op in B.signature.unary_ops:
        wB = B.unary_table(op)
        wC = C.unary_table(op)
        for b in range(B.order):
            if d[wB[b]] != wC[d[b]]:
                rb.add(f"H-iii:{op}", (b,), "d(w(b)) != w(d(b))")
                break
    for b in range(B.order):
        if tgt.boundary[d[b]] != D.add[g.f0[b]][D.neg[f.f0[b]]]:
            rb.add("H-iv", (b,), "boundary(d(b)) != g0(b) - f0(b)")
            break
    for a in range(src.top.order):
        if d[src.boundary[a]] != addC[g.f1[a]][C.neg[f.f1[a]]]:
            rb.add("H-v", (a,), "d(boundary(a)) != g1(a) - f1(a)")
            break
    return rb.build()


# ---------------------------------------------------------------------------
# translation to and from the groupoid picture

def functor_of_morphism(m: XModMorphism,
                        source_gpd: InternalGroupoid | None = None,
                        target_gpd: InternalGroupoid | None = None) -> InternalFunctor:
    """The internal functor induced on the converted groupoids:
    (a, b) -> (f1(a), f0(b)) on arrows and f0 on objects."""
    src_g = source_gpd or to_internal_groupoid(m.source)
    tgt_g = target_gpd or to_internal_groupoid(m.target)
    nb_s = m.source.base.order
    nb_t = m.target.base.order
    f1 = []
    for idx in range(src_g.arrows.order):
        a, b = pair_split(idx, nb_s)
        f1.append(pair_index(m.f1[a], m.f0[b], nb_t))
    return InternalFunctor(src_g, tgt_g, tuple(f1), m.f0)


def morphism_of_functor(F: InternalFunctor, source_xmod: CrossedModule,
                        target_xmod: CrossedModule) -> XModMorphism:
    """Invert functor_of_morphism; NotDeltaImage if F does not split as
    (a, b) -> (f1(a), f0(b)) over the given crossed modules."""
    nb_s = source_xmod.base.order
    nb_t = target_xmod.base.order
    if F.source.arrows.order != source_xmod.top.order * nb_s \
            or F.target.arrows.order != target_xmod.top.order * nb_t:
        raise NotDeltaImage("functor endpoints do not match the given crossed modules")
    f0 = F.f0
    f1 = tuple(pair_split(F.f1[pair_index(a, 0, nb_s)], nb_t)[0]
               for a in range(source_xmod.top.order))
    for a in range(source_xmod.top.order):
        for b in range(nb_s):
            if F.f1[pair_index(a, b, nb_s)] != pair_index(f1[a], f0[b], nb_t):
                raise NotDeltaImage("arrow map does not split componentwise")
    return XModMorphism(source_xmod, target_xmod, f1, f0)


def homotopy_to_natural_iso(h: XModHomotopy) -> GroupoidHomotopy:
    """eta(b) = (d(b), f0(b)) as an arrow of the target's groupoid."""
    report = validate_xmod_homotopy(h)
    if not report.valid:
        raise InvalidHomotopy(f"not a homotopy: {report.summary()}", report)
    f, g = h.source_morphism, h.target_morphism
    src_g = to_internal_groupoid(f.source)
    tgt_g = to_internal_groupoid(f.target)
    F = functor_of_morphism(f, src_g, tgt_g)
    G = functor_of_morphism(g, src_g, tgt_g)
    nb_t = f.target.base.order
    eta = tuple(pair_index(h.d[b], f.f0[b], nb_t) for b in range(f.source.base.order))
    return GroupoidHomotopy(F, G, eta)


def validate_groupoid_homotopy(n: GroupoidHomotopy) -> ValidationReport:
    """eta must be a morphism in C, have the right endpoints and be natural."""
    F, G = n.source_functor, n.target_functor
    if F.source != G.source or F.target != G.target:
        raise EndpointMismatch("the two functors are not parallel")
    for functor, label in ((F, "source functor"), (G, "target functor")):
        r = check_internal_functor(functor)
        if not r.valid:
            raise InvalidMorphism(f"{label} is not an internal functor: {r.summary()}")
    src, tgt = F.source, F.target
    rb = ReportBuilder("groupoid homotopy")
    rb.merge(check_morphism(AlgMorphism(src.objects, tgt.arrows, n.eta)), "eta")
    for x in range(src.objects.order):
        if tgt.d0[n.eta[x]] != F.f0[x]:
            rb.add("eta-d0", (x,), "d0(eta(x)) != f0(x)")
            break
    for x in range(src.objects.order):
        if tgt.d1[n.eta[x]] != G.f0[x]:
            rb.add("eta-d1", (x,), "d1(eta(x)) != g0(x)")
            break
    for c in range(src.arrows.order):
        lhs = tgt.compose(n.eta[src.d1[c]], F.f1[c])
        rhs = tgt.compose(G.f1[c], n.eta[src.d0[c]])
        if lhs != rhs:
            rb.add("naturality", (c,), "eta(d1(c)) o F(c) != G(c) o eta(d0(c))")
            break
    return rb.build()


def natural_iso_to_homotopy(n: GroupoidHomotopy, source_xmod: CrossedModule,
                            target_xmod: CrossedModule) -> XModHomotopy:
    """Extract d(b) = first component of eta(b); inverse of
    homotopy_to_natural_iso on converted functors."""
    report = validate_groupoid_homotopy(n)
    if not report.valid:
        raise InvalidHomotopy(f"not a groupoid homotopy: {report.summary()}", report)
    f = morphism_of_functor(n.source_functor, source_xmod, target_xmod)
    g = morphism_of_functor(n.target_functor, source_xmod, target_xmod)
    _require_valid_morphism(f, "recovered source morphism")
    _require_valid_morphism(g, "recovered target morphism")
    nb_t = target_xmod.base.order
    d = tuple(pair_split(n.eta[b], nb_t)[0] for b in range(source_xmod.base.order))
    return XModHomotopy(f, g, d)


def whisker_left(K: InternalFunctor, n: GroupoidHomotopy) -> GroupoidHomotopy:
    """Transport a 2-cell n: F => G along a following functor K, giving
    K o F => K o G with eta'(x) = K(eta(x))."""
    if n.source_functor.target != K.source:
        raise NotComposable("the whiskering functor does not start where the 2-cell lands")
    eta = tuple(K.f1[e] for e in n.eta)
    return GroupoidHomotopy(compose_internal_functors(K, n.source_functor),
                            compose_internal_functors(K, n.target_functor), eta)


def whisker_right(n: GroupoidHomotopy, L: InternalFunctor) -> GroupoidHomotopy:
    """Transport a 2-cell n: F => G along a preceding functor L, giving
    F o L => G o L with eta'(x) = eta(L(x))."""
    if L.target != n.source_functor.source:
        raise NotComposable("the whiskering functor does not land where the 2-cell starts")
    eta = tuple(n.eta[x] for x in L.f0)
    return GroupoidHomotopy(compose_internal_functors(n.source_functor, L),
                            compose_internal_functors(n.target_functor, L), eta)


def vertical_compose_natural_isos(n2: GroupoidHomotopy, n1: GroupoidHomotopy) -> GroupoidHomotopy:
    """Pointwise groupoid composition of stacked 2-cells."""
    if n1.target_functor != n2.source_functor:
        raise NotComposable("n1's target functor differs from n2's source functor")
    tgt = n1.source_functor.target
    eta = tuple(tgt.compose(n2.eta[x], n1.eta[x])
                for x in range(n1.source_functor.source.objects.order))
    return GroupoidHomotopy(n1.source_functor, n2.target_functor, eta)


def horizontal_compose(n2: GroupoidHomotopy, n1: GroupoidHomotopy) -> GroupoidHomotopy:
    """Side-by-side composite of n1: F1 => G1 and n2: F2 => G2, landing at
    F2 o F1 => G2 o G1.

    Computed by whiskering and stacking; the two bracketings must agree
    (the middle-four interchange), which is asserted.
    """
    left = vertical_compose_natural_isos(
        whisker_right(n2, n1.target_functor), whisker_left(n2.source_functor, n1))
    right = vertical_compose_natural_isos(
        whisker_left(n2.target_functor, n1), whisker_right(n2, n1.source_functor))
    if left != right:
        raise InternalInconsistency("the two whiskering orders disagree")
    return left


def vertical_compose(h2: XModHomotopy, h1: XModHomotopy) -> XModHomotopy:
    """Compose h1: f => g with h2: g => k into f => k.

    Computed by composing the corresponding natural isomorphisms pointwise
    with the groupoid composition and reading the table back off the first
    components.
    """
    if h1.target_morphism != h2.source_morphism:
        raise NotComposable("h1's target morphism differs from h2's source morphism")
    n1 = homotopy_to_natural_iso(h1)
    n2 = homotopy_to_natural_iso(h2)
    tgt_g = n1.source_functor.target
    f = h1.source_morphism
    nb_t = f.target.base.order
    d = []
    for b in range(f.source.base.order):
        w = tgt_g.compose(n2.eta[b], n1.eta[b])
        first, second = pair_split(w, nb_t)
        if second != f.f0[b]:
            raise InternalInconsistency("composite arrow has the wrong source object")
        d.append(first)
    result = XModHomotopy(f, h2.target_morphism, tuple(d))
    report = validate_xmod_homotopy(result)
    if not report.valid:
        raise InternalInconsistency(
            f"pointwise composite is not a homotopy: {report.summary()}")
    return result
