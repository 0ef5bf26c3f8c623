"""Crossed modules over groups with operations, and their morphisms.

A crossed module is a boundary morphism from a top algebra to a base
algebra together with a derived action of the base on the top, subject to
equivariance (CM1), the Peiffer identity (CM2) and their analogues for the
extra binary operations (CM3, CM4).  Validation also re-derives the verdict
through the semidirect-product formulation (the pair maps into the
conjugation semidirect products must be morphisms) and insists the two
formulations agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionSet, check_derived_action, conjugation_action, semidirect_tables
from .core import (
    AlgMorphism,
    OmegaAlgebra,
    Row,
    _check_row_shape,
    check_morphism,
    freeze_row,
    is_bijective,
    make_algebra,
    pair_index,
    validate_algebra,
)
from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    InvalidMorphism,
    NotComposable,
    SignatureMismatch,
)
from .reporting import ReportBuilder, ValidationReport


@dataclass(frozen=True)
class CrossedModule:
    """(top, base, boundary, action); boundary maps top into base."""

    top: OmegaAlgebra
    base: OmegaAlgebra
    boundary: Row
    action: ActionSet

    def boundary_morphism(self) -> AlgMorphism:
        return AlgMorphism(self.top, self.base, self.boundary)


def make_crossed_module(top, base, boundary, action) -> CrossedModule:
    x = CrossedModule(top, base, freeze_row(boundary), action)
    check_crossed_module_shape(x)
    return x


def check_crossed_module_shape(x: CrossedModule) -> None:
    if x.top.signature != x.base.signature:
        raise SignatureMismatch("top and base have different signatures")
    _check_row_shape(x.boundary, x.top.order, x.base.order, "boundary")
    if x.action.actor != x.base or x.action.acted != x.top:
        raise DimensionMismatch("action endpoints do not match top/base algebras")


@dataclass(frozen=True)
class XModMorphism:
    """A pair of component maps (f1 on tops, f0 on bases)."""

    source: CrossedModule
    target: CrossedModule
    f1: Row
    f0: Row


def validate_crossed_module(x: CrossedModule) -> ValidationReport:
    """Check CM1-CM4 on top of algebra and derived-action validity.

    When the ingredients are sound, the semidirect formulation (both pair
    maps are morphisms into the conjugation semidirect products) is also
    evaluated and must give the same verdict as CM1-CM4, otherwise
    InternalInconsistency is raised.
    """
    check_crossed_module_shape(x)
    rb = ReportBuilder(f"crossed module ({x.top.name},{x.base.name})")
    top_report = validate_algebra(x.top)
    base_report = validate_algebra(x.base)
    boundary_report = check_morphism(x.boundary_morphism())
    rb.merge(top_report, "top-algebra")
    rb.merge(base_report, "base-algebra")
    rb.merge(boundary_report, "boundary")
    action_report = check_derived_action(x.action)
    rb.merge(action_report, "")  # keep the bare D1..D12 condition ids

    alpha = x.boundary
    A, B = x.top, x.base
    dot = x.action.dot
    addA, addB = A.add, B.add
    negA, negB = A.neg, B.neg

    cm_rb = rb
    done = False
    for b in range(B.order):
        drow = dot[b]
        nb = negB[b]
        for a in range(A.order):
            if alpha[drow[a]] != addB[addB[b][alpha[a]]][nb]:
                cm_rb.add("CM1", (b, a), "boundary(b.a) != b + boundary(a) - b")
                done = True
                break
        if done:
            break
    done = False
    for a in range(A.order):
        drow = dot[alpha[a]]
        na = negA[a]
        for a1 in range(A.order):
            if drow[a1] != addA[addA[a][a1]][na]:
                cm_rb.add("CM2", (a, a1), "boundary(a).a1 != a + a1 - a")
                done = True
                break
        if done:
            break
    for op in B.signature.binary_ops:
        star = x.action.star_table(op)
        mixed = x.action.mixed_star(op)
        mulB = B.binary_table(op)
        done = False
        for b in range(B.order):
            srow = star[b]
            mrow = mulB[b]
            for a in range(A.order):
                if alpha[srow[a]] != mrow[alpha[a]] or alpha[mixed[b][a]] != mulB[alpha[a]][b]:
                    cm_rb.add(f"CM3:{op}", (b, a),
                              "boundary(b*a) != b*boundary(a) or boundary(a*b) != boundary(a)*b")
                    done = True
                    break
            if done:
                break
        mulA = A.binary_table(op)
        done = False
        for a in range(A.order):
            srow = star[alpha[a]]
            arow = mulA[a]
            for a1 in range(A.order):
                if srow[a1] != arow[a1] or arow[a1] != mixed[alpha[a1]][a]:
                    cm_rb.add(f"CM4:{op}", (a, a1),
                              "boundary(a)*a1, a*a1, a*boundary(a1) differ")
                    done = True
                    break
            if done:
                break
    report = rb.build()

    ingredients_ok = top_report.valid and base_report.valid and boundary_report.valid
    if ingredients_ok:
        semidirect_verdict = _semidirect_formulation_valid(x, action_report.valid)
        cm_verdict = report.valid
        if semidirect_verdict != cm_verdict:
            raise InternalInconsistency(
                "CM1-CM4 verdict disagrees with the semidirect-product formulation "
                f"for ({x.top.name},{x.base.name})")
    return report


def _semidirect_formulation_valid(x: CrossedModule, action_valid: bool) -> bool:
    """Definition-by-semidirect-products verdict, for cross-validation.

    Object-hood of the three semidirect products is exactly derived-action
    validity (the tested Orzech contract; conjugation actions of valid
    algebras are always derived), so only the two pair maps are checked
    here, against unvalidated semidirect tables.
    """
    if not action_valid:
        return False
    A, B = x.top, x.base
    axa = _unvalidated_semidirect(conjugation_action(A), "AxA")
    axb = _unvalidated_semidirect(x.action, "AxB")
    bxb = _unvalidated_semidirect(conjugation_action(B), "BxB")
    na, nb = A.order, B.order
    m1 = tuple(pair_index(a, x.boundary[a1], nb)
               for a in range(na) for a1 in range(na))
    m2 = tuple(pair_index(x.boundary[a], b, nb)
               for a in range(na) for b in range(nb))
    ok1 = check_morphism(AlgMorphism(axa, axb, m1)).valid
    ok2 = check_morphism(AlgMorphism(axb, bxb, m2)).valid
    return ok1 and ok2


def _unvalidated_semidirect(action: ActionSet, name: str) -> OmegaAlgebra:
    add, bins, uns = semidirect_tables(action)
    return make_algebra(name, action.actor.signature, add, None, bins, uns)


# ---------------------------------------------------------------------------
# morphisms of crossed modules

def check_xmod_morphism(m: XModMorphism) -> ValidationReport:
    """Component maps must be morphisms, commute with boundaries and
    preserve the dot and star actions."""
    src, tgt = m.source, m.target
    check_crossed_module_shape(src)
    check_crossed_module_shape(tgt)
    if src.top.signature != tgt.top.signature:
        raise SignatureMismatch("source and target live over different signatures")
    _check_row_shape(m.f1, src.top.order, tgt.top.order, "f1")
    _check_row_shape(m.f0, src.base.order, tgt.base.order, "f0")
    rb = ReportBuilder("crossed module morphism")
    rb.merge(check_morphism(AlgMorphism(src.top, tgt.top, m.f1)), "f1")
    rb.merge(check_morphism(AlgMorphism(src.base, tgt.base, m.f0)), "f0")

    for a in range(src.top.order):
        if m.f0[src.boundary[a]] != tgt.boundary[m.f1[a]]:
            rb.add("M-i", (a,), "f0(boundary(a)) != boundary(f1(a))")
            break
    done = False
    for b in range(src.base.order):
        drow = src.action.dot[b]
        trow = tgt.action.dot[m.f0[b]]
        for a in range(src.top.order):
            if m.f1[drow[a]] != trow[m.f1[a]]:
                rb.add("M-ii", (b, a), "f1(b.a) != f0(b).f1(a)")
                done = True
                break
        if done:
            break
    for op in src.top.signature.binary_ops:
        star_s = src.action.star_table(op)
        star_t = tgt.action.star_table(op)
        done = False
        for b in range(src.base.order):
            srow = star_s[b]
            trow = star_t[m.f0[b]]
            for a in range(src.top.order):
                if m.f1[srow[a]] != trow[m.f1[a]]:
                    rb.add(f"M-iii:{op}", (b, a), "f1(b*a) != f0(b)*f1(a)")
                    done = True
                    break
            if done:
                break
    return rb.build()


def identity_xmod_morphism(x: CrossedModule) -> XModMorphism:
    return XModMorphism(x, x, tuple(range(x.top.order)), tuple(range(x.base.order)))


def zero_xmod_morphism(src: CrossedModule, tgt: CrossedModule) -> XModMorphism:
    return XModMorphism(src, tgt, (0,) * src.top.order, (0,) * src.base.order)


def compose_xmod_morphisms(g: XModMorphism, f: XModMorphism) -> XModMorphism:
    """g after f, componentwise."""
    if f.target != g.source:
        raise NotComposable("target of f is not the source of g")
    f1 = tuple(g.f1[x] for x in f.f1)
    f0 = tuple(g.f0[x] for x in f.f0)
    return XModMorphism(f.source, g.target, f1, f0)


def is_covering(m: XModMorphism) -> bool:
    """True when the top component is an isomorphism."""
    report = check_xmod_morphism(m)
    if not report.valid:
        raise InvalidMorphism(f"not a crossed module morphism: {report.summary()}")
    return is_bijective(m.f1) and m.source.top.order == m.target.top.order
