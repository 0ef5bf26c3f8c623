"""Internal groupoids: arrow and object algebras with structure maps.

Composition is never stored.  It is forced by the addition of the arrow
algebra, g o f = g - 1_(target of f) + f, and validation checks that this
derived composition behaves: endpoints, associativity, identities, the
inverse formula, and the interchange law (composition preserves +, -, every
extra binary operation and every unary operation on composable pairs).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import make_action, semidirect_product
from .core import (
    AlgMorphism,
    OmegaAlgebra,
    Row,
    _check_row_shape,
    check_morphism,
    freeze_row,
    is_bijective,
    kernel_of,
    pair_index,
    product_algebra,
    validate_algebra,
)
from .errors import (
    InternalInconsistency,
    InvalidCrossedModule,
    InvalidGroupoid,
    NotComposable,
    RoundTripFailure,
    SignatureMismatch,
)
from .reporting import ReportBuilder, ValidationReport
from .xmod import CrossedModule, XModMorphism, check_xmod_morphism, make_crossed_module, validate_crossed_module


@dataclass(frozen=True)
class InternalGroupoid:
    """Arrows, objects, source/target maps d0/d1 and identity map eps."""

    name: str = field(compare=False)
    arrows: OmegaAlgebra
    objects: OmegaAlgebra
    d0: Row
    d1: Row
    eps: Row

    def compose(self, g: int, f: int) -> int:
        """g o f = g - eps(d1(f)) + f; defined when d0(g) == d1(f)."""
        add, neg = self.arrows.add, self.arrows.neg
        return add[add[g][neg[self.eps[self.d1[f]]]]][f]

    def inverse(self, a: int) -> int:
        add, neg = self.arrows.add, self.arrows.neg
        return add[add[self.eps[self.d1[a]]][neg[a]]][self.eps[self.d0[a]]]

    def composable_pairs(self) -> list[tuple[int, int]]:
        return [(g, f) for g in range(self.arrows.order)
                for f in range(self.arrows.order) if self.d0[g] == self.d1[f]]


def make_groupoid(name, arrows, objects, d0, d1, eps) -> InternalGroupoid:
    g = InternalGroupoid(name, arrows, objects, freeze_row(d0), freeze_row(d1), freeze_row(eps))
    check_groupoid_shape(g)
    return g


def check_groupoid_shape(g: InternalGroupoid) -> None:
    if g.arrows.signature != g.objects.signature:
        raise SignatureMismatch("arrow and object algebras have different signatures")
    _check_row_shape(g.d0, g.arrows.order, g.objects.order, "d0")
    _check_row_shape(g.d1, g.arrows.order, g.objects.order, "d1")
    _check_row_shape(g.eps, g.objects.order, g.arrows.order, "eps")


def validate_groupoid(g: InternalGroupoid) -> ValidationReport:
    check_groupoid_shape(g)
    rb = ReportBuilder(f"groupoid {g.name}")
    rb.merge(validate_algebra(g.arrows), "arrows")
    rb.merge(validate_algebra(g.objects), "objects")
    rb.merge(check_morphism(AlgMorphism(g.arrows, g.objects, g.d0)), "d0")
    rb.merge(check_morphism(AlgMorphism(g.arrows, g.objects, g.d1)), "d1")
    rb.merge(check_morphism(AlgMorphism(g.objects, g.arrows, g.eps)), "eps")

    for x in range(g.objects.order):
        if g.d0[g.eps[x]] != x:
            rb.add("eps-section-d0", (x,), "d0(eps(x)) != x")
            break
    for x in range(g.objects.order):
        if g.d1[g.eps[x]] != x:
            rb.add("eps-section-d1", (x,), "d1(eps(x)) != x")
            break

    pairs = g.composable_pairs()
    comp = {}
    for gq, f in pairs:
        comp[(gq, f)] = g.compose(gq, f)
    for gq, f in pairs:
        c = comp[(gq, f)]
        if g.d0[c] != g.d0[f]:
            rb.add("comp-d0", (gq, f), "d0(g o f) != d0(f)")
            break
    for gq, f in pairs:
        c = comp[(gq, f)]
        if g.d1[c] != g.d1[gq]:
            rb.add("comp-d1", (gq, f), "d1(g o f) != d1(g)")
            break
    for a in range(g.arrows.order):
        if comp.get((a, g.eps[g.d0[a]])) != a:
            rb.add("identity-right", (a,), "a o eps(d0(a)) != a")
            break
    for a in range(g.arrows.order):
        if comp.get((g.eps[g.d1[a]], a)) != a:
            rb.add("identity-left", (a,), "eps(d1(a)) o a != a")
            break
    done = False
    for gq, f in pairs:
        gf = comp[(gq, f)]
        for h in range(g.arrows.order):
            if g.d0[h] != g.d1[gq]:
                continue
            lhs = comp.get((h, gf))
            rhs_inner = comp[(h, gq)]
            rhs = comp.get((rhs_inner, f))
            if lhs != rhs or lhs is None:
                rb.add("comp-assoc", (h, gq, f), "(h o g) o f != h o (g o f)")
                done = True
                break
        if done:
            break
    for a in range(g.arrows.order):
        inv = g.inverse(a)
        if comp.get((inv, a)) != g.eps[g.d0[a]]:
            rb.add("inverse-left", (a,), "inv(a) o a != eps(d0(a))")
            break
    for a in range(g.arrows.order):
        inv = g.inverse(a)
        if comp.get((a, inv)) != g.eps[g.d1[a]]:
            rb.add("inverse-right", (a,), "a o inv(a) != eps(d1(a))")
            break

    _check_interchange(rb, g, pairs, comp)
    return rb.build()


def _check_interchange(rb: ReportBuilder, g: InternalGroupoid, pairs, comp) -> None:
    add = g.arrows.add
    neg = g.arrows.neg
    done = False
    for gq, f in pairs:
        gf = comp[(gq, f)]
        for k, h in pairs:
            if comp[(add[gq][k], add[f][h])] != add[gf][comp[(k, h)]]:
                rb.add("interchange:+", (gq, f, k, h), "(g+k) o (f+h) != (g o f)+(k o h)")
                done = True
                break
        if done:
            break
    for gq, f in pairs:
        if comp[(neg[gq], neg[f])] != neg[comp[(gq, f)]]:
            rb.add("interchange:-", (gq, f), "(-g) o (-f) != -(g o f)")
            break
    for op in g.arrows.signature.binary_ops:
        mul = g.arrows.binary_table(op)
        done = False
        for gq, f in pairs:
            gf = comp[(gq, f)]
            for k, h in pairs:
                if comp[(mul[gq][k], mul[f][h])] != mul[gf][comp[(k, h)]]:
                    rb.add(f"interchange:{op}", (gq, f, k, h),
                           f"(g{op}k) o (f{op}h) != (g o f){op}(k o h)")
                    done = True
                    break
            if done:
                break
    for op in g.arrows.signature.unary_ops:
        w = g.arrows.unary_table(op)
        for gq, f in pairs:
            if comp[(w[gq], w[f])] != w[comp[(gq, f)]]:
                rb.add(f"interchange:{op}", (gq, f), f"{op}(g) o {op}(f) != {op}(g o f)")
                break


@dataclass(frozen=True)
class InternalFunctor:
    """A groupoid morphism: arrow map f1 and object map f0, both in C."""

    source: InternalGroupoid
    target: InternalGroupoid
    f1: Row
    f0: Row


def check_internal_functor(F: InternalFunctor) -> ValidationReport:
    src, tgt = F.source, F.target
    if src.arrows.signature != tgt.arrows.signature:
        raise SignatureMismatch("functor endpoints live over different signatures")
    _check_row_shape(F.f1, src.arrows.order, tgt.arrows.order, "functor f1")
    _check_row_shape(F.f0, src.objects.order, tgt.objects.order, "functor f0")
    rb = ReportBuilder(f"functor {src.name}->{tgt.name}")
    rb.merge(check_morphism(AlgMorphism(src.arrows, tgt.arrows, F.f1)), "f1")
    rb.merge(check_morphism(AlgMorphism(src.objects, tgt.objects, F.f0)), "f0")
    for c in range(src.arrows.order):
        if tgt.d0[F.f1[c]] != F.f0[src.d0[c]]:
            rb.add("F-d0", (c,), "d0(f1(c)) != f0(d0(c))")
            break
    for c in range(src.arrows.order):
        if tgt.d1[F.f1[c]] != F.f0[src.d1[c]]:
            rb.add("F-d1", (c,), "d1(f1(c)) != f0(d1(c))")
            break
    for x in range(src.objects.order):
        if F.f1[src.eps[x]] != tgt.eps[F.f0[x]]:
            rb.add("F-eps", (x,), "f1(eps(x)) != eps(f0(x))")
            break
    for gq, f in src.composable_pairs():
        if F.f1[src.compose(gq, f)] != tgt.compose(F.f1[gq], F.f1[f]):
            rb.add("F-comp", (gq, f), "f1(g o f) != f1(g) o f1(f)")
            break
    return rb.build()


def identity_functor(g: InternalGroupoid) -> InternalFunctor:
    return InternalFunctor(g, g, tuple(range(g.arrows.order)), tuple(range(g.objects.order)))


def compose_internal_functors(g: InternalFunctor, f: InternalFunctor) -> InternalFunctor:
    """g after f, componentwise on arrows and objects."""
    if f.target != g.source:
        raise NotComposable("target of f is not the source of g")
    f1 = tuple(g.f1[x] for x in f.f1)
    f0 = tuple(g.f0[x] for x in f.f0)
    return InternalFunctor(f.source, g.target, f1, f0)


# ---------------------------------------------------------------------------
# crossed module <-> internal groupoid

def to_internal_groupoid(x: CrossedModule) -> InternalGroupoid:
    """Arrow algebra is the semidirect product; d0(a,b)=b, d1(a,b)=boundary(a)+b.

    The derived composition then sends composable ((a,b),(a1,b1)) to
    (a+a1, b1), which is checked exhaustively by the tests.
    """
    report = validate_crossed_module(x)
    if not report.valid:
        raise InvalidCrossedModule(f"cannot convert: {report.summary()}", report)
    arrows, _ = semidirect_product(x.action)
    nb = x.base.order
    d0 = []
    d1 = []
    for a in range(x.top.order):
        for b in range(nb):
            d0.append(b)
            d1.append(x.base.add[x.boundary[a]][b])
    eps = [pair_index(0, b, nb) for b in range(nb)]
    return make_groupoid(f"gpd({x.top.name},{x.base.name})", arrows, x.base, d0, d1, eps)


def to_crossed_module(g: InternalGroupoid) -> CrossedModule:
    """Top is the kernel of d0, boundary is d1 restricted to it, and the
    base acts through identity arrows: x.a = 1_x + a - 1_x, x*a = 1_x * a."""
    report = validate_groupoid(g)
    if not report.valid:
        raise InvalidGroupoid(f"cannot convert: {report.summary()}", report)
    top, incl = kernel_of(AlgMorphism(g.arrows, g.objects, g.d0))
    back = {e: i for i, e in enumerate(incl.table)}
    boundary = [g.d1[e] for e in incl.table]
    add, neg = g.arrows.add, g.arrows.neg

    def pull(e, what):
        if e not in back:
            raise InternalInconsistency(f"{what} value escapes ker d0 in {g.name}")
        return back[e]

    dot = []
    for x in range(g.objects.order):
        ex = g.eps[x]
        nex = neg[ex]
        dot.append([pull(add[add[ex][e]][nex], "dot") for e in incl.table])
    stars = []
    for op in g.arrows.signature.binary_ops:
        mul = g.arrows.binary_table(op)
        stars.append((op, [[pull(mul[g.eps[x]][e], f"star:{op}") for e in incl.table]
                           for x in range(g.objects.order)]))
    action = make_action(g.objects, top, dot, stars)
    return make_crossed_module(top, g.objects, boundary, action)


def pair_groupoid(A: OmegaAlgebra, name: str | None = None) -> InternalGroupoid:
    """Arrows are pairs (p, q) seen as q -> p; composition is (p,q) o (q,s) = (p,s)."""
    arrows = product_algebra(A, A, name=f"({A.name}x{A.name})")
    n = A.order
    d0 = [q for p in range(n) for q in range(n)]
    d1 = [p for p in range(n) for q in range(n)]
    eps = [pair_index(x, x, n) for x in range(n)]
    return make_groupoid(name or f"pair({A.name})", arrows, A, d0, d1, eps)


def roundtrip_crossed_module(x: CrossedModule) -> XModMorphism:
    """The canonical isomorphism from x onto the double conversion of x.

    Top component sends a to the kernel index of the pair (a, 0); base
    component is the identity.  Raises RoundTripFailure when the input does
    not validate or the canonical morphism fails.
    """
    try:
        g = to_internal_groupoid(x)
        back = to_crossed_module(g)
    except (InvalidCrossedModule, InvalidGroupoid) as exc:
        raise RoundTripFailure(str(exc), getattr(exc, "report", None)) from exc
    nb = x.base.order
    top, incl = kernel_of(AlgMorphism(g.arrows, g.objects, g.d0))
    arrow_to_kernel = {e: i for i, e in enumerate(incl.table)}
    f1 = tuple(arrow_to_kernel[pair_index(a, 0, nb)] for a in range(x.top.order))
    f0 = tuple(range(x.base.order))
    m = XModMorphism(x, back, f1, f0)
    report = check_xmod_morphism(m)
    if not report.valid:
        raise RoundTripFailure(f"canonical map is not a morphism: {report.summary()}", report)
    if not (is_bijective(f1) and len(f1) == back.top.order):
        raise RoundTripFailure("canonical top map is not bijective")
    return m


def roundtrip_groupoid(g: InternalGroupoid) -> InternalFunctor:
    """The canonical isomorphism from g onto the double conversion of g.

    An arrow c maps to the pair (kernel index of c - eps(d0(c)), d0(c)).
    """
    try:
        x = to_crossed_module(g)
        forward = to_internal_groupoid(x)
    except (InvalidCrossedModule, InvalidGroupoid) as exc:
        raise RoundTripFailure(str(exc), getattr(exc, "report", None)) from exc
    top, incl = kernel_of(AlgMorphism(g.arrows, g.objects, g.d0))
    arrow_to_kernel = {e: i for i, e in enumerate(incl.table)}
    add, neg = g.arrows.add, g.arrows.neg
    nb = g.objects.order
    f1 = []
    for c in range(g.arrows.order):
        shifted = add[c][neg[g.eps[g.d0[c]]]]
        if shifted not in arrow_to_kernel:
            raise RoundTripFailure(f"arrow {c} does not normalize into ker d0")
        f1.append(pair_index(arrow_to_kernel[shifted], g.d0[c], nb))
    F = InternalFunctor(g, forward, tuple(f1), tuple(range(g.objects.order)))
    report = check_internal_functor(F)
    if not report.valid:
        raise RoundTripFailure(f"canonical functor fails: {report.summary()}", report)
    if not (is_bijective(F.f1) and g.arrows.order == forward.arrows.order):
        raise RoundTripFailure("canonical arrow map is not bijective")
    return F
