"""Derivations of a crossed module, their monoid, and the group of
regular ones.

A derivation is a table d on the base with values in the top satisfying
three conditions; it induces endomorphism components f1(a) = d(bd(a)) + a
on the top and f0(b) = bd(d(b)) + b on the base (bd is the boundary), and
those are exactly the homotopies from the identity endomorphism.  The
monoid product is (d1 . d2)(b) = d1(f0_of_d2(b)) + d2(b); its invertible
elements are the regular derivations, decided equivalently by bijectivity
of either induced component, and the three verdicts are required to agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (
    DEFAULT_BUDGET,
    GROUP_SIGNATURE,
    Row,
    freeze_row,
    inverse_permutation,
    is_bijective,
    make_algebra,
    validate_algebra,
)
from .errors import (
    BaseMismatch,
    BudgetExceeded,
    DimensionMismatch,
    InternalInconsistency,
    InvalidCrossedModule,
    InvalidDerivation,
    NotRegular,
)
from .homotopy import XModHomotopy
from .reporting import ReportBuilder, ValidationReport
from .xmod import CrossedModule, XModMorphism, check_xmod_morphism, identity_xmod_morphism, validate_crossed_module


@dataclass(frozen=True)
class Derivation:
    """A derivation table over a crossed module, with its induced maps."""

    base: CrossedModule
    table: Row
    f1: Row = field(init=False, compare=False, repr=False)
    f0: Row = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        x = self.base
        addA, addB = x.top.add, x.base.add
        bd = x.boundary
        d = self.table
        object.__setattr__(self, "f1", tuple(addA[d[bd[a]]][a] for a in range(x.top.order)))
        object.__setattr__(self, "f0", tuple(addB[bd[d[b]]][b] for b in range(x.base.order)))


def make_derivation(base: CrossedModule, table) -> Derivation:
    table = freeze_row(table)
    if len(table) != base.base.order or any(not 0 <= v < base.top.order for v in table):
        raise DimensionMismatch("derivation table must map the base into the top")
    return Derivation(base, table)


def zero_derivation(base: CrossedModule) -> Derivation:
    return Derivation(base, (0,) * base.base.order)


@lru_cache(maxsize=256)
def _base_is_valid(base: CrossedModule) -> bool:
    return validate_crossed_module(base).valid


def _require_valid_base(base: CrossedModule) -> None:
    if not _base_is_valid(base):
        raise InvalidCrossedModule(f"({base.top.name},{base.base.name}) is not a crossed module")


def check_derivation(base: CrossedModule, table: Row) -> ValidationReport:
    """The three derivation conditions (DER-i..iii) plus the compatibility
    f1 o d = d o f0 of the induced maps, which must hold automatically."""
    _require_valid_base(base)
    d = make_derivation(base, table)
    rb = ReportBuilder("derivation")
    A, B = base.top, base.base
    addA = A.add
    dot = base.action.dot
    t = d.table

    done = False
    for b in range(B.order):
        tb = t[b]
        drow = dot[b]
        for b1 in range(B.order):
            if t[B.add[b][b1]] != addA[tb][drow[t[b1]]]:
                rb.add("DER-i", (b, b1), "d(b+b1) != d(b) + b.d(b1)")
                done = True
                break
        if done:
            break
    for op in B.signature.binary_ops:
        mulB = B.binary_table(op)
        mulA = A.binary_table(op)
        star = base.action.star_table(op)
        mixed = base.action.mixed_star(op)
        done = False
        for b in range(B.order):
            tb = t[b]
            for b1 in range(B.order):
                tb1 = t[b1]
                rhs = addA[addA[mulA[tb][tb1]][mixed[b1][tb]]][star[b][tb1]]
                if t[mulB[b][b1]] != rhs:
                    rb.add(f"DER-ii:{op}", (b, b1),
                           "d(b*b1) != d(b)*d(b1) + d(b)*b1 + b*d(b1)")
                    done = True
                    break
            if done:
                break
    for op in B.signature.unary_ops:
        wB = B.unary_table(op)
        wA = A.unary_table(op)
        for b in range(B.order):
            if t[wB[b]] != wA[t[b]]:
                rb.add(f"DER-iii:{op}", (b,), "d(w(b)) != w(d(b))")
                break
    report = rb.build()
    if report.valid:
        for b in range(B.order):
            if d.f1[t[b]] != t[d.f0[b]]:
                raise InternalInconsistency(
                    "induced maps of a valid derivation fail f1 o d = d o f0")
    return report


def is_derivation(base: CrossedModule, table) -> bool:
    return check_derivation(base, freeze_row(table)).valid


def _additive_recipe(B):
    """Greedy additive generators of the base and a discovery recipe.

    Each non-generator element is reached as (earlier element) + generator,
    which is the shape needed to propagate the first derivation condition.
    """
    n = B.order
    add = B.add

    def close(gens):
        known = {0: None}
        order = [0]
        for g in gens:
            if g not in known:
                known[g] = ("gen", gens.index(g))
                order.append(g)
        changed = True
        while changed:
            changed = False
            for x in list(order):
                for gi, g in enumerate(gens):
                    e = add[x][g]
                    if e not in known:
                        known[e] = ("sum", x, gi)
                        order.append(e)
                        changed = True
        return known, order

    gens: list[int] = []
    known, order = close(gens)
    while len(known) < n:
        gens.append(min(e for e in range(n) if e not in known))
        known, order = close(gens)
    return tuple(gens), known, order


@lru_cache(maxsize=128)
def enumerate_derivations(base: CrossedModule, budget: int = DEFAULT_BUDGET) -> tuple[Derivation, ...]:
    """All derivations, in lexicographic order of their tables.

    Values are assigned on an additive generating set of the base,
    propagated through d(x+g) = d(x) + x.d(g), and every candidate is
    confirmed with the full three-condition check.
    """
    _require_valid_base(base)
    A, B = base.top, base.base
    gens, known, disc_order = _additive_recipe(B)
    count = A.order ** len(gens)
    if count > budget:
        raise BudgetExceeded(
            f"{count} candidate derivation tables exceed budget {budget}")
    dot = base.action.dot
    addA = A.add
    found = []
    for assignment in itertools.product(range(A.order), repeat=len(gens)):
        t = [0] * B.order
        for e in disc_order:
            recipe = known[e]
            if recipe is None:
                t[e] = 0
            elif recipe[0] == "gen":
                t[e] = assignment[recipe[1]]
            else:
                _, x, gi = recipe
                t[e] = addA[t[x]][dot[x][assignment[gi]]]
        table = tuple(t)
        if check_derivation(base, table).valid:
            found.append(table)
    found.sort()
    return tuple(Derivation(base, t) for t in found)


def _require_derivation(d: Derivation) -> None:
    report = check_derivation(d.base, d.table)
    if not report.valid:
        raise InvalidDerivation(f"not a derivation: {report.summary()}", report)


def endomorphism_of(d: Derivation) -> XModMorphism:
    """The induced endomorphism pair; valid for every derivation."""
    _require_derivation(d)
    m = XModMorphism(d.base, d.base, d.f1, d.f0)
    report = check_xmod_morphism(m)
    if not report.valid:
        raise InternalInconsistency(
            f"induced pair of a derivation is not a morphism: {report.summary()}")
    return m


def whitehead_compose(d1: Derivation, d2: Derivation) -> Derivation:
    """(d1 . d2)(b) = d1(f0_of_d2(b)) + d2(b); the equal alternative form
    f1_of_d1(d2(b)) + d1(b) is computed as a cross-check."""
    if d1.base != d2.base:
        raise BaseMismatch("derivations live over different crossed modules")
    addA = d1.base.top.add
    t = tuple(addA[d1.table[d2.f0[b]]][d2.table[b]] for b in range(d1.base.base.order))
    alt = tuple(addA[d1.f1[d2.table[b]]][d1.table[b]] for b in range(d1.base.base.order))
    if t != alt:
        raise InternalInconsistency("the two composition formulas disagree")
    return Derivation(d1.base, t)


@dataclass(frozen=True)
class RegularityCertificate:
    regular: bool
    inverse: Derivation | None = None
    collision: tuple[int, int] | None = None  # two top elements with equal f1 image

    def __bool__(self) -> bool:
        return self.regular


@lru_cache(maxsize=4096)
def is_regular(d: Derivation, budget: int = DEFAULT_BUDGET) -> RegularityCertificate:
    """Decide regularity by bijectivity of the induced top map, and require
    agreement with bijectivity of the base map and with the existence of a
    two-sided monoid inverse among the enumerated derivations.

    Certificates are cached per derivation."""
    _require_derivation(d)
    top_bij = is_bijective(d.f1)
    base_bij = is_bijective(d.f0)
    zero = zero_derivation(d.base)
    inverse = None
    for e in enumerate_derivations(d.base, budget):
        if whitehead_compose(d, e) == zero and whitehead_compose(e, d) == zero:
            inverse = e
            break
    if not (top_bij == base_bij == (inverse is not None)):
        raise InternalInconsistency(
            f"regularity criteria disagree: top-bijective={top_bij} "
            f"base-bijective={base_bij} monoid-invertible={inverse is not None}")
    if top_bij:
        return RegularityCertificate(True, inverse=inverse)
    seen = {}
    for a, v in enumerate(d.f1):
        if v in seen:
            return RegularityCertificate(False, collision=(seen[v], a))
        seen[v] = a
    raise InternalInconsistency("non-bijective map without a collision")


def invert_derivation(d: Derivation, budget: int = DEFAULT_BUDGET) -> Derivation:
    """Inverse via e(b) = f1_inverse(-d(b)), cross-checked against
    e(b) = -d(f0_inverse(b)) and against the monoid inverse."""
    cert = is_regular(d, budget)
    if not cert.regular:
        raise NotRegular("derivation has no inverse")
    x = d.base
    f1_inv = inverse_permutation(d.f1)
    f0_inv = inverse_permutation(d.f0)
    negA = x.top.neg
    e1 = tuple(f1_inv[negA[d.table[b]]] for b in range(x.base.order))
    e2 = tuple(negA[d.table[f0_inv[b]]] for b in range(x.base.order))
    if e1 != e2:
        raise InternalInconsistency("the two inverse formulas disagree")
    e = Derivation(x, e1)
    zero = zero_derivation(x)
    if whitehead_compose(d, e) != zero or whitehead_compose(e, d) != zero:
        raise InternalInconsistency("formula inverse is not a two-sided inverse")
    if cert.inverse is not None and cert.inverse != e:
        raise InternalInconsistency("formula inverse differs from the monoid inverse")
    return e


@dataclass(frozen=True)
class WhiteheadGroup:
    base: CrossedModule
    elements: tuple[Derivation, ...]
    cayley: tuple[Row, ...]
    identity_index: int

    @property
    def order(self) -> int:
        return len(self.elements)


def whitehead_group(base: CrossedModule, budget: int = DEFAULT_BUDGET) -> WhiteheadGroup:
    """The group of regular derivations with its Cayley table.

    The table is validated by running the full group-axiom check on it;
    the identity is the zero derivation (always at index 0 because the
    all-zero table is lexicographically first among regular tables).
    """
    regular = [d for d in enumerate_derivations(base, budget) if is_regular(d, budget)]
    index = {d.table: i for i, d in enumerate(regular)}
    cayley = []
    for d1 in regular:
        row = []
        for d2 in regular:
            prod = whitehead_compose(d1, d2)
            if prod.table not in index:
                raise InternalInconsistency("regular derivations not closed under composition")
            row.append(index[prod.table])
        cayley.append(tuple(row))
    zero = zero_derivation(base)
    if zero.table not in index:
        raise InternalInconsistency("zero derivation is not regular")
    identity_index = index[zero.table]
    check = make_algebra("whitehead", GROUP_SIGNATURE, cayley)
    report = validate_algebra(check)
    if not report.valid or identity_index != 0:
        raise InternalInconsistency(
            f"regular derivations do not form a group: {report.summary()}")
    return WhiteheadGroup(base, tuple(regular), tuple(cayley), identity_index)


def kernel_image_predicate(d: Derivation) -> bool:
    """True when every value of d lies in the kernel of the boundary."""
    _require_derivation(d)
    bd = d.base.boundary
    return all(bd[v] == 0 for v in d.table)


def derivation_as_homotopy(d: Derivation) -> XModHomotopy:
    """A derivation is a homotopy from the identity endomorphism to its
    induced endomorphism pair."""
    return XModHomotopy(identity_xmod_morphism(d.base), endomorphism_of(d), d.table)
