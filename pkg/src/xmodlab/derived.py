"""New crossed modules built from derivations of an old one.

Any derivation twists the action (general construction via the shifted
section b -> (d(b), b) of the canonical split extension); a regular one
also twists the boundary, giving a derived crossed module isomorphic to the
original through the pair (identity, inverse of the induced base map).
Transporting the derivation to the derived module and repeating produces a
chain of isomorphic crossed modules that is eventually periodic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import ActionSet, make_action
from .core import DEFAULT_BUDGET, inverse_permutation
from .derivations import (
    Derivation,
    check_derivation,
    is_regular,
    _require_derivation,
)
from .errors import BudgetExceeded, InternalInconsistency, NotRegular
from .xmod import (
    CrossedModule,
    XModMorphism,
    check_xmod_morphism,
    is_covering,
    make_crossed_module,
    validate_crossed_module,
)


def derived_action_general(base: CrossedModule, d: Derivation) -> ActionSet:
    """Twisted action b.a = d(b) + (b.a) - d(b), b*a = d(b)*a + b*a.

    Defined for every derivation, regular or not.
    """
    _require_derivation(d)
    A, B = base.top, base.base
    addA, negA = A.add, A.neg
    dot = base.action.dot
    t = d.table
    new_dot = [[addA[addA[t[b]][dot[b][a]]][negA[t[b]]] for a in range(A.order)]
               for b in range(B.order)]
    stars = []
    for op in B.signature.binary_ops:
        mulA = A.binary_table(op)
        star = base.action.star_table(op)
        stars.append((op, [[addA[mulA[t[b]][a]][star[b][a]] for a in range(A.order)]
                           for b in range(B.order)]))
    return make_action(B, A, new_dot, stars)


def derived_action_regular(base: CrossedModule, d: Derivation,
                           budget: int = DEFAULT_BUDGET) -> ActionSet:
    """Twisted action through the induced base map: b.a = f0(b).a etc;
    agrees elementwise with the general construction for regular d."""
    cert = is_regular(d, budget)
    if not cert.regular:
        raise NotRegular("the regular form of the derived action needs a regular derivation")
    A, B = base.top, base.base
    dot = base.action.dot
    f0 = d.f0
    new_dot = [list(dot[f0[b]]) for b in range(B.order)]
    stars = []
    for op in B.signature.binary_ops:
        star = base.action.star_table(op)
        stars.append((op, [list(star[f0[b]]) for b in range(B.order)]))
    return make_action(B, A, new_dot, stars)


def derived_crossed_module(base: CrossedModule, d: Derivation,
                           budget: int = DEFAULT_BUDGET) -> CrossedModule:
    """(top, base, f0_inverse o boundary) with the twisted action; the
    crossed module axioms are re-checked on the result."""
    cert = is_regular(d, budget)
    if not cert.regular:
        raise NotRegular("derived crossed module needs a regular derivation")
    action = derived_action_regular(base, d, budget)
    general = derived_action_general(base, d)
    if action != general:
        raise InternalInconsistency(
            "regular and general derived actions disagree")
    f0_inv = inverse_permutation(d.f0)
    boundary = tuple(f0_inv[base.boundary[a]] for a in range(base.top.order))
    result = make_crossed_module(base.top, base.base, boundary, action)
    report = validate_crossed_module(result)
    if not report.valid:
        raise InternalInconsistency(
            f"derived crossed module fails validation: {report.summary()}")
    return result


def derived_iso(base: CrossedModule, d: Derivation,
                budget: int = DEFAULT_BUDGET) -> XModMorphism:
    """The isomorphism (identity, f0_inverse) onto the derived module;
    always a covering."""
    derived = derived_crossed_module(base, d, budget)
    f0_inv = inverse_permutation(d.f0)
    m = XModMorphism(base, derived, tuple(range(base.top.order)), f0_inv)
    report = check_xmod_morphism(m)
    if not report.valid:
        raise InternalInconsistency(f"derived isomorphism fails: {report.summary()}")
    if not is_covering(m):
        raise InternalInconsistency("derived isomorphism is not a covering")
    return m


def transport_derivation(base: CrossedModule, d: Derivation,
                         budget: int = DEFAULT_BUDGET) -> Derivation:
    """The derivation b -> d(f0(b)) of the derived crossed module.

    Its induced top map coincides with the original one (asserted), so it
    is again regular.
    """
    derived = derived_crossed_module(base, d, budget)
    return _transport_onto(base, d, derived, budget)


def _transport_onto(base: CrossedModule, d: Derivation, derived: CrossedModule,
                    budget: int) -> Derivation:
    table = tuple(d.table[d.f0[b]] for b in range(base.base.order))
    report = check_derivation(derived, table)
    if not report.valid:
        raise InternalInconsistency(
            f"transported table is not a derivation: {report.summary()}")
    result = Derivation(derived, table)
    if result.f1 != d.f1:
        raise InternalInconsistency(
            "transported derivation changed the induced top map")
    if not is_regular(result, budget).regular:
        raise InternalInconsistency("transported derivation is not regular")
    return result


@dataclass(frozen=True)
class DerivedChain:
    """The distinct stages of the iterated construction and their links.

    stages[0] is the starting crossed module; links[k] is the validated
    isomorphism from stages[k] onto the next stage (the last link closes
    the cycle onto a copy of stage 0).  Stage equality is table equality of
    boundary and action, so the period is well defined.
    """

    base: CrossedModule
    derivation: Derivation
    stages: tuple[CrossedModule, ...]
    links: tuple[XModMorphism, ...]
    derivations: tuple[Derivation, ...]
    period: int


def iterate_chain(base: CrossedModule, d: Derivation, max_stages: int = 64,
                  budget: int = DEFAULT_BUDGET) -> DerivedChain:
    """Iterate the derived construction with the transported derivation
    until the starting stage recurs; report the period."""
    if max_stages < 1:
        raise BudgetExceeded("max_stages must be at least 1")
    cert = is_regular(d, budget)
    if not cert.regular:
        raise NotRegular("chains are built from regular derivations only")
    stages = [base]
    ders = [d]
    links = []
    current_x, current_d = base, d
    for _ in range(max_stages):
        next_x = derived_crossed_module(current_x, current_d, budget)
        links.append(derived_iso(current_x, current_d, budget))
        next_d = _transport_onto(current_x, current_d, next_x, budget)
        if next_x == stages[0]:
            return DerivedChain(base, d, tuple(stages), tuple(links),
                                tuple(ders), period=len(links))
        stages.append(next_x)
        ders.append(next_d)
        current_x, current_d = next_x, next_d
    raise BudgetExceeded(f"no period detected within {max_stages} stages")
