"""Actions of one algebra on another, and the split extensions behind them.

An action set is a dot table (conjugation-flavoured action on the carrier)
plus one star table per extra binary operation, giving b*a for an actor
element b and an acted element a; the mixed product a*b is always read off
the opposite operation's star table.  The twelve-condition check decides
whether an action set arises from a split extension, equivalently whether
the semidirect product built from it is a valid algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    AlgMorphism,
    OmegaAlgebra,
    Table,
    _check_table_shape,
    check_morphism,
    freeze_table,
    make_algebra,
    pair_index,
    require_same_signature,
    validate_algebra,
)
from .errors import DimensionMismatch, NotASection, NotKernel
from .reporting import ReportBuilder, ValidationReport


@dataclass(frozen=True)
class ActionSet:
    """Candidate action of ``actor`` on ``acted`` (same signature).

    dot is |actor| x |acted| with values in the acted carrier; star_tables
    holds one table of the same shape per binary operation name.
    """

    actor: OmegaAlgebra
    acted: OmegaAlgebra
    dot: Table
    star_tables: tuple[tuple[str, Table], ...] = ()

    def star_table(self, name: str) -> Table:
        for op, table in self.star_tables:
            if op == name:
                return table
        raise DimensionMismatch(f"action has no star table for op {name!r}")

    def mixed_star(self, name: str) -> Table:
        """Table for a*b, i.e. the opposite op's star table (b *op* a)."""
        return self.star_table(self.actor.signature.opposite_of(name))


@dataclass(frozen=True)
class SplitExtension:
    """A kernel inclusion i, a surjection p and a section s of p."""

    sub: OmegaAlgebra
    total: OmegaAlgebra
    quotient: OmegaAlgebra
    i: AlgMorphism
    p: AlgMorphism
    s: AlgMorphism


def check_action_shape(act: ActionSet) -> None:
    require_same_signature(act.actor, act.acted)
    nb, na = act.actor.order, act.acted.order
    _check_table_shape(act.dot, nb, na, na, "action.dot")
    declared = tuple(op for op, _ in act.star_tables)
    if declared != act.actor.signature.binary_ops:
        raise DimensionMismatch(
            f"star tables {declared} do not match signature {act.actor.signature.binary_ops}")
    for op, table in act.star_tables:
        _check_table_shape(table, nb, na, na, f"action.star:{op}")


def make_action(actor, acted, dot, star_tables=None) -> ActionSet:
    act = ActionSet(actor, acted, freeze_table(dot),
                    tuple((op, freeze_table(t)) for op, t in (star_tables or ())))
    check_action_shape(act)
    return act


def check_derived_action(act: ActionSet) -> ValidationReport:
    """The twelve derived-action conditions, reported as D1..D12.

    D12 ranges over placements of four elements in the disjoint sum of the
    two carriers: each product is read from the acted algebra (both in it),
    the star table (actor*acted), the opposite star table (acted*actor) or
    the actor algebra (both in it); the two products must land in the same
    carrier for their sum to make sense, and then the sum must commute.
    The placement pattern is carried in the rule id (interpretation I-12).
    """
    check_action_shape(act)
    rb = ReportBuilder(f"action of {act.actor.name} on {act.acted.name}")
    B, A = act.actor, act.acted
    dot = act.dot
    nb, na = B.order, A.order
    addA, addB = A.add, B.add
    rb_range, ra_range = range(nb), range(na)

    for a in ra_range:
        if dot[0][a] != a:
            rb.add("D1", (a,), f"0.a != a at a={a}")
            break
    done = False
    for b in rb_range:
        drow = dot[b]
        for a1 in ra_range:
            for a2 in ra_range:
                if drow[addA[a1][a2]] != addA[drow[a1]][drow[a2]]:
                    rb.add("D2", (b, a1, a2), "b.(a1+a2) != b.a1 + b.a2")
                    done = True
                    break
            if done:
                break
        if done:
            break
    done = False
    for b1 in rb_range:
        for b2 in rb_range:
            dsum = dot[addB[b1][b2]]
            d1row, d2row = dot[b1], dot[b2]
            for a in ra_range:
                if dsum[a] != d1row[d2row[a]]:
                    rb.add("D3", (b1, b2, a), "(b1+b2).a != b1.(b2.a)")
                    done = True
                    break
            if done:
                break
        if done:
            break

    for op in B.signature.binary_ops:
        star = act.star_table(op)
        mulA = A.binary_table(op)
        mulB = B.binary_table(op)
        mixed = act.mixed_star(op)

        done = False
        for b in rb_range:
            srow = star[b]
            for a1 in ra_range:
                for a2 in ra_range:
                    if srow[addA[a1][a2]] != addA[srow[a1]][srow[a2]]:
                        rb.add(f"D4:{op}", (b, a1, a2), "b*(a1+a2) != b*a1 + b*a2")
                        done = True
                        break
                if done:
                    break
            if done:
                break
        done = False
        for b1 in rb_range:
            for b2 in rb_range:
                ssum = star[addB[b1][b2]]
                s1, s2 = star[b1], star[b2]
                for a in ra_range:
                    if ssum[a] != addA[s1[a]][s2[a]]:
                        rb.add(f"D5:{op}", (b1, b2, a), "(b1+b2)*a != b1*a + b2*a")
                        done = True
                        break
                if done:
                    break
            if done:
                break
        done = False
        for b1 in rb_range:
            for b2 in rb_range:
                drow = dot[mulB[b1][b2]]
                for a1 in ra_range:
                    for a2 in ra_range:
                        p = mulA[a1][a2]
                        if drow[p] != p:
                            rb.add(f"D6:{op}", (b1, b2, a1, a2), "(b1*b2).(a1*a2) != a1*a2")
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        done = False
        for b1 in rb_range:
            for b2 in rb_range:
                drow = dot[mulB[b1][b2]]
                for a in ra_range:
                    for b in rb_range:
                        p = mixed[b][a]
                        if drow[p] != p:
                            rb.add(f"D7:{op}", (b1, b2, a, b), "(b1*b2).(a*b) != a*b")
                            done = True
                            break
                    if done:
                        break
                if done:
                    break
            if done:
                break
        done = False
        for a1 in ra_range:
            mrow = mulA[a1]
            for b in rb_range:
                drow = dot[b]
                for a2 in ra_range:
                    if mrow[drow[a2]] != mrow[a2]:
                        rb.add(f"D8:{op}", (a1, b, a2), "a1*(b.a2) != a1*a2")
                        done = True
                        break
                if done:
                    break
            if done:
                break
        done = False
        for b in rb_range:
            srow = star[b]
            for b1 in rb_range:
                drow = dot[b1]
                for a in ra_range:
                    if srow[drow[a]] != srow[a]:
                        rb.add(f"D9:{op}", (b, b1, a), "b*(b1.a) != b*a")
                        done = True
                        break
                if done:
                    break
            if done:
                break

    for w in B.signature.unary_ops:
        wA = A.unary_table(w)
        wB = B.unary_table(w)
        done = False
        for b in rb_range:
            drow = dot[b]
            dwrow = dot[wB[b]]
            for a in ra_range:
                if wA[drow[a]] != dwrow[wA[a]]:
                    rb.add(f"D10:{w}", (b, a), "w(b.a) != w(b).w(a)")
                    done = True
                    break
            if done:
                break
        for op in B.signature.binary_ops:
            mixed = act.mixed_star(op)
            done = False
            for a in ra_range:
                for b in rb_range:
                    lhs = wA[mixed[b][a]]
                    if lhs != mixed[b][wA[a]] or lhs != mixed[wB[b]][a]:
                        rb.add(f"D11:{w}:{op}", (a, b), "w(a*b), w(a)*b, a*w(b) differ")
                        done = True
                        break
                if done:
                    break

    _check_d12(rb, act)
    return rb.build()


def _d12_product_maps(act: ActionSet, op: str):
    """(pattern, product fn, result carrier) for every placement of x*y."""
    mulA = act.acted.binary_table(op)
    mulB = act.actor.binary_table(op)
    star = act.star_table(op)
    mixed = act.mixed_star(op)
    na, nb = act.acted.order, act.actor.order
    return [
        ("AA", (lambda x, y: mulA[x][y]), na, na, "A"),
        ("AB", (lambda x, y: mixed[y][x]), na, nb, "A"),
        ("BA", (lambda x, y: star[x][y]), nb, na, "A"),
        ("BB", (lambda x, y: mulB[x][y]), nb, nb, "B"),
    ]


def _check_d12(rb: ReportBuilder, act: ActionSet) -> None:
    addA, addB = act.acted.add, act.actor.add
    for op in act.actor.signature.binary_ops:
        placements = _d12_product_maps(act, op)
        for pat1, prod1, nx, ny, car1 in placements:
            for pat2, prod2, nz, nt, car2 in placements:
                if car1 != car2:
                    continue
                add = addA if car1 == "A" else addB
                rule = f"D12:{op}:{pat1}+{pat2}"
                done = False
                for x in range(nx):
                    for y in range(ny):
                        p = prod1(x, y)
                        for z in range(nz):
                            for t in range(nt):
                                q = prod2(z, t)
                                if add[p][q] != add[q][p]:
                                    rb.add(rule, (x, y, z, t),
                                           "x*y + z*t != z*t + x*y (interpretation I-12)")
                                    done = True
                                    break
                            if done:
                                break
                        if done:
                            break
                    if done:
                        break


# ---------------------------------------------------------------------------
# semidirect products

def semidirect_tables(act: ActionSet):
    """Raw tables of the semidirect product on pairs (a, b) -> a*|B| + b."""
    B, A = act.actor, act.acted
    nb = B.order
    pairs = [(a, b) for a in range(A.order) for b in range(nb)]
    addA, addB = A.add, B.add
    dot = act.dot
    add = [[pair_index(addA[a][dot[b][a1]], addB[b][b1], nb) for (a1, b1) in pairs]
           for (a, b) in pairs]
    bins = []
    for op in A.signature.binary_ops:
        mulA = A.binary_table(op)
        mulB = B.binary_table(op)
        star = act.star_table(op)
        mixed = act.mixed_star(op)
        table = [[pair_index(addA[addA[mulA[a][a1]][mixed[b1][a]]][star[b][a1]],
                             mulB[b][b1], nb)
                  for (a1, b1) in pairs] for (a, b) in pairs]
        bins.append((op, table))
    uns = []
    for op in A.signature.unary_ops:
        uA, uB = A.unary_table(op), B.unary_table(op)
        uns.append((op, [pair_index(uA[a], uB[b], nb) for (a, b) in pairs]))
    return add, bins, uns


def semidirect_product(act: ActionSet, name: str | None = None):
    """Build the semidirect product algebra and validate it.

    Accepts invalid action sets on purpose: the returned report is valid
    exactly when the twelve-condition check passes, and that equivalence is
    a tested contract.  Negation is recovered from the addition table (first
    two-sided inverse per element, placeholder 0 if none exists).
    """
    check_action_shape(act)
    if name is None:
        name = f"sd({act.acted.name},{act.actor.name})"
    add, bins, uns = semidirect_tables(act)
    alg = make_algebra(name, act.actor.signature, add, None, bins, uns)
    return alg, validate_algebra(alg)


def canonical_split_extension(act: ActionSet) -> SplitExtension:
    """The extension A -> A semidirect B -> B with section b -> (0, b)."""
    alg, _ = semidirect_product(act)
    B, A = act.actor, act.acted
    nb = B.order
    i = AlgMorphism(A, alg, tuple(pair_index(a, 0, nb) for a in range(A.order)))
    p = AlgMorphism(alg, B, tuple(b for _ in range(A.order) for b in range(nb)))
    s = AlgMorphism(B, alg, tuple(pair_index(0, b, nb) for b in range(nb)))
    return SplitExtension(A, alg, B, i, p, s)


def check_split_extension(ext: SplitExtension) -> ValidationReport:
    rb = ReportBuilder(f"extension {ext.sub.name}->{ext.total.name}->{ext.quotient.name}")
    rb.merge(check_morphism(ext.i), "i")
    rb.merge(check_morphism(ext.p), "p")
    rb.merge(check_morphism(ext.s), "s")
    for b in range(ext.quotient.order):
        if ext.p.table[ext.s.table[b]] != b:
            rb.add("section", (b,), "p(s(b)) != b")
            break
    if len(set(ext.i.table)) != ext.sub.order:
        rb.add("kernel-injective", (0,), "i is not injective")
    image = set(ext.i.table)
    kernel = {e for e in range(ext.total.order) if ext.p.table[e] == 0}
    if image != kernel:
        witness = min(image.symmetric_difference(kernel))
        rb.add("kernel-image", (witness,), "image of i is not the kernel of p")
    if set(ext.p.table) != set(range(ext.quotient.order)):
        missing = min(set(range(ext.quotient.order)) - set(ext.p.table))
        rb.add("p-surjective", (missing,), "p is not surjective")
    return rb.build()


def action_from_section(ext: SplitExtension) -> ActionSet:
    """Extract the action b.a = s(b)+a-s(b), b*a = s(b)*a along the kernel.

    Raises NotASection if p o s is not the identity and NotKernel if i does
    not embed the subalgebra as the kernel of p (or the extracted values
    fail to land back in it).
    """
    report = check_split_extension(ext)
    rules = {v.rule for v in report.violations}
    if "section" in rules or any(r.startswith("s:") for r in rules):
        raise NotASection("s is not a section of p in the given extension")
    if rules:
        raise NotKernel(f"extension invariants fail: {sorted(rules)}")
    E, A, B = ext.total, ext.sub, ext.quotient
    back = {e: a for a, e in enumerate(ext.i.table)}

    def pull(e, what):
        if e not in back:
            raise NotKernel(f"extracted {what} value escapes the kernel")
        return back[e]

    dot = []
    for b in range(B.order):
        sb = ext.s.table[b]
        neg_sb = E.neg[sb]
        dot.append([pull(E.add[E.add[sb][ext.i.table[a]]][neg_sb], "dot")
                    for a in range(A.order)])
    stars = []
    for op in E.signature.binary_ops:
        mul = E.binary_table(op)
        stars.append((op, [[pull(mul[ext.s.table[b]][ext.i.table[a]], f"star:{op}")
                            for a in range(A.order)] for b in range(B.order)]))
    return make_action(B, A, dot, stars)


# ---------------------------------------------------------------------------
# stock actions

def conjugation_action(A: OmegaAlgebra) -> ActionSet:
    """A acting on itself by b.a = b+a-b, with its own tables as stars."""
    dot = [[A.add[A.add[b][a]][A.neg[b]] for a in range(A.order)] for b in range(A.order)]
    stars = [(op, table) for op, table in A.binary_tables]
    return make_action(A, A, dot, stars)


def trivial_action(B: OmegaAlgebra, A: OmegaAlgebra) -> ActionSet:
    """b.a = a and b*a = 0 for every extra binary operation."""
    require_same_signature(A, B)
    dot = [list(range(A.order)) for _ in range(B.order)]
    zeros = [[0] * A.order for _ in range(B.order)]
    stars = [(op, zeros) for op in B.signature.binary_ops]
    return make_action(B, A, dot, stars)
