"""Finite groups with operations, represented by integer operation tables.

A carrier is {0, .., n-1} with a (not necessarily commutative) group given
by an addition table, a negation table and zero at index 0, plus optional
extra binary and unary operations.  Extra binary operations distribute over
addition on the left; each one is paired with an opposite operation (possibly
itself) whose table is the transpose.  Extra unary operations are additive
and slide through every extra binary operation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    InternalInconsistency,
    InvalidMorphism,
    NotComposable,
    SignatureMismatch,
)
from .reporting import ReportBuilder, ValidationReport

Row = tuple[int, ...]
Table = tuple[Row, ...]

DEFAULT_BUDGET = 1_000_000

RESERVED_OP_NAMES = frozenset({"+", "-", "0"})


def freeze_table(rows) -> Table:
    return tuple(tuple(r) for r in rows)


def freeze_row(row) -> Row:
    return tuple(row)


@dataclass(frozen=True)
class Signature:
    """Names of the extra operations beyond (+, -, 0).

    ``opposite[i]`` is the name of the operation paired with
    ``binary_ops[i]``; a commutative operation may be paired with itself.
    """

    binary_ops: tuple[str, ...] = ()
    opposite: tuple[str, ...] = ()
    unary_ops: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.binary_ops + self.unary_ops
        if len(set(names)) != len(names):
            raise SignatureMismatch(f"duplicate operation names in {names}")
        if RESERVED_OP_NAMES & set(names):
            raise SignatureMismatch("operation names '+', '-', '0' are reserved")
        if len(self.opposite) != len(self.binary_ops):
            raise SignatureMismatch("opposite list must pair every binary op")
        pairing = dict(zip(self.binary_ops, self.opposite))
        for name, opp in pairing.items():
            if opp not in pairing:
                raise SignatureMismatch(f"opposite of {name!r} is unknown op {opp!r}")
            if pairing[opp] != name:
                raise SignatureMismatch(f"opposite pairing is not an involution at {name!r}")

    def opposite_of(self, name: str) -> str:
        return self.opposite[self.binary_ops.index(name)]


GROUP_SIGNATURE = Signature()


@dataclass(frozen=True)
class OmegaAlgebra:
    """A finite group with operations; all structure is explicit tables.

    Zero is the element at index 0 by convention; validators check that the
    tables actually make index 0 a two-sided additive identity.  Equality
    and hashing ignore the name, so algebras are equal iff their tables are.
    """

    name: str = field(compare=False)
    signature: Signature
    order: int
    add: Table
    neg: Row
    binary_tables: tuple[tuple[str, Table], ...] = ()
    unary_tables: tuple[tuple[str, Row], ...] = ()

    def binary_table(self, name: str) -> Table:
        for op, table in self.binary_tables:
            if op == name:
                return table
        raise SignatureMismatch(f"{self.name} has no binary op {name!r}")

    def unary_table(self, name: str) -> Row:
        for op, table in self.unary_tables:
            if op == name:
                return table
        raise SignatureMismatch(f"{self.name} has no unary op {name!r}")

    def elements(self) -> range:
        return range(self.order)


def make_algebra(name, signature, add, neg=None, binary_tables=None, unary_tables=None) -> OmegaAlgebra:
    """Build an algebra from raw tables, computing neg from add if omitted.

    When neg is omitted, each element's inverse is the first two-sided one
    found in its row; elements without one get placeholder 0 and will fail
    validation.
    """
    add = freeze_table(add)
    order = len(add)
    if neg is None:
        found = []
        for a in range(order):
            for b in range(order):
                if add[a][b] == 0 and add[b][a] == 0:
                    found.append(b)
                    break
            else:
                found.append(0)
        neg = found
    neg = freeze_row(neg)
    binary_tables = tuple((op, freeze_table(t)) for op, t in (binary_tables or ()))
    unary_tables = tuple((op, freeze_row(t)) for op, t in (unary_tables or ()))
    return OmegaAlgebra(name, signature, order, add, neg, binary_tables, unary_tables)


@dataclass(frozen=True)
class AlgMorphism:
    """A total map between carriers of algebras with the same signature."""

    source: OmegaAlgebra
    target: OmegaAlgebra
    table: Row

    def __call__(self, a: int) -> int:
        return self.table[a]


# ---------------------------------------------------------------------------
# shape checks (malformed input raises; axiom failures go into reports)

def _check_table_shape(table, rows, cols, limit, what):
    if len(table) != rows:
        raise DimensionMismatch(f"{what}: expected {rows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != cols:
            raise DimensionMismatch(f"{what}: row {i} has {len(row)} entries, expected {cols}")
        for x in row:
            if not isinstance(x, int) or not 0 <= x < limit:
                raise IndexOutOfRange(f"{what}: entry {x!r} out of range [0, {limit})")


def _check_row_shape(row, cols, limit, what):
    _check_table_shape((row,), 1, cols, limit, what)


def check_algebra_shape(alg: OmegaAlgebra) -> None:
    n = alg.order
    if n <= 0:
        raise DimensionMismatch(f"{alg.name}: order must be positive")
    _check_table_shape(alg.add, n, n, n, f"{alg.name}.add")
    _check_row_shape(alg.neg, n, n, f"{alg.name}.neg")
    declared = tuple(op for op, _ in alg.binary_tables)
    if declared != alg.signature.binary_ops:
        raise SignatureMismatch(
            f"{alg.name}: binary tables {declared} do not match signature {alg.signature.binary_ops}"
        )
    for op, table in alg.binary_tables:
        _check_table_shape(table, n, n, n, f"{alg.name}.{op}")
    declared = tuple(op for op, _ in alg.unary_tables)
    if declared != alg.signature.unary_ops:
        raise SignatureMismatch(
            f"{alg.name}: unary tables {declared} do not match signature {alg.signature.unary_ops}"
        )
    for op, row in alg.unary_tables:
        _check_row_shape(row, n, n, f"{alg.name}.{op}")


def require_same_signature(x: OmegaAlgebra, y: OmegaAlgebra) -> None:
    if x.signature != y.signature:
        raise SignatureMismatch(f"{x.name} and {y.name} have different signatures")


# ---------------------------------------------------------------------------
# algebra validation

def validate_algebra(alg: OmegaAlgebra) -> ValidationReport:
    """Check all algebra axioms; one first-witness violation per rule."""
    check_algebra_shape(alg)
    rb = ReportBuilder(f"algebra {alg.name}")
    n = alg.order
    add = alg.add
    neg = alg.neg
    rng = range(n)

    for a in rng:
        if add[0][a] != a:
            rb.add("zero-left", (a,), f"0+{a} = {add[0][a]}")
            break
    for a in rng:
        if add[a][0] != a:
            rb.add("zero-right", (a,), f"{a}+0 = {add[a][0]}")
            break
    for a in rng:
        if add[neg[a]][a] != 0:
            rb.add("neg-left", (a,), f"(-{a})+{a} = {add[neg[a]][a]}")
            break
    for a in rng:
        if add[a][neg[a]] != 0:
            rb.add("neg-right", (a,), f"{a}+(-{a}) = {add[a][neg[a]]}")
            break
    done = False
    for a in rng:
        for b in rng:
            ab = add[a][b]
            row_a = add[a]
            for c in rng:
                if add[ab][c] != row_a[add[b][c]]:
                    rb.add("add-assoc", (a, b, c), f"({a}+{b})+{c} != {a}+({b}+{c})")
                    done = True
                    break
            if done:
                break
        if done:
            break

    for op, table in alg.binary_tables:
        done = False
        for a in rng:
            trow = table[a]
            for b in rng:
                for c in rng:
                    if trow[add[b][c]] != add[trow[b]][trow[c]]:
                        rb.add(f"left-dist:{op}", (a, b, c),
                               f"{a}*({b}+{c}) != {a}*{b}+{a}*{c} for *={op}")
                        done = True
                        break
                if done:
                    break
            if done:
                break

    for op in alg.signature.binary_ops:
        opp = alg.signature.opposite_of(op)
        table = alg.binary_table(op)
        opp_table = alg.binary_table(opp)
        done = False
        for a in rng:
            for b in rng:
                if opp_table[a][b] != table[b][a]:
                    rb.add(f"opposite:{op}", (a, b),
                           f"a {opp} b != b {op} a at ({a},{b})")
                    done = True
                    break
            if done:
                break

    for w, wrow in alg.unary_tables:
        done = False
        for a in rng:
            for b in rng:
                if wrow[add[a][b]] != add[wrow[a]][wrow[b]]:
                    rb.add(f"unary-add:{w}", (a, b), f"{w}({a}+{b}) != {w}({a})+{w}({b})")
                    done = True
                    break
            if done:
                break
        for op, table in alg.binary_tables:
            done = False
            for a in rng:
                for b in rng:
                    if table[wrow[a]][b] != wrow[table[a][b]]:
                        rb.add(f"unary-slide:{w}:{op}", (a, b),
                               f"{w}({a})*{b} != {w}({a}*{b}) for *={op}")
                        done = True
                        break
                if done:
                    break

    return rb.build()


def algebra_is_valid(alg: OmegaAlgebra) -> bool:
    """Early-exit validity check; agrees with validate_algebra().valid."""
    check_algebra_shape(alg)
    n = alg.order
    add = alg.add
    neg = alg.neg
    rng = range(n)
    for a in rng:
        if add[0][a] != a or add[a][0] != a or add[neg[a]][a] != 0 or add[a][neg[a]] != 0:
            return False
    for a in rng:
        row_a = add[a]
        for b in rng:
            ab = row_a[b]
            row_ab = add[ab]
            row_b = add[b]
            for c in rng:
                if row_ab[c] != row_a[row_b[c]]:
                    return False
    for op, table in alg.binary_tables:
        for a in rng:
            trow = table[a]
            for b in rng:
                for c in rng:
                    if trow[add[b][c]] != add[trow[b]][trow[c]]:
                        return False
    for op in alg.signature.binary_ops:
        opp_table = alg.binary_table(alg.signature.opposite_of(op))
        table = alg.binary_table(op)
        for a in rng:
            for b in rng:
                if opp_table[a][b] != table[b][a]:
                    return False
    for w, wrow in alg.unary_tables:
        for a in rng:
            for b in rng:
                if wrow[add[a][b]] != add[wrow[a]][wrow[b]]:
                    return False
        for op, table in alg.binary_tables:
            for a in rng:
                for b in rng:
                    if table[wrow[a]][b] != wrow[table[a][b]]:
                        return False
    return True


# ---------------------------------------------------------------------------
# morphisms

def check_morphism(f: AlgMorphism) -> ValidationReport:
    """Check that f preserves zero, +, - and every extra operation."""
    require_same_signature(f.source, f.target)
    A, B = f.source, f.target
    _check_row_shape(f.table, A.order, B.order, f"map {A.name}->{B.name}")
    rb = ReportBuilder(f"morphism {A.name}->{B.name}")
    t = f.table
    rng = range(A.order)

    if t[0] != 0:
        rb.add("preserve-zero", (0,), f"maps 0 to {t[0]}")
    done = False
    for a in rng:
        ta = t[a]
        for b in rng:
            if t[A.add[a][b]] != B.add[ta][t[b]]:
                rb.add("preserve-add", (a, b), f"f({a}+{b}) != f({a})+f({b})")
                done = True
                break
        if done:
            break
    for a in rng:
        if t[A.neg[a]] != B.neg[t[a]]:
            rb.add("preserve-neg", (a,), f"f(-{a}) != -f({a})")
            break
    for op in A.signature.binary_ops:
        ta_table = A.binary_table(op)
        tb_table = B.binary_table(op)
        done = False
        for a in rng:
            for b in rng:
                if t[ta_table[a][b]] != tb_table[t[a]][t[b]]:
                    rb.add(f"preserve:{op}", (a, b), f"f({a}{op}{b}) != f({a}){op}f({b})")
                    done = True
                    break
            if done:
                break
    for w in A.signature.unary_ops:
        wa = A.unary_table(w)
        wb = B.unary_table(w)
        for a in rng:
            if t[wa[a]] != wb[t[a]]:
                rb.add(f"preserve-unary:{w}", (a,), f"f({w}({a})) != {w}(f({a}))")
                break
    return rb.build()


def identity_morphism(A: OmegaAlgebra) -> AlgMorphism:
    return AlgMorphism(A, A, tuple(range(A.order)))


def zero_morphism(A: OmegaAlgebra, B: OmegaAlgebra) -> AlgMorphism:
    return AlgMorphism(A, B, (0,) * A.order)


def compose_morphisms(g: AlgMorphism, f: AlgMorphism) -> AlgMorphism:
    """g after f."""
    if f.target != g.source:
        raise NotComposable("codomain of f is not the domain of g")
    return AlgMorphism(f.source, g.target, tuple(g.table[x] for x in f.table))


def is_bijective(table: Row) -> bool:
    return len(set(table)) == len(table)


def inverse_permutation(table: Row) -> Row:
    inv = [0] * len(table)
    for i, x in enumerate(table):
        inv[x] = i
    return tuple(inv)


# ---------------------------------------------------------------------------
# generating sets and morphism enumeration

def _closure_with_recipe(alg: OmegaAlgebra, gens: tuple[int, ...]):
    """All elements reachable from 0 and gens, with one build recipe each.

    Recipes are ('gen', i), ('add', x, y), ('neg', x), ('bin', op, x, y) or
    ('un', op, x); arguments always precede the element in discovery order,
    so a morphism's values propagate forward deterministically.
    """
    known: dict[int, tuple] = {0: ("zero",)}
    order: list[int] = [0]
    for i, g in enumerate(gens):
        if g not in known:
            known[g] = ("gen", i)
            order.append(g)
    changed = True
    while changed:
        changed = False
        snapshot = list(order)
        for x in snapshot:
            e = alg.neg[x]
            if e not in known:
                known[e] = ("neg", x)
                order.append(e)
                changed = True
            for w, wrow in alg.unary_tables:
                e = wrow[x]
                if e not in known:
                    known[e] = ("un", w, x)
                    order.append(e)
                    changed = True
            for y in snapshot:
                e = alg.add[x][y]
                if e not in known:
                    known[e] = ("add", x, y)
                    order.append(e)
                    changed = True
                for op, table in alg.binary_tables:
                    e = table[x][y]
                    if e not in known:
                        known[e] = ("bin", op, x, y)
                        order.append(e)
                        changed = True
    return known, order


def generating_set(alg: OmegaAlgebra) -> tuple[int, ...]:
    """Greedy smallest-first generating set under all operations."""
    gens: tuple[int, ...] = ()
    known, _ = _closure_with_recipe(alg, gens)
    while len(known) < alg.order:
        missing = min(e for e in range(alg.order) if e not in known)
        gens = gens + (missing,)
        known, _ = _closure_with_recipe(alg, gens)
    return gens


def enumerate_morphisms(A: OmegaAlgebra, B: OmegaAlgebra,
                        budget: int = DEFAULT_BUDGET) -> list[AlgMorphism]:
    """All morphisms A -> B, in lexicographic order of their map tables.

    Candidate maps are built by assigning images to a generating set of A
    and propagating through operation recipes; every candidate is confirmed
    with check_morphism, so the result is exactly the set of morphisms.
    """
    require_same_signature(A, B)
    gens = generating_set(A)
    count = B.order ** len(gens)
    if count > budget:
        raise BudgetExceeded(
            f"{count} candidate maps for {A.name}->{B.name} exceed budget {budget}")
    known, disc_order = _closure_with_recipe(A, gens)
    found: list[Row] = []
    bt = {op: B.binary_table(op) for op in B.signature.binary_ops}
    ut = {op: B.unary_table(op) for op in B.signature.unary_ops}
    for assignment in itertools.product(range(B.order), repeat=len(gens)):
        img = [0] * A.order
        for e in disc_order:
            recipe = known[e]
            kind = recipe[0]
            if kind == "zero":
                img[e] = 0
            elif kind == "gen":
                img[e] = assignment[recipe[1]]
            elif kind == "add":
                img[e] = B.add[img[recipe[1]]][img[recipe[2]]]
            elif kind == "neg":
                img[e] = B.neg[img[recipe[1]]]
            elif kind == "bin":
                img[e] = bt[recipe[1]][img[recipe[2]]][img[recipe[3]]]
            else:
                img[e] = ut[recipe[1]][img[recipe[2]]]
        table = tuple(img)
        if check_morphism(AlgMorphism(A, B, table)).valid:
            found.append(table)
    found.sort()
    return [AlgMorphism(A, B, t) for t in found]


def automorphism_group(A: OmegaAlgebra, budget: int = DEFAULT_BUDGET) -> list[AlgMorphism]:
    """All bijective self-morphisms, verified closed under compose/inverse."""
    autos = [m for m in enumerate_morphisms(A, A, budget) if is_bijective(m.table)]
    tables = {m.table for m in autos}
    for f in autos:
        if inverse_permutation(f.table) not in tables:
            raise InternalInconsistency(f"automorphisms of {A.name} not closed under inverse")
        for g in autos:
            if tuple(g.table[x] for x in f.table) not in tables:
                raise InternalInconsistency(f"automorphisms of {A.name} not closed under composition")
    return autos


# ---------------------------------------------------------------------------
# kernels and products

def subalgebra_on(alg: OmegaAlgebra, elements: list[int], name: str) -> tuple[OmegaAlgebra, AlgMorphism]:
    """Restrict tables to a subset (which must be closed); 0 must be in it.

    Elements are renumbered in increasing order, so the zero stays at
    index 0.  Returns the subalgebra and its inclusion morphism.
    """
    elements = sorted(set(elements))
    if not elements or elements[0] != 0:
        raise IndexOutOfRange(f"subalgebra of {alg.name} must contain 0")
    index = {e: i for i, e in enumerate(elements)}

    def back(e, what):
        if e not in index:
            raise InvalidMorphism(f"{name}: subset of {alg.name} not closed under {what}")
        return index[e]

    add = [[back(alg.add[a][b], "+") for b in elements] for a in elements]
    neg = [back(alg.neg[a], "-") for a in elements]
    bins = [(op, [[back(table[a][b], op) for b in elements] for a in elements])
            for op, table in alg.binary_tables]
    uns = [(op, [back(row[a], op) for a in elements]) for op, row in alg.unary_tables]
    sub = make_algebra(name, alg.signature, add, neg, bins, uns)
    incl = AlgMorphism(sub, alg, tuple(elements))
    return sub, incl


def kernel_of(f: AlgMorphism) -> tuple[OmegaAlgebra, AlgMorphism]:
    """The preimage of 0 with induced tables, plus its inclusion.

    Closure under all operations is guaranteed for valid morphisms and
    checked anyway; a closure failure raises InvalidMorphism.
    """
    elements = [a for a in range(f.source.order) if f.table[a] == 0]
    return subalgebra_on(f.source, elements, f"ker({f.source.name}->{f.target.name})")


def pair_index(a: int, b: int, b_order: int) -> int:
    return a * b_order + b


def pair_split(idx: int, b_order: int) -> tuple[int, int]:
    return divmod(idx, b_order)


def product_algebra(A: OmegaAlgebra, B: OmegaAlgebra, name: str | None = None) -> OmegaAlgebra:
    """Componentwise product on pairs, indexed as a*|B| + b."""
    require_same_signature(A, B)
    if name is None:
        name = f"({A.name}x{B.name})"
    m = B.order
    pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
    add = [[pair_index(A.add[a][a1], B.add[b][b1], m) for (a1, b1) in pairs] for (a, b) in pairs]
    neg = [pair_index(A.neg[a], B.neg[b], m) for (a, b) in pairs]
    bins = []
    for op in A.signature.binary_ops:
        ta, tb = A.binary_table(op), B.binary_table(op)
        bins.append((op, [[pair_index(ta[a][a1], tb[b][b1], m) for (a1, b1) in pairs]
                          for (a, b) in pairs]))
    uns = []
    for op in A.signature.unary_ops:
        ua, ub = A.unary_table(op), B.unary_table(op)
        uns.append((op, [pair_index(ua[a], ub[b], m) for (a, b) in pairs]))
    return make_algebra(name, A.signature, add, neg, bins, uns)
