"""Tables, algebra axioms, morphisms, enumeration, automorphisms, kernels."""

import itertools

import pytest

from xmodlab import catalog
from xmodlab.core import (
    GROUP_SIGNATURE,
    AlgMorphism,
    Signature,
    algebra_is_valid,
    automorphism_group,
    check_morphism,
    compose_morphisms,
    enumerate_morphisms,
    generating_set,
    identity_morphism,
    inverse_permutation,
    is_bijective,
    kernel_of,
    make_algebra,
    product_algebra,
    validate_algebra,
    zero_morphism,
)
from xmodlab.errors import (
    BudgetExceeded,
    DimensionMismatch,
    IndexOutOfRange,
    SignatureMismatch,
)

ALGEBRA_NAMES = catalog.names("algebra")


def brute_force_morphisms(A, B):
    """Oracle: filter every map through check_morphism."""
    out = []
    for table in itertools.product(range(B.order), repeat=A.order):
        if check_morphism(AlgMorphism(A, B, table)).valid:
            out.append(table)
    return out


def brute_force_automorphisms(A):
    out = []
    for perm in itertools.permutations(range(A.order)):
        if check_morphism(AlgMorphism(A, A, perm)).valid:
            out.append(perm)
    return out


# ---------------------------------------------------------------------------
# validate_algebra

def test_z2_is_valid():
    assert validate_algebra(catalog.cyclic_group(2)).valid


def test_zero_multiplication_ring_is_valid():
    report = validate_algebra(catalog.zero_ring(2))
    assert report.valid


def test_broken_associativity_reports_first_witness():
    add = [list(r) for r in catalog.cyclic_group(4).add]
    add[3][3] = 3  # was 2
    alg = make_algebra("broken", GROUP_SIGNATURE, add)
    report = validate_algebra(alg)
    assert not report.valid
    assert [(v.rule, v.witness) for v in report.violations] == [("add-assoc", (1, 2, 3))]


def test_broken_zero_row_reports_zero_rule():
    add = [[1, 0], [0, 1]]  # identity element is 1, not 0
    report = validate_algebra(make_algebra("shifted", GROUP_SIGNATURE, add))
    assert not report.valid
    assert any(v.rule == "zero-left" for v in report.violations)


def test_opposite_pairing_checked():
    # mul is declared self-opposite but the table is not symmetric
    n = 2
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[0, 1], [0, 0]]
    sig = Signature(("mul",), ("mul",))
    report = validate_algebra(make_algebra("lopsided", sig, add, None, [("mul", mul)]))
    assert any(v.rule == "opposite:mul" for v in report.violations)


def test_malformed_tables_raise():
    with pytest.raises(DimensionMismatch):
        validate_algebra(make_algebra("bad", GROUP_SIGNATURE, [[0, 1]]))
    with pytest.raises(IndexOutOfRange):
        validate_algebra(make_algebra("bad", GROUP_SIGNATURE, [[0, 7], [1, 0]]))


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_catalog_algebras_valid(name):
    assert validate_algebra(catalog.load(name).payload).valid


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_right_distributivity_holds(name):
    # (b+c)*a = b*a + c*a is the left law for the opposite op; assert it raw
    alg = catalog.load(name).payload
    for op in alg.signature.binary_ops:
        mul = alg.binary_table(op)
        for a in range(alg.order):
            for b in range(alg.order):
                for c in range(alg.order):
                    assert mul[alg.add[b][c]][a] == alg.add[mul[b][a]][mul[c][a]]


@pytest.mark.parametrize("name", ALGEBRA_NAMES)
def test_fast_validity_agrees_with_report(name):
    alg = catalog.load(name).payload
    assert algebra_is_valid(alg) == validate_algebra(alg).valid


def test_fast_validity_agrees_on_invalid_tables():
    add = [list(r) for r in catalog.cyclic_group(4).add]
    add[3][3] = 3
    alg = make_algebra("broken", GROUP_SIGNATURE, add)
    assert algebra_is_valid(alg) is False
    assert not validate_algebra(alg).valid


# ---------------------------------------------------------------------------
# check_morphism

def test_identity_and_zero_morphisms_valid():
    for name in ("Z4", "S3", "Z4-zero-ring", "V4-swap"):
        A = catalog.load(name).payload
        assert check_morphism(identity_morphism(A)).valid
        assert check_morphism(zero_morphism(A, A)).valid


def test_shift_map_fails_zero_preservation():
    Z4 = catalog.cyclic_group(4)
    report = check_morphism(AlgMorphism(Z4, Z4, (1, 2, 3, 0)))
    assert not report.valid
    assert report.violations[0].rule == "preserve-zero"


def test_signature_mismatch_raises():
    with pytest.raises(SignatureMismatch):
        check_morphism(AlgMorphism(catalog.cyclic_group(2), catalog.zero_ring(2), (0, 0)))


def test_composition_of_morphisms_is_morphism():
    Z4 = catalog.cyclic_group(4)
    Z2 = catalog.cyclic_group(2)
    f = AlgMorphism(Z4, Z2, (0, 1, 0, 1))
    g = AlgMorphism(Z2, Z4, (0, 2))
    assert check_morphism(f).valid and check_morphism(g).valid
    assert check_morphism(compose_morphisms(g, f)).valid


# ---------------------------------------------------------------------------
# enumeration

def test_enumerate_z2_to_z2():
    Z2 = catalog.cyclic_group(2)
    ms = enumerate_morphisms(Z2, Z2)
    assert [m.table for m in ms] == [(0, 0), (0, 1)]


def test_enumerate_z3_to_z2_only_zero():
    ms = enumerate_morphisms(catalog.cyclic_group(3), catalog.cyclic_group(2))
    assert [m.table for m in ms] == [(0, 0, 0)]


def test_enumerate_z4_matches_brute_force():
    Z4 = catalog.cyclic_group(4)
    expected = brute_force_morphisms(Z4, Z4)
    assert expected == [(0, 0, 0, 0), (0, 1, 2, 3), (0, 2, 0, 2), (0, 3, 2, 1)]
    assert [m.table for m in enumerate_morphisms(Z4, Z4)] == expected


@pytest.mark.parametrize("src,tgt", [("Z2", "Z4"), ("Z4", "Z2"), ("V4", "Z2"),
                                     ("S3", "Z2"), ("Z2-zero-ring", "Z4-zero-ring"),
                                     ("V4-swap", "V4-swap"), ("Z4-dbl", "Z4-dbl")])
def test_enumeration_matches_brute_force(src, tgt):
    A = catalog.load(src).payload
    B = catalog.load(tgt).payload
    assert [m.table for m in enumerate_morphisms(A, B)] == brute_force_morphisms(A, B)


def test_enumeration_is_deterministic():
    S3 = catalog.symmetric_group_3()
    first = [m.table for m in enumerate_morphisms(S3, S3)]
    second = [m.table for m in enumerate_morphisms(S3, S3)]
    assert first == second == sorted(first)


def test_budget_exceeded():
    Z4 = catalog.cyclic_group(4)
    with pytest.raises(BudgetExceeded):
        enumerate_morphisms(Z4, Z4, budget=3)


def test_generating_set_is_small():
    assert len(generating_set(catalog.cyclic_group(6))) == 1
    assert len(generating_set(catalog.symmetric_group_3())) == 2


# ---------------------------------------------------------------------------
# automorphisms

def test_automorphisms_z3():
    auts = automorphism_group(catalog.cyclic_group(3))
    assert [m.table for m in auts] == [(0, 1, 2), (0, 2, 1)]
    assert [m.table for m in auts] == brute_force_automorphisms(catalog.cyclic_group(3))


def test_automorphisms_klein_four():
    auts = automorphism_group(catalog.klein_four())
    assert len(auts) == 6
    assert [m.table for m in auts] == brute_force_automorphisms(catalog.klein_four())


def test_automorphisms_zero_ring_z2():
    auts = automorphism_group(catalog.zero_ring(2))
    assert [m.table for m in auts] == [(0, 1)]


@pytest.mark.parametrize("name", ["Z4", "V4", "S3", "Z4-zero-ring", "V4-swap"])
def test_automorphism_group_satisfies_group_axioms(name):
    # Cayley-table validation of the composition structure
    auts = automorphism_group(catalog.load(name).payload)
    tables = [m.table for m in auts]
    index = {t: i for i, t in enumerate(tables)}
    cayley = [[index[tuple(g[x] for x in f)] for f in tables] for g in tables]
    identity_at = index[tuple(range(len(tables[0])))]
    relabel = list(range(len(tables)))
    relabel[0], relabel[identity_at] = relabel[identity_at], relabel[0]
    relabelled = [[relabel.index(cayley[relabel[i]][relabel[j]])
                   for j in range(len(tables))] for i in range(len(tables))]
    assert validate_algebra(make_algebra("aut", GROUP_SIGNATURE, relabelled)).valid


# ---------------------------------------------------------------------------
# kernels and products

def test_kernel_of_identity_is_trivial():
    Z4 = catalog.cyclic_group(4)
    sub, incl = kernel_of(identity_morphism(Z4))
    assert sub.order == 1 and incl.table == (0,)


def test_kernel_of_zero_map_is_everything():
    Z4 = catalog.cyclic_group(4)
    sub, incl = kernel_of(zero_morphism(Z4, Z4))
    assert sub.order == 4 and sub.add == Z4.add


def test_kernel_of_mod2_map():
    Z4 = catalog.cyclic_group(4)
    Z2 = catalog.cyclic_group(2)
    sub, incl = kernel_of(AlgMorphism(Z4, Z2, (0, 1, 0, 1)))
    assert incl.table == (0, 2)
    assert sub.add == ((0, 1), (1, 0))
    assert check_morphism(incl).valid


def test_product_algebra_of_z2s_is_klein():
    Z2 = catalog.cyclic_group(2)
    prod = product_algebra(Z2, Z2)
    assert prod.add == catalog.klein_four().add


def test_inverse_permutation_helper():
    assert inverse_permutation((0, 3, 2, 1)) == (0, 3, 2, 1)
    assert is_bijective((0, 3, 2, 1)) and not is_bijective((0, 0, 2, 1))
