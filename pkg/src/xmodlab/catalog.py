"""Built-in desk-scale objects: small groups, rings, crossed modules and
groupoids used by the tests, the CLI and the demos.

Every payload is validated on first load; entries are immutable and cached.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .actions import conjugation_action, trivial_action
from .core import GROUP_SIGNATURE, OmegaAlgebra, Signature, make_algebra, validate_algebra
from .errors import InternalInconsistency, UnknownName
from .groupoid import pair_groupoid, to_internal_groupoid, validate_groupoid
from .xmod import CrossedModule, make_crossed_module, validate_crossed_module

RING_SIGNATURE = Signature(binary_ops=("mul",), opposite=("mul",))
DBL_SIGNATURE = Signature(unary_ops=("dbl",))
SWAP_SIGNATURE = Signature(unary_ops=("swap",))


# ---------------------------------------------------------------------------
# algebra builders

def cyclic_group(n: int, name: str | None = None) -> OmegaAlgebra:
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    return make_algebra(name or f"Z{n}", GROUP_SIGNATURE, add)


def trivial_algebra(signature: Signature = GROUP_SIGNATURE, name: str = "0") -> OmegaAlgebra:
    bins = [(op, [[0]]) for op in signature.binary_ops]
    uns = [(op, [0]) for op in signature.unary_ops]
    return make_algebra(name, signature, [[0]], [0], bins, uns)


def klein_four() -> OmegaAlgebra:
    # pairs over Z2 indexed as 2a+b
    add = [[(a ^ b) for b in range(4)] for a in range(4)]
    return make_algebra("V4", GROUP_SIGNATURE, add)


def _permutation_group(perms: list[tuple[int, ...]], name: str) -> OmegaAlgebra:
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    add = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms] for p in perms]
    return make_algebra(name, GROUP_SIGNATURE, add)


def symmetric_group_3() -> OmegaAlgebra:
    return _permutation_group([p for p in itertools.permutations(range(3))], "S3")


def dihedral_group_4() -> OmegaAlgebra:
    rot = (1, 2, 3, 0)
    flip = (3, 2, 1, 0)
    elements = {(0, 1, 2, 3)}
    frontier = [(0, 1, 2, 3)]
    while frontier:
        p = frontier.pop()
        for q in (rot, flip):
            r = tuple(p[q[i]] for i in range(4))
            if r not in elements:
                elements.add(r)
                frontier.append(r)
    return _permutation_group(sorted(elements), "D4")


def zero_ring(n: int, name: str | None = None) -> OmegaAlgebra:
    """Cyclic addition with identically zero multiplication."""
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[0] * n for _ in range(n)]
    return make_algebra(name or f"Z{n}zr", RING_SIGNATURE, add, None, [("mul", mul)])


def cyclic_ring(n: int, name: str | None = None) -> OmegaAlgebra:
    """Integers mod n with genuine multiplication."""
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return make_algebra(name or f"Z{n}ring", RING_SIGNATURE, add, None, [("mul", mul)])


def doubling_group(n: int, name: str | None = None) -> OmegaAlgebra:
    """Cyclic group with the doubling endomorphism as a unary operation."""
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    dbl = [(2 * a) % n for a in range(n)]
    return make_algebra(name or f"Z{n}-dbl", DBL_SIGNATURE, add, None, None, [("dbl", dbl)])


def swap_group() -> OmegaAlgebra:
    """Klein four-group with the coordinate swap as a unary operation;
    pairs over Z2 indexed as 2a+b, so swap exchanges the two bits."""
    add = [[(a ^ b) for b in range(4)] for a in range(4)]
    swap = [((a & 1) << 1) | (a >> 1) for a in range(4)]
    return make_algebra("V4-swap", SWAP_SIGNATURE, add, None, None, [("swap", swap)])


# ---------------------------------------------------------------------------
# crossed module builders

def conjugation_xmod(A: OmegaAlgebra) -> CrossedModule:
    return make_crossed_module(A, A, tuple(range(A.order)), conjugation_action(A))


def identity_trivial_xmod(A: OmegaAlgebra) -> CrossedModule:
    """Identity boundary with the trivial action; a crossed module when the
    carrier is abelian."""
    return make_crossed_module(A, A, tuple(range(A.order)), trivial_action(A, A))


def to_zero_xmod(A: OmegaAlgebra) -> CrossedModule:
    zero = trivial_algebra(A.signature)
    return make_crossed_module(A, zero, (0,) * A.order, trivial_action(zero, A))


def from_zero_xmod(B: OmegaAlgebra) -> CrossedModule:
    zero = trivial_algebra(B.signature)
    return make_crossed_module(zero, B, (0,), trivial_action(B, zero))


def zero_boundary_trivial_xmod(A: OmegaAlgebra) -> CrossedModule:
    """Zero boundary on one carrier with the trivial self action."""
    return make_crossed_module(A, A, (0,) * A.order, trivial_action(A, A))


# ---------------------------------------------------------------------------
# the catalog proper

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # algebra | action | xmod | groupoid
    payload: object


_BUILDERS: dict[str, tuple[str, object]] = {}


def _register(name, kind, builder):
    _BUILDERS[name] = (kind, builder)


_register("Z1", "algebra", lambda: trivial_algebra(name="Z1"))
_register("Z2", "algebra", lambda: cyclic_group(2))
_register("Z3", "algebra", lambda: cyclic_group(3))
_register("Z4", "algebra", lambda: cyclic_group(4))
_register("Z6", "algebra", lambda: cyclic_group(6))
_register("V4", "algebra", klein_four)
_register("S3", "algebra", symmetric_group_3)
_register("D4", "algebra", dihedral_group_4)
_register("Z2-zero-ring", "algebra", lambda: zero_ring(2, "Z2-zero-ring"))
_register("Z4-zero-ring", "algebra", lambda: zero_ring(4, "Z4-zero-ring"))
_register("Z4-ring", "algebra", lambda: cyclic_ring(4, "Z4-ring"))
_register("Z4-dbl", "algebra", lambda: doubling_group(4))
_register("V4-swap", "algebra", swap_group)

_register("S3-conj-action", "action", lambda: conjugation_action(symmetric_group_3()))
_register("Z4-trivial-action", "action",
          lambda: trivial_action(cyclic_group(4), cyclic_group(4)))
_register("Z4-ring-conj-action", "action",
          lambda: conjugation_action(cyclic_ring(4, "Z4-ring")))

_register("Z2-conj-xmod", "xmod", lambda: conjugation_xmod(cyclic_group(2)))
_register("Z4-conj-xmod", "xmod", lambda: conjugation_xmod(cyclic_group(4)))
_register("V4-conj-xmod", "xmod", lambda: conjugation_xmod(klein_four()))
_register("S3-conj-xmod", "xmod", lambda: conjugation_xmod(symmetric_group_3()))
_register("D4-conj-xmod", "xmod", lambda: conjugation_xmod(dihedral_group_4()))
_register("Z2zr-conj-xmod", "xmod", lambda: conjugation_xmod(zero_ring(2, "Z2-zero-ring")))
_register("Z4zr-conj-xmod", "xmod", lambda: conjugation_xmod(zero_ring(4, "Z4-zero-ring")))
_register("Z4ring-conj-xmod", "xmod", lambda: conjugation_xmod(cyclic_ring(4, "Z4-ring")))
_register("Z2-id-trivial", "xmod", lambda: identity_trivial_xmod(cyclic_group(2)))
_register("Z3-id-trivial", "xmod", lambda: identity_trivial_xmod(cyclic_group(3)))
_register("Z4-id-trivial", "xmod", lambda: identity_trivial_xmod(cyclic_group(4)))
_register("Z6-id-trivial", "xmod", lambda: identity_trivial_xmod(cyclic_group(6)))
_register("V4-id-trivial", "xmod", lambda: identity_trivial_xmod(klein_four()))
_register("Z4dbl-id-trivial", "xmod", lambda: identity_trivial_xmod(doubling_group(4)))
_register("V4swap-id-trivial", "xmod", lambda: identity_trivial_xmod(swap_group()))
_register("Z4-to-0", "xmod", lambda: to_zero_xmod(cyclic_group(4)))
_register("0-to-S3", "xmod", lambda: from_zero_xmod(symmetric_group_3()))
_register("Z2-zero-trivial", "xmod", lambda: zero_boundary_trivial_xmod(cyclic_group(2)))

_register("Z2-pair", "groupoid", lambda: pair_groupoid(cyclic_group(2)))
_register("Z3-pair", "groupoid", lambda: pair_groupoid(cyclic_group(3)))
_register("S3-pair", "groupoid", lambda: pair_groupoid(symmetric_group_3()))
_register("Z4-id-trivial-gpd", "groupoid",
          lambda: to_internal_groupoid(identity_trivial_xmod(cyclic_group(4))))
_register("S3-conj-gpd", "groupoid",
          lambda: to_internal_groupoid(conjugation_xmod(symmetric_group_3())))
_register("Z4zr-conj-gpd", "groupoid",
          lambda: to_internal_groupoid(conjugation_xmod(zero_ring(4, "Z4-zero-ring"))))
_register("V4swap-gpd", "groupoid",
          lambda: to_internal_groupoid(identity_trivial_xmod(swap_group())))


def names(kind: str | None = None) -> list[str]:
    return [n for n, (k, _) in _BUILDERS.items() if kind is None or k == kind]


@lru_cache(maxsize=None)
def load(name: str) -> CatalogEntry:
    """Build, validate and cache a catalog entry."""
    if name not in _BUILDERS:
        raise UnknownName(f"no catalog entry named {name!r}")
    kind, builder = _BUILDERS[name]
    payload = builder()
    if kind == "algebra":
        report = validate_algebra(payload)
    elif kind == "action":
        from .actions import check_derived_action
        report = check_derived_action(payload)
    elif kind == "xmod":
        report = validate_crossed_module(payload)
    else:
        report = validate_groupoid(payload)
    if not report.valid:
        raise InternalInconsistency(f"catalog entry {name} fails validation: {report.summary()}")
    return CatalogEntry(name, kind, payload)


def context() -> dict[str, object]:
    """Name -> payload map for resolving references in text files."""
    return {name: load(name).payload for name in names()}


# ---------------------------------------------------------------------------
# isomorphism identification against catalog groups

def group_isomorphism_type(add_table, order: int) -> str | None:
    """Name of the catalog group isomorphic to the given Cayley table.

    Exhaustive search over bijections fixing the identity; intended for
    orders at most 8.  Returns None when no catalog group matches.
    """
    candidates = [n for n in names("algebra")
                  if load(n).payload.signature == GROUP_SIGNATURE
                  and load(n).payload.order == order]
    for name in candidates:
        cand = load(name).payload
        if _tables_isomorphic(add_table, cand.add, order):
            return name
    return None


def _tables_isomorphic(t1, t2, order: int) -> bool:
    if order == 1:
        return True
    for perm in itertools.permutations(range(1, order)):
        full = (0,) + perm
        ok = True
        for a in range(order):
            row = t1[a]
            fa = full[a]
            for b in range(order):
                if full[row[b]] != t2[fa][full[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False
