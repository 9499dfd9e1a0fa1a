"""The ghost ring: per-subgroup integer vectors over Hom(K, A), the mark
morphism into it, its standard basis, and the coefficient recursion that
recovers multiplication coefficients from marks.

Entries are stored for every subgroup, not just class representatives, so
conjugation invariance is a directly checkable property of the data.
Multiplication is componentwise convolution in the group algebra of
Hom(K, A) under pointwise character product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalConsistencyError
from .fibers import char_inverse, char_product
from .ring import RingElement, basis_product, item_orbit_marks, mark_table
from .subchars import Subcharacter, SubcharacterTable


@dataclass(frozen=True)
class GhostElement:
    """One integer vector per subgroup, indexed by that subgroup's
    characters in canonical order."""

    table: SubcharacterTable = field(compare=False)
    entries: tuple[tuple[int, ...], ...]

    def entry(self, spos: int, cpos: int) -> int:
        return self.entries[spos][cpos]

    def __add__(self, other: "GhostElement") -> "GhostElement":
        assert self.table is other.table
        return GhostElement(
            self.table,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __rmul__(self, k: int) -> "GhostElement":
        return GhostElement(
            self.table, tuple(tuple(k * v for v in row) for row in self.entries)
        )

    def __mul__(self, other: "GhostElement") -> "GhostElement":
        return ghost_multiply(self, other)


def ghost_zero(table: SubcharacterTable) -> GhostElement:
    return GhostElement(
        table, tuple((0,) * len(hs) for hs in table.homs)
    )


def ghost_identity(table: SubcharacterTable) -> GhostElement:
    """Every subgroup entry is the trivial character with coefficient 1."""
    rows = []
    for spos, hs in enumerate(table.homs):
        row = [0] * len(hs)
        row[table.trivial_char_pos(spos)] = 1
        rows.append(tuple(row))
    return GhostElement(table, tuple(rows))


def is_invariant(u: GhostElement) -> bool:
    """Conjugation invariance: the coefficient only depends on the orbit of
    the indexing subcharacter."""
    t = u.table
    flat = []
    for spos in range(len(t.homs)):
        flat.extend(u.entries[spos])
    for members in t.orbit_items:
        vals = {flat[i] for i in members}
        if len(vals) != 1:
            return False
    return True


def ghost_basis(table: SubcharacterTable, o: int) -> GhostElement:
    """The standard basis element attached to orbit o.

    Its entry at a subgroup L is the sum of all characters chi on L with
    (L, chi) in the orbit, each with coefficient one; subgroups outside
    the conjugacy class contribute zero.  (Equivalently: transport the
    orbit of the representative character along normalizer cosets.)
    """
    rows = [[0] * len(hs) for hs in table.homs]
    for i in table.orbit_items[o]:
        spos, cpos = table.sub_char_of_item[i]
        rows[spos][cpos] = 1
    return GhostElement(table, tuple(tuple(r) for r in rows))


def mark_morphism(x: RingElement) -> GhostElement:
    """The injective ring map sending a basis element to its vector of
    mark-weighted characters; extended linearly."""
    t = x.table
    iom = item_orbit_marks(t)
    rows = []
    i = 0
    for hs in t.homs:
        row = []
        for _ in hs:
            row.append(sum(c * iom[i][o] for o, c in x.coeffs))
            i += 1
        rows.append(tuple(row))
    return GhostElement(t, tuple(rows))


def _hom_mul_table(table: SubcharacterTable, spos: int) -> list:
    cache = table._cache.setdefault("hom_mul", {})
    hit = cache.get(spos)
    if hit is not None:
        return hit
    hs = table.homs[spos]
    out = [
        [table.hom_pos(spos, char_product(a, b).vec) for b in hs] for a in hs
    ]
    cache[spos] = out
    return out


def ghost_multiply(u: GhostElement, v: GhostElement) -> GhostElement:
    """Componentwise group-algebra product over each Hom(K, A)."""
    assert u.table is v.table
    t = u.table
    rows = []
    for spos in range(len(t.homs)):
        ru, rv = u.entries[spos], v.entries[spos]
        mt = _hom_mul_table(t, spos)
        out = [0] * len(ru)
        for i, a in enumerate(ru):
            if a == 0:
                continue
            mi = mt[i]
            for j, b in enumerate(rv):
                if b:
                    out[mi[j]] += a * b
        rows.append(tuple(out))
    return GhostElement(t, tuple(rows))


def _hom_inv_pos(table: SubcharacterTable, spos: int) -> list:
    cache = table._cache.setdefault("hom_inv", {})
    hit = cache.get(spos)
    if hit is not None:
        return hit
    out = [
        table.hom_pos(spos, char_inverse(c).vec) for c in table.homs[spos]
    ]
    cache[spos] = out
    return out


def mark_convolution(table: SubcharacterTable, o1: int, o2: int, u: Subcharacter) -> int:
    """Coefficient of u's character in the u-subgroup entry of the ghost
    product of the images of orbits o1 and o2: a convolution of two mark
    vectors over Hom(U, A)."""
    iom = item_orbit_marks(table)
    spos = table.sub_pos(u.subgroup.members)
    cpos = table.hom_pos(spos, u.character.vec)
    mt = _hom_mul_table(table, spos)
    invp = _hom_inv_pos(table, spos)
    ids = table.item_id_by_sub_char[spos]
    row = mt[cpos]
    total = 0
    for p in range(len(ids)):
        # the p-th character plays the right factor; omega times its
        # inverse plays the left one
        total += iom[ids[row[invp[p]]]][o1] * iom[ids[p]][o2]
    return total


def mark_sum_above(table: SubcharacterTable, o1: int, o2: int, u: Subcharacter) -> int:
    """Sum, over orbits strictly above u's, of multiplication coefficient
    times the mark of that orbit at u."""
    iu = table.item_id(u)
    ou = table.orbit_of[iu]
    iom = item_orbit_marks(table)
    leq_row = table.leq[ou]
    total = 0
    for ot, m in basis_product(table, o1, o2).items():
        if ot != ou and leq_row[ot]:
            total += m * iom[iu][ot]
    return total


def mult_coeff_from_marks(table: SubcharacterTable, o1: int, o2: int, u: Subcharacter) -> int:
    """Recover the multiplication coefficient at u from marks alone:
    (convolution - strictly-above sum) divided by the index of u's
    subgroup in its stabilizer.  The division is always exact; a remainder
    signals an implementation bug."""
    ou = table.orbit_of[table.item_id(u)]
    diff = mark_convolution(table, o1, o2, u) - mark_sum_above(table, o1, o2, u)
    num = u.subgroup.order * diff
    stab = table.stabilizer_orders[ou]
    if num % stab != 0:
        raise InternalConsistencyError(
            f"coefficient recursion not divisible at orbits ({o1},{o2}), "
            f"target orbit {ou}: {num} / {stab}"
        )
    return num // stab


def verify_injectivity(table: SubcharacterTable) -> bool:
    """The mark matrix is triangular with nonzero diagonal in a linear
    extension of the orbit poset, so the mark morphism is injective."""
    try:
        mt = mark_table(table)
    except InternalConsistencyError:
        return False
    n = mt.size
    for i in range(n):
        if mt.matrix[i][i] == 0:
            return False
        for j in range(i + 1, n):
            if mt.matrix[i][j] != 0:
                return False
    return True
