"""Arithmetic of the fibered Burnside ring on its standard orbit basis:
double-coset products, multiplication coefficients, marks, and the mark
table.

Coefficients and marks are always evaluated at canonical orbit
representatives; conjugation invariance is enforced by the verification
suites rather than baked into the computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalConsistencyError
from .fibers import char_inverse, char_product, conjugate_character, trivial_character
from .groups import FiniteGroup, double_coset_reps, fixed_points_count
from .subchars import Subcharacter, SubcharacterTable

_COEFF_LIMIT = 1 << 62  # coefficients stay tiny; this guards refactors


@dataclass(frozen=True)
class RingElement:
    """An integer combination of orbit basis elements, held sparsely."""

    table: SubcharacterTable = field(compare=False)
    coeffs: tuple[tuple[int, int], ...]  # sorted (orbit id, coeff != 0) pairs

    @staticmethod
    def from_dict(table: SubcharacterTable, d: dict) -> "RingElement":
        items = tuple(sorted((o, c) for o, c in d.items() if c != 0))
        assert all(0 <= o < table.num_orbits for o, _ in items)
        assert all(abs(c) < _COEFF_LIMIT for _, c in items)
        return RingElement(table, items)

    @staticmethod
    def basis(table: SubcharacterTable, o: int) -> "RingElement":
        return RingElement.from_dict(table, {o: 1})

    @staticmethod
    def zero(table: SubcharacterTable) -> "RingElement":
        return RingElement(table, ())

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coeff(self, o: int) -> int:
        return self.as_dict().get(o, 0)

    def __add__(self, other: "RingElement") -> "RingElement":
        assert self.table is other.table
        d = self.as_dict()
        for o, c in other.coeffs:
            d[o] = d.get(o, 0) + c
        return RingElement.from_dict(self.table, d)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-1) * other

    def __rmul__(self, k: int) -> "RingElement":
        return RingElement.from_dict(self.table, {o: k * c for o, c in self.coeffs})

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)


def basis_product(table: SubcharacterTable, o1: int, o2: int) -> dict:
    """Product of two orbit basis elements as {orbit id: coefficient}.

    One double-coset representative at a time: each contributes the orbit
    of (K meet sLs^-1, phi * conjugated psi) with coefficient one.
    """
    cache = table._cache.setdefault("basis_product", {})
    key = (o1, o2)
    hit = cache.get(key)
    if hit is not None:
        return hit
    a, b = table.rep(o1), table.rep(o2)
    G = table.group
    out: dict = {}
    for s in double_coset_reps(G, a.subgroup, b.subgroup):
        spsi = conjugate_character(G, s, b.character)
        prod = char_product(a.character, spsi)
        o = table.orbit_of[table.item_id_of(prod.domain.members, prod.vec)]
        out[o] = out.get(o, 0) + 1
    cache[key] = out
    return out


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """Bilinear extension of the double-coset product of basis elements."""
    assert x.table is y.table
    out: dict = {}
    for o1, c1 in x.coeffs:
        for o2, c2 in y.coeffs:
            for o, m in basis_product(x.table, o1, o2).items():
                out[o] = out.get(o, 0) + c1 * c2 * m
    return RingElement.from_dict(x.table, out)


def identity_element(table: SubcharacterTable) -> RingElement:
    return RingElement.basis(table, table.identity_orbit())


def mult_coeff(table: SubcharacterTable, o1: int, o2: int, o3: int) -> int:
    """Multiplication coefficient: how many double cosets of the product of
    o1 and o2 land in orbit o3."""
    return basis_product(table, o1, o2).get(o3, 0)


def mark(G: FiniteGroup, a: Subcharacter, b: Subcharacter) -> int:
    """The mark of b at a: the number of cosets sL with a lying below the
    s-conjugate of b.  Computed by direct coset scan."""
    K, phi = a.subgroup, a.character
    L, psi = b.subgroup, b.character
    mul, inv = G.mul, G.inv
    kels = K.elements()
    pv, sv = phi.values, psi.values
    lmask = L.members
    count = 0
    for s in range(G.order):
        sinv = inv[s]
        row = mul[sinv]
        ok = True
        for x in kels:
            xs = mul[row[x]][s]
            if not (lmask >> xs) & 1 or sv[xs] != pv[x]:
                ok = False
                break
        if ok:
            count += 1
    assert count % L.order == 0
    return count // L.order


def item_orbit_marks(table: SubcharacterTable) -> list:
    """Matrix of marks: rows indexed by items, columns by orbit reps.

    Marks are invariant under conjugating either argument, so this matrix
    determines the mark of any subcharacter pair.
    """
    cached = table._cache.get("item_orbit_marks")
    if cached is not None:
        return cached
    G = table.group
    reps = [table.rep(o) for o in range(table.num_orbits)]
    m = [[mark(G, a, b) for b in reps] for a in table.items]
    table._cache["item_orbit_marks"] = m
    return m


def orbit_marks(table: SubcharacterTable) -> list:
    """Square mark matrix over orbit representatives."""
    cached = table._cache.get("orbit_marks")
    if cached is not None:
        return cached
    iom = item_orbit_marks(table)
    m = [iom[i] for i in table.orbit_reps]
    table._cache["orbit_marks"] = m
    return m


def mark_of_items(table: SubcharacterTable, i: int, j: int) -> int:
    """Mark of item j at item i, via the cached item/orbit matrix."""
    return item_orbit_marks(table)[i][table.orbit_of[j]]


def mark_via_mult_coeff(table: SubcharacterTable, a: Subcharacter, b: Subcharacter) -> int:
    """The mark computed through a multiplication coefficient: pair a with
    the inverse of b's character and read off the coefficient at (K, 1)."""
    o1 = table.orbit_of[table.item_id(a)]
    binv = char_inverse(b.character)
    o2 = table.orbit_of[table.item_id_of(b.subgroup.members, binv.vec)]
    triv = trivial_character(a.subgroup, table.fiber)
    o3 = table.orbit_of[table.item_id_of(a.subgroup.members, triv.vec)]
    return mult_coeff(table, o1, o2, o3)


@dataclass(frozen=True)
class MarkTable:
    """The square mark matrix over orbit reps, rows/columns in a linear
    extension of the orbit poset (descending subgroup order), making the
    matrix lower triangular with positive diagonal."""

    order: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.order)


def mark_table(table: SubcharacterTable) -> MarkTable:
    """Build the mark table and check its triangular shape."""
    r = table.num_orbits
    order = sorted(range(r), key=lambda o: (-table.rep(o).subgroup.order, o))
    om = orbit_marks(table)
    matrix = tuple(tuple(om[o1][o2] for o2 in order) for o1 in order)
    for i, o1 in enumerate(order):
        for j, o2 in enumerate(order):
            v = matrix[i][j]
            if j > i and v != 0:
                raise InternalConsistencyError(
                    f"mark matrix not triangular at ({o1},{o2})"
                )
            if j == i:
                expected = table.stabilizer_orders[o1] // table.rep(o1).subgroup.order
                if v != expected:
                    raise InternalConsistencyError(
                        f"diagonal mark at orbit {o1} is {v}, expected {expected}"
                    )
    return MarkTable(tuple(order), matrix)


def burnside_subring_check(table: SubcharacterTable) -> bool:
    """True iff products of trivial-character basis elements only touch
    trivial-character orbits (the classical Burnside ring sits inside)."""
    trivial = [o for o in range(table.num_orbits) if table.is_trivial_orbit(o)]
    tset = set(trivial)
    return all(
        set(basis_product(table, o1, o2)) <= tset
        for o1 in trivial
        for o2 in trivial
    )


def classical_fixed_point_check(table: SubcharacterTable) -> bool:
    """Marks between trivial-character orbits equal fixed-point counts."""
    G = table.group
    om = orbit_marks(table)
    for o1 in range(table.num_orbits):
        if not table.is_trivial_orbit(o1):
            continue
        for o2 in range(table.num_orbits):
            if not table.is_trivial_orbit(o2):
                continue
            K, L = table.rep(o1).subgroup, table.rep(o2).subgroup
            if om[o1][o2] != fixed_points_count(G, K, L):
                return False
    return True
