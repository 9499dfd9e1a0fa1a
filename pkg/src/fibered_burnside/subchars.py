"""The poset of subcharacters (K, phi) of a group, its orbits under
conjugation, stabilizers, and the induced order on orbits.

A SubcharacterTable materializes every pair (K, phi), not just orbit
representatives: marks and multiplication coefficients constantly need
arbitrary conjugates, and the full set stays small at the supported
scale.  Tables are immutable after construction; the ``_cache`` dict only
memoizes derived data and never changes observable state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeLimitError
from .fibers import Character, FiberGroup, conjugate_character, hom_set
from .groups import (
    GROUP_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    SubgroupClassification,
    subgroups,
)


@dataclass(frozen=True)
class Subcharacter:
    """A pair (K, phi) of a subgroup and a character on it."""

    subgroup: Subgroup
    character: Character

    def __post_init__(self):
        assert self.subgroup.members == self.character.domain.members

    @property
    def key(self) -> tuple:
        return (self.subgroup.members, self.character.vec)

    def __repr__(self):
        return f"Subcharacter(order={self.subgroup.order}, vec={self.character.vec})"


class SubcharacterTable:
    """All subcharacters of (G, A) with orbit and poset structure."""

    def __init__(self, G: FiniteGroup, A: FiberGroup, *, max_order: int = GROUP_ORDER_CAP):
        if G.order > max_order:
            raise SizeLimitError(f"group order {G.order} exceeds cap {max_order}")
        self.group = G
        self.fiber = A
        self.classification: SubgroupClassification = subgroups(G, max_order=max_order)
        self.homs: tuple[tuple[Character, ...], ...] = tuple(
            hom_set(G, K, A) for K in self.classification.all
        )

        items: list[Subcharacter] = []
        item_id_by_sub_char: list[tuple[int, ...]] = []
        sub_char_of_item: list[tuple[int, int]] = []
        for spos, K in enumerate(self.classification.all):
            ids = []
            for cpos, c in enumerate(self.homs[spos]):
                ids.append(len(items))
                sub_char_of_item.append((spos, cpos))
                items.append(Subcharacter(K, c))
            item_id_by_sub_char.append(tuple(ids))
        self.items: tuple[Subcharacter, ...] = tuple(items)
        self.item_id_by_sub_char = tuple(item_id_by_sub_char)
        self.sub_char_of_item = tuple(sub_char_of_item)
        self._index = {it.key: i for i, it in enumerate(items)}
        self._hom_pos = [
            {c.vec: p for p, c in enumerate(hs)} for hs in self.homs
        ]

        n_items = len(items)
        orbit_of = [-1] * n_items
        orbit_reps: list[int] = []
        orbit_items: list[tuple[int, ...]] = []
        stabilizers: list[Subgroup] = []
        for i in range(n_items):
            if orbit_of[i] >= 0:
                continue
            o = len(orbit_reps)
            orbit_reps.append(i)
            members = set()
            stab = 0
            for g in range(G.order):
                j = self.conjugate_item(g, i)
                members.add(j)
                if j == i:
                    stab |= 1 << g
                if orbit_of[j] < 0:
                    orbit_of[j] = o
            orbit_items.append(tuple(sorted(members)))
            stabilizers.append(Subgroup(stab, bin(stab).count("1")))
            assert len(members) * stabilizers[-1].order == G.order
        self.orbit_of = tuple(orbit_of)
        self.orbit_reps = tuple(orbit_reps)
        self.orbit_items = tuple(orbit_items)
        self.stabilizers = tuple(stabilizers)
        self.stabilizer_orders = tuple(s.order for s in stabilizers)
        self.orbit_sizes = tuple(len(m) for m in orbit_items)

        r = len(orbit_reps)
        leq = []
        for o1 in range(r):
            a = items[orbit_reps[o1]]
            row = tuple(
                any(subchar_leq(a, items[j]) for j in orbit_items[o2])
                for o2 in range(r)
            )
            leq.append(row)
        self.leq: tuple[tuple[bool, ...], ...] = tuple(leq)

        self._cache: dict = {}

    # -- basic queries ------------------------------------------------------

    @property
    def num_orbits(self) -> int:
        return len(self.orbit_reps)

    def rep(self, o: int) -> Subcharacter:
        return self.items[self.orbit_reps[o]]

    def item_id(self, s: Subcharacter) -> int:
        return self._index[s.key]

    def item_id_of(self, members: int, vec: tuple) -> int:
        return self._index[(members, vec)]

    def sub_pos(self, members: int) -> int:
        return self.classification.position(members)

    def hom_pos(self, spos: int, vec: tuple) -> int:
        return self._hom_pos[spos][vec]

    def conjugate_item(self, g: int, i: int) -> int:
        it = self.items[i]
        c = conjugate_character(self.group, g, it.character)
        return self._index[(c.domain.members, c.vec)]

    def trivial_char_pos(self, spos: int) -> int:
        return self._hom_pos[spos][
            (self.fiber.zero,) * self.classification.all[spos].order
        ]

    def orbit_of_pair(self, spos: int, cpos: int) -> int:
        return self.orbit_of[self.item_id_by_sub_char[spos][cpos]]

    def is_trivial_orbit(self, o: int) -> bool:
        return self.rep(o).character.is_trivial

    def identity_orbit(self) -> int:
        """Orbit of (G, 1), the multiplicative identity's basis index."""
        spos = self.sub_pos((1 << self.group.order) - 1)
        return self.orbit_of_pair(spos, self.trivial_char_pos(spos))

    def bottom_orbit(self) -> int:
        """Orbit of (1, 1)."""
        return self.orbit_of_pair(self.sub_pos(1), 0)

    def __repr__(self):
        return (
            f"SubcharacterTable({self.group.name}, {self.fiber.spec()}, "
            f"items={len(self.items)}, orbits={self.num_orbits})"
        )


def build_table(
    G: FiniteGroup, A: FiberGroup, *, max_order: int = GROUP_ORDER_CAP
) -> SubcharacterTable:
    """Build the full subcharacter table of (G, A)."""
    return SubcharacterTable(G, A, max_order=max_order)


def subchar_leq(a: Subcharacter, b: Subcharacter) -> bool:
    """Containment order: a's subgroup inside b's, b's character restricting
    to a's."""
    if a.subgroup.members & ~b.subgroup.members:
        return False
    bv = b.character.values
    return all(bv[x] == v for x, v in a.character.values.items())


def orbit_leq(table: SubcharacterTable, o1: int, o2: int) -> bool:
    """Order on orbits: some conjugate of o2's members lies above o1."""
    return table.leq[o1][o2]


def stabilizer(G: FiniteGroup, s: Subcharacter) -> Subgroup:
    """Elements fixing both the subgroup and the character under conjugation."""
    m = 0
    for g in range(G.order):
        c = conjugate_character(G, g, s.character)
        if c.domain.members == s.subgroup.members and c.vec == s.character.vec:
            m |= 1 << g
    return Subgroup(m, bin(m).count("1"))
