"""Finite groups as explicit multiplication tables, with subgroup,
conjugacy-class and coset machinery.

Elements are integers 0..n-1 with 0 the identity.  Subgroups are stored
as bitsets over element indices, which keeps everything exact, hashable
and fast at the supported scale (order <= 64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import GroupInputError, SizeLimitError

GROUP_ORDER_CAP = 64

_GEN_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[a][b]`` is the index of the product a*b, ``inv[a]`` the index of
    the inverse of a, and element 0 is the identity.  Validated eagerly at
    construction: building one of these with a non-group table raises.
    """

    name: str
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.mul)
        if n == 0:
            raise GroupInputError("empty multiplication table")
        if any(len(row) != n for row in self.mul):
            raise GroupInputError("multiplication table is not square")
        if len(self.labels) != n:
            raise GroupInputError("labels length does not match group order")
        rng = range(n)
        if any(not (0 <= v < n) for row in self.mul for v in row):
            raise GroupInputError("table entry out of range")
        mul = self.mul
        for x in rng:
            if mul[0][x] != x or mul[x][0] != x:
                raise GroupInputError("element 0 must be a two-sided identity")
        if len(self.inv) != n or any(
            mul[x][self.inv[x]] != 0 or mul[self.inv[x]][x] != 0 for x in rng
        ):
            raise GroupInputError("inverse table is inconsistent")
        # O(n^3) but n <= 64, and failing fast beats failing weirdly later.
        for a in rng:
            row_a = mul[a]
            for b in rng:
                ab = row_a[b]
                row_ab = mul[ab]
                mb = mul[b]
                for c in rng:
                    if row_ab[c] != row_a[mb[c]]:
                        raise GroupInputError(
                            f"multiplication is not associative at ({a},{b},{c})"
                        )

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = self.mul[y][x]
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(x) for x in range(self.order)))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup as a bitset of element indices.

    Ordering is by bitset value; that order is the canonical one used for
    representatives throughout the package.
    """

    members: int
    order: int

    def elements(self) -> list[int]:
        return list(iter_bits(self.members))

    def __contains__(self, x: int) -> bool:
        return (self.members >> x) & 1 == 1

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={self.elements()})"


def closure_mask(G: FiniteGroup, mask: int) -> int:
    """Smallest submonoid mask containing ``mask`` (a subgroup, G finite)."""
    mul = G.mul
    m = mask | 1
    queue = list(iter_bits(m))
    while queue:
        a = queue.pop()
        row = mul[a]
        for b in list(iter_bits(m)):
            for c in (row[b], mul[b][a]):
                if not (m >> c) & 1:
                    m |= 1 << c
                    queue.append(c)
    return m


def subgroup_from_mask(G: FiniteGroup, mask: int) -> Subgroup:
    """Validate ``mask`` as a subgroup of G and wrap it."""
    if not mask & 1:
        raise GroupInputError("subgroup must contain the identity")
    mul = G.mul
    els = list(iter_bits(mask))
    for a in els:
        row = mul[a]
        for b in els:
            if not (mask >> row[b]) & 1:
                raise GroupInputError("subset is not closed under multiplication")
    order = len(els)
    assert G.order % order == 0, "Lagrange violated: bad multiplication table"
    return Subgroup(mask, order)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(1, 1)


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup((1 << G.order) - 1, G.order)


def conjugate_mask(G: FiniteGroup, g: int, mask: int) -> int:
    mul, ginv = G.mul, G.inv[g]
    row = mul[g]
    out = 0
    for x in iter_bits(mask):
        out |= 1 << mul[row[x]][ginv]
    return out


def conjugate_subgroup(G: FiniteGroup, g: int, K: Subgroup) -> Subgroup:
    """The conjugate subgroup g K g^-1."""
    return Subgroup(conjugate_mask(G, g, K.members), K.order)


def cyclic_subgroup_mask(G: FiniteGroup, x: int) -> int:
    m, y = 1, x
    while not (m >> y) & 1:
        m |= 1 << y
        y = G.mul[y][x]
    return m


@dataclass(frozen=True)
class SubgroupClassification:
    """All subgroups of a group plus their conjugacy structure.

    ``all`` is sorted by bitset value (the canonical subgroup order);
    class representatives are the smallest member of each class.
    """

    all: tuple[Subgroup, ...]
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    class_reps: tuple[int, ...]
    normalizers: tuple[Subgroup, ...]
    index: dict = field(repr=False, compare=False, default_factory=dict)

    def position(self, members: int) -> int:
        return self.index[members]


def subgroups(G: FiniteGroup, *, max_order: int = GROUP_ORDER_CAP) -> SubgroupClassification:
    """Enumerate every subgroup of G with conjugacy classes and normalizers.

    Uses a lattice climb: all cyclic subgroups first, then repeated joins
    with cyclic subgroups until closed.  Every subgroup is a join of
    cyclic ones, so this finds them all.
    """
    if G.order > max_order:
        raise SizeLimitError(f"group order {G.order} exceeds cap {max_order}")
    cyclics = sorted({cyclic_subgroup_mask(G, x) for x in range(G.order)})
    found = set(cyclics)
    found.add(1)
    frontier = list(found)
    while frontier:
        fresh = []
        for s in frontier:
            for c in cyclics:
                if c & ~s == 0:
                    continue
                j = closure_mask(G, s | c)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh

    masks = sorted(found)
    subs = tuple(Subgroup(m, bin(m).count("1")) for m in masks)
    index = {m: i for i, m in enumerate(masks)}

    class_of = [-1] * len(subs)
    classes: list[tuple[int, ...]] = []
    for i, K in enumerate(subs):
        if class_of[i] >= 0:
            continue
        cid = len(classes)
        orbit = sorted({index[conjugate_mask(G, g, K.members)] for g in range(G.order)})
        for j in orbit:
            class_of[j] = cid
        classes.append(tuple(orbit))

    normalizers = []
    for K in subs:
        m = 0
        for g in range(G.order):
            if conjugate_mask(G, g, K.members) == K.members:
                m |= 1 << g
        normalizers.append(Subgroup(m, bin(m).count("1")))

    return SubgroupClassification(
        all=subs,
        class_of=tuple(class_of),
        classes=tuple(classes),
        class_reps=tuple(c[0] for c in classes),
        normalizers=tuple(normalizers),
        index=index,
    )


def double_coset_reps(G: FiniteGroup, K: Subgroup, L: Subgroup) -> list[int]:
    """Minimal-index representatives of the double cosets K s L, ascending."""
    mul = G.mul
    kels, lels = K.elements(), L.elements()
    covered = 0
    reps = []
    for s in range(G.order):
        if (covered >> s) & 1:
            continue
        reps.append(s)
        for k in kels:
            ks = mul[k][s]
            row = mul[ks]
            for l in lels:
                covered |= 1 << row[l]
    return reps


def left_coset_reps(G: FiniteGroup, L: Subgroup) -> list[int]:
    """Minimal-index representatives of the left cosets s L, ascending."""
    mul = G.mul
    lels = L.elements()
    covered = 0
    reps = []
    for s in range(G.order):
        if (covered >> s) & 1:
            continue
        reps.append(s)
        row = mul[s]
        for l in lels:
            covered |= 1 << row[l]
    return reps


def fixed_points_count(G: FiniteGroup, K: Subgroup, L: Subgroup) -> int:
    """Number of cosets sL fixed by K acting on G/L from the left."""
    mul, inv = G.mul, G.inv
    kels = K.elements()
    lm = L.members
    count = 0
    for s in range(G.order):
        sinv = inv[s]
        if all((lm >> mul[mul[sinv][k]][s]) & 1 for k in kels):
            count += 1
    assert count % L.order == 0
    return count // L.order


def centralizer_mask(G: FiniteGroup, K: Subgroup) -> int:
    mul = G.mul
    kels = K.elements()
    m = 0
    for g in range(G.order):
        row = mul[g]
        if all(row[k] == mul[k][g] for k in kels):
            m |= 1 << g
    return m


def subgroup_generators(G: FiniteGroup, K: Subgroup) -> list[int]:
    """A small generating set for K, chosen greedily by element index."""
    gens: list[int] = []
    cur = 1
    for x in K.elements():
        if not (cur >> x) & 1:
            gens.append(x)
            cur = closure_mask(G, cur | (1 << x))
            if cur == K.members:
                break
    return gens


def subgroup_label(G: FiniteGroup, K: Subgroup) -> str:
    """Human-readable label built from generator words, e.g. ``<a,bb>``."""
    if K.order == 1:
        return "1"
    return "<" + ",".join(G.labels[x] for x in subgroup_generators(G, K)) + ">"


# ---------------------------------------------------------------------------
# group construction


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p . q)(i) = p(q(i)); word concatenation composes left-to-right
    return tuple(p[q[i]] for i in range(len(p)))


def _group_from_permutations(
    name: str, gens: Sequence[Sequence[int]], max_order: int
) -> FiniteGroup:
    if not gens:
        raise GroupInputError("perm_gens must be non-empty")
    if len(gens) > len(_GEN_LETTERS):
        raise GroupInputError("too many generators")
    npts = len(gens[0])
    perms: list[tuple[int, ...]] = []
    for g in gens:
        if len(g) != npts:
            raise GroupInputError("generators act on different point counts")
        img = tuple(v - 1 for v in g)
        if sorted(img) != list(range(npts)):
            raise GroupInputError(f"{list(g)} is not a permutation of 1..{npts}")
        perms.append(img)

    ident = tuple(range(npts))
    elements = [ident]
    words = [""]
    seen = {ident: 0}
    # BFS over generator words; discovery order is shortest-lex word order
    head = 0
    while head < len(elements):
        base = elements[head]
        for j, p in enumerate(perms):
            q = _compose(base, p)
            if q not in seen:
                if len(elements) >= max_order:
                    raise SizeLimitError(
                        f"generated group order exceeds cap {max_order}"
                    )
                seen[q] = len(elements)
                elements.append(q)
                words.append(words[head] + _GEN_LETTERS[j])
        head += 1

    n = len(elements)
    mul = tuple(
        tuple(seen[_compose(a, b)] for b in elements) for a in elements
    )
    inv = tuple(seen[tuple(_invert(p))] for p in elements)
    labels = tuple("e" if w == "" else w for w in words)
    return FiniteGroup(name=name, mul=mul, inv=inv, labels=labels)


def _invert(p: tuple[int, ...]) -> list[int]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return out


def _group_from_cayley(
    name: str, table: Sequence[Sequence[int]], labels, max_order: int
) -> FiniteGroup:
    n = len(table)
    if n > max_order:
        raise SizeLimitError(f"group order {n} exceeds cap {max_order}")
    mul = tuple(tuple(int(v) for v in row) for row in table)
    if any(len(row) != n for row in mul):
        raise GroupInputError("cayley table is not square")
    if any(not (0 <= v < n) for row in mul for v in row):
        raise GroupInputError("cayley table entry out of range")
    inv = []
    for x in range(n):
        try:
            y = mul[x].index(0)
        except ValueError:
            raise GroupInputError(f"element {x} has no inverse") from None
        inv.append(y)
    if labels is None:
        labels = ["e"] + [f"g{i}" for i in range(1, n)]
    return FiniteGroup(name=name, mul=mul, inv=tuple(inv), labels=tuple(str(s) for s in labels))


def build_group(spec: dict, *, max_order: int = GROUP_ORDER_CAP) -> FiniteGroup:
    """Build a validated group from an input record.

    The record carries either ``cayley`` (an n x n 0-indexed table whose
    element 0 is the identity) or ``perm_gens`` (permutations as 1-indexed
    image sequences, closed under products to enumerate the group), plus
    ``name`` and optional ``labels``.
    """
    if not isinstance(spec, dict):
        raise GroupInputError("group record must be a mapping")
    name = str(spec.get("name", "G"))
    has_cayley = "cayley" in spec
    has_perms = "perm_gens" in spec
    if has_cayley == has_perms:
        raise GroupInputError("group record needs exactly one of 'cayley' or 'perm_gens'")
    if has_cayley:
        return _group_from_cayley(name, spec["cayley"], spec.get("labels"), max_order)
    return _group_from_permutations(name, spec["perm_gens"], max_order)
