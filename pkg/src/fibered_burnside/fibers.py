"""Finite abelian fiber groups and the characters Hom(K, A).

Fiber elements are tuples of residues (one per cyclic invariant), written
additively, so character arithmetic is exact integer arithmetic.  A
character stores its full value map on its domain subgroup; the value
vector over the domain's sorted elements is the canonical sort key.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .errors import GroupInputError
from .groups import FiniteGroup, Subgroup, closure_mask, conjugate_subgroup, iter_bits

_FIBER_RE = re.compile(r"^C(\d+)(?:xC(\d+))*$")


@dataclass(frozen=True)
class FiberGroup:
    """The abelian group C_{n1} x ... x C_{nk} given by its invariants."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        if not self.invariants or any(n < 1 for n in self.invariants):
            raise GroupInputError("fiber invariants must be positive")

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.invariants)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariants)

    def elements(self) -> list[tuple[int, ...]]:
        """All elements in lexicographic order."""
        return list(itertools.product(*(range(n) for n in self.invariants)))

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.invariants))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.invariants))

    def scale(self, m: int, a):
        return tuple((m * x) % n for x, n in zip(a, self.invariants))

    def spec(self) -> str:
        return "x".join(f"C{n}" for n in self.invariants)


def parse_fiber(spec: str, context_exponent: int = 1) -> FiberGroup:
    """Parse a fiber spec like ``C2xC4``, or ``auto``.

    ``auto`` stands for the cyclic group of order ``context_exponent``
    (the exponent of the group at hand, or the lcm of both exponents when
    comparing two groups); characters into any group with that exponent
    factor through it.
    """
    spec = spec.strip()
    if spec == "auto":
        if context_exponent < 1:
            raise GroupInputError("context exponent must be positive")
        return FiberGroup((context_exponent,))
    if not _FIBER_RE.match(spec):
        raise GroupInputError(f"bad fiber spec {spec!r}; expected C<n>(xC<m>)* or auto")
    ns = tuple(int(part[1:]) for part in spec.split("x"))
    if any(n < 1 for n in ns):
        raise GroupInputError("fiber invariants must be positive")
    return FiberGroup(ns)


class Character:
    """A homomorphism from a subgroup into the fiber, as a total value map.

    Instances are immutable; equality and hashing go through the value
    vector over the domain's ascending elements (``vec``), which is also
    the canonical comparison key.
    """

    __slots__ = ("domain", "fiber", "values", "vec", "_hash")

    def __init__(self, domain: Subgroup, fiber: FiberGroup, values: dict):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "fiber", fiber)
        object.__setattr__(self, "values", values)
        object.__setattr__(
            self, "vec", tuple(values[x] for x in iter_bits(domain.members))
        )
        object.__setattr__(
            self, "_hash", hash((domain.members, fiber.invariants, self.vec))
        )

    def __setattr__(self, *a):
        raise AttributeError("Character is immutable")

    def __call__(self, x: int):
        return self.values[x]

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.domain.members == other.domain.members
            and self.fiber.invariants == other.fiber.invariants
            and self.vec == other.vec
        )

    def __hash__(self):
        return self._hash

    @property
    def is_trivial(self) -> bool:
        zero = self.fiber.zero
        return all(v == zero for v in self.vec)

    def __repr__(self):
        return f"Character(domain_order={self.domain.order}, vec={self.vec})"


def validate_character(G: FiniteGroup, c: Character) -> None:
    """Check the homomorphism law on all pairs; raises on failure."""
    add = c.fiber.add
    els = c.domain.elements()
    if c.values[0] != c.fiber.zero:
        raise GroupInputError("character must send the identity to zero")
    for x in els:
        for y in els:
            if c.values[G.mul[x][y]] != add(c.values[x], c.values[y]):
                raise GroupInputError(f"value map is not a homomorphism at ({x},{y})")


def trivial_character(K: Subgroup, A: FiberGroup) -> Character:
    z = A.zero
    return Character(K, A, {x: z for x in iter_bits(K.members)})


def _commutator_mask(G: FiniteGroup, K: Subgroup) -> int:
    mul, inv = G.mul, G.inv
    els = K.elements()
    m = 1
    for x in els:
        for y in els:
            m |= 1 << mul[mul[mul[x][y]][inv[x]]][inv[y]]
    return closure_mask(G, m)


def hom_set(G: FiniteGroup, K: Subgroup, A: FiberGroup) -> tuple[Character, ...]:
    """All homomorphisms K -> A, each once, sorted by value vector.

    Characters into an abelian group factor through the abelianization,
    so we pass to K/[K,K] and extend cyclically: each step adjoins one
    generator of the quotient and keeps exactly the value assignments
    consistent with the power relation it satisfies.
    """
    comm = _commutator_mask(G, K)
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    comm_els = list(iter_bits(comm))
    for x in K.elements():
        if x in coset_of:
            continue
        idx = len(reps)
        reps.append(x)
        for c in comm_els:
            coset_of[G.mul[x][c]] = idx
    q = len(reps)
    qmul = [[coset_of[G.mul[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]

    homs: list[dict[int, tuple[int, ...]]] = [{0: A.zero}]
    known = 1
    fiber_elements = A.elements()
    while known < q:
        g = next(i for i in range(q) if i not in homs[0])
        # least m >= 1 with g^m already reached; candidates a must satisfy m*a = value(g^m)
        y, m = g, 1
        while y not in homs[0]:
            y = qmul[y][g]
            m += 1
        extended = []
        for phi in homs:
            target = phi[y]
            base = list(phi.items())
            for a in fiber_elements:
                if A.scale(m, a) != target:
                    continue
                ext = dict(phi)
                gp, val = g, a
                for _ in range(1, m):
                    for x, vx in base:
                        ext[qmul[x][gp]] = A.add(vx, val)
                    gp = qmul[gp][g]
                    val = A.add(val, a)
                extended.append(ext)
        homs = extended
        known = len(homs[0])

    out = []
    for phi in homs:
        values = {x: phi[coset_of[x]] for x in iter_bits(K.members)}
        out.append(Character(K, A, values))
    out.sort(key=lambda c: c.vec)
    return tuple(out)


def conjugate_character(G: FiniteGroup, g: int, c: Character) -> Character:
    """The character on gKg^-1 with value at x equal to c(g^-1 x g)."""
    dom = conjugate_subgroup(G, g, c.domain)
    mul, ginv = G.mul, G.inv[g]
    row = mul[ginv]
    values = {x: c.values[mul[row[x]][g]] for x in iter_bits(dom.members)}
    return Character(dom, c.fiber, values)


def char_product(c1: Character, c2: Character) -> Character:
    """Pointwise product, restricted to the intersection of the domains."""
    if c1.fiber.invariants != c2.fiber.invariants:
        raise GroupInputError("characters live over different fibers")
    mask = c1.domain.members & c2.domain.members
    dom = Subgroup(mask, bin(mask).count("1"))
    add = c1.fiber.add
    values = {x: add(c1.values[x], c2.values[x]) for x in iter_bits(mask)}
    return Character(dom, c1.fiber, values)


def char_inverse(c: Character) -> Character:
    """Pointwise inverse (negation in the additive fiber)."""
    neg = c.fiber.neg
    return Character(c.domain, c.fiber, {x: neg(v) for x, v in c.values.items()})
