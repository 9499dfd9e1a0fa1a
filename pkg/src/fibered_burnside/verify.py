"""Verification suites over a single subcharacter table: the proved
properties of multiplication coefficients, marks, ring axioms, and the
ghost-ring identities, checked exhaustively at canonical representatives
plus randomized conjugate replacements.

Each suite returns a SuiteResult; the CLI turns failures into a nonzero
exit code, and the test suite asserts emptiness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fibers import char_product, conjugate_character
from .ghost import (
    ghost_basis,
    ghost_identity,
    ghost_multiply,
    mark_convolution,
    mark_morphism,
    mult_coeff_from_marks,
    verify_injectivity,
)
from .groups import conjugate_mask, double_coset_reps, fixed_points_count
from .ring import (
    RingElement,
    basis_product,
    burnside_subring_check,
    identity_element,
    item_orbit_marks,
    mark,
    mark_via_mult_coeff,
    orbit_marks,
)
from .subchars import SubcharacterTable, Subcharacter, stabilizer


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str):
        self.checked += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(message)


def _conjugated_rep(table: SubcharacterTable, o: int, g: int) -> Subcharacter:
    rep = table.rep(o)
    c = conjugate_character(table.group, g, rep.character)
    return Subcharacter(c.domain, c)


def _direct_mult_coeff(table, a: Subcharacter, b: Subcharacter, o3: int) -> int:
    # double-coset count from scratch at the given (possibly conjugated) reps
    G = table.group
    n = 0
    for s in double_coset_reps(G, a.subgroup, b.subgroup):
        prod = char_product(a.character, conjugate_character(G, s, b.character))
        if table.orbit_of[table.item_id_of(prod.domain.members, prod.vec)] == o3:
            n += 1
    return n


def suite_construction(table: SubcharacterTable) -> SuiteResult:
    """Orbit-stabilizer consistency and poset sanity for one table."""
    res = SuiteResult("construction")
    G = table.group
    r = table.num_orbits
    for o in range(r):
        res.check(
            table.orbit_sizes[o] * table.stabilizer_orders[o] == G.order,
            f"orbit-stabilizer product violated at orbit {o}",
        )
        rep = table.rep(o)
        st = stabilizer(G, rep)
        res.check(
            st.members == table.stabilizers[o].members,
            f"stabilizer mismatch at orbit {o}",
        )
        res.check(
            rep.subgroup.members & ~st.members == 0,
            f"subgroup not inside its stabilizer at orbit {o}",
        )
        norm = table.classification.normalizers[table.sub_pos(rep.subgroup.members)]
        res.check(
            st.members & ~norm.members == 0,
            f"stabilizer not inside the normalizer at orbit {o}",
        )
    # partial order on orbits
    for o1 in range(r):
        res.check(table.leq[o1][o1], f"order not reflexive at {o1}")
        for o2 in range(r):
            if o1 != o2:
                res.check(
                    not (table.leq[o1][o2] and table.leq[o2][o1]),
                    f"order not antisymmetric at ({o1},{o2})",
                )
            for o3 in range(r):
                if table.leq[o1][o2] and table.leq[o2][o3]:
                    res.check(
                        table.leq[o1][o3],
                        f"order not transitive at ({o1},{o2},{o3})",
                    )
    res.check(
        len(table.items) == sum(len(h) for h in table.homs),
        "item count does not match hom-set totals",
    )
    return res


def suite_mult_coeff_properties(
    table: SubcharacterTable, rng: random.Random, samples: int = 100
) -> SuiteResult:
    """Conjugation invariance, symmetry, support characterization, and the
    trivial-character criterion for multiplication coefficients."""
    res = SuiteResult("mult-coeff-properties")
    G = table.group
    r = table.num_orbits

    # symmetry on all pairs
    for o1 in range(r):
        for o2 in range(o1, r):
            res.check(
                basis_product(table, o1, o2) == basis_product(table, o2, o1),
                f"product not symmetric at ({o1},{o2})",
            )

    # support = orbits reachable as (K meet gLg^-1, product character)
    for o1 in range(r):
        a = table.rep(o1)
        for o2 in range(r):
            b = table.rep(o2)
            reach = set()
            for g in range(G.order):
                prod = char_product(
                    a.character, conjugate_character(G, g, b.character)
                )
                reach.add(
                    table.orbit_of[table.item_id_of(prod.domain.members, prod.vec)]
                )
            res.check(
                reach == set(basis_product(table, o1, o2)),
                f"support characterization fails at ({o1},{o2})",
            )

    # coefficient at (K, zeta) of (K, phi) x (K, zeta) is nonzero for every
    # zeta exactly when phi is trivial
    for i, it in enumerate(table.items):
        spos, _ = table.sub_char_of_item[i]
        o1 = table.orbit_of[i]
        all_nonzero = True
        for cpos in range(len(table.homs[spos])):
            j = table.item_id_by_sub_char[spos][cpos]
            oz = table.orbit_of[j]
            if basis_product(table, o1, oz).get(oz, 0) == 0:
                all_nonzero = False
                break
        res.check(
            all_nonzero == it.character.is_trivial,
            f"trivial-character criterion fails at item {i}",
        )

    # random conjugate replacements reproduce the canonical coefficients
    for _ in range(samples):
        o1, o2 = rng.randrange(r), rng.randrange(r)
        prod = basis_product(table, o1, o2)
        o3 = rng.choice(list(prod) + [rng.randrange(r)])
        a = _conjugated_rep(table, o1, rng.randrange(G.order))
        b = _conjugated_rep(table, o2, rng.randrange(G.order))
        res.check(
            _direct_mult_coeff(table, a, b, o3) == prod.get(o3, 0),
            f"conjugation invariance fails at ({o1},{o2},{o3})",
        )
    return res


def suite_mark_properties(
    table: SubcharacterTable, rng: random.Random, samples: int = 100
) -> SuiteResult:
    """Conjugation invariance, vanishing, diagonal, fixed-point and
    coefficient expressions for marks."""
    res = SuiteResult("mark-properties")
    G = table.group
    r = table.num_orbits
    om = orbit_marks(table)

    for o1 in range(r):
        a = table.rep(o1)
        for o2 in range(r):
            b = table.rep(o2)
            res.check(
                (om[o1][o2] != 0) == table.leq[o1][o2],
                f"mark vanishing mismatch at ({o1},{o2})",
            )
            if table.is_trivial_orbit(o1) and table.is_trivial_orbit(o2):
                res.check(
                    om[o1][o2] == fixed_points_count(G, a.subgroup, b.subgroup),
                    f"fixed-point count mismatch at ({o1},{o2})",
                )
            res.check(
                mark_via_mult_coeff(table, a, b) == om[o1][o2],
                f"mark-through-coefficient mismatch at ({o1},{o2})",
            )
        res.check(
            om[o1][o1]
            == table.stabilizer_orders[o1] // table.rep(o1).subgroup.order,
            f"diagonal mark mismatch at {o1}",
        )
        bottom = table.bottom_orbit()
        res.check(
            om[bottom][o1] == G.order // table.rep(o1).subgroup.order,
            f"bottom mark is not the index at {o1}",
        )

    for _ in range(samples):
        o1, o2 = rng.randrange(r), rng.randrange(r)
        a = _conjugated_rep(table, o1, rng.randrange(G.order))
        b = _conjugated_rep(table, o2, rng.randrange(G.order))
        res.check(
            mark(G, a, b) == om[o1][o2],
            f"mark conjugation invariance fails at ({o1},{o2})",
        )
        res.check(
            mark_via_mult_coeff(table, a, b) == om[o1][o2],
            f"mark-through-coefficient at conjugates fails at ({o1},{o2})",
        )
    return res


def suite_ring_axioms(table: SubcharacterTable) -> SuiteResult:
    """Identity, commutativity, associativity on basis elements, and the
    Burnside subring and bottom-ideal behavior."""
    res = SuiteResult("ring-axioms")
    G = table.group
    r = table.num_orbits
    one = identity_element(table)
    bottom = RingElement.basis(table, table.bottom_orbit())
    basis = [RingElement.basis(table, o) for o in range(r)]
    for o in range(r):
        res.check(basis[o] * one == basis[o], f"identity fails at {o}")
        res.check(one * basis[o] == basis[o], f"left identity fails at {o}")
        index = G.order // table.rep(o).subgroup.order
        res.check(
            basis[o] * bottom == index * bottom,
            f"bottom ideal multiple fails at {o}",
        )
    for o1 in range(r):
        for o2 in range(r):
            res.check(
                basis[o1] * basis[o2] == basis[o2] * basis[o1],
                f"commutativity fails at ({o1},{o2})",
            )
            left = basis[o1] * basis[o2]
            for o3 in range(r):
                res.check(
                    left * basis[o3] == basis[o1] * (basis[o2] * basis[o3]),
                    f"associativity fails at ({o1},{o2},{o3})",
                )
    res.check(burnside_subring_check(table), "Burnside subring not closed")
    return res


def suite_ghost_identities(table: SubcharacterTable) -> SuiteResult:
    """The mark morphism is multiplicative, the convolution identity holds
    entrywise, and the coefficient recursion reproduces the double-coset
    coefficients with exact divisibility."""
    res = SuiteResult("ghost-identities")
    r = table.num_orbits
    images = [mark_morphism(RingElement.basis(table, o)) for o in range(r)]
    res.check(
        mark_morphism(identity_element(table)) == ghost_identity(table),
        "identity does not map to the ghost identity",
    )
    iom = item_orbit_marks(table)
    for o1 in range(r):
        for o2 in range(r):
            lhs = ghost_multiply(images[o1], images[o2])
            prod = basis_product(table, o1, o2)
            rhs_rows = []
            i = 0
            for hs in table.homs:
                row = []
                for _ in hs:
                    row.append(sum(c * iom[i][o] for o, c in prod.items()))
                    i += 1
                rhs_rows.append(tuple(row))
            res.check(
                lhs.entries == tuple(rhs_rows),
                f"mark morphism not multiplicative at ({o1},{o2})",
            )
            # entrywise convolution identity and coefficient recursion
            for u in table.items:
                ou = table.orbit_of[table.item_id(u)]
                iu = table.item_id(u)
                rhs = sum(
                    m * iom[iu][ot]
                    for ot, m in prod.items()
                    if table.leq[ou][ot]
                )
                res.check(
                    mark_convolution(table, o1, o2, u) == rhs,
                    f"convolution identity fails at ({o1},{o2},{iu})",
                )
                res.check(
                    mult_coeff_from_marks(table, o1, o2, u) == prod.get(ou, 0),
                    f"coefficient recursion fails at ({o1},{o2},{iu})",
                )
    res.check(verify_injectivity(table), "mark matrix not triangular-invertible")
    return res


def suite_ghost_basis(table: SubcharacterTable) -> SuiteResult:
    """Ghost basis elements expand per the normalizer-coset formula and
    distinct orbits give distinct basis elements."""
    res = SuiteResult("ghost-basis")
    G = table.group
    r = table.num_orbits
    seen = {}
    for o in range(r):
        gb = ghost_basis(table, o)
        rep = table.rep(o)
        spos = table.sub_pos(rep.subgroup.members)
        norm = table.classification.normalizers[spos]
        stab = table.stabilizers[o]
        # build the same element from normalizer coset representatives
        rows = [[0] * len(hs) for hs in table.homs]
        Km = rep.subgroup.members
        for tpos, L in enumerate(table.classification.all):
            gsel = next(
                (g for g in range(G.order) if conjugate_mask(G, g, Km) == L.members),
                None,
            )
            if gsel is None:
                continue
            covered = 0
            for n in norm.elements():
                if (covered >> n) & 1:
                    continue
                for m_ in stab.elements():
                    covered |= 1 << G.mul[n][m_]
                c = conjugate_character(G, G.mul[gsel][n], rep.character)
                rows[tpos][table.hom_pos(tpos, c.vec)] += 1
        res.check(
            gb.entries == tuple(tuple(x) for x in rows),
            f"ghost basis expansion mismatch at orbit {o}",
        )
        res.check(
            gb.entries not in seen, f"ghost basis collision at orbit {o}"
        )
        seen[gb.entries] = o
    return res


def run_all_suites(
    table: SubcharacterTable, *, seed: int = 0, samples: int = 100
) -> list:
    rng = random.Random(seed)
    return [
        suite_construction(table),
        suite_mult_coeff_properties(table, rng, samples),
        suite_mark_properties(table, rng, samples),
        suite_ring_axioms(table),
        suite_ghost_identities(table),
        suite_ghost_basis(table),
    ]


def run_ghost_suites(table: SubcharacterTable) -> list:
    return [suite_ghost_identities(table), suite_ghost_basis(table)]
