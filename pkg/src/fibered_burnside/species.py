"""Search for and verify species isomorphisms between two fibered
Burnside rings over the same fiber.

A species isomorphism maps standard basis elements to standard basis
elements, so the search space is orbit bijections.  The search backtracks
over fingerprint classes in descending subgroup order with incremental
mark-row pruning, and verifies full coefficient preservation on
completion; the subcharacter-level bijection is lifted afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from .errors import InternalConsistencyError
from .fibers import FiberGroup, char_inverse, char_product, conjugate_character
from .ghost import GhostElement, ghost_basis, ghost_multiply
from .groups import (
    GROUP_ORDER_CAP,
    FiniteGroup,
    Subgroup,
    centralizer_mask,
    closure_mask,
    iter_bits,
    subgroup_label,
)
from .ring import basis_product, item_orbit_marks, mark_table, orbit_marks
from .subchars import SubcharacterTable, build_table


class Fingerprint(NamedTuple):
    """Invariants any species isomorphism must preserve orbit by orbit."""

    subgroup_order: int
    orbit_size: int
    self_mark: int
    trivial_char: bool
    poset_level: int
    mark_row: tuple
    mark_col: tuple


def _poset_levels(table: SubcharacterTable) -> list:
    r = table.num_orbits
    levels = [-1] * r
    order = sorted(range(r), key=lambda o: table.rep(o).subgroup.order)
    for o in order:
        below = [
            levels[p] for p in range(r) if p != o and table.leq[p][o]
        ]
        levels[o] = 1 + max(below) if below else 0
    return levels


def fingerprint(table: SubcharacterTable, o: int) -> Fingerprint:
    """Canonical matching record of an orbit; equal fingerprints are a
    necessary condition for two orbits to correspond under any species
    isomorphism."""
    cache = table._cache.get("fingerprints")
    if cache is None:
        om = orbit_marks(table)
        levels = _poset_levels(table)
        r = table.num_orbits
        cache = [
            Fingerprint(
                subgroup_order=table.rep(p).subgroup.order,
                orbit_size=table.orbit_sizes[p],
                self_mark=om[p][p],
                trivial_char=table.is_trivial_orbit(p),
                poset_level=levels[p],
                mark_row=tuple(sorted(om[p])),
                mark_col=tuple(sorted(om[q][p] for q in range(r))),
            )
            for p in range(r)
        ]
        table._cache["fingerprints"] = cache
    return cache[o]


@dataclass(frozen=True)
class SpeciesMap:
    """An orbit bijection between two subcharacter tables that preserves
    all marks and multiplication coefficients."""

    source: SubcharacterTable = field(compare=False)
    target: SubcharacterTable = field(compare=False)
    orbit_map: tuple[int, ...]

    def __repr__(self):
        return f"SpeciesMap({list(self.orbit_map)})"


def _products_match(tS, tT, assign) -> bool:
    r = tS.num_orbits
    for i in range(r):
        ti = assign[i]
        for j in range(r):
            mapped = {assign[t]: c for t, c in basis_product(tS, i, j).items()}
            if mapped != basis_product(tT, ti, assign[j]):
                return False
    return True


def iter_species_maps(tS: SubcharacterTable, tT: SubcharacterTable) -> Iterator[SpeciesMap]:
    """All species maps between two tables, in deterministic order.

    Pruning: group orders and fingerprint multisets must agree up front;
    assignment proceeds by descending subgroup order, checking the mark
    rows and columns against every previous assignment; completed
    assignments get the full coefficient check.
    """
    if tS.group.order != tT.group.order:
        return
    if tS.fiber.invariants != tT.fiber.invariants:
        return
    r = tS.num_orbits
    if r != tT.num_orbits:
        return
    fpS = [fingerprint(tS, o) for o in range(r)]
    fpT = [fingerprint(tT, o) for o in range(r)]
    if sorted(fpS) != sorted(fpT):
        return
    cand = {o: [p for p in range(r) if fpT[p] == fpS[o]] for o in range(r)}
    order = sorted(range(r), key=lambda o: (-tS.rep(o).subgroup.order, o))
    mS, mT = orbit_marks(tS), orbit_marks(tT)

    assign = [-1] * r
    used = [False] * r
    assigned: list[int] = []

    def extend(k: int) -> Iterator[SpeciesMap]:
        if k == r:
            if _products_match(tS, tT, assign):
                yield SpeciesMap(tS, tT, tuple(assign))
            return
        o = order[k]
        rowS = mS[o]
        for p in cand[o]:
            if used[p]:
                continue
            rowT = mT[p]
            if any(
                rowS[q] != rowT[assign[q]] or mS[q][o] != mT[assign[q]][p]
                for q in assigned
            ):
                continue
            assign[o] = p
            used[p] = True
            assigned.append(o)
            yield from extend(k + 1)
            assigned.pop()
            used[p] = False
            assign[o] = -1

    yield from extend(0)


def find_species_iso(
    G: FiniteGroup,
    H: FiniteGroup,
    A: FiberGroup,
    *,
    max_order: int = GROUP_ORDER_CAP,
) -> Optional[SpeciesMap]:
    """First species isomorphism between the fibered Burnside rings of G
    and H over A, or None.  Group-order mismatch is a None, not an error."""
    if G.order != H.order:
        return None
    tS = build_table(G, A, max_order=max_order)
    tT = build_table(H, A, max_order=max_order)
    return next(iter_species_maps(tS, tT), None)


def find_all_species_isos(
    G: FiniteGroup,
    H: FiniteGroup,
    A: FiberGroup,
    *,
    max_order: int = GROUP_ORDER_CAP,
) -> list:
    if G.order != H.order:
        return []
    tS = build_table(G, A, max_order=max_order)
    tT = build_table(H, A, max_order=max_order)
    return list(iter_species_maps(tS, tT))


def orbit_map_preserves_structure(
    tS: SubcharacterTable, tT: SubcharacterTable, assign
) -> bool:
    """Check an arbitrary orbit bijection for full mark and coefficient
    preservation (used both for verification and for exhaustive scans)."""
    r = tS.num_orbits
    if sorted(assign) != list(range(r)) or tT.num_orbits != r:
        return False
    mS, mT = orbit_marks(tS), orbit_marks(tT)
    for i in range(r):
        for j in range(r):
            if mS[i][j] != mT[assign[i]][assign[j]]:
                return False
    return _products_match(tS, tT, list(assign))


def verify_orbit_map(m: SpeciesMap) -> bool:
    """Orbit-level verification: every mark and every multiplication
    coefficient is preserved."""
    return orbit_map_preserves_structure(m.source, m.target, m.orbit_map)


@dataclass(frozen=True)
class SubcharBijection:
    """A subcharacter-level bijection of product form: a subgroup bijection
    plus one character bijection per subgroup."""

    source: SubcharacterTable = field(compare=False)
    target: SubcharacterTable = field(compare=False)
    theta_sub: tuple[int, ...]  # source subgroup position -> target position
    theta_char: tuple[tuple[int, ...], ...]  # per source subgroup position

    def apply_positions(self, spos: int, cpos: int) -> tuple[int, int]:
        return self.theta_sub[spos], self.theta_char[spos][cpos]

    def apply_item(self, i: int) -> int:
        spos, cpos = self.source.sub_char_of_item[i]
        tp, cp = self.apply_positions(spos, cpos)
        return self.target.item_id_by_sub_char[tp][cp]

    def image_orbit(self, o: int) -> int:
        return self.target.orbit_of[self.apply_item(self.source.orbit_reps[o])]


def lift_to_subchar_bijection(m: SpeciesMap) -> SubcharBijection:
    """Refine a verified orbit map to a bijection (K, phi) -> (R, rho) of
    product form.

    The subgroup part matches conjugacy classes through the
    trivial-character orbits and pairs class members in canonical order;
    the character part matches, for each subgroup, the character sets of
    corresponding orbits in canonical order.  Any orbit-compatible choice
    satisfies the subcharacter-level coefficient condition; the canonical
    one keeps outputs reproducible.
    """
    if not verify_orbit_map(m):
        raise ValueError("orbit map does not preserve marks and coefficients")
    tS, tT = m.source, m.target
    csS, csT = tS.classification, tT.classification

    theta_sub = [-1] * len(csS.all)
    for members in csS.classes:
        spos = members[0]
        o = tS.orbit_of_pair(spos, tS.trivial_char_pos(spos))
        o2 = m.orbit_map[o]
        rep2 = tT.rep(o2)
        if not rep2.character.is_trivial:
            raise InternalConsistencyError(
                "trivial-character orbit mapped to a nontrivial one"
            )
        tpos_rep = tT.sub_pos(rep2.subgroup.members)
        tgt_members = csT.classes[csT.class_of[tpos_rep]]
        if len(tgt_members) != len(members):
            raise InternalConsistencyError("conjugacy class sizes disagree")
        for a, b in zip(members, tgt_members):
            theta_sub[a] = b

    theta_char = []
    for spos in range(len(csS.all)):
        tpos = theta_sub[spos]
        hS, hT = tS.homs[spos], tT.homs[tpos]
        if len(hS) != len(hT):
            raise InternalConsistencyError("character counts disagree")
        mapping = [-1] * len(hS)
        done = 0
        for cpos in range(len(hS)):
            if mapping[cpos] >= 0:
                continue
            o = tS.orbit_of_pair(spos, cpos)
            o2 = m.orbit_map[o]
            src = [
                p for p in range(len(hS)) if tS.orbit_of_pair(spos, p) == o
            ]
            tgt = [
                p for p in range(len(hT)) if tT.orbit_of_pair(tpos, p) == o2
            ]
            if len(src) != len(tgt):
                raise InternalConsistencyError("character orbit sizes disagree")
            for a, b in zip(src, tgt):
                mapping[a] = b
            done += len(src)
        assert done == len(hS)
        theta_char.append(tuple(mapping))

    out = SubcharBijection(tS, tT, tuple(theta_sub), tuple(theta_char))
    # the trivial character must go to the trivial character everywhere
    for spos in range(len(csS.all)):
        c0 = tS.trivial_char_pos(spos)
        if out.theta_char[spos][c0] != tT.trivial_char_pos(out.theta_sub[spos]):
            raise InternalConsistencyError("trivial character not preserved")
    return out


def _image_orbit_pairs(bij: SubcharBijection) -> list:
    tS, tT = bij.source, bij.target
    return sorted(
        {
            (tS.orbit_of[i], tT.orbit_of[bij.apply_item(i)])
            for i in range(len(tS.items))
        }
    )


def verify_subchar_coeffs(bij: SubcharBijection) -> bool:
    """Subcharacter-level check: multiplication coefficients agree on all
    triples of subcharacters, evaluated through their orbits."""
    tS, tT = bij.source, bij.target
    pairs = _image_orbit_pairs(bij)
    for o1, p1 in pairs:
        for o2, p2 in pairs:
            prodS = basis_product(tS, o1, o2)
            prodT = basis_product(tT, p1, p2)
            for o3, p3 in pairs:
                if prodS.get(o3, 0) != prodT.get(p3, 0):
                    return False
    return True


@dataclass(frozen=True)
class GhostRingMap:
    """The linear extension of basis-to-basis transport induced by a
    subcharacter bijection on the ghost rings."""

    bijection: SubcharBijection
    orbit_image: tuple[int, ...]

    def __call__(self, u: GhostElement) -> GhostElement:
        tS = self.bijection.source
        tT = self.bijection.target
        assert u.table is tS
        flat = [v for row in u.entries for v in row]
        out = [[0] * len(hs) for hs in tT.homs]
        for o in range(tS.num_orbits):
            vals = {flat[i] for i in tS.orbit_items[o]}
            if len(vals) != 1:
                raise ValueError("element is not conjugation invariant")
            c = vals.pop()
            if c == 0:
                continue
            for j in tT.orbit_items[self.orbit_image[o]]:
                tp, cp = tT.sub_char_of_item[j]
                out[tp][cp] += c
        return GhostElement(tT, tuple(tuple(r) for r in out))


def build_ghost_iso(bij: SubcharBijection) -> GhostRingMap:
    """Transport ghost basis elements along the bijection, extended
    linearly.  Meaningful as a ring map when the bijection preserves
    coefficients (or marks plus multiplicativity)."""
    img = tuple(
        bij.target.orbit_of[bij.apply_item(bij.source.orbit_reps[o])]
        for o in range(bij.source.num_orbits)
    )
    return GhostRingMap(bij, img)


def verify_marks_and_ghost(bij: SubcharBijection) -> bool:
    """Check that all marks are preserved at subcharacter level and that
    the induced ghost map is a ring isomorphism on basis pairs."""
    tS, tT = bij.source, bij.target
    iomS, iomT = item_orbit_marks(tS), item_orbit_marks(tT)
    images = [bij.apply_item(i) for i in range(len(tS.items))]
    for i in range(len(tS.items)):
        for j in range(len(tS.items)):
            if (
                iomS[i][tS.orbit_of[j]]
                != iomT[images[i]][tT.orbit_of[images[j]]]
            ):
                return False

    gm = build_ghost_iso(bij)
    r = tS.num_orbits
    if sorted(gm.orbit_image) != list(range(r)):
        return False
    basS = [ghost_basis(tS, o) for o in range(r)]
    basT = [ghost_basis(tT, gm.orbit_image[o]) for o in range(r)]
    for o1 in range(r):
        for o2 in range(r):
            lhs = gm(ghost_multiply(basS[o1], basS[o2]))
            rhs = ghost_multiply(basT[o1], basT[o2])
            if lhs != rhs:
                return False
    return True


def _kc_equals_normalizer(G: FiniteGroup, K: Subgroup, normalizer: Subgroup) -> bool:
    cmask = centralizer_mask(G, K)
    prod = 0
    for k in K.elements():
        row = G.mul[k]
        for c in iter_bits(cmask):
            prod |= 1 << row[c]
    return prod == normalizer.members


def check_iso_invariants(m: SpeciesMap, bij: SubcharBijection) -> dict:
    """Assert every proved consequence of a species isomorphism on a found
    map; returns a report.  A failed assertion here is a bug, so it raises
    rather than reporting false."""
    tS, tT = m.source, m.target
    G, H = tS.group, tT.group
    r = tS.num_orbits
    report: dict = {}

    def require(name: str, ok: bool):
        if not ok:
            raise InternalConsistencyError(f"proved consequence failed: {name}")
        report[name] = True

    require("group_orders_equal", G.order == H.order)
    require("identity_orbit_preserved", m.orbit_map[tS.identity_orbit()] == tT.identity_orbit())
    require("bottom_orbit_preserved", m.orbit_map[tS.bottom_orbit()] == tT.bottom_orbit())
    require(
        "subgroup_orders_preserved",
        all(
            tS.rep(o).subgroup.order == tT.rep(m.orbit_map[o]).subgroup.order
            for o in range(r)
        ),
    )
    require(
        "orbit_sizes_preserved",
        all(tS.orbit_sizes[o] == tT.orbit_sizes[m.orbit_map[o]] for o in range(r)),
    )
    require(
        "poset_isomorphism",
        all(
            tS.leq[o1][o2] == tT.leq[m.orbit_map[o1]][m.orbit_map[o2]]
            for o1 in range(r)
            for o2 in range(r)
        ),
    )
    require(
        "trivial_char_orbits_preserved",
        all(
            tS.is_trivial_orbit(o) == tT.is_trivial_orbit(m.orbit_map[o])
            for o in range(r)
        ),
    )

    mtS = mark_table(tS)
    omT = orbit_marks(tT)
    require(
        "mark_matrix_equal",
        all(
            mtS.matrix[i][j]
            == omT[m.orbit_map[mtS.order[i]]][m.orbit_map[mtS.order[j]]]
            for i in range(r)
            for j in range(r)
        ),
    )
    # the restriction to trivial-character orbits is a mark table
    # isomorphism of the plain Burnside rings
    trivS = [o for o in mtS.order if tS.is_trivial_orbit(o)]
    omS = orbit_marks(tS)
    require(
        "burnside_restriction",
        all(
            omS[o1][o2] == omT[m.orbit_map[o1]][m.orbit_map[o2]]
            for o1 in trivS
            for o2 in trivS
        ),
    )

    inv_ok = True
    for o in range(r):
        a = tS.rep(o)
        ia = char_inverse(a.character)
        o_inv = tS.orbit_of[tS.item_id_of(a.subgroup.members, ia.vec)]
        b = tT.rep(m.orbit_map[o])
        ib = char_inverse(b.character)
        t_inv = tT.orbit_of[tT.item_id_of(b.subgroup.members, ib.vec)]
        if m.orbit_map[o_inv] != t_inv:
            inv_ok = False
            break
    require("inverse_orbits_compatible", inv_ok)

    # products of characters on one subgroup map to products up to
    # conjugation by the target normalizer
    prod_ok = True
    for spos in tS.classification.class_reps:
        tpos = bij.theta_sub[spos]
        K = tS.classification.all[spos]
        R = tT.classification.all[tpos]
        normT = tT.classification.normalizers[tpos]
        hS = tS.homs[spos]
        for c1 in range(len(hS)):
            rho = tT.homs[tpos][bij.theta_char[spos][c1]]
            for c2 in range(len(hS)):
                sigma = tT.homs[tpos][bij.theta_char[spos][c2]]
                prod = char_product(hS[c1], hS[c2])
                o_prod = tS.orbit_of[tS.item_id_of(K.members, prod.vec)]
                want = m.orbit_map[o_prod]
                found = False
                for s in normT.elements():
                    cand = char_product(rho, conjugate_character(H, s, sigma))
                    if tT.orbit_of[tT.item_id_of(R.members, cand.vec)] == want:
                        found = True
                        break
                if not found:
                    prod_ok = False
                    break
            if not prod_ok:
                break
        if not prod_ok:
            break
    require("products_up_to_normalizer_conjugacy", prod_ok)

    # character bijections are group isomorphisms whenever the normalizer
    # is generated by the subgroup and its centralizer on either side, or
    # the subgroup is self-normalized; elsewhere we only observe
    guaranteed: dict = {}
    observed: dict = {}
    for spos in range(len(tS.classification.all)):
        K = tS.classification.all[spos]
        tpos = bij.theta_sub[spos]
        R = tT.classification.all[tpos]
        normS = tS.classification.normalizers[spos]
        normT = tT.classification.normalizers[tpos]
        mult = _theta_multiplicative(bij, spos)
        cond = (
            _kc_equals_normalizer(G, K, normS)
            or _kc_equals_normalizer(H, R, normT)
            or normS.members == K.members
        )
        label = subgroup_label(G, K)
        if cond:
            if not mult:
                raise InternalConsistencyError(
                    f"character map must be multiplicative on {label}"
                )
            guaranteed[label] = True
        else:
            observed[label] = mult
    report["theta_multiplicative_guaranteed"] = guaranteed
    report["theta_multiplicative_observed"] = observed

    _require_center_and_top(tS, bij, report)
    return report


def _theta_multiplicative(bij: SubcharBijection, spos: int) -> bool:
    tS, tT = bij.source, bij.target
    tpos = bij.theta_sub[spos]
    hS, hT = tS.homs[spos], tT.homs[tpos]
    th = bij.theta_char[spos]
    for i, a in enumerate(hS):
        for j, b in enumerate(hS):
            k = tS.hom_pos(spos, char_product(a, b).vec)
            kt = tT.hom_pos(tpos, char_product(hT[th[i]], hT[th[j]]).vec)
            if th[k] != kt:
                return False
    return True


def _require_center_and_top(tS: SubcharacterTable, bij: SubcharBijection, report: dict):
    G = tS.group
    full = (1 << G.order) - 1
    center = centralizer_mask(G, Subgroup(full, G.order))
    for name, members in (("whole_group", full), ("center", center)):
        spos = tS.sub_pos(closure_mask(G, members))
        if not _theta_multiplicative(bij, spos):
            raise InternalConsistencyError(
                f"character map on the {name} must be multiplicative"
            )
        report[f"theta_multiplicative_{name}"] = True
