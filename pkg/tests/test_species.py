"""Species isomorphism search, lifting, the induced ghost map, and the
equivalence of the verification routes."""

from __future__ import annotations

import itertools

import pytest

from fibered_burnside.fibers import parse_fiber
from fibered_burnside.ghost import ghost_basis, ghost_identity, mark_morphism
from fibered_burnside.groups import build_group
from fibered_burnside.ring import RingElement
from fibered_burnside.species import (
    SpeciesMap,
    SubcharBijection,
    build_ghost_iso,
    check_iso_invariants,
    find_all_species_isos,
    find_species_iso,
    fingerprint,
    iter_species_maps,
    lift_to_subchar_bijection,
    orbit_map_preserves_structure,
    verify_marks_and_ghost,
    verify_orbit_map,
    verify_subchar_coeffs,
)
from fibered_burnside.subchars import build_table

from conftest import get_group, get_table


def relabeled_copy(name, perm):
    """Same group with element indices renumbered by ``perm`` (fixing 0)."""
    G = get_group(name)
    n = G.order
    assert perm[0] == 0 and sorted(perm) == list(range(n))
    inv = [0] * n
    for i, v in enumerate(perm):
        inv[v] = i
    table = [[inv[G.mul[perm[i]][perm[j]]] for j in range(n)] for i in range(n)]
    return build_group({"name": f"{name}-relabeled", "cayley": table})


# -- fingerprints -------------------------------------------------------------


def test_fingerprint_pins_extremes():
    t = get_table("S3", "C6")
    fps = [fingerprint(t, o) for o in range(t.num_orbits)]
    bottom = t.bottom_orbit()
    assert [fp.subgroup_order for fp in fps].count(1) == 1
    assert fps[bottom].subgroup_order == 1
    top = t.identity_orbit()
    assert fps[top].subgroup_order == t.group.order
    assert fps[top].trivial_char


def test_fingerprint_multisets_distinguish():
    tC4 = get_table("C4", "C2")
    tV4 = get_table("C2xC2", "C2")
    assert tC4.num_orbits == 5 and tV4.num_orbits == 11
    assert sorted(fingerprint(tC4, o) for o in range(5)) != sorted(
        fingerprint(tV4, o) for o in range(11)
    )[:5]


# -- search: negative cases -----------------------------------------------------


def test_no_iso_c4_vs_klein():
    A = parse_fiber("C2")
    assert find_species_iso(get_group("C4"), get_group("C2xC2"), A) is None
    assert find_all_species_isos(get_group("C4"), get_group("C2xC2"), A) == []


def test_no_iso_c6_vs_s3_plain_burnside():
    A = parse_fiber("C1")
    assert find_species_iso(get_group("C6"), get_group("S3"), A) is None


def test_no_iso_on_order_mismatch():
    A = parse_fiber("C1")
    assert find_species_iso(get_group("C4"), get_group("S3"), A) is None


def test_no_iso_d8_vs_q8():
    # different subgroup counts force different ranks already over C1
    A = parse_fiber("C1")
    assert find_species_iso(get_group("D8"), get_group("Q8"), A) is None


def test_no_iso_between_nonisomorphic_abelian_groups():
    assert find_species_iso(get_group("C8"), get_group("C2xC4"), parse_fiber("C2")) is None
    assert find_species_iso(get_group("C12"), get_group("C2xC6"), parse_fiber("C2")) is None
    assert find_species_iso(get_group("C10"), get_group("D10"), parse_fiber("C1")) is None


# -- search: positive cases ------------------------------------------------------


def test_identity_map_on_same_table():
    for name, fiber in [("S3", "C6"), ("D8", "C2")]:
        G = get_group(name)
        A = parse_fiber(fiber, G.exponent())
        m = find_species_iso(G, G, A)
        assert m is not None
        assert m.orbit_map == tuple(range(m.source.num_orbits))
        assert verify_orbit_map(m)


def test_s3_on_different_generators():
    G = get_group("S3")
    H = build_group({"name": "S3'", "perm_gens": [[2, 1, 3], [1, 3, 2]]})
    A = parse_fiber("auto", 6)
    m = find_species_iso(G, H, A)
    assert m is not None
    assert verify_orbit_map(m)
    bij = lift_to_subchar_bijection(m)
    assert verify_subchar_coeffs(bij)
    assert verify_marks_and_ghost(bij)
    check_iso_invariants(m, bij)


def test_d8_permutations_vs_cayley_table():
    G = get_group("D8")
    H = relabeled_copy("D8", [0, 3, 5, 1, 6, 2, 7, 4])
    A = parse_fiber("auto", 4)
    m = find_species_iso(G, H, A)
    assert m is not None
    bij = lift_to_subchar_bijection(m)
    assert verify_subchar_coeffs(bij)
    assert verify_marks_and_ghost(bij)
    report = check_iso_invariants(m, bij)
    assert report["theta_multiplicative_whole_group"]


def test_abelian_group_all_character_maps_multiplicative():
    G = get_group("C2xC4")
    H = relabeled_copy("C2xC4", [0, 4, 2, 6, 1, 5, 3, 7])
    A = parse_fiber("auto", 4)
    m = find_species_iso(G, H, A)
    assert m is not None
    bij = lift_to_subchar_bijection(m)
    report = check_iso_invariants(m, bij)
    assert report["theta_multiplicative_observed"] == {}  # all guaranteed
    assert all(report["theta_multiplicative_guaranteed"].values())


def test_all_isos_mode_enumerates_automorphisms():
    G = get_group("C4")
    A = parse_fiber("C4")
    maps = find_all_species_isos(G, G, A)
    assert len(maps) >= 1
    assert all(verify_orbit_map(m) for m in maps)
    assert maps[0].orbit_map == tuple(range(maps[0].source.num_orbits))
    # deterministic order
    again = find_all_species_isos(G, A=A, H=G)
    assert [m.orbit_map for m in maps] == [m.orbit_map for m in again]


# -- lifted bijections ------------------------------------------------------------


def test_lift_identity():
    t = get_table("S3", "C6")
    m = SpeciesMap(t, t, tuple(range(t.num_orbits)))
    bij = lift_to_subchar_bijection(m)
    assert bij.theta_sub == tuple(range(len(t.classification.all)))
    for spos, mapping in enumerate(bij.theta_char):
        assert mapping == tuple(range(len(t.homs[spos])))


def test_lift_respects_orbits_and_trivial_char():
    G = get_group("D12")
    H = relabeled_copy("D12", [0, 2, 1, 4, 3, 6, 5, 8, 7, 10, 9, 11])
    A = parse_fiber("C6")
    m = find_species_iso(G, H, A)
    assert m is not None
    bij = lift_to_subchar_bijection(m)
    tS, tT = m.source, m.target
    for i in range(len(tS.items)):
        j = bij.apply_item(i)
        assert tT.orbit_of[j] == m.orbit_map[tS.orbit_of[i]]
    for spos in range(len(tS.classification.all)):
        c0 = tS.trivial_char_pos(spos)
        assert bij.theta_char[spos][c0] == tT.trivial_char_pos(bij.theta_sub[spos])


def test_lift_rejects_bad_map():
    t = get_table("C4", "C2")
    # swap two orbits with different subgroup orders: not structure preserving
    m = list(range(t.num_orbits))
    o_bottom = t.bottom_orbit()
    o_top = t.identity_orbit()
    m[o_bottom], m[o_top] = m[o_top], m[o_bottom]
    bad = SpeciesMap(t, t, tuple(m))
    assert not verify_orbit_map(bad)
    with pytest.raises(ValueError):
        lift_to_subchar_bijection(bad)


def corrupt_character_map(bij):
    """Swap two character images on one subgroup across different orbits."""
    tS, tT = bij.source, bij.target
    for spos in range(len(tS.classification.all)):
        mapping = list(bij.theta_char[spos])
        orbits = [tS.orbit_of_pair(spos, cp) for cp in range(len(mapping))]
        for a in range(len(mapping)):
            for b in range(a + 1, len(mapping)):
                if orbits[a] != orbits[b]:
                    mapping[a], mapping[b] = mapping[b], mapping[a]
                    theta_char = list(bij.theta_char)
                    theta_char[spos] = tuple(mapping)
                    return SubcharBijection(
                        tS, tT, bij.theta_sub, tuple(theta_char)
                    )
    raise AssertionError("nothing to corrupt")


def test_corrupted_bijection_fails_verification():
    G = get_group("S3")
    A = parse_fiber("C6")
    m = find_species_iso(G, G, A)
    bij = lift_to_subchar_bijection(m)
    bad = corrupt_character_map(bij)
    assert not verify_subchar_coeffs(bad)
    assert not verify_marks_and_ghost(bad)


# -- ghost extension ---------------------------------------------------------------


def test_ghost_iso_identity_bijection():
    t = get_table("C4", "C2")
    m = SpeciesMap(t, t, tuple(range(t.num_orbits)))
    gm = build_ghost_iso(lift_to_subchar_bijection(m))
    for o in range(t.num_orbits):
        assert gm(ghost_basis(t, o)) == ghost_basis(t, o)
    assert gm(ghost_identity(t)) == ghost_identity(t)


def test_ghost_iso_diagram_commutes():
    G = get_group("S3")
    H = build_group({"name": "S3'", "perm_gens": [[3, 2, 1], [2, 1, 3]]})
    A = parse_fiber("auto", 6)
    m = find_species_iso(G, H, A)
    bij = lift_to_subchar_bijection(m)
    gm = build_ghost_iso(bij)
    tS, tT = m.source, m.target
    for o in range(tS.num_orbits):
        # transporting the basis element then marking equals marking then
        # transporting through the ghost map
        lhs = gm(mark_morphism(RingElement.basis(tS, o)))
        rhs = mark_morphism(RingElement.basis(tT, m.orbit_map[o]))
        assert lhs == rhs
    # and on a non-basis element
    x = RingElement.from_dict(tS, {0: 2, 3: -5})
    xi = RingElement.from_dict(tT, {m.orbit_map[0]: 2, m.orbit_map[3]: -5})
    assert gm(mark_morphism(x)) == mark_morphism(xi)


def test_ghost_iso_rejects_non_invariant_input():
    t = get_table("S3", "C6")
    m = SpeciesMap(t, t, tuple(range(t.num_orbits)))
    gm = build_ghost_iso(lift_to_subchar_bijection(m))
    from fibered_burnside.ghost import GhostElement

    rows = [list(row) for row in ghost_identity(t).entries]
    # break invariance on a non-singleton orbit
    o = next(o for o in range(t.num_orbits) if t.orbit_sizes[o] > 1)
    spos, cpos = t.sub_char_of_item[t.orbit_items[o][0]]
    rows[spos][cpos] += 1
    bad = GhostElement(t, tuple(tuple(r) for r in rows))
    with pytest.raises(ValueError):
        gm(bad)


# -- equivalence of the verification routes -----------------------------------------


def all_structure_preserving_bijections(tS, tT):
    """Brute force over every orbit bijection (oracle for the search)."""
    r = tS.num_orbits
    if tT.num_orbits != r:
        return []
    out = []
    for perm in itertools.permutations(range(r)):
        if orbit_map_preserves_structure(tS, tT, list(perm)):
            out.append(perm)
    return out


SMALL_INSTANCES = [
    ("C1", "C1", "C2"),
    ("C2", "C2", "C2"),
    ("C3", "C3", "C3"),
    ("C4", "C4", "C2"),
    ("C4", "C2xC2", "C2"),
    ("C6", "S3", "C1"),
    ("S3", "S3", "C1"),
    ("C6", "C6", "C2"),
    ("C5", "C5", "C5"),
]


@pytest.mark.parametrize("nameG,nameH,fiber", SMALL_INSTANCES)
def test_search_agrees_with_brute_force(nameG, nameH, fiber):
    G, H = get_group(nameG), get_group(nameH)
    A = parse_fiber(fiber)
    tS, tT = build_table(G, A), build_table(H, A)
    if max(tS.num_orbits, tT.num_orbits) > 6 and tS.num_orbits == tT.num_orbits:
        pytest.skip("instance too large for the brute-force scan")
    brute = all_structure_preserving_bijections(tS, tT)
    searched = [m.orbit_map for m in iter_species_maps(tS, tT)]
    assert sorted(searched) == sorted(brute)


def test_search_complete_at_rank_seven():
    # one size past the acceptance scan limit: the search still finds
    # exactly the bijections the full 7! enumeration accepts
    t = get_table("C4", "C4")
    assert t.num_orbits == 7
    brute = [
        p
        for p in itertools.permutations(range(7))
        if orbit_map_preserves_structure(t, t, list(p))
    ]
    searched = [m.orbit_map for m in iter_species_maps(t, t)]
    assert sorted(searched) == sorted(brute)
    assert len(searched) == 2  # identity and the character-inverting map


@pytest.mark.parametrize("nameG,nameH,fiber", SMALL_INSTANCES)
def test_verification_routes_agree(nameG, nameH, fiber):
    G, H = get_group(nameG), get_group(nameH)
    A = parse_fiber(fiber)
    tS, tT = build_table(G, A), build_table(H, A)
    if max(tS.num_orbits, tT.num_orbits) > 6 and tS.num_orbits == tT.num_orbits:
        pytest.skip("instance too large for the brute-force scan")
    passing = all_structure_preserving_bijections(tS, tT)
    for perm in passing:
        m = SpeciesMap(tS, tT, tuple(perm))
        bij = lift_to_subchar_bijection(m)
        assert verify_subchar_coeffs(bij)
        assert verify_marks_and_ghost(bij)


def product_form_bijections(tS, tT, limit=200_000):
    """Every product-form subcharacter bijection on tiny instances."""
    nsub = len(tS.classification.all)
    if len(tT.classification.all) != nsub:
        return
    sizesS = [len(h) for h in tS.homs]
    sizesT = [len(h) for h in tT.homs]
    total = 1
    for perm in itertools.permutations(range(nsub)):
        if [sizesT[p] for p in perm] != sizesS:
            continue
        if any(
            tT.classification.all[perm[s]].order != tS.classification.all[s].order
            for s in range(nsub)
        ):
            continue
        spaces = []
        for s in range(nsub):
            spaces.append(list(itertools.permutations(range(sizesS[s]))))
        count = 1
        for sp in spaces:
            count *= len(sp)
        if count > limit:
            continue
        for combo in itertools.product(*spaces):
            yield SubcharBijection(tS, tT, tuple(perm), tuple(combo))


@pytest.mark.parametrize("nameG,nameH,fiber", [
    ("C2", "C2", "C2"),
    ("C3", "C3", "C3"),
    ("C4", "C4", "C2"),
    ("S3", "S3", "C1"),
    ("C6", "S3", "C1"),
])
def test_product_form_scan_equivalences(nameG, nameH, fiber):
    # on tiny instances, scan every product-form bijection: the ones that
    # preserve coefficients are exactly the ones passing the mark+ghost
    # route, and one exists exactly when the orbit-level search succeeds
    G, H = get_group(nameG), get_group(nameH)
    A = parse_fiber(fiber)
    tS, tT = build_table(G, A), build_table(H, A)
    any_coeff = False
    for bij in product_form_bijections(tS, tT):
        a = verify_subchar_coeffs(bij)
        b = verify_marks_and_ghost(bij)
        assert a == b
        any_coeff = any_coeff or a
    orbit_level = next(iter_species_maps(tS, tT), None) is not None
    assert any_coeff == orbit_level


# -- consequence checks --------------------------------------------------------------


def test_invariant_report_on_found_isos():
    cases = [
        ("S3", "S3", "C6"),
        ("C12", "C12", "C4"),
        ("A4", "A4", "C6"),
    ]
    for nameG, nameH, fiber in cases:
        G, H = get_group(nameG), get_group(nameH)
        A = parse_fiber(fiber)
        m = find_species_iso(G, H, A)
        assert m is not None
        bij = lift_to_subchar_bijection(m)
        report = check_iso_invariants(m, bij)
        for key in (
            "identity_orbit_preserved",
            "bottom_orbit_preserved",
            "subgroup_orders_preserved",
            "orbit_sizes_preserved",
            "poset_isomorphism",
            "mark_matrix_equal",
            "burnside_restriction",
            "trivial_char_orbits_preserved",
            "inverse_orbits_compatible",
            "products_up_to_normalizer_conjugacy",
            "theta_multiplicative_whole_group",
            "theta_multiplicative_center",
        ):
            assert report[key] is True
