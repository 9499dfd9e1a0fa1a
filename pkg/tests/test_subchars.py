"""Subcharacter tables: orbits, stabilizers, and the orbit poset, checked
against direct enumeration."""

from __future__ import annotations

import pytest

from fibered_burnside.fibers import conjugate_character, hom_set, parse_fiber
from fibered_burnside.groups import Subgroup, subgroups
from fibered_burnside.subchars import (
    Subcharacter,
    orbit_leq,
    stabilizer,
    subchar_leq,
)

from conftest import get_group, get_table


def direct_orbit(table, item):
    """Orbit of a subcharacter by raw conjugation, as a set of keys."""
    G = table.group
    out = set()
    for g in range(G.order):
        c = conjugate_character(G, g, item.character)
        out.add((c.domain.members, c.vec))
    return out


@pytest.mark.parametrize(
    "name,fiber,orbits",
    [
        ("C1", "C6", 1),
        ("C4", "C2", 5),
        ("S3", "C6", 7),
        ("C2xC2", "C2", 11),
        ("C4", "C5", 3),
    ],
)
def test_orbit_counts(name, fiber, orbits):
    assert get_table(name, fiber).num_orbits == orbits


@pytest.mark.parametrize("name,fiber", [
    ("S3", "C6"), ("D8", "C4"), ("A4", "C6"), ("C2xC4", "C2"),
])
def test_orbits_match_direct_enumeration(name, fiber):
    t = get_table(name, fiber)
    # item universe is exactly all (K, phi)
    expected = set()
    for K in subgroups(t.group).all:
        for c in hom_set(t.group, K, t.fiber):
            expected.add((K.members, c.vec))
    assert {it.key for it in t.items} == expected
    assert len(t.items) == sum(len(h) for h in t.homs)
    # orbit partition matches raw conjugation orbits
    for o in range(t.num_orbits):
        rep = t.rep(o)
        keys = {t.items[i].key for i in t.orbit_items[o]}
        assert keys == direct_orbit(t, rep)
    # representatives are canonical minima
    for o in range(t.num_orbits):
        assert t.orbit_reps[o] == min(t.orbit_items[o])
    assert list(t.orbit_reps) == sorted(t.orbit_reps)


def test_orbit_stabilizer_products():
    for name, fiber in [("S3", "C6"), ("D8", "C2"), ("A4", "auto")]:
        t = get_table(name, fiber)
        for o in range(t.num_orbits):
            assert t.orbit_sizes[o] * t.stabilizer_orders[o] == t.group.order


def test_stabilizer_examples():
    G = get_group("S3")
    A = parse_fiber("C6")
    t = get_table("S3", "C6")
    full = Subgroup((1 << 6) - 1, 6)
    # the bottom subcharacter is fixed by everything
    bottom = t.items[0]
    assert bottom.subgroup.order == 1
    assert stabilizer(G, bottom).members == full.members
    # whole-group subcharacters are fixed by everything
    for c in hom_set(G, full, A):
        assert stabilizer(G, Subcharacter(full, c)).members == full.members
    # a nontrivial character on the rotation subgroup is stabilized by it only
    C3 = next(K for K in subgroups(G).all if K.order == 3)
    chi = next(c for c in hom_set(G, C3, A) if not c.is_trivial)
    assert stabilizer(G, Subcharacter(C3, chi)).members == C3.members


def test_stabilizer_contains_subgroup_inside_normalizer():
    t = get_table("D12", "C6")
    G = t.group
    cls = t.classification
    for i, it in enumerate(t.items):
        st = t.stabilizers[t.orbit_of[i]]
        if i == t.orbit_reps[t.orbit_of[i]]:
            assert it.subgroup.members & ~st.members == 0
            norm = cls.normalizers[cls.position(it.subgroup.members)]
            assert st.members & ~norm.members == 0


def test_subchar_leq():
    t = get_table("C4", "C2")
    a0 = t.items[0]  # (1, 1)
    for it in t.items:
        assert subchar_leq(a0, it)
        assert subchar_leq(it, it)
    # nontrivial character on C2 is not below the trivial one on C4
    c2_chi = next(
        it for it in t.items if it.subgroup.order == 2 and not it.character.is_trivial
    )
    c4_triv = next(
        it for it in t.items if it.subgroup.order == 4 and it.character.is_trivial
    )
    assert not subchar_leq(c2_chi, c4_triv)
    assert not subchar_leq(c4_triv, c2_chi)


def test_orbit_leq_against_exhaustive_check():
    for name, fiber in [("S3", "C1"), ("S3", "C6"), ("D8", "C2"), ("A4", "C3")]:
        t = get_table(name, fiber)
        for o1 in range(t.num_orbits):
            rep1 = t.rep(o1)
            for o2 in range(t.num_orbits):
                expected = any(
                    subchar_leq(rep1, t.items[j]) for j in t.orbit_items[o2]
                )
                assert orbit_leq(t, o1, o2) == expected


def test_orbit_poset_axioms_and_monotonicity():
    for name, fiber in [("S3", "C6"), ("D8", "C4"), ("C12", "C12")]:
        t = get_table(name, fiber)
        r = t.num_orbits
        for o1 in range(r):
            assert t.leq[o1][o1]
            for o2 in range(r):
                if t.leq[o1][o2] and t.leq[o2][o1]:
                    assert o1 == o2
                if t.leq[o1][o2]:
                    assert t.rep(o1).subgroup.order <= t.rep(o2).subgroup.order
                for o3 in range(r):
                    if t.leq[o1][o2] and t.leq[o2][o3]:
                        assert t.leq[o1][o3]


def test_c2_orbits_of_s3_separate_from_c3():
    t = get_table("S3", "C1")
    byorder = {t.rep(o).subgroup.order: o for o in range(t.num_orbits)}
    assert not orbit_leq(t, byorder[2], byorder[3])
    assert not orbit_leq(t, byorder[3], byorder[2])
