"""Non-cyclic fibers exercise the same machinery: full property suites
and the species pipeline over product fibers."""

from __future__ import annotations

import pytest

from fibered_burnside.fibers import parse_fiber
from fibered_burnside.species import (
    find_species_iso,
    lift_to_subchar_bijection,
    verify_marks_and_ghost,
    verify_subchar_coeffs,
)
from fibered_burnside.verify import run_all_suites

from conftest import get_group, get_table


@pytest.mark.parametrize("name,fiber", [
    ("D10", "C10"),
    ("Q8", "C2xC4"),
    ("A4", "C2xC6"),
    ("C2xC6", "C2xC2"),
])
def test_property_suites_over_product_fibers(name, fiber):
    results = run_all_suites(get_table(name, fiber), samples=50)
    assert all(r.ok for r in results), [f for r in results for f in r.failures][:5]


def test_suites_on_elementary_abelian_nine():
    # not in the catalog; exercises hom enumeration for odd-prime
    # elementary abelian groups (four lines of C3 through the lattice)
    from fibered_burnside.groups import build_group
    from fibered_burnside.subchars import build_table

    G = build_group({"name": "C3xC3",
                     "perm_gens": [[2, 3, 1, 4, 5, 6], [1, 2, 3, 5, 6, 4]]})
    t = build_table(G, parse_fiber("C3"))
    assert t.num_orbits == 22  # 1 + 4 lines x 3 chars + 9 on the whole group
    results = run_all_suites(t, samples=50)
    assert all(r.ok for r in results), [f for r in results for f in r.failures][:5]


def test_species_pipeline_over_product_fiber():
    G = get_group("Q8")
    # renumber the non-identity elements; -1 stays at index 1
    perm = [0, 1, 4, 6, 2, 7, 3, 5]
    inv = [0] * 8
    for i, v in enumerate(perm):
        inv[v] = i
    from fibered_burnside.groups import build_group

    H = build_group({
        "name": "Q8'",
        "cayley": [[inv[G.mul[perm[i]][perm[j]]] for j in range(8)] for i in range(8)],
    })
    A = parse_fiber("C2xC4")
    m = find_species_iso(G, H, A)
    assert m is not None
    bij = lift_to_subchar_bijection(m)
    assert verify_subchar_coeffs(bij)
    assert verify_marks_and_ghost(bij)
