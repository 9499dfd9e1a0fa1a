"""Command-line front end.

Loads groups from the built-in catalog or JSON files, builds subcharacter
tables over a chosen fiber, and emits tables, mark matrices, coefficient
queries, verification reports and species-isomorphism search results in
stable machine-readable form (JSON by default, TSV for matrices).

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .catalog import catalog
from .errors import GroupInputError
from .fibers import parse_fiber
from .groups import GROUP_ORDER_CAP, FiniteGroup, build_group, subgroup_generators
from .ring import basis_product, mark_table, orbit_marks
from .species import (
    check_iso_invariants,
    find_all_species_isos,
    find_species_iso,
    lift_to_subchar_bijection,
    verify_marks_and_ghost,
    verify_orbit_map,
    verify_subchar_coeffs,
)
from .subchars import SubcharacterTable, build_table
from .verify import run_all_suites, run_ghost_suites


def load_group(ref: str, max_order: int) -> FiniteGroup:
    """Resolve a catalog name or a JSON file path to a group."""
    records = catalog()
    if ref in records:
        return build_group(records[ref], max_order=max_order)
    path = Path(ref)
    if not path.exists():
        raise GroupInputError(f"unknown group {ref!r}: not a catalog name or file")
    try:
        record = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise GroupInputError(f"cannot parse {ref}: {e}") from None
    return build_group(record, max_order=max_order)


def resolve_fiber(spec: str, G: FiniteGroup, H: FiniteGroup | None = None):
    exp = G.exponent() if H is None else math.lcm(G.exponent(), H.exponent())
    return parse_fiber(spec, exp)


def orbit_descriptor(table: SubcharacterTable, o: int) -> dict:
    """Serializable description of an orbit: subgroup generator words plus
    the character's values on those generators."""
    rep = table.rep(o)
    G = table.group
    gens = subgroup_generators(G, rep.subgroup)
    return {
        "orbit": o,
        "subgroup_order": rep.subgroup.order,
        "subgroup_gens": [G.labels[x] for x in gens],
        "char_on_gens": [list(rep.character.values[x]) for x in gens],
        "trivial_char": rep.character.is_trivial,
        "orbit_size": table.orbit_sizes[o],
        "stabilizer_order": table.stabilizer_orders[o],
    }


def _orbit_label(table: SubcharacterTable, o: int) -> str:
    d = orbit_descriptor(table, o)
    gens = ",".join(d["subgroup_gens"]) or "1"
    chars = ";".join(",".join(str(v) for v in c) for c in d["char_on_gens"])
    return f"[{gens}|{chars}]" if chars else f"[{gens}|]"


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _emit_tsv_matrix(header: list, rows: list) -> None:
    out = ["\t".join(str(h) for h in header)]
    for row in rows:
        out.append("\t".join(str(v) for v in row))
    sys.stdout.write("\n".join(out) + "\n")


def table_payload(table: SubcharacterTable) -> dict:
    """Full table serialization; enough to check every structural field."""
    return {
        "group": table.group.name,
        "group_order": table.group.order,
        "fiber": table.fiber.spec(),
        "num_items": len(table.items),
        "num_orbits": table.num_orbits,
        "items": [
            {
                "subgroup": it.subgroup.elements(),
                "char_values": [list(v) for v in it.character.vec],
                "orbit": table.orbit_of[i],
            }
            for i, it in enumerate(table.items)
        ],
        "orbit_reps": list(table.orbit_reps),
        "orbit_sizes": list(table.orbit_sizes),
        "stabilizer_orders": list(table.stabilizer_orders),
        "orbits": [orbit_descriptor(table, o) for o in range(table.num_orbits)],
        "leq": [[int(v) for v in row] for row in table.leq],
    }


def _suite_payload(results) -> dict:
    return {
        "suites": [
            {
                "name": r.name,
                "checked": r.checked,
                "failures": len(r.failures),
                "messages": r.failures,
            }
            for r in results
        ],
        "ok": all(r.ok for r in results),
    }


def _print_suites(results) -> None:
    for r in results:
        status = "ok" if r.ok else "FAIL"
        sys.stdout.write(f"{r.name}\t{r.checked}\t{status}\n")
        for msg in r.failures:
            sys.stdout.write(f"\t{msg}\n")


def _map_payload(m, lift: bool) -> dict:
    tS, tT = m.source, m.target
    out = {
        "orbit_map": [
            {
                "source": orbit_descriptor(tS, o),
                "target": orbit_descriptor(tT, m.orbit_map[o]),
            }
            for o in range(tS.num_orbits)
        ],
    }
    if lift:
        bij = lift_to_subchar_bijection(m)
        GS, GT = tS.group, tT.group
        theta_sub = []
        for spos, K in enumerate(tS.classification.all):
            R = tT.classification.all[bij.theta_sub[spos]]
            theta_sub.append(
                {
                    "source_gens": [GS.labels[x] for x in subgroup_generators(GS, K)],
                    "target_gens": [GT.labels[x] for x in subgroup_generators(GT, R)],
                    "order": K.order,
                }
            )
        theta_char = []
        for spos in range(len(tS.classification.all)):
            tpos = bij.theta_sub[spos]
            gens = subgroup_generators(GS, tS.classification.all[spos])
            tgens = subgroup_generators(GT, tT.classification.all[tpos])
            pairs = []
            for cpos, c in enumerate(tS.homs[spos]):
                img = tT.homs[tpos][bij.theta_char[spos][cpos]]
                pairs.append(
                    {
                        "from": [list(c.values[x]) for x in gens],
                        "to": [list(img.values[x]) for x in tgens],
                    }
                )
            theta_char.append({"subgroup_index": spos, "map": pairs})
        report = check_iso_invariants(m, bij)
        out["theta_sub"] = theta_sub
        out["theta_char"] = theta_char
        out["verified"] = {
            "orbit_level": verify_orbit_map(m),
            "subchar_coeffs": verify_subchar_coeffs(bij),
            "marks_and_ghost": verify_marks_and_ghost(bij),
        }
        out["invariants"] = report
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fibered-burnside",
        description="Exact computations in fibered Burnside rings.",
    )
    p.add_argument("command", choices=[
        "rank", "table", "marks", "multable", "mu", "gamma",
        "ghost-check", "verify", "iso", "catalog",
    ])
    p.add_argument("ids", nargs="*", type=int, help="orbit ids for mu/gamma")
    p.add_argument("--group", help="catalog name or JSON file")
    p.add_argument("--group2", help="second group for iso")
    p.add_argument("--fiber", default="auto", help="fiber spec, e.g. C2xC4 or auto")
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--all-isos", action="store_true", help="enumerate every map")
    p.add_argument("--lift-theta", action="store_true",
                   help="lift found maps to subcharacter bijections")
    p.add_argument("--max-order", type=int, default=GROUP_ORDER_CAP)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    return p


def run(args) -> int:
    if args.command == "catalog":
        _emit_json(list(catalog()))
        return 0

    if not args.group:
        raise GroupInputError("--group is required")
    G = load_group(args.group, args.max_order)

    if args.command == "iso":
        if not args.group2:
            raise GroupInputError("iso needs --group2")
        H = load_group(args.group2, args.max_order)
        A = resolve_fiber(args.fiber, G, H)
        if args.all_isos:
            maps = find_all_species_isos(G, H, A, max_order=args.max_order)
            _emit_json([_map_payload(m, args.lift_theta) for m in maps])
        else:
            m = find_species_iso(G, H, A, max_order=args.max_order)
            _emit_json(None if m is None else _map_payload(m, args.lift_theta))
        return 0

    A = resolve_fiber(args.fiber, G)
    table = build_table(G, A, max_order=args.max_order)

    if args.command == "rank":
        payload = {
            "group": G.name,
            "fiber": A.spec(),
            "rank": table.num_orbits,
            "orbits": [orbit_descriptor(table, o) for o in range(table.num_orbits)],
        }
        if args.format == "tsv":
            rows = [
                (d["orbit"], d["subgroup_order"], ",".join(d["subgroup_gens"]) or "1",
                 d["orbit_size"], d["stabilizer_order"])
                for d in payload["orbits"]
            ]
            _emit_tsv_matrix(["orbit", "subgroup_order", "gens", "orbit_size",
                              "stabilizer_order"], rows)
        else:
            _emit_json(payload)
        return 0

    if args.command == "table":
        _emit_json(table_payload(table))
        return 0

    if args.command == "marks":
        mt = mark_table(table)
        labels = [_orbit_label(table, o) for o in mt.order]
        if args.format == "tsv":
            _emit_tsv_matrix([""] + labels,
                             [[labels[i]] + list(row) for i, row in enumerate(mt.matrix)])
        else:
            _emit_json({
                "order": list(mt.order),
                "labels": labels,
                "matrix": [list(r) for r in mt.matrix],
            })
        return 0

    if args.command == "multable":
        triples = []
        for o1 in range(table.num_orbits):
            for o2 in range(table.num_orbits):
                for o3, c in sorted(basis_product(table, o1, o2).items()):
                    triples.append([o1, o2, o3, c])
        if args.format == "tsv":
            _emit_tsv_matrix(["left", "right", "result", "coeff"], triples)
        else:
            _emit_json({"triples": triples})
        return 0

    if args.command == "mu":
        if len(args.ids) != 3:
            raise GroupInputError("mu needs three orbit ids")
        o1, o2, o3 = args.ids
        _check_ids(table, args.ids)
        sys.stdout.write(f"{basis_product(table, o1, o2).get(o3, 0)}\n")
        return 0

    if args.command == "gamma":
        if len(args.ids) != 2:
            raise GroupInputError("gamma needs two orbit ids")
        _check_ids(table, args.ids)
        o1, o2 = args.ids
        sys.stdout.write(f"{orbit_marks(table)[o1][o2]}\n")
        return 0

    if args.command == "ghost-check":
        results = run_ghost_suites(table)
        if args.format == "tsv":
            _print_suites(results)
        else:
            _emit_json(_suite_payload(results))
        return 0 if all(r.ok for r in results) else 1

    if args.command == "verify":
        results = run_all_suites(table, seed=args.seed)
        if args.format == "tsv":
            _print_suites(results)
        else:
            _emit_json(_suite_payload(results))
        return 0 if all(r.ok for r in results) else 1

    raise GroupInputError(f"unknown command {args.command!r}")


def _check_ids(table: SubcharacterTable, ids) -> None:
    for i in ids:
        if not 0 <= i < table.num_orbits:
            raise GroupInputError(
                f"orbit id {i} out of range (table has {table.num_orbits} orbits)"
            )


def main(argv=None) -> int:
    args = _build_parser().parse_intermixed_args(argv)
    try:
        return run(args)
    except GroupInputError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
