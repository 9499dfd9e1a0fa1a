"""Built-in group catalog: the fixed corpus the CLI and the acceptance
suites run against, as plain input records (so they exercise the same
loading path as user files)."""

from __future__ import annotations


def _cyclic_table(n: int) -> list:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _product_table(ta: list, tb: list) -> list:
    na, nb = len(ta), len(tb)
    n = na * nb

    def mul(x: int, y: int) -> int:
        xa, xb = divmod(x, nb)
        ya, yb = divmod(y, nb)
        return ta[xa][ya] * nb + tb[xb][yb]

    return [[mul(i, j) for j in range(n)] for i in range(n)]


def _quaternion_table() -> list:
    # elements 1,-1,i,-i,j,-j,k,-k encoded as (axis, sign); axis 0 is 1
    units = [(0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)]
    index = {u: i for i, u in enumerate(units)}

    def mul(u, v):
        (a, s), (b, t) = u, v
        if a == 0:
            return (b, s * t)
        if b == 0:
            return (a, s * t)
        if a == b:
            return (0, -s * t)
        # i*j=k, j*k=i, k*i=j and anticommutativity
        c = 6 - a - b
        sign = 1 if (a, b) in ((1, 2), (2, 3), (3, 1)) else -1
        return (c, sign * s * t)

    return [[index[mul(u, v)] for v in units] for u in units]


def _rotation(n: int) -> list:
    return [i % n + 1 for i in range(1, n + 1)]


def _reflection(n: int) -> list:
    # fixes point 1, reverses the rest
    return [1] + list(range(n, 1, -1))


def catalog() -> dict:
    """Name -> group input record, in a fixed order."""
    groups: dict = {}
    for n in range(1, 13):
        groups[f"C{n}"] = {"name": f"C{n}", "cayley": _cyclic_table(n)}
    groups["C2xC2"] = {"name": "C2xC2", "cayley": _product_table(_cyclic_table(2), _cyclic_table(2))}
    groups["C2xC4"] = {"name": "C2xC4", "cayley": _product_table(_cyclic_table(2), _cyclic_table(4))}
    groups["C2xC6"] = {"name": "C2xC6", "cayley": _product_table(_cyclic_table(2), _cyclic_table(6))}
    groups["S3"] = {"name": "S3", "perm_gens": [[2, 3, 1], [2, 1, 3]]}
    groups["D8"] = {"name": "D8", "perm_gens": [_rotation(4), _reflection(4)]}
    groups["Q8"] = {"name": "Q8", "cayley": _quaternion_table(),
                    "labels": ["e", "-e", "i", "-i", "j", "-j", "k", "-k"]}
    groups["D10"] = {"name": "D10", "perm_gens": [_rotation(5), _reflection(5)]}
    groups["D12"] = {"name": "D12", "perm_gens": [_rotation(6), _reflection(6)]}
    groups["A4"] = {"name": "A4", "perm_gens": [[2, 3, 1, 4], [2, 1, 4, 3]]}
    return groups


def catalog_names() -> list:
    return list(catalog())
