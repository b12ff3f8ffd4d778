"""Fixture constructors: one-object groups, pair groupoids, bundles, products."""

from __future__ import annotations

import re
from typing import Callable, Sequence

from .core import Groupoid, RawTable, validate

Perm = tuple[int, ...]


def perm_compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def perm_name(p: Perm) -> str:
    """Cycle notation on points 1..n, e.g. ``(123)`` or ``(12)(34)``; ``e`` for identity."""
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        cycles.append(cyc)
    if not cycles:
        return "e"
    sep = "" if len(p) <= 9 else ","
    return "".join("(" + sep.join(str(c + 1) for c in cyc) + ")" for cyc in cycles)


def _name_key(tok: str):
    return (tok != "e", len(tok), tok)


def one_object(elements: Sequence[str], mul: Callable[[str, str], str], name="G") -> Groupoid:
    """A group given by its multiplication, as a groupoid with one identity."""
    pos = {t: i for i, t in enumerate(elements)}
    products = {(i, j): pos[mul(a, b)] for i, a in enumerate(elements) for j, b in enumerate(elements)}
    return validate(RawTable(tuple(elements), products, name))


def permutation_group(gens: Sequence[Perm], name="G") -> Groupoid:
    """The permutation group generated by ``gens`` (right-to-left product)."""
    n = len(gens[0])
    ident = tuple(range(n))
    found = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = perm_compose(p, s)
                if q not in found:
                    found.add(q)
                    nxt.append(q)
        frontier = nxt
    by_name = {perm_name(p): p for p in found}
    names = sorted(by_name, key=_name_key)
    inverse = {p: t for t, p in by_name.items()}
    return one_object(names, lambda a, b: inverse[perm_compose(by_name[a], by_name[b])], name)


def cyclic(n: int) -> Groupoid:
    if n < 1:
        raise ValueError("n must be >= 1")
    names = [str(k) for k in range(n)]
    return one_object(names, lambda a, b: str((int(a) + int(b)) % n), f"Z{n}")


def symmetric(n: int) -> Groupoid:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return one_object(["e"], lambda a, b: "e", "S1")
    gens = [tuple(range(1, n)) + (0,)]
    t = list(range(n))
    t[0], t[1] = 1, 0
    gens.append(tuple(t))
    return permutation_group(gens, f"S{n}")


def dihedral(n: int) -> Groupoid:
    """Symmetries of the regular n-gon acting on its vertices (order 2n)."""
    if n < 3:
        raise ValueError("n must be >= 3")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return permutation_group([rot, ref], f"D{n}")


def pair(n: int) -> Groupoid:
    """The pair groupoid on {1..n}: elements (x,y) with (x,y)(y,z) = (x,z)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    objs = range(1, n + 1)
    names = [f"({x},{y})" for x in objs for y in objs]
    pos = {(x, y): k for k, (x, y) in enumerate((x, y) for x in objs for y in objs)}
    products = {}
    for (x, y), i in pos.items():
        for (y2, z), j in pos.items():
            if y == y2:
                products[i, j] = pos[x, z]
    return validate(RawTable(tuple(names), products, f"P{n}"))


def bundle(*groups: Groupoid, name: str | None = None) -> Groupoid:
    """Disjoint union of one-object groupoids; fiber k's tokens get prefix ``k:``."""
    if not groups:
        raise ValueError("bundle needs at least one group")
    names: list[str] = []
    products = {}
    for k, g in enumerate(groups, start=1):
        off = len(names)
        names.extend(f"{k}:{t}" for t in g.elements)
        for i, j, z in g.products():
            products[off + i, off + j] = off + z
    name = name or "B_" + "_".join(g.name for g in groups)
    return validate(RawTable(tuple(names), products, name))


def product(left: Groupoid, right: Groupoid, name: str | None = None) -> Groupoid:
    """Componentwise product; tokens are ``(a,b)``."""
    pairs = [(a, b) for a in range(len(left)) for b in range(len(right))]
    pos = {p: k for k, p in enumerate(pairs)}
    names = [f"({left.elements[a]},{right.elements[b]})" for a, b in pairs]
    products = {}
    for (a, b), i in pos.items():
        for (c, e), j in pos.items():
            x, y = left.table[a][c], right.table[b][e]
            if x is not None and y is not None:
                products[i, j] = pos[x, y]
    return validate(RawTable(tuple(names), products, name or f"{left.name}x{right.name}"))


def trivial(name: str = "1") -> Groupoid:
    return validate(RawTable(("e",), {(0, 0): 0}, name))


_GROUP_RE = re.compile(r"^(Z|S|D)(\d+)$")


def group_by_name(spec: str) -> Groupoid:
    """``Z<n>``, ``S<n>`` or ``D<n>``."""
    m = _GROUP_RE.match(spec)
    if not m:
        raise ValueError(f"unknown group {spec!r}; expected Z<n>, S<n> or D<n>")
    kind, n = m.group(1), int(m.group(2))
    return {"Z": cyclic, "S": symmetric, "D": dihedral}[kind](n)
