"""Group catalogs: standard constructions, built-in lists, text format IO.

Catalog text format, one group per stanza:

    group <label> degree <d> order <n>
    (0 1 2)(3 4)
    ...

Each generator is one line of disjoint cycles over 0-based points; a stanza
ends with a blank line; the trivial group is written as the single line "()".
"""

from __future__ import annotations

import re
import warnings

from .groups import FiniteGroup, are_isomorphic_groups, group_from_generators
from .perm import Perm, format_cycles, identity, parse_cycles


class CatalogWarning(UserWarning):
    pass


# ---------------------------------------------------------------- builders


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return group_from_generators([identity(1)], label="Z1")
    return group_from_generators([tuple(range(1, n)) + (0,)], label=f"Z{n}")


def abelian(*invariants: int) -> FiniteGroup:
    """Direct product of cyclic groups, one point block per factor."""
    parts = [n for n in invariants if n > 1]
    if any(n < 1 for n in invariants):
        raise ValueError("orders must be positive")
    if not parts:
        return cyclic(1)
    degree = sum(parts)
    gens = []
    offset = 0
    for n in parts:
        images = list(range(degree))
        for k in range(n):
            images[offset + k] = offset + (k + 1) % n
        gens.append(tuple(images))
        offset += n
    return group_from_generators(gens, label="x".join(f"Z{n}" for n in parts))


def elementary_abelian2(k: int) -> FiniteGroup:
    return abelian(*([2] * k))


def dihedral(m: int) -> FiniteGroup:
    """Order 2m for m >= 3 (smaller m degenerates to abelian groups)."""
    if m < 3:
        raise ValueError("dihedral parameter must be at least 3")
    rot = tuple(range(1, m)) + (0,)
    ref = tuple((m - i) % m for i in range(m))
    return group_from_generators([rot, ref], label=f"D{m}")


def dicyclic(m: int) -> FiniteGroup:
    """Order 4m, m >= 2; generalized quaternion when m is a power of 2.

    Right-regular action on the 4m elements a^k (points k) and a^k b
    (points 2m+k), with b^2 = a^m and b^-1 a b = a^-1.
    """
    if m < 2:
        raise ValueError("dicyclic parameter must be at least 2")
    two_m = 2 * m
    a = [0] * (4 * m)
    b = [0] * (4 * m)
    for k in range(two_m):
        a[k] = (k + 1) % two_m
        a[two_m + k] = two_m + (k - 1) % two_m
        b[k] = two_m + k
        b[two_m + k] = (k + m) % two_m
    order = 4 * m
    label = f"Q{order}" if order & (order - 1) == 0 else f"Dic{m}"
    return group_from_generators([tuple(a), tuple(b)], label=label)


def _metacyclic2(m: int, r: int, label: str) -> FiniteGroup:
    # <a, t | a^m, t^2, t a t = a^r>, right-regular on points a^k, a^k t
    a = [0] * (2 * m)
    t = [0] * (2 * m)
    for k in range(m):
        a[k] = (k + 1) % m
        a[m + k] = m + (k + r) % m
        t[k] = m + k
        t[m + k] = k
    return group_from_generators([tuple(a), tuple(t)], label=label)


def semidihedral(n: int) -> FiniteGroup:
    """Order 2^n, n >= 4: t inverts-and-squares, t a t = a^(2^(n-2) - 1)."""
    if n < 4:
        raise ValueError("semidihedral needs order at least 16")
    m = 2 ** (n - 1)
    return _metacyclic2(m, m // 2 - 1, label=f"SD{2 ** n}")


def modular2(n: int) -> FiniteGroup:
    """Modular maximal-cyclic group of order 2^n, n >= 4."""
    if n < 4:
        raise ValueError("modular maximal-cyclic needs order at least 16")
    m = 2 ** (n - 1)
    return _metacyclic2(m, m // 2 + 1, label=f"M{2 ** n}")


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    if not factors:
        raise ValueError("no factors")
    if any(g.perms is None for g in factors):
        raise ValueError("factors must carry permutations")
    degrees = [len(g.perms[0]) for g in factors]
    total = sum(degrees)
    gens: list[Perm] = []
    offset = 0
    for g, d in zip(factors, degrees):
        marks = g.generator_marks or g.generating_set()
        for i in marks:
            p = g.perms[i]
            images = list(range(total))
            for x in range(d):
                images[offset + x] = offset + p[x]
            gens.append(tuple(images))
        offset += d
    label = "x".join(g.label or "?" for g in factors)
    return group_from_generators(gens, label=label)


def alternating4() -> FiniteGroup:
    return group_from_generators(
        [parse_cycles("(0 1 2)", 4), parse_cycles("(0 1)(2 3)", 4)], label="A4"
    )


def symmetric4() -> FiniteGroup:
    return group_from_generators(
        [parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 1)", 4)], label="S4"
    )


def frobenius20() -> FiniteGroup:
    return group_from_generators(
        [parse_cycles("(0 1 2 3 4)", 5), parse_cycles("(1 2 4 3)", 5)], label="F20"
    )


# ---------------------------------------------------------------- built-ins


def small14() -> list[FiniteGroup]:
    """All groups of order at most 14, one per isomorphism class (27 groups)."""
    groups = [cyclic(n) for n in range(1, 15)]
    groups += [
        abelian(2, 2),
        dihedral(3),
        abelian(2, 4),
        elementary_abelian2(3),
        dihedral(4),
        dicyclic(2),
        abelian(3, 3),
        dihedral(5),
        abelian(2, 6),
        dihedral(6),
        alternating4(),
        dicyclic(3),
        dihedral(7),
    ]
    groups.sort(key=lambda g: (g.order, g.label))
    return groups


def twogroups64() -> list[FiniteGroup]:
    """An assortment of 2-groups of order up to 64 (not a complete list)."""
    groups = [
        cyclic(2),
        cyclic(4),
        cyclic(8),
        cyclic(16),
        cyclic(32),
        cyclic(64),
        elementary_abelian2(2),
        elementary_abelian2(3),
        elementary_abelian2(4),
        elementary_abelian2(5),
        elementary_abelian2(6),
        abelian(2, 4),
        abelian(2, 8),
        abelian(2, 16),
        abelian(2, 32),
        abelian(4, 4),
        abelian(4, 8),
        abelian(8, 8),
        abelian(2, 2, 4),
        abelian(2, 2, 8),
        abelian(2, 4, 4),
        abelian(2, 2, 2, 4),
        dihedral(4),
        dihedral(8),
        dihedral(16),
        dihedral(32),
        dicyclic(2),
        dicyclic(4),
        dicyclic(8),
        dicyclic(16),
        semidihedral(4),
        semidihedral(5),
        semidihedral(6),
        modular2(4),
        modular2(5),
        modular2(6),
        direct_product(dihedral(4), cyclic(2)),
        direct_product(dihedral(4), cyclic(4)),
        direct_product(dihedral(4), elementary_abelian2(2)),
        direct_product(dicyclic(2), cyclic(2)),
        direct_product(dicyclic(2), cyclic(4)),
        direct_product(dicyclic(2), elementary_abelian2(2)),
        direct_product(dihedral(4), dihedral(4)),
    ]
    groups.sort(key=lambda g: (g.order, g.label))
    return groups


def extras() -> list[FiniteGroup]:
    """Odds and ends used by tests and examples."""
    return [symmetric4(), frobenius20(), abelian(3, 3), abelian(3, 6)]


_BUILTINS = {"small14": small14, "twogroups64": twogroups64, "extras": extras}

# highest order for which the named catalog contains every group
BUILTIN_COMPLETE_TO = {"small14": 14, "twogroups64": 0, "extras": 0}


def builtin_catalog(name: str) -> list[FiniteGroup]:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown catalog {name!r}") from None


# ---------------------------------------------------------------- text format

_HEADER = re.compile(r"group\s+(\S+)\s+degree\s+(\d+)\s+order\s+(\d+)\s*$")


def catalog_generator_perms(g: FiniteGroup) -> list[Perm]:
    marks = g.generator_marks or g.generating_set()
    if g.perms is not None:
        perms = [g.perms[i] for i in marks]
    else:
        perms = [g.right_regular_perm(i) for i in marks]
    return perms or [identity(1 if g.perms is None else len(g.perms[0]))]


def format_catalog(groups: list[FiniteGroup]) -> str:
    chunks = []
    for k, g in enumerate(groups):
        perms = catalog_generator_perms(g)
        degree = len(perms[0])
        label = g.label or f"group{k}"
        lines = [f"group {label} degree {degree} order {g.order}"]
        lines += [format_cycles(p) for p in perms]
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def write_catalog(groups: list[FiniteGroup], path) -> None:
    with open(path, "w") as fh:
        fh.write(format_catalog(groups))


def parse_catalog_text(text: str) -> list[FiniteGroup]:
    groups: list[FiniteGroup] = []
    header = None
    gens: list[Perm] = []
    header_line = 0

    def finish():
        label, degree, order = header
        if not gens:
            raise ValueError(f"line {header_line}: stanza has no generators")
        g = group_from_generators(gens, label=label)
        if g.order != order:
            raise ValueError(
                f"line {header_line}: declared order {order}, closure has {g.order}"
            )
        groups.append(g)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if header is not None:
                finish()
                header = None
                gens = []
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ValueError(f"line {ln}: expected group header, got {line!r}")
            header = (m.group(1), int(m.group(2)), int(m.group(3)))
            header_line = ln
        else:
            try:
                gens.append(parse_cycles(line, degree=header[1]))
            except ValueError as e:
                raise ValueError(f"line {ln}: {e}") from None
    if header is not None:
        finish()
    return groups


def ingest_catalog(path) -> list[FiniteGroup]:
    """Parse, validate, and duplicate-collapse a catalog file."""
    with open(path) as fh:
        text = fh.read()
    parsed = parse_catalog_text(text)
    if not parsed:
        warnings.warn(f"catalog {path} is empty", CatalogWarning, stacklevel=2)
        return []
    kept: list[FiniteGroup] = []
    for g in parsed:
        g.validate()
        dup = None
        for h in kept:
            if g.order == h.order and g.order <= 64 and are_isomorphic_groups(g, h):
                dup = h
                break
        if dup is not None:
            warnings.warn(
                f"catalog {path}: {g.label} duplicates {dup.label}; dropped",
                CatalogWarning,
                stacklevel=2,
            )
        else:
            kept.append(g)
    return kept
