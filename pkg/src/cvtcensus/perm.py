"""Permutations on 0..n-1 and a deterministic Schreier-Sims stabilizer chain.

A permutation is a tuple of images: p maps i to p[i].  Composition is
left-to-right: compose(p, q) applies p first, then q.
"""

from __future__ import annotations

import math
import re

Perm = tuple[int, ...]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Perm) -> bool:
    return all(p[i] == i for i in range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(p: Perm, s: Perm) -> Perm:
    """s^-1 p s, the relabelling of p through s."""
    return compose(compose(inverse(s), p), s)


def cycles(p: Perm) -> list[list[int]]:
    """Nontrivial cycles of p, each rotated to start at its least point."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(cyc)
    return out


def perm_order(p: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if cycles(p) else 1


def pad(p: Perm, degree: int) -> Perm:
    if len(p) >= degree:
        return p
    return p + tuple(range(len(p), degree))


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation like "(0 1 2)(3 4)"; "()" is the identity."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    if not re.fullmatch(r"(\s*\([\s\d,]*\)\s*)+", text):
        raise ValueError(f"malformed cycle notation: {text!r}")
    body = _CYCLE_RE.findall(text)
    pts: list[list[int]] = []
    for part in body:
        entries = part.replace(",", " ").split()
        cyc = [int(e) for e in entries]
        if len(set(cyc)) != len(cyc):
            raise ValueError(f"repeated point in cycle: {part!r}")
        if cyc:
            pts.append(cyc)
    flat = [x for c in pts for x in c]
    if len(set(flat)) != len(flat):
        raise ValueError(f"point in two cycles: {text!r}")
    if any(x < 0 for x in flat):
        raise ValueError(f"negative point: {text!r}")
    n = max(flat) + 1 if flat else 1
    if degree is not None:
        if flat and max(flat) >= degree:
            raise ValueError(f"point {max(flat)} exceeds degree {degree}")
        n = degree
    images = list(range(n))
    for cyc in pts:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    return tuple(images)


def format_cycles(p: Perm) -> str:
    cycs = cycles(p)
    if not cycs:
        return "()"
    return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)


def closure(generators: list[Perm], cap: int = 1_000_000) -> list[Perm]:
    """All products of the generators, breadth-first from the identity."""
    if not generators:
        raise ValueError("no generators")
    deg = len(generators[0])
    if any(len(g) != deg for g in generators):
        raise ValueError("generators have mixed degrees")
    start = identity(deg)
    seen = {start: 0}
    elems = [start]
    i = 0
    while i < len(elems):
        x = elems[i]
        i += 1
        for g in generators:
            y = compose(x, g)
            if y not in seen:
                seen[y] = len(elems)
                elems.append(y)
                if len(elems) > cap:
                    raise ValueError("group too large")
    return elems


class PermGroup:
    """Permutation group with a deterministic stabilizer chain."""

    def __init__(self, generators: list[Perm], degree: int | None = None):
        gens = [g for g in generators if not is_identity(g)]
        if degree is None:
            if not generators:
                raise ValueError("no generators and no degree")
            degree = len(generators[0])
        if any(len(g) != degree for g in gens):
            raise ValueError("generators have mixed degrees")
        self.degree = degree
        self.generators = list(dict.fromkeys(gens))
        self._base: list[int] = []
        self._sgs: list[Perm] = []
        self._transversal: list[dict[int, Perm]] = []
        self._build()

    # -- chain construction (bottom-up Schreier-Sims) -----------------------

    def _level_gens(self, level: int) -> list[Perm]:
        base = self._base[:level]
        return [g for g in self._sgs if all(g[b] == b for b in base)]

    def _recompute_transversal(self, level: int) -> None:
        bp = self._base[level]
        gens = self._level_gens(level)
        tr = {bp: identity(self.degree)}
        queue = [bp]
        for x in queue:
            for g in gens:
                y = g[x]
                if y not in tr:
                    tr[y] = compose(tr[x], g)
                    queue.append(y)
        self._transversal[level] = tr

    def _sift(self, g: Perm, level: int) -> tuple[Perm, int]:
        """Strip g through levels >= level; return (residue, failing level)."""
        for lvl in range(level, len(self._base)):
            b = self._base[lvl]
            t = g[b]
            if t == b:
                continue
            rep = self._transversal[lvl].get(t)
            if rep is None:
                return g, lvl
            g = compose(g, inverse(rep))
        return g, len(self._base)

    def _build(self) -> None:
        for g in self.generators:
            if all(g[b] == b for b in self._base):
                self._base.append(min(i for i in range(self.degree) if g[i] != i))
        self._sgs = list(self.generators)
        self._transversal = [{} for _ in self._base]
        for lvl in range(len(self._base)):
            self._recompute_transversal(lvl)
        level = len(self._base) - 1
        while level >= 0:
            self._recompute_transversal(level)
            bp = self._base[level]
            tr = self._transversal[level]
            gens = self._level_gens(level)
            residue = None
            for pt in sorted(tr):
                for s in gens:
                    q = compose(tr[pt], s)
                    schreier = compose(q, inverse(tr[q[bp]]))
                    if is_identity(schreier):
                        continue
                    stripped, at = self._sift(schreier, level + 1)
                    if not is_identity(stripped):
                        residue = (stripped, at)
                        break
                if residue:
                    break
            if residue is None:
                level -= 1
                continue
            stripped, at = residue
            if at == len(self._base):
                self._base.append(min(i for i in range(self.degree) if stripped[i] != i))
                self._transversal.append({})
            self._sgs.append(stripped)
            self._recompute_transversal(at)
            level = at

    # -- queries ------------------------------------------------------------

    def order(self) -> int:
        n = 1
        for tr in self._transversal:
            n *= len(tr)
        return n

    def __contains__(self, p: Perm) -> bool:
        if len(p) != self.degree:
            return False
        for level, b in enumerate(self._base):
            t = p[b]
            if t == b:
                continue
            rep = self._transversal[level].get(t)
            if rep is None:
                return False
            p = compose(p, inverse(rep))
        return is_identity(p)

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        left = set(range(self.degree))
        out = []
        while left:
            orb = self.orbit(min(left))
            out.append(orb)
            left -= set(orb)
        return out

    def transversal(self, point: int) -> dict[int, Perm]:
        """Coset representatives mapping `point` to each point of its orbit."""
        tr = {point: identity(self.degree)}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g[x]
                if y not in tr:
                    tr[y] = compose(tr[x], g)
                    queue.append(y)
        return tr

    def stabilizer_gens(self, point: int) -> list[Perm]:
        """Schreier generators of the stabilizer of `point`."""
        tr = self.transversal(point)
        out: list[Perm] = []
        seen = set()
        for x in sorted(tr):
            for g in self.generators:
                q = compose(tr[x], g)
                s = compose(q, inverse(tr[q[point]]))
                if not is_identity(s) and s not in seen:
                    seen.add(s)
                    out.append(s)
        return out

    def stabilizer_order(self, point: int) -> int:
        return self.order() // len(self.orbit(point))

    def elements(self, cap: int = 2_000_000):
        """All elements, as products down the stabilizer chain."""
        if self.order() > cap:
            raise ValueError("group too large")
        out = [identity(self.degree)]
        for level in range(len(self._base) - 1, -1, -1):
            reps = [self._transversal[level][pt] for pt in sorted(self._transversal[level])]
            out = [compose(tail, rep) for rep in reps for tail in out]
        return out

    def sample(self, rng) -> Perm:
        """Uniform random element (deterministic given the rng state)."""
        p = identity(self.degree)
        for level in range(len(self._base)):
            pts = sorted(self._transversal[level])
            rep = self._transversal[level][pts[rng.randrange(len(pts))]]
            p = compose(rep, p)
        return p

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True
