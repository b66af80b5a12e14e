"""Finite groups as element tables: construction, quotients, class filters.

Elements are indices 0..order-1 with the identity at index 0.  Groups built
from permutation generators keep the permutations; the multiplication table
is materialized only for small orders, larger groups multiply through the
underlying permutations.
"""

from __future__ import annotations

from .perm import Perm, closure, compose, inverse, is_identity

CLOSURE_CAP = 20480
TABLE_CAP = 2048
AUT_CAP = 2048


class FiniteGroup:
    __slots__ = (
        "order",
        "label",
        "generator_marks",
        "perms",
        "projection",
        "_table",
        "_index",
        "_inv",
        "_orders",
        "_gens",
    )

    def __init__(
        self,
        *,
        perms: list[Perm] | None = None,
        table: list[list[int]] | None = None,
        label: str | None = None,
        generator_marks: list[int] | None = None,
    ):
        if perms is None and table is None:
            raise ValueError("need permutations or a multiplication table")
        self.label = label
        self.perms = perms
        self.projection: list[int] | None = None
        self._inv: list[int] | None = None
        self._orders: list[int] | None = None
        self._gens: list[int] | None = None
        if perms is not None:
            if not is_identity(perms[0]):
                raise ValueError("element 0 must be the identity")
            self.order = len(perms)
            self._index = {p: i for i, p in enumerate(perms)}
            if len(self._index) != self.order:
                raise ValueError("repeated elements")
            self._table = None
            if self.order <= TABLE_CAP:
                self._materialize_table()
        else:
            n = len(table)
            if any(len(row) != n for row in table):
                raise ValueError("table is not square")
            for i in range(n):
                if table[0][i] != i or table[i][0] != i:
                    raise ValueError("element 0 must be the identity")
                if sorted(table[i]) != list(range(n)):
                    raise ValueError("row is not a permutation of the elements")
                if sorted(table[j][i] for j in range(n)) != list(range(n)):
                    raise ValueError("column is not a permutation of the elements")
            self.order = n
            self._table = table
            self._index = None
        self.generator_marks = list(generator_marks) if generator_marks else None

    def _materialize_table(self) -> None:
        idx = self._index
        self._table = [
            [idx[compose(p, q)] for q in self.perms] for p in self.perms
        ]

    @classmethod
    def from_table(cls, table: list[list[int]], label: str | None = None) -> "FiniteGroup":
        return cls(table=table, label=label)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"FiniteGroup(order={self.order}{name})"

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        return self._index[compose(self.perms[i], self.perms[j])]

    def inv(self, i: int) -> int:
        if self._inv is None:
            if self.perms is not None:
                self._inv = [self._index[inverse(p)] for p in self.perms]
            else:
                row = self._table
                self._inv = [row[i].index(0) for i in range(self.order)]
        return self._inv[i]

    def element_order(self, i: int) -> int:
        return self.element_orders()[i]

    def element_orders(self) -> list[int]:
        if self._orders is None:
            out = []
            for i in range(self.order):
                x, k = i, 1
                while x != 0:
                    x = self.mul(x, i)
                    k += 1
                out.append(k)
            self._orders = out
        return self._orders

    def involutions(self) -> list[int]:
        return [i for i, o in enumerate(self.element_orders()) if o == 2]

    def subgroup_closure(self, seed) -> list[int]:
        seen = {0}
        queue = [0]
        gens = sorted(set(seed))
        for x in queue:
            for s in gens:
                y = self.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def generates(self, seed) -> bool:
        return len(self.subgroup_closure(seed)) == self.order

    def generating_set(self) -> list[int]:
        """Small generating set, greedily in element order; deterministic."""
        if self._gens is None:
            if self.generator_marks and self.generates(self.generator_marks):
                self._gens = list(self.generator_marks)
            else:
                gens: list[int] = []
                known = {0}
                for i in range(1, self.order):
                    if i not in known:
                        gens.append(i)
                        known = set(self.subgroup_closure(gens))
                        if len(known) == self.order:
                            break
                self._gens = gens
        return self._gens

    def irredundant_generating_set(self) -> list[int]:
        gens = list(self.generating_set())
        kept = list(gens)
        for g in gens:
            trial = [h for h in kept if h != g]
            if trial and self.generates(trial):
                kept = trial
        return kept

    def commutator(self, i: int, j: int) -> int:
        return self.mul(self.mul(self.inv(i), self.inv(j)), self.mul(i, j))

    def conjugate_element(self, i: int, g: int) -> int:
        return self.mul(self.mul(self.inv(g), i), g)

    def center(self) -> list[int]:
        gens = self.generating_set()
        return [
            c
            for c in range(self.order)
            if all(self.mul(c, g) == self.mul(g, c) for g in gens)
        ]

    def is_abelian(self) -> bool:
        return len(self.center()) == self.order

    def right_regular_perm(self, i: int) -> Perm:
        """The permutation x -> x*i of the element indices."""
        return tuple(self.mul(x, i) for x in range(self.order))

    def quotient(self, normal) -> "FiniteGroup":
        """Quotient by a normal subgroup; cosets labelled by least member."""
        ns = sorted(set(normal))
        s = set(ns)
        if 0 not in s:
            raise ValueError("subgroup must contain the identity")
        for a in ns:
            for b in ns:
                if self.mul(a, b) not in s:
                    raise ValueError("not a subgroup")
        for g in self.generating_set():
            for m in ns:
                if self.conjugate_element(m, g) not in s:
                    raise ValueError("not a normal subgroup")
        proj = [-1] * self.order
        reps: list[int] = []
        for i in range(self.order):
            if proj[i] == -1:
                ci = len(reps)
                reps.append(i)
                for m in ns:
                    proj[self.mul(m, i)] = ci
        q = len(reps)
        table = [
            [proj[self.mul(reps[a], reps[b])] for b in range(q)] for a in range(q)
        ]
        quo = FiniteGroup.from_table(table, label=None)
        quo.projection = proj
        return quo

    def validate(self, rng=None, samples: int = 5000) -> None:
        """Check identity, inverses, associativity (sampled above order 256)."""
        n = self.order
        for i in range(n):
            if self.mul(0, i) != i or self.mul(i, 0) != i:
                raise ValueError("identity fails")
            j = self.inv(i)
            if self.mul(i, j) != 0 or self.mul(j, i) != 0:
                raise ValueError("inverse fails")
        if n <= 256:
            triples = (
                (a, b, c) for a in range(n) for b in range(n) for c in range(n)
            )
        else:
            import random

            r = rng or random.Random(0)
            triples = (
                (r.randrange(n), r.randrange(n), r.randrange(n))
                for _ in range(samples)
            )
        for a, b, c in triples:
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError("associativity fails")


def group_from_generators(gens: list[Perm], label: str | None = None) -> FiniteGroup:
    """Close permutation generators into a FiniteGroup (BFS element order)."""
    elems = closure(gens, cap=CLOSURE_CAP)
    g = FiniteGroup(perms=elems, label=label)
    idx = {p: i for i, p in enumerate(elems)}
    g.generator_marks = sorted({idx[p] for p in gens if not is_identity(p)})
    return g


def derived_subgroup(G: FiniteGroup) -> list[int]:
    """Commutator subgroup, as a sorted closed element set."""
    gens = G.generating_set()
    seed = {G.commutator(a, b) for a in gens for b in gens}
    seed.discard(0)
    current = G.subgroup_closure(seed)
    while True:
        extra = set()
        cur = set(current)
        for x in current:
            for g in gens:
                y = G.conjugate_element(x, g)
                if y not in cur:
                    extra.add(y)
        if not extra:
            return current
        current = G.subgroup_closure(cur | extra)


def abelianization(G: FiniteGroup) -> list[int]:
    """Invariant factors of G/G', ascending divisibility chain."""
    A = G.quotient(derived_subgroup(G))
    factors: list[int] = []
    while A.order > 1:
        orders = A.element_orders()
        e = max(orders)
        x = orders.index(e)
        factors.append(e)
        A = A.quotient(A.subgroup_closure([x]))
    factors.reverse()
    return factors


def cubic_cayley_filter(G: FiniteGroup) -> bool:
    """Abelianization shape test: trivial, cyclic, Z2 x Z_r, or Z2^3."""
    inv = abelianization(G)
    if len(inv) <= 1:
        return True
    if len(inv) == 2 and inv[0] == 2:
        return True
    return inv == [2, 2, 2]


def _hom_closure(
    A: FiniteGroup, B: FiniteGroup, gens: list[int], images: list[int]
) -> list[int] | None:
    """Partial map on <gens> forced by gen -> image; None on inconsistency."""
    m = [-1] * A.order
    m[0] = 0
    queue = [0]
    for x in queue:
        mx = m[x]
        for g, h in zip(gens, images):
            y = A.mul(x, g)
            z = B.mul(mx, h)
            if m[y] == -1:
                m[y] = z
                queue.append(y)
            elif m[y] != z:
                return None
    return m


def automorphism_group(G: FiniteGroup) -> tuple[list[Perm], int]:
    """Automorphisms of G as permutations of element indices.

    Backtracks over images of an irredundant generating set; candidates must
    match element orders and extend to a consistent homomorphism.  First-level
    candidates already reachable from exhausted ones under found automorphisms
    are skipped; every skipped branch is a coset of an explored one, so the
    returned list still generates Aut(G).
    """
    if G.order > AUT_CAP:
        raise ValueError("order cap exceeded")
    gens = G.irredundant_generating_set()
    orders = G.element_orders()
    n = G.order
    if not gens:
        return [], 1
    cands = [[c for c in range(n) if orders[c] == orders[g]] for g in gens]
    found: list[Perm] = []
    done_first: list[int] = []

    def reachable(targets: list[int]) -> set[int]:
        seen = set(targets)
        queue = list(targets)
        for x in queue:
            for a in found:
                y = a[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def extend(level: int, images: list[int]) -> None:
        if level == len(gens):
            m = _hom_closure(G, G, gens, images)
            if m is not None and -1 not in m and len(set(m)) == n:
                p = tuple(m)
                if not is_identity(p):
                    found.append(p)
            return
        skip: set[int] = reachable(done_first) if level == 0 else set()
        for c in cands[level]:
            if level == 0 and c in skip:
                continue
            trial = images + [c]
            if _hom_closure(G, G, gens[: level + 1], trial) is None:
                continue
            extend(level + 1, trial)
            if level == 0:
                done_first.append(c)
                skip = reachable(done_first)

    extend(0, [])
    from .perm import PermGroup

    order = PermGroup(found, degree=n).order() if found else 1
    return found, order


def r_class_member(G: FiniteGroup) -> bool:
    """2-group generated by an involution-plus-element pair or 3 involutions."""
    n = G.order
    if n & (n - 1):
        return False
    if n == 1:
        # degenerate member: keeps the class closed under central quotients
        return True
    # either generating shape forces the abelianization into the cubic
    # Cayley shapes, so the cheap test prunes hopeless groups first
    if not cubic_cayley_filter(G):
        return False
    invs = G.involutions()
    for t in invs:
        for g in range(1, n):
            if G.generates([t, g]):
                return True
    for i, t1 in enumerate(invs):
        for j in range(i + 1, len(invs)):
            for k in range(j + 1, len(invs)):
                if G.generates([t1, invs[j], invs[k]]):
                    return True
    return False


def central_quotients_by_order2(G: FiniteGroup) -> list[FiniteGroup]:
    orders = G.element_orders()
    out = []
    for z in G.center():
        if orders[z] == 2:
            out.append(G.quotient([0, z]))
    return out


def is_dihedral_group(G: FiniteGroup) -> bool:
    """Order 2m with m >= 3, an index-2 cyclic subgroup inverted by an involution."""
    n = G.order
    if n < 6 or n % 2:
        return False
    m = n // 2
    orders = G.element_orders()
    for c in range(n):
        if orders[c] != m:
            continue
        sub = set(G.subgroup_closure([c]))
        for t in G.involutions():
            if t not in sub and G.conjugate_element(c, t) == G.inv(c):
                return True
    return False


def are_isomorphic_groups(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Isomorphism test for small groups: profile pre-filter then backtracking."""
    if A.order != B.order:
        return False
    if sorted(A.element_orders()) != sorted(B.element_orders()):
        return False
    if abelianization(A) != abelianization(B):
        return False
    gens = A.irredundant_generating_set()
    if not gens:
        return True
    orders = A.element_orders()
    borders = B.element_orders()
    cands = [[c for c in range(B.order) if borders[c] == orders[g]] for g in gens]

    def extend(level: int, images: list[int]) -> bool:
        if level == len(gens):
            m = _hom_closure(A, B, gens, images)
            return m is not None and -1 not in m and len(set(m)) == A.order
        for c in cands[level]:
            trial = images + [c]
            if _hom_closure(A, B, gens[: level + 1], trial) is None:
                continue
            if extend(level + 1, trial):
                return True
        return False

    return extend(0, [])
