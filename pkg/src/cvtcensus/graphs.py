"""Simple undirected graphs: metrics, families, graph6, exhaustive generation."""

from __future__ import annotations

import math
from itertools import combinations


class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted adjacency lists."""

    __slots__ = ("n", "adj", "_masks")

    def __init__(self, n: int, edges):
        if n < 0:
            raise ValueError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._masks: list[int] | None = None

    @classmethod
    def from_adjacency(cls, adj) -> "Graph":
        edges = [(u, v) for u, nbrs in enumerate(adj) for v in nbrs if u < v]
        g = cls(len(adj), edges)
        if g.adj != tuple(tuple(sorted(r)) for r in adj):
            raise ValueError("adjacency not symmetric")
        return g

    def masks(self) -> list[int]:
        if self._masks is None:
            self._masks = [sum(1 << v for v in row) for row in self.adj]
        return self._masks

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_regular(self, k: int) -> bool:
        return all(len(r) == k for r in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = [0]
        for x in queue:
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.n

    def relabel(self, perm) -> "Graph":
        """Image under a permutation: vertex v becomes perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


def is_automorphism(g: Graph, perm) -> bool:
    if len(perm) != g.n or sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


# -- metrics ----------------------------------------------------------------


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle; math.inf for forests."""
    best = math.inf
    for src in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[src] = 0
        queue = [src]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if 2 * dist[u] >= best:
                break
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
        if best == 3:
            break
    return best


def eccentricities(g: Graph) -> list[int]:
    out = []
    for src in range(g.n):
        dist = [-1] * g.n
        dist[src] = 0
        queue = [src]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if -1 in dist:
            raise ValueError("disconnected")
        out.append(max(dist))
    return out


def diameter(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("disconnected")
    return max(eccentricities(g))


def has_hamilton_cycle(g: Graph) -> bool:
    """Backtracking search with availability and connectivity pruning."""
    n = g.n
    if n < 3 or not g.is_connected():
        return False
    if any(len(r) < 2 for r in g.adj):
        return False
    masks = g.masks()
    full = (1 << n) - 1
    start_bit = 1

    def feasible(cur: int, visited: int) -> bool:
        avail = (~visited & full) | (1 << cur) | start_bit
        rest = ~visited & full
        m = rest
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if (masks[v] & avail).bit_count() < 2:
                return False
        # every unvisited vertex must be reachable from cur
        if rest:
            seen = 1 << cur
            frontier = seen
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    v = (f & -f).bit_length() - 1
                    f &= f - 1
                    nxt |= masks[v] & rest & ~seen
                seen |= nxt
                frontier = nxt
            if rest & ~seen:
                return False
        return True

    first_choices = list(g.adj[0])

    def extend(cur: int, visited: int, first: int) -> bool:
        if visited == full:
            return bool(masks[cur] & start_bit) and cur > first
        for w in g.adj[cur]:
            bit = 1 << w
            if visited & bit:
                continue
            nv = visited | bit
            if feasible(w, nv):
                if extend(w, nv, first):
                    return True
        return False

    for first in first_choices:
        nv = 1 | (1 << first)
        if feasible(first, nv) and extend(first, nv, first):
            return True
    return False


# -- families ---------------------------------------------------------------


def ladder(n: int, kind: str) -> Graph:
    """Circular ladder (prism) or Moebius ladder on 2n vertices."""
    if kind == "circular":
        if n < 3:
            raise ValueError("circular ladder needs n >= 3")
        edges = []
        for i in range(n):
            edges.append((2 * i, 2 * i + 1))
            edges.append((2 * i, 2 * ((i + 1) % n)))
            edges.append((2 * i + 1, 2 * ((i + 1) % n) + 1))
        return Graph(2 * n, edges)
    if kind == "moebius":
        if n < 2:
            raise ValueError("moebius ladder needs n >= 2")
        m = 2 * n
        edges = [(i, (i + 1) % m) for i in range(m)]
        edges += [(i, i + n) for i in range(n)]
        return Graph(m, edges)
    raise ValueError(f"unknown ladder kind: {kind!r}")


def truncation(g: Graph) -> Graph:
    """Replace each vertex of a cubic graph by a triangle on its arcs."""
    if not g.is_regular(3):
        raise ValueError("truncation needs a cubic graph")
    index = {}
    for v in range(g.n):
        for k, u in enumerate(g.adj[v]):
            index[(v, u)] = 3 * v + k
    edges = []
    for v in range(g.n):
        a, b, c = (index[(v, u)] for u in g.adj[v])
        edges += [(a, b), (a, c), (b, c)]
    for v in range(g.n):
        for u in g.adj[v]:
            if v < u:
                edges.append((index[(v, u)], index[(u, v)]))
    return Graph(3 * g.n, edges)


# -- graph6 -----------------------------------------------------------------


def graph6_encode(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise ValueError("graph too large for graph6")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytearray()
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        body.append(val + 63)
    return head + bytes(body)


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if not data:
        raise ValueError("empty graph6 string")
    if data[0] == 126:
        if len(data) < 4:
            raise ValueError("truncated graph6 header")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n < 0:
        raise ValueError("bad graph6 header")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError(f"graph6 body length {len(body)}, expected {need}")
    bits = []
    for ch in body:
        v = ch - 63
        if not 0 <= v < 64:
            raise ValueError("graph6 byte out of range")
        bits.extend((v >> k) & 1 for k in range(5, -1, -1))
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def read_graph6_file(path) -> list[Graph]:
    out = []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(graph6_decode(line))
    return out


def write_graph6_file(path, graphs) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(graph6_encode(g) + b"\n")


# -- exhaustive generation ---------------------------------------------------


def all_connected_cubic_graphs(n: int) -> list[Graph]:
    """Every connected cubic graph on n vertices, one per isomorphism class.

    BFS-ordered edge-set backtracking: vertex labels appear in order of first
    use, rows are completed in order, and interchangeable fresh labels are
    tie-broken; survivors are deduplicated by canonical form.
    """
    from .canon import canonical_form

    if n % 2 or not 4 <= n <= 14:
        raise ValueError("order must be even with 4 <= n <= 14")

    found: dict[bytes, Graph] = {}
    masks = [0] * n
    deg = [0] * n
    intro_row = [-1] * n

    def choices(row: int, introduced: int):
        need = 3 - deg[row]
        old = [j for j in range(row + 1, introduced) if deg[j] < 3]
        max_new = min(need, n - introduced)
        out = []
        for new_cnt in range(max_new, -1, -1):
            for olds in combinations(old, need - new_cnt):
                out.append((olds, new_cnt))
        return out

    def tie_ok(row: int, chosen: set[int], introduced: int) -> bool:
        # never pick the later of two still-interchangeable fresh labels alone
        for j in chosen:
            a = j - 1
            if a <= row or a not in range(row + 1, introduced) or a in chosen:
                continue
            if intro_row[a] == intro_row[j]:
                ma = masks[a] & ~(1 << j)
                mj = masks[j] & ~(1 << a)
                if ma == mj:
                    return False
        return True

    def search(row: int, introduced: int) -> None:
        if row == n:
            if introduced == n:
                g = Graph.from_adjacency(
                    [[v for v in range(n) if masks[u] >> v & 1] for u in range(n)]
                )
                found.setdefault(canonical_form(g).bytes, g)
            return
        if row > 0 and deg[row] == 0:
            return
        for olds, new_cnt in choices(row, introduced):
            chosen = set(olds) | set(range(introduced, introduced + new_cnt))
            if not tie_ok(row, chosen, introduced):
                continue
            for j in chosen:
                masks[row] |= 1 << j
                masks[j] |= 1 << row
                deg[row] += 1
                deg[j] += 1
                if intro_row[j] < 0:
                    intro_row[j] = row
            search(row + 1, introduced + new_cnt)
            for j in chosen:
                masks[row] &= ~(1 << j)
                masks[j] &= ~(1 << row)
                deg[row] -= 1
                deg[j] -= 1
                if intro_row[j] == row:
                    intro_row[j] = -1

    intro_row[0] = 0
    search(0, 1)
    return [found[k] for k in sorted(found)]
