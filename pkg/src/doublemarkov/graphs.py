"""Simple undirected graphs on vertex sets {1, ..., n} with n <= 16.

Vertices are 1-based in every public signature; internally adjacency is a
tuple of 0-based neighbor bitmasks, so graphs are hashable, immutable and
cheap to copy.  After deleting a vertex k, the surviving vertices are
relabelled by decrementing every label greater than k.

All functions here are pure; ``Graph`` values never mutate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import PathCapExceeded

MAX_VERTICES = 16
DEFAULT_PATH_CAP = 10**6


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; ``adj[v]`` is the neighbor bitmask of 0-based v."""

    n: int
    adj: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        """Build a graph on vertices 1..n from an iterable of 1-based pairs."""
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for e in edges:
            i, j = e
            _check_vertex(n, i)
            _check_vertex(n, j)
            if i == j:
                raise ValueError(f"self-loop {i}-{j} is not allowed")
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return Graph(n, tuple(adj))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted tuple of 1-based edge pairs (i, j) with i < j."""
        out = []
        for i in range(self.n):
            m = self.adj[i] >> (i + 1)
            j = i + 1
            while m:
                if m & 1:
                    out.append((i + 1, j + 1))
                m >>= 1
                j += 1
        return tuple(out)

    def has_edge(self, i: int, j: int) -> bool:
        _check_vertex(self.n, i)
        _check_vertex(self.n, j)
        return i != j and bool(self.adj[i - 1] >> (j - 1) & 1)

    def neighbors(self, i: int) -> frozenset[int]:
        _check_vertex(self.n, i)
        return frozenset(v + 1 for v in _bits(self.adj[i - 1]))

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def non_edges(self) -> tuple[tuple[int, int], ...]:
        """Sorted 1-based pairs (i, j), i < j, that are not edges."""
        return tuple(
            (i, j)
            for i in range(1, self.n + 1)
            for j in range(i + 1, self.n + 1)
            if not self.adj[i - 1] >> (j - 1) & 1
        )

    def __repr__(self):
        es = " ".join(f"{i}-{j}" for i, j in self.edges)
        return f"Graph(n={self.n}, edges=[{es}])"


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    )


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full & ~m) & ~(1 << v) for v, m in enumerate(g.adj)))


def _check_vertex(n: int, i: int):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise ValueError(f"vertex {i!r} out of range 1..{n}")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reachable(g: Graph, start0: int, blocked_mask: int) -> int:
    """Bitmask of vertices reachable from 0-based start avoiding blocked ones."""
    seen = 1 << start0
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        nxt &= ~blocked_mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def separates(g: Graph, i: int, j: int, K) -> bool:
    """True iff every path from i to j in g meets the vertex set K."""
    _check_vertex(g.n, i)
    _check_vertex(g.n, j)
    if i == j:
        raise ValueError("separation needs two distinct vertices")
    K = frozenset(K)
    if i in K or j in K:
        raise ValueError(f"separator {sorted(K)} overlaps endpoints {{{i}, {j}}}")
    blocked = 0
    for k in K:
        _check_vertex(g.n, k)
        blocked |= 1 << (k - 1)
    return not _reachable(g, i - 1, blocked) >> (j - 1) & 1


def _delete_vertex(g: Graph, k: int, extra_clique_mask: int = 0) -> Graph:
    """Drop 0-based relabelled vertex k; optionally join extra_clique_mask first."""
    k0 = k - 1
    adj = list(g.adj)
    for v in _bits(extra_clique_mask):
        adj[v] |= extra_clique_mask & ~(1 << v)
    out = []
    for v in range(g.n):
        if v == k0:
            continue
        m = adj[v] & ~(1 << k0)
        low = m & ((1 << k0) - 1)
        high = m >> (k0 + 1)
        out.append(low | high << k0)
    return Graph(g.n - 1, tuple(out))


def marginal_minor(g: Graph, k: int) -> Graph:
    """Delete vertex k and all incident edges; labels above k decrement."""
    _check_vertex(g.n, k)
    if g.n == 1:
        raise ValueError("cannot delete the last vertex")
    return _delete_vertex(g, k)


def conditional_minor(g: Graph, k: int) -> Graph:
    """Delete vertex k after joining its neighbors into a clique."""
    _check_vertex(g.n, k)
    if g.n == 1:
        raise ValueError("cannot delete the last vertex")
    return _delete_vertex(g, k, extra_clique_mask=g.adj[k - 1])


def direct_sum(g: Graph, g2: Graph) -> Graph:
    """Disjoint union; the second block's labels are offset by g.n."""
    n = g.n + g2.n
    if n > MAX_VERTICES:
        raise ValueError(f"combined size {n} exceeds supported maximum {MAX_VERTICES}")
    adj = list(g.adj) + [m << g.n for m in g2.adj]
    return Graph(n, tuple(adj))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph on the given 1-based vertices, relabelled 1..|V| by rank."""
    vs = sorted(set(vertices))
    for v in vs:
        _check_vertex(g.n, v)
    pos = {v: t for t, v in enumerate(vs)}
    edges = [
        (pos[a] + 1, pos[b] + 1) for a, b in g.edges if a in pos and b in pos
    ]
    return Graph.from_edges(len(vs), edges)


def connected_components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Partition of 1..n into maximal connected sets, blocks sorted by least element."""
    remaining = (1 << g.n) - 1
    blocks = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reachable(g, start, blocked_mask=0) & remaining
        blocks.append(tuple(v + 1 for v in _bits(comp)))
        remaining &= ~comp
    return tuple(sorted(blocks))


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def all_paths(g: Graph, k: int, l: int, cap: int = DEFAULT_PATH_CAP):
    """All simple paths from k to l as 1-based vertex tuples, lexicographic order.

    Raises PathCapExceeded once more than ``cap`` paths are found, which is
    distinguishable from the empty result for disconnected endpoints.
    """
    _check_vertex(g.n, k)
    _check_vertex(g.n, l)
    if k == l:
        raise ValueError("path endpoints must be distinct")
    paths = []
    target = l - 1
    stack = [k - 1]
    visited = 1 << (k - 1)

    def dfs():
        nonlocal visited
        v = stack[-1]
        if v == target:
            if len(paths) >= cap:
                raise PathCapExceeded(cap)
            paths.append(tuple(u + 1 for u in stack))
            return
        for w in _bits(g.adj[v]):
            if not visited >> w & 1:
                visited |= 1 << w
                stack.append(w)
                dfs()
                stack.pop()
                visited &= ~(1 << w)

    dfs()
    return paths


def count_paths_up_to(g: Graph, k: int, l: int, limit: int) -> int:
    """Number of simple k-l paths, but stop counting once ``limit`` is reached."""
    _check_vertex(g.n, k)
    _check_vertex(g.n, l)
    if k == l:
        raise ValueError("path endpoints must be distinct")
    count = 0
    target = l - 1

    def dfs(v, visited):
        nonlocal count
        if count >= limit:
            return
        if v == target:
            count += 1
            return
        for w in _bits(g.adj[v]):
            if not visited >> w & 1:
                dfs(w, visited | 1 << w)

    dfs(k - 1, 1 << (k - 1))
    return count


def _same_ground_set(g: Graph, h: Graph):
    if g.n != h.n:
        raise ValueError(f"graphs live on different vertex sets ({g.n} vs {h.n})")


def edge_intersection(g: Graph, h: Graph) -> Graph:
    _same_ground_set(g, h)
    return Graph(g.n, tuple(a & b for a, b in zip(g.adj, h.adj)))


def edge_union(g: Graph, h: Graph) -> Graph:
    _same_ground_set(g, h)
    return Graph(g.n, tuple(a | b for a, b in zip(g.adj, h.adj)))


# -- edge <-> rank bookkeeping shared with the CI and matrix layers ----------

@lru_cache(maxsize=None)
def pairs_lex(n: int) -> tuple[tuple[int, int], ...]:
    """All 1-based pairs (i, j), i < j, in lexicographic order."""
    return tuple(
        (i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
    )


def pair_rank(n: int, i: int, j: int) -> int:
    """Rank of the unordered pair {i, j} in the lexicographic pair order."""
    if i > j:
        i, j = j, i
    if i == j:
        raise ValueError("pair needs distinct vertices")
    _check_vertex(n, i)
    _check_vertex(n, j)
    return (2 * n - i) * (i - 1) // 2 + (j - i - 1)


def edge_mask(g: Graph) -> int:
    """Edge set as a C(n,2)-bit mask, bit = lexicographic pair rank."""
    mask = 0
    for i, j in g.edges:
        mask |= 1 << pair_rank(g.n, i, j)
    return mask


def graph_from_edge_mask(n: int, mask: int) -> Graph:
    ps = pairs_lex(n)
    return Graph.from_edges(n, [ps[r] for r in _bits(mask)])


# -- graph pair text format ---------------------------------------------------

def parse_pair_file(text: str) -> tuple[Graph, Graph]:
    """Parse the three-line pair format: ``n <count>``, ``G <i>-<j> ...``, ``H ...``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise ValueError("pair file needs three non-blank lines: n, G, H")
    n = _parse_n_line(lines[0])
    g = _parse_edge_line(lines[1], "G", n, line_no=2)
    h = _parse_edge_line(lines[2], "H", n, line_no=3)
    return g, h


def _parse_n_line(line: str) -> int:
    toks = line.split()
    if len(toks) != 2 or toks[0] != "n":
        raise ValueError(f"line 1: expected 'n <count>', got {line.strip()!r}")
    try:
        n = int(toks[1])
    except ValueError:
        raise ValueError(f"line 1: vertex count {toks[1]!r} is not an integer") from None
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"line 1: vertex count must be in 1..{MAX_VERTICES}, got {n}")
    return n


def _parse_edge_line(line: str, tag: str, n: int, line_no: int) -> Graph:
    toks = line.split()
    if not toks or toks[0] != tag:
        raise ValueError(f"line {line_no}: expected it to start with {tag!r}")
    edges = []
    for tok in toks[1:]:
        parts = tok.split("-")
        try:
            if len(parts) != 2:
                raise ValueError
            i, j = int(parts[0]), int(parts[1])
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError
        except ValueError:
            raise ValueError(
                f"line {line_no}: malformed edge token {tok!r}"
            ) from None
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def format_pair_file(g: Graph, h: Graph) -> str:
    _same_ground_set(g, h)
    gline = " ".join(f"{i}-{j}" for i, j in g.edges)
    hline = " ".join(f"{i}-{j}" for i, j in h.edges)
    return f"n {g.n}\nG {gline}\nH {hline}\n"


@lru_cache(maxsize=8)
def connected_graph_masks(n: int) -> tuple[int, ...]:
    """Edge masks of all connected labeled graphs on n vertices (n <= 6)."""
    if not 1 <= n <= 6:
        raise ValueError("connected graph enumeration is supported for n <= 6")
    out = []
    for mask in range(1 << len(pairs_lex(n))):
        if is_connected(graph_from_edge_mask(n, mask)):
            out.append(mask)
    return tuple(out)


def all_graphs(n: int):
    """Iterate over every labeled graph on n vertices (n <= 6)."""
    if n > 6:
        raise ValueError("exhaustive graph iteration is supported for n <= 6")
    for mask in range(1 << len(pairs_lex(n))):
        yield graph_from_edge_mask(n, mask)


def vertex_permutations(n: int):
    return itertools.permutations(range(1, n + 1))


def permute_graph(g: Graph, perm) -> Graph:
    """Relabel vertices: vertex v becomes perm[v-1] (perm is a 1-based image tuple)."""
    return Graph.from_edges(g.n, [(perm[i - 1], perm[j - 1]) for i, j in g.edges])
