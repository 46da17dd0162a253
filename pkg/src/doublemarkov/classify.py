"""Exact model descriptions for small common-edge sets, and enumeration.

When G and H share at most three edges forming a connected subgraph, the
correlation model is one of finitely many explicitly parametrized shapes
(up to relabeling and swapping the two graphs, which inverts the model).
This module matches a pair against those shapes and can instantiate the
families numerically.

The three-edge path cases are normalized so the covariance-side graph has
at least as many missing support edges as the concentration side, and the
path may be reversed; both transforms are recorded so samples map back to
the caller's labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import ci, graphs, matrices
from .graphs import Graph


@dataclass(frozen=True)
class Family:
    """One parametrized component: entry expressions over named parameters.

    Entries are expressions in the support-local labels 1..|support|;
    unlisted off-diagonal entries are zero, the diagonal is one.  ``domain``
    is an inequality expression in the parameters; positive definiteness is
    always required on top of it.
    """

    name: str
    params: tuple[str, ...]
    entries: dict[tuple[int, int], str]
    domain: str | None = None

    def instantiate(self, values: dict[str, float], size: int) -> np.ndarray:
        env = {"abs": abs, **values}
        a = np.eye(size)
        for (i, j), expr in self.entries.items():
            v = float(eval(expr, {"__builtins__": {}}, env))
            a[i - 1, j - 1] = v
            a[j - 1, i - 1] = v
        return a

    def admits(self, values: dict[str, float], size: int) -> bool:
        if self.domain is not None:
            env = {"abs": abs, **values}
            if not eval(self.domain, {"__builtins__": {}}, env):
                return False
        return matrices.is_pd(self.instantiate(values, size))


@dataclass(frozen=True)
class ModelDescription:
    """Matched classification case for a pair of graphs.

    ``support`` lists the original vertices carrying the shared edges, in
    normalized order; ``swapped`` records that the families describe the
    model of (H, G), i.e. the inverse of the requested one.  The families
    live on the support block; all other coordinates are pinned to the
    identity by the block-decomposition property.
    """

    case: str
    n: int
    support: tuple[int, ...]
    swapped: bool
    blocks: tuple[tuple[int, ...], ...]
    families: tuple[Family, ...]
    component_count: int
    dimension: int
    connected: bool = True


def _fam(name, params, entries, domain=None):
    return Family(name, tuple(params), dict(entries), domain)


_PD12_X_PD34 = _fam("pd12-x-pd34", ["a", "b"], {(1, 2): "a", (3, 4): "b"},
                    "abs(a) < 1 and abs(b) < 1")
_SEG23_34 = _fam("inv-graphical-23-34", ["a", "b"], {(2, 3): "a", (3, 4): "b"},
                 "a**2 + b**2 < 1")
_SEG12_23 = _fam("inv-graphical-12-23", ["a", "b"], {(1, 2): "a", (2, 3): "b"},
                 "a**2 + b**2 < 1")

# Three-edge path cases on support (1,2,3,4) with shared edges {12, 23, 34};
# keyed by (extra edges of H inside the support, missing edges of G inside
# the support).  Families are the explicit parametrizations of each shape.
_THREE_EDGE_CASES = {
    (frozenset(), frozenset()): ("three-edge-path-1", 1, 3, [
        _fam("inv-graphical-path", ["a", "b", "c"],
             {(1, 2): "a", (2, 3): "b", (3, 4): "c"}),
    ]),
    (frozenset(), frozenset({(1, 3)})): ("three-edge-path-2", 2, 2, [
        _PD12_X_PD34, _SEG23_34,
    ]),
    (frozenset(), frozenset({(1, 4)})): ("three-edge-path-3", 3, 2, [
        _PD12_X_PD34, _SEG12_23, _SEG23_34,
    ]),
    # with both 13 and 14 missing from G the constraints are s12*s23 = 0 and
    # s12*s23*s34 = 0, so the second is redundant and the model matches the
    # 13-only case, not the 14-only one
    (frozenset(), frozenset({(1, 3), (1, 4)})): ("three-edge-path-4", 2, 2, [
        _PD12_X_PD34, _SEG23_34,
    ]),
    (frozenset(), frozenset({(1, 3), (2, 4)})): ("three-edge-path-5", 2, 2, [
        _PD12_X_PD34, _fam("pd23", ["a"], {(2, 3): "a"}, "abs(a) < 1"),
    ]),
    (frozenset(), frozenset({(1, 3), (1, 4), (2, 4)})): ("three-edge-path-6", 2, 2, [
        _PD12_X_PD34, _fam("pd23", ["a"], {(2, 3): "a"}, "abs(a) < 1"),
    ]),
    (frozenset({(1, 3)}), frozenset({(1, 3)})): ("three-edge-path-7", 1, 3, [
        _fam("chain-13", ["a", "b", "c"],
             {(1, 2): "a", (2, 3): "b", (3, 4): "c", (1, 3): "a*b"},
             "abs(a) < 1 and b**2 + c**2 < 1"),
    ]),
    (frozenset({(1, 3)}), frozenset({(1, 3), (1, 4)})): ("three-edge-path-8", 1, 3, [
        _fam("chain-13", ["a", "b", "c"],
             {(1, 2): "a", (2, 3): "b", (3, 4): "c", (1, 3): "a*b"},
             "abs(a) < 1 and b**2 + c**2 < 1"),
    ]),
    (frozenset({(1, 3)}), frozenset({(1, 3), (2, 4)})): ("three-edge-path-9", 2, 2, [
        _PD12_X_PD34,
        _fam("chain-13-flat", ["a", "b"],
             {(1, 2): "a", (2, 3): "b", (1, 3): "a*b"},
             "abs(a) < 1 and abs(b) < 1"),
    ]),
    (frozenset({(1, 4)}), frozenset({(1, 4)})): ("three-edge-path-10", 1, 3, [
        _fam("chain-14", ["a", "b", "c"],
             {(1, 2): "a", (2, 3): "b", (3, 4): "c",
              (1, 4): "-a*b*c/(1 - b**2)"},
             "a**2 + b**2 < 1 and b**2 + c**2 < 1"),
    ]),
    (frozenset({(1, 4)}), frozenset({(1, 3), (1, 4)})): ("three-edge-path-11", 2, 2, [
        _PD12_X_PD34, _SEG23_34,
    ]),
}


def _support_edges(g: Graph, support: tuple[int, ...]) -> frozenset:
    pos = {v: t + 1 for t, v in enumerate(support)}
    out = set()
    for a, b in g.edges:
        if a in pos and b in pos:
            i, j = pos[a], pos[b]
            out.add((i, j) if i < j else (j, i))
    return frozenset(out)


def _path_vertex_order(edges) -> tuple[int, ...] | None:
    """Vertex sequence of a three-edge path, or None if not a path."""
    degree = {}
    for a, b in edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    ends = sorted(v for v, d in degree.items() if d == 1)
    if len(degree) != 4 or len(ends) != 2 or max(degree.values()) != 2:
        return None
    adj = {v: [] for v in degree}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seq = [ends[0]]
    prev = None
    while len(seq) < 4:
        nxt = [w for w in adj[seq[-1]] if w != prev]
        prev = seq[-1]
        seq.append(nxt[0])
    return tuple(seq)


def classify_small_intersection(g: Graph, h: Graph) -> ModelDescription:
    """Match (g, h) against the classified shapes for at most 3 shared edges.

    Requires the shared edges to form a connected subgraph on their support
    (run decompose first otherwise).  The three-edge star is not among the
    classified shapes and is rejected.
    """
    if g.n != h.n:
        raise ValueError("graphs live on different vertex sets")
    n = g.n
    shared = graphs.edge_intersection(g, h)
    m = shared.num_edges
    if m > 3:
        raise ValueError(f"classification needs at most 3 shared edges, got {m}")
    support_vertices = tuple(sorted({v for e in shared.edges for v in e}))
    comps = [b for b in graphs.connected_components(shared) if len(b) > 1]
    if len(comps) > 1:
        raise ValueError("shared edges are disconnected; apply decompose first")
    blocks = graphs.connected_components(shared)

    if m == 0:
        return ModelDescription(
            "trivial", n, (), False, blocks,
            (_fam("identity-only", [], {}),), 1, 0)
    if m == 1:
        return ModelDescription(
            "single-edge", n, support_vertices, False, blocks,
            (_fam("pd-block", ["a"], {(1, 2): "a"}, "abs(a) < 1"),), 1, 1)
    if m == 2:
        return _classify_two_edge(g, h, n, shared, blocks)
    if len(support_vertices) == 3:
        return ModelDescription(
            "three-edge-clique", n, support_vertices, False, blocks,
            (_fam("pd-block-3", ["a", "b", "c"],
                  {(1, 2): "a", (1, 3): "b", (2, 3): "c"}),), 1, 3)
    order = _path_vertex_order(shared.edges)
    if order is None:
        raise ValueError(
            "three shared edges form a star, which is outside the classified cases")
    return _classify_three_edge_path(g, h, n, order, blocks)


def _classify_two_edge(g, h, n, shared, blocks):
    degree = {}
    for a, b in shared.edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    mid = next(v for v, d in degree.items() if d == 2)
    ends = sorted(v for v, d in degree.items() if d == 1)
    support = (ends[0], mid, ends[1])
    i, k = ends
    if g.has_edge(i, k):
        case, fams, comps, dim = "two-edge-case-1", [
            _fam("inv-graphical-path-2", ["a", "b"],
                 {(1, 2): "a", (2, 3): "b"}, "a**2 + b**2 < 1"),
        ], 1, 2
    elif h.has_edge(i, k):
        case, fams, comps, dim = "two-edge-case-2", [
            _fam("graphical-path-2", ["a", "b"],
                 {(1, 2): "a", (2, 3): "b", (1, 3): "a*b"},
                 "abs(a) < 1 and abs(b) < 1"),
        ], 1, 2
    else:
        case, fams, comps, dim = "two-edge-case-3", [
            _fam("segment-12", ["a"], {(1, 2): "a"}, "abs(a) < 1"),
            _fam("segment-23", ["a"], {(2, 3): "a"}, "abs(a) < 1"),
        ], 2, 1
    return ModelDescription(case, n, support, False, blocks, tuple(fams), comps, dim)


def _classify_three_edge_path(g, h, n, order, blocks):
    for swapped, reverse in itertools.product((False, True), (False, True)):
        gg, hh = (h, g) if swapped else (g, h)
        support = tuple(reversed(order)) if reverse else order
        ge = _support_edges(gg, support)
        he = _support_edges(hh, support)
        base = frozenset({(1, 2), (2, 3), (3, 4)})
        key = (he - base, frozenset({(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)}) - ge)
        if key in _THREE_EDGE_CASES:
            case, comps, dim, fams = _THREE_EDGE_CASES[key]
            return ModelDescription(case, n, support, swapped, blocks,
                                    tuple(fams), comps, dim)
    raise ValueError("unreachable: three-edge path cases cover all configurations")


def sample_from_family(desc: ModelDescription, params=None, rng=None,
                       family: int = 0, max_tries: int = 1000) -> np.ndarray:
    """Concrete correlation matrix from one family, in the caller's labels.

    ``params`` maps parameter names to values; with a generator instead,
    admissible values are drawn by rejection.  For a swapped description
    the instantiated block is inverted and renormalized, which maps the
    model of (H, G) back onto the model of (G, H).
    """
    fam = desc.families[family]
    size = len(desc.support) if desc.support else 1
    if params is None:
        if rng is None:
            raise ValueError("need explicit params or an rng to draw them")
        for _ in range(max_tries):
            cand = {p: rng.uniform(-0.95, 0.95) for p in fam.params}
            if fam.admits(cand, size):
                params = cand
                break
        else:
            raise RuntimeError(f"no admissible draw for {fam.name} in {max_tries} tries")
    else:
        params = dict(params)
        if not fam.admits(params, size):
            raise ValueError(f"parameters outside the domain of {fam.name}")
    block = fam.instantiate(params, size)
    if desc.swapped:
        _, block = matrices.to_correlation(matrices.inverse(block))
    out = np.eye(desc.n)
    for a, va in enumerate(desc.support):
        for b, vb in enumerate(desc.support):
            out[va - 1, vb - 1] = block[a, b]
    return out


# -- enumeration of inequivalent CI structures --------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    n: int
    connected_only: bool
    count: int
    representatives: tuple  # (canonical bytes, Graph, Graph), sorted by canon


def _edge_perm_table(n: int, perm, npairs: int) -> np.ndarray:
    """Maps every edge mask to the mask of the relabelled graph."""
    ps = graphs.pairs_lex(n)
    size = 1 << npairs
    table = np.zeros(size, dtype=np.int64)
    masks = np.arange(size, dtype=np.int64)
    for r, (i, j) in enumerate(ps):
        target = graphs.pair_rank(n, perm[i - 1], perm[j - 1])
        table |= ((masks >> r) & 1) << target
    return table


def enumerate_inequivalent(n: int, connected_only: bool = True,
                           chunk: int = 2_000_000) -> EnumerationResult:
    """Count double Markov CI structures modulo isomorphy and duality.

    Iterates ordered pairs of (connected) labeled graphs, canonicalizes the
    pair under vertex permutations and swapping (duality maps the relation
    of (G, H) to that of (H, G)), then reduces the surviving orbit
    representatives by the relation-level canonical form.  For connected
    graphs the relation determines the pair, so both reductions agree; the
    relation-level pass is what gets counted.
    """
    if not 3 <= n <= 6:
        raise ValueError("enumeration supported for 3 <= n <= 6")
    if n == 6 and not connected_only:
        # without connectivity the relation does not determine the pair, and
        # the n = 6 shortcut skips the relation-level pass
        raise ValueError("n = 6 enumeration needs connected_only=True")
    npairs = len(graphs.pairs_lex(n))
    if connected_only:
        masks = np.array(graphs.connected_graph_masks(n), dtype=np.int64)
    else:
        masks = np.arange(1 << npairs, dtype=np.int64)
    tables = [_edge_perm_table(n, perm, npairs)
              for perm in graphs.vertex_permutations(n)]
    shift = np.int64(npairs)
    canon_codes = set()
    num = len(masks)
    for start in range(0, num * num, chunk):
        stop = min(start + chunk, num * num)
        idx = np.arange(start, stop)
        gm = masks[idx // num]
        hm = masks[idx % num]
        best = None
        for table in tables:
            pg = table[gm]
            ph = table[hm]
            code = np.minimum((pg << shift) | ph, (ph << shift) | pg)
            best = code if best is None else np.minimum(best, code)
        canon_codes.update(np.unique(best).tolist())
    mask_of = (1 << npairs) - 1
    by_relation: dict[bytes, tuple] = {}
    for code in sorted(canon_codes):
        g = graphs.graph_from_edge_mask(n, code >> npairs)
        h = graphs.graph_from_edge_mask(n, code & mask_of)
        if n <= 5:
            key = ci.canonical_form(ci.double_markov_relation(g, h), modulo_duality=True)
        else:
            key = code  # relation-level pass verified for n <= 5; n = 6 trusts it
        if key not in by_relation:
            by_relation[key] = (key, g, h)
    reps = tuple(sorted(by_relation.values(), key=lambda t: (t[0], t[1].edges, t[2].edges)))
    return EnumerationResult(n, connected_only, len(reps), reps)
