"""Line graph, total graph, Cartesian product, and corresponding trees.

Transformed graphs carry per-vertex provenance labels: ("v", i) for an
original vertex, ("e", i, j) for the vertex standing for source edge (i, j),
("p", a, b) for a product pair.  Labels serialize as "v:0", "e:1:2", "p:0:1".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InputError
from .graphs import Graph, build_graph, is_connected


def original(i):
    return ("v", i)


def edge_vertex(i, j):
    return ("e", min(i, j), max(i, j))


def product_pair(a, b):
    return ("p", a, b)


def label_name(label) -> str:
    return ":".join(str(x) for x in label)


def parse_label_name(text: str):
    parts = text.split(":")
    if parts[0] == "v" and len(parts) == 2:
        return ("v", int(parts[1]))
    if parts[0] == "e" and len(parts) == 3:
        return edge_vertex(int(parts[1]), int(parts[2]))
    if parts[0] == "p" and len(parts) == 3:
        return ("p", int(parts[1]), int(parts[2]))
    raise InputError(f"bad vertex name {text!r}; expected v:i, e:i:j, or p:a:b")


@lru_cache(maxsize=512)
def _label_index(labels):
    return {lab: i for i, lab in enumerate(labels)}


@dataclass(frozen=True)
class LabeledGraph:
    """A Graph plus provenance labels and a short source description."""

    graph: Graph
    labels: tuple
    source: str

    def __post_init__(self):
        if len(self.labels) != self.graph.n:
            raise InputError("labels must cover every vertex exactly once")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("labels must be pairwise distinct")

    def index_of(self, label) -> int:
        try:
            return _label_index(self.labels)[label]
        except KeyError:
            raise InputError(f"no vertex labeled {label!r} in {self.source}") from None

    def name_of(self, vertex: int) -> str:
        return label_name(self.labels[vertex])

    def names(self):
        return tuple(label_name(lab) for lab in self.labels)


def line_graph(g: Graph) -> LabeledGraph:
    """One vertex per source edge; adjacency = sharing an endpoint."""
    if not g.edges:
        raise InputError("line graph of an edgeless graph is undefined")
    source_edges = g.sorted_edges()
    index = {e: i for i, e in enumerate(source_edges)}
    edges = []
    for (a, b), (c, d) in combinations(source_edges, 2):
        if a in (c, d) or b in (c, d):
            edges.append((index[(a, b)], index[(c, d)]))
    labels = tuple(edge_vertex(u, v) for u, v in source_edges)
    return LabeledGraph(build_graph(len(source_edges), edges), labels, f"line({g!r})")


def total_graph(g: Graph) -> LabeledGraph:
    """Originals keep their ids; edge-vertices follow in lexicographic order."""
    if not g.edges:
        raise InputError("total graph needs at least one edge")
    if not is_connected(g):
        raise InputError("total graph is defined here for connected graphs only")
    source_edges = g.sorted_edges()
    ev = {e: g.n + i for i, e in enumerate(source_edges)}
    edges = list(g.edges)
    for (a, b), (c, d) in combinations(source_edges, 2):
        if a in (c, d) or b in (c, d):
            edges.append((ev[(a, b)], ev[(c, d)]))
    for (a, b), x in ev.items():
        edges.append((a, x))
        edges.append((b, x))
    labels = tuple(original(i) for i in range(g.n)) + tuple(
        edge_vertex(u, v) for u, v in source_edges
    )
    return LabeledGraph(build_graph(g.n + len(source_edges), edges), labels, f"total({g!r})")


def cartesian_product(g1: Graph, g2: Graph) -> LabeledGraph:
    if g1.n == 0 or g2.n == 0:
        raise InputError("cartesian product needs nonempty factors")
    def vid(a, b):
        return a * g2.n + b
    edges = []
    for a in range(g1.n):
        for b, d in g2.edges:
            edges.append((vid(a, b), vid(a, d)))
    for a, c in g1.edges:
        for b in range(g2.n):
            edges.append((vid(a, b), vid(c, b)))
    labels = tuple(product_pair(a, b) for a in range(g1.n) for b in range(g2.n))
    return LabeledGraph(build_graph(g1.n * g2.n, edges), labels, "product")


def _check_subtree(g: Graph, tree_edges):
    edges = [(min(u, v), max(u, v)) for u, v in tree_edges]
    if not edges:
        raise InputError("corresponding tree needs at least one edge")
    if len(set(edges)) != len(edges):
        raise InputError("duplicate edges in subtree")
    for e in edges:
        if e not in g.edges:
            raise InputError(f"edge {e} not in host graph")
    verts = sorted({v for e in edges for v in e})
    if len(edges) != len(verts) - 1:
        raise InputError("edge set is not a tree (wrong edge count)")
    adj = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {verts[0]}
    queue = deque([verts[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != len(verts):
        raise InputError("edge set is not a tree (disconnected)")
    return edges


def corresponding_tree(g: Graph, tree_edges):
    """BFS spanning tree of the line graph restricted to a subtree's edges.

    Returns edges between edge-identifiers: pairs ((i, j), (k, l)) sorted,
    rooted at the lexicographically least edge of the subtree.
    """
    edges = sorted(_check_subtree(g, tree_edges))
    if len(edges) == 1:
        return ()
    incident = {}
    for e in edges:
        for v in e:
            incident.setdefault(v, []).append(e)
    root = edges[0]
    seen = {root}
    queue = deque([root])
    out = []
    while queue:
        e = queue.popleft()
        neighbours = []
        for v in e:
            for f in incident[v]:
                if f != e:
                    neighbours.append(f)
        for f in sorted(set(neighbours)):
            if f not in seen:
                seen.add(f)
                out.append((min(e, f), max(e, f)))
                queue.append(f)
    return tuple(sorted(out))
