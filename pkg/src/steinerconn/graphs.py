"""Simple undirected graphs, classical connectivity, and family generators.

Graphs are immutable: a vertex count plus a frozenset of normalized (u, v)
pairs with u < v.  Everything downstream (transforms, packing search,
certificates) builds on this one representation.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def sorted_edges(self):
        return sorted(self.edges)

    def adjacency(self):
        """Per-vertex tuple of sorted neighbours."""
        return _adjacency(self)

    def degree(self, v):
        return len(self.adjacency()[v])

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


@lru_cache(maxsize=2048)
def _adjacency(g: Graph):
    adj = [[] for _ in range(g.n)]
    for u, v in sorted(g.edges):
        adj[u].append(v)
        adj[v].append(u)
    return tuple(tuple(sorted(nb)) for nb in adj)


def build_graph(n, edge_list) -> Graph:
    """Build a Graph from an edge list; duplicates collapse, loops are errors."""
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    edges = set()
    for u, v in edge_list:
        if not (0 <= u < n) or not (0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"self-loop ({u}, {v}) not allowed")
        edges.add((min(u, v), max(u, v)))
    return Graph(n, frozenset(edges))


def degree_profile(g: Graph):
    """Return (per-vertex degree list, minimum degree)."""
    if g.n == 0:
        raise InputError("degree profile of the empty graph is undefined")
    degrees = [len(nb) for nb in g.adjacency()]
    return degrees, min(degrees)


def connected_components(g: Graph):
    seen = [False] * g.n
    comps = []
    adj = g.adjacency()
    for start in range(g.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices):
    """Induced subgraph on `vertices`, relabeled 0..|W|-1 in sorted order.

    Returns (subgraph, old_ids) where old_ids[new] is the original id.
    """
    w = sorted(set(vertices))
    for v in w:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} not in graph")
    index = {old: new for new, old in enumerate(w)}
    keep = set(w)
    edges = [(index[u], index[v]) for u, v in g.edges if u in keep and v in keep]
    return Graph(len(w), frozenset(edges)), tuple(w)


# --- classical connectivity via unit-capacity max flow ---

_INF = 1 << 30


def _max_flow(num_nodes, arcs, s, t):
    # arcs: dict (u, v) -> capacity; BFS augmenting paths (Edmonds-Karp).
    residual = [dict() for _ in range(num_nodes)]
    for (u, v), c in arcs.items():
        residual[u][v] = residual[u].get(v, 0) + c
        residual[v].setdefault(u, 0)
    flow = 0
    while True:
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for v, c in residual[u].items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        bottleneck = _INF
        v = t
        while v != s:
            u = parent[v]
            bottleneck = min(bottleneck, residual[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        flow += bottleneck


def _local_vertex_connectivity(g: Graph, s, t):
    # Vertex splitting: x -> (2x = in, 2x+1 = out); internal vertices cap 1.
    arcs = {}
    for v in range(g.n):
        arcs[(2 * v, 2 * v + 1)] = _INF if v in (s, t) else 1
    for u, v in g.edges:
        arcs[(2 * u + 1, 2 * v)] = _INF
        arcs[(2 * v + 1, 2 * u)] = _INF
    return _max_flow(2 * g.n, arcs, 2 * s + 1, 2 * t)


def local_edge_connectivity(g: Graph, s, t):
    """Maximum number of pairwise edge-disjoint s-t paths."""
    arcs = {}
    for u, v in g.edges:
        arcs[(u, v)] = 1
        arcs[(v, u)] = 1
    return _max_flow(g.n, arcs, s, t)


def vertex_connectivity(g: Graph) -> int:
    """Menger vertex connectivity; complete graphs give n-1, disconnected 0."""
    if g.n < 2:
        raise InputError("vertex connectivity needs at least 2 vertices")
    if not is_connected(g):
        return 0
    if len(g.edges) == g.n * (g.n - 1) // 2:
        return g.n - 1
    # A minimum cut of a non-complete graph separates some nonadjacent pair.
    best = g.n
    for u, v in combinations(range(g.n), 2):
        if not g.has_edge(u, v):
            best = min(best, _local_vertex_connectivity(g, u, v))
    return best


def edge_connectivity(g: Graph) -> int:
    if g.n < 2:
        raise InputError("edge connectivity needs at least 2 vertices")
    if not is_connected(g):
        return 0
    # Any cut separates vertex 0 from something.
    return min(local_edge_connectivity(g, 0, t) for t in range(1, g.n))


# --- parametric families ---

FAMILY_KINDS = (
    "path",
    "cycle",
    "star",
    "complete",
    "complete_bipartite",
    "random_tree",
    "random_unicyclic",
)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple
    seed: int | None = None


def _prufer_tree(n, rng):
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        for y in range(n):
            if degree[y] == 1:
                edges.append((min(x, y), max(x, y)))
                degree[x] -= 1
                degree[y] -= 1
                break
    last = [y for y in range(n) if degree[y] == 1]
    edges.append((min(last), max(last)))
    return edges


def generate_family(spec: FamilySpec) -> Graph:
    """Instantiate a named family; random kinds are deterministic per seed."""
    kind, params = spec.kind, spec.params
    if kind == "path":
        (n,) = params
        if n < 1:
            raise InputError("path requires n >= 1")
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "cycle":
        (n,) = params
        if n < 3:
            raise InputError("cycle requires n >= 3")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "star":
        (leaves,) = params
        if leaves < 1:
            raise InputError("star requires at least 1 leaf")
        return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    if kind == "complete":
        (n,) = params
        if n < 1:
            raise InputError("complete requires n >= 1")
        return build_graph(n, combinations(range(n), 2))
    if kind == "complete_bipartite":
        m, n = params
        if m < 1 or n < 1:
            raise InputError("complete_bipartite requires m, n >= 1")
        return build_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])
    if kind == "random_tree":
        (n,) = params
        if n < 1:
            raise InputError("random_tree requires n >= 1")
        rng = random.Random(spec.seed)
        return build_graph(n, _prufer_tree(n, rng))
    if kind == "random_unicyclic":
        (n,) = params
        if n < 3:
            raise InputError("random_unicyclic requires n >= 3")
        rng = random.Random(spec.seed)
        tree = _prufer_tree(n, rng)
        present = set(tree)
        non_edges = [e for e in combinations(range(n), 2) if e not in present]
        extra = rng.choice(non_edges)
        return build_graph(n, tree + [extra])
    raise InputError(f"unknown family kind {kind!r}")


_KIND_ALIASES = {
    "path": "path",
    "cycle": "cycle",
    "star": "star",
    "complete": "complete",
    "bipartite": "complete_bipartite",
    "complete_bipartite": "complete_bipartite",
    "tree": "random_tree",
    "random_tree": "random_tree",
    "unicyclic": "random_unicyclic",
    "random_unicyclic": "random_unicyclic",
}


def parse_family_spec(text: str) -> FamilySpec:
    """Parse grammar like `complete:5`, `bipartite:2,3`, `tree:7,seed=1`."""
    if ":" not in text:
        raise InputError(f"malformed family spec {text!r}: expected kind:params")
    kind_txt, _, rest = text.partition(":")
    kind = _KIND_ALIASES.get(kind_txt.strip())
    if kind is None:
        raise InputError(f"unknown family kind {kind_txt!r}")
    params = []
    seed = None
    for piece in rest.split(","):
        piece = piece.strip()
        if not piece:
            raise InputError(f"malformed family spec {text!r}")
        if piece.startswith("seed="):
            try:
                seed = int(piece[5:])
            except ValueError:
                raise InputError(f"bad seed in {text!r}") from None
        else:
            try:
                params.append(int(piece))
            except ValueError:
                raise InputError(f"bad parameter {piece!r} in {text!r}") from None
    expected = 2 if kind == "complete_bipartite" else 1
    if len(params) != expected:
        raise InputError(f"family {kind} takes {expected} parameter(s), got {len(params)}")
    if kind.startswith("random_") and seed is None:
        seed = 0
    return FamilySpec(kind, tuple(params), seed)


# --- edge-list text format (shared by every CLI command) ---


def format_edge_list(g: Graph, labels=None, header=None) -> str:
    """Stable text form: '# ...' comments, 'n <count>', one 'u v' per line.

    Labels, when given, are embedded as '# label <id> <name>' comments so a
    labeled graph round-trips through a single file.
    """
    lines = []
    if header:
        for h in header.splitlines():
            lines.append(f"# {h}")
    if labels is not None:
        for i, name in enumerate(labels):
            lines.append(f"# label {i} {name}")
    lines.append(f"n {g.n}")
    for u, v in g.sorted_edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str):
    """Parse the edge-list format; returns (Graph, labels-or-None)."""
    n = None
    edges = []
    labels = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("label "):
                parts = body.split()
                if len(parts) == 3:
                    try:
                        labels[int(parts[1])] = parts[2]
                    except ValueError:
                        pass
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'n <count>' first, got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise InputError(f"line {lineno}: bad vertex count") from None
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"line {lineno}: bad edge {line!r}") from None
    if n is None:
        raise InputError("missing 'n <count>' line")
    g = build_graph(n, edges)
    label_tuple = None
    if labels:
        if sorted(labels) != list(range(g.n)):
            raise InputError("label comments must cover vertices 0..n-1 exactly")
        label_tuple = tuple(labels[i] for i in range(g.n))
    return g, label_tuple
