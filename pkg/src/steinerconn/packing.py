"""Exact generalized (edge-)connectivity by Steiner tree packing search.

The search enumerates candidate S-trees (connected acyclic edge subsets
containing S whose leaves all lie in S; such trees are edge-minimal, and any
packing can be pruned to one of this form) and backtracks over packings of a
target size t, descending t until a packing exists.

Candidate trees are kept in a pool sorted by (edge count, edge tuple); a
packing is always enumerated with tree keys strictly increasing, which kills
permutation-equivalent orderings.  Because keys ascend, the next tree in a
partial packing of t trees can use at most (available edges) / (trees left)
edges, so the pool only ever materializes small trees unless a search
genuinely needs big ones.  The pool grows on demand, one size at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceededError, InputError
from .graphs import Graph, local_edge_connectivity

MODE_INTERNAL = "internal"
MODE_EDGE = "edge"
MODES = (MODE_INTERNAL, MODE_EDGE)

DEFAULT_BUDGET = 50_000_000


class SearchBudget:
    """Mutable step counter; exhausting it raises, never returns wrong data."""

    __slots__ = ("limit", "used")

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def spend(self, amount=1):
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceededError(
                f"search budget exceeded ({self.used} > {self.limit} steps)",
                used=self.used,
                limit=self.limit,
            )


@dataclass(frozen=True)
class TreePacking:
    """An ordered family of S-trees in a host graph, with a disjointness mode."""

    mode: str
    s: tuple
    trees: tuple  # tuple of frozensets of (u, v) edges
    host: Graph
    case_id: str | None = None
    construction: str | None = None

    def __len__(self):
        return len(self.trees)


@dataclass(frozen=True)
class ConnectivityResult:
    value: int
    argmin_set: tuple
    witness: TreePacking


@dataclass
class TreeCheck:
    index: int
    ok: bool
    problem: str | None = None


@dataclass
class PairCheck:
    first: int
    second: int
    ok: bool
    problem: str | None = None


@dataclass
class VerificationReport:
    mode: str
    tree_checks: list = field(default_factory=list)
    pair_checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.ok for c in self.tree_checks) and all(c.ok for c in self.pair_checks)

    def first_problem(self):
        for c in self.tree_checks:
            if not c.ok:
                return f"tree {c.index}: {c.problem}"
        for c in self.pair_checks:
            if not c.ok:
                return f"trees ({c.first}, {c.second}): {c.problem}"
        return None


def _validate_s(g: Graph, s):
    s_sorted = tuple(sorted(set(s)))
    if len(s_sorted) < 2:
        raise InputError("Steiner set needs at least 2 distinct vertices")
    for v in s_sorted:
        if not (0 <= v < g.n):
            raise InputError(f"Steiner vertex {v} not in graph")
    return s_sorted


# --- candidate enumeration ---


def _iter_steiner_trees(adj_idx, s_sorted, avail_v, avail_e, max_edges, budget,
                        terminals_leaves=False):
    """Yield (sorted edge-index tuple, vertex mask) for every S-tree with
    leaves in S, at most max_edges edges, inside the available masks.

    Trees are produced by attaching terminals one at a time via a simple path
    into the tree built so far; the decomposition is unique, so no tree is
    produced twice.  With terminals_leaves, only trees in which every terminal
    is a leaf are produced (a strict subset).
    """
    k = len(s_sorted)
    later = [tuple(s_sorted[j] for j in range(i + 1, k)) for i in range(k)]
    s_mask = 0
    for s in s_sorted:
        s_mask |= 1 << s

    def attach(ti, tree_v, tree_edges):
        if ti == k:
            yield tuple(sorted(tree_edges)), tree_v
            return
        s = s_sorted[ti]
        sbit = 1 << s
        if tree_v & sbit:
            if not terminals_leaves:
                yield from attach(ti + 1, tree_v, tree_edges)
            return

        def need(v_mask):
            n = 0
            for x in later[ti]:
                if not (v_mask >> x) & 1:
                    n += 1
            return n

        first_attach = not tree_edges

        def extend(v, path_v, path_edges):
            budget.spend()
            base = len(tree_edges) + len(path_edges) + 1
            for w, ei in adj_idx[v]:
                if not (avail_e >> ei) & 1:
                    continue
                wbit = 1 << w
                if wbit & tree_v:
                    if terminals_leaves and (wbit & s_mask) and not first_attach:
                        continue  # landing on a terminal would unleaf it
                    new_v = tree_v | path_v
                    if base + need(new_v) <= max_edges:
                        yield from attach(ti + 1, new_v, tree_edges + path_edges + [ei])
                elif (wbit & avail_v) and not (wbit & path_v):
                    if terminals_leaves and (wbit & s_mask):
                        continue  # terminals may not be path interiors
                    if base + 1 + need(tree_v | path_v | wbit) <= max_edges:
                        yield from extend(w, path_v | wbit, path_edges + [ei])

        yield from extend(s, sbit, [])

    yield from attach(1, 1 << s_sorted[0], [])


class _SearchContext:
    """Per-(graph, S) state: edge indexing, candidate pool, prune masks."""

    def __init__(self, g: Graph, s_sorted):
        self.g = g
        self.s = s_sorted
        self.edge_list = g.sorted_edges()
        self.edge_index = {e: i for i, e in enumerate(self.edge_list)}
        self.m = len(self.edge_list)
        adj = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(self.edge_list):
            adj[u].append((v, i))
            adj[v].append((u, i))
        self.adj_idx = tuple(tuple(sorted(a)) for a in adj)
        self.s_mask = 0
        for v in s_sorted:
            self.s_mask |= 1 << v
        self.all_v = (1 << g.n) - 1
        self.all_e = (1 << self.m) - 1
        self.inc = []
        for v in s_sorted:
            mask = 0
            for _, ei in self.adj_idx[v]:
                mask |= 1 << ei
            self.inc.append(mask)
        self.extra_total = g.n - len(s_sorted)
        # parallel arrays over candidate trees, sorted by (size, edge tuple)
        self.pool_sizes = []
        self.pool_keys = []
        self.pool_emasks = []
        self.pool_vmasks = []
        self.pool_max_size = 0

    def s_connected(self, avail_e=None, used_v=0):
        avail_e = self.all_e if avail_e is None else avail_e
        seen = 1 << self.s[0]
        stack = [self.s[0]]
        adj = self.adj_idx
        while stack:
            u = stack.pop()
            for w, ei in adj[u]:
                wbit = 1 << w
                if seen & wbit or not (avail_e >> ei) & 1 or used_v & wbit:
                    continue
                seen |= wbit
                stack.append(w)
        return seen & self.s_mask == self.s_mask

    def grow_pool(self, new_max, budget):
        if new_max <= self.pool_max_size:
            return
        fresh = []
        for etuple, vmask in _iter_steiner_trees(
            self.adj_idx, self.s, self.all_v, self.all_e, new_max, budget
        ):
            if len(etuple) > self.pool_max_size:
                emask = 0
                for ei in etuple:
                    emask |= 1 << ei
                fresh.append((len(etuple), etuple, emask, vmask & ~self.s_mask))
        fresh.sort(key=lambda item: (item[0], item[1]))
        # fresh sizes all exceed existing ones, so appending keeps the order
        for size, key, emask, vmask in fresh:
            self.pool_sizes.append(size)
            self.pool_keys.append(key)
            self.pool_emasks.append(emask)
            self.pool_vmasks.append(vmask)
        self.pool_max_size = new_max

    def max_tree_size(self):
        # a tree on <= n vertices has <= n-1 edges
        return min(self.m, self.g.n - 1)

    def find_packing(self, t, mode, budget):
        """Return a list of edge-index tuples forming a packing of size t, or None."""
        if t == 0:
            return []
        internal = mode == MODE_INTERNAL
        hard_cap = self.max_tree_size()
        inc = self.inc
        sizes = self.pool_sizes
        keys = self.pool_keys
        emasks = self.pool_emasks
        vmasks = self.pool_vmasks
        all_e = self.all_e
        all_v = self.all_v
        k = len(self.s)
        extra_total = self.extra_total
        spend = budget.spend

        def node(start_idx, used_e, used_v, acc):
            spend()
            rem = t - len(acc)
            avail_e = all_e & ~used_e
            size_cap = min(avail_e.bit_count() // rem, hard_cap)
            if internal:
                # each remaining tree of size L swallows L + 1 - k fresh vertices
                avail_extra = extra_total - used_v.bit_count()
                size_cap = min(size_cap, avail_extra // rem + k - 1)
            if size_cap < 1:
                return None
            for mask in inc:
                if (mask & avail_e).bit_count() < rem:
                    return None
            if not self.s_connected(avail_e, used_v if internal else 0):
                return None
            if rem == 1:
                # the connected residual always contains one more S-tree, and
                # the packing stays canonical-unique up to its last member
                avail_v = all_v & ~used_v if internal else all_v
                for etuple, _vmask in _iter_steiner_trees(
                    self.adj_idx, self.s, avail_v, avail_e, size_cap, budget
                ):
                    return acc + [etuple]
                return None
            idx = start_idx
            npool = len(sizes)
            while True:
                if idx >= npool:
                    if self.pool_max_size >= size_cap:
                        return None
                    self.grow_pool(self.pool_max_size + 1, budget)
                    npool = len(sizes)
                    continue
                if sizes[idx] > size_cap:
                    # pool is size-sorted and grown items are larger still
                    return None
                em = emasks[idx]
                if not (em & used_e):
                    vx = vmasks[idx]
                    if not internal or not (vx & used_v):
                        spend()
                        got = node(idx + 1, used_e | em, used_v | vx, acc + [keys[idx]])
                        if got is not None:
                            return got
                idx += 1

        return node(0, 0, 0, [])

    def find_packing_greedy(self, t, mode, budget, note="", attempts=400):
        """Success-oriented packing search: seeded randomized greedy restarts.

        Each attempt repeatedly extracts one S-tree from the residual graph
        (neighbour order shuffled per attempt, smallest size cap first,
        terminal-leaf trees preferred since terminal degrees are the scarce
        resource) and restarts on a dead end.  Unlike find_packing this proves
        nothing on failure; use it only where a packing is known to exist.
        """
        import random as _random

        internal = mode == MODE_INTERNAL
        hard_cap = self.max_tree_size()
        k = len(self.s)
        soft_cap = min(hard_cap, k + 4)  # dead ends must fail fast

        def extract(adj, avail_v, avail_e, leaves_only):
            cap_limit = soft_cap if leaves_only else hard_cap
            for cap in range(k - 1, cap_limit + 1):
                for item in _iter_steiner_trees(
                    adj, self.s, avail_v, avail_e, cap, budget, terminals_leaves=leaves_only
                ):
                    return item
            return None

        base_adj = [list(nb) for nb in self.adj_idx]
        for attempt in range(attempts):
            rng = _random.Random(attempt * 7919 + 17)
            if attempt == 0:
                adj = self.adj_idx
            else:
                for nb in base_adj:
                    rng.shuffle(nb)
                adj = tuple(tuple(nb) for nb in base_adj)
            leaves_only = attempt % 3 != 2  # every third attempt lifts the restriction
            used_e = 0
            used_v = 0
            acc = []
            while len(acc) < t:
                budget.spend()
                avail_e = self.all_e & ~used_e
                used_mask = used_v if internal else 0
                if not self.s_connected(avail_e, used_mask):
                    break
                avail_v = self.all_v & ~used_v if internal else self.all_v
                got = extract(adj, avail_v, avail_e, leaves_only)
                if got is None:
                    break
                etuple, vmask = got
                for ei in etuple:
                    used_e |= 1 << ei
                used_v |= vmask & ~self.s_mask
                acc.append(etuple)
            if len(acc) == t:
                return acc
        return None

    def tuples_to_packing(self, edge_tuples, mode, host_s, **extra):
        trees = tuple(
            frozenset(self.edge_list[ei] for ei in etuple) for etuple in edge_tuples
        )
        return TreePacking(mode=mode, s=host_s, trees=trees, host=self.g, **extra)


def _upper_bound(ctx: _SearchContext):
    # every tree uses an edge at each S vertex, and the trees restricted to a
    # fixed pair (u, v) in S give edge-disjoint u-v paths
    ub = min(ctx.g.degree(v) for v in ctx.s)
    for u, v in combinations(ctx.s, 2):
        if ub <= 1:
            break
        ub = min(ub, local_edge_connectivity(ctx.g, u, v))
    return ub


def _capped_value(ctx, mode, cap, budget):
    """Largest packing size found, probing no higher than cap.

    Returns (value, edge_tuples).  value == cap means "at least cap".
    """
    for t in range(cap, 0, -1):
        got = ctx.find_packing(t, mode, budget)
        if got is not None:
            return t, got
    return 0, []


def local_connectivity(g: Graph, s, mode, budget=None):
    """Exact generalized local (edge-)connectivity of S with a witness packing."""
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}")
    s_sorted = _validate_s(g, s)
    budget = budget if budget is not None else SearchBudget()
    ctx = _SearchContext(g, s_sorted)
    if not ctx.s_connected():
        return 0, TreePacking(mode=mode, s=s_sorted, trees=(), host=g)
    ub = _upper_bound(ctx)
    value, found = _capped_value(ctx, mode, ub, budget)
    return value, ctx.tuples_to_packing(found, mode, s_sorted)


def generalized_connectivity(g: Graph, k, mode, budget=None) -> ConnectivityResult:
    """Exact minimum of local connectivity over all k-subsets.

    Scans subsets in lexicographic order with a running-minimum cutoff: a
    subset whose local value reaches the current minimum cannot improve it,
    so its search stops at the first packing of that size.  The reported
    argmin is the lexicographically least minimizing subset.
    """
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}")
    if not 2 <= k <= g.n:
        raise InputError(f"k must satisfy 2 <= k <= {g.n}, got {k}")
    budget = budget if budget is not None else SearchBudget()
    best = None
    best_s = None
    best_witness = None
    for s in combinations(range(g.n), k):
        ctx = _SearchContext(g, s)
        if not ctx.s_connected():
            result = ConnectivityResult(0, s, TreePacking(mode=mode, s=s, trees=(), host=g))
            return result  # 0 is a global minimum; s is lex-least with value 0
        cap = _upper_bound(ctx)
        if best is not None:
            cap = min(cap, best)
        value, found = _capped_value(ctx, mode, cap, budget)
        if best is None or value < best:
            best = value
            best_s = s
            best_witness = ctx.tuples_to_packing(found, mode, s)
    return ConnectivityResult(best, best_s, best_witness)


# --- independent packing verifier (shares nothing with the search) ---


def _edge_set_shape(edges):
    """Classify an edge set: returns (vertex set, 'tree'|'forest'|'cyclic')."""
    verts = set()
    for u, v in edges:
        verts.add(u)
        verts.add(v)
    if not edges:
        return verts, "tree"
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = len(verts)
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return verts, "cyclic"
        parent[ru] = rv
        components -= 1
    return verts, ("tree" if components == 1 else "forest")


def verify_packing(g: Graph, s, packing: TreePacking) -> VerificationReport:
    """Check every tree is an S-tree and every pair is disjoint per the mode.

    Raises InputError on edges that do not exist in the host graph; structural
    violations (not a tree, missing S, shared resources) land in the report.
    """
    if packing.mode not in MODES:
        raise InputError(f"mode must be one of {MODES}")
    s_sorted = _validate_s(g, s)
    s_set = set(s_sorted)
    report = VerificationReport(mode=packing.mode)
    normalized = []
    for ti, tree in enumerate(packing.trees):
        edges = set()
        for u, v in tree:
            e = (min(u, v), max(u, v))
            if e not in g.edges:
                raise InputError(f"tree {ti}: edge {e} not in host graph")
            edges.add(e)
        normalized.append(edges)

    vertex_sets = []
    for ti, edges in enumerate(normalized):
        verts, shape = _edge_set_shape(edges)
        vertex_sets.append(verts)
        if not edges and len(s_set) > 1:
            report.tree_checks.append(TreeCheck(ti, False, "empty edge set"))
        elif shape != "tree":
            report.tree_checks.append(TreeCheck(ti, False, f"edge set is {shape}, not a tree"))
        elif not s_set <= verts:
            missing = sorted(s_set - verts)
            report.tree_checks.append(TreeCheck(ti, False, f"missing S vertices {missing}"))
        else:
            report.tree_checks.append(TreeCheck(ti, True))

    for i, j in combinations(range(len(normalized)), 2):
        shared_e = normalized[i] & normalized[j]
        if shared_e:
            report.pair_checks.append(
                PairCheck(i, j, False, f"shared edge {sorted(shared_e)[0]}")
            )
            continue
        if packing.mode == MODE_INTERNAL:
            shared_v = (vertex_sets[i] & vertex_sets[j]) - s_set
            if shared_v:
                report.pair_checks.append(
                    PairCheck(i, j, False, f"shared non-S vertex {sorted(shared_v)[0]}")
                )
                continue
        report.pair_checks.append(PairCheck(i, j, True))
    return report


# --- packing JSON (names are the transforms module's symbolic vertex names) ---

FORMAT_TAG = "steiner-conn/1"


def packing_to_json_dict(packing: TreePacking, names=None) -> dict:
    if names is None:
        names = tuple(f"v:{i}" for i in range(packing.host.n))
    doc = {
        "format": FORMAT_TAG,
        "mode": packing.mode,
        "s": [names[v] for v in packing.s],
        "trees": [
            sorted([names[u], names[v]] for u, v in sorted(tree)) for tree in packing.trees
        ],
    }
    if packing.case_id is not None:
        doc["case_id"] = packing.case_id
    if packing.construction is not None:
        doc["construction"] = packing.construction
    return doc


def packing_from_json_dict(doc: dict, g: Graph, names=None) -> TreePacking:
    if doc.get("format") != FORMAT_TAG:
        raise InputError(f"unsupported packing format {doc.get('format')!r}")
    if names is None:
        names = tuple(f"v:{i}" for i in range(g.n))
    index = {name: i for i, name in enumerate(names)}

    def resolve(name):
        try:
            return index[name]
        except KeyError:
            raise InputError(f"unknown vertex name {name!r}") from None

    mode = doc.get("mode")
    if mode not in MODES:
        raise InputError(f"bad mode {mode!r} in packing")
    s = tuple(sorted(resolve(x) for x in doc["s"]))
    trees = tuple(
        frozenset((min(resolve(a), resolve(b)), max(resolve(a), resolve(b))) for a, b in tree)
        for tree in doc["trees"]
    )
    return TreePacking(
        mode=mode,
        s=s,
        trees=trees,
        host=g,
        case_id=doc.get("case_id"),
        construction=doc.get("construction"),
    )
