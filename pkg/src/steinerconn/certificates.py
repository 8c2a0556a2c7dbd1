"""Explicit disjoint-S-tree certificates for total graphs.

Certificates are built case by case from index-parametric tree templates at
canonical S positions, then conjugated back through the automorphism that
canonicalized S.  Every tree is self-checked as it is added (edges exist,
connected, acyclic, contains S) and the finished packing must pass
verify_packing, so a transcription slip surfaces as a named ConstructionError
rather than a bad certificate.  Deliberate deviations from the published
construction text live in RECTIFICATIONS.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import BudgetExceededError, ConstructionError, InputError
from .graphs import FamilySpec, Graph, generate_family, is_connected
from .packing import (
    MODE_EDGE,
    MODE_INTERNAL,
    SearchBudget,
    TreePacking,
    _SearchContext,
    verify_packing,
)
from .transforms import LabeledGraph, edge_vertex, line_graph, original, total_graph

FALLBACK_BUDGET = 20_000_000


# --- shared plumbing ---


def _uv(i):
    return original(i)


def _ev(i, j):
    return edge_vertex(i, j)


class _Cert:
    """Accumulates label-space trees over a total graph and self-checks each."""

    def __init__(self, tgl: LabeledGraph, s_ids, mode):
        self.tgl = tgl
        self.s_ids = tuple(sorted(s_ids))
        self.mode = mode
        self.trees = []
        self.notes = []

    def add(self, label_edges, note=""):
        g = self.tgl.graph
        ids = []
        for a, b in label_edges:
            ia, ib = self.tgl.index_of(a), self.tgl.index_of(b)
            e = (min(ia, ib), max(ia, ib))
            if e not in g.edges:
                raise ConstructionError(f"{note or 'tree'}: {a}-{b} is not an edge of the host")
            ids.append(e)
        edge_set = frozenset(ids)
        if len(edge_set) != len(ids):
            raise ConstructionError(f"{note or 'tree'}: duplicate edge in template")
        verts = {v for e in edge_set for v in e}
        if len(edge_set) != len(verts) - 1:
            raise ConstructionError(f"{note or 'tree'}: not a tree (edge/vertex count)")
        if not set(self.s_ids) <= verts:
            raise ConstructionError(f"{note or 'tree'}: does not contain all of S")
        # connectivity via union-find
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edge_set:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ConstructionError(f"{note or 'tree'}: contains a cycle")
            parent[ru] = rv
        self.trees.append(edge_set)
        self.notes.append(note)

    def add_id_tree(self, edge_ids, note=""):
        labels = [(self.tgl.labels[u], self.tgl.labels[v]) for u, v in edge_ids]
        self.add(labels, note)

    def packing(self, case_id, construction):
        packing = TreePacking(
            mode=self.mode,
            s=self.s_ids,
            trees=tuple(self.trees),
            host=self.tgl.graph,
            case_id=case_id,
            construction=construction,
        )
        report = verify_packing(self.tgl.graph, self.s_ids, packing)
        if not report.passed:
            raise ConstructionError(
                f"{case_id}: built packing failed verification: {report.first_problem()}"
            )
        return packing


@dataclass(frozen=True)
class CanonicalPlacement:
    """How an S was moved into the representative position of its case."""

    automorphism: tuple  # sigma[old_vertex_id] = new_vertex_id in the total graph
    canonical_s: tuple
    case_id: str


def _label_permutation_to_ids(tgl: LabeledGraph, label_map):
    sigma = [None] * tgl.graph.n
    for vid, lab in enumerate(tgl.labels):
        sigma[vid] = tgl.index_of(label_map(lab))
    sigma = tuple(sigma)
    # must be a graph automorphism
    if sorted(sigma) != list(range(tgl.graph.n)):
        raise ConstructionError("canonical map is not a bijection")
    edges = tgl.graph.edges
    for u, v in edges:
        su, sv = sigma[u], sigma[v]
        if (min(su, sv), max(su, sv)) not in edges:
            raise ConstructionError("canonical map does not preserve adjacency")
    return sigma


def _invert(sigma):
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def _conjugate_trees(trees, sigma_inv):
    out = []
    for tree in trees:
        out.append(frozenset((min(sigma_inv[u], sigma_inv[v]), max(sigma_inv[u], sigma_inv[v]))
                             for u, v in tree))
    return out


def _restricted_graph(g: Graph, keep_edges):
    return Graph(g.n, frozenset(keep_edges))


def _residual_graph(g: Graph, used_edges, blocked_vertices):
    keep = [
        e
        for e in g.edges
        if e not in used_edges and not (e[0] in blocked_vertices or e[1] in blocked_vertices)
    ]
    return _restricted_graph(g, keep)


def _search_trees_in(g: Graph, s_ids, count, mode, budget=None, note="auxiliary search"):
    """Bounded exact search for `count` disjoint S-trees inside g."""
    budget = budget if budget is not None else SearchBudget(FALLBACK_BUDGET)
    ctx = _SearchContext(g, tuple(sorted(s_ids)))
    found = ctx.find_packing(count, mode, budget)
    if found is None:
        raise ConstructionError(f"{note}: no packing of size {count} found")
    return [frozenset(ctx.edge_list[ei] for ei in etuple) for etuple in found]


# --- complete graphs: canonicalization ---


def _complete_case(n, s_labels):
    """Classify S in T(K_n) and return (case_id, vertex_permutation of K_n)."""
    orig = sorted(lab[1] for lab in s_labels if lab[0] == "v")
    evs = sorted((lab[1], lab[2]) for lab in s_labels if lab[0] == "e")

    def finish(assigned):
        rest = [i for i in range(n) if i not in assigned]
        return tuple(assigned + rest)

    if len(orig) == 3:
        return "complete-1", finish(orig)
    if len(orig) == 2:
        a, b = orig
        c, d = evs[0]
        shared = {a, b} & {c, d}
        if len(shared) == 2:
            return "complete-2-identical", finish([a, b])
        if len(shared) == 1:
            sh = shared.pop()
            x = a if b == sh else b
            other = c if d == sh else d
            return "complete-2-adjacent", finish([x, sh, other])
        return "complete-2-disjoint", finish([a, b, c, d])
    if len(orig) == 1:
        a = orig[0]
        (p, q), (r, t) = evs
        y_has_a = a in (p, q)
        z_has_a = a in (r, t)
        if z_has_a and not y_has_a:
            (p, q), (r, t) = (r, t), (p, q)
            y_has_a, z_has_a = True, False
        shared = {p, q} & {r, t}
        if y_has_a and z_has_a:
            # both edge-vertices sit at a: S = {u_a, e_ab, e_af}
            b = p if q == a else q
            f = r if t == a else t
            return "complete-3-fan", finish([a, b, f])
        if y_has_a and shared:
            # x incident y, y and z share an endpoint
            c = shared.pop()
            if c == a:
                # shared endpoint is a itself: z also touches a, handled above
                raise ConstructionError("impossible complete case-3 pattern")
            f = r if t == c else t
            return "complete-3-chain", finish([a, c, f])
        if y_has_a:
            b = p if q == a else q
            return "complete-3-pendant", finish([a, b] + sorted((r, t)))
        if shared:
            c = shared.pop()
            b = p if q == c else q
            f = r if t == c else t
            return "complete-3-cherry", finish([a, b, c, f])
        return "complete-3-scatter", finish([a] + sorted((p, q)) + sorted((r, t)))
    # all three among edge-vertices
    idx = sorted({i for e in evs for i in e})
    return "complete-4-line", finish(idx)


def canonicalize_complete(n, tgl: LabeledGraph, s_ids) -> CanonicalPlacement:
    s_labels = [tgl.labels[v] for v in s_ids]
    case_id, perm = _complete_case(n, s_labels)
    # perm lists old ids in the order they should take positions 0, 1, 2, ...
    pos = {old: new for new, old in enumerate(perm)}

    def label_map(lab):
        if lab[0] == "v":
            return _uv(pos[lab[1]])
        return _ev(pos[lab[1]], pos[lab[2]])

    sigma = _label_permutation_to_ids(tgl, label_map)
    canonical_s = tuple(sorted(sigma[v] for v in s_ids))
    return CanonicalPlacement(sigma, canonical_s, case_id)


# --- complete graphs: case templates at canonical positions (0-based) ---
# x, y, z follow the published case layout; helper indices are spelled out.


def _kn_case1(n):
    x, y, z = _uv(0), _uv(1), _uv(2)
    trees = [[(z, x), (x, y)]]
    for i in range(3, n):
        trees.append([(_uv(i), z), (_uv(i), x), (_uv(i), y)])
    trees.append([(x, _ev(0, 1)), (_ev(0, 1), y), (y, z)])
    trees.append([(x, _ev(0, 2)), (_ev(0, 2), z), (z, _ev(1, 2)), (_ev(1, 2), y)])
    for j in range(3, n):
        trees.append(
            [
                (x, _ev(j, 0)),
                (_ev(j, 0), _ev(j, 1)),
                (_ev(j, 1), y),
                (_ev(j, 1), _ev(j, 2)),
                (_ev(j, 2), z),
            ]
        )
    return trees


def _kn_case2_disjoint(n):
    # S = {u_0, u_1, e_23}
    a, b, c, d = 0, 1, 2, 3
    x, y, z = _uv(a), _uv(b), _ev(c, d)
    trees = []
    for i in range(n):
        if i in (a, b):
            continue
        leg = [(_uv(i), z)] if i in (c, d) else [(_uv(i), _ev(i, c)), (_ev(i, c), z)]
        trees.append([(x, _uv(i)), (_uv(i), y)] + leg)
    for i in range(n):
        if i in (a, b, d):
            continue
        if i == c:
            trees.append([(x, _ev(a, c)), (_ev(a, c), _ev(b, c)), (_ev(b, c), y), (_ev(b, c), z)])
        else:
            trees.append(
                [
                    (x, _ev(a, i)),
                    (_ev(a, i), _ev(b, i)),
                    (_ev(b, i), y),
                    (_ev(b, i), _ev(i, d)),
                    (_ev(i, d), z),
                ]
            )
    trees.append([(y, x), (x, _ev(a, d)), (_ev(a, d), z)])
    trees.append([(x, _ev(a, b)), (_ev(a, b), y), (y, _ev(b, d)), (_ev(b, d), z)])
    return trees


def _kn_case2_adjacent(n):
    # S = {u_0, u_1, e_12}: edge-vertex shares endpoint 1 with y
    a, b, d = 0, 1, 2
    x, y, z = _uv(a), _uv(b), _ev(b, d)
    trees = []
    for i in range(n):
        if i in (a, b):
            continue
        leg = [(_uv(i), z)] if i == d else [(_uv(i), _ev(i, d)), (_ev(i, d), z)]
        trees.append([(x, _uv(i)), (_uv(i), y)] + leg)
    for i in range(n):
        if i in (a, b, d):
            continue
        trees.append(
            [(x, _ev(a, i)), (_ev(a, i), _ev(b, i)), (_ev(b, i), y), (_ev(b, i), z)]
        )
    trees.append([(y, x), (x, _ev(a, d)), (_ev(a, d), z)])
    trees.append([(x, _ev(a, b)), (_ev(a, b), y), (y, z)])
    return trees


def _kn_case2_identical(n, mode):
    # S = {u_0, u_1, e_01}
    a, b = 0, 1
    x, y, z = _uv(a), _uv(b), _ev(a, b)
    others = [i for i in range(n) if i not in (a, b)]
    trees = []
    if mode == MODE_EDGE:
        for i in others:
            trees.append([(x, _uv(i)), (_uv(i), _ev(b, i)), (_ev(b, i), z), (_ev(b, i), y)])
            trees.append([(x, _ev(a, i)), (_ev(a, i), _uv(i)), (_uv(i), y), (_ev(a, i), z)])
        trees.append([(x, z), (z, y)])
        return trees
    # internal mode: pairs of spare vertices give three trees each
    pairs = [(others[t], others[t + 1]) for t in range(0, len(others) - 1, 2)]
    leftover = others[-1] if len(others) % 2 else None
    for i, j in pairs:
        trees.append([(x, _uv(i)), (_uv(i), _ev(a, i)), (_ev(a, i), z), (_uv(i), y)])
        trees.append([(x, _uv(j)), (_uv(j), _ev(b, j)), (_ev(b, j), z), (_uv(j), y)])
        trees.append([(x, _ev(a, j)), (_ev(a, j), z), (z, _ev(b, i)), (_ev(b, i), y)])
    if leftover is not None:
        i = leftover
        trees.append([(x, _uv(i)), (_uv(i), _ev(a, i)), (_ev(a, i), z), (_uv(i), y)])
    trees.append([(x, y), (y, z)])
    return trees


def _kn_case3_scatter(n, mode):
    # S = {u_0, e_12, e_34}; the published family double-books e_cf and e_bd,
    # so internal mode drops the two colliding trees (still above target)
    a, b, c, d, f = 0, 1, 2, 3, 4
    x, y, z = _uv(a), _ev(b, c), _ev(d, f)
    trees = []
    for i in range(n):
        if i in (a, d):
            continue
        yleg = [(_uv(i), y)] if i in (b, c) else [(_uv(i), _ev(i, c)), (_ev(i, c), y)]
        zleg = [(_uv(i), z)] if i == f else [(_uv(i), _ev(i, d)), (_ev(i, d), z)]
        trees.append([(x, _uv(i))] + yleg + zleg)
    skip = (a, b, c, d) if mode == MODE_INTERNAL else (a, b)
    for i in range(n):
        if i in skip:
            continue
        if i == c:
            trees.append([(x, _ev(a, c)), (z, _ev(c, f)), (_ev(c, f), _ev(a, c)), (_ev(a, c), y)])
        elif i == d:
            trees.append([(x, _ev(a, d)), (z, _ev(a, d)), (_ev(a, d), _ev(b, d)), (_ev(b, d), y)])
        elif i == f:
            trees.append([(x, _ev(a, f)), (z, _ev(a, f)), (_ev(a, f), _ev(f, b)), (_ev(f, b), y)])
        else:
            trees.append(
                [
                    (x, _ev(a, i)),
                    (z, _ev(i, f)),
                    (_ev(i, f), _ev(a, i)),
                    (_ev(a, i), _ev(i, b)),
                    (_ev(i, b), y),
                ]
            )
    trees.append([(y, _ev(a, b)), (_ev(a, b), x), (x, _uv(d)), (_uv(d), z)])
    return trees


def _kn_case3_pendant(n):
    # S = {u_0, e_01, e_23}: x incident y, z disjoint from both
    a, b, c, d = 0, 1, 2, 3
    x, y, z = _uv(a), _ev(a, b), _ev(c, d)
    trees = [[(x, y), (x, _uv(d)), (_uv(d), z)]]
    for i in range(n):
        if i in (a, d):
            continue
        yleg = [(_uv(i), y)] if i == b else [(_uv(i), _ev(i, b)), (_ev(i, b), y)]
        if i == c:
            zleg = [(_uv(c), z)]
        elif i == b:
            zleg = [(_uv(b), _ev(b, d)), (_ev(b, d), z)]
        else:
            zleg = [(_uv(i), _ev(i, c)), (_ev(i, c), z)]
        trees.append([(x, _uv(i))] + yleg + zleg)
    for i in range(n):
        if i in (a, b):
            continue
        if i in (c, d):
            trees.append([(x, _ev(a, i)), (_ev(a, i), y), (_ev(a, i), z)])
        else:
            trees.append(
                [(x, _ev(a, i)), (_ev(a, i), y), (_ev(a, i), _ev(i, d)), (_ev(i, d), z)]
            )
    return trees


def _kn_case3_cherry(n):
    # S = {u_0, e_12, e_23}: y and z share endpoint 2 only
    a, b, c, f = 0, 1, 2, 3
    x, y, z = _uv(a), _ev(b, c), _ev(c, f)
    trees = []
    for i in range(n):
        if i in (a, f):
            continue
        if i == b:
            trees.append([(x, _uv(b)), (_uv(b), y), (y, z)])
        elif i == c:
            trees.append([(x, _uv(c)), (_uv(c), y), (_uv(c), z)])
        else:
            trees.append([(x, _uv(i)), (_uv(i), _ev(i, c)), (_ev(i, c), y), (_ev(i, c), z)])
    for i in range(n):
        if i in (a, b, f):
            continue
        if i == c:
            trees.append([(x, _ev(a, c)), (z, _ev(a, c)), (_ev(a, c), y)])
        else:
            trees.append(
                [
                    (x, _ev(a, i)),
                    (z, _ev(i, f)),
                    (_ev(i, f), _ev(a, i)),
                    (_ev(a, i), _ev(i, b)),
                    (_ev(i, b), y),
                ]
            )
    trees.append([(x, _uv(f)), (_uv(f), _ev(b, f)), (_ev(b, f), y), (_ev(b, f), z)])
    trees.append([(x, _ev(a, b)), (_ev(a, b), _ev(a, f)), (_ev(a, f), z), (_ev(a, b), y)])
    return trees


def _kn_case3_chain(n):
    # S = {u_0, e_01, e_12}: x incident y, y and z share endpoint 1
    a, c, f = 0, 1, 2
    x, y, z = _uv(a), _ev(a, c), _ev(c, f)
    trees = []
    for i in range(n):
        if i == f:
            continue
        if i == a:
            trees.append([(x, y), (y, z)])
        elif i == c:
            trees.append([(x, _uv(c)), (_uv(c), y), (_uv(c), z)])
        else:
            trees.append([(x, _uv(i)), (_uv(i), _ev(i, c)), (_ev(i, c), y), (_ev(i, c), z)])
    for i in range(n):
        if i in (a, c):
            continue
        if i == f:
            trees.append([(x, _ev(a, f)), (z, _ev(a, f)), (_ev(a, f), y)])
        else:
            trees.append(
                [(x, _ev(a, i)), (z, _ev(i, f)), (_ev(i, f), _ev(a, i)), (_ev(a, i), y)]
            )
    return trees


def _kn_case3_fan(n):
    # S = {u_0, e_01, e_02}: every pair adjacent
    a, b, f = 0, 1, 2
    x, y, z = _uv(a), _ev(a, b), _ev(a, f)
    trees = []
    for i in range(n):
        if i in (a, b, f):
            continue
        trees.append(
            [
                (x, _uv(i)),
                (_uv(i), _ev(i, b)),
                (_ev(i, b), y),
                (_uv(i), _ev(i, f)),
                (_ev(i, f), z),
            ]
        )
    for i in range(n):
        if i in (a, f):
            continue
        if i == b:
            trees.append([(x, y), (y, z)])
        else:
            trees.append([(x, _ev(a, i)), (_ev(a, i), y), (_ev(a, i), z)])
    trees.append([(y, _uv(b)), (_uv(b), x), (x, z)])
    trees.append([(x, _uv(f)), (_uv(f), _ev(b, f)), (_ev(b, f), y), (_ev(b, f), z)])
    return trees


def _sdr_triples(e1, e2, e3):
    """Systems of distinct representatives for three distinct edges."""
    for alpha in e1:
        for gamma in e2:
            for zeta in e3:
                if alpha != gamma and gamma != zeta and alpha != zeta:
                    yield alpha, gamma, zeta


def _kn_case4(n, tgl, s_ids, mode, budget):
    """S inside the line layer: lemma-target base packing plus layer trees."""
    s_labels = sorted(tgl.labels[v] for v in s_ids)
    evs = [(lab[1], lab[2]) for lab in s_labels]
    kn = generate_family(FamilySpec("complete", (n,)))
    lg = line_graph(kn)
    target = (3 * (n - 2)) // 2 if mode == MODE_INTERNAL else 2 * n - 5
    base = cert_line_fallback(
        lg, tuple(lg.index_of(_ev(*e)) for e in evs), target, mode, budget
    )
    cert = _Cert(tgl, s_ids, mode)
    for tree in base.trees:
        cert.add([(lg.labels[u], lg.labels[v]) for u, v in tree], note="line-layer base")
    e1, e2, e3 = evs

    def bridge(al, ga, ze):
        return [
            (_ev(*e1), _uv(al)),
            (_uv(al), _uv(ga)),
            (_uv(ga), _ev(*e2)),
            (_uv(ga), _uv(ze)),
            (_uv(ze), _ev(*e3)),
        ]

    def ids_of(label_edges):
        return frozenset(
            (min(tgl.index_of(a), tgl.index_of(b)), max(tgl.index_of(a), tgl.index_of(b)))
            for a, b in label_edges
        )

    alpha, gamma, zeta = next(_sdr_triples(e1, e2, e3))
    first_bridge = bridge(alpha, gamma, zeta)
    cert.add(first_bridge, note="layer bridge")
    if mode == MODE_EDGE:
        # a second bridge, edge-disjoint from the first: complementary
        # representatives when the index positions allow, else a search over
        # the original+incidence layers
        added = False
        first_ids = ids_of(first_bridge)
        comp = (
            e1[0] if e1[1] == alpha else e1[1],
            e2[0] if e2[1] == gamma else e2[1],
            e3[0] if e3[1] == zeta else e3[1],
        )
        if len(set(comp)) == 3:
            second = bridge(*comp)
            if not (ids_of(second) & first_ids):
                cert.add(second, note="layer bridge 2")
                added = True
        if not added:
            s_idset = set(s_ids)
            allowed = []
            for u, v in tgl.graph.edges:
                lu, lv = tgl.labels[u], tgl.labels[v]
                both_orig = lu[0] == "v" and lv[0] == "v"
                incidence = (lu[0] == "v") != (lv[0] == "v")
                if both_orig or (incidence and (u in s_idset or v in s_idset)):
                    allowed.append((u, v))
            residual = _restricted_graph(
                tgl.graph, [e for e in allowed if e not in first_ids]
            )
            tree = _search_trees_in(residual, s_ids, 1, mode, budget, "second layer bridge")[0]
            cert.add_id_tree(sorted(tree), note="layer bridge 2 (searched)")
    return cert


_KN_BUILDERS = {
    "complete-1": lambda n, mode: _kn_case1(n),
    "complete-2-disjoint": lambda n, mode: _kn_case2_disjoint(n),
    "complete-2-adjacent": lambda n, mode: _kn_case2_adjacent(n),
    "complete-2-identical": _kn_case2_identical,
    "complete-3-scatter": _kn_case3_scatter,
    "complete-3-pendant": lambda n, mode: _kn_case3_pendant(n),
    "complete-3-cherry": lambda n, mode: _kn_case3_cherry(n),
    "complete-3-chain": lambda n, mode: _kn_case3_chain(n),
    "complete-3-fan": lambda n, mode: _kn_case3_fan(n),
}


def cert_total_complete(n, s_ids, mode, budget=None) -> TreePacking:
    """Disjoint S-tree family in T(K_n) meeting the published targets."""
    if mode not in (MODE_INTERNAL, MODE_EDGE):
        raise InputError(f"bad mode {mode!r}")
    if n < 4:
        raise InputError("complete-graph certificates cover n >= 4")
    tgl = total_graph(generate_family(FamilySpec("complete", (n,))))
    s_ids = _check_s(tgl, s_ids)
    placement = canonicalize_complete(n, tgl, s_ids)
    sigma_inv = _invert(placement.automorphism)
    if placement.case_id == "complete-4-line":
        cert = _kn_case4(n, tgl, s_ids, mode, budget)
        return cert.packing(placement.case_id, "line-layer base plus layer bridges")
    builder = _KN_BUILDERS[placement.case_id]
    trees = builder(n, mode)
    cert = _Cert(tgl, s_ids, mode)
    canonical = _Cert(tgl, placement.canonical_s, mode)
    for idx, label_edges in enumerate(trees):
        canonical.add(label_edges, note=f"{placement.case_id}[{idx}]")
    for tree in _conjugate_trees(canonical.trees, sigma_inv):
        cert.add_id_tree(sorted(tree), note=placement.case_id)
    return cert.packing(placement.case_id, f"parametric family at {placement.canonical_s}")


def _check_s(tgl, s_ids):
    s = tuple(sorted(set(s_ids)))
    if len(s) != 3:
        raise InputError("certificates cover 3-element Steiner sets")
    for v in s:
        if not (0 <= v < tgl.graph.n):
            raise InputError(f"vertex {v} not in total graph")
    return s


# --- trees: one construction per layer, no case explosion ---


def _hull_edges(adj, terminals):
    """Union of the pairwise paths between terminals inside a tree."""
    terminals = list(terminals)
    root = terminals[0]
    parent = {root: None}
    order = [root]
    queue = [root]
    while queue:
        u = queue.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    edges = set()
    for t in terminals[1:]:
        v = t
        while v != root:
            p = parent[v]
            e = (min(v, p), max(v, p))
            if e in edges:
                break
            edges.add(e)
            v = p
    return edges


def cert_total_tree(tree: Graph, s_ids, budget=None) -> TreePacking:
    """Two internally disjoint S-trees in the total graph of a tree.

    One tree lives in the original layer (the spanning paths between the
    projections of S) with pendant hops up to the edge-vertices of S; the
    other lives in the line layer (a pruned corresponding tree) with pendant
    hops down to the originals of S.  Their vertex sets meet exactly in S.
    """
    if tree.n < 2 or len(tree.edges) != tree.n - 1 or not is_connected(tree):
        raise InputError("host must be a tree with at least one edge")
    tgl = total_graph(tree)
    s_ids = _check_s(tgl, s_ids)
    cert = _Cert(tgl, s_ids, MODE_INTERNAL)
    if tree.n == 2:
        edges = sorted(tgl.graph.edges)[:2]
        cert.add_id_tree(edges, note="triangle path")
        return cert.packing("tree-order-2", "single spanning path of the triangle")

    labels = [tgl.labels[v] for v in s_ids]
    s_orig = sorted(lab[1] for lab in labels if lab[0] == "v")
    s_ev = sorted((lab[1], lab[2]) for lab in labels if lab[0] == "e")
    adj = {v: list(tree.adjacency()[v]) for v in range(tree.n)}

    # line-layer projections first: each original picks an incident tree edge,
    # outside S when it has any choice
    proj_b = {}
    for u in s_orig:
        incident = sorted((min(u, w), max(u, w)) for w in adj[u])
        free = [e for e in incident if e not in s_ev]
        proj_b[u] = free[0] if free else incident[0]
    # original-layer projections: never attach an S edge-vertex at an original
    # that was forced to project onto that same edge
    proj_a = {}
    for e in s_ev:
        candidates = [p for p in e if not (p in proj_b and proj_b[p] == e)]
        if not candidates:
            raise ConstructionError("both endpoints forced; impossible for n >= 3")
        proj_a[e] = min(candidates)

    pa = sorted(set(s_orig) | {proj_a[e] for e in s_ev})
    tree_a = [(_uv(a), _uv(b)) for a, b in sorted(_hull_edges(adj, pa))]
    tree_a += [(_uv(proj_a[e]), _ev(*e)) for e in s_ev]
    cert.add(tree_a, note="original-layer tree")

    pb = sorted(set(s_ev) | {proj_b[u] for u in s_orig})
    endpoints = sorted({x for e in pb for x in e})
    carrier = _hull_edges(adj, endpoints) if len(endpoints) > 1 else set()
    carrier |= set(pb)
    ct = corresponding_tree(tree, sorted(carrier))
    ct_adj = {}
    for a, b in ct:
        ct_adj.setdefault(a, []).append(b)
        ct_adj.setdefault(b, []).append(a)
    for e in pb:
        ct_adj.setdefault(e, [])
    if len(pb) > 1:
        pruned = _hull_edges(ct_adj, sorted(pb))
    else:
        pruned = set()
    tree_b = [(_ev(*a), _ev(*b)) for a, b in sorted(pruned)]
    tree_b += [(_uv(u), _ev(*proj_b[u])) for u in s_orig]
    cert.add(tree_b, note="line-layer tree")
    case = f"tree-originals-{len(s_orig)}"
    return cert.packing(case, "layered pair: path hull plus pruned corresponding tree")


# --- complete bipartite graphs ---
#
# Atoms name vertices in 1-based row/column coordinates: ("u", i) is the
# i-th vertex of the small part, ("v", j) the j-th of the large part,
# ("e", i, j) the edge-vertex between them.  Builders emit atom trees at
# canonical positions; the dispatcher moves S there and back.


def _au(i):
    return ("u", i)


def _av(j):
    return ("v", j)


def _ae(i, j):
    return ("e", i, j)


def _atom_to_label(atom, m):
    kind = atom[0]
    if kind == "u":
        return _uv(atom[1] - 1)
    if kind == "v":
        return _uv(m + atom[1] - 1)
    return _ev(atom[1] - 1, m + atom[2] - 1)


def _label_to_atom(lab, m):
    if lab[0] == "v":
        i = lab[1]
        return _au(i + 1) if i < m else _av(i - m + 1)
    return _ae(lab[1] + 1, lab[2] - m + 1)


def _map_atom(atom, row_map, col_map):
    if atom[0] == "u":
        return _au(row_map[atom[1]])
    if atom[0] == "v":
        return _av(col_map[atom[1]])
    return _ae(row_map[atom[1]], col_map[atom[2]])


def _transpose_atom(atom):
    if atom[0] == "u":
        return _av(atom[1])
    if atom[0] == "v":
        return _au(atom[1])
    return _ae(atom[2], atom[1])


def _assign(total, wanted):
    """Injective map onto 1..total sending wanted[actual] = canonical and the
    remaining values in ascending order onto the free slots."""
    used_targets = set(wanted.values())
    free_targets = iter(t for t in range(1, total + 1) if t not in used_targets)
    return {
        actual: (wanted[actual] if actual in wanted else next(free_targets))
        for actual in range(1, total + 1)
    }


def _invert_map(mapping):
    return {v: k for k, v in mapping.items()}


def cert_line_fallback(lg: LabeledGraph, s_ids, target, mode, budget=None) -> TreePacking:
    """Base packing inside a line graph, found by bounded exact search at the
    cited lemma's value."""
    if mode not in (MODE_INTERNAL, MODE_EDGE):
        raise InputError(f"bad mode {mode!r}")
    if target < 1:
        raise InputError("target must be positive")
    s = tuple(sorted(set(s_ids)))
    budget = budget if budget is not None else SearchBudget(FALLBACK_BUDGET)
    ctx = _SearchContext(lg.graph, s)
    found = ctx.find_packing_greedy(target, mode, budget, note=lg.source)
    if found is None:
        raise ConstructionError(
            f"no packing of {target} trees found in {lg.source}; lemma target unreachable"
        )
    packing = ctx.tuples_to_packing(
        found, mode, s, case_id="line-fallback", construction=f"searched packing of {target}"
    )
    report = verify_packing(lg.graph, s, packing)
    if not report.passed:
        raise ConstructionError(f"fallback packing failed verification: {report.first_problem()}")
    return packing
