"""Closed-form values and bound evaluators for the covered graph families.

Each function returns exactly the published value for parameters inside the
stated hypotheses and raises NotCoveredError outside them; nothing here
extrapolates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, NotCoveredError
from .graphs import Graph, degree_profile, edge_connectivity, is_connected, vertex_connectivity

INTERNAL = "internal"
EDGE = "edge"


def _check_mode(mode):
    if mode not in (INTERNAL, EDGE):
        raise InputError(f"mode must be 'internal' or 'edge', got {mode!r}")


def generalized_connectivity_formula(family, params, k, mode) -> int:
    """Exact generalized k-(edge-)connectivity of complete and complete
    bipartite graphs, per the published formulas."""
    _check_mode(mode)
    if family == "complete":
        (n,) = params
        if not 2 <= k <= n:
            raise NotCoveredError(f"complete graph formula needs 2 <= k <= n, got k={k}, n={n}")
        return n - math.ceil(k / 2)
    if family == "complete_bipartite":
        a, b = min(params), max(params)
        if a < 1:
            raise NotCoveredError("bipartite formula needs positive part sizes")
        if mode == EDGE:
            # only k=3 is covered, and only for 2 <= a
            if k != 3 or a < 2:
                raise NotCoveredError(
                    "edge mode for complete bipartite graphs is covered only for k=3 and parts >= 2"
                )
            return a - 1 if a == b else a
        if not 2 <= k <= a + b:
            raise NotCoveredError(f"bipartite formula needs 2 <= k <= a+b, got k={k}")
        if k <= b - a + 2:
            return a
        if (a - b + k) % 2 == 1:
            return (a + b - k + 1) // 2 + ((a - b + k - 1) * (b - a + k - 1)) // (4 * (k - 1))
        return (a + b - k) // 2 + ((a - b + k) * (b - a + k)) // (4 * (k - 1))
    raise NotCoveredError(f"no closed formula for family {family!r}")


def total_graph_closed_form(family, params, mode) -> int:
    """Generalized 3-(edge-)connectivity of T(G) for the solved families."""
    _check_mode(mode)
    if family == "tree":
        (n,) = params
        if n < 2:
            raise InputError("tree total-graph value needs n >= 2")
        return 1 if n == 2 else 2
    if family == "cycle":
        (n,) = params
        if n < 3:
            raise InputError("cycle needs n >= 3")
        return 3
    if family == "unicyclic_noncycle":
        (n,) = params
        if n < 4:
            raise InputError("a unicyclic graph that is not a cycle needs n >= 4")
        return 2
    if family == "complete":
        (n,) = params
        if n < 2:
            raise InputError("complete total-graph value needs n >= 2")
        if mode == EDGE:
            return 2 * n - 3
        return 3 if n == 3 else (3 * (n - 2)) // 2 + 1
    if family == "complete_bipartite":
        m, n = min(params), max(params)
        if m < 1:
            raise InputError("bipartite part sizes must be >= 1")
        return 2 * m - 1 if m == n else 2 * m
    raise NotCoveredError(f"no total-graph closed form for family {family!r}")


def line_graph_closed_form(family, params, mode) -> int:
    """Generalized 3-(edge-)connectivity of L(K_n) and of L(K_{m,n})."""
    _check_mode(mode)
    if family == "complete":
        (n,) = params
        if n < 3:
            raise InputError("line graph of K_n covered for n >= 3")
        if mode == EDGE:
            return 2 * n - 5
        return (3 * (n - 2)) // 2
    if family == "complete_bipartite":
        m, n = min(params), max(params)
        if m < 2 or n < 2:
            raise InputError("line graph of K_{m,n} covered for m, n >= 2")
        if mode == EDGE:
            raise NotCoveredError("edge mode for L(K_{m,n}) has no published value")
        return m + n - 3
    raise NotCoveredError(f"no line-graph closed form for family {family!r}")


@dataclass(frozen=True)
class BoundReport:
    """An [lower, upper] interval with its named component terms."""

    lower: int
    upper: int
    components: tuple
    observed: int | None = None

    @property
    def ok(self):
        if self.observed is None:
            return None
        return self.lower <= self.observed <= self.upper


@dataclass(frozen=True)
class TotalGraphBounds:
    kappa3: BoundReport
    lambda3: BoundReport
    total_kappa_min: int  # classical connectivity of T(G) is at least this
    total_lambda_min: int

    @property
    def ok(self):
        parts = [r.ok for r in (self.kappa3, self.lambda3) if r.ok is not None]
        return all(parts) if parts else None


def total_graph_bounds(
    kappa, lam, lambda3, delta, observed_kappa3=None, observed_lambda3=None
) -> TotalGraphBounds:
    """Interval bounds for the 3-(edge-)connectivity of a total graph, from
    the statistics of the underlying connected graph."""
    for name, value in (("kappa", kappa), ("lambda", lam), ("lambda3", lambda3), ("delta", delta)):
        if value < 1:
            raise InputError(f"{name} must be positive for a connected graph, got {value}")
    k3_lower = (3 * kappa - 1) // 2
    upper = 2 * delta
    l3_terms = (
        ("2*lambda-1", 2 * lam - 1),
        ("2*lambda3", 2 * lambda3),
        ("lambda3+2", lambda3 + 2),
    )
    l3_lower = min(v for _, v in l3_terms)
    return TotalGraphBounds(
        kappa3=BoundReport(
            lower=k3_lower,
            upper=upper,
            components=(("floor((3*kappa-1)/2)", k3_lower), ("2*delta", upper)),
            observed=observed_kappa3,
        ),
        lambda3=BoundReport(
            lower=l3_lower,
            upper=upper,
            components=l3_terms + (("2*delta", upper),),
            observed=observed_lambda3,
        ),
        total_kappa_min=2 * kappa,
        total_lambda_min=2 * lam,
    )


@dataclass(frozen=True)
class PredicateCheck:
    name: str
    applicable: bool
    holds: bool | None
    detail: str


def structural_predicates(g: Graph, kappa3, lambda3, kappa=None, lam=None):
    """Evaluate the applicable structural inequalities for one connected graph
    whose 3-(edge-)connectivity values were computed elsewhere."""
    if g.n < 3:
        raise InputError("structural predicates need at least 3 vertices")
    if not is_connected(g):
        raise InputError("structural predicates are stated for connected graphs")
    degrees, delta = degree_profile(g)
    if kappa is None:
        kappa = vertex_connectivity(g)
    if lam is None:
        lam = edge_connectivity(g)
    checks = []

    checks.append(
        PredicateCheck(
            "chain kappa3 <= lambda3 <= delta",
            True,
            kappa3 <= lambda3 <= delta,
            f"{kappa3} <= {lambda3} <= {delta}",
        )
    )

    applicable = g.n >= 6
    checks.append(
        PredicateCheck(
            "kappa3 <= kappa (order >= 6)",
            applicable,
            (kappa3 <= kappa) if applicable else None,
            f"{kappa3} <= {kappa}" if applicable else f"n={g.n} < 6",
        )
    )

    checks.append(
        PredicateCheck("lambda3 <= lambda", True, lambda3 <= lam, f"{lambda3} <= {lam}")
    )

    adjacent_min = any(
        degrees[u] == delta and degrees[v] == delta for u, v in g.edges
    )
    checks.append(
        PredicateCheck(
            "adjacent minimum-degree pair: kappa3 <= delta-1",
            adjacent_min,
            (kappa3 <= delta - 1) if adjacent_min else None,
            f"{kappa3} <= {delta - 1}" if adjacent_min else "no adjacent minimum-degree pair",
        )
    )
    checks.append(
        PredicateCheck(
            "adjacent minimum-degree pair: lambda3 <= delta-1",
            adjacent_min,
            (lambda3 <= delta - 1) if adjacent_min else None,
            f"{lambda3} <= {delta - 1}" if adjacent_min else "no adjacent minimum-degree pair",
        )
    )

    q, r = divmod(kappa, 4)
    lower = 3 * q + math.ceil(r / 2)
    checks.append(
        PredicateCheck(
            "kappa = 4q+r implies kappa3 >= 3q+ceil(r/2)",
            True,
            kappa3 >= lower,
            f"kappa={kappa} -> {kappa3} >= {lower}",
        )
    )
    return checks
