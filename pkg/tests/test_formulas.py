"""Closed forms, bound intervals, and structural predicate gates."""

import pytest

from steinerconn.errors import InputError, NotCoveredError
from steinerconn.formulas import (
    PredicateCheck,
    generalized_connectivity_formula,
    line_graph_closed_form,
    structural_predicates,
    total_graph_bounds,
    total_graph_closed_form,
)
from steinerconn.graphs import FamilySpec, generate_family
from steinerconn.packing import generalized_connectivity


def fam(kind, *params, seed=None):
    return generate_family(FamilySpec(kind, tuple(params), seed))


class TestGeneralizedFormula:
    def test_complete(self):
        assert generalized_connectivity_formula("complete", (5,), 3, "internal") == 3
        assert generalized_connectivity_formula("complete", (5,), 3, "edge") == 3
        assert generalized_connectivity_formula("complete", (4,), 3, "internal") == 2
        assert generalized_connectivity_formula("complete", (6,), 2, "internal") == 5

    def test_bipartite_small_k(self):
        # k below the threshold gives the smaller part
        assert generalized_connectivity_formula("complete_bipartite", (2, 5), 3, "internal") == 2
        assert generalized_connectivity_formula("complete_bipartite", (3, 7), 4, "internal") == 3

    def test_bipartite_parity_cases(self):
        # a=3, b=3, k=4: even branch gives 1 + floor(16/12) = 2
        assert generalized_connectivity_formula("complete_bipartite", (3, 3), 4, "internal") == 2
        # a=b: k=3 hits the odd branch and yields a-1
        assert generalized_connectivity_formula("complete_bipartite", (3, 3), 3, "internal") == 2
        assert generalized_connectivity_formula("complete_bipartite", (2, 2), 3, "internal") == 1
        assert generalized_connectivity_formula("complete_bipartite", (2, 3), 3, "internal") == 2

    def test_bipartite_edge_k3(self):
        assert generalized_connectivity_formula("complete_bipartite", (2, 3), 3, "edge") == 2
        assert generalized_connectivity_formula("complete_bipartite", (3, 3), 3, "edge") == 2
        assert generalized_connectivity_formula("complete_bipartite", (2, 2), 3, "edge") == 1

    def test_not_covered(self):
        with pytest.raises(NotCoveredError):
            generalized_connectivity_formula("complete", (4,), 5, "internal")
        with pytest.raises(NotCoveredError):
            generalized_connectivity_formula("complete_bipartite", (2, 3), 4, "edge")
        with pytest.raises(NotCoveredError):
            generalized_connectivity_formula("complete_bipartite", (1, 1), 3, "internal")
        with pytest.raises(NotCoveredError):
            generalized_connectivity_formula("cycle", (5,), 3, "internal")

    def test_matches_oracle_small(self):
        for n in range(3, 6):
            g = fam("complete", n)
            for k in range(2, min(n, 4) + 1):
                for mode in ("internal", "edge"):
                    assert (
                        generalized_connectivity_formula("complete", (n,), k, mode)
                        == generalized_connectivity(g, k, mode).value
                    )


class TestTotalClosedForm:
    def test_trees(self):
        assert total_graph_closed_form("tree", (2,), "internal") == 1
        assert total_graph_closed_form("tree", (7,), "internal") == 2
        assert total_graph_closed_form("tree", (7,), "edge") == 2

    def test_cycles_and_unicyclic(self):
        assert total_graph_closed_form("cycle", (5,), "edge") == 3
        assert total_graph_closed_form("cycle", (3,), "internal") == 3
        assert total_graph_closed_form("unicyclic_noncycle", (5,), "internal") == 2
        with pytest.raises(InputError):
            total_graph_closed_form("unicyclic_noncycle", (3,), "internal")

    def test_complete(self):
        assert total_graph_closed_form("complete", (6,), "internal") == 7
        assert total_graph_closed_form("complete", (3,), "internal") == 3
        assert total_graph_closed_form("complete", (4,), "internal") == 4
        assert total_graph_closed_form("complete", (4,), "edge") == 5
        assert total_graph_closed_form("complete", (2,), "internal") == 1
        assert total_graph_closed_form("complete", (2,), "edge") == 1

    def test_bipartite(self):
        assert total_graph_closed_form("complete_bipartite", (3, 3), "internal") == 5
        assert total_graph_closed_form("complete_bipartite", (2, 3), "internal") == 4
        assert total_graph_closed_form("complete_bipartite", (3, 3), "edge") == 5
        assert total_graph_closed_form("complete_bipartite", (1, 1), "internal") == 1
        assert total_graph_closed_form("complete_bipartite", (1, 4), "internal") == 2

    def test_internal_at_most_edge(self):
        cases = (
            [("tree", (n,)) for n in range(2, 30)]
            + [("cycle", (n,)) for n in range(3, 30)]
            + [("unicyclic_noncycle", (n,)) for n in range(4, 30)]
            + [("complete", (n,)) for n in range(2, 30)]
            + [("complete_bipartite", (m, n)) for m in range(1, 8) for n in range(m, 8)]
        )
        for family, params in cases:
            internal = total_graph_closed_form(family, params, "internal")
            edge = total_graph_closed_form(family, params, "edge")
            assert internal <= edge


class TestLineClosedForm:
    def test_values(self):
        assert line_graph_closed_form("complete", (5,), "internal") == 4
        assert line_graph_closed_form("complete", (5,), "edge") == 5
        assert line_graph_closed_form("complete", (3,), "internal") == 1
        assert line_graph_closed_form("complete_bipartite", (2, 3), "internal") == 2
        assert line_graph_closed_form("complete_bipartite", (3, 3), "internal") == 3

    def test_range_checks(self):
        with pytest.raises(InputError):
            line_graph_closed_form("complete", (2,), "internal")
        with pytest.raises(InputError):
            line_graph_closed_form("complete_bipartite", (1, 3), "internal")
        with pytest.raises(NotCoveredError):
            line_graph_closed_form("complete_bipartite", (2, 3), "edge")


class TestTotalGraphBounds:
    def test_k4(self):
        b = total_graph_bounds(kappa=3, lam=3, lambda3=2, delta=3, observed_kappa3=4)
        assert (b.kappa3.lower, b.kappa3.upper) == (4, 6)
        assert b.kappa3.ok
        assert b.total_kappa_min == 6

    def test_k23(self):
        b = total_graph_bounds(kappa=2, lam=2, lambda3=2, delta=2)
        assert b.kappa3.upper == 4

    def test_c5(self):
        b = total_graph_bounds(kappa=2, lam=2, lambda3=1, delta=2,
                               observed_kappa3=3, observed_lambda3=3)
        assert (b.kappa3.lower, b.kappa3.upper) == (2, 4)
        assert b.lambda3.lower == min(3, 2, 3) == 2
        assert b.lambda3.upper == 4
        assert b.ok

    def test_component_terms_named(self):
        b = total_graph_bounds(2, 2, 1, 2)
        names = [name for name, _ in b.lambda3.components]
        assert names == ["2*lambda-1", "2*lambda3", "lambda3+2", "2*delta"]

    def test_bad_inputs(self):
        with pytest.raises(InputError):
            total_graph_bounds(0, 1, 1, 1)

    def test_intervals_contain_closed_forms_up_to_50(self):
        # pure arithmetic consistency across the covered families
        for n in range(2, 51):
            cf = total_graph_closed_form("tree", (n,), "internal")
            b = total_graph_bounds(1, 1, 1, 1)
            assert b.kappa3.lower <= cf <= b.kappa3.upper
        for n in range(3, 51):
            cf = total_graph_closed_form("cycle", (n,), "internal")
            cf_e = total_graph_closed_form("cycle", (n,), "edge")
            b = total_graph_bounds(2, 2, 1, 2)
            assert b.kappa3.lower <= cf <= b.kappa3.upper
            assert b.lambda3.lower <= cf_e <= b.lambda3.upper
        for n in range(2, 51):
            cf = total_graph_closed_form("complete", (n,), "internal")
            cf_e = total_graph_closed_form("complete", (n,), "edge")
            l3 = n - 2 if n >= 3 else 1  # lambda_3(K_n), n >= 3
            b = total_graph_bounds(n - 1, n - 1, l3, n - 1)
            assert b.kappa3.lower <= cf <= b.kappa3.upper
            assert b.lambda3.lower <= cf_e <= b.lambda3.upper
        for m in range(2, 26):
            for n in range(m, 26):
                cf = total_graph_closed_form("complete_bipartite", (m, n), "internal")
                l3 = m - 1 if m == n else m
                b = total_graph_bounds(m, m, l3, m)
                assert b.kappa3.lower <= cf <= b.kappa3.upper


class TestStructuralPredicates:
    def test_c6_all_pass(self):
        g = fam("cycle", 6)
        checks = structural_predicates(g, kappa3=1, lambda3=1)
        assert all(c.holds for c in checks if c.applicable)

    def test_k6_gates(self):
        g = fam("complete", 6)
        checks = structural_predicates(g, kappa3=3, lambda3=3)
        by_name = {c.name: c for c in checks}
        adjacent = by_name["adjacent minimum-degree pair: kappa3 <= delta-1"]
        assert adjacent.applicable and adjacent.holds  # 3 <= 4
        order = by_name["kappa3 <= kappa (order >= 6)"]
        assert order.applicable and order.holds

    def test_k4_divisor_bound(self):
        # kappa(K_4) = 3 = 4*0+3 gives floor 0*3 + ceil(3/2) = 2 <= kappa3
        g = fam("complete", 4)
        checks = structural_predicates(g, kappa3=2, lambda3=2)
        by_name = {c.name: c for c in checks}
        assert by_name["kappa = 4q+r implies kappa3 >= 3q+ceil(r/2)"].holds

    def test_gate_inapplicable_on_star(self):
        # star has no adjacent minimum-degree pair (center degree > 1)
        g = fam("star", 4)
        checks = structural_predicates(g, kappa3=1, lambda3=1)
        by_name = {c.name: c for c in checks}
        assert not by_name["adjacent minimum-degree pair: kappa3 <= delta-1"].applicable

    def test_small_or_disconnected_rejected(self):
        with pytest.raises(InputError):
            structural_predicates(fam("path", 2), 1, 1)
