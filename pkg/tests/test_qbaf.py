import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from argforecast.errors import CyclicGraphError, DomainError
from argforecast.qbaf import Argument, Qbaf, aggregate, combine, evaluate, validate

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def three_node_graph():
    """One claim with a weak supporter and a strong attacker."""
    return Qbaf(
        arguments={Argument("a"), Argument("b"), Argument("c")},
        supports={("b", "a")},
        attacks={("c", "a")},
        base_scores={"a": 0.5, "b": 0.1, "c": 0.7},
    )


class TestAggregate:
    def test_empty_list_is_zero(self):
        assert aggregate([]) == 0.0

    def test_single_element(self):
        assert aggregate([0.7]) == pytest.approx(0.7)

    def test_two_halves(self):
        assert aggregate([0.5, 0.5]) == pytest.approx(0.75)

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            aggregate([0.5, 1.2])

    @given(st.lists(unit, max_size=8))
    def test_range_and_order_independence(self, values):
        result = aggregate(values)
        assert 0.0 <= result <= 1.0
        assert aggregate(list(reversed(values))) == pytest.approx(result)


class TestCombine:
    def test_attack_dominates(self):
        assert combine(0.5, 0.7, 0.1) == pytest.approx(0.2)

    def test_support_dominates(self):
        assert combine(0.5, 0.4, 0.6) == pytest.approx(0.6)

    def test_balanced_returns_base(self):
        assert combine(0.9, 0.3, 0.3) == 0.9

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            combine(1.5, 0.0, 0.0)

    @given(unit, unit, unit)
    def test_range_closure(self, base, att, sup):
        assert 0.0 <= combine(base, att, sup) <= 1.0

    # coarse grid keeps base*|sup-att| away from rounding underflow
    @given(
        st.floats(min_value=0.01, max_value=0.99),
        st.integers(0, 100).map(lambda i: i / 100),
        st.integers(0, 100).map(lambda i: i / 100),
    )
    def test_strict_bias(self, base, att, sup):
        result = combine(base, att, sup)
        if att > sup:
            assert result < base
        elif sup > att:
            assert result > base
        else:
            assert result == base


class TestEvaluate:
    def test_three_node_example(self):
        strengths = evaluate(three_node_graph())
        assert strengths == pytest.approx({"a": 0.2, "b": 0.1, "c": 0.7})

    def test_isolated_leaf_keeps_base(self):
        q = Qbaf(arguments={Argument("x")}, base_scores={"x": 0.42})
        assert evaluate(q) == {"x": 0.42}

    def test_support_chain(self):
        q = Qbaf(
            arguments={Argument("g"), Argument("s"), Argument("f")},
            supports={("g", "s"), ("s", "f")},
            base_scores={"g": 0.5, "s": 0.5, "f": 0.5},
        )
        strengths = evaluate(q)
        assert strengths["s"] == pytest.approx(0.75)
        assert strengths["f"] == pytest.approx(0.875)

    def test_cycle_rejected_with_named_ids(self):
        q = Qbaf(
            arguments={Argument("a"), Argument("b")},
            attacks={("a", "b")},
            supports={("b", "a")},
            base_scores={"a": 0.5, "b": 0.5},
        )
        with pytest.raises(CyclicGraphError) as exc:
            evaluate(q)
        assert {"a", "b"} <= set(exc.value.cycle)

    def test_neutral_child_has_no_effect(self):
        base = three_node_graph()
        extended = three_node_graph()
        extended.arguments.add(Argument("z"))
        extended.supports.add(("z", "a"))
        extended.base_scores["z"] = 0.0
        assert evaluate(extended)["a"] == pytest.approx(evaluate(base)["a"])

    def test_determinism(self):
        q = three_node_graph()
        assert evaluate(q) == evaluate(q)


class TestValidate:
    def test_valid_graph(self):
        assert validate(three_node_graph()) == []

    def test_unknown_endpoint(self):
        q = three_node_graph()
        q.attacks.add(("z", "a"))
        violations = validate(q)
        assert len(violations) == 1 and "'z'" in violations[0]

    def test_base_score_out_of_range(self):
        q = three_node_graph()
        q.base_scores["a"] = 1.5
        violations = validate(q)
        assert len(violations) == 1 and "'a'" in violations[0]

    def test_edge_with_both_polarities(self):
        q = three_node_graph()
        q.attacks.add(("b", "a"))
        assert any("both an attack and a support" in v for v in validate(q))

    def test_self_edge(self):
        q = three_node_graph()
        q.supports.add(("b", "b"))
        assert any("self-support" in v for v in validate(q))

    def test_cycle_reported(self):
        q = three_node_graph()
        q.supports.add(("a", "b"))
        assert any("cyclic" in v for v in validate(q))

    def test_missing_base_score(self):
        q = three_node_graph()
        del q.base_scores["c"]
        assert any("no base score" in v for v in validate(q))
