import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcn_decoupling.logic import (And, BindingError, Const, Iff, NetworkDefinition, Not, Or, ParseError, Var,
                                  Xor, build_algebraic_form, evaluate, parse, structure_matrix, variables_of)
from bcn_decoupling.stp import LogicalMatrix

from netgen import FIXTURES
from worked_examples import EX2_H, EX2_L

X1, X2, X3, U1 = Var("X", 1), Var("X", 2), Var("X", 3), Var("U", 1)

exprs = st.recursive(
    st.sampled_from([X1, X2, X3, Const(True), Const(False)]),
    lambda inner: st.one_of(
        st.builds(Not, inner),
        *(st.builds(op, inner, inner) for op in (And, Or, Xor, Iff)),
    ),
    max_leaves=12,
)


def truth(expr, order):
    return structure_matrix(expr, order).to_list()


class TestParser:
    def test_precedence_not_over_and(self):
        assert parse("!X1 & X2") == And(Not(X1), X2)

    def test_precedence_and_over_or(self):
        assert parse("X1 | X2 & X3") == Or(X1, And(X2, X3))

    def test_or_xor_left_associative(self):
        assert parse("X1 ^ X2 | X3") == Or(Xor(X1, X2), X3)
        assert parse("X1 | X2 ^ X3") == Xor(Or(X1, X2), X3)

    def test_iff_loosest(self):
        assert parse("X1 | X2 <-> X3") == Iff(Or(X1, X2), X3)
        assert parse("X1 <-> X2 <-> X3") == Iff(Iff(X1, X2), X3)

    def test_keywords_case_insensitive(self):
        assert parse("not x1 AND u1 or TRUE") == Or(And(Not(X1), U1), Const(True))
        assert parse("x1 xor x2 iff false") == Iff(Xor(X1, X2), Const(False))

    def test_alternative_symbols(self):
        assert parse("~X1") == parse("!X1") == parse("NOT X1")

    def test_constants(self):
        assert parse("1") == Const(True)
        assert parse("0") == Const(False)

    @pytest.mark.parametrize("text,offset", [
        ("X1 &", 4),
        ("(X1 | X2", 8),
        ("X1 X2", 3),
        ("X1 & foo", 5),
        ("X0", 0),
        ("", 0),
        ("X1 $ X2", 3),
    ])
    def test_errors_are_located(self, text, offset):
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.offset == offset

    @settings(max_examples=200, deadline=None)
    @given(exprs)
    def test_print_parse_round_trip(self, e):
        assert parse(str(e)) == e


class TestSemantics:
    @settings(max_examples=200, deadline=None)
    @given(exprs, exprs)
    def test_de_morgan(self, a, b):
        order = [X1, X2, X3]
        assert truth(Not(And(a, b)), order) == truth(Or(Not(a), Not(b)), order)
        assert truth(Not(Or(a, b)), order) == truth(And(Not(a), Not(b)), order)

    @settings(max_examples=100, deadline=None)
    @given(exprs)
    def test_double_negation(self, a):
        assert truth(Not(Not(a)), [X1, X2, X3]) == truth(a, [X1, X2, X3])

    def test_structure_matrix_truth_tables(self):
        # first column is the all-true assignment
        assert structure_matrix("X1 & X2", ["X1", "X2"]).to_list() == [1, 2, 2, 2]
        assert structure_matrix("X1 | X2", ["X1", "X2"]).to_list() == [1, 1, 1, 2]
        assert structure_matrix("X1 ^ X2", ["X1", "X2"]).to_list() == [2, 1, 1, 2]
        assert structure_matrix("X1 <-> X2", ["X1", "X2"]).to_list() == [1, 2, 2, 1]
        assert structure_matrix("!X1", ["X1"]).to_list() == [2, 1]

    def test_constant_structure_matrix(self):
        assert structure_matrix("1", ["X1", "X2"]).to_list() == [1, 1, 1, 1]

    def test_order_matters(self):
        assert structure_matrix("X1 & !X2", ["X1", "X2"]).to_list() == [2, 1, 2, 2]
        assert structure_matrix("X1 & !X2", ["X2", "X1"]).to_list() == [2, 2, 1, 2]

    def test_unbound_variable(self):
        with pytest.raises(BindingError):
            structure_matrix("X1 & X3", ["X1", "X2"])

    def test_evaluate_scalar(self):
        assert evaluate(parse("X1 ^ U1"), {X1: True, U1: False})

    def test_variables_of(self):
        assert variables_of(parse("X1 & (U1 | !X1) ^ 1")) == {X1, U1}


class TestNetworkDefinition:
    def test_example2_algebraic_form(self):
        doc = json.loads((FIXTURES / "example2.json").read_text())
        net = build_algebraic_form(NetworkDefinition(doc["n"], doc["m"], doc["p"],
                                                     doc["updates"], doc["outputs"]))
        assert net.L.to_list() == EX2_L
        assert [h.to_list() for h in net.H] == EX2_H

    def test_single_variable_network(self):
        net = build_algebraic_form(NetworkDefinition(1, 1, 1, ("U1 <-> X1",), ("X1",)))
        assert net.L == LogicalMatrix(2, [1, 2, 2, 1])
        assert net.H[0] == LogicalMatrix(2, [1, 2])

    def test_column_order_inputs_first(self):
        # x1' = u1 for n = 1, m = 1: first 2^n columns are u = true
        net = build_algebraic_form(NetworkDefinition(1, 1, 1, ("U1",), ("X1",)))
        assert net.L.to_list() == [1, 1, 2, 2]

    @pytest.mark.parametrize("updates,outputs", [
        (("X2",), ("X1",)),
        (("U2",), ("X1",)),
        (("X1",), ("U1",)),
        (("X1", "X1"), ("X1",)),
        (("X1",), ()),
    ])
    def test_binding_errors(self, updates, outputs):
        with pytest.raises(BindingError):
            NetworkDefinition(1, 1, 1, updates, outputs)

    def test_exhaustive_semantics(self):
        defn = NetworkDefinition(2, 1, 1, ("X2 ^ U1", "X1 & !U1"), ("X1 | X2",))
        net = build_algebraic_form(defn)
        for u, x1, x2 in itertools.product((True, False), repeat=3):
            col = (not u) * 4 + (not x1) * 2 + (not x2) + 1
            nx1, nx2 = x2 ^ u, x1 and not u
            assert net.L.idx[col - 1] == (not nx1) * 2 + (not nx2) + 1
