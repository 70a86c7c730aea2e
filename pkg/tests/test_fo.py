from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixthin.errors import FormulaTooComplex, UnboundVariable, UnknownSymbol
from mixthin.fo import (
    FALSE, TRUE, And, Eq, Exists, Forall, Implies, Mark, Not, Or, Rel, Structure, TableEvaluator, Xor,
    conj, disj, evaluate, exists, free_vars, quantifier_depth, rename, satisfying_table, to_sexpr,
)

VARS = ("x", "y", "z")


def atoms():
    v = st.sampled_from(VARS)
    return st.one_of(
        st.builds(Rel, st.just("R"), v, v),
        st.builds(Mark, st.sampled_from(["P", "Q"]), v),
        st.builds(Eq, v, v),
        st.sampled_from([TRUE, FALSE]),
    )


def formulas():
    def extend(children):
        two = st.tuples(children, children)
        return st.one_of(
            st.builds(Not, children),
            two.map(lambda p: And(p)),
            two.map(lambda p: Or(p)),
            two.map(lambda p: Xor(*p)),
            two.map(lambda p: Implies(*p)),
            st.builds(Exists, st.sampled_from(VARS), children),
            st.builds(Forall, st.sampled_from(VARS), children),
        )

    return st.recursive(atoms(), extend, max_leaves=10)


@st.composite
def structures(draw):
    n = draw(st.integers(1, 4))
    cells = list(itertools.product(range(n), repeat=2))
    rel = [c for c in cells if draw(st.booleans())]
    marks = {name: [a for a in range(n) if draw(st.booleans())] for name in ("P", "Q")}
    return Structure(n, {"R": rel}, marks)


def naive_table(s: Structure, f, variables) -> np.ndarray:
    out = np.zeros((s.size,) * len(variables), dtype=bool)
    for point in itertools.product(range(s.size), repeat=len(variables)):
        out[point] = evaluate(s, f, dict(zip(variables, point)))
    return out


@settings(max_examples=300, deadline=None)
@given(structures(), formulas())
def test_table_evaluator_matches_recursive_semantics(s, f):
    assert np.array_equal(satisfying_table(s, f, VARS), naive_table(s, f, VARS))


@settings(max_examples=150, deadline=None)
@given(structures(), formulas(), formulas())
def test_de_morgan(s, a, b):
    lhs = naive_table(s, Not(And((a, b))), VARS)
    rhs = naive_table(s, Or((Not(a), Not(b))), VARS)
    assert np.array_equal(lhs, rhs)
    assert np.array_equal(satisfying_table(s, Not(Not(a)), VARS), satisfying_table(s, a, VARS))


@settings(max_examples=150, deadline=None)
@given(structures(), formulas(), st.sampled_from(VARS))
def test_forall_is_not_exists_not(s, f, var):
    a = satisfying_table(s, Forall(var, f), VARS)
    b = satisfying_table(s, Not(Exists(var, Not(f))), VARS)
    assert np.array_equal(a, b)


@settings(max_examples=100, deadline=None)
@given(structures(), formulas())
def test_one_evaluator_reused_across_formulas(s, f):
    ev = TableEvaluator(s)
    first = satisfying_table(s, f, VARS, ev)
    again = satisfying_table(s, rename(f, {"x": "x"}), VARS, ev)
    assert np.array_equal(first, again)
    assert np.array_equal(satisfying_table(s, Not(f), VARS, ev), ~first)


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_free_variables_of_a_sentence(f):
    closed = f
    for v in sorted(free_vars(f)):
        closed = Exists(v, closed)
    assert free_vars(closed) == frozenset()
    assert quantifier_depth(closed) >= len(free_vars(f))


def c5_structure() -> Structure:
    return Structure(5, {"E": [(i, (i + 1) % 5) for i in range(5)] + [((i + 1) % 5, i) for i in range(5)]})


def test_small_sentences():
    s = c5_structure()
    assert evaluate(s, Forall("x", Eq("x", "x")))
    assert evaluate(s, Forall("x", Exists("y", Rel("E", "x", "y"))))
    assert not evaluate(s, Exists("x", Rel("E", "x", "x")))
    table = satisfying_table(s, exists(["y"], conj(Rel("E", "x", "y"), Rel("E", "y", "z"))), ("x", "z"))
    assert table.sum() == 15  # the 5 diagonal pairs plus the 10 pairs at distance 2


def test_helpers():
    s = c5_structure()
    assert evaluate(s, conj()) and not evaluate(s, disj())
    assert conj(Mark("P", "x")) == Mark("P", "x")
    flat = conj(conj(Mark("P", "x"), Mark("Q", "x")), Mark("P", "y"))
    assert isinstance(flat, And) and len(flat.parts) == 3
    assert to_sexpr(conj(Mark("C_1", "u"), Mark("C_1", "v"))) == "(and (C_1 u) (C_1 v))"
    assert quantifier_depth(Exists("x", Forall("y", Rel("R", "x", "y")))) == 2


def test_errors():
    s = c5_structure()
    with pytest.raises(UnboundVariable):
        evaluate(s, Rel("E", "x", "y"), {"x": 0})
    with pytest.raises(UnknownSymbol):
        evaluate(s, Mark("P", "x"), {"x": 0})
    with pytest.raises(UnknownSymbol):
        satisfying_table(s, Rel("F", "x", "y"), ("x", "y"))
    big = Structure(30, {"E": np.ones((30, 30), dtype=bool)})
    many = conj(*[Rel("E", f"a{t}", f"a{t + 1}") for t in range(6)])
    with pytest.raises(FormulaTooComplex):
        satisfying_table(big, many, tuple(f"a{t}" for t in range(7)), TableEvaluator(big, cell_limit=1000))
