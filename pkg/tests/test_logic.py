import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from strategies import VARS, formulas, tables
from tba import CapacityError, DomainError, EvaluationError, Model, Operator, TBAError
from tba import consequence, eval_formula, negation_property, parse, recovery_theorems, search, valid
from tba import logic as L
from tba.operators import all_tables

INDISCRETE = Operator(2, [0, 3, 3, 3])
SIERPINSKI = Operator(2, [0, 3, 2, 3])  # closure whose interior fixes {0}


def indiscrete(**val):
    return Model(2, INDISCRETE, "closure", val or {"p": [0]})


@settings(max_examples=300)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(st.just(n), tables(n), st.lists(st.integers(0, (1 << n) - 1), min_size=3, max_size=3))
    ),
    formulas,
)
def test_evaluator_matches_oracle(case, t):
    n, table, vals = case
    val = dict(zip(VARS, vals))
    m = Model(n, Operator(n, table), "closure", val)
    ref = O.eval_formula(t, O.op_from_table(table, n), n, {k: O.from_mask(v, n) for k, v in val.items()})
    assert eval_formula(O.to_text(t), m).bits == O.to_mask(ref)


@settings(max_examples=100)
@given(formulas, tables(2))
def test_interior_primitive_is_the_dual_reading(t, table):
    f = O.to_text(t)
    val = {"p": 1, "q": 2, "r": 3}
    a = Model(2, Operator(2, table), "interior", val)
    b = Model(2, Operator(2, table).d, "closure", val)
    assert eval_formula(f, a) == eval_formula(f, b)


def test_worked_values():
    m = indiscrete()
    assert eval_formula("p & negC p", m).points == (0,)
    assert eval_formula("cons p", m).points == (1,)
    assert not consequence("p, negC p |- F", m)
    s = Model(2, SIERPINSKI, "closure", {"p": [0]})
    assert not valid("p | negI p", s)
    assert eval_formula("p | negI p", s).points == (0,)


def test_quantifiers_against_direct_meets():
    for table in all_tables(2)[::9].tolist():
        c = Operator(2, table)
        m = Model(2, c, "closure", {"q": [1]})
        i = c.d
        elems = range(4)
        opens = [a for a in elems if i.table[a] == a]
        closed = [a for a in elems if c.table[a] == a]
        meet = lambda xs: int(np.bitwise_and.reduce(np.array(xs + [3])))  # noqa: E731
        join = lambda xs: int(np.bitwise_or.reduce(np.array(xs + [0])))  # noqa: E731
        assert eval_formula("forall a . negC a | q", m).bits == meet([c.table[3 ^ a] | 2 for a in elems])
        assert eval_formula("exists[open] a . a & q", m).bits == join([a & 2 for a in opens])
        assert eval_formula("forall[closed] a . box a", m).bits == meet([i.table[a] for a in closed])


def test_named_domains_and_functions():
    m = Model(2, INDISCRETE, "closure", {}, domains={"S": [[0], [1]]},
              domain_functions={"d": Operator(2, [0, 1, 1, 1])})
    assert eval_formula("exists[S] a . a", m).bits == 3
    assert eval_formula("forall[S] a . a", m).bits == 0
    # varying domain: at w, a ranges over the elements whose delta-image contains w;
    # point 0 sees {1} in the domain, point 1 sees nothing and holds vacuously
    assert eval_formula("forall{d} a . a", m).points == (1,)
    assert eval_formula("exists{d} a . a", m).points == (0,)


def test_individual_quantifiers():
    m = Model(2, INDISCRETE, "closure", {}, individuals=2,
              predicates={"P": [[0], [0, 1]]}, individual_domains={"D": [1]})
    assert eval_formula("Forall x . P(x)", m).points == (0,)
    assert eval_formula("Exists x . P(x)", m).points == (0, 1)
    assert eval_formula("Forall[D] x . P(x)", m).points == (0, 1)


def test_gentle_explosion_and_search():
    res = search("cons p, p, negC p |- F", max_points=2)
    assert res.status == "valid" and not res.found
    res = search("p, negC p |- F", max_points=2)
    assert res.found
    assert not consequence("p, negC p |- F", res.model)
    res = search("|- p | negI p", max_points=2, assumptions=["I:MULT,CNTR,DNRM,IDEM"])
    assert res.found and res.model.n == 2
    assert not valid("p | negI p", res.model)
    assert all(L.assumptions_mask(L.parse_assumptions(["I:MULT,CNTR,DNRM,IDEM"]), res.model.op.array[None], 2))


def test_search_order_is_first_in_enumeration():
    goal = parse("p, negC p |- F")
    res = search(goal, max_points=2)
    # oracle: scan n = 1 then n = 2, tables in index order, valuations ascending
    expected = None
    for n in (1, 2):
        for k, table in enumerate(all_tables(n).tolist()):
            c = O.op_from_table(table, n)
            for v in range(1 << n):
                p = O.from_mask(v, n)
                if p & c[O.universe(n) - p]:
                    expected = (n, table, v)
                    break
            if expected:
                break
        if expected:
            break
    assert (res.model.n, list(res.model.op.table), res.model.valuation["p"].bits) == expected


def test_search_strategies_and_limits():
    res = search("|- p | -p", max_points=3)
    assert res.strategy == "relational" and res.status == "inconclusive"
    res = search("p |- box p", max_points=3, strategy="random", samples=200, seed=1)
    assert res.found
    again = search("p |- box p", max_points=3, strategy="random", samples=200, seed=1)
    assert again.model == res.model
    with pytest.raises(CapacityError):
        search("p", max_points=3, strategy="exhaustive")
    with pytest.raises(TBAError):
        search("p", strategy="sideways")
    with pytest.raises(TBAError):
        search("Forall x . P(x)")


def test_relational_search_uses_relation_closures():
    res = search("p |- dia p", max_points=3, strategy="relational")
    assert res.found
    assert not L.cond.check("EXPN", res.model.op).holds


def test_negation_properties():
    assert negation_property("LNC", "CNot", indiscrete()).holds
    rep = negation_property("weakECQ", "NegC", indiscrete())
    assert not rep.holds and rep.witness["a"] == [0]
    for prop in L.NEGATION_PROPERTIES:
        rep = negation_property(prop, "CNot", indiscrete())
        assert rep.holds, prop


def test_negation_schemas_against_oracle():
    # dblNeg_a for negC: a <= C(-C(-a)) for every a
    t = all_tables(2)
    ok = L.negation_property_stack("dblNeg_a", "NegC", t, 2).all(axis=1)
    ref = []
    for row in t.tolist():
        c = O.op_from_table(row, 2)
        u = O.universe(2)
        ref.append(all(a <= c[u - c[u - a]] for a in O.powerset(2)))
    assert ok.tolist() == ref


def test_weak_contraposition_meta_rule():
    t = all_tables(2)
    ok = L.negation_property_stack("weakContraposition1a", "NegC", t, 2).all(axis=1)
    u = O.universe(2)
    ref = []
    for row in t.tolist():
        c = O.op_from_table(row, 2)
        ref.append(all(c[u - b] <= c[u - a] for a in O.powerset(2) for b in O.powerset(2) if a <= b))
    assert ok.tolist() == ref


def test_recovery_universal_facts():
    got = L.recovery_tables(all_tables(2), 2)
    for key in L.RECOVERY_UNIVERSAL:
        assert got[key].all(), key
    eta = L.eta_laws_tables(all_tables(2), 2)
    assert all(v.all() for v in eta.values())
    rep = recovery_theorems(indiscrete())
    assert all(rep[k] for k in L.RECOVERY_UNIVERSAL)
    assert rep["cons A & G(A) <= D(A) and open A => G(A) <= D(A)"]


def test_table_border_identity_only_on_expansive():
    got = L.recovery_tables(all_tables(2), 2)
    expn = L.cond.holds_tables("EXPN", all_tables(2), 2)
    assert np.array_equal(got["cons = B^c, B(A) = A & C(-A)"], expn)
    assert np.array_equal(got["det = B^d, B(A) = A & C(-A)"], expn)


def test_local_global():
    rep = L.local_global_separation(2)
    assert rep["local implies global"]
    assert rep["separating tables"] > 0
    w = rep["witness"]
    assert not consequence("p |- box p", w)
    assert consequence("p |-g box p", w)
    assert L.deduction_bridge(2)


def test_model_validation():
    with pytest.raises(DomainError):
        Model(2, Operator.identity(1))
    with pytest.raises(DomainError):
        Model(2, INDISCRETE, "neither")
    with pytest.raises(EvaluationError):
        eval_formula("p & q", indiscrete())
    with pytest.raises(DomainError):
        Model(2, INDISCRETE, predicates={"P": [[0]]}, individuals=2)
