import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import tables
from tba import DomainError, Element, Model, Operator
from tba.serialization import (
    dumps, element_from_json, load_model, model_from_json, model_to_json, operator_from_json,
    operator_to_json, relation_from_json, relation_to_json, save_model,
)
from tba.topology import Relation


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), tables(n))))
def test_operator_round_trip(case):
    n, t = case
    f = Operator(n, t)
    assert operator_from_json(json.loads(dumps(operator_to_json(f)))) == f


def test_operator_accepts_point_arrays():
    assert operator_from_json({"points": 2, "table": [[], [0, 1], [1], 3]}).table == (0, 3, 2, 3)
    with pytest.raises(DomainError):
        operator_from_json({"table": [0]})
    with pytest.raises(DomainError):
        element_from_json(2, "zero")


def test_relation_round_trip():
    r = Relation.from_edges(3, [(0, 1), (2, 2)])
    assert relation_from_json(json.loads(dumps(relation_to_json(r)))) == r


def test_model_round_trip(tmp_path):
    m = Model(
        2, Operator(2, [0, 3, 2, 3]), "interior", {"p": [0], "q": 3},
        domains={"S": [[0], []]}, domain_functions={"d": Operator.identity(2), "e": [[0], [1]]},
        predicates={"P": [[1], []]}, individual_domains={"D": [1]},
    )
    back = model_from_json(json.loads(dumps(model_to_json(m))))
    assert back == m
    path = tmp_path / "m.json"
    save_model(m, str(path))
    assert load_model(str(path)) == m
    # propositional-only models omit the individual keys
    plain = model_to_json(Model(1, Operator.identity(1)))
    assert "individuals" not in plain


def test_dumps_is_canonical():
    a = dumps({"b": Element(2, 3), "a": [Operator.identity(1)]})
    assert a == '{"a": [{"points": 1,"table": [0,1]}],"b": [0,1]}'
    with pytest.raises(TypeError):
        dumps({"x": object()})


def test_model_errors():
    with pytest.raises(DomainError):
        model_from_json([])
    with pytest.raises(DomainError):
        model_from_json({"points": 2})
