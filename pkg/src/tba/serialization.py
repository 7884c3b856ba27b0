"""JSON forms of elements, operators, relations and models.

Elements are written as sorted point arrays and read from arrays or integer
bitmasks.  Operator tables are written as integer masks (index = input mask).
Output is deterministic: keys sorted, no whitespace variation.
"""

from __future__ import annotations

import enum
import json

import numpy as np

from .errors import DomainError
from .lattice import Element, Family, as_element
from .logic import Model
from .operators import Operator
from .topology import Relation


def element_to_json(e: Element) -> list[int]:
    return list(e.points)


def element_from_json(n: int, value) -> Element:
    if isinstance(value, (list, tuple, int)) and not isinstance(value, bool):
        return as_element(n, value)
    raise DomainError(f"cannot read an element from {value!r}")


def operator_to_json(f: Operator) -> dict:
    return {"points": f.n, "table": list(f.table)}


def operator_from_json(data: dict) -> Operator:
    try:
        n = int(data["points"])
        table = data["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError("operator JSON needs 'points' and 'table'") from exc
    return Operator(n, [element_from_json(n, v).bits for v in table])


def relation_to_json(r: Relation) -> dict:
    return {"points": r.n, "edges": [list(e) for e in r.edges]}


def relation_from_json(data: dict) -> Relation:
    try:
        return Relation.from_edges(int(data["points"]), [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError("relation JSON needs 'points' and 'edges'") from exc


def family_to_json(s: Family) -> list[list[int]]:
    return [element_to_json(e) for e in s]


def model_to_json(m: Model) -> dict:
    out = {
        "points": m.n,
        "primitive": m.primitive,
        "operator": operator_to_json(m.op),
        "valuation": {k: element_to_json(v) for k, v in sorted(m.valuation.items())},
        "domains": {k: family_to_json(v) for k, v in sorted(m.domains.items())},
        "domain_functions": {
            k: operator_to_json(v) if isinstance(v, Operator) else [element_to_json(e) for e in v]
            for k, v in sorted(m.domain_functions.items())
        },
    }
    if m.individuals:
        out["individuals"] = m.individuals
        out["predicates"] = {k: [element_to_json(e) for e in v] for k, v in sorted(m.predicates.items())}
        out["individual_domains"] = {k: list(v) for k, v in sorted(m.individual_domains.items())}
    return out


def model_from_json(data: dict) -> Model:
    if not isinstance(data, dict):
        raise DomainError("a model must be a JSON object")
    try:
        n = int(data["points"])
        op = operator_from_json(data["operator"])
    except KeyError as exc:
        raise DomainError(f"model JSON is missing {exc.args[0]!r}") from exc
    fns = {}
    for k, v in data.get("domain_functions", {}).items():
        fns[k] = operator_from_json(v) if isinstance(v, dict) else [element_from_json(n, e) for e in v]
    return Model(
        n=n,
        op=op,
        primitive=data.get("primitive", "closure"),
        valuation={k: element_from_json(n, v) for k, v in data.get("valuation", {}).items()},
        domains={k: Family(n, [element_from_json(n, e) for e in v]) for k, v in data.get("domains", {}).items()},
        domain_functions=fns,
        individuals=int(data.get("individuals", 0)),
        predicates={k: [element_from_json(n, e) for e in v] for k, v in data.get("predicates", {}).items()},
        individual_domains={k: [int(i) for i in v] for k, v in data.get("individual_domains", {}).items()},
    )


def _plain(x):
    if isinstance(x, Element):
        return element_to_json(x)
    if isinstance(x, Operator):
        return operator_to_json(x)
    if isinstance(x, Family):
        return family_to_json(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(data) -> str:
    """Canonical JSON text used for every machine-readable output."""
    return json.dumps(data, sort_keys=True, separators=(",", ": "), default=_plain)


def load_model(path: str) -> Model:
    with open(path, encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def save_model(m: Model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(model_to_json(m)) + "\n")
