"""Unary operations on elements, stored as dense lookup tables.

An operator over ``n`` points is a table of ``2**n`` masks; entry ``i`` is the
image of the element whose bitmask is ``i``.  Everything that has to run over
all operators at once (transforms, composition, the cube check) is written
against numpy arrays of shape ``(..., 2**n)`` so a single table and a stack of
65,536 tables go through the same code.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CapacityError, DomainError
from .lattice import N_MAX, Element, Family, PointDomain, as_element, mask_of

ENUMERATION_MAX_POINTS = 2


class TransformKind(enum.Enum):
    C = "c"
    D = "d"
    DC = "dc"
    FP = "fp"
    FPC = "fpc"


def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def transform_tables(tables: np.ndarray, kind: TransformKind, n: int) -> np.ndarray:
    full = mask_of(n)
    idx = _indices(n)
    if kind is TransformKind.C:
        return tables ^ full
    if kind is TransformKind.DC:
        return tables[..., full ^ idx]
    if kind is TransformKind.D:
        return tables[..., full ^ idx] ^ full
    if kind is TransformKind.FP:
        return tables ^ idx ^ full
    if kind is TransformKind.FPC:
        return tables ^ idx
    raise ValueError(f"unknown transform {kind!r}")


def compose_tables(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``(f o g)(X) = f(g(X))`` for broadcastable stacks of tables."""
    f, g = np.broadcast_arrays(f, g)
    return np.take_along_axis(f, g, axis=-1)


def apply_tables(tables: np.ndarray, x) -> np.ndarray:
    """Evaluate each table in a stack at ``x`` (a scalar mask or one mask per table)."""
    if np.ndim(x) == 0:
        return tables[..., int(x)]
    x = np.asarray(x, dtype=np.int64)
    return np.take_along_axis(tables, x[..., None], axis=-1)[..., 0]


class Operator:
    """A total function from elements to elements over one point domain."""

    __slots__ = ("n", "table", "_hash")

    def __init__(self, n: int, table):
        PointDomain(n)
        table = tuple(int(v) for v in table)
        if len(table) != 1 << n:
            raise DomainError(f"an operator over {n} points needs {1 << n} entries, got {len(table)}")
        full = mask_of(n)
        for v in table:
            if v < 0 or v & ~full:
                raise DomainError(f"table entry {v} is not an element over {n} points")
        self.n = n
        self.table = table
        self._hash = hash((n, table))

    @classmethod
    def from_function(cls, n: int, fn) -> Operator:
        """Build from a function on integer masks."""
        return cls(n, (fn(x) for x in range(1 << n)))

    @classmethod
    def from_array(cls, n: int, array) -> Operator:
        return cls(n, np.asarray(array).tolist())

    @classmethod
    def constant(cls, n: int, value) -> Operator:
        return cls(n, [as_element(n, value).bits] * (1 << n))

    @classmethod
    def identity(cls, n: int) -> Operator:
        return cls(n, range(1 << n))

    @classmethod
    def complement(cls, n: int) -> Operator:
        full = mask_of(n)
        return cls(n, (full ^ x for x in range(1 << n)))

    @property
    def domain(self) -> PointDomain:
        return PointDomain(self.n)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)

    def __call__(self, x):
        if isinstance(x, Element):
            if x.n != self.n:
                raise DomainError(f"operator over {self.n} points applied to element over {x.n}")
            return Element(self.n, self.table[x.bits])
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.n == other.n and self.table == other.table

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Operator(n={self.n}, table={list(self.table)})"

    def _check(self, other: Operator) -> None:
        if not isinstance(other, Operator):
            raise TypeError(f"expected an Operator, got {type(other).__name__}")
        if other.n != self.n:
            raise DomainError(f"operators over {self.n} and {other.n} points")

    def transform(self, kind: TransformKind | str) -> Operator:
        kind = TransformKind(kind) if isinstance(kind, str) else kind
        return Operator.from_array(self.n, transform_tables(self.array, kind, self.n))

    # short names matching the usual superscripts
    @property
    def c(self) -> Operator:
        return self.transform(TransformKind.C)

    @property
    def d(self) -> Operator:
        return self.transform(TransformKind.D)

    @property
    def dc(self) -> Operator:
        return self.transform(TransformKind.DC)

    @property
    def fp(self) -> Operator:
        return self.transform(TransformKind.FP)

    @property
    def fpc(self) -> Operator:
        return self.transform(TransformKind.FPC)

    def __and__(self, other: Operator) -> Operator:
        return op_meet(self, other)

    def __or__(self, other: Operator) -> Operator:
        return op_join(self, other)

    def __matmul__(self, other: Operator) -> Operator:
        return compose(self, other)

    def fixed_points(self) -> Family:
        return fixed_points(self)


def _pair(f: Operator, g: Operator) -> None:
    f._check(g)


def op_meet(f: Operator, g: Operator) -> Operator:
    _pair(f, g)
    return Operator(f.n, (a & b for a, b in zip(f.table, g.table)))


def op_join(f: Operator, g: Operator) -> Operator:
    _pair(f, g)
    return Operator(f.n, (a | b for a, b in zip(f.table, g.table)))


def op_impl(f: Operator, g: Operator) -> Operator:
    _pair(f, g)
    full = mask_of(f.n)
    return Operator(f.n, ((~a | b) & full for a, b in zip(f.table, g.table)))


def op_compl(f: Operator) -> Operator:
    return f.transform(TransformKind.C)


def op_top(n: int) -> Operator:
    return Operator.constant(n, mask_of(n))


def op_bot(n: int) -> Operator:
    return Operator.constant(n, 0)


op_identity = Operator.identity
op_n = Operator.complement


def transform(f: Operator, kind: TransformKind | str) -> Operator:
    return f.transform(kind)


def compose(f: Operator, g: Operator) -> Operator:
    _pair(f, g)
    return Operator(f.n, (f.table[y] for y in g.table))


def power(f: Operator, k: int) -> Operator:
    if k < 1:
        raise ValueError("power needs k >= 1")
    result = f
    for _ in range(k - 1):
        result = compose(result, f)
    return result


def fixed_points(f: Operator) -> Family:
    return Family(f.n, (x for x, y in enumerate(f.table) if x == y))


# -- cube of opposition ------------------------------------------------------

CUBE_LABELS = ("f", "c", "d", "dc", "fp", "fpc", "dfp", "dfpc")

# Where each transform sends each vertex; derived by unfolding the definitions.
CUBE_EDGES = {
    TransformKind.C: {"f": "c", "d": "dc", "fp": "fpc", "dfp": "dfpc"},
    TransformKind.DC: {"f": "dc", "c": "d", "fp": "dfp", "fpc": "dfpc"},
    TransformKind.D: {"f": "d", "c": "dc", "fp": "dfpc", "fpc": "dfp"},
    TransformKind.FP: {"f": "fp", "c": "fpc", "d": "dfp", "dc": "dfpc"},
    TransformKind.FPC: {"f": "fpc", "c": "fp", "d": "dfpc", "dc": "dfp"},
}


def _symmetric(edges: dict) -> dict:
    full = dict(edges)
    full.update({v: k for k, v in edges.items()})
    return full


def cube_vertices_tables(tables: np.ndarray, n: int) -> dict[str, np.ndarray]:
    t = lambda x, k: transform_tables(x, k, n)  # noqa: E731
    K = TransformKind
    d = t(tables, K.D)
    return {
        "f": tables,
        "c": t(tables, K.C),
        "d": d,
        "dc": t(tables, K.DC),
        "fp": t(tables, K.FP),
        "fpc": t(tables, K.FPC),
        "dfp": t(d, K.FP),
        "dfpc": t(d, K.FPC),
    }


def cube_check_tables(tables: np.ndarray, n: int) -> np.ndarray:
    """One boolean per table: every cube edge lands on the expected vertex."""
    verts = cube_vertices_tables(tables, n)
    ok = np.ones(tables.shape[:-1], dtype=bool)
    for kind, edges in CUBE_EDGES.items():
        for src, dst in _symmetric(edges).items():
            ok &= np.all(transform_tables(verts[src], kind, n) == verts[dst], axis=-1)
    K = TransformKind
    # the identities usually quoted alongside the diagram
    c, d, dc, fp = verts["c"], verts["d"], verts["dc"], verts["fp"]
    ok &= np.all(dc == transform_tables(c, K.D, n), axis=-1)
    ok &= np.all(dc == transform_tables(d, K.C, n), axis=-1)
    ok &= np.all(transform_tables(dc, K.FP, n) == transform_tables(fp, K.D, n), axis=-1)
    ok &= np.all(verts["fpc"] == transform_tables(fp, K.C, n), axis=-1)
    return ok


def cube_vertices(f: Operator) -> dict[str, Operator]:
    verts = cube_vertices_tables(f.array, f.n)
    return {k: Operator.from_array(f.n, v) for k, v in verts.items()}


def cube_check(f: Operator) -> bool:
    return bool(cube_check_tables(f.array, f.n))


# -- enumeration ---------------------------------------------------------------


def operator_count(n: int) -> int:
    return (1 << n) ** (1 << n)


def _require_enumerable(n: int) -> None:
    PointDomain(n)
    if n > ENUMERATION_MAX_POINTS:
        raise CapacityError(
            f"exhaustive operator enumeration is limited to n <= {ENUMERATION_MAX_POINTS}; "
            f"n={n} has {operator_count(n)} operators"
        )


def operator_index(f: Operator) -> int:
    """Position of ``f`` in enumeration order: entry ``i`` is digit ``i`` in base ``2**n``."""
    return sum(v << (f.n * i) for i, v in enumerate(f.table))


def operator_at(n: int, index: int) -> Operator:
    full = mask_of(n)
    return Operator(n, ((index >> (n * i)) & full for i in range(1 << n)))


@lru_cache(maxsize=None)
def _all_tables(n: int) -> np.ndarray:
    k = np.arange(operator_count(n), dtype=np.int64)
    shifts = n * np.arange(1 << n, dtype=np.int64)
    tables = (k[:, None] >> shifts) & mask_of(n)
    tables.setflags(write=False)
    return tables


def all_tables(n: int | PointDomain, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Every operator table for ``n <= 2`` as an array, row ``k`` = operator index ``k``."""
    n = n.n if isinstance(n, PointDomain) else n
    _require_enumerable(n)
    return _all_tables(n)[start:stop]


def enumerate_operators(d: PointDomain | int, start: int = 0, stop: int | None = None) -> Iterator[Operator]:
    """Operators in ascending index order; ``start``/``stop`` split the range for parallel scans."""
    n = d.n if isinstance(d, PointDomain) else d
    _require_enumerable(n)
    stop = operator_count(n) if stop is None else stop
    for k in range(start, stop):
        yield operator_at(n, k)


def sample_tables(n: int, count: int, seed) -> np.ndarray:
    PointDomain(n)
    rng = np.random.default_rng(seed)
    return rng.integers(0, 1 << n, size=(count, 1 << n), dtype=np.int64)


def sample_operator(d: PointDomain | int, seed) -> Operator:
    """Uniform over all tables; the same seed always gives the same operator."""
    n = d.n if isinstance(d, PointDomain) else d
    if n > N_MAX:
        raise CapacityError(f"n={n} exceeds N_MAX={N_MAX}")
    return Operator.from_array(n, sample_tables(n, 1, seed)[0])
