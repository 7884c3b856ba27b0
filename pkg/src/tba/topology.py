"""Closure, interior, exterior, border and frontier operators.

Covers the inter-definitions between the five roles, their axiom bundles,
fixed-point classifications of elements, the relation/operator bridge behind
Alexandrov topologies, enumeration of finite topologies, and composition
experiments (Kuratowski's closure-complement monoid and friends).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import conditions as cond
from .errors import CapacityError, DomainError
from .lattice import Element, Family, PointDomain, as_element, mask_of
from .operators import (
    Operator,
    TransformKind,
    all_tables,
    compose,
    op_join,
    op_meet,
    transform_tables,
)


class OperatorRole(enum.Enum):
    CLOSURE = "C"
    INTERIOR = "I"
    EXTERIOR = "E"
    BORDER = "B"
    FRONTIER = "F"

    @classmethod
    def parse(cls, value) -> OperatorRole:
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for role in cls:
            if text.upper() in (role.value, role.name):
                return role
        raise ValueError(f"unknown operator role {value!r}")


C, I, E, B, F = OperatorRole


# -- inter-definitions ---------------------------------------------------------


def _cells(t: np.ndarray, n: int) -> dict:
    full = mask_of(n)
    a = np.arange(1 << n, dtype=np.int64)
    na = full ^ a
    neg = lambda x: full ^ x  # noqa: E731
    at_compl = t[..., na]  # f(-A)
    dual = neg(at_compl)  # f^d(A)
    return {
        (I, C): dual,
        (E, C): neg(t),
        (B, C): a | at_compl,
        (F, C): a | t,
        (C, I): dual,
        (E, I): at_compl,
        (B, I): a & neg(t),
        (F, I): a & neg(t),
        (C, E): neg(t),
        (I, E): at_compl,
        (B, E): na & dual,
        (F, E): na & neg(t),
        (C, B): a & at_compl,
        (I, B): a & neg(t),
        (E, B): a & dual,
        (F, B): a & t,
        (C, F): t & at_compl,
        (I, F): neg(t | at_compl),
        (E, F): neg(t | at_compl),
        (B, F): t | at_compl,
    }


# keyed (source, target); every cell reads off the source table only
_CELL_EXPR = {
    (I, C): "I^d(A)", (E, C): "-E(A)", (B, C): "A | B(-A)", (F, C): "A | F(A)",
    (C, I): "C^d(A)", (E, I): "E(-A)", (B, I): "A & -B(A)", (F, I): "A & -F(A)",
    (C, E): "-C(A)", (I, E): "I(-A)", (B, E): "-A & B^d(A)", (F, E): "-A & -F(A)",
    (C, B): "A & C(-A)", (I, B): "A & -I(A)", (E, B): "A & E^d(A)", (F, B): "A & F(A)",
    (C, F): "C(A) & C(-A)", (I, F): "-(I(A) | I(-A))", (E, F): "-(E(A) | E(-A))",
    (B, F): "B(A) | B(-A)",
}  # fmt: skip


def derive_tables(tables: np.ndarray, source, target, n: int) -> np.ndarray:
    source, target = OperatorRole.parse(source), OperatorRole.parse(target)
    if source is target:
        return np.asarray(tables)
    return _cells(np.asarray(tables, dtype=np.int64), n)[(source, target)]


def derive(f: Operator, source, target) -> Operator:
    """Define the ``target`` operator from ``f`` playing the ``source`` role.

    No axioms are assumed; the definitions are applied verbatim.
    """
    return Operator.from_array(f.n, derive_tables(f.array, source, target, f.n))


def derivation_formula(source, target) -> str:
    source, target = OperatorRole.parse(source), OperatorRole.parse(target)
    return "A" if source is target else _CELL_EXPR[(source, target)]


def derive_all(c: Operator) -> dict[OperatorRole, Operator]:
    """All five operators defined from a closure ``c``."""
    return {role: derive(c, C, role) for role in OperatorRole}


# -- axiom bundles ----------------------------------------------------------------


def _pairs(n):
    a = np.arange(1 << n, dtype=np.int64)
    return np.repeat(a, 1 << n), np.tile(a, 1 << n)


def _b1_form(t, n):
    # A & B & f(A & B) == A & B & (f(A) | f(B))
    a, b = _pairs(n)
    m = a & b
    return np.all((m & t[..., m]) == (m & (t[..., a] | t[..., b])), axis=-1)


def _e4(t, n):
    full = mask_of(n)
    return np.all(np.take_along_axis(t, full ^ t, axis=-1) == t, axis=-1)


def _b4(t, n):
    full = mask_of(n)
    a = np.arange(1 << n, dtype=np.int64)
    inner = full ^ t[..., full ^ a]  # -B(-A)
    return np.all((np.take_along_axis(t, inner, axis=-1) & ~a) == 0, axis=-1)


def _f2(t, n):
    full = mask_of(n)
    return np.all(t[..., full ^ np.arange(1 << n)] == t, axis=-1)


def _f4(t, n):
    return np.all((np.take_along_axis(t, t, axis=-1) & ~t) == 0, axis=-1)


_DEDICATED = {"E4": _e4, "B1": _b1_form, "B4": _b4, "F1": _b1_form, "F2": _f2, "F4": _f4}

AXIOMS: dict[OperatorRole, dict[str, str]] = {
    C: {"C1": "ADDI", "C2": "EXPN", "C3": "NORM", "C4": "IDEM"},
    I: {"I1": "MULT", "I2": "CNTR", "I3": "DNRM", "I4": "IDEM"},
    E: {"E1": "nADDI", "E2": "nEXPN", "E3": "nNORM", "E4": "E(-E(A)) = E(A)"},
    B: {"B1": "A&B&B(A&B) = A&B&(B(A)|B(B))", "B2": "CNTR", "B3": "nDNRM", "B4": "B(-B(-A)) <= A"},
    F: {"F1": "A&B&F(A&B) = A&B&(F(A)|F(B))", "F2": "F(-A) = F(A)", "F3": "NORM", "F4": "F(F(A)) <= F(A)"},
}


def axiom_tables(tables: np.ndarray, role, n: int) -> dict[str, np.ndarray]:
    """Per-axiom truth values for a stack of tables."""
    role = OperatorRole.parse(role)
    tables = np.asarray(tables, dtype=np.int64)
    out = {}
    for name, spec in AXIOMS[role].items():
        if name in _DEDICATED:
            out[name] = _DEDICATED[name](tables, n)
        else:
            out[name] = cond.holds_tables(spec, tables, n)
    return out


@dataclass(frozen=True)
class AxiomReport:
    role: OperatorRole
    axioms: dict

    @property
    def holds(self) -> bool:
        return all(self.axioms.values())

    def __bool__(self):
        return self.holds


def axiom_bundle_check(f: Operator, role) -> AxiomReport:
    role = OperatorRole.parse(role)
    res = axiom_tables(f.array, role, f.n)
    return AxiomReport(role, {k: bool(v) for k, v in res.items()})


def hausdorff_residue(b: Operator) -> Operator:
    """``X -> B(-B(-X))`` for a border operator ``b``."""
    full = mask_of(b.n)
    return Operator.from_function(b.n, lambda x: b.table[full ^ b.table[full ^ x]])


# -- element classification ----------------------------------------------------------


CLASSIFICATION_FLAGS = (
    "open", "closed", "clopen", "regular_open", "regular_closed", "dense", "boundary", "nowhere_dense",
)  # fmt: skip


def classify_element(c: Operator, a) -> dict[str, bool]:
    """Topological flags of ``a`` relative to the closure ``c`` (interior derived)."""
    a = as_element(c.n, a).bits
    i = derive(c, C, I).table
    ct = c.table
    full = mask_of(c.n)
    flags = {
        "open": i[a] == a,
        "closed": ct[a] == a,
        "regular_open": i[ct[a]] == a,
        "regular_closed": ct[i[a]] == a,
        "dense": ct[a] == full,
        "boundary": i[a] == 0,
        "nowhere_dense": i[ct[a]] == 0,
    }
    flags["clopen"] = flags["open"] and flags["closed"]
    return {k: bool(flags[k]) for k in CLASSIFICATION_FLAGS}


def fixed_point_bullets(c: Operator) -> dict[str, bool]:
    """The fixed-point characterizations, each checked for every element."""
    n = c.n
    full = mask_of(n)
    ops = derive_all(c)
    ct, it, et, bt, ft = (ops[r].table for r in (C, I, E, B, F))
    bd = tuple(full ^ bt[full ^ x] for x in range(1 << n))
    ed = tuple(full ^ et[full ^ x] for x in range(1 << n))
    rows = {
        "open iff B(A) = bot": lambda a: (it[a] == a) == (bt[a] == 0),
        "closed iff B(-A) = bot": lambda a: (ct[a] == a) == (bt[full ^ a] == 0),
        "clopen iff F(A) = bot": lambda a: (ct[a] == a and it[a] == a) == (ft[a] == 0),
        "E has no fixed points": lambda a: et[a] != a,
        "fp(E^2) iff fp(I.C)": lambda a: (et[et[a]] == a) == (it[ct[a]] == a),
        "fp((E^d)^2) iff fp(C.I)": lambda a: (ed[ed[a]] == a) == (ct[it[a]] == a),
        "fp(B) iff I(A) = bot": lambda a: (bt[a] == a) == (it[a] == 0),
        "fp(B^d) iff C(A) = top": lambda a: (bd[a] == a) == (ct[a] == full),
        "fp(F) iff closed and I(C(A)) = bot": lambda a: (ft[a] == a) == (ct[a] == a and it[ct[a]] == 0),
        "I(C(A)) = bot iff fp(F, C(A))": lambda a: (it[ct[a]] == 0) == (ft[ct[a]] == ct[a]),
        "I(C(A)) = bot iff A <= F(C(A))": lambda a: (it[ct[a]] == 0) == (a & ~ft[ct[a]] == 0),
    }
    return {label: all(check(a) for a in range(1 << n)) for label, check in rows.items()}


# -- relations ------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """A binary relation on points; ``rows[w]`` is the bitmask of successors of ``w``."""

    n: int
    rows: tuple

    def __post_init__(self):
        PointDomain(self.n)
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n:
            raise DomainError(f"a relation over {self.n} points needs {self.n} rows")
        if any(r < 0 or r >> self.n for r in rows):
            raise DomainError("relation row has bits outside the domain")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_edges(cls, n: int, edges) -> Relation:
        rows = [0] * n
        for w, v in edges:
            if not (0 <= w < n and 0 <= v < n):
                raise DomainError(f"edge ({w}, {v}) outside the {n}-point domain")
            rows[w] |= 1 << v
        return cls(n, rows)

    @classmethod
    def total(cls, n: int) -> Relation:
        return cls(n, [mask_of(n)] * n)

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(n, [0] * n)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(w, v) for w in range(self.n) for v in range(self.n) if self.rows[w] >> v & 1]

    def __contains__(self, edge) -> bool:
        w, v = edge
        return bool(self.rows[w] >> v & 1)

    def is_reflexive(self) -> bool:
        return all(self.rows[w] >> w & 1 for w in range(self.n))

    def is_transitive(self) -> bool:
        for w in range(self.n):
            reach = 0
            for v in range(self.n):
                if self.rows[w] >> v & 1:
                    reach |= self.rows[v]
            if reach & ~self.rows[w]:
                return False
        return True

    def index(self) -> int:
        return sum(r << (self.n * w) for w, r in enumerate(self.rows))


def relation_at(n: int, index: int) -> Relation:
    return Relation(n, [(index >> (n * w)) & mask_of(n) for w in range(n)])


def all_relations(n: int) -> list[Relation]:
    if n > 4:
        raise CapacityError("relation enumeration is limited to n <= 4")
    return [relation_at(n, k) for k in range(1 << (n * n))]


def closure_tables_of_relations(rows: np.ndarray, n: int) -> np.ndarray:
    """``C[R]`` for a stack of relations given as ``(..., n)`` row masks."""
    rows = np.asarray(rows, dtype=np.int64)
    a = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(rows.shape[:-1] + (1 << n,), dtype=np.int64)
    for w in range(n):
        out |= ((rows[..., w : w + 1] & a) != 0).astype(np.int64) << w
    return out


def closure_of_relation(r: Relation) -> Operator:
    """``C[R](A)``: points with some successor in ``A``."""
    return Operator.from_array(r.n, closure_tables_of_relations(np.array(r.rows), r.n))


def relation_of_operator(f: Operator) -> Relation:
    """``R[f] w v`` iff ``w`` belongs to ``f({v})``."""
    n = f.n
    rows = [0] * n
    for v in range(n):
        img = f.table[1 << v]
        for w in range(n):
            if img >> w & 1:
                rows[w] |= 1 << v
    return Relation(n, rows)


_fast_path_ok: bool | None = None


def validate_iaddi_fast_path(count: int = 256) -> bool:
    """Compare the atom-based iADDI shortcut with the naive family oracle at n = 2."""
    global _fast_path_ok
    tables = all_tables(2)[:count]
    fast = cond.iaddi_fast_tables(tables, 2)
    naive = np.array([cond.naive_infinitary("iADDI", Operator.from_array(2, t)) for t in tables])
    _fast_path_ok = bool(np.array_equal(fast, naive))
    return _fast_path_ok


def iaddi(f: Operator) -> bool:
    """Complete additivity: exact family scan when feasible, otherwise the validated shortcut."""
    if f.n <= cond.EXACT_FAMILY_MAX_POINTS:
        return cond.check("iADDI", f).holds
    if _fast_path_ok is None:
        validate_iaddi_fast_path()
    if not _fast_path_ok:
        raise CapacityError("iADDI fast path failed validation; exact check unavailable")
    return bool(cond.iaddi_fast_tables(f.array, f.n))


def bridge_properties(x) -> dict[str, bool]:
    """Relation/operator correspondences for an operator or a relation."""
    if isinstance(x, Relation):
        psi = closure_of_relation(x)
        return {
            "iADDI(C[R])": iaddi(psi),
            "NORM(C[R])": cond.check("NORM", psi).holds,
            "EXPN(C[R]) iff R reflexive": cond.check("EXPN", psi).holds == x.is_reflexive(),
            "IDEM_a(C[R]) iff R transitive": cond.check("IDEM_a", psi).holds == x.is_transitive(),
        }
    f = x
    r = relation_of_operator(f)
    check = lambda c: cond.check(c, f).holds  # noqa: E731
    return {
        "iADDI(f) iff f = C[R[f]]": iaddi(f) == (closure_of_relation(r) == f),
        "EXPN(f) implies R[f] reflexive": (not check("EXPN")) or r.is_reflexive(),
        "MONO(f) and IDEM_a(f) implies R[f] transitive": (not (check("MONO") and check("IDEM_a")))
        or r.is_transitive(),
    }


# -- finite topologies ---------------------------------------------------------------


def _preorder_indices(n: int) -> list[int]:
    out = []
    for k in range(1 << (n * n)):
        r = relation_at(n, k)
        if r.is_reflexive() and r.is_transitive():
            out.append(k)
    return out


@lru_cache(maxsize=None)
def finite_topologies(n: int) -> tuple[Operator, ...]:
    """Closure operators of every topology on ``n <= 4`` points.

    Finite topologies are exactly the Alexandrov ones, so they are the closures
    ``C[R]`` of preorders; distinct preorders give distinct topologies.
    """
    if not 1 <= n <= 4:
        raise CapacityError("finite topologies are enumerated for 1 <= n <= 4 only")
    ops = {closure_of_relation(relation_at(n, k)) for k in _preorder_indices(n)}
    return tuple(sorted(ops, key=lambda o: o.table))


def topologies_by_families(n: int) -> tuple[Operator, ...]:
    """Same set, found by brute force over families containing bot and top
    that are closed under binary union and intersection (the closed sets)."""
    if not 1 <= n <= 4:
        raise CapacityError("brute-force topology enumeration is limited to n <= 4")
    m = 1 << n
    full = mask_of(n)
    s = np.arange(1 << m, dtype=np.int64)
    member = lambda x: (s >> x) & 1 == 1  # noqa: E731
    ok = member(0) & member(full)
    for x in range(m):
        mx = member(x)
        for y in range(x + 1, m):
            both = mx & member(y)
            ok &= ~both | (member(x | y) & member(x & y))
    result = []
    for fam in np.flatnonzero(ok):
        closed = [x for x in range(m) if fam >> x & 1]
        # closure of A: least closed superset
        table = [min((c for c in closed if a & ~c == 0), key=lambda c: bin(c).count("1")) for a in range(m)]
        result.append(Operator(n, table))
    return tuple(sorted(result, key=lambda o: o.table))


def open_sets(c: Operator) -> Family:
    full = mask_of(c.n)
    return Family(c.n, (full ^ x for x in c.fixed_points().masks))


# -- composition experiments ------------------------------------------------------------


@dataclass(frozen=True)
class MonoidResult:
    operators: tuple
    saturated: bool

    def __len__(self):
        return len(self.operators)


def monoid_closure(generators, cap: int = 64) -> MonoidResult:
    """Everything obtainable by composing generators, breadth first, up to ``cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = list(dict.fromkeys(generators))
    seen = list(gens[:cap])
    known = set(seen)
    frontier = list(seen)
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = compose(g, h)
                if k not in known:
                    if len(seen) >= cap:
                        return MonoidResult(tuple(seen), False)
                    known.add(k)
                    seen.append(k)
                    nxt.append(k)
        frontier = nxt
    return MonoidResult(tuple(seen), True)


@dataclass(frozen=True)
class OrbitResult:
    family: Family
    saturated: bool


def orbit(generators, seed, cap: int = 64) -> OrbitResult:
    gens = list(generators)
    n = gens[0].n
    start = as_element(n, seed).bits
    seen = [start]
    known = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g.table[x]
                if y not in known:
                    if len(seen) >= cap:
                        return OrbitResult(Family(n, seen), False)
                    known.add(y)
                    seen.append(y)
                    nxt.append(y)
        frontier = nxt
    return OrbitResult(Family(n, seen), True)


def odd_compositions(c: Operator, cap: int = 256) -> tuple[set, bool]:
    """Distinct compositions of ``c`` and complement using an odd number of complements."""
    neg = Operator.complement(c.n)
    start = {(c, 0), (neg, 1)}
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for h, parity in frontier:
            for g, p in ((c, 0), (neg, 1)):
                item = (compose(g, h), parity ^ p)
                if item not in seen:
                    if len(seen) >= cap:
                        return {op for op, par in seen if par}, False
                    seen.add(item)
                    nxt.append(item)
        frontier = nxt
    return {op for op, par in seen if par}, True


def residue_chain(b: Operator, seed, cap: int = 64) -> tuple[list[int], bool]:
    """Iterates of the residue map from ``seed``; True if the chain became periodic."""
    res = hausdorff_residue(b)
    x = as_element(b.n, seed).bits
    chain = [x]
    while len(chain) < cap:
        x = res.table[x]
        if x in chain:
            return chain, True
        chain.append(x)
    return chain, False


def border_monoid_report(n_max: int = 4, cap: int = 64) -> dict:
    """Sizes of the border-complement monoid over every topology on up to ``n_max`` points."""
    rows = []
    for n in range(1, n_max + 1):
        for c in finite_topologies(n):
            b = derive(c, C, B)
            res = monoid_closure([b, Operator.complement(n)], cap)
            rows.append({"points": n, "closure": list(c.table), "size": len(res), "saturated": res.saturated})
    return {
        "models": len(rows),
        "max_size": max(r["size"] for r in rows),
        "non_saturating": [r for r in rows if not r["saturated"]],
        "rows": rows,
    }


def b4_subset_map(n: int = 2) -> dict[str, bool]:
    """For each subset S of {B1, B2, B3}: does S force B4 iff nIDEMr_b, over all operators at n?"""
    tables = all_tables(n)
    ax = axiom_tables(tables, B, n)
    nidem = cond.holds_tables("nIDEMr_b", tables, n)
    out = {}
    names = ("B1", "B2", "B3")
    for k in range(len(names) + 1):
        for subset in itertools.combinations(names, k):
            guard = np.ones(len(tables), dtype=bool)
            for s in subset:
                guard &= ax[s]
            out["+".join(subset) or "none"] = bool(np.all(~guard | (ax["B4"] == nidem)))
    return out


def minimal_b4_subsets(n: int = 2) -> list[str]:
    table = b4_subset_map(n)
    good = [set(k.split("+")) if k != "none" else set() for k, v in table.items() if v]
    minimal = [s for s in good if not any(t < s for t in good)]
    return sorted("+".join(sorted(s)) or "none" for s in minimal)


def border_by_fp(c: Operator) -> Operator:
    """``(C^fp)^d``: agrees with the table-derived border exactly when ``C`` is expansive."""
    return c.fp.d


def identity_checks_all(n: int = 2) -> dict[str, bool]:
    """Border identities over every operator at ``n``."""
    t = all_tables(n)
    bt = derive_tables(t, C, B, n)
    fp_d = transform_tables(transform_tables(t, TransformKind.FP, n), TransformKind.D, n)
    agree = np.all(bt == fp_d, axis=-1)
    return {
        "A & C(-A) = (C^fp)^d(A) for every C": bool(agree.all()),
        "A & C(-A) = (C^fp)^d(A) iff EXPN C": bool(np.array_equal(agree, cond.holds_all("EXPN", n))),
    }


def frontier_identities(c: Operator) -> dict[str, bool]:
    b = derive(c, C, B)
    f = derive(c, C, F)
    return {
        "F = C meet C^dc": f == op_meet(c, c.dc),
        "F = B^dc join B": f == op_join(b.dc, b),
    }
