"""Catalog of axiomatic conditions on operators, with exact and sampled checkers.

Every condition is stored as a *violation* predicate over numpy arrays: given
the quantities a condition talks about (``A``, ``f(A)``, ``f(A|B)``, the image
supremum of a family, ...) it returns True where the condition fails.  The same
predicate therefore serves a single operator (where we want a witness) and a
stack of 65,536 tables (where we want one boolean per table).

Two-variable conditions quantify over all ordered pairs ``(A, B)``.
Infinitary conditions quantify over families of elements, including the empty
family.  Families are enumerated exhaustively up to ``EXACT_FAMILY_MAX_POINTS``
points and sampled beyond that (the report is then flagged ``approximate``).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np

from .errors import CapacityError
from .lattice import Element, Family, mask_of
from .operators import (
    ENUMERATION_MAX_POINTS,
    Operator,
    TransformKind,
    all_tables,
    transform_tables,
)

EXACT_FAMILY_MAX_POINTS = 4
FAM_BOUND = 3
SAMPLES = 2000
_PAIR_CHUNK = 1 << 22


# -- violation primitives ----------------------------------------------------


def _nle(x, y):
    return (x & ~y) != 0


def _nle_in(x, y, u):
    return (x & ~y & u) != 0


def _nle_out(x, y, u):
    return (x & ~y & ~u) != 0


class _Unary:
    """Quantities for conditions with one universally quantified element."""

    def __init__(self, tables: np.ndarray, a: np.ndarray, n: int):
        self.t = tables
        self.A = a
        self.full = mask_of(n)

    def f(self, x):
        if np.ndim(x) == 1:
            return self.t[..., x]
        return np.take_along_axis(self.t, x, axis=-1)

    @cached_property
    def fA(self):
        return self.t[..., self.A]

    @property
    def notA(self):
        return self.full ^ self.A


class _Pair(_Unary):
    def __init__(self, tables, a, b, n):
        super().__init__(tables, a, n)
        self.B = b

    @cached_property
    def fB(self):
        return self.t[..., self.B]

    @cached_property
    def J(self):
        return self.A | self.B

    @cached_property
    def M(self):
        return self.A & self.B

    @cached_property
    def fJ(self):
        return self.t[..., self.J]

    @cached_property
    def fM(self):
        return self.t[..., self.M]

    @cached_property
    def below(self):
        return (self.A & ~self.B) == 0


class _Fam:
    """Quantities for infinitary conditions over a batch of families."""

    def __init__(self, tables, members: np.ndarray, n: int):
        # members: (families, elements) boolean membership matrix
        self.full = mask_of(n)
        elems = np.arange(members.shape[1], dtype=np.int64)
        self.J = np.bitwise_or.reduce(np.where(members, elems, 0), axis=1)
        self.M = np.bitwise_and.reduce(np.where(members, elems, self.full), axis=1)
        self.fJ = tables[..., self.J]
        self.fM = tables[..., self.M]
        ij = np.zeros(tables.shape[:-1] + (members.shape[0],), dtype=np.int64)
        im = np.full_like(ij, self.full)
        for x in range(members.shape[1]):
            col = tables[..., x : x + 1]
            inside = members[:, x]
            ij |= np.where(inside, col, 0)
            im &= np.where(inside, col, self.full)
        self.IJ = ij
        self.IM = im


# -- the catalog ---------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    name: str
    arity: str  # "unary" | "pair" | "family"
    violated: Callable = field(repr=False)
    doc: str = ""


_DEFS: dict[str, Condition] = {}


def _def(name, arity, doc):
    def register(fn):
        _DEFS[name] = Condition(name, arity, fn, doc)
        return fn

    return register


# positive, finitary
_def("MONO", "pair", "A <= B implies f(A) <= f(B)")(lambda q: q.below & _nle(q.fA, q.fB))
_def("ADDI_a", "pair", "f(A|B) <= f(A)|f(B)")(lambda q: _nle(q.fJ, q.fA | q.fB))
_def("ADDI_b", "pair", "f(A)|f(B) <= f(A|B)")(lambda q: _nle(q.fA | q.fB, q.fJ))
_def("MULT_a", "pair", "f(A&B) <= f(A)&f(B)")(lambda q: _nle(q.fM, q.fA & q.fB))
_def("MULT_b", "pair", "f(A)&f(B) <= f(A&B)")(lambda q: _nle(q.fA & q.fB, q.fM))
_def("EXPN", "unary", "A <= f(A)")(lambda q: _nle(q.A, q.fA))
_def("CNTR", "unary", "f(A) <= A")(lambda q: _nle(q.fA, q.A))
_def("NORM", "unary", "f(bot) = bot")(lambda q: (q.A == 0) & (q.fA != 0))
_def("DNRM", "unary", "f(top) = top")(lambda q: (q.A == q.full) & (q.fA != q.full))
_def("IDEM_a", "unary", "f(f(A)) <= f(A)")(lambda q: _nle(q.f(q.fA), q.fA))
_def("IDEM_b", "unary", "f(A) <= f(f(A))")(lambda q: _nle(q.fA, q.f(q.fA)))

# negative, finitary
_def("ANTI", "pair", "A <= B implies f(B) <= f(A)")(lambda q: q.below & _nle(q.fB, q.fA))
_def("nADDI_a", "pair", "f(A)&f(B) <= f(A|B)")(lambda q: _nle(q.fA & q.fB, q.fJ))
_def("nADDI_b", "pair", "f(A|B) <= f(A)&f(B)")(lambda q: _nle(q.fJ, q.fA & q.fB))
_def("nMULT_a", "pair", "f(A)|f(B) <= f(A&B)")(lambda q: _nle(q.fA | q.fB, q.fM))
_def("nMULT_b", "pair", "f(A&B) <= f(A)|f(B)")(lambda q: _nle(q.fM, q.fA | q.fB))
_def("nEXPN", "unary", "f(A) <= -A")(lambda q: (q.fA & q.A) != 0)
_def("nCNTR", "unary", "-A <= f(A)")(lambda q: _nle(q.notA, q.fA))
_def("nNORM", "unary", "f(bot) = top")(lambda q: (q.A == 0) & (q.fA != q.full))
_def("nDNRM", "unary", "f(top) = bot")(lambda q: (q.A == q.full) & (q.fA != 0))
_def("nIDEM_a", "unary", "f(A) <= f(-f(A))")(lambda q: _nle(q.fA, q.f(q.full ^ q.fA)))
_def("nIDEM_b", "unary", "f(-f(A)) <= f(A)")(lambda q: _nle(q.f(q.full ^ q.fA), q.fA))

# relativized, finitary (subscript U: inside U; superscript U: outside U)
_def("ADDIr_a", "pair", "f(A|B) <=^(A|B) f(A)|f(B)")(lambda q: _nle_out(q.fJ, q.fA | q.fB, q.J))
_def("ADDIr_b", "pair", "f(A)|f(B) <=^(A|B) f(A|B)")(lambda q: _nle_out(q.fA | q.fB, q.fJ, q.J))
_def("MULTr_a", "pair", "f(A&B) <=_(A&B) f(A)&f(B)")(lambda q: _nle_in(q.fM, q.fA & q.fB, q.M))
_def("MULTr_b", "pair", "f(A)&f(B) <=_(A&B) f(A&B)")(lambda q: _nle_in(q.fA & q.fB, q.fM, q.M))
_def("IDEMr_a", "unary", "f(A|f(A)) <=^A f(A)")(lambda q: _nle_out(q.f(q.A | q.fA), q.fA, q.A))
_def("IDEMr_b", "unary", "f(A) <=_A f(A&f(A))")(lambda q: _nle_in(q.fA, q.f(q.A & q.fA), q.A))
_def("nADDIr_a", "pair", "f(A)&f(B) <=^(A|B) f(A|B)")(lambda q: _nle_out(q.fA & q.fB, q.fJ, q.J))
_def("nADDIr_b", "pair", "f(A|B) <=^(A|B) f(A)&f(B)")(lambda q: _nle_out(q.fJ, q.fA & q.fB, q.J))
_def("nMULTr_a", "pair", "f(A)|f(B) <=_(A&B) f(A&B)")(lambda q: _nle_in(q.fA | q.fB, q.fM, q.M))
_def("nMULTr_b", "pair", "f(A&B) <=_(A&B) f(A)|f(B)")(lambda q: _nle_in(q.fM, q.fA | q.fB, q.M))
_def("nIDEMr_a", "unary", "f(A) <=^A f(A|-f(A))")(
    lambda q: _nle_out(q.fA, q.f(q.A | (q.full ^ q.fA)), q.A)
)
_def("nIDEMr_b", "unary", "f(A&-f(A)) <=_A f(A)")(
    lambda q: _nle_in(q.f(q.A & (q.full ^ q.fA)), q.fA, q.A)
)

# weak monotonicity
_def("MONOw1", "pair", "A <= B implies f(A) <= B|f(B)")(lambda q: q.below & _nle(q.fA, q.B | q.fB))
_def("MONOw2", "pair", "A <= B implies A&f(A) <= f(B)")(lambda q: q.below & _nle(q.A & q.fA, q.fB))
_def("ANTIw1", "pair", "A <= B implies f(B) <= B|f(A)")(lambda q: q.below & _nle(q.fB, q.B | q.fA))
_def("ANTIw2", "pair", "A <= B implies A&f(B) <= f(A)")(lambda q: q.below & _nle(q.A & q.fB, q.fA))

# infinitary (J = sup S, M = inf S, IJ = sup f[S], IM = inf f[S])
_def("iADDI_a", "family", "f(sup S) <= sup f[S]")(lambda q: _nle(q.fJ, q.IJ))
_def("iADDI_b", "family", "sup f[S] <= f(sup S)")(lambda q: _nle(q.IJ, q.fJ))
_def("iMULT_a", "family", "f(inf S) <= inf f[S]")(lambda q: _nle(q.fM, q.IM))
_def("iMULT_b", "family", "inf f[S] <= f(inf S)")(lambda q: _nle(q.IM, q.fM))
_def("inADDI_a", "family", "inf f[S] <= f(sup S)")(lambda q: _nle(q.IM, q.fJ))
_def("inADDI_b", "family", "f(sup S) <= inf f[S]")(lambda q: _nle(q.fJ, q.IM))
_def("inMULT_a", "family", "sup f[S] <= f(inf S)")(lambda q: _nle(q.IJ, q.fM))
_def("inMULT_b", "family", "f(inf S) <= sup f[S]")(lambda q: _nle(q.fM, q.IJ))
_def("iADDIr_a", "family", "f(sup S) <=^(sup S) sup f[S]")(lambda q: _nle_out(q.fJ, q.IJ, q.J))
_def("iADDIr_b", "family", "sup f[S] <=^(sup S) f(sup S)")(lambda q: _nle_out(q.IJ, q.fJ, q.J))
_def("iMULTr_a", "family", "f(inf S) <=_(inf S) inf f[S]")(lambda q: _nle_in(q.fM, q.IM, q.M))
_def("iMULTr_b", "family", "inf f[S] <=_(inf S) f(inf S)")(lambda q: _nle_in(q.IM, q.fM, q.M))
_def("inADDIr_a", "family", "inf f[S] <=^(sup S) f(sup S)")(lambda q: _nle_out(q.IM, q.fJ, q.J))
_def("inADDIr_b", "family", "f(sup S) <=^(sup S) inf f[S]")(lambda q: _nle_out(q.fJ, q.IM, q.J))
_def("inMULTr_a", "family", "sup f[S] <=_(inf S) f(inf S)")(lambda q: _nle_in(q.IJ, q.fM, q.M))
_def("inMULTr_b", "family", "f(inf S) <=_(inf S) sup f[S]")(lambda q: _nle_in(q.fM, q.IJ, q.M))

# conjunctions of the a/b halves
COMPOSITES = {
    base: (f"{base}_a", f"{base}_b")
    for base in (
        "ADDI", "MULT", "IDEM", "iADDI", "iMULT",
        "nADDI", "nMULT", "nIDEM", "inADDI", "inMULT",
        "ADDIr", "MULTr", "IDEMr", "iADDIr", "iMULTr",
        "nADDIr", "nMULTr", "nIDEMr", "inADDIr", "inMULTr",
    )
}  # fmt: skip

ConditionId = enum.Enum("ConditionId", {name: name for name in [*_DEFS, *COMPOSITES]})
ConditionId.__str__ = lambda self: self.value  # type: ignore[method-assign]


def condition_id(c) -> ConditionId:
    if isinstance(c, ConditionId):
        return c
    try:
        return ConditionId(c)
    except ValueError:
        raise ValueError(f"unknown condition {c!r}") from None


def atomic_parts(c) -> tuple[str, ...]:
    name = condition_id(c).value
    return COMPOSITES.get(name, (name,))


def is_infinitary(c) -> bool:
    return any(_DEFS[p].arity == "family" for p in atomic_parts(c))


# -- family enumeration ---------------------------------------------------------


@lru_cache(maxsize=None)
def exact_families(n: int) -> np.ndarray:
    """Membership matrix of every family of elements (row ``s`` = family with bitmask ``s``)."""
    if n > EXACT_FAMILY_MAX_POINTS:
        raise CapacityError(f"exact family enumeration is limited to n <= {EXACT_FAMILY_MAX_POINTS}")
    m = 1 << n
    s = np.arange(1 << m, dtype=np.int64)
    members = ((s[:, None] >> np.arange(m)) & 1).astype(bool)
    members.setflags(write=False)
    return members


def bounded_families(n: int, bound: int = FAM_BOUND, samples: int = SAMPLES, seed: int = 0) -> np.ndarray:
    """Empty family, small families, the full family and random families.

    Small families are enumerated when that is cheap and otherwise drawn at
    random; the result is only used for approximate checks.
    """
    m = 1 << n
    rng = np.random.default_rng(seed)
    rows = [np.zeros(m, dtype=bool), np.ones(m, dtype=bool)]
    small_count = sum(_comb(m, k) for k in range(1, bound + 1))
    if small_count <= 50_000:
        for k in range(1, bound + 1):
            for combo in itertools.combinations(range(m), k):
                row = np.zeros(m, dtype=bool)
                row[list(combo)] = True
                rows.append(row)
    else:
        for _ in range(samples):
            row = np.zeros(m, dtype=bool)
            row[rng.choice(m, size=int(rng.integers(1, bound + 1)), replace=False)] = True
            rows.append(row)
    rows.extend(rng.random((samples, m)) < rng.random((samples, 1)))
    return np.array(rows)


def _comb(m, k):
    from math import comb

    return comb(m, k)


def _families_for(n: int) -> tuple[np.ndarray, bool]:
    if n <= EXACT_FAMILY_MAX_POINTS:
        return exact_families(n), False
    return bounded_families(n), True


# -- evaluation -------------------------------------------------------------------


def _elements(n):
    return np.arange(1 << n, dtype=np.int64)


def _pair_grid(n):
    a = _elements(n)
    return np.repeat(a, 1 << n), np.tile(a, 1 << n)


def _atomic_violations(name: str, tables: np.ndarray, n: int, members=None) -> np.ndarray:
    """Boolean array ``tables.shape[:-1] + (instances,)``: True where the instance violates."""
    cond = _DEFS[name]
    if cond.arity == "unary":
        return cond.violated(_Unary(tables, _elements(n), n))
    if cond.arity == "pair":
        a, b = _pair_grid(n)
        return cond.violated(_Pair(tables, a, b, n))
    if members is None:
        members, _ = _families_for(n)
    return cond.violated(_Fam(tables, members, n))


def holds_tables(c, tables: np.ndarray, n: int) -> np.ndarray:
    """Evaluate a condition on a stack of tables; one boolean per table.

    Infinitary conditions are exact only for ``n <= EXACT_FAMILY_MAX_POINTS``.
    """
    tables = np.asarray(tables, dtype=np.int64)
    ok = np.ones(tables.shape[:-1], dtype=bool)
    for part in atomic_parts(c):
        cond = _DEFS[part]
        if cond.arity == "family":
            members, _ = _families_for(n)
            # chunk families so stacks of 65,536 tables stay small in memory
            step = max(1, (1 << 24) // max(1, tables.size))
            for lo in range(0, members.shape[0], step):
                ok &= ~_atomic_violations(part, tables, n, members[lo : lo + step]).any(axis=-1)
        else:
            ok &= ~_atomic_violations(part, tables, n).any(axis=-1)
    return ok


@lru_cache(maxsize=None)
def _exhaustive(name: str, n: int) -> np.ndarray:
    result = holds_tables(name, all_tables(n), n)
    result.setflags(write=False)
    return result


def holds_all(c, n: int) -> np.ndarray:
    """Truth value of a condition for every operator at ``n <= 2`` (cached)."""
    if n > ENUMERATION_MAX_POINTS:
        raise CapacityError(f"exhaustive scans are limited to n <= {ENUMERATION_MAX_POINTS}")
    return _exhaustive(condition_id(c).value, n)


@dataclass(frozen=True)
class CheckReport:
    condition: ConditionId
    holds: bool
    witness: dict | None = None
    approximate: bool = False

    def __bool__(self):
        return self.holds


def _single_witness(part: str, f: Operator) -> tuple[dict | None, bool]:
    n = f.n
    t = f.array
    cond = _DEFS[part]
    if cond.arity == "unary":
        bad = np.flatnonzero(_atomic_violations(part, t, n))
        return ({"A": Element(n, int(bad[0]))} if bad.size else None), False
    if cond.arity == "pair":
        m = 1 << n
        rows = max(1, _PAIR_CHUNK // m)
        elems = _elements(n)
        for lo in range(0, m, rows):
            a = np.repeat(elems[lo : lo + rows], m)
            b = np.tile(elems, min(rows, m - lo))
            bad = np.flatnonzero(cond.violated(_Pair(t, a, b, n)))
            if bad.size:
                i = bad[0]
                return {"A": Element(n, int(a[i])), "B": Element(n, int(b[i]))}, False
        return None, False
    members, approximate = _families_for(n)
    bad = np.flatnonzero(_atomic_violations(part, t, n, members))
    if bad.size:
        row = members[bad[0]]
        return {"S": Family(n, np.flatnonzero(row).tolist())}, approximate
    return None, approximate


def check(c, f: Operator) -> CheckReport:
    """Check one condition on one operator, returning the first violation found."""
    cid = condition_id(c)
    approximate = False
    for part in atomic_parts(cid):
        witness, approx = _single_witness(part, f)
        approximate |= approx
        if witness is not None:
            return CheckReport(cid, False, {"part": part, **witness}, False)
    return CheckReport(cid, True, None, approximate)


def recheck_witness(c, f: Operator, witness: dict) -> bool:
    """True if ``witness`` really violates (the named part of) condition ``c`` on ``f``."""
    part = witness.get("part", condition_id(c).value)
    n = f.n
    t = f.array[None, :]
    cond = _DEFS[part]
    if cond.arity == "unary":
        a = np.array([witness["A"].bits])
        return bool(cond.violated(_Unary(t, a, n))[0, 0])
    if cond.arity == "pair":
        a = np.array([witness["A"].bits])
        b = np.array([witness["B"].bits])
        return bool(cond.violated(_Pair(t, a, b, n))[0, 0])
    row = np.zeros((1, 1 << n), dtype=bool)
    row[0, list(witness["S"].masks)] = True
    return bool(cond.violated(_Fam(t, row, n))[0, 0])


# -- naive oracle for the infinitary conditions --------------------------------


def _naive_family_condition(name: str, table, n: int, families) -> bool:
    full = mask_of(n)
    leq = lambda x, y: x & ~y == 0  # noqa: E731
    leq_in = lambda x, y, u: x & ~y & u == 0  # noqa: E731
    leq_out = lambda x, y, u: x & ~y & ~u & full == 0  # noqa: E731
    for s in families:
        sup = 0
        inf = full
        for x in s:
            sup |= x
            inf &= x
        img = {table[x] for x in s}
        isup = 0
        iinf = full
        for y in img:
            isup |= y
            iinf &= y
        fj, fm = table[sup], table[inf]
        ok = {
            "iADDI_a": leq(fj, isup),
            "iADDI_b": leq(isup, fj),
            "iMULT_a": leq(fm, iinf),
            "iMULT_b": leq(iinf, fm),
            "inADDI_a": leq(iinf, fj),
            "inADDI_b": leq(fj, iinf),
            "inMULT_a": leq(isup, fm),
            "inMULT_b": leq(fm, isup),
            "iADDIr_a": leq_out(fj, isup, sup),
            "iADDIr_b": leq_out(isup, fj, sup),
            "iMULTr_a": leq_in(fm, iinf, inf),
            "iMULTr_b": leq_in(iinf, fm, inf),
            "inADDIr_a": leq_out(iinf, fj, sup),
            "inADDIr_b": leq_out(fj, iinf, sup),
            "inMULTr_a": leq_in(isup, fm, inf),
            "inMULTr_b": leq_in(fm, isup, inf),
        }[name]
        if not ok:
            return False
    return True


def naive_infinitary(c, f: Operator) -> bool:
    """Direct transcription of the infinitary definitions over every family.

    Pure Python, one family at a time; used as the independent oracle for the
    vectorized checker and for the atom-based shortcut below.
    """
    if f.n > EXACT_FAMILY_MAX_POINTS:
        raise CapacityError("the naive family oracle is exact only for small domains")
    m = 1 << f.n
    families = [[x for x in range(m) if s >> x & 1] for s in range(1 << m)]
    return all(_naive_family_condition(p, f.table, f.n, families) for p in atomic_parts(c))


def iaddi_fast_tables(tables: np.ndarray, n: int) -> np.ndarray:
    """Complete additivity via atoms: ``f(bot) = bot`` and ``f(X) = sup of f({j}) for j in X``."""
    tables = np.asarray(tables, dtype=np.int64)
    elems = _elements(n)
    rebuilt = np.zeros_like(tables)
    for j in range(n):
        has = ((elems >> j) & 1).astype(bool)
        rebuilt |= np.where(has, tables[..., [1 << j]], 0)
    return np.all(rebuilt == tables, axis=-1)


# -- inter-condition scans -------------------------------------------------------


def check_equiv_scan(c1, c2, n: int) -> bool:
    """True iff ``c1`` and ``c2`` agree on every operator over ``n <= 2`` points."""
    return bool(np.array_equal(holds_all(c1, n), holds_all(c2, n)))


DUAL_PAIRS: dict[TransformKind, list[tuple[str, str]]] = {
    TransformKind.D: [
        ("ADDI_a", "MULT_b"), ("ADDI_b", "MULT_a"), ("EXPN", "CNTR"), ("NORM", "DNRM"),
        ("IDEM_a", "IDEM_b"), ("iADDI_a", "iMULT_b"), ("iADDI_b", "iMULT_a"),
        ("MONO", "MONO"), ("ANTI", "ANTI"),
        ("nADDI_a", "nMULT_b"), ("nADDI_b", "nMULT_a"), ("nEXPN", "nCNTR"),
        ("nNORM", "nDNRM"), ("nIDEM_a", "nIDEM_b"),
        ("inADDI_a", "inMULT_b"), ("inADDI_b", "inMULT_a"),
        ("ADDIr_a", "MULTr_b"), ("ADDIr_b", "MULTr_a"),
        ("iADDIr_a", "iMULTr_b"), ("iADDIr_b", "iMULTr_a"), ("IDEMr_a", "IDEMr_b"),
        ("nADDIr_a", "nMULTr_b"), ("nADDIr_b", "nMULTr_a"),
        ("inADDIr_a", "inMULTr_b"), ("inADDIr_b", "inMULTr_a"), ("nIDEMr_a", "nIDEMr_b"),
        ("MONOw1", "MONOw2"), ("ANTIw1", "ANTIw2"),
    ],
    TransformKind.C: [
        ("ADDI_a", "nADDI_a"), ("ADDI_b", "nADDI_b"), ("iADDI_a", "inADDI_a"),
        ("iADDI_b", "inADDI_b"), ("EXPN", "nEXPN"), ("NORM", "nNORM"), ("IDEM_a", "nIDEM_a"),
        ("MONO", "ANTI"),
    ],
    TransformKind.DC: [
        ("ADDI_a", "nMULT_b"), ("ADDI_b", "nMULT_a"), ("iADDI_a", "inMULT_b"),
        ("iADDI_b", "inMULT_a"), ("EXPN", "nCNTR"), ("NORM", "nDNRM"), ("IDEM_a", "nIDEM_b"),
        ("MONO", "ANTI"),
    ],
}  # fmt: skip


def check_dual_pair(c, c_dual, f: Operator, kind: TransformKind = TransformKind.D) -> bool:
    """``c`` holds of ``f`` exactly when ``c_dual`` holds of the transformed ``f``."""
    return check(c, f).holds == check(c_dual, f.transform(kind)).holds


def dual_pair_scan(c, c_dual, kind: TransformKind, n: int) -> np.ndarray:
    """Per-operator agreement of the pairing over all operators at ``n``.

    Transforms permute the operator space, so the transformed tables are looked
    up by index in the cached exhaustive results.
    """
    from .operators import operator_count

    tables = all_tables(n)
    moved = transform_tables(tables, kind, n)
    index = (moved << (n * np.arange(1 << n))).sum(axis=-1)
    assert index.max() < operator_count(n)
    return holds_all(c, n) == holds_all(c_dual, n)[index]


FP_TRIPLES: dict[str, tuple[str, str]] = {
    # condition on f -> (condition on f^fp, condition on f^fpc)
    "EXPN": ("EXPN", "nEXPN"),
    "CNTR": ("nCNTR", "CNTR"),
    "NORM": ("nNORM", "NORM"),
    "DNRM": ("DNRM", "nDNRM"),
    "ADDIr_a": ("nADDIr_a", "ADDIr_a"),
    "ADDIr_b": ("nADDIr_b", "ADDIr_b"),
    "iADDIr_a": ("inADDIr_a", "iADDIr_a"),
    "iADDIr_b": ("inADDIr_b", "iADDIr_b"),
    "MULTr_a": ("MULTr_a", "nMULTr_a"),
    "MULTr_b": ("MULTr_b", "nMULTr_b"),
    "iMULTr_a": ("iMULTr_a", "inMULTr_a"),
    "iMULTr_b": ("iMULTr_b", "inMULTr_b"),
    "IDEMr_a": ("nIDEMr_a", "IDEMr_a"),
    "IDEMr_b": ("IDEMr_b", "nIDEMr_b"),
}


def check_fp_triple(c, f: Operator) -> bool:
    """The three-way equivalence linking ``c`` on ``f``, ``f^fp`` and ``f^fpc``."""
    name = condition_id(c).value
    if name not in FP_TRIPLES:
        raise ValueError(f"no fixed-point correspondence is catalogued for {name}")
    on_fp, on_fpc = FP_TRIPLES[name]
    a = check(name, f).holds
    return a == check(on_fp, f.fp).holds == check(on_fpc, f.fpc).holds


def fp_triple_scan(c, n: int) -> np.ndarray:
    name = condition_id(c).value
    on_fp, on_fpc = FP_TRIPLES[name]
    tables = all_tables(n)
    weights = n * np.arange(1 << n)
    fp_idx = (transform_tables(tables, TransformKind.FP, n) << weights).sum(axis=-1)
    fpc_idx = (transform_tables(tables, TransformKind.FPC, n) << weights).sum(axis=-1)
    base = holds_all(name, n)
    return (base == holds_all(on_fp, n)[fp_idx]) & (base == holds_all(on_fpc, n)[fpc_idx])


@dataclass(frozen=True)
class Bridge:
    label: str
    guards: tuple[str, ...]  # any one of these suffices
    equivalent: tuple[str, ...]


RELATIVIZATION_BRIDGES = (
    Bridge("EXPN or nEXPN: ADDI_a <-> ADDIr_a", ("EXPN", "nEXPN"), ("ADDI_a", "ADDIr_a")),
    Bridge("EXPN: ADDI_b <-> ADDIr_b <-> MONOw1", ("EXPN",), ("ADDI_b", "ADDIr_b", "MONOw1")),
    Bridge("CNTR: MULT_a <-> MULTr_a <-> MONOw2", ("CNTR",), ("MULT_a", "MULTr_a", "MONOw2")),
    Bridge("CNTR or nCNTR: MULT_b <-> MULTr_b", ("CNTR", "nCNTR"), ("MULT_b", "MULTr_b")),
    Bridge("EXPN or nEXPN: nADDI_a <-> nADDIr_a", ("EXPN", "nEXPN"), ("nADDI_a", "nADDIr_a")),
    Bridge("nEXPN: nADDI_b <-> nADDIr_b <-> ANTIw1", ("nEXPN",), ("nADDI_b", "nADDIr_b", "ANTIw1")),
    Bridge("nCNTR: nMULT_a <-> nMULTr_a <-> ANTIw2", ("nCNTR",), ("nMULT_a", "nMULTr_a", "ANTIw2")),
    Bridge("CNTR or nCNTR: nMULT_b <-> nMULTr_b", ("CNTR", "nCNTR"), ("nMULT_b", "nMULTr_b")),
)


def _bridge_holds(bridge: Bridge, value) -> bool:
    if not any(value(g) for g in bridge.guards):
        return True
    first = value(bridge.equivalent[0])
    return all(value(c) == first for c in bridge.equivalent[1:])


def check_relativization_bridge(f: Operator) -> dict[str, bool]:
    """Per bullet: under its guard, the listed conditions all agree on ``f``."""
    cache: dict[str, bool] = {}

    def value(c):
        if c not in cache:
            cache[c] = check(c, f).holds
        return cache[c]

    return {b.label: _bridge_holds(b, value) for b in RELATIVIZATION_BRIDGES}


def relativization_bridge_scan(n: int) -> dict[str, np.ndarray]:
    out = {}
    for b in RELATIVIZATION_BRIDGES:
        guard = np.zeros_like(holds_all("EXPN", n))
        for g in b.guards:
            guard = guard | holds_all(g, n)
        first = holds_all(b.equivalent[0], n)
        agree = np.ones_like(first)
        for c in b.equivalent[1:]:
            agree &= holds_all(c, n) == first
        out[b.label] = ~guard | agree
    return out


def find_separating(c_holds, c_fails, n: int) -> Operator | None:
    """First operator (enumeration order) satisfying ``c_holds`` but not ``c_fails``."""
    from .operators import operator_at

    hits = np.flatnonzero(holds_all(c_holds, n) & ~holds_all(c_fails, n))
    return operator_at(n, int(hits[0])) if hits.size else None
