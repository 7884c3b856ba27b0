"""Quantifiers as infinitary meets and joins, with constant and varying domains.

A quantified term is a function from a sort into elements.  Sorts are either
the elements themselves (propositional quantification) or a finite set of
individuals.  ``pi``/``sigma`` are the universal/existential quantifiers;
domains restrict them to a subset of the sort (constant) or weight each
member by an element (varying, via a domain function ``delta``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import conditions as cond
from .errors import CapacityError, DomainError
from .formula import parse_formula
from .lattice import Element, Family, as_element, big_meet_masks, mask_of
from .logic import evaluate_stack
from .operators import Operator, all_tables, operator_count, sample_tables

EXHAUSTIVE_LIMIT = 1 << 16


# -- sorts, terms and domains ------------------------------------------------------------


@dataclass(frozen=True)
class QuantSort:
    """``kind`` is propositional, individuals or restricted.

    Members are numbered ``0 .. size-1``; for propositional sorts member ``X``
    is the element with mask ``X``.  A restricted sort keeps only ``members``.
    """

    kind: str
    n: int
    size: int
    members: tuple = ()

    @classmethod
    def propositional(cls, n: int) -> QuantSort:
        return cls("propositional", n, 1 << n, tuple(range(1 << n)))

    @classmethod
    def individuals(cls, n: int, m: int) -> QuantSort:
        if m < 1:
            raise DomainError("an individual sort needs at least one member")
        return cls("individuals", n, m, tuple(range(m)))

    @classmethod
    def restricted(cls, c: Operator, which) -> QuantSort:
        """Open or closed elements of the closure ``c``, or an explicit Family."""
        if isinstance(which, Family):
            keep = which.masks
        elif which == "open":
            keep = c.d.fixed_points().masks
        elif which == "closed":
            keep = c.fixed_points().masks
        else:
            raise DomainError(f"unknown restriction {which!r}")
        return cls("restricted", c.n, 1 << c.n, tuple(keep))


@dataclass(frozen=True)
class SortFunction:
    """A total map from sort members to elements, stored as masks."""

    n: int
    values: tuple

    def __post_init__(self):
        full = mask_of(self.n)
        vals = tuple(int(as_element(self.n, v).bits) for v in self.values)
        if any(v & ~full for v in vals):
            raise DomainError("value outside the domain")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_operator(cls, f: Operator) -> SortFunction:
        return cls(f.n, f.table)

    @property
    def size(self) -> int:
        return len(self.values)

    def __call__(self, member: int) -> Element:
        return Element(self.n, self.values[member])

    def compose(self, f: Operator) -> SortFunction:
        """``f o self``."""
        return SortFunction(self.n, [f.table[v] for v in self.values])


@dataclass(frozen=True)
class Unrestricted:
    pass


@dataclass(frozen=True)
class Constant:
    """Members (masks for propositional sorts, indices for individuals) forming the domain."""

    members: frozenset = field(default_factory=frozenset)

    def __init__(self, members):
        if isinstance(members, Family):
            members = members.masks
        object.__setattr__(self, "members", frozenset(int(m) for m in members))


@dataclass(frozen=True)
class Varying:
    delta: SortFunction


UNRESTRICTED = Unrestricted()


def _member_set(phi: SortFunction, spec, sort: QuantSort | None) -> list[int]:
    keep = range(phi.size) if sort is None else sort.members
    if sort is not None and sort.size != phi.size:
        raise DomainError(f"term has {phi.size} entries but the sort has {sort.size} members")
    if isinstance(spec, Constant):
        if any(not 0 <= x < phi.size for x in spec.members):
            raise DomainError("constant domain mentions a member outside the sort")
        keep = [x for x in keep if x in spec.members]
    return list(keep)


def _check_delta(phi: SortFunction, spec) -> None:
    if isinstance(spec, Varying) and (spec.delta.size != phi.size or spec.delta.n != phi.n):
        raise DomainError("domain function must be total on the sort")


def pi(phi: SortFunction, spec=UNRESTRICTED, sort: QuantSort | None = None) -> Element:
    """Universal quantifier: pointwise meet over the (weighted) domain."""
    _check_delta(phi, spec)
    full = mask_of(phi.n)
    acc = full
    for x in _member_set(phi, spec, sort):
        v = phi.values[x]
        if isinstance(spec, Varying):
            v = (full ^ spec.delta.values[x]) | v
        acc &= v
    return Element(phi.n, acc)


def sigma(phi: SortFunction, spec=UNRESTRICTED, sort: QuantSort | None = None) -> Element:
    """Existential quantifier: pointwise join over the (weighted) domain."""
    _check_delta(phi, spec)
    acc = 0
    for x in _member_set(phi, spec, sort):
        v = phi.values[x]
        if isinstance(spec, Varying):
            v = spec.delta.values[x] & v
        acc |= v
    return Element(phi.n, acc)


def lift_up(domain, size: int, n: int) -> Varying:
    """The domain function that is top on members of ``domain`` and bottom elsewhere."""
    members = Constant(domain).members
    full = mask_of(n)
    return Varying(SortFunction(n, [full if x in members else 0 for x in range(size)]))


# -- vectorized kernels -----------------------------------------------------------------------


def pi_tables(phi: np.ndarray, n: int, members: np.ndarray | None = None, delta: np.ndarray | None = None) -> np.ndarray:
    """Pointwise meet over the last axis; ``members`` masks out entries, ``delta`` weights them."""
    full = mask_of(n)
    phi = np.asarray(phi, dtype=np.int64)
    if delta is not None:
        phi = (full ^ np.asarray(delta, dtype=np.int64)) | phi
    if members is not None:
        phi = np.where(members, phi, full)
    return np.bitwise_and.reduce(phi, axis=-1, initial=full)


def sigma_tables(phi: np.ndarray, n: int, members: np.ndarray | None = None, delta: np.ndarray | None = None) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.int64)
    if delta is not None:
        phi = np.asarray(delta, dtype=np.int64) & phi
    if members is not None:
        phi = np.where(members, phi, 0)
    return np.bitwise_or.reduce(phi, axis=-1, initial=0)


def term_tables(n: int, size: int, samples: int = 1000, seed=0) -> tuple[np.ndarray, bool]:
    """All maps from a ``size``-member sort into elements when few enough, else a seeded sample."""
    m = 1 << n
    count = m**size
    if count <= EXHAUSTIVE_LIMIT:
        idx = np.arange(count, dtype=np.int64)
        return np.stack([(idx // m**i) % m for i in range(size)], axis=-1), True
    rng = np.random.default_rng(seed)
    return rng.integers(0, m, size=(samples, size), dtype=np.int64), False


def subset_masks(size: int) -> np.ndarray:
    """Every subset of a ``size``-member sort as a boolean membership row."""
    idx = np.arange(1 << size, dtype=np.int64)[:, None]
    return (idx >> np.arange(size)) & 1 == 1


# -- laws --------------------------------------------------------------------------------------


def _le(x, y):
    return (x & ~y) == 0


def quantifier_laws(n: int = 2, size: int | None = None, samples: int = 1000, seed=0) -> dict:
    """Structural quantifier laws over a sort of ``size`` members (default: the elements).

    Every entry records whether it held and whether the check was exhaustive.
    """
    full = mask_of(n)
    size = (1 << n) if size is None else size
    phis, exact = term_tables(n, size, samples, seed)
    out: dict[str, dict] = {}

    def put(name, ok, exhaustive):
        out[name] = {"holds": bool(np.all(ok)), "exhaustive": bool(exhaustive)}

    pis, sigmas = pi_tables(phis, n), sigma_tables(phis, n)
    put("Pi phi = inf range phi", pis == np.array([big_meet_masks(r, n) for r in phis.tolist()]), exact)
    put("Sigma phi = sup range phi", sigmas == np.bitwise_or.reduce(phis, axis=-1), exact)
    put("Pi phi = -Sigma(phi^c)", pis == full ^ sigma_tables(full ^ phis, n), exact)
    put("Sigma phi = -Pi(phi^c)", sigmas == full ^ pi_tables(full ^ phis, n), exact)

    # Pi[D] phi = inf phi[D] and Pi[D] = Pi{D lifted}, for every domain D
    doms = subset_masks(size)
    lifted = np.where(doms, full, 0)
    p, d = phis[:, None, :], doms[None, :, :]
    cons_pi = pi_tables(p, n, members=d)
    cons_sigma = sigma_tables(p, n, members=d)
    put("Pi[D] phi = Pi{D up} phi", cons_pi == pi_tables(p, n, delta=lifted[None]), exact)
    put("Sigma[D] phi = Sigma{D up} phi", cons_sigma == sigma_tables(p, n, delta=lifted[None]), exact)
    put("Pi[D] phi = inf phi[D]", cons_pi == np.bitwise_and.reduce(np.where(d, p, full), axis=-1), exact)
    put("Pi[empty] phi = T", cons_pi[:, 0] == full, exact)
    put("Pi[everything] phi = Pi phi", cons_pi[:, -1] == pis, exact)

    # Pi{delta} phi = Pi(delta => phi); sample deltas against phis
    deltas, dexact = term_tables(n, size, samples, seed + 1)
    dd = deltas[:, None, :] if len(deltas) * len(phis) <= 1 << 20 else deltas[: 256, None, :]
    pp = phis[None, :, :] if dd.shape[0] * len(phis) <= 1 << 20 else phis[None, :256, :]
    put("Pi{delta} phi = Pi(delta -> phi)", pi_tables(pp, n, delta=dd) == pi_tables((full ^ dd) | pp, n), exact and dexact)
    put("Sigma{delta} phi = Sigma(delta & phi)", sigma_tables(pp, n, delta=dd) == sigma_tables(dd & pp, n), exact and dexact)

    # composition over the propositional sort: Pi(phi o psi) = Pi[range psi] phi
    if size == 1 << n:
        ops = all_tables(n) if operator_count(n) <= 256 else sample_tables(n, 256, seed)
        comp = np.take_along_axis(ops[:, None, :], np.broadcast_to(ops[None, :, :], (len(ops),) * 2 + (size,)), axis=-1)
        rng_members = np.zeros((len(ops), size), dtype=bool)
        np.put_along_axis(rng_members, ops, True, axis=-1)
        lhs = pi_tables(comp, n)
        rhs = pi_tables(ops[:, None, :], n, members=rng_members[None, :, :])
        put("Pi(phi o psi) = Pi[range psi] phi", lhs == rhs, operator_count(n) <= 256)
        lhs = sigma_tables(comp, n)
        rhs = sigma_tables(ops[:, None, :], n, members=rng_members[None, :, :])
        put("Sigma(phi o psi) = Sigma[range psi] phi", lhs == rhs, operator_count(n) <= 256)
    return out


DRINKER = "Exists x . Drunk(x) -> (Forall y . Drunk(y))"
COMPLEMENT_WITNESS = "forall a . exists b . a <-> -b"
OPEN_COMPLEMENT_WITNESS = "forall[open] a . exists[open] b . a <-> -b"


def drinker_check(n: int, m: int) -> dict:
    """The drinker formula over every predicate table with ``m`` individuals."""
    from .logic import Model, valid

    f = parse_formula(DRINKER)
    tables, exact = term_tables(n, m)
    c = Operator.identity(n)
    failures = [t for t in tables.tolist() if not valid(f, Model(n, c, predicates={"Drunk": t}))]
    return {"holds": not failures, "tables": len(tables), "exhaustive": exact, "witness": failures[:1]}


def complement_witness_check(n: int) -> bool:
    """``forall a . exists b . a <-> -b`` is top under every closure at ``n`` points."""
    tables = all_tables(n) if operator_count(n) <= 256 else sample_tables(n, 256, 0)
    out = evaluate_stack(parse_formula(COMPLEMENT_WITNESS), tables, n, {})
    return bool((out == mask_of(n)).all())


def open_complement_probe(n_max: int = 2) -> list[dict]:
    """The restricted variant over interiors, read pointwise and with a uniform witness.

    Pointwise is the evaluator's reading of the restricted quantifiers.  The
    uniform reading asks for one open ``b`` that works at every point.  Both
    are reported for all operators used as interiors and for those satisfying
    the full interior axioms; nothing is asserted.
    """
    rows = []
    f = parse_formula(OPEN_COMPLEMENT_WITNESS)
    for n in range(1, n_max + 1):
        full = mask_of(n)
        interiors = all_tables(n)
        ctables = np.asarray([Operator(n, t).d.table for t in interiors.tolist()], dtype=np.int64)
        pointwise = (evaluate_stack(f, ctables, n, {})[:, 0] == full)
        elems = np.arange(1 << n)
        is_open = interiors == elems[None, :]
        # uniform: every open a has an open b with a <-> -b = T, i.e. b = -a is open
        compl_open = np.take_along_axis(is_open, np.broadcast_to(full ^ elems, is_open.shape), axis=1)
        uniform = (~is_open | compl_open).all(axis=1)
        axioms = np.ones(len(interiors), dtype=bool)
        for c in ("MULT", "CNTR", "DNRM", "IDEM"):
            axioms &= cond.holds_tables(c, interiors, n)
        rows.append({
            "points": n,
            "operators": len(interiors),
            "pointwise_valid": int(pointwise.sum()),
            "uniform_valid": int(uniform.sum()),
            "interior_axioms": int(axioms.sum()),
            "pointwise_valid_under_axioms": int(pointwise[axioms].sum()),
            "uniform_valid_under_axioms": int(uniform[axioms].sum()),
            "uniform_counterexample": (
                Operator(n, interiors[np.flatnonzero(axioms & ~uniform)[0]]).table
                if (axioms & ~uniform).any() else None
            ),
        })  # fmt: skip
    return rows


# -- Barcan formulas ------------------------------------------------------------------------

BARCAN_FORMS = ("CBF-1", "CBF-2", "BF-1", "BF-2")
BARCAN_PRECONDITIONS = {"CBF-1": "MONO", "CBF-2": "MONO", "BF-1": "iMULT_b", "BF-2": "iADDI_a"}


def _apply(f: np.ndarray, x: np.ndarray) -> np.ndarray:
    """``f[k](x[k, ...])`` for tables ``f`` of shape ``(K, m)`` and masks ``x`` of shape ``(K, ...)``."""
    k = f.shape[0]
    flat = x.reshape(k, -1)
    return np.take_along_axis(f, flat, axis=1).reshape(x.shape)


def barcan_tables(f: np.ndarray, psi: np.ndarray, n: int, members=None, delta=None) -> dict[str, np.ndarray]:
    """Per (f, psi[, domain]) whether each form holds.

    ``f``: ``(K, 2^n)``; ``psi``: ``(P, S)``; ``members``/``delta``: ``(D, S)``
    or ``None``.  Results have shape ``(K, P, D)`` (``D = 1`` when unrestricted).
    """
    K = f.shape[0]
    P, S = psi.shape
    if members is None and delta is None:
        mem = np.ones((1, S), dtype=bool)
        dl = None
    else:
        mem = np.ones((len(delta), S), dtype=bool) if members is None else members
        dl = delta
    D = mem.shape[0]
    ps = np.broadcast_to(psi[None, :, None, :], (K, P, D, S))
    fps = _apply(f, np.ascontiguousarray(ps))
    mm = mem[None, None, :, :]
    dd = None if dl is None else dl[None, None, :, :]
    pi_psi = pi_tables(ps, n, mm, dd)
    sg_psi = sigma_tables(ps, n, mm, dd)
    pi_fps = pi_tables(fps, n, mm, dd)
    sg_fps = sigma_tables(fps, n, mm, dd)
    f_pi = _apply(f, pi_psi)
    f_sg = _apply(f, sg_psi)
    return {
        "CBF-1": _le(f_pi, pi_fps),
        "CBF-2": _le(sg_fps, f_sg),
        "BF-1": _le(pi_fps, f_pi),
        "BF-2": _le(f_sg, sg_fps),
    }


@dataclass
class BarcanReport:
    """Per form: precondition, whether the form held on every checked term, and a witness."""

    domain: str
    forms: dict
    terms: int
    exhaustive: bool


def barcan_check(f: Operator, sort: QuantSort, spec=UNRESTRICTED, samples: int = 1000, seed=0) -> BarcanReport:
    """The four Barcan forms for one operator over every (or a sample of) term ``psi``."""
    n = f.n
    psis, exact = term_tables(n, sort.size, samples, seed)
    members = np.zeros((1, sort.size), dtype=bool)
    members[0, list(sort.members)] = True
    delta = None
    label = "unrestricted"
    if isinstance(spec, Constant):
        members &= np.isin(np.arange(sort.size), sorted(spec.members))[None, :]
        label = "constant"
    elif isinstance(spec, Varying):
        if spec.delta.size != sort.size:
            raise DomainError("domain function must be total on the sort")
        delta = np.asarray(spec.delta.values, dtype=np.int64)[None, :]
        label = "varying"
    res = barcan_tables(f.array[None, :], psis, n, members, delta)
    forms = {}
    for name in BARCAN_FORMS:
        ok = res[name][0, :, 0]
        bad = np.flatnonzero(~ok)
        pre = BARCAN_PRECONDITIONS[name]
        forms[name] = {
            "precondition": pre,
            "precondition_holds": cond.check(pre, f).holds,
            "holds": not bad.size,
            "witness": None if not bad.size else [list(Element(n, int(v)).points) for v in psis[bad[0]]],
        }
    return BarcanReport(label, forms, len(psis), exact)


def barcan_scan(n: int = 2, sizes=(1, 2, 4)) -> dict[str, bool]:
    """Each form holds for every operator meeting its precondition, every term and every
    constant domain, on sorts of the given sizes (exhaustive at ``n <= 2``)."""
    tables = all_tables(n)
    pre = {c: cond.holds_tables(c, tables, n) for c in set(BARCAN_PRECONDITIONS.values())}
    out = {}
    for size in sizes:
        psis, _ = term_tables(n, size)
        doms = subset_masks(size)
        res = barcan_tables(tables, psis, n, members=None)
        cres = barcan_tables(tables, psis, n, members=doms)
        for name in BARCAN_FORMS:
            sel = pre[BARCAN_PRECONDITIONS[name]]
            out[f"{name} (size {size})"] = bool(res[name][sel].all())
            out[f"{name}-cons (size {size})"] = bool(cres[name][sel].all())
    return out


def explicit_cons_equivalence(n: int = 2) -> dict[str, bool]:
    """Over the propositional sort with identity term, BF-1-cons for every domain is exactly
    iMULT_b and CBF-1-cons for every domain is exactly iMULT_a (compared per operator)."""
    tables = all_tables(n)
    size = 1 << n
    psi = np.arange(size, dtype=np.int64)[None, :]
    doms = subset_masks(size)
    res = barcan_tables(tables, psi, n, members=doms)
    return {
        "BF-1-cons for all D <=> iMULT_b": bool(
            (res["BF-1"].all(axis=(1, 2)) == cond.holds_tables("iMULT_b", tables, n)).all()
        ),
        "CBF-1-cons for all D <=> iMULT_a": bool(
            (res["CBF-1"].all(axis=(1, 2)) == cond.holds_tables("iMULT_a", tables, n)).all()
        ),
    }


@dataclass
class VarCountermodel:
    form: str
    operator: Operator
    size: int
    delta: tuple
    psi: tuple
    candidates: int

    def recheck(self) -> bool:
        """True when the stored witness still violates the form."""
        n = self.operator.n
        res = barcan_tables(
            self.operator.array[None, :], np.asarray([self.psi], dtype=np.int64), n,
            delta=np.asarray([self.delta], dtype=np.int64),
        )  # fmt: skip
        return not bool(res[self.form][0, 0, 0])


VAR_CONDITIONS = ("iMULT", "CNTR", "IDEM")


def var_countermodel(form: str = "BF-1", n: int = 2, max_size: int = 2, budget: int = 10**7) -> VarCountermodel | None:
    """First varying-domain counterexample to ``form`` with ``f`` satisfying iMULT, CNTR and IDEM.

    Order: operator enumeration, sort size, delta, psi.  ``budget`` caps the
    number of (delta, psi) pairs examined.
    """
    tables = all_tables(n)
    keep = np.ones(len(tables), dtype=bool)
    for c in VAR_CONDITIONS:
        keep &= cond.holds_tables(c, tables, n)
    candidates = tables[keep]
    seen = 0
    for t in candidates:
        for size in range(1, max_size + 1):
            terms, _ = term_tables(n, size)
            if seen + len(terms) ** 2 > budget:
                return None
            seen += len(terms) ** 2
            res = barcan_tables(t[None, :], terms, n, delta=terms)[form][0]
            bad = np.argwhere(~res.T)
            if bad.size:
                d, p = (int(v) for v in bad[0])
                return VarCountermodel(
                    form, Operator(n, t.tolist()), size,
                    tuple(int(v) for v in terms[d]), tuple(int(v) for v in terms[p]), seen,
                )  # fmt: skip
    return None
