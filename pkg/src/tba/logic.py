"""Evaluation of formulas and sequents over models, and the experiments built on it.

Evaluation is vectorized: a formula is evaluated against a stack of ``K``
closure tables and ``V`` valuations at once, producing a ``(K, V)`` array of
masks.  A single model is the case ``K = V = 1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import conditions as cond
from .errors import CapacityError, DomainError, EvaluationError, TBAError
from .formula import (
    BOT, TOP, Binary, Const, Formula, Pred, Quant, Sequent, Unary, Var,
    free_vars, parse, parse_sequent, to_text, uses_predicates,
)  # fmt: skip
from .lattice import Element, Family, as_element, mask_of
from .operators import (
    ENUMERATION_MAX_POINTS, Operator, TransformKind, all_tables, sample_tables, transform_tables,
)  # fmt: skip
from .topology import OperatorRole, closure_tables_of_relations, derive_tables

K_FP, K_FPC, K_D, K_DC, K_C = TransformKind.FP, TransformKind.FPC, TransformKind.D, TransformKind.DC, TransformKind.C

NEGATIONS = {"CNot": "-", "NegC": "negC", "NegI": "negI", "NegIC": "negIC", "NegCI": "negCI"}


def negation_token(neg) -> str:
    """Accept either the AST-style name (``NegC``) or the grammar token (``negC``)."""
    if neg in NEGATIONS:
        return NEGATIONS[neg]
    if neg in NEGATIONS.values():
        return neg
    raise ValueError(f"unknown negation {neg!r}; expected one of {sorted(NEGATIONS)}")


# -- models ---------------------------------------------------------------------------


@dataclass
class Model:
    """One primitive operator plus everything a formula may refer to.

    ``primitive`` says whether ``op`` is read as a closure or an interior;
    in the latter case the closure is its dual.  Individual-sort data
    (``individuals``, ``predicates``, ``individual_domains`` and list-valued
    domain functions) is only needed by formulas using ``Forall``/``Exists``.
    """

    n: int
    op: Operator
    primitive: str = "closure"
    valuation: dict = field(default_factory=dict)
    domains: dict = field(default_factory=dict)
    domain_functions: dict = field(default_factory=dict)
    individuals: int = 0
    predicates: dict = field(default_factory=dict)
    individual_domains: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.primitive not in ("closure", "interior"):
            raise DomainError(f"primitive must be 'closure' or 'interior', got {self.primitive!r}")
        if self.op.n != self.n:
            raise DomainError(f"operator over {self.op.n} points in a {self.n}-point model")
        self.valuation = {k: as_element(self.n, v) for k, v in self.valuation.items()}
        self.domains = {
            k: v if isinstance(v, Family) else Family(self.n, v) for k, v in self.domains.items()
        }
        fns = {}
        for k, v in self.domain_functions.items():
            if isinstance(v, Operator):
                if v.n != self.n:
                    raise DomainError(f"domain function {k!r} is over {v.n} points")
                fns[k] = v
            else:
                fns[k] = tuple(as_element(self.n, e) for e in v)
        self.domain_functions = fns
        self.predicates = {k: tuple(as_element(self.n, e) for e in v) for k, v in self.predicates.items()}
        if not self.individuals and self.predicates:
            self.individuals = len(next(iter(self.predicates.values())))
        for k, v in self.predicates.items():
            if len(v) != self.individuals:
                raise DomainError(f"predicate {k!r} needs {self.individuals} entries, got {len(v)}")
        for k, v in fns.items():
            if isinstance(v, tuple) and len(v) != self.individuals:
                raise DomainError(f"domain function {k!r} needs {self.individuals} entries")
        self.individual_domains = {k: tuple(sorted(set(v))) for k, v in self.individual_domains.items()}
        for k, v in self.individual_domains.items():
            if any(not 0 <= i < self.individuals for i in v):
                raise DomainError(f"individual domain {k!r} mentions an unknown individual")

    @property
    def closure(self) -> Operator:
        return self.op if self.primitive == "closure" else self.op.d

    @property
    def interior(self) -> Operator:
        return self.closure.d

    def with_valuation(self, **values) -> Model:
        v = dict(self.valuation)
        v.update(values)
        return Model(
            self.n, self.op, self.primitive, v, self.domains, self.domain_functions,
            self.individuals, self.predicates, self.individual_domains,
        )  # fmt: skip


# -- vectorized evaluator -----------------------------------------------------------------


class _Stack:
    """Derived operator tables for a stack of closures, built on demand."""

    def __init__(self, ctables: np.ndarray, n: int):
        self.n = n
        self.full = mask_of(n)
        self.C = np.atleast_2d(np.asarray(ctables, dtype=np.int64))
        self.K = self.C.shape[0]
        self._cache: dict[str, np.ndarray] = {}

    def table(self, op: str) -> np.ndarray:
        if op not in self._cache:
            self._cache[op] = self._build(op)
        return self._cache[op]

    def _build(self, op: str) -> np.ndarray:
        n, C = self.n, self.C
        tr = lambda t, k: transform_tables(t, k, n)  # noqa: E731
        if op in ("dia", "cl"):
            return C
        if op in ("box", "int"):
            return tr(C, K_D)
        if op == "negC":
            return tr(C, K_DC)
        if op in ("negI", "ext"):
            return tr(C, K_C)
        if op == "negIC":
            return np.take_along_axis(self.table("box"), tr(C, K_DC), axis=1)
        if op == "negCI":
            return np.take_along_axis(C, tr(self.table("box"), K_DC), axis=1)
        if op == "cons":
            return tr(self.table("box"), K_FP)
        if op == "det":
            return tr(C, K_FP)
        if op == "undet":
            return tr(C, K_FPC)
        if op == "bdr":
            return derive_tables(C, OperatorRole.CLOSURE, OperatorRole.BORDER, n)
        if op == "frt":
            return derive_tables(C, OperatorRole.CLOSURE, OperatorRole.FRONTIER, n)
        if op == "bfp":
            return tr(self.table("bdr"), K_FP)
        raise EvaluationError(f"unknown operator {op!r}")

    def apply(self, op: str, x: np.ndarray) -> np.ndarray:
        t = self.table(op)
        xb = np.broadcast_to(x, (self.K, x.shape[1]))
        return np.take_along_axis(t, xb, axis=1)


class _Evaluator:
    def __init__(self, stack: _Stack, env: dict, model: Model | None):
        self.s = stack
        self.env = env
        self.ienv: dict[str, int] = {}
        self.model = model

    def _scalar(self, v: int) -> np.ndarray:
        return np.full((1, 1), v, dtype=np.int64)

    def ev(self, f: Formula) -> np.ndarray:
        s = self.s
        if isinstance(f, Var):
            if f.name not in self.env:
                raise EvaluationError(f"unbound variable {f.name!r}")
            return self.env[f.name]
        if isinstance(f, Const):
            return self._scalar(s.full if f.value else 0)
        if isinstance(f, Unary):
            x = self.ev(f.arg)
            if f.op == "-":
                return s.full ^ x
            return s.apply(f.op, x)
        if isinstance(f, Binary):
            a, b = self.ev(f.left), self.ev(f.right)
            op = f.op
            if op == "&":
                return a & b
            if op == "|":
                return a | b
            if op == "->":
                return (s.full ^ a) | b
            if op == "<->":
                return s.full ^ (a ^ b)
            if op == "\\":
                return a & (s.full ^ b)
            if op == "^":
                return a ^ b
            raise EvaluationError(f"unknown connective {op!r}")
        if isinstance(f, Pred):
            return self._pred(f)
        if isinstance(f, Quant):
            return self._quant_ind(f) if f.individual else self._quant_prop(f)
        raise TypeError(f"cannot evaluate {f!r}")

    def _need_model(self, what: str) -> Model:
        if self.model is None:
            raise EvaluationError(f"{what} needs a model carrying named data")
        return self.model

    def _pred(self, f: Pred) -> np.ndarray:
        m = self._need_model(f"predicate {f.name!r}")
        if f.name not in m.predicates:
            raise EvaluationError(f"unknown predicate {f.name!r}")
        if f.var not in self.ienv:
            raise EvaluationError(f"unbound individual variable {f.var!r}")
        return self._scalar(m.predicates[f.name][self.ienv[f.var]].bits)

    def _quant_prop(self, f: Quant) -> np.ndarray:
        s = self.s
        forall = f.kind == "forall"
        r = f.restriction
        acc = self._scalar(s.full if forall else 0)
        saved = self.env.get(f.var)
        members = None
        delta = None
        if r is not None and r.kind == "domain":
            m = self._need_model(f"domain {r.name!r}")
            if r.name not in m.domains:
                raise EvaluationError(f"unknown domain {r.name!r}")
            members = set(m.domains[r.name].masks)
        elif r is not None and r.kind == "delta":
            m = self._need_model(f"domain function {r.name!r}")
            delta = m.domain_functions.get(r.name)
            if not isinstance(delta, Operator):
                raise EvaluationError(f"unknown propositional domain function {r.name!r}")
        try:
            for x in range(1 << s.n):
                if members is not None and x not in members:
                    continue
                self.env[f.var] = self._scalar(x)
                v = self.ev(f.body)
                if delta is not None:
                    d = delta.table[x]
                    v = ((s.full ^ d) | v) if forall else (d & v)
                elif r is not None and r.kind in ("open", "closed"):
                    t = s.table("box" if r.kind == "open" else "dia")
                    inside = (t[:, x] == x)[:, None]
                    v = np.where(inside, v, s.full if forall else 0)
                acc = (acc & v) if forall else (acc | v)
        finally:
            if saved is None:
                self.env.pop(f.var, None)
            else:
                self.env[f.var] = saved
        return acc

    def _quant_ind(self, f: Quant) -> np.ndarray:
        s = self.s
        m = self._need_model("an individual quantifier")
        forall = f.kind == "forall"
        r = f.restriction
        members = range(m.individuals)
        delta = None
        if r is not None and r.kind == "domain":
            if r.name not in m.individual_domains:
                raise EvaluationError(f"unknown individual domain {r.name!r}")
            members = m.individual_domains[r.name]
        elif r is not None and r.kind == "delta":
            delta = m.domain_functions.get(r.name)
            if not isinstance(delta, tuple):
                raise EvaluationError(f"unknown individual domain function {r.name!r}")
        elif r is not None:
            raise EvaluationError(f"[{r.kind}] restricts propositional quantifiers only")
        acc = self._scalar(s.full if forall else 0)
        saved = self.ienv.get(f.var)
        try:
            for i in members:
                self.ienv[f.var] = i
                v = self.ev(f.body)
                if delta is not None:
                    d = delta[i].bits
                    v = ((s.full ^ d) | v) if forall else (d & v)
                acc = (acc & v) if forall else (acc | v)
        finally:
            if saved is None:
                self.ienv.pop(f.var, None)
            else:
                self.ienv[f.var] = saved
        return acc


def evaluate_stack(f: Formula, ctables: np.ndarray, n: int, env: dict, model: Model | None = None) -> np.ndarray:
    """Value of ``f`` for every closure table in ``ctables`` and every valuation column in ``env``.

    ``env`` maps variable names to arrays broadcastable to ``(K, V)``.
    The result has shape ``(K, V)`` (or broadcast-compatible smaller dims).
    """
    stack = _Stack(ctables, n)
    env = {k: np.atleast_2d(np.asarray(v, dtype=np.int64)) for k, v in env.items()}
    out = _Evaluator(stack, env, model).ev(f)
    return np.broadcast_to(out, (stack.K, out.shape[1]))


def sequent_stack(seq: Sequent, ctables: np.ndarray, n: int, env: dict, model: Model | None = None) -> np.ndarray:
    """Boolean ``(K, V)`` array: does the sequent hold per table and valuation."""
    full = mask_of(n)
    stack = _Stack(ctables, n)
    env = {k: np.atleast_2d(np.asarray(v, dtype=np.int64)) for k, v in env.items()}
    ev = _Evaluator(stack, env, model)
    prem = [ev.ev(p) for p in seq.premises]
    concl = [ev.ev(c) for c in seq.conclusions]
    if seq.mode == "local":
        lhs = np.full((1, 1), full, dtype=np.int64)
        for p in prem:
            lhs = lhs & p
        rhs = np.zeros((1, 1), dtype=np.int64)
        for c in concl:
            rhs = rhs | c
        ok = (lhs & (full ^ rhs)) == 0
    else:
        hyp = np.ones((1, 1), dtype=bool)
        for p in prem:
            hyp = hyp & (p == full)
        goal = np.zeros((1, 1), dtype=bool)
        for c in concl:
            goal = goal | (c == full)
        ok = ~hyp | goal
    width = max([1] + [x.shape[1] for x in prem + concl])
    return np.broadcast_to(ok, (stack.K, width))


def _as_formula(f) -> Formula:
    if isinstance(f, str):
        out = parse(f)
        if isinstance(out, Sequent):
            raise TBAError("expected a formula, got a sequent")
        return out
    return f


def _as_sequent(s) -> Sequent:
    if isinstance(s, str):
        return parse_sequent(s)
    if isinstance(s, Sequent):
        return s
    return Sequent((), (s,), "local")


def _model_env(f, m: Model) -> dict:
    env = {}
    for name in free_vars(f):
        if name not in m.valuation:
            raise EvaluationError(f"variable {name!r} has no value in the model")
        env[name] = m.valuation[name].bits
    return env


def eval_formula(f, m: Model) -> Element:
    """Value of a formula in a model, as an Element."""
    f = _as_formula(f)
    out = evaluate_stack(f, m.closure.array[None, :], m.n, _model_env(f, m), m)
    return Element(m.n, int(out[0, 0]))


# the public name used throughout; shadows the builtin only inside this module's namespace
eval = eval_formula  # noqa: A001


def consequence(s, m: Model) -> bool:
    """Local: meet of premises below join of conclusions.  Global: top premises force a top conclusion."""
    s = _as_sequent(s)
    return bool(sequent_stack(s, m.closure.array[None, :], m.n, _model_env(s, m), m)[0, 0])


def valid(f, m: Model) -> bool:
    f = _as_formula(f)
    return eval_formula(f, m).bits == mask_of(m.n)


# -- valuation grids ---------------------------------------------------------------------


def valuation_grid(names, n: int) -> dict[str, np.ndarray]:
    """Every assignment of elements to ``names``; the first name varies fastest."""
    m = 1 << n
    k = len(names)
    if m**k > 1 << 22:
        raise CapacityError(f"{m}^{k} valuations is too many to enumerate")
    idx = np.arange(m**k, dtype=np.int64)
    return {name: ((idx // m**i) % m)[None, :] for i, name in enumerate(names)}


def _grid_width(n: int, k: int) -> int:
    return (1 << n) ** k


def holds_everywhere(goal, ctables: np.ndarray, n: int) -> np.ndarray:
    """Per table: does ``goal`` (formula or sequent) hold under every valuation of its free variables."""
    s = _as_sequent(goal)
    names = free_vars(s)
    ok = sequent_stack(s, ctables, n, valuation_grid(names, n))
    return ok.all(axis=1)


# -- assumptions and countermodel search ------------------------------------------------------


@dataclass(frozen=True)
class Assumption:
    """A condition imposed on one of the operators derived from the model's closure."""

    role: OperatorRole
    condition: cond.ConditionId

    def __str__(self):
        return f"{self.role.value}:{self.condition.value}"


def parse_assumptions(specs) -> list[Assumption]:
    """``["C:ADDI,NORM", "I:MULT"]`` -> assumptions; a missing role prefix means C."""
    out = []
    for spec in specs or ():
        spec = spec.strip()
        if not spec:
            continue
        role_text, _, names = spec.rpartition(":")
        role = OperatorRole.parse(role_text or "C")
        for name in names.split(","):
            name = name.strip()
            if not name:
                continue
            try:
                out.append(Assumption(role, cond.condition_id(name)))
            except (KeyError, ValueError) as exc:
                raise TBAError(f"unknown condition {name!r}") from exc
    return out


def assumptions_mask(assumptions, ctables: np.ndarray, n: int) -> np.ndarray:
    keep = np.ones(len(ctables), dtype=bool)
    for a in assumptions:
        t = derive_tables(ctables, OperatorRole.CLOSURE, a.role, n)
        keep &= cond.holds_tables(a.condition, t, n)
    return keep


STRATEGIES = ("exhaustive", "relational", "random")


@dataclass
class SearchResult:
    """``status`` is ``valid`` (exhaustive, no countermodel), ``countermodel`` or ``inconclusive``."""

    status: str
    model: Model | None
    strategy: str
    max_points: int
    candidates: int

    @property
    def found(self) -> bool:
        return self.status == "countermodel"


def default_strategy(max_points: int) -> str:
    return "exhaustive" if max_points <= ENUMERATION_MAX_POINTS else "relational"


def _candidates(strategy: str, n: int, samples: int, seed) -> np.ndarray:
    if strategy == "exhaustive":
        return all_tables(n)
    if strategy == "relational":
        rel = np.arange(1 << (n * n), dtype=np.int64)
        rows = np.stack([(rel >> (n * w)) & mask_of(n) for w in range(n)], axis=-1)
        return closure_tables_of_relations(rows, n)
    return sample_tables(n, samples, seed)


def search(goal, max_points: int = 2, assumptions=(), strategy: str | None = None,
           samples: int = 10_000, seed=0, chunk: int = 4096) -> SearchResult:  # fmt: skip
    """Scan models in a fixed order and return the first one falsifying ``goal``.

    Order: point count ascending, then operator enumeration order, then
    valuations in ascending grid order.  Assumptions constrain the closure
    (``C:``) or any operator derived from it (``I:``, ``E:``, ...).
    """
    s = _as_sequent(goal)
    if uses_predicates(s):
        raise TBAError("search does not enumerate predicates or individual quantifiers")
    if isinstance(assumptions, (list, tuple)) and assumptions and isinstance(assumptions[0], str):
        assumptions = parse_assumptions(assumptions)
    strategy = strategy or default_strategy(max_points)
    if strategy not in STRATEGIES:
        raise TBAError(f"unknown strategy {strategy!r}")
    if max_points < 1:
        raise TBAError("max_points must be at least 1")
    limit = {"exhaustive": ENUMERATION_MAX_POINTS, "relational": 4}.get(strategy, 16)
    if max_points > limit:
        raise CapacityError(f"strategy {strategy!r} supports at most {limit} points, got {max_points}")
    if strategy == "random" and samples < 1:
        raise TBAError("samples must be positive")
    names = free_vars(s)
    total = 0
    for n in range(1, max_points + 1):
        tables = _candidates(strategy, n, samples, seed)
        tables = tables[assumptions_mask(assumptions, tables, n)]
        total += len(tables)
        grid = valuation_grid(names, n)
        for start in range(0, len(tables), chunk):
            block = tables[start : start + chunk]
            ok = sequent_stack(s, block, n, grid)
            bad = np.flatnonzero(~ok.ravel())
            if bad.size:
                k, v = divmod(int(bad[0]), ok.shape[1])
                valuation = {name: int(grid[name][0, v]) for name in names}
                model = Model(n, Operator.from_array(n, block[k]), "closure", valuation)
                return SearchResult("countermodel", model, strategy, max_points, total)
    status = "valid" if strategy == "exhaustive" else "inconclusive"
    return SearchResult(status, None, strategy, max_points, total)


# -- negation properties -------------------------------------------------------------------

# "~" stands for the negation under study; "=>" separates the two sequents of a meta-rule
_NEG_SCHEMAS = {
    "weakTND": "~b |- a | ~a",
    "weakECQ": "a & ~a |- ~b",
    "LNC": "|- ~(a & ~a)",
    "deMorgan1a": "~(a | b) |- ~a & ~b",
    "deMorgan1b": "~a & ~b |- ~(a | b)",
    "deMorgan2a": "~(a & b) |- ~a | ~b",
    "deMorgan2b": "~a | ~b |- ~(a & b)",
    "dblNeg_a": "a |- ~~a",
    "dblNeg_b": "~~a |- a",
    "weakDblNeg_a": "|- a => |- ~~a",
    "weakDblNeg_b": "|- ~~a => |- a",
    "contraposition1a": "a -> b |- ~b -> ~a",
    "contraposition1b": "~b -> ~a |- a -> b",
    "contraposition2a": "a -> ~b |- b -> ~a",
    "contraposition2b": "b -> ~a |- a -> ~b",
    "weakContraposition1a": "a |- b => ~b |- ~a",
    "weakContraposition1b": "~b |- ~a => a |- b",
    "weakContraposition2a": "a |- ~b => b |- ~a",
    "weakContraposition2b": "b |- ~a => a |- ~b",
    "disjSyllogism_a": "a | b |- ~a -> b",
    "disjSyllogism_b": "~a -> b |- a | b",
}

NEGATION_PROPERTIES = tuple(_NEG_SCHEMAS)


def negation_schema(prop: str, neg) -> tuple[Sequent, ...]:
    """The instantiated schema: one sequent, or (hypothesis, conclusion) for a meta-rule."""
    if prop not in _NEG_SCHEMAS:
        raise KeyError(f"unknown negation property {prop!r}")
    tok = negation_token(neg)
    text = _NEG_SCHEMAS[prop].replace("~", tok if tok == "-" else tok + " ")
    return tuple(parse_sequent(part.strip()) for part in text.split("=>"))


def negation_property_stack(prop: str, neg, ctables: np.ndarray, n: int, guards=()) -> np.ndarray:
    """Boolean ``(K, V)``: does the property hold per table and per valuation of ``a, b``.

    ``guards`` are extra premises added to every sequent of the schema.
    """
    grid = valuation_grid(["a", "b"], n)
    parts = negation_schema(prop, neg)
    parts = tuple(Sequent(tuple(guards) + p.premises, p.conclusions, p.mode) for p in parts)
    oks = [sequent_stack(p, ctables, n, grid) for p in parts]
    if len(oks) == 1:
        return oks[0]
    return ~oks[0] | oks[1]


@dataclass
class PropertyReport:
    prop: str
    negation: str
    holds: bool
    witness: dict | None


def negation_property(prop: str, neg, m: Model) -> PropertyReport:
    """Check a property for every valuation of its metavariables ``a, b``; report the first failure."""
    ok = negation_property_stack(prop, neg, m.closure.array[None, :], m.n)[0]
    bad = np.flatnonzero(~ok)
    witness = None
    if bad.size:
        grid = valuation_grid(["a", "b"], m.n)
        v = int(bad[0])
        witness = {name: list(Element(m.n, int(grid[name][0, v])).points) for name in ("a", "b")}
    return PropertyReport(prop, negation_token(neg), not bad.size, witness)


KURATOWSKI = ("ADDI", "EXPN", "NORM", "IDEM")


def _kuratowski_masks(n: int) -> dict[str, np.ndarray]:
    t = all_tables(n)
    return {c: cond.holds_tables(c, t, n) for c in KURATOWSKI}


def negation_property_map(n_max: int = 2) -> list[dict]:
    """For every property and negation: how many closures satisfy it, and which minimal
    subsets of the Kuratowski conditions suffice on every domain up to ``n_max`` points.

    The result is descriptive; nothing about it is asserted.
    """
    domains = range(1, n_max + 1)
    kmasks = {n: _kuratowski_masks(n) for n in domains}
    subsets = [s for r in range(len(KURATOWSKI) + 1) for s in itertools.combinations(KURATOWSKI, r)]
    rows = []
    for prop in NEGATION_PROPERTIES:
        for neg in NEGATIONS:
            holds = {n: negation_property_stack(prop, neg, all_tables(n), n).all(axis=1) for n in domains}
            sufficient = []
            for sub in subsets:
                if any(set(s) <= set(sub) for s in sufficient):
                    continue
                ok = True
                for n in domains:
                    sel = np.ones(len(holds[n]), dtype=bool)
                    for c in sub:
                        sel &= kmasks[n][c]
                    if not holds[n][sel].all():
                        ok = False
                        break
                if ok:
                    sufficient.append(sub)
            rows.append({
                "property": prop,
                "negation": neg,
                "holding": {n: int(holds[n].sum()) for n in domains},
                "operators": {n: len(holds[n]) for n in domains},
                "minimal_conditions": [list(s) for s in sufficient],
            })  # fmt: skip
    return rows


# -- recovery operators -------------------------------------------------------------------


def _per_element(ctables: np.ndarray, n: int):
    st = _Stack(ctables, n)
    return st, np.arange(1 << n, dtype=np.int64)[None, :], st.full


def recovery_tables(ctables: np.ndarray, n: int) -> dict[str, np.ndarray]:
    """Condition-free recovery facts per closure table (all elements at once)."""
    st, a, full = _per_element(ctables, n)
    t = st.table
    I, C = t("box"), st.C
    ncon, nint = t("negC"), t("negI")
    cons, det, undet = t("cons"), t("det"), t("undet")
    tr = lambda x, k: transform_tables(x, k, n)  # noqa: E731
    b_fp = tr(tr(C, K_FP), K_D)
    b_table = t("bdr")
    is_open, is_closed = I == a, C == a
    out = {
        "open A => A & negC A = F": (~is_open | ((a & ncon) == 0)).all(axis=1),
        "closed A => A | negI A = T": (~is_closed | ((a | nint) == full)).all(axis=1),
        "cons A & A & negC A = F": ((cons & a & ncon) == 0).all(axis=1),
        "det A <= A | negI A": ((det & ~(a | nint)) == 0).all(axis=1),
        "negI = (negC)^d": (nint == tr(ncon, K_D)).all(axis=1),
        "cons = (negC)^fpc": (cons == tr(ncon, K_FPC)).all(axis=1),
        "det = (negI)^fpc": (det == tr(nint, K_FPC)).all(axis=1),
        "undet = (negI)^fp": (undet == tr(nint, K_FP)).all(axis=1),
        "cons = B^c, B = (C^fp)^d": (cons == tr(b_fp, K_C)).all(axis=1),
        "det = B^d, B = (C^fp)^d": (det == tr(b_fp, K_D)).all(axis=1),
        "cons = B^c, B(A) = A & C(-A)": (cons == tr(b_table, K_C)).all(axis=1),
        "det = B^d, B(A) = A & C(-A)": (det == tr(b_table, K_D)).all(axis=1),
    }
    return out


# facts that hold for every operator, with no conditions
RECOVERY_UNIVERSAL = (
    "open A => A & negC A = F",
    "closed A => A | negI A = T",
    "cons A & A & negC A = F",
    "det A <= A | negI A",
    "negI = (negC)^d",
    "cons = (negC)^fpc",
    "det = (negI)^fpc",
    "undet = (negI)^fp",
    "cons = B^c, B = (C^fp)^d",
    "det = B^d, B = (C^fp)^d",
)


def eta_laws_tables(eta: np.ndarray, n: int) -> dict[str, np.ndarray]:
    """Generalized explosion laws for arbitrary operators ``eta`` (one bool per table)."""
    eta = np.atleast_2d(np.asarray(eta, dtype=np.int64))
    full = mask_of(n)
    a = np.arange(1 << n, dtype=np.int64)[None, :]
    fp = transform_tables(eta, K_FP, n)
    fpc = transform_tables(eta, K_FPC, n)
    return {
        "eta^fpc A & A & eta A = F": ((fpc & a & eta) == 0).all(axis=1),
        "eta^fpc A <= A | eta A": ((fpc & ~(a | eta)) == 0).all(axis=1),
        "eta^fp A | A | eta A = T": ((fp | a | eta) == full).all(axis=1),
    }


_CONTEXT_UNARY = ("-", "negC", "negI", "cons", "det", "box", "dia")
_CONTEXT_BINARY = ("&", "|", "->")


def random_context(rng: random.Random, depth: int = 3, hole: str = "a") -> Formula:
    """A random formula whose only variable is ``hole``."""
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([Var(hole), Var(hole), TOP, BOT])
    if rng.random() < 0.5:
        return Unary(rng.choice(_CONTEXT_UNARY), random_context(rng, depth - 1, hole))
    return Binary(rng.choice(_CONTEXT_BINARY), random_context(rng, depth - 1, hole), random_context(rng, depth - 1, hole))


def context_schema_tables(ctables: np.ndarray, n: int, pairs: int = 40, seed=0) -> tuple[np.ndarray, list]:
    """For sampled contexts G, D: whenever cons A & G(A) <= D(A) and A is open, G(A) <= D(A).

    Returns one bool per table and the sampled pairs.
    """
    rng = random.Random(seed)
    grid = {"a": np.arange(1 << n, dtype=np.int64)[None, :]}
    st = _Stack(ctables, n)
    ev = _Evaluator(st, grid, None)
    cons = ev.ev(Unary("cons", Var("a")))
    is_open = ev.ev(Unary("box", Var("a"))) == grid["a"]
    ok = np.ones(st.K, dtype=bool)
    sampled = []
    for _ in range(pairs):
        g, d = random_context(rng), random_context(rng)
        sampled.append((to_text(g), to_text(d)))
        gv, dv = ev.ev(g), ev.ev(d)
        guarded = (cons & gv & ~dv) == 0
        plain = (gv & ~dv) == 0
        ok &= (~(guarded & is_open) | plain).all(axis=1)
    return ok, sampled


def recovery_theorems(m: Model, eta_samples: int = 4096, seed=0) -> dict[str, bool]:
    """Recovery facts for the model's closure; the arbitrary-operator laws range over all
    operators when there are at most 2 points and over a seeded sample otherwise."""
    c = m.closure.array[None, :]
    out = {k: bool(v[0]) for k, v in recovery_tables(c, m.n).items()}
    etas = all_tables(m.n) if m.n <= ENUMERATION_MAX_POINTS else sample_tables(m.n, eta_samples, seed)
    out.update({k: bool(v.all()) for k, v in eta_laws_tables(etas, m.n).items()})
    ok, _ = context_schema_tables(c, m.n, seed=seed)
    out["cons A & G(A) <= D(A) and open A => G(A) <= D(A)"] = bool(ok[0])
    return out


BORDER_RECOVERY_PROPERTIES = (
    "contraposition1a", "contraposition1b", "contraposition2a", "contraposition2b",
    "deMorgan1a", "deMorgan1b", "deMorgan2a", "deMorgan2b", "dblNeg_a", "dblNeg_b",
)  # fmt: skip


def border_recovery_report(n: int = 2) -> list[dict]:
    """Guarding each metavariable by ``B^fp`` (B(A) = A & C(-A)): how many closures then
    satisfy each property, overall and among Kuratowski closures.  Descriptive only."""
    tables = all_tables(n)
    km = _kuratowski_masks(n)
    kur = np.logical_and.reduce([km[c] for c in KURATOWSKI])
    rows = []
    for prop in BORDER_RECOVERY_PROPERTIES:
        for neg in ("NegC", "NegI"):
            metas = [v for v in ("a", "b") if v in free_vars(negation_schema(prop, neg)[0])]
            guards = tuple(Unary("bfp", Var(v)) for v in metas)
            plain = negation_property_stack(prop, neg, tables, n).all(axis=1)
            guarded = negation_property_stack(prop, neg, tables, n, guards).all(axis=1)
            rows.append({
                "property": prop,
                "negation": neg,
                "plain": int(plain.sum()),
                "guarded": int(guarded.sum()),
                "plain_kuratowski": int(plain[kur].sum()),
                "guarded_kuratowski": int(guarded[kur].sum()),
                "kuratowski": int(kur.sum()),
                "operators": len(tables),
            })  # fmt: skip
    return rows


# -- consequence relations ---------------------------------------------------------------------


def local_global_separation(n: int = 2, goal: str = "p |- box p") -> dict:
    """Local consequence implies global on every table; find a table where global holds and local fails."""
    seq = parse_sequent(goal)
    glob = Sequent(seq.premises, seq.conclusions, "global")
    loc = Sequent(seq.premises, seq.conclusions, "local")
    tables = all_tables(n)
    lo = holds_everywhere(loc, tables, n)
    gl = holds_everywhere(glob, tables, n)
    sep = np.flatnonzero(gl & ~lo)
    witness = None
    if sep.size:
        k = int(sep[0])
        names = free_vars(loc)
        grid = valuation_grid(names, n)
        ok = sequent_stack(loc, tables[k : k + 1], n, grid)[0]
        v = int(np.flatnonzero(~ok)[0])
        witness = Model(n, Operator.from_array(n, tables[k]), "closure", {x: int(grid[x][0, v]) for x in names})
    return {
        "local implies global": bool((~lo | gl).all()),
        "separating tables": int(sep.size),
        "witness": witness,
    }


def deduction_bridge(n: int = 2, premise: str = "p", conclusion: str = "q", tables=None) -> bool:
    """Per table and valuation: ``A |- B`` holds iff ``A -> B`` evaluates to top."""
    tables = all_tables(n) if tables is None else tables
    a, b = parse(premise), parse(conclusion)
    names = free_vars(Sequent((a,), (b,)))
    grid = valuation_grid(names, n)
    lhs = sequent_stack(Sequent((a,), (b,), "local"), tables, n, grid)
    rhs = evaluate_stack(Binary("->", a, b), tables, n, grid) == mask_of(n)
    return bool((lhs == rhs).all())
