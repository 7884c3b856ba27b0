"""The full theorem list as runnable checks, shared by ``tba report paper-suite`` and the tests."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import conditions as cond
from . import logic, quantifiers, topology
from .operators import (
    CUBE_EDGES, Operator, TransformKind, all_tables, cube_check_tables, sample_tables, transform_tables,
)  # fmt: skip
from .serialization import dumps, model_from_json, model_to_json
from .topology import OperatorRole

SAMPLE_POINTS = 3
SAMPLE_COUNT = 65_536
SAMPLE_SEED = 20240101


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    report_only: bool = False
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = " (report)" if self.report_only else ""
        return f"criterion {self.number:2d}  {status}  {self.title}{tag}"


def _sample(seed_offset: int = 0) -> np.ndarray:
    return sample_tables(SAMPLE_POINTS, SAMPLE_COUNT, SAMPLE_SEED + seed_offset)


# 1 -------------------------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    details = {}
    ok = True
    for label, n, tables in ((1, 1, all_tables(1)), (2, 2, all_tables(2)), ("3-sample", 3, _sample())):
        for kind in TransformKind:
            twice = transform_tables(transform_tables(tables, kind, n), kind, n)
            bad = int((twice != tables).any(axis=1).sum())
            details[f"n={label} {kind.value}"] = f"{len(tables) - bad}/{len(tables)}"
            ok &= bad == 0
    return CriterionResult(1, "transformations are involutions", ok, details)


def criterion_2() -> CriterionResult:
    details = {}
    ok = True
    for label, n, tables in ((1, 1, all_tables(1)), (2, 2, all_tables(2)), ("3-sample", 3, _sample())):
        good = int(cube_check_tables(tables, n).sum())
        details[f"n={label}"] = f"{good}/{len(tables)} operators pass"
        ok &= good == len(tables)
    details["edges"] = len(CUBE_EDGES)
    return CriterionResult(2, "cube of opposition commutes", ok, details)


MONO_CHAIN = ("MONO", "ADDI_b", "MULT_a", "iADDI_b", "iMULT_a")
ANTI_CHAIN = ("ANTI", "nADDI_b", "nMULT_a", "inADDI_b", "inMULT_a")


def criterion_3() -> CriterionResult:
    details = {}
    ok = topology.validate_iaddi_fast_path(256)
    details["fast path agrees with naive oracle on operators"] = 256 if ok else "MISMATCH"
    sample = _sample()
    for chain in (MONO_CHAIN, ANTI_CHAIN):
        for n in (1, 2):
            base = cond.holds_all(chain[0], n)
            for c in chain[1:]:
                mism = int((cond.holds_all(c, n) != base).sum())
                details[f"n={n} {chain[0]} vs {c}"] = mism
                ok &= mism == 0
        base = cond.holds_tables(chain[0], sample, SAMPLE_POINTS)
        for c in chain[1:]:
            mism = int((cond.holds_tables(c, sample, SAMPLE_POINTS) != base).sum())
            details[f"n=3-sample {chain[0]} vs {c}"] = mism
            ok &= mism == 0
    return CriterionResult(3, "monotonicity and antitonicity equivalence chains", ok, details)


def criterion_4() -> CriterionResult:
    details = {}
    ok = True
    sample = _sample()
    for kind, pairs in cond.DUAL_PAIRS.items():
        moved = transform_tables(sample, kind, SAMPLE_POINTS)
        for a, b in pairs:
            mism = 0
            for n in (1, 2):
                mism += int((~cond.dual_pair_scan(a, b, kind, n)).sum())
            mism += int(
                (cond.holds_tables(a, sample, SAMPLE_POINTS) != cond.holds_tables(b, moved, SAMPLE_POINTS)).sum()
            )
            if mism:
                details[f"{kind.value}: {a} / {b}"] = mism
            ok &= mism == 0
    details["pairings checked"] = sum(len(p) for p in cond.DUAL_PAIRS.values())
    return CriterionResult(4, "dual, complement and dual-complement condition pairings", ok, details)


def criterion_5() -> CriterionResult:
    details = {}
    ok = True
    sample = _sample()
    fp = transform_tables(sample, TransformKind.FP, SAMPLE_POINTS)
    fpc = transform_tables(sample, TransformKind.FPC, SAMPLE_POINTS)
    for c, (on_fp, on_fpc) in cond.FP_TRIPLES.items():
        mism = sum(int((~cond.fp_triple_scan(c, n)).sum()) for n in (1, 2))
        base = cond.holds_tables(c, sample, SAMPLE_POINTS)
        mism += int(
            ((base != cond.holds_tables(on_fp, fp, SAMPLE_POINTS))
             | (base != cond.holds_tables(on_fpc, fpc, SAMPLE_POINTS))).sum()
        )  # fmt: skip
        details[f"{c} / fp {on_fp} / fpc {on_fpc}"] = mism
        ok &= mism == 0
    return CriterionResult(5, "fixed-point transform triples", ok, details)


def criterion_6() -> CriterionResult:
    details = {}
    ok = True
    for n in (1, 2):
        for label, arr in cond.relativization_bridge_scan(n).items():
            bad = int((~arr).sum())
            details[f"n={n} {label}"] = bad
            ok &= bad == 0
    w = cond.find_separating("ADDIr_b", "ADDI_b", 2)
    found = w is not None and cond.check("ADDIr_b", w).holds and not cond.check("ADDI_b", w).holds
    details["ADDIr_b but not ADDI_b"] = list(w.table) if w is not None else None
    return CriterionResult(6, "relativization bridges", ok and found, details)


def _rebuilt_from_atoms(tables: np.ndarray, n: int) -> np.ndarray:
    """``C[R[f]]`` for every table: join of ``f``'s atom images over the input's points, bottom at bottom."""
    elems = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(tables)
    for j in range(n):
        has = ((elems >> j) & 1).astype(bool)
        out |= np.where(has, tables[:, [1 << j]], 0)
    return out


def criterion_7() -> CriterionResult:
    details = {}
    tables = all_tables(2)
    rebuilt = np.all(_rebuilt_from_atoms(tables, 2) == tables, axis=1)
    # the rebuild above is the operator C[R[f]]; cross-check it with the relation API
    api = np.array([topology.closure_of_relation(topology.relation_of_operator(Operator(2, t))).table == tuple(t)
                    for t in tables.tolist()])  # fmt: skip
    ok = bool(np.array_equal(api, rebuilt))
    fast_ok = topology.validate_iaddi_fast_path(256)
    fast = cond.iaddi_fast_tables(tables, 2)
    a = int((fast != rebuilt).sum())
    naive = np.array([cond.naive_infinitary("iADDI", Operator(2, t)) for t in tables.tolist()])
    b = int((naive != rebuilt).sum())
    details["(a) fast path vs f = C[R[f]], 256 operators"] = a
    details["(b) naive oracle vs f = C[R[f]], 256 operators"] = b
    ok &= fast_ok and a == 0 and b == 0
    for n in (1, 2, 3):
        rels = topology.all_relations(n)
        rows = np.array([r.rows for r in rels], dtype=np.int64)
        c = topology.closure_tables_of_relations(rows, n)
        refl = np.array([r.is_reflexive() for r in rels])
        trans = np.array([r.is_transitive() for r in rels])
        m1 = int((cond.holds_tables("EXPN", c, n) != refl).sum())
        m2 = int((cond.holds_tables("IDEM_a", c, n) != trans).sum())
        details[f"n={n} relations={len(rels)} EXPN/reflexive, IDEM_a/transitive mismatches"] = [m1, m2]
        ok &= m1 == 0 and m2 == 0
    return CriterionResult(7, "relation bridge", ok, details)


def _topology_stack(n: int) -> np.ndarray:
    return np.array([c.table for c in topology.finite_topologies(n)], dtype=np.int64)


def criterion_8() -> CriterionResult:
    details = {}
    ok = True
    roles = list(OperatorRole)
    for n in (1, 2, 3, 4):
        c = _topology_stack(n)
        bad_axioms = 0
        bad_roundtrip = 0
        derived = {r: topology.derive_tables(c, OperatorRole.CLOSURE, r, n) for r in roles}
        for r in roles:
            ax = topology.axiom_tables(derived[r], r, n)
            bad_axioms += int((~np.logical_and.reduce(list(ax.values()))).sum())
            for s in roles:
                again = topology.derive_tables(derived[r], r, s, n)
                bad_roundtrip += int((again != derived[s]).any(axis=1).sum())
        details[f"n={n} topologies={len(c)}"] = {"axiom failures": bad_axioms, "round-trip failures": bad_roundtrip}
        ok &= bad_axioms == 0 and bad_roundtrip == 0
    counts = [len(topology.finite_topologies(n)) for n in (1, 2, 3, 4)]
    details["topology counts"] = counts
    ok &= counts == [len(topology.topologies_by_families(n)) for n in (1, 2, 3, 4)]
    return CriterionResult(8, "topology round trips and axiom bundles", ok, details)


def criterion_9() -> CriterionResult:
    details = {}
    ok = True
    for n in (1, 2, 3, 4):
        fails: dict[str, int] = {}
        for c in topology.finite_topologies(n):
            for label, v in topology.fixed_point_bullets(c).items():
                if not v:
                    fails[label] = fails.get(label, 0) + 1
        details[f"n={n}"] = fails or "all hold"
        ok &= not fails
    return CriterionResult(9, "fixed-point classifications", ok, details)


def criterion_10() -> CriterionResult:
    details = {}
    ok = True
    max_monoid = max_orbit = max_odd = 0
    chains = periodic = 0
    for n in (1, 2, 3, 4):
        neg = Operator.complement(n)
        for c in topology.finite_topologies(n):
            res = topology.monoid_closure([c, neg], cap=64)
            max_monoid = max(max_monoid, len(res))
            ok &= res.saturated and len(res) <= 14
            f = topology.derive(c, OperatorRole.CLOSURE, OperatorRole.FRONTIER)
            b = topology.derive(c, OperatorRole.CLOSURE, OperatorRole.BORDER)
            odd, sat = topology.odd_compositions(c)
            max_odd = max(max_odd, len(odd))
            ok &= sat and len(odd) <= 7
            for a in range(1 << n):
                o = topology.orbit([f, neg], a, cap=64)
                max_orbit = max(max_orbit, len(o.family))
                ok &= o.saturated and len(o.family) <= 6
                _, done = topology.residue_chain(b, a, cap=64)
                chains += 1
                periodic += done
    details["max |monoid{C,-}|"] = max_monoid
    details["max |orbit{F,-}|"] = max_orbit
    details["max odd-complement compositions"] = max_odd
    border = topology.border_monoid_report(4, cap=64)
    details["border monoid (report)"] = {
        "models": border["models"], "max size": border["max_size"],
        "non-saturating": len(border["non_saturating"]),
    }  # fmt: skip
    details["border residue chains (report)"] = {"chains": chains, "became periodic": periodic,
                                                  "non-saturating": chains - periodic}  # fmt: skip
    return CriterionResult(10, "composition bounds", ok, details)


def criterion_11() -> CriterionResult:
    details = {}
    ok = True
    for label, n, tables in ((1, 1, all_tables(1)), (2, 2, all_tables(2)), ("3-sample", 3, _sample())):
        rec = logic.recovery_tables(tables, n)
        for k in logic.RECOVERY_UNIVERSAL:
            bad = int((~rec[k]).sum())
            ok &= bad == 0
            if bad:
                details[f"n={label} {k}"] = bad
        for k, v in logic.eta_laws_tables(tables, n).items():
            bad = int((~v).sum())
            ok &= bad == 0
            if bad:
                details[f"n={label} {k}"] = bad
        if n <= 2:
            ctx, _ = logic.context_schema_tables(tables, n, pairs=40, seed=SAMPLE_SEED)
            ok &= bool(ctx.all())
            expn = cond.holds_tables("EXPN", tables, n)
            for k in ("cons = B^c, B(A) = A & C(-A)", "det = B^d, B(A) = A & C(-A)"):
                details[f"n={n} {k} (report)"] = {
                    "holding": int(rec[k].sum()), "of": len(tables),
                    "exactly the EXPN operators": bool(np.array_equal(rec[k], expn)),
                }  # fmt: skip
    details["checked"] = list(logic.RECOVERY_UNIVERSAL) + ["eta laws", "context schema"]
    return CriterionResult(11, "negations and recovery operators, condition-free", ok, details)


def _reverifies(model, seq) -> bool:
    text = dumps(model_to_json(model))
    again = model_from_json(json.loads(text))
    return not logic.consequence(seq, again)


def criterion_12() -> CriterionResult:
    details = {}
    ok = True
    goals = (
        ("ECQ for negC", "p, negC p |- F", ()),
        ("TND for negI under Kuratowski closure", "|- p | negI p", ("C:ADDI,EXPN,NORM,IDEM",)),
        ("TND for negI under interior axioms", "|- p | negI p", ("I:MULT,CNTR,DNRM,IDEM",)),
    )
    for label, goal, assume in goals:
        res = logic.search(goal, max_points=2, assumptions=list(assume))
        good = res.found and _reverifies(res.model, goal)
        details[label] = model_to_json(res.model) if res.found else res.status
        ok &= good
    sep = logic.local_global_separation(2, "p |- box p")
    w = sep["witness"]
    good = sep["local implies global"] and w is not None and _reverifies(w, "p |- box p")
    if w is not None:
        tables = w.closure.array[None, :]
        good &= bool(logic.holds_everywhere(logic.parse_sequent("p |-g box p"), tables, 2)[0])
        details["local/global separation witness"] = model_to_json(w)
    ok &= good
    return CriterionResult(12, "non-theorems have countermodels", ok, details)


def criterion_13() -> CriterionResult:
    details = {}
    ok = True
    for n in (1, 2):
        for size in (1, 2, 3, 4):
            laws = quantifiers.quantifier_laws(n, size)
            bad = [k for k, v in laws.items() if not v["holds"]]
            ok &= not bad
            if bad:
                details[f"n={n} size={size}"] = bad
    for n in (1, 2):
        for m in (1, 2, 3, 4):
            d = quantifiers.drinker_check(n, m)
            ok &= d["holds"] and d["exhaustive"]
        ok &= quantifiers.complement_witness_check(n)
    scan = quantifiers.barcan_scan(2)
    ok &= all(scan.values())
    details["Barcan scan"] = "all hold" if all(scan.values()) else {k: v for k, v in scan.items() if not v}
    explicit = quantifiers.explicit_cons_equivalence(2)
    ok &= all(explicit.values())
    details.update(explicit)
    for form in ("BF-1", "CBF-1"):
        w = quantifiers.var_countermodel(form, 2, 2, budget=10**7)
        good = w is not None and w.recheck() and all(cond.check(c, w.operator).holds for c in quantifiers.VAR_CONDITIONS)
        details[f"{form}-var countermodel"] = (
            {"operator": list(w.operator.table), "sort size": w.size, "delta": list(w.delta), "psi": list(w.psi),
             "pairs examined": w.candidates} if w else None
        )  # fmt: skip
        ok &= good
    return CriterionResult(13, "quantifier laws and Barcan formulas", ok, details)


def criterion_14() -> CriterionResult:
    rows = quantifiers.open_complement_probe(2)
    return CriterionResult(14, "restricted complement-witness probe", bool(rows), {"rows": rows}, report_only=True)


CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
    criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13, criterion_14,
)  # fmt: skip


def run_criterion(k: int) -> CriterionResult:
    start = time.perf_counter()
    res = CRITERIA[k - 1]()
    res.seconds = time.perf_counter() - start
    return res


def run_suite(numbers=None) -> list[CriterionResult]:
    return [run_criterion(k) for k in (numbers or range(1, len(CRITERIA) + 1))]
