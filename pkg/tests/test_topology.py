import itertools

import numpy as np
import pytest

import oracles as O
from tba import Operator, OperatorRole, derive, finite_topologies
from tba import topology as T
from tba.operators import all_tables

ROLES = list(OperatorRole)


def test_topology_counts_match_brute_force():
    # independent count from the open-set definition
    for n in (1, 2, 3):
        assert len(finite_topologies(n)) == len(O.topologies(n))
    assert [len(finite_topologies(n)) for n in (1, 2, 3, 4)] == [1, 4, 29, 355]


def test_topology_closures_match_oracle():
    for n in (1, 2, 3):
        ref = sorted(O.op_to_table(O.closure_of_topology(t, n), n) for t in O.topologies(n))
        assert sorted(list(c.table) for c in finite_topologies(n)) == ref


def test_two_enumerations_agree():
    for n in (1, 2, 3):
        assert T.topologies_by_families(n) == finite_topologies(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip_all_roles(n):
    for c in finite_topologies(n):
        for s, t in itertools.permutations(ROLES, 2):
            src = derive(c, OperatorRole.CLOSURE, s)
            assert derive(derive(src, s, t), t, s) == src
            assert derive(src, s, OperatorRole.CLOSURE) == c


def test_axiom_bundles_hold_on_topologies():
    for n in (1, 2, 3):
        for c in finite_topologies(n):
            for role, op in T.derive_all(c).items():
                assert T.axiom_bundle_check(op, role).holds, (role, c)


def test_kuratowski_axioms_characterize_topologies():
    t = all_tables(2)
    ax = T.axiom_tables(t, "C", 2)
    ok = np.logical_and.reduce(list(ax.values()))
    got = sorted(tuple(r) for r in t[ok].tolist())
    assert got == sorted(c.table for c in finite_topologies(2))


def test_derivations_match_definitions():
    n = 2
    for c in finite_topologies(n):
        oc = O.op_from_table(c.table, n)
        u = O.universe(n)
        i = O.dual(oc, n)
        b = {a: a & oc[u - a] for a in oc}
        f = {a: oc[a] & oc[u - a] for a in oc}
        e = {a: u - oc[a] for a in oc}
        for role, ref in ((OperatorRole.INTERIOR, i), (OperatorRole.BORDER, b),
                          (OperatorRole.FRONTIER, f), (OperatorRole.EXTERIOR, e)):
            assert list(derive(c, "C", role).table) == O.op_to_table(ref, n)


def test_relation_closure_matches_oracle():
    for n in (1, 2, 3):
        rels = T.all_relations(n) if n < 3 else T.all_relations(n)[::37]
        for r in rels:
            ref = O.op_to_table(O.closure_of_edges(set(r.edges), n), n)
            assert list(T.closure_of_relation(r).table) == ref


def test_relation_bridge():
    for r in T.all_relations(2):
        assert all(T.bridge_properties(r).values())
        assert T.relation_of_operator(T.closure_of_relation(r)) == r
    for f in map(lambda row: Operator(2, row), all_tables(2).tolist()):
        assert all(T.bridge_properties(f).values())
    assert T.validate_iaddi_fast_path()


def test_kuratowski_monoid():
    sizes = []
    for n in (1, 2, 3):
        for c in finite_topologies(n):
            res = T.monoid_closure([c, Operator.complement(n)])
            assert res.saturated
            assert len(res) == O.kuratowski_monoid_size(O.op_from_table(c.table, n), n)
            sizes.append(len(res))
    assert max(sizes) <= 14


def test_fixed_point_bullets_and_classification():
    for n in (1, 2, 3):
        for c in finite_topologies(n):
            assert all(T.fixed_point_bullets(c).values())
    c = Operator(2, [0, 1, 3, 3])  # Sierpinski space: {1} is dense and not closed
    flags = T.classify_element(c, [1])
    assert flags["dense"] and not flags["closed"]
    assert T.classify_element(c, [0])["closed"]


def test_border_identities():
    assert T.identity_checks_all(2) == {
        "A & C(-A) = (C^fp)^d(A) for every C": False,
        "A & C(-A) = (C^fp)^d(A) iff EXPN C": True,
    }
    for c in finite_topologies(3):
        assert all(T.frontier_identities(c).values())
        assert T.border_by_fp(c) == derive(c, "C", "B")


def test_b4_subset_map_is_monotone():
    table = T.b4_subset_map(2)
    assert table["B1+B2+B3"]
    for k, v in table.items():
        if v:
            assert all(table[key] for key in table if set(k.split("+")) <= set(key.split("+")) and k != "none")


def test_orbit_and_residue():
    c = finite_topologies(3)[5]
    res = T.orbit([c, Operator.complement(3)], [0])
    assert res.saturated and len(res.family) <= 14
    chain, periodic = T.residue_chain(derive(c, "C", "B"), [0, 1])
    assert periodic and chain[0] == 3


def test_role_parsing():
    assert OperatorRole.parse("b") is OperatorRole.BORDER
    assert OperatorRole.parse("FRONTIER") is OperatorRole.FRONTIER
    with pytest.raises(ValueError):
        OperatorRole.parse("Q")
