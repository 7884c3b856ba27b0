import pytest
from hypothesis import given
from hypothesis import strategies as st

from tba import DomainError, Element, Family, PointDomain, big_join, big_meet
from tba import lattice as L

N = 4
masks = st.integers(0, (1 << N) - 1)


def el(m):
    return Element(N, m)


@given(masks, masks, masks)
def test_boolean_algebra_laws(a, b, c):
    a, b, c = el(a), el(b), el(c)
    assert a & (b | c) == (a & b) | (a & c)
    assert ~(a & b) == ~a | ~b
    assert ~~a == a
    assert (a & ~a) == L.bottom(N) and (a | ~a) == L.top(N)
    assert L.impl(a, b) == ~a | b
    assert L.iff(a, b) == ~(a ^ b)
    assert L.diff(a, b) == a & ~b
    assert L.leq(a, b) == ((a | b) == b)


@given(masks, masks, masks)
def test_relativized_order(a, b, u):
    a, b, u = el(a), el(b), el(u)
    inside = all(p in b for p in a.points if p in u)
    outside = all(p in b for p in a.points if p not in u)
    assert L.rel_leq(a, b, u, "inside") == inside
    assert L.rel_leq(a, b, u, "outside") == outside
    assert L.rel_eq(a, b, u) == (L.rel_leq(a, b, u) and L.rel_leq(b, a, u))


def test_element_construction():
    assert L.as_element(3, [0, 2]).bits == 5
    assert L.as_element(3, 6).points == (1, 2)
    with pytest.raises(DomainError):
        L.as_element(3, [3])
    with pytest.raises(DomainError):
        Element(2, 4)
    with pytest.raises(DomainError):
        L.as_element(2, True)
    with pytest.raises(DomainError):
        Element(2, 1) & Element(3, 1)
    with pytest.raises(DomainError):
        PointDomain(0)


def test_domain():
    d = PointDomain(3)
    assert d.size == 8
    assert len(list(d.elements())) == 8
    assert d.singleton(1).bits == 2
    assert len(d.powerset()) == 8


def test_family_and_big_operations():
    s = Family(3, [[0], [0, 1], 4])
    assert len(s) == 3 and Element(3, 4) in s
    assert big_join(s).bits == 7
    assert big_meet(s).bits == 0
    # empty family: sup is bottom, inf is top
    assert big_join(Family(3)).bits == 0
    assert big_meet(Family(3)).bits == 7


def test_closure_properties_of_families():
    chain = Family(2, [0, 1, 3])
    assert L.meet_closed(chain) and L.join_closed(chain)
    assert not L.join_closed(Family(2, [1, 2]))
    assert L.infimum_closed(chain)
    assert not L.infimum_closed(Family(2, [1]))  # the empty meet (top) is missing
    assert L.infimum_closed(Family(2, [1]), nonempty=True)


def test_atoms():
    assert L.is_atom(Element(3, 2))
    assert not L.is_atom(Element(3, 3)) and not L.is_atom(Element(3, 0))
