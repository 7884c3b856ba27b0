"""Boolean algebra of subsets of a finite point domain.

Elements are bitmasks: point ``j`` is a member iff bit ``j`` is set.  The
public API works with :class:`Element` and :class:`Family` values; the
exhaustive scans elsewhere in the package work directly on the integer masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Iterator

from .errors import DomainError

N_MAX = 16


def mask_of(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class PointDomain:
    """The points ``0 .. n-1`` over which elements are sets."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= N_MAX:
            raise DomainError(f"point count must be in 1..{N_MAX}, got {self.n!r}")

    @property
    def mask(self) -> int:
        return mask_of(self.n)

    @property
    def size(self) -> int:
        """Number of elements (subsets), i.e. ``2**n``."""
        return 1 << self.n

    def top(self) -> Element:
        return Element(self.n, self.mask)

    def bottom(self) -> Element:
        return Element(self.n, 0)

    def element(self, value) -> Element:
        return as_element(self.n, value)

    def singleton(self, j: int) -> Element:
        return Element(self.n, 1 << j)

    def elements(self) -> Iterator[Element]:
        for bits in range(self.size):
            yield Element(self.n, bits)

    def powerset(self) -> Family:
        return Family(self.n, range(self.size))


@dataclass(frozen=True)
class Element:
    """A set of points, stored as a bitmask of width ``n``."""

    n: int
    bits: int

    def __post_init__(self):
        if not 1 <= self.n <= N_MAX:
            raise DomainError(f"point count must be in 1..{N_MAX}, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"bitmask {self.bits:#x} does not fit {self.n} points")

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if self.bits >> j & 1)

    def __contains__(self, point: int) -> bool:
        return bool(self.bits >> point & 1)

    def __repr__(self):
        return f"Element({list(self.points)}, n={self.n})"

    def _other(self, other: Element) -> int:
        if not isinstance(other, Element):
            return NotImplemented
        if other.n != self.n:
            raise DomainError(f"cannot combine elements over {self.n} and {other.n} points")
        return other.bits

    def __and__(self, other):
        return Element(self.n, self.bits & self._other(other))

    def __or__(self, other):
        return Element(self.n, self.bits | self._other(other))

    def __xor__(self, other):
        return Element(self.n, self.bits ^ self._other(other))

    def __sub__(self, other):
        return Element(self.n, self.bits & ~self._other(other))

    def __invert__(self):
        return Element(self.n, ~self.bits & mask_of(self.n))

    def __le__(self, other):
        return self.bits & ~self._other(other) == 0

    def __ge__(self, other):
        return self._other(other) & ~self.bits == 0


def as_element(n: int, value) -> Element:
    """Accept an Element, an integer bitmask, or an iterable of point indices."""
    if isinstance(value, Element):
        if value.n != n:
            raise DomainError(f"element over {value.n} points used in a {n}-point domain")
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not elements")
    if isinstance(value, int):
        return Element(n, value)
    bits = 0
    for j in value:
        if not isinstance(j, int) or not 0 <= j < n:
            raise DomainError(f"point {j!r} outside the {n}-point domain")
        bits |= 1 << j
    return Element(n, bits)


def _same(a: Element, b: Element) -> None:
    if a.n != b.n:
        raise DomainError(f"domain mismatch: {a.n} vs {b.n} points")


def top(n: int) -> Element:
    return Element(n, mask_of(n))


def bottom(n: int) -> Element:
    return Element(n, 0)


def meet(a: Element, b: Element) -> Element:
    return a & b


def join(a: Element, b: Element) -> Element:
    return a | b


def compl(a: Element) -> Element:
    return ~a


def impl(a: Element, b: Element) -> Element:
    _same(a, b)
    return Element(a.n, (~a.bits | b.bits) & mask_of(a.n))


def diff(a: Element, b: Element) -> Element:
    return a - b


def symdiff(a: Element, b: Element) -> Element:
    return a ^ b


def iff(a: Element, b: Element) -> Element:
    _same(a, b)
    return Element(a.n, ~(a.bits ^ b.bits) & mask_of(a.n))


def leq(a: Element, b: Element) -> bool:
    return a <= b


def eq(a: Element, b: Element) -> bool:
    _same(a, b)
    return a.bits == b.bits


def _relativizer(u: Element, side: str) -> int:
    if side == "inside":
        return u.bits
    if side == "outside":
        return ~u.bits & mask_of(u.n)
    raise ValueError(f"side must be 'inside' or 'outside', got {side!r}")


def rel_eq(a: Element, b: Element, u: Element, side: str = "inside") -> bool:
    """Agreement of ``a`` and ``b`` on the points inside (or outside) ``u``."""
    _same(a, b)
    _same(a, u)
    return (a.bits ^ b.bits) & _relativizer(u, side) == 0


def rel_leq(a: Element, b: Element, u: Element, side: str = "inside") -> bool:
    """``a <= b`` restricted to the points inside (or outside) ``u``."""
    _same(a, b)
    _same(a, u)
    return a.bits & ~b.bits & _relativizer(u, side) == 0


class Family:
    """A finite set of elements over one domain, kept as a sorted tuple of masks."""

    __slots__ = ("n", "masks")

    def __init__(self, n: int, members: Iterable = ()):
        PointDomain(n)
        masks = set()
        for m in members:
            masks.add(as_element(n, m).bits)
        self.n = n
        self.masks = tuple(sorted(masks))

    def __iter__(self) -> Iterator[Element]:
        return (Element(self.n, m) for m in self.masks)

    def __len__(self):
        return len(self.masks)

    def __contains__(self, item) -> bool:
        if isinstance(item, Element):
            return item.n == self.n and item.bits in self._set
        return item in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.masks)

    def __eq__(self, other):
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        inner = ", ".join(str(list(e.points)) for e in self)
        return f"Family({{{inner}}}, n={self.n})"


def big_meet_masks(masks: Iterable[int], n: int) -> int:
    return reduce(lambda x, y: x & y, masks, mask_of(n))


def big_join_masks(masks: Iterable[int]) -> int:
    return reduce(lambda x, y: x | y, masks, 0)


def big_meet(s: Family) -> Element:
    """Infimum; the empty family has infimum top."""
    return Element(s.n, big_meet_masks(s.masks, s.n))


def big_join(s: Family) -> Element:
    """Supremum; the empty family has supremum bottom."""
    return Element(s.n, big_join_masks(s.masks))


def meet_closed(s: Family) -> bool:
    members = s._set
    return all(x & y in members for x in s.masks for y in s.masks)


def join_closed(s: Family) -> bool:
    members = s._set
    return all(x | y in members for x in s.masks for y in s.masks)


def _span(seed: set[int], masks: tuple[int, ...], op: Callable[[int, int], int]) -> set[int]:
    # every value that is the op-fold of some subfamily (seed holds the empty-fold value, if any)
    span = set(seed) | set(masks)
    frontier = set(span)
    while frontier:
        new = {op(x, m) for x in frontier for m in masks} - span
        span |= new
        frontier = new
    return span


def infimum_closed(s: Family, nonempty: bool = False) -> bool:
    """Every subfamily's infimum (including the empty one's, top) lies in ``s``."""
    seed = set() if nonempty else {mask_of(s.n)}
    return _span(seed, s.masks, lambda x, y: x & y) <= s._set


def supremum_closed(s: Family, nonempty: bool = False) -> bool:
    seed = set() if nonempty else {0}
    return _span(seed, s.masks, lambda x, y: x | y) <= s._set


def is_atom(a: Element) -> bool:
    """Non-bottom and, for every P, below P or below its complement."""
    if a.bits == 0:
        return False
    full = mask_of(a.n)
    return all(a.bits & ~p == 0 or a.bits & p == 0 for p in range(full + 1))


def atom(p: Element) -> Element | None:
    """The least-index singleton below ``p``; None for bottom."""
    if p.bits == 0:
        return None
    return Element(p.n, p.bits & -p.bits)


def image(f, s: Family) -> Family:
    """``{f(x) : x in s}`` for an operator ``f``."""
    if f.n != s.n:
        raise DomainError(f"operator over {f.n} points applied to a family over {s.n}")
    return Family(s.n, (f.table[m] for m in s.masks))


def range_of(f) -> Family:
    return Family(f.n, f.table)
