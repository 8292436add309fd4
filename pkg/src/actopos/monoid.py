"""Finite monoids as multiplication tables, plus the element-level
properties and closure operators the action-category theorems reduce to.

Elements are contiguous indices 0..n-1; the identity sits at an arbitrary
declared index.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations
from typing import Iterable

from .errors import AssocViolation, EmptySeed, IdentityViolation, RangeError

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Monoid:
    """Multiplication table with table[a][b] = a*b and a distinguished identity."""

    table: Table
    identity: int

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(len(self.table))


@dataclass(frozen=True)
class ElementClasses:
    idempotents: frozenset[int]
    right_absorbing: frozenset[int]
    left_absorbing: frozenset[int]
    zero: int | None


@dataclass(frozen=True)
class RightCongruence:
    """Partition of element indices, closed under right multiplication."""

    class_ids: tuple[int, ...]
    count: int

    def same(self, x: int, y: int) -> bool:
        return self.class_ids[x] == self.class_ids[y]

    def class_of(self, x: int) -> frozenset[int]:
        cid = self.class_ids[x]
        return frozenset(i for i, c in enumerate(self.class_ids) if c == cid)


def validate_monoid(raw_table: Iterable[Iterable[int]], identity: int) -> Monoid:
    """Check associativity, the identity law and index ranges; return the monoid.

    Raises RangeError, IdentityViolation or AssocViolation (first failure wins,
    scanning in index order).
    """
    table = tuple(tuple(row) for row in raw_table)
    n = len(table)
    if n == 0:
        raise RangeError("a monoid has an identity, so order must be >= 1")
    for row in table:
        if len(row) != n:
            raise RangeError(f"table is not square: row of length {len(row)} in order-{n} table")
        for v in row:
            if not (0 <= v < n):
                raise RangeError(f"entry {v} out of range [0, {n})")
    if not (0 <= identity < n):
        raise RangeError(f"identity index {identity} out of range [0, {n})")
    e = identity
    for a in range(n):
        if table[e][a] != a or table[a][e] != a:
            raise IdentityViolation(a)
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            row_ab = table[ab]
            row_a = table[a]
            row_b = table[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise AssocViolation(a, b, c)
    return Monoid(table, identity)


@cache
def element_classes(M: Monoid) -> ElementClasses:
    """Idempotents, absorbing elements and the zero, by direct scan."""
    n = M.order
    t = M.table
    idem = frozenset(a for a in range(n) if t[a][a] == a)
    right = frozenset(r for r in range(n) if all(t[r][m] == r for m in range(n)))
    left = frozenset(l for l in range(n) if all(t[m][l] == l for m in range(n)))
    both = right & left
    zero = next(iter(both)) if both else None
    return ElementClasses(idem, right, left, zero)


def opposite(M: Monoid) -> Monoid:
    """Transpose of the multiplication table; an involution."""
    n = M.order
    table = tuple(tuple(M.table[b][a] for b in range(n)) for a in range(n))
    return Monoid(table, M.identity)


def is_group(M: Monoid) -> bool:
    """Every element has a two-sided inverse."""
    e = M.identity
    t = M.table
    for a in M.elements():
        if not any(t[a][b] == e and t[b][a] == e for b in M.elements()):
            return False
    return True


def principal_right_ideal(M: Monoid, m: int) -> frozenset[int]:
    return frozenset(M.table[m][x] for x in M.elements())


def is_right_ore(M: Monoid) -> bool:
    """Every pair of principal right ideals intersects."""
    ideals = [principal_right_ideal(M, m) for m in M.elements()]
    return all(i1 & i2 for i1 in ideals for i2 in ideals)


def is_right_collapsible(M: Monoid) -> bool:
    """For every m1, m2 some m satisfies m1*m = m2*m."""
    t = M.table
    for m1 in M.elements():
        for m2 in M.elements():
            if not any(t[m1][m] == t[m2][m] for m in M.elements()):
                return False
    return True


def is_left_cancellative(M: Monoid) -> bool:
    """m*a = m*b implies a = b, i.e. every row is injective."""
    n = M.order
    return all(len(set(row)) == n for row in M.table)


def is_right_cancellative(M: Monoid) -> bool:
    """a*m = b*m implies a = b, i.e. every column is injective."""
    n = M.order
    return all(len({M.table[a][m] for a in range(n)}) == n for m in range(n))


def submonoid_closure(M: Monoid, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing the seed and the identity, closed under products."""
    seed = set(seed)
    if not seed:
        raise EmptySeed("submonoid closure needs a nonempty seed")
    closed = set(seed)
    closed.add(M.identity)
    work = list(closed)
    while work:
        x = work.pop()
        for y in tuple(closed):
            for p in (M.table[x][y], M.table[y][x]):
                if p not in closed:
                    closed.add(p)
                    work.append(p)
    return frozenset(closed)


def right_factorable_closure(M: Monoid, seed: Iterable[int]) -> frozenset[int]:
    """Least right-factorable subset containing the seed.

    Iterates S_{i+1} = {m : some t in <S_i> has t*m in <S_i>} until the
    sequence stabilises; for a finite monoid this happens within |M| steps.
    """
    cur = frozenset(seed)
    if not cur:
        raise EmptySeed("right-factorable closure needs a nonempty seed")
    while True:
        sub = submonoid_closure(M, cur)
        nxt = frozenset(
            m for m in M.elements() if any(M.table[t][m] in sub for t in sub)
        )
        if nxt == cur:
            return cur
        cur = nxt


def congruence_from_pairs(M: Monoid, pairs: Iterable[tuple[int, int]]) -> RightCongruence:
    """Least right congruence containing the given pairs.

    Worklist closure: merging x ~ y forces x*m ~ y*m for every m.
    """
    n = M.order
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = [(x, y) for x, y in pairs]
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for m in range(n):
            work.append((M.table[x][m], M.table[y][m]))
    roots: dict[int, int] = {}
    ids = []
    for x in range(n):
        r = find(x)
        if r not in roots:
            roots[r] = len(roots)
        ids.append(roots[r])
    return RightCongruence(tuple(ids), len(roots))


def minimal_rf_generating_set(M: Monoid) -> frozenset[int]:
    """Smallest S with right_factorable_closure(M, S) = M.

    Increasing-size subset search; ties broken lexicographically on the
    sorted index tuple.  Always exists for a finite monoid (S = M works).
    """
    n = M.order
    full = frozenset(range(n))
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            if right_factorable_closure(M, S) == full:
                return frozenset(S)
    raise AssertionError("unreachable: the whole monoid generates itself")
