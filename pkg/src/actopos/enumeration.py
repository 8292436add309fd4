"""Exhaustive generation of monoids and right M-sets up to isomorphism.

Both enumerators run a cell-by-cell depth-first search with associativity
forcing, then keep exactly the tables that equal their own canonical form,
so streams arrive sorted by canonical form with no dedup set.  Canonical
forms put the identity at index 0 (monoids) and minimise the flattened
table over carrier relabelings (numpy-vectorised for M-sets).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cache
from itertools import permutations
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import CapExceeded, RangeError
from .monoid import Monoid
from .mset import RightMSet

MONOID_ORDER_CAP = 5
MSET_SIZE_CAP = 6
CACHE_ENV = "ACTOPOS_CACHE_DIR"


@dataclass(frozen=True)
class CanonicalForm:
    table_bytes: bytes
    automorphisms: int


# ---------------------------------------------------------------------------
# canonical forms

@cache
def _perm_arrays(k: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(permutations(range(k))), dtype=np.intp)
    inverses = np.argsort(perms, axis=1)
    return perms, inverses


def mset_canonical_key(action: tuple[tuple[int, ...], ...]) -> bytes:
    """Lexicographically least flattened action table over all carrier
    relabelings."""
    k = len(action)
    if k <= 1:
        return np.asarray(action, dtype=np.uint8).tobytes()
    perms, inverses = _perm_arrays(k)
    a = np.asarray(action, dtype=np.intp)
    rows = a[inverses]  # (p, k, n): row i of perm t is the old row inv[t][i]
    relabeled = perms[np.arange(len(perms))[:, None, None], rows]
    flat = relabeled.astype(np.uint8).reshape(len(perms), -1)
    return min(row.tobytes() for row in flat)


def _identity_fixing_perms(n: int, identity: int) -> Iterator[tuple[int, ...]]:
    others = [i for i in range(n) if i != identity]
    for image in permutations(range(1, n)):
        perm = [0] * n
        perm[identity] = 0
        for src, dst in zip(others, image):
            perm[src] = dst
        yield tuple(perm)


def _relabel_table(table: tuple[tuple[int, ...], ...], perm: tuple[int, ...]) -> tuple[int, ...]:
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(perm[table[inv[a]][inv[b]]] for a in range(n) for b in range(n))


def canonical_form(table: tuple[tuple[int, ...], ...], identity: int) -> CanonicalForm:
    """Canonical monoid table with identity relabeled to index 0.

    Minimises over all permutations sending the identity to 0; the
    automorphism count is the stabiliser size of the canonical table.
    """
    n = len(table)
    best: tuple[int, ...] | None = None
    hits = 0
    for perm in _identity_fixing_perms(n, identity):
        flat = _relabel_table(table, perm)
        if best is None or flat < best:
            best = flat
            hits = 1
        elif flat == best:
            hits += 1
    assert best is not None
    return CanonicalForm(bytes(best), hits)


# ---------------------------------------------------------------------------
# monoid enumeration

def labeled_monoid_tables(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All associative tables on [n] with identity fixed at index 0,
    in lexicographic order of the flattened table."""
    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        table[0][i] = i
        table[i][0] = i
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]

    def consistent() -> bool:
        for a in range(n):
            row_a = table[a]
            for b in range(n):
                p = row_a[b]
                if p is None:
                    continue
                row_b = table[b]
                row_p = table[p]
                for c in range(n):
                    q = row_b[c]
                    if q is None:
                        continue
                    left = row_p[c]
                    right = row_a[q]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if i == len(cells):
            yield tuple(tuple(row) for row in table)  # type: ignore[arg-type]
            return
        a, b = cells[i]
        for v in range(n):
            table[a][b] = v
            if consistent():
                yield from rec(i + 1)
        table[a][b] = None

    yield from rec(0)


def enumerate_monoids(n: int, cap: int = MONOID_ORDER_CAP) -> list[Monoid]:
    """One monoid per isomorphism class of order n, sorted by canonical form."""
    if not 1 <= n <= cap:
        raise CapExceeded(f"monoid order {n}", cap)
    return list(_enumerate_monoids_cached(n))


@cache
def _enumerate_monoids_cached(n: int) -> tuple[Monoid, ...]:
    cached = _cache_read(n)
    if cached is not None:
        return cached
    out = []
    for table in labeled_monoid_tables(n):
        flat = bytes(v for row in table for v in row)
        if canonical_form(table, 0).table_bytes == flat:
            out.append(Monoid(table, 0))
    result = tuple(out)
    _cache_write(n, result)
    return result


def _cache_path(n: int) -> Path | None:
    base = os.environ.get(CACHE_ENV)
    if not base:
        return None
    return Path(base) / f"monoids_{n}.bin"


def _cache_read(n: int) -> tuple[Monoid, ...] | None:
    path = _cache_path(n)
    if path is None or not path.is_file():
        return None
    blob = path.read_bytes()
    record = 1 + n * n
    if len(blob) % record != 0:
        return None
    out = []
    for off in range(0, len(blob), record):
        if blob[off] != n:
            return None
        cells = blob[off + 1 : off + record]
        table = tuple(
            tuple(cells[a * n + b] for b in range(n)) for a in range(n)
        )
        out.append(Monoid(table, 0))
    return tuple(out)


def _cache_write(n: int, monoids: tuple[Monoid, ...]) -> None:
    path = _cache_path(n)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    blob = bytearray()
    for M in monoids:
        blob.append(n)
        blob.extend(v for row in M.table for v in row)
    path.write_bytes(bytes(blob))


def enumerate_monoids_up_to(max_order: int, cap: int = MONOID_ORDER_CAP) -> list[Monoid]:
    out: list[Monoid] = []
    for n in range(1, max_order + 1):
        out.extend(enumerate_monoids(n, cap))
    return out


# ---------------------------------------------------------------------------
# M-set enumeration

def labeled_actions(M: Monoid, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All valid right-action tables of M on [k], in lexicographic order.

    DFS over the non-identity cells with full associativity forcing: a cell
    whose value is implied by assigned cells is filled rather than branched.
    """
    n = M.order
    e = M.identity
    T = M.table
    if k == 0:
        yield ()
        return
    act: list[list[int | None]] = [[None] * n for _ in range(k)]
    for x in range(k):
        act[x][e] = x
    cells = [(x, m) for x in range(k) for m in range(n) if m != e]

    def propagate(trail: list[tuple[int, int]]) -> bool:
        changed = True
        while changed:
            changed = False
            for x in range(k):
                row_x = act[x]
                for m1 in range(n):
                    y = row_x[m1]
                    if y is None:
                        continue
                    row_y = act[y]
                    prod_row = T[m1]
                    for m2 in range(n):
                        z1 = row_y[m2]
                        z2 = row_x[prod_row[m2]]
                        if z1 is None:
                            if z2 is not None:
                                row_y[m2] = z2
                                trail.append((y, m2))
                                changed = True
                        elif z2 is None:
                            row_x[prod_row[m2]] = z1
                            trail.append((x, prod_row[m2]))
                            changed = True
                        elif z1 != z2:
                            return False
        return True

    def rec(i: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        while i < len(cells) and act[cells[i][0]][cells[i][1]] is not None:
            i += 1
        if i == len(cells):
            yield tuple(tuple(row) for row in act)  # type: ignore[arg-type]
            return
        x, m = cells[i]
        for v in range(k):
            act[x][m] = v
            trail = [(x, m)]
            if propagate(trail):
                yield from rec(i + 1)
            for cx, cm in trail:
                act[cx][cm] = None

    yield from rec(0)


def enumerate_msets(M: Monoid, k: int, cap: int = MSET_SIZE_CAP) -> list[RightMSet]:
    """One right M-set per isomorphism class of size k, sorted by canonical
    form.  k = 0 yields exactly the empty M-set."""
    if not 0 <= k <= cap:
        raise CapExceeded(f"M-set size {k}", cap)
    return list(_enumerate_msets_cached(M, k))


@cache
def _enumerate_msets_cached(M: Monoid, k: int) -> tuple[RightMSet, ...]:
    out = []
    for action in labeled_actions(M, k):
        flat = bytes(v for row in action for v in row)
        if mset_canonical_key(action) == flat:
            out.append(RightMSet(M, action))
    return tuple(out)


def enumerate_msets_up_to(M: Monoid, max_size: int, cap: int = MSET_SIZE_CAP) -> list[RightMSet]:
    out: list[RightMSet] = []
    for k in range(0, max_size + 1):
        out.extend(enumerate_msets(M, k, cap))
    return out
