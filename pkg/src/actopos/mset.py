"""Finite right and left M-sets, their morphisms, finite limits and
colimits, decomposition, and the fixed-point / component functors.

A right M-set stores action[x][m] = x.m; a left M-set stores
action[m][x] = m.x.  Left-set computations delegate to right-set
computations over the opposite monoid, so there is one code path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cache
from typing import Iterable, Iterator

from .errors import (
    CapExceeded,
    EndpointMismatch,
    MonoidMismatch,
    NotSubMSet,
    ValidationError,
)
from .monoid import Monoid, opposite

ActionTable = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class RightMSet:
    monoid: Monoid
    action: ActionTable  # action[x][m] = x . m
    label: str | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.action)

    def act(self, x: int, m: int) -> int:
        return self.action[x][m]

    def elements(self) -> range:
        return range(len(self.action))


@dataclass(frozen=True)
class LeftMSet:
    monoid: Monoid
    action: ActionTable  # action[m][x] = m . x
    label: str | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.action[0]) if self.action else 0

    def act(self, m: int, x: int) -> int:
        return self.action[m][x]


@dataclass(frozen=True)
class BiSet:
    """Carrier with a left M-action and a right N-action satisfying
    (m.b).n = m.(b.n)."""

    left_monoid: Monoid
    right_monoid: Monoid
    left_action: ActionTable  # left_action[m][b] = m . b
    right_action: ActionTable  # right_action[b][n] = b . n

    @property
    def size(self) -> int:
        return len(self.right_action)


@dataclass(frozen=True)
class MSetMorphism:
    source: RightMSet
    target: RightMSet
    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]


@dataclass(frozen=True)
class Partition:
    """Class ids over a carrier, contiguous from 0."""

    class_ids: tuple[int, ...]
    count: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for x, c in enumerate(self.class_ids):
            out[c].append(x)
        return out


# ---------------------------------------------------------------------------
# validation and conversions

def validate_right_mset(M: Monoid, action: Iterable[Iterable[int]], label: str | None = None) -> RightMSet:
    """Check the unit and associativity laws of a right action."""
    act = tuple(tuple(row) for row in action)
    k = len(act)
    n = M.order
    for row in act:
        if len(row) != n:
            raise ValidationError(f"action row has length {len(row)}, expected {n}")
        for v in row:
            if not (0 <= v < k):
                raise ValidationError(f"action value {v} out of range [0, {k})")
    e = M.identity
    for x in range(k):
        if act[x][e] != x:
            raise ValidationError(f"unit law fails at element {x}")
    for x in range(k):
        for m in range(n):
            xm = act[x][m]
            for m2 in range(n):
                if act[xm][m2] != act[x][M.table[m][m2]]:
                    raise ValidationError(
                        f"action associativity fails at x={x} m={m} m'={m2}"
                    )
    return RightMSet(M, act, label)


def left_to_right(B: LeftMSet) -> RightMSet:
    """View a left M-set as a right M^op-set."""
    n = B.monoid.order
    k = len(B.action[0]) if B.action else 0
    act = tuple(tuple(B.action[m][x] for m in range(n)) for x in range(k))
    return RightMSet(opposite(B.monoid), act, B.label)


def right_to_left(X: RightMSet) -> LeftMSet:
    """View a right M^op-set as a left M-set."""
    n = X.monoid.order
    act = tuple(tuple(X.action[x][m] for x in range(X.size)) for m in range(n))
    return LeftMSet(opposite(X.monoid), act, X.label)


def validate_left_mset(M: Monoid, action: Iterable[Iterable[int]], label: str | None = None) -> LeftMSet:
    """Validate a left action by delegating to the opposite right action."""
    act = tuple(tuple(row) for row in action)
    if len(act) != M.order:
        raise ValidationError(f"left action needs {M.order} rows, got {len(act)}")
    B = LeftMSet(M, act, label)
    validate_right_mset(opposite(M), left_to_right(B).action)
    return B


def validate_biset(
    left_monoid: Monoid,
    right_monoid: Monoid,
    left_action: Iterable[Iterable[int]],
    right_action: Iterable[Iterable[int]],
) -> BiSet:
    la = tuple(tuple(row) for row in left_action)
    ra = tuple(tuple(row) for row in right_action)
    validate_left_mset(left_monoid, la)
    validate_right_mset(right_monoid, ra)
    k = len(ra)
    for m in range(left_monoid.order):
        for b in range(k):
            for n in range(right_monoid.order):
                if ra[la[m][b]][n] != la[m][ra[b][n]]:
                    raise ValidationError(
                        f"bi-action compatibility fails at m={m} b={b} n={n}"
                    )
    return BiSet(left_monoid, right_monoid, la, ra)


# ---------------------------------------------------------------------------
# basic constructions

def trivial_action(M: Monoid, k: int, label: str | None = None) -> RightMSet:
    """The set [k] with every monoid element acting as the identity."""
    n = M.order
    return RightMSet(M, tuple((x,) * n for x in range(k)), label)


@cache
def regular(M: Monoid) -> RightMSet:
    """M acting on itself by right multiplication."""
    return RightMSet(M, M.table, "regular")


def left_regular(M: Monoid) -> LeftMSet:
    """M acting on itself by left multiplication."""
    return LeftMSet(M, M.table, "left-regular")


def terminal_left(M: Monoid) -> LeftMSet:
    return LeftMSet(M, tuple((0,) for _ in range(M.order)), "terminal")


def identity_morphism(X: RightMSet) -> MSetMorphism:
    return MSetMorphism(X, X, tuple(range(X.size)))


def compose(g: MSetMorphism, f: MSetMorphism) -> MSetMorphism:
    """g after f."""
    if f.target != g.source:
        raise EndpointMismatch("compose: target of f is not source of g")
    return MSetMorphism(f.source, g.target, tuple(g.map[v] for v in f.map))


def is_equivariant(f: MSetMorphism) -> bool:
    X, Y = f.source, f.target
    if X.monoid != Y.monoid or len(f.map) != X.size:
        return False
    if any(not (0 <= v < Y.size) for v in f.map):
        return False
    for x in X.elements():
        for m in range(X.monoid.order):
            if f.map[X.act(x, m)] != Y.act(f.map[x], m):
                return False
    return True


# ---------------------------------------------------------------------------
# fixed points, components, schemes

def fixed_points(X: RightMSet) -> frozenset[int]:
    """Elements fixed by every monoid element; the global sections of X."""
    n = X.monoid.order
    return frozenset(
        x for x in X.elements() if all(X.act(x, m) == x for m in range(n))
    )


def left_fixed_points(B: LeftMSet) -> frozenset[int]:
    return fixed_points(left_to_right(B))


def connected_components(X: RightMSet) -> Partition:
    """Classes of the equivalence generated by x ~ x.m, via union-find."""
    k = X.size
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    n = X.monoid.order
    for x in range(k):
        for m in range(n):
            rx, ry = find(x), find(X.act(x, m))
            if rx != ry:
                parent[ry] = rx
    roots: dict[int, int] = {}
    ids = []
    for x in range(k):
        r = find(x)
        if r not in roots:
            roots[r] = len(roots)
        ids.append(roots[r])
    return Partition(tuple(ids), len(roots))


def left_connected_components(B: LeftMSet) -> Partition:
    return connected_components(left_to_right(B))


def is_indecomposable(X: RightMSet) -> bool:
    return connected_components(X).count == 1


def decompose(X: RightMSet) -> list[RightMSet]:
    """Restriction of the action to each connected component, in class order."""
    part = connected_components(X)
    out = []
    for cls in part.classes():
        sub, _ = sub_mset(X, cls)
        out.append(sub)
    return out


def scheme_distance(X: RightMSet, a: int, b: int) -> int | None:
    """Minimal n such that a and b are connected by a scheme of length n.

    One step relates u and v when some c and s, t give u = c.s and v = c.t.
    Returns None when a and b lie in different components; 0 iff a = b.
    """
    k = X.size
    if not (0 <= a < k and 0 <= b < k):
        raise IndexError(f"elements {a}, {b} out of range [0, {k})")
    if a == b:
        return 0
    images = [frozenset(X.action[c]) for c in range(k)]
    neighbours: list[set[int]] = [set() for _ in range(k)]
    for c in range(k):
        img = images[c]
        for u in img:
            neighbours[u].update(img)
    seen = {a}
    frontier = deque([(a, 0)])
    while frontier:
        u, d = frontier.popleft()
        for v in neighbours[u]:
            if v == b:
                return d + 1
            if v not in seen:
                seen.add(v)
                frontier.append((v, d + 1))
    return None


# ---------------------------------------------------------------------------
# limits and colimits (computed on underlying sets)

def coproduct(X: RightMSet, Y: RightMSet) -> tuple[RightMSet, MSetMorphism, MSetMorphism]:
    """Disjoint union, X block first; returns the two injections."""
    if X.monoid != Y.monoid:
        raise MonoidMismatch("coproduct over different monoids")
    kx = X.size
    act = X.action + tuple(tuple(v + kx for v in row) for row in Y.action)
    Z = RightMSet(X.monoid, act)
    in1 = MSetMorphism(X, Z, tuple(range(kx)))
    in2 = MSetMorphism(Y, Z, tuple(range(kx, kx + Y.size)))
    return Z, in1, in2


def left_coproduct(A: LeftMSet, B: LeftMSet) -> LeftMSet:
    if A.monoid != B.monoid:
        raise MonoidMismatch("coproduct over different monoids")
    Z, _, _ = coproduct(left_to_right(A), left_to_right(B))
    return right_to_left(Z)


def product_index(Y_size: int, x: int, y: int) -> int:
    return x * Y_size + y


def product(X: RightMSet, Y: RightMSet) -> tuple[RightMSet, MSetMorphism, MSetMorphism]:
    """Cartesian product with the diagonal action; returns the projections."""
    if X.monoid != Y.monoid:
        raise MonoidMismatch("product over different monoids")
    n = X.monoid.order
    ky = Y.size
    act = []
    pr1 = []
    pr2 = []
    for x in X.elements():
        for y in Y.elements():
            act.append(tuple(X.act(x, m) * ky + Y.act(y, m) for m in range(n)))
            pr1.append(x)
            pr2.append(y)
    Z = RightMSet(X.monoid, tuple(act))
    return Z, MSetMorphism(Z, X, tuple(pr1)), MSetMorphism(Z, Y, tuple(pr2))


def power_mset(X: RightMSet, k: int) -> RightMSet:
    """k-fold product of X with the diagonal action.

    Element index encodes the tuple (x_0, ..., x_{k-1}) in base |X|,
    x_0 most significant.
    """
    if k == 0:
        return trivial_action(X.monoid, 1)
    Z = X
    for _ in range(k - 1):
        Z, _, _ = product(Z, X)
    return Z


def equalizer(f: MSetMorphism, g: MSetMorphism) -> tuple[RightMSet, MSetMorphism]:
    """Carrier {x : f(x) = g(x)} with the restricted action, plus inclusion."""
    if f.source != g.source or f.target != g.target:
        raise EndpointMismatch("equalizer of non-parallel morphisms")
    X = f.source
    elems = [x for x in X.elements() if f.map[x] == g.map[x]]
    sub, incl = sub_mset(X, elems)
    return sub, incl


def pullback(
    f: MSetMorphism, g: MSetMorphism
) -> tuple[RightMSet, MSetMorphism, MSetMorphism]:
    """Pullback of f : X -> Z against g : Y -> Z, with its projections."""
    if f.target != g.target:
        raise EndpointMismatch("pullback needs a common target")
    X, Y = f.source, g.source
    n = X.monoid.order
    pairs = [(x, y) for x in X.elements() for y in Y.elements() if f.map[x] == g.map[y]]
    index = {p: i for i, p in enumerate(pairs)}
    act = tuple(
        tuple(index[(X.act(x, m), Y.act(y, m))] for m in range(n)) for x, y in pairs
    )
    P = RightMSet(X.monoid, act)
    pr1 = MSetMorphism(P, X, tuple(x for x, _ in pairs))
    pr2 = MSetMorphism(P, Y, tuple(y for _, y in pairs))
    return P, pr1, pr2


def close_partition(X: RightMSet, class_ids: Iterable[int]) -> Partition:
    """Least action-compatible coarsening of the given partition."""
    ids = list(class_ids)
    k = X.size
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    groups: dict[int, int] = {}
    work = []
    for x in range(k):
        c = ids[x]
        if c in groups:
            work.append((groups[c], x))
        else:
            groups[c] = x
    n = X.monoid.order
    while work:
        x, y = work.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for m in range(n):
            work.append((X.act(x, m), X.act(y, m)))
    roots: dict[int, int] = {}
    out = []
    for x in range(k):
        r = find(x)
        if r not in roots:
            roots[r] = len(roots)
        out.append(roots[r])
    return Partition(tuple(out), len(roots))


def quotient(X: RightMSet, classes: Partition) -> tuple[RightMSet, MSetMorphism]:
    """Quotient by the least action-compatible coarsening of the partition."""
    part = close_partition(X, classes.class_ids)
    reps = [None] * part.count
    for x in X.elements():
        c = part.class_ids[x]
        if reps[c] is None:
            reps[c] = x
    n = X.monoid.order
    act = tuple(
        tuple(part.class_ids[X.act(rep, m)] for m in range(n)) for rep in reps
    )
    Q = RightMSet(X.monoid, act)
    proj = MSetMorphism(X, Q, part.class_ids)
    return Q, proj


def sub_mset(X: RightMSet, elements: Iterable[int]) -> tuple[RightMSet, MSetMorphism]:
    """Restrict the action to an action-closed subset, kept in sorted order."""
    elems = sorted(set(elements))
    pos = {x: i for i, x in enumerate(elems)}
    n = X.monoid.order
    act = []
    for x in elems:
        row = []
        for m in range(n):
            xm = X.act(x, m)
            if xm not in pos:
                raise NotSubMSet(f"{x}.{m} = {xm} escapes the subset")
            row.append(pos[xm])
        act.append(tuple(row))
    S = RightMSet(X.monoid, tuple(act))
    return S, MSetMorphism(S, X, tuple(elems))


def sub_msets(X: RightMSet) -> Iterator[frozenset[int]]:
    """All action-closed subsets of the carrier, ascending by bitmask.

    Exponential in |X|; callers keep X small.
    """
    k = X.size
    n = X.monoid.order
    closure_of = []
    for x in range(k):
        seen = {x}
        work = [x]
        while work:
            y = work.pop()
            for m in range(n):
                ym = X.act(y, m)
                if ym not in seen:
                    seen.add(ym)
                    work.append(ym)
        closure_of.append(frozenset(seen))
    for mask in range(1 << k):
        subset = [x for x in range(k) if mask >> x & 1]
        if all(closure_of[x] <= frozenset(subset) for x in subset):
            yield frozenset(subset)


# ---------------------------------------------------------------------------
# hom search

def hom_set(X: RightMSet, Y: RightMSet, cap: int | None = None) -> list[MSetMorphism]:
    """All equivariant maps X -> Y, sorted lexicographically on the map array.

    Backtracking: branch on the first unassigned element, propagate forward
    along action edges, reject on conflict.  `cap` bounds the number of
    visited search nodes (CapExceeded past it).
    """
    if X.monoid != Y.monoid:
        raise MonoidMismatch("hom_set over different monoids")
    k = X.size
    if k == 0:
        return [MSetMorphism(X, Y, ())]
    if Y.size == 0:
        return []
    n = X.monoid.order
    solutions: list[tuple[int, ...]] = []
    assign: list[int | None] = [None] * k
    nodes = 0

    def propagate(x: int, trail: list[int]) -> bool:
        work = [x]
        while work:
            u = work.pop()
            fu = assign[u]
            for m in range(n):
                um = X.act(u, m)
                target = Y.act(fu, m)  # type: ignore[arg-type]
                cur = assign[um]
                if cur is None:
                    assign[um] = target
                    trail.append(um)
                    work.append(um)
                elif cur != target:
                    return False
        return True

    def rec(start: int) -> None:
        nonlocal nodes
        x = start
        while x < k and assign[x] is not None:
            x += 1
        if x == k:
            solutions.append(tuple(assign))  # type: ignore[arg-type]
            return
        for v in range(Y.size):
            nodes += 1
            if cap is not None and nodes > cap:
                raise CapExceeded("hom search nodes", cap)
            assign[x] = v
            trail = [x]
            if propagate(x, trail):
                rec(x + 1)
            for u in trail:
                assign[u] = None

    rec(0)
    solutions.sort()
    return [MSetMorphism(X, Y, s) for s in solutions]


def are_isomorphic(X: RightMSet, Y: RightMSet) -> bool:
    """Backtracking isomorphism test with cheap invariant pre-filters."""
    if X.monoid != Y.monoid:
        raise MonoidMismatch("isomorphism over different monoids")
    if X.size != Y.size:
        return False
    if X.size == 0:
        return True
    px, py = connected_components(X), connected_components(Y)
    if px.count != py.count:
        return False
    if sorted(len(c) for c in px.classes()) != sorted(len(c) for c in py.classes()):
        return False
    if len(fixed_points(X)) != len(fixed_points(Y)):
        return False
    k = X.size
    n = X.monoid.order
    sig_x = [_element_signature(X, x) for x in range(k)]
    sig_y = [_element_signature(Y, y) for y in range(k)]
    if sorted(sig_x) != sorted(sig_y):
        return False
    assign: list[int | None] = [None] * k
    used = [False] * k

    def propagate(x: int, trail: list[int]) -> bool:
        work = [x]
        while work:
            u = work.pop()
            fu = assign[u]
            for m in range(n):
                um = X.act(u, m)
                target = Y.act(fu, m)  # type: ignore[arg-type]
                cur = assign[um]
                if cur is None:
                    if used[target]:
                        return False
                    assign[um] = target
                    used[target] = True
                    trail.append(um)
                    work.append(um)
                elif cur != target:
                    return False
        return True

    def rec(start: int) -> bool:
        x = start
        while x < k and assign[x] is not None:
            x += 1
        if x == k:
            return True
        for v in range(k):
            if used[v] or sig_y[v] != sig_x[x]:
                continue
            assign[x] = v
            used[v] = True
            trail = [x]
            if propagate(x, trail) and rec(x + 1):
                return True
            for u in trail:
                used[assign[u]] = False  # type: ignore[index]
                assign[u] = None
        return False

    return rec(0)


def _element_signature(X: RightMSet, x: int) -> tuple:
    """Iso-invariant local key: self-loop pattern and action in/out profile."""
    n = X.monoid.order
    row = X.action[x]
    loops = tuple(row[m] == x for m in range(n))
    out_profile = tuple(sorted({(m, row[m] == x) for m in range(n)}))
    in_degree = sum(1 for y in X.elements() for m in range(n) if X.action[y][m] == x)
    return (loops, out_profile, in_degree)


# ---------------------------------------------------------------------------
# projectivity

def principal_mset(M: Monoid, e: int) -> RightMSet:
    """The sub-M-set e.M of the regular M-set."""
    carrier = sorted({M.table[e][m] for m in M.elements()})
    sub, _ = sub_mset(regular(M), carrier)
    return sub


def is_projective(X: RightMSet) -> bool:
    """Every component is isomorphic to e.M for some idempotent e.

    Isomorphism is exhibited by a pair of hom-search morphisms composing to
    the identities both ways.
    """
    M = X.monoid
    idems = [e for e in M.elements() if M.table[e][e] == e]
    principals = [principal_mset(M, e) for e in idems]
    for comp in decompose(X):
        if not any(_iso_by_hom_pair(comp, P) for P in principals):
            return False
    return True


def _iso_by_hom_pair(A: RightMSet, B: RightMSet) -> bool:
    if A.size != B.size:
        return False
    forwards = hom_set(A, B)
    backwards = hom_set(B, A)
    id_a = tuple(range(A.size))
    id_b = tuple(range(B.size))
    for f in forwards:
        for g in backwards:
            if compose(g, f).map == id_a and compose(f, g).map == id_b:
                return True
    return False
