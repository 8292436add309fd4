"""Independent brute-force oracles.

Everything here avoids the package's search and canonicalisation machinery:
enumeration is filter-everything, canonical keys minimise over all
permutations without identity conventions, and hom sets are found by
checking every function.  Slow by design; use only at tiny sizes.
"""

from itertools import permutations, product

from actopos import Monoid, RightMSet


def naive_monoid_keys(n: int) -> set[bytes]:
    """Canonical keys of all monoids of order n, by filtering every table."""
    keys = set()
    for cells in product(range(n), repeat=n * n):
        table = tuple(tuple(cells[a * n + b] for b in range(n)) for a in range(n))
        if _identity_of(table) is None:
            continue
        if not _is_associative(table):
            continue
        keys.add(full_relabel_key_table(table))
    return keys


def _identity_of(table) -> int | None:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x == table[x][e] for x in range(n)):
            return e
    return None


def _is_associative(table) -> bool:
    n = len(table)
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


def full_relabel_key_table(table) -> bytes:
    """Least flattened table over all relabelings (no identity convention)."""
    n = len(table)
    best = None
    for perm in permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        flat = bytes(
            perm[table[inv[a]][inv[b]]] for a in range(n) for b in range(n)
        )
        if best is None or flat < best:
            best = flat
    return best


def naive_mset_keys(M: Monoid, k: int) -> set[bytes]:
    """Canonical keys of all right M-sets of size k, by filtering every
    action table."""
    n = M.order
    if k == 0:
        return {b""}
    keys = set()
    for cells in product(range(k), repeat=k * n):
        action = tuple(tuple(cells[x * n + m] for m in range(n)) for x in range(k))
        if any(action[x][M.identity] != x for x in range(k)):
            continue
        ok = all(
            action[action[x][m]][m2] == action[x][M.table[m][m2]]
            for x in range(k)
            for m in range(n)
            for m2 in range(n)
        )
        if not ok:
            continue
        keys.add(full_relabel_key_action(action))
    return keys


def full_relabel_key_action(action) -> bytes:
    k = len(action)
    n = len(action[0]) if k else 0
    best = None
    for perm in permutations(range(k)):
        inv = [0] * k
        for i, p in enumerate(perm):
            inv[p] = i
        flat = bytes(perm[action[inv[x]][m]] for x in range(k) for m in range(n))
        if best is None or flat < best:
            best = flat
    return best


def brute_hom_maps(X: RightMSet, Y: RightMSet) -> list[tuple[int, ...]]:
    """Every equivariant map, by filtering all |Y|^|X| functions."""
    n = X.monoid.order
    out = []
    for candidate in product(range(Y.size), repeat=X.size):
        if all(
            candidate[X.act(x, m)] == Y.act(candidate[x], m)
            for x in range(X.size)
            for m in range(n)
        ):
            out.append(candidate)
    return sorted(out)


def brute_fixed_points(X: RightMSet) -> set[int]:
    return {
        x
        for x in range(X.size)
        if all(X.act(x, m) == x for m in range(X.monoid.order))
    }


def brute_component_count(X: RightMSet) -> int:
    """Components by repeated closure over an explicit relation, no
    union-find."""
    k = X.size
    classes = [{x} for x in range(k)]

    def locate(x):
        for i, c in enumerate(classes):
            if x in c:
                return i
        raise AssertionError

    changed = True
    while changed:
        changed = False
        for x in range(k):
            for m in range(X.monoid.order):
                i, j = locate(x), locate(X.act(x, m))
                if i != j:
                    classes[i] |= classes[j]
                    del classes[j]
                    changed = True
    return len(classes)


def brute_right_ideals(M: Monoid) -> list[frozenset[int]]:
    """All right ideals by double-loop subset filtering."""
    n = M.order
    out = []
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        closed = True
        for i in subset:
            for m in range(n):
                if M.table[i][m] not in subset:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            out.append(subset)
    return out


def brute_exponential_size(M: Monoid, P: RightMSet, Q: RightMSet) -> int:
    """Count equivariant maps M x P -> Q by filtering every value table."""
    n = M.order
    kp = P.size

    def act_pair(m, p, by):
        return M.table[m][by], P.act(p, by)

    count = 0
    for cells in product(range(Q.size), repeat=n * kp):
        def val(m, p):
            return cells[m * kp + p]

        if all(
            val(*act_pair(m, p, by)) == Q.act(val(m, p), by)
            for m in range(n)
            for p in range(kp)
            for by in range(n)
        ):
            count += 1
    return count


def brute_tensor_class_count(A: RightMSet, B_action_left) -> int:
    """Tensor classes by closing an explicit pair relation; B given as a
    left action table."""
    n = A.monoid.order
    kb = len(B_action_left[0]) if B_action_left else 0
    pairs = [(a, b) for a in range(A.size) for b in range(kb)]
    classes = [{p} for p in pairs]

    def locate(p):
        for i, c in enumerate(classes):
            if p in c:
                return i
        raise AssertionError

    changed = True
    while changed:
        changed = False
        for a in range(A.size):
            for b in range(kb):
                for m in range(n):
                    i = locate((A.act(a, m), b))
                    j = locate((a, B_action_left[m][b]))
                    if i != j:
                        classes[i] |= classes[j]
                        del classes[j]
                        changed = True
    return len(classes)
