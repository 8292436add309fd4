"""Tensor products over a monoid, the flatness notions for left M-sets,
the one-object filtering test, and the bounded category of points.

The tensor A (x) B is the quotient of A x B by the equivalence generated
by (a.m, b) ~ (a, m.b); a left M-set is flat when tensoring with it
preserves finite limits, which for one object reduces to three element
conditions checked directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from typing import Iterable, Sequence

from .errors import BoundTooSmall, CrossCheckError, MonoidMismatch
from .monoid import Monoid, element_classes, opposite
from .mset import (
    BiSet,
    LeftMSet,
    MSetMorphism,
    Partition,
    RightMSet,
    are_isomorphic,
    connected_components,
    decompose,
    hom_set,
    is_projective,
    left_to_right,
    product,
    regular,
    right_to_left,
    sub_mset,
    trivial_action,
)

Witness = tuple


@dataclass(frozen=True)
class TensorResult:
    a_size: int
    b_size: int
    classes: Partition  # over pair index a * b_size + b
    right_action: tuple[tuple[int, ...], ...] | None = None  # BiSet case

    @property
    def class_count(self) -> int:
        return self.classes.count

    def class_of(self, a: int, b: int) -> int:
        return self.classes.class_ids[a * self.b_size + b]


@dataclass(frozen=True)
class FlatnessCheck:
    flat: bool
    failing_condition: str | None
    witness: Witness | None


@dataclass(frozen=True)
class FlatnessProfile:
    indecomposable: bool
    mono_flat: bool
    fin_product_flat: bool
    product_flat_bounded: bool
    equalizer_flat: bool
    pullback_flat: bool
    flat: bool
    projective: bool
    witnesses: tuple[tuple[str, Witness], ...]


@dataclass(frozen=True)
class PointsCategory:
    objects: tuple[LeftMSet, ...]
    hom_counts: tuple[tuple[int, ...], ...]  # hom_counts[i][j] = |Hom(obj_i, obj_j)|
    initial: int | None
    terminal: int | None
    essential: tuple[LeftMSet, ...]
    size_bound: int


def tensor(A: RightMSet, B: LeftMSet) -> TensorResult:
    """Union-find over A x B seeded with (a.m, b) ~ (a, m.b)."""
    if A.monoid != B.monoid:
        raise MonoidMismatch("tensor over different monoids")
    ka, kb = A.size, B.size
    total = ka * kb
    parent = list(range(total))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    n = A.monoid.order
    for a in range(ka):
        for b in range(kb):
            for m in range(n):
                i = find(A.act(a, m) * kb + b)
                j = find(a * kb + B.act(m, b))
                if i != j:
                    parent[j] = i
    roots: dict[int, int] = {}
    ids = []
    for i in range(total):
        r = find(i)
        if r not in roots:
            roots[r] = len(roots)
        ids.append(roots[r])
    return TensorResult(ka, kb, Partition(tuple(ids), len(roots)))


def tensor_with_biset(A: RightMSet, B: BiSet) -> tuple[TensorResult, RightMSet]:
    """Tensor against the left leg of a biset; the result carries the right
    N-action [a (x) b].n = [a (x) b.n]."""
    if A.monoid != B.left_monoid:
        raise MonoidMismatch("tensor over different monoids")
    left = LeftMSet(B.left_monoid, B.left_action)
    base = tensor(A, left)
    nn = B.right_monoid.order
    kb = B.size
    action = [[-1] * nn for _ in range(base.class_count)]
    for a in range(A.size):
        for b in range(kb):
            c = base.class_of(a, b)
            for n_el in range(nn):
                target = base.class_of(a, B.right_action[b][n_el])
                if action[c][n_el] == -1:
                    action[c][n_el] = target
                else:
                    assert action[c][n_el] == target, "biset tensor action ill-defined"
    carrier = RightMSet(B.right_monoid, tuple(tuple(row) for row in action))
    return base, carrier


def hom_n_of_biset(B: BiSet, X: RightMSet) -> tuple[RightMSet, tuple[MSetMorphism, ...]]:
    """Hom_N(B, X) as a right M-set under (h.m)(b) = h(m.b)."""
    if X.monoid != B.right_monoid:
        raise MonoidMismatch("hom over different monoids")
    carrier_as_right = RightMSet(B.right_monoid, B.right_action)
    maps = hom_set(carrier_as_right, X)
    index = {h.map: i for i, h in enumerate(maps)}
    m_order = B.left_monoid.order
    action = tuple(
        tuple(
            index[tuple(h.map[B.left_action[m][b]] for b in range(B.size))]
            for m in range(m_order)
        )
        for h in maps
    )
    return RightMSet(B.left_monoid, action, "hom"), tuple(maps)


@dataclass(frozen=True)
class AdjunctionVerdict:
    ok: bool
    samples_checked: int
    failure: dict | None


def tensor_hom_adjunction_check(
    B: BiSet, samples: Iterable[tuple[RightMSet, RightMSet]]
) -> AdjunctionVerdict:
    """Verify Hom_N(Y (x) B, X) ~ Hom_M(Y, Hom_N(B, X)) on sampled pairs.

    Y ranges over right M-sets and X over right N-sets.  Both directions
    h -> (y -> (b -> h(y (x) b))) and k -> (y (x) b -> k(y)(b)) are built
    explicitly and must compose to the identity both ways.
    """
    checked = 0
    for Y, X in samples:
        checked += 1
        tens, tens_carrier = tensor_with_biset(Y, B)
        hom_bx, hom_maps = hom_n_of_biset(B, X)
        lhs = hom_set(tens_carrier, X)
        rhs = hom_set(Y, hom_bx)
        if len(lhs) != len(rhs):
            return AdjunctionVerdict(
                False, checked, {"reason": "cardinality", "lhs": len(lhs), "rhs": len(rhs)}
            )
        hom_index = {h.map: i for i, h in enumerate(hom_maps)}
        rhs_index = {g.map: i for i, g in enumerate(rhs)}
        lhs_index = {h.map: i for i, h in enumerate(lhs)}
        forward = []
        for h in lhs:
            g_map = []
            for y in Y.elements():
                b_values = tuple(h.map[tens.class_of(y, b)] for b in range(B.size))
                g_map.append(hom_index[b_values])
            key = tuple(g_map)
            if key not in rhs_index:
                return AdjunctionVerdict(False, checked, {"reason": "forward escapes", "map": key})
            forward.append(rhs_index[key])
        if len(set(forward)) != len(lhs):
            return AdjunctionVerdict(False, checked, {"reason": "forward not injective"})
        for g in rhs:
            h_map = [-1] * tens.class_count
            for y in Y.elements():
                for b in range(B.size):
                    c = tens.class_of(y, b)
                    value = hom_maps[g.map[y]].map[b]
                    if h_map[c] == -1:
                        h_map[c] = value
                    elif h_map[c] != value:
                        return AdjunctionVerdict(
                            False, checked, {"reason": "backward ill-defined", "class": c}
                        )
            key = tuple(h_map)
            if key not in lhs_index:
                return AdjunctionVerdict(False, checked, {"reason": "backward escapes"})
            back = lhs_index[key]
            if forward[back] != rhs_index[g.map]:
                return AdjunctionVerdict(False, checked, {"reason": "roundtrip mismatch"})
    return AdjunctionVerdict(True, checked, None)


# ---------------------------------------------------------------------------
# flatness

def is_flat(B: LeftMSet) -> FlatnessCheck:
    """Filtering test specialised to one object.

    (1) B nonempty; (2) any two elements have a common ancestor under the
    action; (3) any equalised pair of multiplications is already equalised
    before reaching the element it agrees on.
    """
    k = B.size
    if k == 0:
        return FlatnessCheck(False, "nonempty", None)
    M = B.monoid
    n = M.order
    for b1 in range(k):
        for b2 in range(k):
            if not any(
                B.act(m1, c) == b1 and B.act(m2, c) == b2
                for c in range(k)
                for m1 in range(n)
                for m2 in range(n)
            ):
                return FlatnessCheck(False, "common_ancestor", (b1, b2))
    for m1 in range(n):
        for m2 in range(n):
            for b in range(k):
                if B.act(m1, b) != B.act(m2, b):
                    continue
                if not any(
                    M.table[m1][h] == M.table[m2][h] and B.act(h, c) == b
                    for h in range(n)
                    for c in range(k)
                ):
                    return FlatnessCheck(False, "equalised_pair", (m1, m2, b))
    return FlatnessCheck(True, None, None)


def _tensor_map(
    f: MSetMorphism, B: LeftMSet, src: TensorResult, dst: TensorResult
) -> list[int]:
    """Class map F(f) : source tensor classes -> target tensor classes."""
    out = [-1] * src.class_count
    for a in f.source.elements():
        for b in range(B.size):
            c = src.class_of(a, b)
            v = dst.class_of(f.map[a], b)
            if out[c] == -1:
                out[c] = v
            else:
                assert out[c] == v, "tensor functor ill-defined on a morphism"
    return out


def _preserves_mono(B: LeftMSet, incl: MSetMorphism) -> bool:
    ts = tensor_as_right_source(incl.source, B)
    tx = tensor_as_right_source(incl.target, B)
    image = _tensor_map(incl, B, ts, tx)
    return len(set(image)) == ts.class_count


@cache
def tensor_as_right_source(A: RightMSet, B: LeftMSet) -> TensorResult:
    return tensor(A, B)


def _preserves_binary_product(B: LeftMSet, X: RightMSet, Y: RightMSet) -> bool:
    Z, pr1, pr2 = product(X, Y)
    tz = tensor_as_right_source(Z, B)
    tx = tensor_as_right_source(X, B)
    ty = tensor_as_right_source(Y, B)
    m1 = _tensor_map(pr1, B, tz, tx)
    m2 = _tensor_map(pr2, B, tz, ty)
    pairs = [(m1[c], m2[c]) for c in range(tz.class_count)]
    return len(set(pairs)) == tz.class_count and set(pairs) == {
        (u, v) for u in range(tx.class_count) for v in range(ty.class_count)
    }


def _preserves_product_list(B: LeftMSet, factors: Sequence[RightMSet]) -> bool:
    Z = factors[0]
    projections: list[MSetMorphism] = [
        MSetMorphism(Z, Z, tuple(range(Z.size)))
    ]
    for X in factors[1:]:
        Z, prz, prx = product(Z, X)
        projections = [
            MSetMorphism(Z, p.target, tuple(p.map[prz.map[z]] for z in Z.elements()))
            for p in projections
        ]
        projections.append(prx)
    tz = tensor_as_right_source(Z, B)
    t_factors = [tensor_as_right_source(X, B) for X in factors]
    maps = [
        _tensor_map(projections[i], B, tz, t_factors[i]) for i in range(len(factors))
    ]
    tuples = [tuple(maps[i][c] for i in range(len(factors))) for c in range(tz.class_count)]
    expected = 1
    for t in t_factors:
        expected *= t.class_count
    return len(set(tuples)) == tz.class_count and len(set(tuples)) == expected


def _preserves_equalizer(B: LeftMSet, f: MSetMorphism, g: MSetMorphism) -> bool:
    from .mset import equalizer

    E, incl = equalizer(f, g)
    te = tensor_as_right_source(E, B)
    tx = tensor_as_right_source(f.source, B)
    ty = tensor_as_right_source(f.target, B)
    ff = _tensor_map(f, B, tx, ty)
    gg = _tensor_map(g, B, tx, ty)
    allowed = {c for c in range(tx.class_count) if ff[c] == gg[c]}
    image = _tensor_map(incl, B, te, tx)
    return len(set(image)) == te.class_count and set(image) == allowed


def _preserves_pullback(B: LeftMSet, f: MSetMorphism, g: MSetMorphism) -> bool:
    from .mset import pullback

    P, pr1, pr2 = pullback(f, g)
    tp = tensor_as_right_source(P, B)
    tx = tensor_as_right_source(f.source, B)
    ty = tensor_as_right_source(g.source, B)
    tz = tensor_as_right_source(f.target, B)
    ff = _tensor_map(f, B, tx, tz)
    gg = _tensor_map(g, B, ty, tz)
    expected = {
        (cx, cy)
        for cx in range(tx.class_count)
        for cy in range(ty.class_count)
        if ff[cx] == gg[cy]
    }
    m1 = _tensor_map(pr1, B, tp, tx)
    m2 = _tensor_map(pr2, B, tp, ty)
    got = [(m1[c], m2[c]) for c in range(tp.class_count)]
    return len(set(got)) == tp.class_count and set(got) == expected


def flatness_profile(B: LeftMSet, stream: "FlatnessStream") -> FlatnessProfile:
    """Decide every flatness notion for B over a bounded instance stream.

    Functional verdicts (does tensoring preserve the construct on every
    streamed instance) are cross-checked against the structural rules:
    pullback-flat iff every component is flat, and flat iff indecomposable
    and pullback-flat.  A mismatch raises CrossCheckError.
    """
    witnesses: list[tuple[str, Witness]] = []
    b_right = left_to_right(B)
    indecomposable = connected_components(b_right).count == 1
    projective = is_projective(b_right)

    mono_flat = True
    for incl in stream.mono_inclusions:
        if not _preserves_mono(B, incl):
            mono_flat = False
            witnesses.append(("mono", (incl.source.action, incl.target.action)))
            break

    fin_product_flat = B.size > 0
    for X, Y in stream.product_pairs:
        if not _preserves_binary_product(B, X, Y):
            fin_product_flat = False
            witnesses.append(("binary_product", (X.action, Y.action)))
            break

    product_flat_bounded = fin_product_flat
    if product_flat_bounded:
        for factors in stream.wide_products:
            if not _preserves_product_list(B, factors):
                product_flat_bounded = False
                witnesses.append(("wide_product", tuple(X.action for X in factors)))
                break

    equalizer_flat = True
    for pair in stream.parallel_pairs:
        if not _preserves_equalizer(B, pair[0], pair[1]):
            equalizer_flat = False
            witnesses.append(("equalizer", (pair[0].map, pair[1].map)))
            break

    pullback_flat = True
    for cospan in stream.cospans:
        if not _preserves_pullback(B, cospan[0], cospan[1]):
            pullback_flat = False
            witnesses.append(("pullback", (cospan[0].map, cospan[1].map)))
            break

    flat_filtering = is_flat(B).flat
    # empty B is the empty disjoint union, hence vacuously pullback-flat
    components_flat = all(
        is_flat(right_to_left(comp)).flat for comp in decompose(b_right)
    )

    if pullback_flat != components_flat:
        raise CrossCheckError(
            "pullback-flat functional verdict disagrees with the"
            " components-flat structural rule (bug or bound too small)"
        )
    structural_flat = indecomposable and pullback_flat
    if flat_filtering != structural_flat:
        raise CrossCheckError(
            "filtering flatness disagrees with indecomposable+pullback-flat"
            " (bug or bound too small)"
        )
    # one-directional check for the terminal carrier: a left absorbing
    # element makes tensoring collapse every product, so the bounded product
    # test must pass; the converse has no finite witness
    if B.size == 1 and element_classes(B.monoid).left_absorbing:
        if not product_flat_bounded:
            raise CrossCheckError(
                "terminal left M-set failed bounded product preservation"
                " despite a left absorbing element"
            )
    return FlatnessProfile(
        indecomposable,
        mono_flat,
        fin_product_flat,
        product_flat_bounded,
        equalizer_flat,
        pullback_flat,
        flat_filtering,
        projective,
        tuple(witnesses),
    )


@dataclass(frozen=True)
class FlatnessStream:
    """Deterministic right-M-set instances a flatness profile tests against."""

    mono_inclusions: tuple[MSetMorphism, ...]
    product_pairs: tuple[tuple[RightMSet, RightMSet], ...]
    wide_products: tuple[tuple[RightMSet, ...], ...]
    parallel_pairs: tuple[tuple[MSetMorphism, MSetMorphism], ...]
    cospans: tuple[tuple[MSetMorphism, MSetMorphism], ...]


def default_flatness_stream(M: Monoid, power_carrier_cap: int = 4096) -> FlatnessStream:
    """Targeted witnesses from the theorems: ideal inclusions, left
    multiplication equalizers (also bent into cospans), binary products of
    the regular M-set, and the diagonal power of |M| copies of M."""
    from .topos import (
        left_multiplication_equalizer_pairs,
        right_ideal_inclusions,
    )

    reg = regular(M)
    one = trivial_action(M, 1)
    monos = tuple(inst.inclusion for inst in right_ideal_inclusions(M))
    pairs = ((reg, reg), (reg, one), (one, one))
    wide: list[tuple[RightMSet, ...]] = [(reg, reg, reg)]
    if M.order**M.order <= power_carrier_cap:
        wide.append(tuple([reg] * M.order))
    parallel = tuple(
        (p.f, p.g) for p in left_multiplication_equalizer_pairs(M)
    )
    to_one = MSetMorphism(reg, one, (0,) * M.order)
    cospans = tuple((p[0], p[1]) for p in _equalizers_as_cospans(M, parallel)) + (
        (to_one, to_one),
    )
    return FlatnessStream(monos, pairs, tuple(wide), parallel, cospans)


def _equalizers_as_cospans(
    M: Monoid, parallel: tuple[tuple[MSetMorphism, MSetMorphism], ...]
) -> list[tuple[MSetMorphism, MSetMorphism]]:
    """Rewrite each parallel pair f, g : X -> Y as the cospan
    <f,g> : X -> Y x Y against the diagonal of Y."""
    out = []
    for f, g in parallel:
        X, Y = f.source, f.target
        YY, _, _ = product(Y, Y)
        ky = Y.size
        span = MSetMorphism(X, YY, tuple(f.map[x] * ky + g.map[x] for x in X.elements()))
        diag = MSetMorphism(Y, YY, tuple(y * ky + y for y in Y.elements()))
        out.append((span, diag))
    return out


# ---------------------------------------------------------------------------
# category of points

@cache
def enumerate_points(M: Monoid, size_bound: int) -> PointsCategory:
    """Flat left M-sets up to isomorphism up to the size bound, with all
    hom counts, initial/terminal detection inside the bound, and the
    essential points (principal projectives over the idempotents)."""
    if size_bound < 1:
        raise BoundTooSmall("points enumeration needs size_bound >= 1")
    from .enumeration import enumerate_msets

    op = opposite(M)
    objects: list[LeftMSet] = []
    rights: list[RightMSet] = []
    for k in range(1, size_bound + 1):
        for X in enumerate_msets(op, k, cap=max(size_bound, 6)):
            B = right_to_left(X)
            if is_flat(B).flat:
                objects.append(B)
                rights.append(X)
    counts = tuple(
        tuple(len(hom_set(rights[i], rights[j])) for j in range(len(rights)))
        for i in range(len(rights))
    )
    initial = _unique_index(
        [i for i in range(len(rights)) if all(counts[i][j] == 1 for j in range(len(rights)))]
    )
    terminal = _unique_index(
        [j for j in range(len(rights)) if all(counts[i][j] == 1 for i in range(len(rights)))]
    )
    essential = _essential_points(M)
    return PointsCategory(tuple(objects), counts, initial, terminal, essential, size_bound)


def _unique_index(candidates: list[int]) -> int | None:
    return candidates[0] if len(candidates) == 1 else None


def _essential_points(M: Monoid) -> tuple[LeftMSet, ...]:
    """Iso classes of M.e over the idempotents e."""
    op = opposite(M)
    reg_op = regular(op)
    out_right: list[RightMSet] = []
    for e in sorted(element_classes(M).idempotents):
        carrier = sorted({M.table[m][e] for m in M.elements()})
        sub, _ = sub_mset(reg_op, carrier)
        if not any(are_isomorphic(sub, seen) for seen in out_right):
            out_right.append(sub)
    return tuple(right_to_left(X) for X in out_right)
