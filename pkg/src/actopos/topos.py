"""Subobject classifier, exponential objects, the comparison maps between
the fixed-point and component functors, and bounded preservation checkers.

The subobject classifier carrier is the set of right ideals of M with the
inverse image action I.m = {m' : m m' in I}.  Exponentials follow
(f.m)(n, p) = f(mn, p) with evaluation (f, p) -> f(1, p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from itertools import combinations
from typing import Iterable, Iterator, Literal

from .errors import BoundTooSmall, MonoidMismatch, NotSubMSet, ShapeMismatch
from .monoid import Monoid
from .mset import (
    MSetMorphism,
    Partition,
    RightMSet,
    connected_components,
    fixed_points,
    hom_set,
    product,
    regular,
    sub_mset,
    trivial_action,
)

Functor = Literal["GAMMA", "C"]
Construct = Literal["mono", "epi", "product", "equalizer", "pullback", "power"]

IDEAL_SUBSET_SCAN_LIMIT = 12


@dataclass(frozen=True)
class SubobjectClassifier:
    omega: RightMSet
    ideals: tuple[frozenset[int], ...]
    top: int
    empty_ideal: int

    def index_of(self, ideal: frozenset[int]) -> int:
        return self.ideals.index(ideal)


@dataclass(frozen=True)
class Exponential:
    """Carrier of equivariant maps M x P -> Q, as |M| x |P| value tables."""

    mset: RightMSet
    maps: tuple[tuple[tuple[int, ...], ...], ...]
    base: RightMSet      # P
    target: RightMSet    # Q

    @property
    def size(self) -> int:
        return len(self.maps)

    def evaluate(self, f_index: int, p: int) -> int:
        e = self.mset.monoid.identity
        return self.maps[f_index][e][p]


@dataclass(frozen=True)
class AlphaResult:
    """The map from fixed points to the components containing them."""

    fixed: tuple[int, ...]
    components: Partition
    mapping: tuple[int, ...]
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass(frozen=True)
class ThetaResult:
    """Component-level comparison for exponentials.

    function_table[g_component][p_component] = q_component, when defined.
    Without product preservation the defining formula can depend on the
    chosen representatives; well_defined reports the empirical check.
    """

    well_defined: bool
    function_table: tuple[tuple[int, ...], ...] | None
    mono: bool
    iso: bool


@dataclass(frozen=True)
class PreservationReport:
    functor: str
    construct: str
    passed: bool
    checked: int
    witness: dict | None


def _ideal_action(M: Monoid, ideal: frozenset[int], m: int) -> frozenset[int]:
    return frozenset(mp for mp in M.elements() if M.table[m][mp] in ideal)


def _all_right_ideals(M: Monoid) -> list[frozenset[int]]:
    n = M.order
    if n <= IDEAL_SUBSET_SCAN_LIMIT:
        out = []
        for mask in range(1 << n):
            subset = frozenset(i for i in range(n) if mask >> i & 1)
            if all(M.table[i][m] in subset for i in subset for m in range(n)):
                out.append(subset)
        return out
    # union-closure of the principal ideals, plus the empty ideal
    principal = {frozenset(M.table[m][x] for x in M.elements()) for m in M.elements()}
    ideals = set(principal)
    ideals.add(frozenset())
    grew = True
    while grew:
        grew = False
        for a in tuple(ideals):
            for b in tuple(ideals):
                u = a | b
                if u not in ideals:
                    ideals.add(u)
                    grew = True
    return sorted(ideals, key=_ideal_mask_key)


def _ideal_mask_key(ideal: frozenset[int]) -> int:
    return sum(1 << i for i in ideal)


@cache
def omega(M: Monoid) -> SubobjectClassifier:
    """Right-ideal lattice of M with the inverse image action."""
    ideals = tuple(sorted(_all_right_ideals(M), key=_ideal_mask_key))
    index = {ideal: i for i, ideal in enumerate(ideals)}
    n = M.order
    action = tuple(
        tuple(index[_ideal_action(M, ideal, m)] for m in range(n)) for ideal in ideals
    )
    carrier = RightMSet(M, action, "omega")
    full = frozenset(range(n))
    return SubobjectClassifier(carrier, ideals, index[full], index[frozenset()])


def classify(sc: SubobjectClassifier, A: RightMSet, sub: Iterable[int]) -> MSetMorphism:
    """Classifying morphism A -> Omega of an action-closed subset."""
    subset = frozenset(sub)
    M = A.monoid
    for x in subset:
        for m in M.elements():
            if A.act(x, m) not in subset:
                raise NotSubMSet(f"{x}.{m} escapes the subset")
    index = {ideal: i for i, ideal in enumerate(sc.ideals)}
    mapping = []
    for a in A.elements():
        ideal = frozenset(m for m in M.elements() if A.act(a, m) in subset)
        mapping.append(index[ideal])
    return MSetMorphism(A, sc.omega, tuple(mapping))


def pullback_of_top(sc: SubobjectClassifier, s: MSetMorphism) -> frozenset[int]:
    """Subset classified by s: the elements sent to the top ideal."""
    if s.target != sc.omega:
        raise ShapeMismatch("morphism does not land in this subobject classifier")
    return frozenset(a for a in s.source.elements() if s.map[a] == sc.top)


# ---------------------------------------------------------------------------
# exponentials

def exponential(P: RightMSet, Q: RightMSet, cap: int = 10**6) -> Exponential:
    """Exponential object Q^P with carrier Hom(M x P, Q)."""
    if P.monoid != Q.monoid:
        raise MonoidMismatch("exponential over different monoids")
    M = P.monoid
    n = M.order
    kp = P.size
    MP, _, _ = product(regular(M), P)
    morphisms = hom_set(MP, Q, cap=cap)
    maps = tuple(
        tuple(tuple(f.map[m * kp + p] for p in range(kp)) for m in range(n))
        for f in morphisms
    )
    index = {arr: i for i, arr in enumerate(maps)}
    action = []
    for arr in maps:
        row = []
        for m in range(n):
            shifted = tuple(arr[M.table[m][nn]] for nn in range(n))
            row.append(index[shifted])
        action.append(tuple(row))
    carrier = RightMSet(M, tuple(action), "exponential")
    return Exponential(carrier, maps, P, Q)


def exp_transpose(exp: Exponential, X: RightMSet, f: MSetMorphism) -> MSetMorphism:
    """Transpose Hom(X x P, Q) -> Hom(X, Q^P): x -> ((m, p) -> f(x.m, p))."""
    P, Q = exp.base, exp.target
    M = X.monoid
    kp = P.size
    XP, _, _ = product(X, P)
    if f.source != XP or f.target != Q:
        raise ShapeMismatch("transpose needs a morphism X x P -> Q")
    index = {arr: i for i, arr in enumerate(exp.maps)}
    mapping = []
    for x in X.elements():
        arr = tuple(
            tuple(f.map[X.act(x, m) * kp + p] for p in range(kp))
            for m in range(M.order)
        )
        mapping.append(index[arr])
    return MSetMorphism(X, exp.mset, tuple(mapping))


def exp_untranspose(exp: Exponential, X: RightMSet, g: MSetMorphism) -> MSetMorphism:
    """Inverse transpose via evaluation: (x, p) -> g(x)(1, p)."""
    if g.source != X or g.target != exp.mset:
        raise ShapeMismatch("untranspose needs a morphism X -> Q^P")
    P, Q = exp.base, exp.target
    XP, _, _ = product(X, P)
    kp = P.size
    mapping = [0] * (X.size * kp)
    for x in X.elements():
        for p in range(kp):
            mapping[x * kp + p] = exp.evaluate(g.map[x], p)
    return MSetMorphism(XP, Q, tuple(mapping))


# ---------------------------------------------------------------------------
# comparison transformations

def alpha(X: RightMSet) -> AlphaResult:
    """Send each fixed point to the connected component containing it."""
    fixed = tuple(sorted(fixed_points(X)))
    part = connected_components(X)
    mapping = tuple(part.class_ids[x] for x in fixed)
    injective = len(set(mapping)) == len(mapping)
    surjective = len(set(mapping)) == part.count
    return AlphaResult(fixed, part, mapping, injective, surjective)


def theta_for_C(P: RightMSet, Q: RightMSet, cap: int = 10**6) -> ThetaResult:
    """Component comparison C(Q^P) -> Functions(C(P), C(Q)).

    [g] goes to ([p] -> [g(1, p)]).  Representative independence is checked
    on every member of every component rather than assumed; the formula is
    only canonical when components of products split, so ill-definedness is
    reported instead of silently picking representatives.
    """
    exp = exponential(P, Q, cap=cap)
    part_e = connected_components(exp.mset)
    part_p = connected_components(P)
    part_q = connected_components(Q)
    table: list[list[int | None]] = [
        [None] * part_p.count for _ in range(part_e.count)
    ]
    for g in range(exp.size):
        cg = part_e.class_ids[g]
        for p in P.elements():
            cp = part_p.class_ids[p]
            value = part_q.class_ids[exp.evaluate(g, p)]
            seen = table[cg][cp]
            if seen is None:
                table[cg][cp] = value
            elif seen != value:
                return ThetaResult(False, None, False, False)
    final = tuple(tuple(row) for row in table)  # type: ignore[arg-type]
    image = set(final)
    mono = len(image) == part_e.count
    total_functions = part_q.count ** part_p.count
    iso = mono and len(image) == total_functions
    if part_p.count == 0:
        # functions from the empty set: exactly one
        iso = mono and part_e.count == 1
    return ThetaResult(True, final, mono, iso)


def chi_for_C(M: Monoid) -> tuple[int, bool]:
    """Component count of the subobject classifier, and whether it is 2."""
    count = connected_components(omega(M).omega).count
    return count, count == 2


# ---------------------------------------------------------------------------
# preservation checking over instance streams

@dataclass(frozen=True)
class MonoInstance:
    inclusion: MSetMorphism  # injective S -> X


@dataclass(frozen=True)
class EpiInstance:
    surjection: MSetMorphism


@dataclass(frozen=True)
class ProductInstance:
    left: RightMSet
    right: RightMSet


@dataclass(frozen=True)
class ParallelPair:
    f: MSetMorphism
    g: MSetMorphism


@dataclass(frozen=True)
class CospanInstance:
    f: MSetMorphism
    g: MSetMorphism


@dataclass(frozen=True)
class PowerInstance:
    base: RightMSet
    exponent: int


def _gamma_of(X: RightMSet) -> frozenset[int]:
    return fixed_points(X)


def _check_mono(functor: Functor, inst: MonoInstance) -> dict | None:
    incl = inst.inclusion
    S, X = incl.source, incl.target
    if functor == "GAMMA":
        image = [incl.map[s] for s in sorted(_gamma_of(S))]
        ok = len(set(image)) == len(image)
    else:
        ps, px = connected_components(S), connected_components(X)
        image = []
        for cls in ps.classes():
            image.append(px.class_ids[incl.map[cls[0]]])
        ok = len(set(image)) == len(image)
    if ok:
        return None
    return {"kind": "mono", "sub": S.action, "parent": X.action, "inclusion": incl.map}


def _check_epi(functor: Functor, inst: EpiInstance) -> dict | None:
    q = inst.surjection
    X, Y = q.source, q.target
    if functor == "GAMMA":
        got = {q.map[x] for x in _gamma_of(X)}
        ok = got >= _gamma_of(Y)
    else:
        px, py = connected_components(X), connected_components(Y)
        got = {py.class_ids[q.map[x]] for x in X.elements()}
        ok = len(got) == py.count
    if ok:
        return None
    return {"kind": "epi", "source": X.action, "target": Y.action, "map": q.map}


def _check_product(functor: Functor, inst: ProductInstance) -> dict | None:
    X, Y = inst.left, inst.right
    Z, pr1, pr2 = product(X, Y)
    if functor == "GAMMA":
        pairs = {(pr1.map[z], pr2.map[z]) for z in _gamma_of(Z)}
        expect = {(x, y) for x in _gamma_of(X) for y in _gamma_of(Y)}
        ok = pairs == expect and len(pairs) == len(_gamma_of(Z))
    else:
        pz = connected_components(Z)
        px, py = connected_components(X), connected_components(Y)
        images: dict[int, tuple[int, int]] = {}
        for z in Z.elements():
            images[pz.class_ids[z]] = (
                px.class_ids[pr1.map[z]],
                py.class_ids[pr2.map[z]],
            )
        injective = len(set(images.values())) == pz.count
        surjective = len(set(images.values())) == px.count * py.count
        ok = injective and surjective
    if ok:
        return None
    return {"kind": "product", "left": X.action, "right": Y.action}


def _comparison_on_subset(
    functor: Functor, E: RightMSet, incl: MSetMorphism, allowed: set[int]
) -> bool:
    """Compare F(E) against the sub-gadget of F(source) cut out by `allowed`
    (component ids or fixed points, per functor)."""
    X = incl.target
    if functor == "GAMMA":
        image = {incl.map[s] for s in _gamma_of(E)}
        return image == allowed and len(image) == len(_gamma_of(E))
    pe, px = connected_components(E), connected_components(X)
    image = [px.class_ids[incl.map[cls[0]]] for cls in pe.classes()]
    return len(set(image)) == pe.count and set(image) == allowed


def _check_equalizer(functor: Functor, inst: ParallelPair) -> dict | None:
    from .mset import equalizer  # local import avoids cycles in doc order

    f, g = inst.f, inst.g
    X, Y = f.source, f.target
    E, incl = equalizer(f, g)
    if functor == "GAMMA":
        allowed = {x for x in _gamma_of(X) if f.map[x] == g.map[x]}
    else:
        px, py = connected_components(X), connected_components(Y)
        allowed = set()
        for cls in px.classes():
            cf = {py.class_ids[f.map[x]] for x in cls}
            cg = {py.class_ids[g.map[x]] for x in cls}
            # C(f) is well defined on components, so these are singletons
            if cf == cg:
                allowed.add(px.class_ids[cls[0]])
    if _comparison_on_subset(functor, E, incl, allowed):
        return None
    return {
        "kind": "equalizer",
        "source": X.action,
        "target": Y.action,
        "f": f.map,
        "g": g.map,
    }


def _check_pullback(functor: Functor, inst: CospanInstance) -> dict | None:
    from .mset import pullback

    f, g = inst.f, inst.g
    X, Y = f.source, g.source
    Z = f.target
    P, pr1, pr2 = pullback(f, g)
    if functor == "GAMMA":
        expect = {
            (x, y)
            for x in _gamma_of(X)
            for y in _gamma_of(Y)
            if f.map[x] == g.map[y]
        }
        got = {(pr1.map[p], pr2.map[p]) for p in _gamma_of(P)}
        ok = got == expect and len(got) == len(_gamma_of(P))
    else:
        pp = connected_components(P)
        px, py, pz = (
            connected_components(X),
            connected_components(Y),
            connected_components(Z),
        )
        cf = {px.class_ids[x]: pz.class_ids[f.map[x]] for x in X.elements()}
        cg = {py.class_ids[y]: pz.class_ids[g.map[y]] for y in Y.elements()}
        expect_pairs = {
            (cx, cy) for cx in cf for cy in cg if cf[cx] == cg[cy]
        }
        got_list = [
            (px.class_ids[pr1.map[cls[0]]], py.class_ids[pr2.map[cls[0]]])
            for cls in pp.classes()
        ]
        ok = len(set(got_list)) == pp.count and set(got_list) == expect_pairs
    if ok:
        return None
    return {
        "kind": "pullback",
        "f": f.map,
        "g": g.map,
        "apex_left": X.action,
        "apex_right": Y.action,
        "base": Z.action,
    }


def _check_power(functor: Functor, inst: PowerInstance) -> dict | None:
    """Finite power comparison via the exponential with a trivial-action base."""
    Q, k = inst.base, inst.exponent
    if functor == "GAMMA":
        from .mset import power_mset

        W = power_mset(Q, k)
        ok = len(_gamma_of(W)) == len(_gamma_of(Q)) ** k
        if ok:
            return None
        return {"kind": "power", "base": Q.action, "exponent": k}
    theta = theta_for_C(trivial_action(Q.monoid, k), Q)
    if theta.well_defined and theta.iso:
        return None
    return {"kind": "power", "base": Q.action, "exponent": k}


_CHECKERS = {
    "mono": _check_mono,
    "epi": _check_epi,
    "product": _check_product,
    "equalizer": _check_equalizer,
    "pullback": _check_pullback,
    "power": _check_power,
}


def preservation_check(functor: Functor, construct: Construct, instances: Iterable) -> PreservationReport:
    """Check the canonical comparison map on every instance, in stream order.

    Returns the first counterexample, or an all-pass verdict with the number
    of instances checked.  An empty stream raises BoundTooSmall.
    """
    checker = _CHECKERS[construct]
    checked = 0
    for inst in instances:
        checked += 1
        witness = checker(functor, inst)
        if witness is not None:
            return PreservationReport(functor, construct, False, checked, witness)
    if checked == 0:
        raise BoundTooSmall(f"no instances for ({functor}, {construct})")
    return PreservationReport(functor, construct, True, checked, None)


# ---------------------------------------------------------------------------
# deterministic instance streams with the proofs' targeted witnesses

def right_ideal_inclusions(M: Monoid) -> Iterator[MonoInstance]:
    """Sub-M-sets of the regular M-set: one inclusion per right ideal, plus
    every union of two principal ideals (the de Morgan witnesses)."""
    sc = omega(M)
    reg = regular(M)
    seen = set()
    for ideal in sc.ideals:
        if ideal:
            seen.add(ideal)
            yield MonoInstance(sub_mset(reg, ideal)[1])
    for m1, m2 in combinations(M.elements(), 2):
        union = frozenset(M.table[m1]) | frozenset(M.table[m2])
        if union not in seen:
            seen.add(union)
            yield MonoInstance(sub_mset(reg, union)[1])


def congruence_quotients(M: Monoid) -> Iterator[MSetMorphism]:
    """Quotients of the regular M-set used by the de Morgan proof: for each
    pair m1, m2, collapse each principal orbit m_i M to a point."""
    from .monoid import congruence_from_pairs
    from .mset import quotient

    reg = regular(M)
    seen = set()
    for m1 in M.elements():
        for m2 in M.elements():
            if m1 >= m2:
                continue
            pairs = []
            row1, row2 = M.table[m1], M.table[m2]
            for a in range(M.order):
                for b in range(M.order):
                    pairs.append((row1[a], row1[b]))
                    pairs.append((row2[a], row2[b]))
            cong = congruence_from_pairs(M, pairs)
            if cong.class_ids in seen:
                continue
            seen.add(cong.class_ids)
            Q, proj = quotient(reg, Partition(cong.class_ids, cong.count))
            yield proj


def left_multiplication_equalizer_pairs(M: Monoid) -> Iterator[ParallelPair]:
    """Parallel pairs of left multiplications on the regular M-set.

    Distinct pairs only, except over the trivial monoid where the single
    identity pair keeps the stream nonempty."""
    reg = regular(M)
    if M.order == 1:
        f = MSetMorphism(reg, reg, (0,))
        yield ParallelPair(f, f)
        return
    for m1 in M.elements():
        for m2 in M.elements():
            if m1 >= m2:
                continue
            f = MSetMorphism(reg, reg, M.table[m1])
            g = MSetMorphism(reg, reg, M.table[m2])
            yield ParallelPair(f, g)
