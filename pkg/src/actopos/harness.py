"""Per-theorem agreement checking: every characterizing condition of each
equivalence theorem is evaluated independently, then the verdicts are
compared.

Conditions are tagged decidable (exact element-level test) or bounded
(quantifies over M-sets, checked over a deterministic instance stream).
A bounded condition refutes a theorem only when it finds a counterexample;
when its theorem's proof guarantees a witness within the configured bound
it must find one whenever the decidable side is false, and a miss is a
disagreement.  Unguaranteed bounded conditions that find nothing are
reported as unconfirmed, never as refutations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from itertools import combinations

from .errors import BoundTooSmall, CapExceeded
from .monoid import (
    Monoid,
    RightCongruence,
    congruence_from_pairs,
    element_classes,
    is_group,
    is_left_cancellative,
    is_right_cancellative,
    is_right_collapsible,
    is_right_ore,
    minimal_rf_generating_set,
    opposite,
    right_factorable_closure,
)
from .mset import (
    MSetMorphism,
    Partition,
    RightMSet,
    connected_components,
    coproduct,
    fixed_points,
    hom_set,
    is_indecomposable,
    is_projective,
    product,
    power_mset,
    quotient,
    regular,
    sub_msets,
    terminal_left,
    trivial_action,
)
from .flatness import enumerate_points, is_flat
from .topos import (
    CospanInstance,
    EpiInstance,
    MonoInstance,
    ParallelPair,
    PowerInstance,
    ProductInstance,
    alpha,
    chi_for_C,
    congruence_quotients,
    left_multiplication_equalizer_pairs,
    omega,
    preservation_check,
    right_ideal_inclusions,
    theta_for_C,
)

DECIDABLE = "decidable"
BOUNDED = "bounded"


@dataclass(frozen=True)
class PropertyProfile:
    boolean_atomic: bool
    local: bool
    colocal: bool
    bilocal: bool
    de_morgan: bool
    strongly_connected: bool
    totally_connected: bool
    sufficiently_cohesive: bool
    punctually_lc: bool
    copunctually_lc: bool
    left_cancellative: bool
    right_cancellative: bool
    trivial: bool
    minimal_rf_generating_size: int

    def flags(self) -> dict[str, bool]:
        d = self.__dict__.copy()
        d.pop("minimal_rf_generating_size")
        return d


@dataclass(frozen=True)
class Condition:
    id: str
    mode: str
    holds: bool | None  # None = skipped (caps too small for this monoid)
    guaranteed: bool = False
    witness: object | None = None
    group: int = 0
    note: str = ""


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    conditions: tuple[Condition, ...]
    agreement: bool
    disagreements: tuple[str, ...]
    unconfirmed: tuple[str, ...]
    bounds: "HarnessBounds"


@dataclass(frozen=True)
class HarnessBounds:
    """Caps for the bounded conditions.

    mset_size bounds the blind enumeration; targeted witnesses (products,
    powers, the subobject classifier) may exceed it up to their own caps.
    """

    mset_size: int = 5
    power_carrier_cap: int = 1024
    pair_size: int = 3
    pair_cap: int = 24
    parallel_pair_cap: int = 40
    search_cap: int = 10**6
    theta_search_cap: int = 50_000

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def finish_report(theorem: str, conditions: list[Condition], bounds: HarnessBounds) -> TheoremReport:
    disagreements: list[str] = []
    unconfirmed: list[str] = []
    groups = sorted({c.group for c in conditions})
    for g in groups:
        members = [c for c in conditions if c.group == g]
        decidable = [c for c in members if c.mode == DECIDABLE]
        verdicts = {c.holds for c in decidable}
        if len(verdicts) > 1:
            ids = ", ".join(f"{c.id}={c.holds}" for c in decidable)
            disagreements.append(f"decidable conditions split: {ids}")
            continue
        base = verdicts.pop() if verdicts else None
        for c in members:
            if c.mode != BOUNDED or c.holds is None or base is None:
                continue
            if c.holds is False and base is True:
                disagreements.append(f"{c.id} refutes the decidable verdict")
            elif c.holds is True and base is False:
                if c.guaranteed:
                    disagreements.append(
                        f"{c.id} missed its guaranteed witness within bound"
                    )
                else:
                    unconfirmed.append(c.id)
    return TheoremReport(
        theorem,
        tuple(conditions),
        not disagreements,
        tuple(disagreements),
        tuple(unconfirmed),
        bounds,
    )


# ---------------------------------------------------------------------------
# shared instance material, cached per monoid

@cache
def _blind_objects(M: Monoid, size: int) -> tuple[RightMSet, ...]:
    from .enumeration import enumerate_msets_up_to

    return tuple(enumerate_msets_up_to(M, size, cap=max(size, 6)))


@cache
def _m_squared(M: Monoid) -> RightMSet:
    return product(regular(M), regular(M))[0]


def _diag_power(M: Monoid, cap: int) -> RightMSet:
    if M.order**M.order > cap:
        raise BoundTooSmall(
            f"diagonal power carrier {M.order ** M.order} exceeds cap {cap}"
        )
    return power_mset(regular(M), M.order)


def _object_stream(M: Monoid, bounds: HarnessBounds) -> list[RightMSet]:
    """Blind enumeration plus the targeted carriers the proofs point at."""
    extras = [regular(M), omega(M).omega, _m_squared(M)]
    try:
        extras.append(_diag_power(M, bounds.power_carrier_cap))
    except BoundTooSmall:
        pass
    quots = [proj.target for proj in congruence_quotients(M)]
    return list(_blind_objects(M, bounds.mset_size)) + extras + quots


def _component_unit(X: RightMSet) -> MSetMorphism:
    """The epimorphism X -> Delta(C(X)) collapsing each component."""
    part = connected_components(X)
    target = trivial_action(X.monoid, part.count)
    return MSetMorphism(X, target, part.class_ids)


def _epi_stream(M: Monoid, bounds: HarnessBounds) -> list[EpiInstance]:
    out = [EpiInstance(_component_unit(X)) for X in _blind_objects(M, bounds.mset_size)]
    out.append(EpiInstance(_component_unit(regular(M))))
    out.extend(EpiInstance(proj) for proj in congruence_quotients(M))
    return out


def _mono_stream(M: Monoid, bounds: HarnessBounds) -> list[MonoInstance]:
    from .mset import sub_mset

    out = list(right_ideal_inclusions(M))
    for X in _blind_objects(M, bounds.mset_size):
        if X.size == 0:
            continue
        for subset in sub_msets(X):
            if subset and len(subset) < X.size:
                out.append(MonoInstance(sub_mset(X, subset)[1]))
    return out


def _parallel_stream(M: Monoid, bounds: HarnessBounds) -> list[ParallelPair]:
    out = list(left_multiplication_equalizer_pairs(M))
    count = 0
    small = [X for X in _blind_objects(M, bounds.pair_size) if X.size > 0]
    for X in small:
        for Y in small:
            homs = hom_set(X, Y, cap=bounds.search_cap)
            for f, g in combinations(homs, 2):
                out.append(ParallelPair(f, g))
                count += 1
                if count >= bounds.parallel_pair_cap:
                    return out
    return out


def _cospan_stream(M: Monoid, bounds: HarnessBounds) -> list[CospanInstance]:
    out: list[CospanInstance] = []
    reg = regular(M)
    one = trivial_action(M, 1)
    to_one = MSetMorphism(reg, one, (0,) * M.order)
    out.append(CospanInstance(to_one, to_one))  # the product M x M as a pullback
    for pair in left_multiplication_equalizer_pairs(M):
        f, g = pair.f, pair.g
        Y = f.target
        YY, _, _ = product(Y, Y)
        ky = Y.size
        span = MSetMorphism(
            f.source, YY, tuple(f.map[x] * ky + g.map[x] for x in f.source.elements())
        )
        diag = MSetMorphism(Y, YY, tuple(y * ky + y for y in Y.elements()))
        out.append(CospanInstance(span, diag))
    return out


def _pair_stream(M: Monoid, bounds: HarnessBounds) -> list[tuple[RightMSet, RightMSet]]:
    small = [X for X in _blind_objects(M, bounds.pair_size)]
    pairs = []
    for X in small:
        for Y in small:
            pairs.append((X, Y))
            if len(pairs) >= bounds.pair_cap:
                return pairs
    return pairs


# ---------------------------------------------------------------------------
# profile

def profile(M: Monoid) -> PropertyProfile:
    """Every named property from its decidable element-level characterization."""
    classes = element_classes(M)
    has_right = bool(classes.right_absorbing)
    has_left = bool(classes.left_absorbing)
    ore = is_right_ore(M)
    strongly = is_indecomposable(_m_squared(M))
    return PropertyProfile(
        boolean_atomic=is_group(M),
        local=has_right,
        colocal=has_left,
        bilocal=classes.zero is not None,
        de_morgan=ore,
        strongly_connected=strongly,
        totally_connected=is_right_collapsible(M),
        sufficiently_cohesive=len(classes.right_absorbing) >= 2,
        punctually_lc=has_right,
        copunctually_lc=ore,
        left_cancellative=is_left_cancellative(M),
        right_cancellative=is_right_cancellative(M),
        trivial=M.order == 1,
        minimal_rf_generating_size=len(minimal_rf_generating_set(M)),
    )


def profile_invariant_violations(p: PropertyProfile) -> list[str]:
    """The cross-property implications every profile must satisfy."""
    out = []
    if p.totally_connected != (p.de_morgan and p.strongly_connected):
        out.append("totally_connected != de_morgan and strongly_connected")
    if p.bilocal != (p.local and p.colocal):
        out.append("bilocal != local and colocal")
    if p.local and not p.strongly_connected:
        out.append("local without strongly_connected")
    if p.sufficiently_cohesive and p.bilocal:
        out.append("sufficiently_cohesive with bilocal")
    if p.boolean_atomic and not p.de_morgan:
        out.append("boolean_atomic without de_morgan")
    if p.punctually_lc != p.local or p.copunctually_lc != p.de_morgan:
        out.append("punctual flags diverge from local/de_morgan")
    return out


# ---------------------------------------------------------------------------
# theorem checks

def check_boolean(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [
        Condition("monoid_is_group", DECIDABLE, is_group(M)),
        Condition("omega_has_two_elements", DECIDABLE, len(omega(M).ideals) == 2),
    ]
    witness = None
    for X in _object_stream(M, bounds):
        if X.size == 0 or X.size > 12:
            continue
        carrier = set(X.elements())
        for subset in sub_msets(X):
            complement = carrier - subset
            closed = all(
                X.act(x, m) in complement
                for x in complement
                for m in range(M.order)
            )
            if not closed:
                witness = {"mset": X.action, "subset": sorted(subset)}
                break
        if witness:
            break
    conds.append(
        Condition(
            "subobjects_complemented",
            BOUNDED,
            witness is None,
            guaranteed=True,
            witness=witness,
            note="witness inside the regular M-set when M is not a group",
        )
    )
    return finish_report("boolean", conds, bounds)


def check_strongly_compact(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    ok = True
    witness = None
    elems = list(M.elements())
    seeds = [(x,) for x in elems] + list(combinations(elems, 2))
    for S in seeds:
        closure = right_factorable_closure(M, S)
        cong = congruence_from_pairs(M, [(s, M.identity) for s in S])
        if closure != cong.class_of(M.identity):
            ok = False
            witness = {"seed": list(S)}
            break
    conds = [
        Condition(
            "rf_closure_matches_congruence_class",
            DECIDABLE,
            ok,
            witness=witness,
            note="closure equals the congruence class of the identity for all seeds of size <= 2",
        ),
        Condition(
            "rf_finitely_generated",
            DECIDABLE,
            True,
            note=f"minimal generating set size {len(minimal_rf_generating_set(M))}",
        ),
    ]
    return finish_report("strongly_compact", conds, bounds)


def check_local(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [
        Condition(
            "has_right_absorbing",
            DECIDABLE,
            bool(element_classes(M).right_absorbing),
        ),
        Condition(
            "terminal_is_projective", DECIDABLE, is_projective(trivial_action(M, 1))
        ),
    ]
    witness = None
    for X in _object_stream(M, bounds):
        if X.size > 0 and not fixed_points(X):
            witness = {"mset": X.action}
            break
    conds.append(
        Condition(
            "nonempty_msets_have_fixed_point",
            BOUNDED,
            witness is None,
            guaranteed=True,
            witness=witness,
            note="the regular M-set is the decisive witness",
        )
    )
    epic_witness = None
    for X in _object_stream(M, bounds):
        if not alpha(X).surjective:
            epic_witness = {"mset": X.action}
            break
    conds.append(
        Condition(
            "alpha_epic", BOUNDED, epic_witness is None, guaranteed=True, witness=epic_witness
        )
    )
    report = preservation_check("GAMMA", "epi", _epi_stream(M, bounds))
    conds.append(
        Condition(
            "gamma_preserves_epis",
            BOUNDED,
            report.passed,
            guaranteed=True,
            witness=report.witness,
        )
    )
    points = enumerate_points(M, M.order)
    conds.append(
        Condition(
            "points_have_initial",
            BOUNDED,
            points.initial is not None,
            guaranteed=True,
            note=f"{len(points.objects)} flat left M-sets within bound {M.order}",
        )
    )
    return finish_report("local", conds, bounds)


def check_de_morgan(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [
        Condition("right_ore", DECIDABLE, is_right_ore(M)),
        Condition("c_omega_has_two_components", DECIDABLE, chi_for_C(M)[1]),
    ]
    mono_report = preservation_check("C", "mono", _mono_stream(M, bounds))
    conds.append(
        Condition(
            "c_preserves_monos",
            BOUNDED,
            mono_report.passed,
            guaranteed=True,
            witness=mono_report.witness,
            note="unions of two principal ideals are the decisive witnesses",
        )
    )
    sub_witness = None
    for X in _object_stream(M, bounds):
        if X.size == 0 or X.size > 12 or not is_indecomposable(X):
            continue
        for subset in sub_msets(X):
            if subset:
                sub, _ = _sub(X, subset)
                if not is_indecomposable(sub):
                    sub_witness = {"mset": X.action, "subset": sorted(subset)}
                    break
        if sub_witness:
            break
    conds.append(
        Condition(
            "subs_of_indecomposables_indecomposable",
            BOUNDED,
            sub_witness is None,
            guaranteed=True,
            witness=sub_witness,
        )
    )
    monic_witness = None
    for X in _object_stream(M, bounds):
        if not alpha(X).injective:
            monic_witness = {"mset": X.action}
            break
    conds.append(
        Condition(
            "alpha_monic",
            BOUNDED,
            monic_witness is None,
            guaranteed=True,
            witness=monic_witness,
            note="congruence quotients of M and the classifier are in the stream",
        )
    )
    return finish_report("de_morgan", conds, bounds)


def _sub(X: RightMSet, subset) -> tuple[RightMSet, MSetMorphism]:
    from .mset import sub_mset

    return sub_mset(X, subset)


def check_strongly_connected(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [
        Condition("m_times_m_indecomposable", DECIDABLE, is_indecomposable(_m_squared(M)))
    ]
    indecomposables = [
        X for X in _blind_objects(M, bounds.pair_size) if X.size and is_indecomposable(X)
    ]
    instances = [ProductInstance(regular(M), regular(M))]
    for X, Y in combinations(indecomposables, 2):
        instances.append(ProductInstance(X, Y))
        if len(instances) >= bounds.pair_cap:
            break
    witness = None
    for inst in instances:
        Z, _, _ = product(inst.left, inst.right)
        if (
            is_indecomposable(inst.left)
            and is_indecomposable(inst.right)
            and not is_indecomposable(Z)
        ):
            witness = {"left": inst.left.action, "right": inst.right.action}
            break
    conds.append(
        Condition(
            "products_of_indecomposables_indecomposable",
            BOUNDED,
            witness is None,
            guaranteed=True,
            witness=witness,
            note="M x M is the decisive witness",
        )
    )
    power_witness = None
    power_targets = [regular(M)] + indecomposables[:3]
    for Q in power_targets:
        theta = theta_for_C(trivial_action(M, 2), Q, cap=bounds.search_cap)
        if theta.well_defined and not theta.iso:
            power_witness = {"base": Q.action, "exponent": 2}
            break
    conds.append(
        Condition(
            "finite_power_comparison_iso",
            BOUNDED,
            power_witness is None,
            guaranteed=True,
            witness=power_witness,
            note="finite powers are products with all factors equal",
        )
    )
    return finish_report("strongly_connected", conds, bounds)


def check_totally_connected(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [
        Condition("right_collapsible", DECIDABLE, is_right_collapsible(M)),
        Condition("terminal_left_mset_flat", DECIDABLE, is_flat(terminal_left(M)).flat),
        Condition(
            "de_morgan_and_strongly_connected",
            DECIDABLE,
            is_right_ore(M) and is_indecomposable(_m_squared(M)),
        ),
    ]
    eq_report = preservation_check("C", "equalizer", _parallel_stream(M, bounds))
    conds.append(
        Condition(
            "c_preserves_equalizers",
            BOUNDED,
            eq_report.passed,
            guaranteed=True,
            witness=eq_report.witness,
            note="left multiplication pairs are the decisive witnesses",
        )
    )
    pb_report = preservation_check("C", "pullback", _cospan_stream(M, bounds))
    conds.append(
        Condition(
            "c_preserves_pullbacks",
            BOUNDED,
            pb_report.passed,
            guaranteed=True,
            witness=pb_report.witness,
        )
    )
    points = enumerate_points(M, M.order)
    conds.append(
        Condition(
            "points_have_terminal",
            BOUNDED,
            points.terminal is not None,
            guaranteed=True,
            note="the terminal point, when it exists, is the one-element flat left M-set",
        )
    )
    return finish_report("totally_connected", conds, bounds)


def check_colocal(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    classes = element_classes(M)
    conds = [Condition("has_left_absorbing", DECIDABLE, bool(classes.left_absorbing))]

    sc = omega(M)
    nonempty = [i for i in sc.ideals if i]
    least = frozenset.intersection(*nonempty) if nonempty else frozenset()
    least_ok = False
    if least and least in sc.ideals:
        sub, _ = _sub(regular(M), least)
        least_ok = len(hom_set(sub, sub)) == 1
    conds.append(
        Condition(
            "least_right_ideal_trivial_endos",
            DECIDABLE,
            least_ok,
            note="least = contained in every nonempty right ideal",
        )
    )

    try:
        power = _diag_power(M, bounds.power_carrier_cap)
        conds.append(
            Condition(
                "diagonal_power_indecomposable",
                BOUNDED,
                is_indecomposable(power),
                guaranteed=False,
                note=(
                    f"carrier size {power.size}; confirm-only: a right absorbing"
                    " element already makes every finite diagonal power"
                    " indecomposable, so refutation needs infinite powers"
                ),
            )
        )
    except BoundTooSmall as exc:
        conds.append(
            Condition(
                "diagonal_power_indecomposable",
                BOUNDED,
                None,
                note=f"skipped: {exc}",
            )
        )

    # the span the colocalness proof extracts from the diagonal power:
    # (m)_m and (identity)_m joined by a single action step each
    e = M.identity
    span = any(
        all(M.table[m][s] == M.table[e][t] for m in M.elements())
        for s in M.elements()
        for t in M.elements()
    )
    conds.append(
        Condition(
            "diagonal_power_identity_span",
            DECIDABLE,
            span,
            note="(m)_m and (1)_m admit a common one-step successor in M^|M|",
        )
    )

    stream = [X for X in _object_stream(M, bounds) if X.size <= bounds.power_carrier_cap]
    picked = None
    for l in M.elements():
        if all(_left_mult_picks_components(X, l) for X in stream):
            picked = l
            break
    conds.append(
        Condition(
            "components_picked_by_right_multiplication",
            BOUNDED,
            picked is not None,
            guaranteed=True,
            note="some l has A.l meeting every component exactly once, for all streamed A",
        )
    )

    points = enumerate_points(M, M.order)
    ess = points.essential
    terminal_ess = None
    if ess:
        from .mset import left_to_right

        rights = [left_to_right(B) for B in ess]
        for j, target in enumerate(rights):
            if all(len(hom_set(src, target)) == 1 for src in rights):
                terminal_ess = j
                break
    conds.append(
        Condition(
            "essential_points_have_terminal",
            DECIDABLE,
            terminal_ess is not None,
            note="essential points are the principal projectives over the idempotents",
        )
    )
    return finish_report("colocal", conds, bounds)


def _left_mult_picks_components(X: RightMSet, l: int) -> bool:
    part = connected_components(X)
    values: list[set[int]] = [set() for _ in range(part.count)]
    for x in X.elements():
        values[part.class_ids[x]].add(X.act(x, l))
    return all(len(v) == 1 for v in values)


def check_bilocal(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    classes = element_classes(M)
    conds = [
        Condition("has_zero", DECIDABLE, classes.zero is not None),
        Condition(
            "local_and_colocal",
            DECIDABLE,
            bool(classes.right_absorbing) and bool(classes.left_absorbing),
        ),
    ]
    iso_witness = None
    for X in _object_stream(M, bounds):
        a = alpha(X)
        if not a.bijective:
            iso_witness = {"mset": X.action}
            break
    conds.append(
        Condition(
            "alpha_iso", BOUNDED, iso_witness is None, guaranteed=True, witness=iso_witness
        )
    )
    full_witness = None
    reg = regular(M)
    gamma_m = len(fixed_points(reg))
    pairs = [(reg, trivial_action(M, gamma_m))] + _pair_stream(M, bounds)
    for X, Y in pairs:
        gx = tuple(sorted(fixed_points(X)))
        gy = fixed_points(Y)
        realized = {
            tuple(h.map[x] for x in gx) for h in hom_set(X, Y, cap=bounds.search_cap)
        }
        if len(realized) != len(gy) ** len(gx):
            full_witness = {"source": X.action, "target": Y.action}
            break
    conds.append(
        Condition(
            "gamma_full",
            BOUNDED,
            full_witness is None,
            guaranteed=True,
            witness=full_witness,
            note="decisive pair: the regular M-set against its own fixed points",
        )
    )
    return finish_report("bilocal", conds, bounds)


def check_trivial(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    conds = [Condition("order_one", DECIDABLE, M.order == 1)]

    reg = regular(M)
    double = _glued_double(M)
    faithful_pairs = [(reg, double), (reg, reg)] + _pair_stream(M, bounds)
    gamma_witness = None
    for X, Y in faithful_pairs:
        gx = tuple(sorted(fixed_points(X)))
        homs = hom_set(X, Y, cap=bounds.search_cap)
        realized = {tuple(h.map[x] for x in gx) for h in homs}
        if len(realized) != len(homs):
            gamma_witness = {"source": X.action, "target": Y.action}
            break
    conds.append(
        Condition(
            "gamma_faithful",
            BOUNDED,
            gamma_witness is None,
            guaranteed=True,
            witness=gamma_witness,
            note="decisive pair: M against its double glued along fixed points",
        )
    )

    c_witness = None
    for X, Y in faithful_pairs:
        px, py = connected_components(X), connected_components(Y)
        homs = hom_set(X, Y, cap=bounds.search_cap)
        reps = [cls[0] for cls in px.classes()]
        realized = {tuple(py.class_ids[h.map[r]] for r in reps) for h in homs}
        if len(realized) != len(homs):
            c_witness = {"source": X.action, "target": Y.action}
            break
    conds.append(
        Condition(
            "c_faithful",
            BOUNDED,
            c_witness is None,
            guaranteed=True,
            witness=c_witness,
            note="decisive pair: M against itself",
        )
    )

    theta_witness = None
    theta_pairs = [(reg, reg), (trivial_action(M, 2), reg)]
    for P, Q in theta_pairs:
        try:
            theta = theta_for_C(P, Q, cap=bounds.theta_search_cap)
        except CapExceeded:
            continue
        if theta.well_defined and not theta.mono:
            theta_witness = {"base": P.action, "target": Q.action}
            break
    if theta_witness is None and is_right_ore(M) and M.order > 1:
        # Ore collapses zigzags to single spans, and no span can join the
        # two projections in M^M: pi2.m = pi2 while pi1.m ignores the second
        # argument.  So C(M^M) has at least two points over the singleton
        # target and theta is not monic, without materialising M^M.
        if not _projection_span_exists(M):
            theta_witness = {
                "base": reg.action,
                "target": reg.action,
                "derived": "projections of M x M lie in distinct components of M^M",
            }
    conds.append(
        Condition(
            "theta_monic",
            BOUNDED,
            theta_witness is None,
            guaranteed=is_right_ore(M),
            witness=theta_witness,
            note="guaranteed witness (M, M) exists under the right Ore condition",
        )
    )
    return finish_report("trivial", conds, bounds)


def _projection_span_exists(M: Monoid) -> bool:
    """Whether pi1.m1 = pi2.m2 for some m1, m2, for the two projections
    in Hom(M x M, M); pi1.m1 sends (n, p) to m1*n and pi2.m2 sends it to p."""
    return any(
        all(
            M.table[m1][n_el] == p
            for n_el in M.elements()
            for p in M.elements()
        )
        for m1 in M.elements()
    )


def _glued_double(M: Monoid) -> RightMSet:
    """Two copies of the regular M-set with their fixed points identified."""
    reg = regular(M)
    Z, _, _ = coproduct(reg, reg)
    ids = list(range(Z.size))
    for r in fixed_points(reg):
        ids[r + reg.size] = r
    return quotient(Z, Partition(tuple(ids), len(set(ids))))[0]


def check_cancellativity(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    left = is_left_cancellative(M)
    right = is_right_cancellative(M)
    op = opposite(M)
    reg = regular(M)
    # right cancellative iff distinct elements of the regular M-set stay
    # distinct under every action step
    decidable_strong = all(
        reg.act(a, m) != reg.act(b, m)
        for a in reg.elements()
        for b in reg.elements()
        if a != b
        for m in M.elements()
    )
    conds = [
        Condition("left_cancellative", DECIDABLE, left, group=1, note="etendue side"),
        Condition(
            "right_cancellative_of_opposite",
            DECIDABLE,
            is_right_cancellative(op),
            group=1,
        ),
        Condition(
            "right_cancellative", DECIDABLE, right, group=2, note="locally decidable side"
        ),
        Condition(
            "regular_mset_elementwise_decidable",
            DECIDABLE,
            decidable_strong,
            group=2,
            note="distinct elements never collide under any action step",
        ),
    ]
    return finish_report("cancellativity", conds, bounds)


def check_duality(M: Monoid, bounds: HarnessBounds | None = None) -> TheoremReport:
    bounds = bounds or HarnessBounds()
    op = opposite(M)
    classes = element_classes(M)
    op_classes = element_classes(op)
    conds = [
        Condition(
            "opposite_is_involution", DECIDABLE, opposite(op) == M, group=0
        ),
        Condition(
            "absorbing_swaps_under_opposite",
            DECIDABLE,
            classes.left_absorbing == op_classes.right_absorbing
            and classes.right_absorbing == op_classes.left_absorbing,
            group=0,
        ),
        Condition(
            "cancellativity_swaps_under_opposite",
            DECIDABLE,
            is_left_cancellative(M) == is_right_cancellative(op)
            and is_right_cancellative(M) == is_left_cancellative(op),
            group=0,
        ),
    ]
    return finish_report("duality", conds, bounds)


ALL_CHECKS = (
    check_boolean,
    check_strongly_compact,
    check_local,
    check_de_morgan,
    check_strongly_connected,
    check_totally_connected,
    check_colocal,
    check_bilocal,
    check_trivial,
    check_cancellativity,
    check_duality,
)


# ---------------------------------------------------------------------------
# suite

@dataclass(frozen=True)
class MonoidEntry:
    monoid: Monoid
    canonical_hex: str
    profile: PropertyProfile
    reports: tuple[TheoremReport, ...]
    profile_violations: tuple[str, ...]

    @property
    def disagreements(self) -> list[str]:
        out = list(self.profile_violations)
        for report in self.reports:
            out.extend(f"{report.theorem}: {d}" for d in report.disagreements)
        return out


@dataclass(frozen=True)
class SuiteReport:
    max_order: int
    bounds: HarnessBounds
    entries: tuple[MonoidEntry, ...]

    @property
    def disagreement_count(self) -> int:
        return sum(len(e.disagreements) for e in self.entries)

    def property_counts(self) -> dict[int, dict[str, int]]:
        """Per order: how many monoids carry each profile flag."""
        out: dict[int, dict[str, int]] = {}
        for entry in self.entries:
            order = entry.monoid.order
            row = out.setdefault(order, {"monoids": 0})
            row["monoids"] += 1
            for flag, value in entry.profile.flags().items():
                row[flag] = row.get(flag, 0) + (1 if value else 0)
        return out


def run_suite(max_order: int, bounds: HarnessBounds | None = None) -> SuiteReport:
    """Profile and all theorem checks for every monoid up to max_order."""
    from .enumeration import canonical_form, enumerate_monoids_up_to

    bounds = bounds or HarnessBounds()
    entries = []
    for M in enumerate_monoids_up_to(max_order):
        reports = tuple(check(M, bounds) for check in ALL_CHECKS)
        prof = profile(M)
        entries.append(
            MonoidEntry(
                M,
                canonical_form(M.table, M.identity).table_bytes.hex(),
                prof,
                reports,
                tuple(profile_invariant_violations(prof)),
            )
        )
    return SuiteReport(max_order, bounds, tuple(entries))
