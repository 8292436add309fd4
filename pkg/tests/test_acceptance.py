"""Acceptance criteria, one test per criterion (criterion 6 is split into
its three legs).  Every check is exact; each test also enforces its stated
wall-clock budget.

Criterion 6's first leg (left absorbing iff the |M|-fold diagonal power of
M is indecomposable) is implemented faithfully and fails: the equivalence
is false at RZ3, where both non-identity elements are right absorbing and
every finite diagonal power is connected although no left absorbing
element exists.  See notes/decisions.md at the repository root's sibling
notes directory for the full analysis.
"""

import random
import time
from itertools import combinations

import pytest

from actopos import (
    congruence_from_pairs,
    connected_components,
    enumerate_monoids,
    enumerate_msets,
    enumerate_points,
    exp_transpose,
    exp_untranspose,
    exponential,
    fixed_points,
    hom_set,
    is_flat,
    is_group,
    is_indecomposable,
    is_projective,
    is_right_collapsible,
    is_right_ore,
    omega,
    preservation_check,
    right_factorable_closure,
    run_suite,
    tensor_hom_adjunction_check,
    trivial_action,
    validate_biset,
)
from actopos.harness import HarnessBounds, _object_stream, profile
from actopos.monoid import element_classes, opposite
from actopos.mset import power_mset, product, regular, sub_msets
from actopos.topos import alpha, left_multiplication_equalizer_pairs
from actopos.enumeration import labeled_actions

from monoids import END2, RZ3
from oracles import (
    full_relabel_key_action,
    full_relabel_key_table,
    naive_monoid_keys,
    naive_mset_keys,
)

BOUNDS = HarnessBounds(mset_size=5)


def all_monoids(max_order=4):
    return [M for n in range(1, max_order + 1) for M in enumerate_monoids(n)]


def enumerated_msets(M, max_size=5):
    return [X for k in range(max_size + 1) for X in enumerate_msets(M, k)]


def budget(t0, seconds, label):
    elapsed = time.monotonic() - t0
    assert elapsed < seconds, f"{label} took {elapsed:.1f}s, budget {seconds}s"
    return elapsed


def test_criterion_01_two_valuedness():
    t0 = time.monotonic()
    for M in all_monoids():
        sc = omega(M)
        assert fixed_points(sc.omega) == {sc.top, sc.empty_ideal}, M.table
    budget(t0, 60, "criterion 1")
    print("criterion 1 PASS: |Gamma(Omega)| = 2 for every monoid of order <= 4")


def test_criterion_02_boolean():
    t0 = time.monotonic()
    for M in all_monoids():
        group = is_group(M)
        assert group == (len(omega(M).ideals) == 2), M.table
        complemented = True
        for X in enumerated_msets(M):
            carrier = set(X.elements())
            for sub in sub_msets(X):
                rest = carrier - sub
                if not all(X.act(x, m) in rest for x in rest for m in M.elements()):
                    complemented = False
                    break
            if not complemented:
                break
        assert group == complemented, M.table
    budget(t0, 60, "criterion 2")
    print("criterion 2 PASS: group <=> two-element classifier <=> all subobjects complemented")


def test_criterion_03_de_morgan():
    t0 = time.monotonic()
    for M in all_monoids():
        ore = is_right_ore(M)
        assert ore == (connected_components(omega(M).omega).count == 2), M.table
        stream = _object_stream(M, BOUNDS)
        assert ore == all(alpha(X).injective for X in stream), M.table
        from actopos.harness import _mono_stream

        mono = preservation_check("C", "mono", _mono_stream(M, BOUNDS))
        assert ore == mono.passed, M.table
    budget(t0, 300, "criterion 3")
    print("criterion 3 PASS: right Ore <=> |C(Omega)|=2 <=> alpha monic <=> C preserves monos")


def test_criterion_04_local():
    t0 = time.monotonic()
    for M in all_monoids():
        local = bool(element_classes(M).right_absorbing)
        stream = _object_stream(M, BOUNDS)
        assert local == all(fixed_points(X) for X in stream if X.size), M.table
        assert local == is_projective(trivial_action(M, 1)), M.table
        assert local == all(alpha(X).surjective for X in stream), M.table
        assert local == (enumerate_points(M, M.order).initial is not None), M.table
    budget(t0, 300, "criterion 4")
    print("criterion 4 PASS: right absorbing <=> fixed points <=> 1 projective <=> alpha epic <=> initial point")


def test_criterion_05_totally_connected():
    t0 = time.monotonic()
    for M in all_monoids():
        collapsible = is_right_collapsible(M)
        assert collapsible == is_flat(
            __import__("actopos.mset", fromlist=["terminal_left"]).terminal_left(M)
        ).flat, M.table
        eq = preservation_check(
            "C", "equalizer", left_multiplication_equalizer_pairs(M)
        )
        assert collapsible == eq.passed, M.table
        strong = is_indecomposable(product(regular(M), regular(M))[0])
        assert collapsible == (is_right_ore(M) and strong), M.table
    budget(t0, 120, "criterion 5")
    print("criterion 5 PASS: right collapsible <=> terminal flat <=> C preserves equalizer witnesses <=> de Morgan and strongly connected")


def test_criterion_06a_colocal_diagonal_power():
    """left_absorbing != {} <=> M^|M| indecomposable, as the criterion states.

    This leg is expected to FAIL: the forward direction holds, but any
    monoid with a right absorbing element already has every finite diagonal
    power indecomposable (absorb each coordinate, then walk them one at a
    time onto the identity), so RZ3 refutes the converse.  The refutation
    route in the source theorem passes through infinite powers, which are
    out of scope.  Analysis in the decisions ledger.
    """
    t0 = time.monotonic()
    failures = []
    for M in all_monoids():
        if M.order**M.order > 256:
            continue
        colocal = bool(element_classes(M).left_absorbing)
        power_connected = is_indecomposable(power_mset(regular(M), M.order))
        if colocal != power_connected:
            failures.append((M.table, colocal, power_connected))
    budget(t0, 300, "criterion 6a")
    if failures:
        print("criterion 6a FAIL: left absorbing <=> diagonal power indecomposable")
        pytest.fail(
            "the stated equivalence is false: "
            + "; ".join(
                f"monoid {t} has left_absorbing={c} but M^|M| indecomposable={p}"
                for t, c, p in failures[:3]
            )
            + f" ({len(failures)} counterexamples of order <= 4; see decisions ledger)"
        )


def test_criterion_06b_colocal_sections():
    t0 = time.monotonic()
    for M in all_monoids():
        colocal = bool(element_classes(M).left_absorbing)
        stream = _object_stream(M, BOUNDS)
        valid_l = None
        for l in M.elements():
            ok = True
            for X in stream:
                part = connected_components(X)
                picks = [set() for _ in range(part.count)]
                for x in X.elements():
                    picks[part.class_ids[x]].add(X.act(x, l))
                if not all(len(p) == 1 for p in picks):
                    ok = False
                    break
            if ok:
                valid_l = l
                break
        assert colocal == (valid_l is not None), M.table
    budget(t0, 300, "criterion 6b")
    print("criterion 6b PASS: left absorbing <=> components enumerated by right translation on every enumerated M-set")


def test_criterion_06c_bilocal_alpha():
    t0 = time.monotonic()
    for M in all_monoids():
        bilocal = element_classes(M).zero is not None
        stream = _object_stream(M, BOUNDS)
        assert bilocal == all(alpha(X).bijective for X in stream), M.table
    budget(t0, 300, "criterion 6c")
    print("criterion 6c PASS: zero element <=> alpha bijective on every enumerated M-set")


def test_criterion_07_named_instances():
    t0 = time.monotonic()
    p = profile(RZ3)
    assert p.strongly_connected and not p.de_morgan
    for M in all_monoids():
        if is_group(M):
            assert profile(M).boolean_atomic
            if M.order > 1:
                assert not profile(M).strongly_connected
    p = profile(END2)
    assert p.local and p.sufficiently_cohesive and not p.de_morgan
    budget(t0, 60, "criterion 7")
    print("criterion 7 PASS: named instances reproduce the qualitative claims")


def test_criterion_08_closure_identity():
    t0 = time.monotonic()
    for M in all_monoids():
        elems = list(M.elements())
        seeds = [(x,) for x in elems] + list(combinations(elems, 2))
        for S in seeds:
            closure = right_factorable_closure(M, S)
            cong = congruence_from_pairs(M, [(s, M.identity) for s in S])
            assert closure == cong.class_of(M.identity), (M.table, S)
    budget(t0, 60, "criterion 8")
    print("criterion 8 PASS: right-factorable closure equals the congruence class of the identity")


def _random_mset(rng, M, max_size):
    k = rng.randint(0, max_size)
    options = enumerate_msets(M, k)
    return rng.choice(options)


def _random_biset(rng, monoids, max_size):
    while True:
        M = rng.choice(monoids)
        N = rng.choice(monoids)
        k = rng.randint(1, max_size)
        lefts = [
            tuple(tuple(row) for row in zip(*action))
            for action in labeled_actions(opposite(M), k)
        ]
        rights = list(labeled_actions(N, k))
        rng.shuffle(lefts)
        for left in lefts:
            compatible = [
                r
                for r in rights
                if all(
                    r[left[m][b]][n] == left[m][r[b][n]]
                    for m in range(M.order)
                    for b in range(k)
                    for n in range(N.order)
                )
            ]
            if compatible:
                return validate_biset(M, N, left, rng.choice(compatible))


def test_criterion_09_adjunction_roundtrips():
    t0 = time.monotonic()
    rng = random.Random(1789)
    monoids = [M for n in (1, 2, 3) for M in enumerate_monoids(n)]
    instances = 0
    while instances < 60:
        M = rng.choice(monoids)
        P = _random_mset(rng, M, 3)
        Q = _random_mset(rng, M, 3)
        X = _random_mset(rng, M, 3)
        exp = exponential(P, Q)
        XP, _, _ = product(X, P)
        for f in hom_set(XP, Q):
            g = exp_transpose(exp, X, f)
            assert exp_untranspose(exp, X, g).map == f.map
        for g in hom_set(X, exp.mset):
            f = exp_untranspose(exp, X, g)
            assert exp_transpose(exp, X, f).map == g.map
        assert len(hom_set(XP, Q)) == len(hom_set(X, exp.mset))
        instances += 1
    while instances < 100:
        B = _random_biset(rng, monoids, 3)
        Y = _random_mset(rng, B.left_monoid, 3)
        X = _random_mset(rng, B.right_monoid, 3)
        verdict = tensor_hom_adjunction_check(B, [(Y, X)])
        assert verdict.ok, verdict.failure
        instances += 1
    budget(t0, 60, "criterion 9")
    print("criterion 9 PASS: 100 seeded adjunction roundtrips are mutually inverse")


def test_criterion_10_enumeration_soundness():
    t0 = time.monotonic()
    for n in (1, 2, 3):
        ours = {full_relabel_key_table(M.table) for M in enumerate_monoids(n)}
        assert ours == naive_monoid_keys(n)
    for M in [m for n in (1, 2, 3) for m in enumerate_monoids(n)]:
        for k in (0, 1, 2, 3):
            ours = {full_relabel_key_action(X.action) for X in enumerate_msets(M, k)}
            assert ours == naive_mset_keys(M, k), (M.table, k)
    budget(t0, 60, "criterion 10")
    print("criterion 10 PASS: pruned enumerators match the naive oracles as exact sets")


def test_criterion_11_full_suite():
    t0 = time.monotonic()
    suite = run_suite(4)
    elapsed = budget(t0, 600, "criterion 11")
    assert suite.disagreement_count == 0, [
        (e.monoid.table, e.disagreements) for e in suite.entries if e.disagreements
    ]
    assert len(suite.entries) == 45
    print(f"criterion 11 PASS: run_suite(4) reports zero disagreements in {elapsed:.1f}s")
