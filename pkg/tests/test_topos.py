import pytest

from actopos import (
    BoundTooSmall,
    NotSubMSet,
    alpha,
    chi_for_C,
    classify,
    connected_components,
    enumerate_monoids,
    enumerate_msets,
    exp_transpose,
    exp_untranspose,
    exponential,
    fixed_points,
    hom_set,
    omega,
    preservation_check,
    pullback_of_top,
    theta_for_C,
    trivial_action,
    validate_right_mset,
)
from actopos.mset import MSetMorphism, product, regular, sub_msets
from actopos.topos import (
    ProductInstance,
    left_multiplication_equalizer_pairs,
    right_ideal_inclusions,
)

from monoids import C2, C3, E2, END2, LZ3, RZ3, T1
from oracles import brute_exponential_size, brute_right_ideals


def small_monoids():
    return [M for n in (1, 2, 3) for M in enumerate_monoids(n)]


class TestOmega:
    def test_trivial(self):
        assert len(omega(T1).ideals) == 2

    @pytest.mark.parametrize("G", [C2, C3])
    def test_groups_have_two_ideals(self, G):
        assert len(omega(G).ideals) == 2

    def test_e2(self):
        sc = omega(E2)
        assert sc.ideals == (frozenset(), frozenset({1}), frozenset({0, 1}))

    def test_counts(self):
        assert len(omega(RZ3).ideals) == 5
        assert len(omega(END2).ideals) == 5
        assert len(omega(LZ3).ideals) == 3

    def test_against_subset_oracle(self):
        for M in small_monoids() + [END2]:
            assert set(omega(M).ideals) == set(brute_right_ideals(M))

    def test_omega_action_is_valid(self):
        for M in small_monoids() + [END2]:
            validate_right_mset(M, omega(M).omega.action)

    def test_top_and_empty_are_fixed(self):
        for M in small_monoids() + [END2]:
            sc = omega(M)
            assert fixed_points(sc.omega) >= {sc.top, sc.empty_ideal}

    def test_exactly_two_fixed_ideals(self):
        # the action category is two-valued for every monoid
        for M in small_monoids() + [END2]:
            sc = omega(M)
            assert fixed_points(sc.omega) == {sc.top, sc.empty_ideal}


class TestClassify:
    def test_rz3_singleton_sub(self):
        sc = omega(RZ3)
        s = classify(sc, regular(RZ3), {1})
        assert sc.ideals[s.map[0]] == frozenset({1})
        assert sc.ideals[s.map[1]] == frozenset({0, 1, 2})
        assert sc.ideals[s.map[2]] == frozenset()

    def test_whole_and_empty(self):
        sc = omega(E2)
        reg = regular(E2)
        assert set(classify(sc, reg, {0, 1}).map) == {sc.top}
        assert set(classify(sc, reg, set()).map) == {sc.empty_ideal}

    def test_not_a_sub(self):
        with pytest.raises(NotSubMSet):
            classify(omega(C2), regular(C2), {0})

    def test_roundtrip_both_ways(self):
        for M in small_monoids():
            sc = omega(M)
            for X in enumerate_msets(M, 3):
                for sub in sub_msets(X):
                    s = classify(sc, X, sub)
                    assert pullback_of_top(sc, s) == sub
                # every morphism into omega classifies its own pullback
                for s in hom_set(X, sc.omega):
                    back = classify(sc, X, pullback_of_top(sc, s))
                    assert back.map == s.map


class TestExponential:
    def test_c2_self_exponential(self):
        exp = exponential(regular(C2), regular(C2))
        assert exp.size == 4
        assert exp.size == brute_exponential_size(C2, regular(C2), regular(C2))

    def test_trivial_monoid_function_set(self):
        P = trivial_action(T1, 3)
        Q = trivial_action(T1, 2)
        assert exponential(P, Q).size == 2**3

    def test_carrier_action_valid(self):
        exp = exponential(regular(E2), regular(E2))
        validate_right_mset(E2, exp.mset.action)

    def test_evaluation_equivariant(self):
        P = Q = regular(RZ3)
        exp = exponential(P, Q)
        EP, pr1, pr2 = product(exp.mset, P)
        ev = tuple(
            exp.evaluate(pr1.map[z], pr2.map[z]) for z in EP.elements()
        )
        m = MSetMorphism(EP, Q, ev)
        from actopos.mset import is_equivariant

        assert is_equivariant(m)

    def test_adjunction_cardinality(self):
        for M in (C2, E2):
            for kp in (1, 2):
                for kq in (1, 2):
                    for kx in (1, 2):
                        for P in enumerate_msets(M, kp):
                            for Q in enumerate_msets(M, kq):
                                exp = exponential(P, Q)
                                for X in enumerate_msets(M, kx):
                                    XP, _, _ = product(X, P)
                                    assert len(hom_set(XP, Q)) == len(
                                        hom_set(X, exp.mset)
                                    )

    def test_transpose_roundtrip(self):
        M = E2
        P = regular(M)
        Q = regular(M)
        X = trivial_action(M, 2)
        exp = exponential(P, Q)
        XP, _, _ = product(X, P)
        for f in hom_set(XP, Q):
            g = exp_transpose(exp, X, f)
            assert exp_untranspose(exp, X, g).map == f.map
        for g in hom_set(X, exp.mset):
            f = exp_untranspose(exp, X, g)
            assert exp_transpose(exp, X, f).map == g.map

    def test_transpose_natural_in_source(self):
        # transpose(f o (h x id)) = transpose(f) o h
        M = E2
        P = regular(M)
        Q = regular(M)
        X = regular(M)
        X2 = trivial_action(M, 2)
        exp = exponential(P, Q)
        XP, _, _ = product(X, P)
        X2P, _, _ = product(X2, P)
        for h in hom_set(X2, X):
            for f in hom_set(XP, Q):
                pulled = MSetMorphism(
                    X2P,
                    Q,
                    tuple(
                        f.map[h.map[x2] * P.size + p]
                        for x2 in X2.elements()
                        for p in range(P.size)
                    ),
                )
                lhs = exp_transpose(exp, X2, pulled)
                rhs = tuple(exp_transpose(exp, X, f).map[h.map[x2]] for x2 in X2.elements())
                assert lhs.map == rhs


class TestAlpha:
    def test_end2_regular_epic_not_monic(self):
        a = alpha(regular(END2))
        assert a.surjective and not a.injective

    def test_e2_omega_monic(self):
        a = alpha(omega(E2).omega)
        assert a.injective

    def test_trivial_actions_bijective(self):
        a = alpha(trivial_action(RZ3, 3))
        assert a.bijective


class TestTheta:
    def test_trivial_monoid_iso(self):
        t = theta_for_C(trivial_action(T1, 2), trivial_action(T1, 2))
        assert t.well_defined and t.iso

    def test_c2_self_not_mono(self):
        # C(M^M) has three components over the singleton function set
        t = theta_for_C(regular(C2), regular(C2))
        assert t.well_defined and not t.mono and not t.iso

    def test_finite_power_always_well_defined(self):
        for M in small_monoids():
            t = theta_for_C(trivial_action(M, 2), regular(M))
            assert t.well_defined

    def test_representative_dependence_detected(self):
        # over a group, M x P splits into several components that a map to a
        # trivial-action target can separate, so the defining formula is not
        # representative-independent
        t = theta_for_C(regular(C2), trivial_action(C2, 2))
        assert not t.well_defined


class TestChi:
    def test_values(self):
        assert chi_for_C(E2) == (2, True)
        assert chi_for_C(RZ3) == (1, False)
        assert chi_for_C(C3) == (2, True)
        assert chi_for_C(END2) == (1, False)


class TestPreservation:
    def test_c_mono_fails_on_rz3(self):
        report = preservation_check("C", "mono", right_ideal_inclusions(RZ3))
        assert not report.passed
        assert report.witness["kind"] == "mono"

    def test_c_mono_passes_on_e2(self):
        report = preservation_check("C", "mono", right_ideal_inclusions(E2))
        assert report.passed

    def test_gamma_epi_passes_on_end2(self):
        from actopos.harness import HarnessBounds, _epi_stream

        report = preservation_check("GAMMA", "epi", _epi_stream(END2, HarnessBounds()))
        assert report.passed

    def test_c_equalizer_passes_on_max2(self):
        report = preservation_check(
            "C", "equalizer", left_multiplication_equalizer_pairs(E2)
        )
        assert report.passed

    def test_c_equalizer_fails_on_c2(self):
        report = preservation_check(
            "C", "equalizer", left_multiplication_equalizer_pairs(C2)
        )
        assert not report.passed

    def test_c_product_fails_on_group(self):
        report = preservation_check(
            "C", "product", [ProductInstance(regular(C2), regular(C2))]
        )
        assert not report.passed

    def test_gamma_limits_always_pass(self):
        insts = [ProductInstance(regular(RZ3), trivial_action(RZ3, 2))]
        assert preservation_check("GAMMA", "product", insts).passed

    def test_empty_stream_raises(self):
        with pytest.raises(BoundTooSmall):
            preservation_check("C", "mono", [])
