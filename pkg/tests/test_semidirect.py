import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauharm import (
    Automorphism,
    FiniteLcaGroup,
    GroupFunction,
    KFunction,
    StructureError,
    TauSystem,
    double_dual_theta,
    random_group_function,
    trivial_system,
)
from tauharm.catalog import finite_affine, finite_heisenberg


@pytest.fixture(scope="module")
def aff5():
    return finite_affine(5).system


@pytest.fixture(scope="module")
def aff4():
    return finite_affine(4).system


class TestGroupLaw:
    def test_multiply_hand_example(self, aff5):
        assert aff5.multiply((2, (1,)), (3, (4,))) == (1, (4,))

    def test_identity(self, aff5):
        e = aff5.identity
        for x in aff5.elements():
            assert aff5.multiply(e, x) == x
            assert aff5.multiply(x, e) == x

    def test_invert_hand_example(self, aff5):
        assert aff5.invert((2, (1,))) == (3, (2,))
        assert aff5.multiply((2, (1,)), (3, (2,))) == aff5.identity

    def test_invert_identity(self, aff5):
        assert aff5.invert(aff5.identity) == aff5.identity

    def test_invert_zero_component(self, aff5):
        assert aff5.invert((2, (0,))) == (3, (0,))

    def test_associativity_random_triples(self, rng):
        sys7 = finite_affine(7).system
        elems = list(sys7.elements())
        for _ in range(200):
            x, y, z = (elems[rng.integers(len(elems))] for _ in range(3))
            assert sys7.multiply(sys7.multiply(x, y), z) == sys7.multiply(x, sys7.multiply(y, z))

    def test_axioms_exhaustive(self, aff5):
        elems = list(aff5.elements())
        for x in elems:
            assert aff5.multiply(x, aff5.invert(x)) == aff5.identity
            for y in elems:
                for z in elems:
                    assert aff5.multiply(aff5.multiply(x, y), z) == aff5.multiply(
                        x, aff5.multiply(y, z)
                    )

    def test_unknown_label(self, aff5):
        with pytest.raises(StructureError):
            aff5.multiply((0, (1,)), (1, (0,)))


class TestValidation:
    def test_broken_cayley(self):
        K = FiniteLcaGroup((5,))
        auts = [Automorphism(K, [[1]]), Automorphism(K, [[2]])]
        with pytest.raises(StructureError):
            TauSystem(K, [1, 2], auts, [[0, 1], [0, 1]])  # column duplicated: no identity

    def test_action_not_homomorphism(self):
        K = FiniteLcaGroup((5,))
        auts = [Automorphism(K, [[1]]), Automorphism(K, [[2]])]
        # Z2 Cayley table, but 2*2 = 4 != 1 in Aut
        with pytest.raises(StructureError):
            TauSystem(K, [0, 1], auts, [[0, 1], [1, 0]])

    def test_identity_label_must_act_trivially(self):
        K = FiniteLcaGroup((5,))
        auts = [Automorphism(K, [[2]]), Automorphism(K, [[3]])]
        with pytest.raises(StructureError):
            TauSystem(K, [0, 1], auts, [[0, 1], [1, 0]])

    def test_nontrivial_weights_rejected_as_nonmultiplicative(self):
        # a positive homomorphism from a finite group is identically 1, so a
        # table of 2s cannot satisfy the multiplicativity validation
        K = FiniteLcaGroup((5,))
        auts = [Automorphism(K, [[1]]), Automorphism(K, [[4]])]
        cayley = [[0, 1], [1, 0]]
        with pytest.raises(StructureError):
            TauSystem(K, [0, 1], auts, cayley, delta=[1.0, 2.0])

    def test_duplicate_labels(self):
        K = FiniteLcaGroup((5,))
        with pytest.raises(StructureError):
            TauSystem(K, [1, 1], [Automorphism(K, [[1]])] * 2, [[0, 1], [1, 0]])

    def test_order_cap(self, monkeypatch):
        monkeypatch.setenv("TAUH_MAX_ORDER", "30")
        with pytest.raises(Exception):
            finite_affine(7)  # 6 * 7 = 42 > 30


class TestOmegaAction:
    def test_z4_action(self, aff4):
        assert aff4.omega_action(3, (1,)) == (3,)

    def test_identity_action(self, aff4):
        for omega in aff4.normal_factor.elements():
            assert aff4.omega_action(1, omega) == omega

    def test_cocycle_exhaustive_units_z8(self):
        sys8 = finite_affine(8).system
        K = sys8.normal_factor
        for t in sys8.labels:
            for h in sys8.labels:
                th = sys8.labels[sys8.cayley[sys8.label_index(t), sys8.label_index(h)]]
                for omega in K.elements():
                    assert sys8.omega_action(th, omega) == sys8.omega_action(
                        t, sys8.omega_action(h, omega)
                    )

    def test_result_is_character_index(self, aff5):
        # acted characters still satisfy the homomorphism law
        K = aff5.normal_factor
        acted = aff5.omega_action(2, (1,))
        for a in K.elements():
            for b in K.elements():
                assert K.char_phase(acted, K.add(a, b)) == (
                    K.char_phase(acted, a) + K.char_phase(acted, b)
                ) % K.exponent


class TestDualSystem:
    def test_dual_action_matches_modular_inverse(self, aff5):
        dual = aff5.dual()
        for h in aff5.labels:
            hinv = pow(h, -1, 5)
            for j in range(5):
                assert dual.automorphisms[dual.label_index(h)].apply((j,)) == ((j * hinv) % 5,)

    def test_trivial_acting_group_gives_classical_dual(self):
        sys_triv = trivial_system(FiniteLcaGroup((6,)))
        dual = sys_triv.dual()
        assert dual.automorphisms[0].is_identity

    def test_dual_weights_inverted(self, aff5):
        assert np.allclose(aff5.dual().delta, 1.0 / aff5.delta)

    def test_dual_law_in_dual_system(self):
        heis = finite_heisenberg(5)
        assert heis.dual_system.multiply((1, (2, 3)), (2, (4, 1))) == (3, (0, 4))


class TestDoubleDual:
    def test_theta_identity_element(self, aff5):
        assert double_dual_theta(aff5, aff5.identity) == aff5.identity

    def test_theta_homomorphism_exhaustive(self, aff5):
        dd = aff5.double_dual()
        elems = list(aff5.elements())
        assert len(elems) == 20
        for x in elems:
            for y in elems:
                assert double_dual_theta(aff5, aff5.multiply(x, y)) == dd.multiply(
                    double_dual_theta(aff5, x), double_dual_theta(aff5, y)
                )

    def test_double_dual_equals_original(self, aff5):
        assert aff5.double_dual() == aff5

    def test_pointwise_compatibility_z4(self, aff4):
        # evaluation character of tau_h(k) equals the double-dual action of h
        # on the evaluation character of k: integer-phase equality at every
        # (h, k, omega)
        K = aff4.normal_factor
        for h in aff4.labels:
            hinv_idx = aff4.inverse_index[aff4.label_index(h)]
            hinv = aff4.labels[hinv_idx]
            aut = aff4.automorphisms[aff4.label_index(h)]
            for k in K.elements():
                moved = aut.apply(k)
                for omega in K.elements():
                    assert K.char_phase(omega, moved) == K.char_phase(
                        aff4.omega_action(hinv, omega), k
                    )


class TestHaarAndPushforward:
    def test_pushforward_exact_for_all_labels(self, rng):
        sys8 = finite_affine(8).system
        for label in sys8.labels:
            g = KFunction(sys8.normal_factor, rng.random(8), side="dual")
            lhs, rhs = sys8.pushforward_check(label, g)
            assert lhs == rhs  # fsum over the same multiset: exactly equal

    def test_pushforward_constant(self, aff5):
        g = KFunction(aff5.normal_factor, np.ones(5), side="dual")
        lhs, rhs = aff5.pushforward_check(2, g)
        assert lhs == rhs == pytest.approx(1.0)

    def test_pushforward_rejects_signed(self, aff5):
        g = KFunction(aff5.normal_factor, [-1, 0, 0, 0, 0], side="dual")
        with pytest.raises(StructureError):
            aff5.pushforward_check(2, g)

    def test_left_invariance_primal_and_dual(self, rng):
        for sys in (finite_affine(5).system, finite_affine(5).system.dual()):
            f = rng.standard_normal((sys.acting_order, 5)) + 1j * rng.standard_normal(
                (sys.acting_order, 5)
            )
            weights = np.asarray(sys.delta)[:, None]
            base = np.sum(weights * f)
            for g0 in sys.elements():
                total = 0j
                for i, h in enumerate(sys.labels):
                    for k in sys.normal_factor.elements():
                        hh, kk = sys.multiply(sys.invert(g0), (h, k))
                        total += sys.delta[i] * f[sys.label_index(hh), sys.normal_factor.index_of(kk)]
                assert abs(total - base) < 1e-10


class TestModular:
    def test_finite_is_one(self, aff5):
        for x in aff5.elements():
            assert aff5.modular_function(x) == 1.0

    def test_multiplicative(self, aff5, rng):
        elems = list(aff5.elements())
        for _ in range(50):
            x, y = (elems[rng.integers(len(elems))] for _ in range(2))
            assert aff5.modular_function(aff5.multiply(x, y)) == pytest.approx(
                aff5.modular_function(x) * aff5.modular_function(y)
            )


class TestGroupFunction:
    def test_weights_primal_dual(self, aff5):
        f = GroupFunction.zeros(aff5, "primal")
        assert np.allclose(f.slice_weights(), 1.0)
        F = GroupFunction.zeros(aff5, "dual")
        assert np.allclose(F.slice_weights(), 1.0 / 5.0)

    def test_norm_matches_direct_sum(self, aff5, rng):
        f = random_group_function(aff5, "primal", rng)
        direct = sum(
            aff5.delta[i] * np.sum(np.abs(f.values[i]) ** 2) for i in range(aff5.acting_order)
        )
        assert f.norm_sq() == pytest.approx(direct)
        assert f.norm() == pytest.approx(math.sqrt(direct))

    def test_row_is_view(self, aff5, rng):
        f = random_group_function(aff5, "primal", rng)
        row = f.row(2)
        assert row.base is f.values
        assert not row.flags.writeable

    def test_call_by_element(self, aff5, rng):
        f = random_group_function(aff5, "primal", rng)
        assert f((2, (3,))) == f.values[aff5.label_index(2), 3]

    def test_shape_guard(self, aff5):
        with pytest.raises(StructureError):
            GroupFunction(aff5, "primal", np.zeros((3, 5)))

    def test_side_guard(self, aff5):
        with pytest.raises(StructureError):
            GroupFunction(aff5, "sideways", np.zeros((4, 5)))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 12), seed=st.integers(0, 2**32 - 1))
def test_units_systems_satisfy_axioms(n, seed):
    sys = finite_affine(n).system
    rng = np.random.default_rng(seed)
    elems = list(sys.elements())
    x, y = (elems[rng.integers(len(elems))] for _ in range(2))
    assert sys.multiply(sys.invert(x), x) == sys.identity
    assert sys.invert(sys.invert(y)) == y
