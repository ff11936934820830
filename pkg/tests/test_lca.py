import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tauharm import (
    Character,
    DomainError,
    FiniteLcaGroup,
    KFunction,
    SideMismatchError,
    StructureError,
    char_eval,
    fourier_transform,
    inner_product,
    inverse_fourier_transform,
)

from _oracles import char_value, elements


class TestGroupArithmetic:
    def test_cyclic_add(self):
        K = FiniteLcaGroup((4,))
        assert K.add((3,), (2,)) == (1,)

    def test_identity(self):
        K = FiniteLcaGroup((4,))
        for k in K.elements():
            assert K.add(K.identity, k) == k

    def test_componentwise(self):
        K = FiniteLcaGroup((2, 3))
        assert K.add((1, 2), (1, 2)) == (0, 1)

    def test_negate(self):
        K = FiniteLcaGroup((2, 3))
        for k in K.elements():
            assert K.add(k, K.negate(k)) == (0, 0)

    def test_index_roundtrip(self):
        K = FiniteLcaGroup((2, 3, 4))
        for i in range(K.order):
            assert K.index_of(K.element_at(i)) == i
        table = K.coords_table()
        assert np.array_equal(K.index_table(table), np.arange(K.order))

    def test_dimension_mismatch(self):
        K = FiniteLcaGroup((4,))
        with pytest.raises(StructureError):
            K.add((1, 2), (0,))

    def test_out_of_range_rejected(self):
        K = FiniteLcaGroup((4,))
        with pytest.raises(StructureError):
            K.check_member((4,))

    def test_bad_divisors(self):
        with pytest.raises(DomainError):
            FiniteLcaGroup((0, 3))
        with pytest.raises(DomainError):
            FiniteLcaGroup(())

    def test_order_cap(self, monkeypatch):
        monkeypatch.setenv("TAUH_MAX_ORDER", "100")
        with pytest.raises(DomainError):
            FiniteLcaGroup((101,))
        FiniteLcaGroup((100,))


class TestCharacters:
    def test_values_on_z4(self):
        K = FiniteLcaGroup((4,))
        assert char_eval(K, (1,), (1,)) == pytest.approx(1j)
        assert char_eval(K, (2,), (3,)) == pytest.approx(-1)

    def test_trivial_character(self):
        K = FiniteLcaGroup((2, 3))
        for k in K.elements():
            assert char_eval(K, (0, 0), k) == pytest.approx(1)

    def test_unit_modulus(self):
        K = FiniteLcaGroup((3, 4))
        for omega in K.elements():
            for k in K.elements():
                assert abs(char_eval(K, omega, k)) == pytest.approx(1.0)

    @pytest.mark.parametrize("divisors", [(6,), (8,), (2, 3)])
    def test_homomorphism_exhaustive(self, divisors):
        K = FiniteLcaGroup(divisors)
        for omega in K.elements():
            chi = Character(K, omega)
            for a in K.elements():
                for b in K.elements():
                    assert chi(K.add(a, b)) == pytest.approx(chi(a) * chi(b))

    def test_matches_bruteforce_value(self):
        divisors = (2, 4)
        K = FiniteLcaGroup(divisors)
        for omega in elements(divisors):
            for k in elements(divisors):
                assert char_eval(K, omega, k) == pytest.approx(char_value(divisors, omega, k))

    def test_phase_is_exact_integer(self):
        K = FiniteLcaGroup((2, 4))
        assert K.char_phase((1, 0), (1, 0)) == 2  # exponent lcm = 4
        assert K.char_phase((0, 1), (0, 3)) == 3

    def test_orthogonality(self):
        K = FiniteLcaGroup((12,))
        chars = [
            KFunction(K, [char_eval(K, omega, k) for k in K.elements()]) for omega in K.elements()
        ]
        for i, u in enumerate(chars):
            for j, v in enumerate(chars):
                expected = K.order if i == j else 0.0
                assert inner_product(u, v, "haar") == pytest.approx(expected, abs=1e-9)


class TestFourier:
    def test_delta_to_ones(self):
        K = FiniteLcaGroup((4,))
        vhat = fourier_transform(KFunction(K, [1, 0, 0, 0]))
        assert np.allclose(vhat.values, 1.0)

    def test_constant_to_scaled_delta(self):
        K = FiniteLcaGroup((4,))
        vhat = fourier_transform(KFunction(K, [1, 1, 1, 1]))
        assert np.allclose(vhat.values, [4, 0, 0, 0], atol=1e-12)

    def test_character_to_peak(self):
        K = FiniteLcaGroup((4,))
        vhat = fourier_transform(KFunction(K, [1, 1j, -1, -1j]))
        assert np.allclose(vhat.values, [0, 4, 0, 0], atol=1e-12)

    def test_inverse_of_constant(self):
        K = FiniteLcaGroup((4,))
        v = inverse_fourier_transform(KFunction(K, [1, 1, 1, 1], side="dual"))
        assert np.allclose(v.values, [1, 0, 0, 0], atol=1e-13)

    def test_inverse_of_peak(self):
        K = FiniteLcaGroup((4,))
        v = inverse_fourier_transform(KFunction(K, [4, 0, 0, 0], side="dual"))
        assert np.allclose(v.values, 1.0)

    def test_roundtrip_z2xz3(self, rng):
        K = FiniteLcaGroup((2, 3))
        v = KFunction(K, rng.standard_normal(6) + 1j * rng.standard_normal(6))
        back = inverse_fourier_transform(fourier_transform(v))
        assert np.max(np.abs(back.values - v.values)) < 1e-12

    def test_linearity(self, rng):
        K = FiniteLcaGroup((5,))
        u = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        lhs = fourier_transform(KFunction(K, 2.0 * u + 3j * v)).values
        rhs = 2.0 * fourier_transform(KFunction(K, u)).values + 3j * fourier_transform(KFunction(K, v)).values
        assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_side_guard(self):
        K = FiniteLcaGroup((4,))
        with pytest.raises(SideMismatchError):
            fourier_transform(KFunction(K, np.ones(4), side="dual"))
        with pytest.raises(SideMismatchError):
            inverse_fourier_transform(KFunction(K, np.ones(4)))

    def test_values_immutable(self):
        K = FiniteLcaGroup((4,))
        v = KFunction(K, np.ones(4))
        with pytest.raises(ValueError):
            v.values[0] = 2.0

    def test_nonfinite_rejected(self):
        K = FiniteLcaGroup((4,))
        with pytest.raises(StructureError):
            KFunction(K, [1, np.nan, 0, 0])


class TestInnerProduct:
    def test_delta_haar(self):
        K = FiniteLcaGroup((4,))
        v = KFunction(K, [1, 0, 0, 0])
        assert inner_product(v, v, "haar") == pytest.approx(1.0)

    def test_constant_plancherel(self):
        K = FiniteLcaGroup((4,))
        u = KFunction(K, np.ones(4), side="dual")
        assert inner_product(u, u, "plancherel") == pytest.approx(1.0)

    def test_parseval_identity_z6(self, rng):
        # both sides evaluated independently: primal pairing of f with the
        # synthesis of phi vs dual pairing of the transform of f with phi
        K = FiniteLcaGroup((6,))
        f = KFunction(K, rng.standard_normal(6) + 1j * rng.standard_normal(6))
        phi = KFunction(K, rng.standard_normal(6) + 1j * rng.standard_normal(6), side="dual")
        lhs = inner_product(f, inverse_fourier_transform(phi), "haar")
        rhs = inner_product(fourier_transform(f), phi, "plancherel")
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_mixed_groups_rejected(self):
        u = KFunction(FiniteLcaGroup((4,)), np.ones(4))
        v = KFunction(FiniteLcaGroup((2, 2)), np.ones(4))
        with pytest.raises(StructureError):
            inner_product(u, v, "haar")

    def test_measure_side_guard(self):
        K = FiniteLcaGroup((4,))
        v = KFunction(K, np.ones(4))
        with pytest.raises(StructureError):
            inner_product(v, v, "plancherel")
        with pytest.raises(StructureError):
            inner_product(v, v, "lebesgue")


@st.composite
def group_and_function(draw):
    divisors = tuple(draw(st.lists(st.integers(1, 6), min_size=1, max_size=3)))
    K = FiniteLcaGroup(divisors)
    reals = draw(
        st.lists(
            st.floats(-10, 10, allow_nan=False), min_size=2 * K.order, max_size=2 * K.order
        )
    )
    values = np.asarray(reals[: K.order]) + 1j * np.asarray(reals[K.order :])
    return K, KFunction(K, values)


@settings(max_examples=60, deadline=None)
@given(group_and_function())
def test_plancherel_unitarity_property(gf):
    _, v = gf
    vhat = fourier_transform(v)
    assert inner_product(v, v, "haar").real == pytest.approx(
        inner_product(vhat, vhat, "plancherel").real, rel=1e-10, abs=1e-10
    )


@settings(max_examples=60, deadline=None)
@given(group_and_function())
def test_inversion_property(gf):
    _, v = gf
    back = inverse_fourier_transform(fourier_transform(v))
    assert np.max(np.abs(back.values - v.values)) < 1e-10
