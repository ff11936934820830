import numpy as np
import pytest

from tauharm import (
    FiniteLcaGroup,
    GroupFunction,
    KFunction,
    SideMismatchError,
    StructureError,
    fourier_transform,
    random_group_function,
    trivial_system,
)
from tauharm.catalog import finite_affine, finite_heisenberg, finite_motion
from tauharm.transforms import (
    PARSEVAL_IDENTITIES,
    gen_tau_fourier,
    gen_tau_fourier_inverse,
    parseval_residual,
    preimage,
    synthesize,
    tau_fourier,
    tau_fourier_inverse,
    transform_relation_residual,
)

ENTRIES = [finite_affine(4), finite_affine(5), finite_affine(7), finite_heisenberg(3), finite_motion(4)]


@pytest.fixture(scope="module")
def aff4():
    return finite_affine(4).system


class TestPlainTransform:
    def test_trivial_acting_group_reduces_to_group_transform(self, rng):
        K = FiniteLcaGroup((6,))
        sys = trivial_system(K)
        v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        rows = tau_fourier(GroupFunction(sys, "primal", v[None, :])).function.values
        expected = fourier_transform(KFunction(K, v)).values
        assert np.max(np.abs(rows[0] - expected)) < 1e-13

    def test_delta_function_rows(self, aff4):
        values = np.zeros((2, 4), dtype=complex)
        values[aff4.label_index(3), 0] = 1.0
        F = tau_fourier(GroupFunction(aff4, "primal", values)).function
        assert np.allclose(F.row(3), 1.0)
        assert np.allclose(F.row(1), 0.0)

    def test_plancherel_random(self):
        sys7 = finite_affine(7).system
        rng = np.random.default_rng(7)
        for _ in range(20):
            f = random_group_function(sys7, "primal", rng)
            result = tau_fourier(f)
            assert abs(result.function.norm_sq() - f.norm_sq()) / f.norm_sq() < 1e-10
            assert result.source_norm == pytest.approx(f.norm())

    def test_side_guard(self, aff4):
        with pytest.raises(SideMismatchError):
            tau_fourier(GroupFunction.zeros(aff4, "dual"))
        with pytest.raises(SideMismatchError):
            tau_fourier_inverse(GroupFunction.zeros(aff4, "primal"))


class TestInverse:
    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_roundtrip(self, entry, rng):
        f = random_group_function(entry.system, "primal", rng)
        back = tau_fourier_inverse(tau_fourier(f).function)
        assert np.max(np.abs(back.values - f.values)) < 1e-12

    def test_zero_maps_to_zero(self, aff4):
        out = tau_fourier_inverse(GroupFunction.zeros(aff4, "dual"))
        assert np.all(out.values == 0)

    def test_constant_rows_to_indicator(self, aff4):
        F = GroupFunction(aff4, "dual", np.ones((2, 4)))
        f = tau_fourier_inverse(F)
        expected = np.zeros((2, 4))
        expected[:, 0] = 1.0  # weight 1 on the identity of K since delta = 1
        assert np.allclose(f.values, expected, atol=1e-13)


class TestGeneralizedTransform:
    def test_trivial_acting_group_reduces_to_group_transform(self, rng):
        K = FiniteLcaGroup((5,))
        sys = trivial_system(K)
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        rows = gen_tau_fourier(GroupFunction(sys, "primal", v[None, :])).function.values
        expected = fourier_transform(KFunction(K, v)).values
        assert np.max(np.abs(rows[0] - expected)) < 1e-13

    def test_character_row_reindexed(self, aff4):
        values = np.zeros((2, 4), dtype=complex)
        values[aff4.label_index(3)] = [1, 1j, -1, -1j]
        F = gen_tau_fourier(GroupFunction(aff4, "primal", values)).function
        assert np.allclose(F.row(3), [0, 0, 0, 4], atol=1e-12)
        assert np.allclose(F.row(1), 0.0)

    def test_isometry_random(self):
        sys5 = finite_affine(5).system
        rng = np.random.default_rng(5)
        for _ in range(20):
            f = random_group_function(sys5, "primal", rng)
            F = gen_tau_fourier(f).function
            assert abs(F.norm_sq() - f.norm_sq()) / f.norm_sq() < 1e-10

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_roundtrip(self, entry, rng):
        f = random_group_function(entry.system, "primal", rng)
        back = gen_tau_fourier_inverse(gen_tau_fourier(f).function)
        assert np.max(np.abs(back.values - f.values)) < 1e-12

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_inverse_consistency_across_pipelines(self, entry, rng):
        f = random_group_function(entry.system, "primal", rng)
        via_plain = tau_fourier_inverse(tau_fourier(f).function)
        via_gen = gen_tau_fourier_inverse(gen_tau_fourier(f).function)
        assert np.max(np.abs(via_plain.values - via_gen.values)) < 1e-12

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_relation_between_transforms(self, entry, rng):
        f = random_group_function(entry.system, "primal", rng)
        assert transform_relation_residual(f) < 1e-12


class TestSynthesize:
    def test_zero(self, aff4):
        g = synthesize(GroupFunction.zeros(aff4, "dual"), "plain")
        assert np.all(g.values == 0)

    def test_plain_matches_rowwise_synthesis(self, aff4, rng):
        from tauharm import inverse_fourier_transform

        Psi = random_group_function(aff4, "dual", rng)
        g = synthesize(Psi, "plain")
        K = aff4.normal_factor
        for i, label in enumerate(aff4.labels):
            row = inverse_fourier_transform(KFunction(K, Psi.values[i], side="dual")).values
            assert np.max(np.abs(g.row(label) - row)) < 1e-13

    def test_twisted_at_identity_row_reduces_to_plain(self, aff4, rng):
        Psi = random_group_function(aff4, "dual", rng)
        plain = synthesize(Psi, "plain")
        twisted = synthesize(Psi, "twisted")
        e = aff4.labels[aff4.identity_index]
        assert np.max(np.abs(plain.row(e) - twisted.row(e))) < 1e-13

    def test_twisted_trivial_group_equals_plain(self, rng):
        sys = trivial_system(FiniteLcaGroup((6,)))
        Psi = random_group_function(sys, "dual", rng)
        assert np.allclose(synthesize(Psi, "plain").values, synthesize(Psi, "twisted").values)

    def test_unknown_variant(self, aff4):
        with pytest.raises(StructureError):
            synthesize(GroupFunction.zeros(aff4, "dual"), "sideways")


class TestParseval:
    @pytest.mark.parametrize("identity", PARSEVAL_IDENTITIES)
    def test_random_pairs_z5(self, identity):
        sys5 = finite_affine(5).system
        rng = np.random.default_rng(42)
        for _ in range(20):
            f = random_group_function(sys5, "primal", rng)
            Psi = random_group_function(sys5, "dual", rng)
            assert parseval_residual(f, Psi, identity) < 1e-10

    def test_psi_equal_transform_reduces_to_plancherel(self, rng):
        sys5 = finite_affine(5).system
        f = random_group_function(sys5, "primal", rng)
        Psi = tau_fourier(f).function
        assert parseval_residual(f, Psi, "plain_primal_weighted") < 1e-10

    def test_zero_function(self, aff4, rng):
        Psi = random_group_function(aff4, "dual", rng)
        zero = GroupFunction.zeros(aff4, "primal")
        for identity in PARSEVAL_IDENTITIES:
            assert parseval_residual(zero, Psi, identity) == 0.0

    def test_unknown_identity(self, aff4, rng):
        f = random_group_function(aff4, "primal", rng)
        Psi = random_group_function(aff4, "dual", rng)
        with pytest.raises(StructureError):
            parseval_residual(f, Psi, "plain")

    def test_side_guards(self, aff4, rng):
        f = random_group_function(aff4, "primal", rng)
        with pytest.raises(SideMismatchError):
            parseval_residual(f, f, "plain_primal_weighted")


class TestPreimage:
    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_plain_witness(self, entry, rng):
        phi = random_group_function(entry.system, "dual", rng)
        witness = preimage(phi, "plain")
        assert np.max(np.abs(tau_fourier(witness).function.values - phi.values)) < 1e-10

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_generalized_witness(self, entry, rng):
        phi = random_group_function(entry.system, "dual", rng)
        witness = preimage(phi, "generalized")
        assert np.max(np.abs(gen_tau_fourier(witness).function.values - phi.values)) < 1e-10

    def test_unknown_variant(self, aff4):
        with pytest.raises(StructureError):
            preimage(GroupFunction.zeros(aff4, "dual"), "sideways")


def test_linearity(aff4, rng):
    f = random_group_function(aff4, "primal", rng)
    g = random_group_function(aff4, "primal", rng)
    combo = GroupFunction(aff4, "primal", 2.5 * f.values - 1j * g.values)
    for forward in (tau_fourier, gen_tau_fourier):
        lhs = forward(combo).function.values
        rhs = 2.5 * forward(f).function.values - 1j * forward(g).function.values
        assert np.max(np.abs(lhs - rhs)) < 1e-12
