import numpy as np
import pytest

from tauharm import DomainError
from tauharm.catalog import (
    families,
    finite_affine,
    finite_heisenberg,
    finite_motion,
    get_entry,
    verify_dual_law,
)


class TestAffineFamily:
    def test_order_and_axioms(self):
        entry = finite_affine(5)
        assert entry.system.order == 20  # validation ran at construction

    def test_degenerate_units(self):
        entry = finite_affine(2)
        assert entry.system.acting_order == 1
        assert entry.system.labels == (1,)

    def test_omega_action_matches(self):
        sys4 = finite_affine(4).system
        assert sys4.omega_action(3, (1,)) == (3,)

    def test_dual_action_is_multiplication_by_inverse(self):
        entry = finite_affine(5)
        dual = entry.dual_system
        for h in dual.labels:
            hinv = pow(h, -1, 5)
            for j in range(5):
                assert dual.automorphisms[dual.label_index(h)].apply((j,)) == ((j * hinv) % 5,)

    def test_weight_identically_one(self):
        assert np.all(finite_affine(7).system.delta == 1.0)

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            finite_affine(1)


class TestHeisenbergFamily:
    def test_dual_law_hand_example(self):
        entry = finite_heisenberg(5)
        assert entry.dual_law_oracle((1, (2, 3)), (2, (4, 1))) == (3, (0, 4))
        assert entry.dual_system.multiply((1, (2, 3)), (2, (4, 1))) == (3, (0, 4))

    def test_identity_element(self):
        entry = finite_heisenberg(4)
        dual = entry.dual_system
        e = dual.identity
        for x in dual.elements():
            assert dual.multiply(e, x) == x

    def test_oracle_exhaustive_n3(self):
        entry = finite_heisenberg(3)
        assert verify_dual_law(entry) == 27**2

    def test_shear_action(self):
        sys3 = finite_heisenberg(3).system
        # s = 1 sends (q, z) to (q, z + q)
        assert sys3.automorphisms[sys3.label_index(1)].apply((2, 0)) == (2, 2)

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            finite_heisenberg(0)


class TestMotionFamily:
    def test_rotation_action(self):
        entry = finite_motion(4)
        assert entry.system.automorphisms[1].apply((1, 0)) == (0, 1)
        assert entry.system.order == 64

    def test_rotation_order_four(self):
        entry = finite_motion(5)
        j = entry.system.automorphisms[1]
        assert j.compose(j).compose(j).compose(j).is_identity

    def test_identity_rotation_acts_trivially_on_dual(self):
        entry = finite_motion(4)
        dual = entry.dual_system
        assert dual.automorphisms[0].is_identity

    def test_full_cycle_dual_action_is_identity(self):
        entry = finite_motion(4)
        sys = entry.system
        # tau-hat of J applied four times fixes every character
        for omega in sys.normal_factor.elements():
            acted = omega
            for _ in range(4):
                acted = sys.omega_action(1, acted)
            assert acted == omega

    def test_oracle_exhaustive(self):
        assert verify_dual_law(finite_motion(4)) == 64**2

    def test_dual_action_is_transpose_inverse(self):
        entry = finite_motion(3)
        sys = entry.system
        for r in range(4):
            rot = np.linalg.matrix_power(np.array([[0, -1], [1, 0]]), r)
            transpose_inverse = np.linalg.matrix_power(rot, 3 * r % 4).T % 3 if r else np.eye(2, dtype=int)
            got = sys.dual_automorphisms[r].matrix
            want = np.linalg.matrix_power(np.array([[0, -1], [1, 0]]), (4 - r) % 4).T % 3
            assert np.array_equal(got, want)


class TestLookup:
    def test_families_listed(self):
        assert families() == ("affine", "heisenberg", "motion")

    def test_get_entry(self):
        assert get_entry("affine:5").name == "affine:5"
        assert get_entry("motion:4").system.order == 64

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            get_entry("dihedral:5")

    def test_bad_argument(self):
        with pytest.raises(DomainError):
            get_entry("affine:x")


@pytest.mark.parametrize("name", ["affine:4", "affine:5", "affine:7", "heisenberg:3", "motion:4"])
def test_all_catalog_entries_pass_suites(name):
    from tauharm.suites import run_checks

    results = run_checks(get_entry(name), "all", trials=10, seed=1)
    failed = [r for r in results if not r.passed]
    assert not failed, failed
