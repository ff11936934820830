"""Semi-direct products H x| K with finite abelian K, and their duals.

``TauSystem`` stores the acting group H extensionally: a list of hashable
labels, a Cayley table on label indices, one automorphism of K per label
(the action), and a positive weight per label (the Haar-rescaling factor of
the action; identically 1 for finite K, kept as stored data so the type can
also describe systems whose weights were produced elsewhere).

Group elements are plain ``(label, coords)`` pairs.  The group law is

    (h, k) * (h', k') = (h h', k + tau_h(k')),
    (h, k)^-1        = (h^-1, tau_{h^-1}(-k)).

The dual system lives on the character group (same divisor profile) with the
action tau-hat_h(omega) = omega o tau_{h^-1} and inverted weights; elements
of the dual group multiply with the same code path.

Integration conventions for functions on the product ("side"):

* primal: weight delta(h) per (h, .) slice, counting measure on K;
* dual:   weight delta(h)^-1 * (1/|K|) per (h, .) slice (Plancherel on the
  character group).

Everything is immutable after construction; per-label rows of a function
table are independent, so callers may process them concurrently.
"""

from __future__ import annotations

import math
from typing import Iterator, Sequence

import numpy as np

from .automorphisms import Automorphism, identity_automorphism
from .exceptions import DomainError, StructureError
from .lca import FiniteLcaGroup, KFunction, max_order

# Exhaustive Cayley-table associativity is cubic in |H|; above this size the
# constructor samples random triples instead.
_ASSOC_TABLE_LIMIT = 128
_PAIR_CHECK_LIMIT = 512
_RANDOM_TRIPLES = 1000

GTauElement = tuple  # (label, coords) pairs; coords is a reduced tuple


class TauSystem:
    """A semi-direct product H x| K given by labels, Cayley table and action."""

    __slots__ = (
        "normal_factor",
        "labels",
        "automorphisms",
        "cayley",
        "delta",
        "identity_index",
        "inverse_index",
        "dual_automorphisms",
        "_label_index",
        "_kperm",
        "_omega_perm",
    )

    def __init__(
        self,
        normal_factor: FiniteLcaGroup,
        labels: Sequence,
        automorphisms: Sequence[Automorphism],
        cayley,
        delta: Sequence[float] | None = None,
    ):
        labels = tuple(labels)
        m = len(labels)
        if m == 0:
            raise DomainError("the acting group must contain at least the identity")
        if len(set(labels)) != m:
            raise StructureError("acting-group labels must be distinct")
        automorphisms = tuple(automorphisms)
        if len(automorphisms) != m:
            raise StructureError("need exactly one automorphism per label")
        for aut in automorphisms:
            if aut.group != normal_factor:
                raise StructureError("automorphism group does not match the normal factor")
        if m * normal_factor.order > max_order():
            raise DomainError(
                f"|H|*|K| = {m * normal_factor.order} exceeds the cap {max_order()}"
            )
        cayley = np.asarray(cayley, dtype=np.int64)
        if cayley.shape != (m, m) or cayley.min() < 0 or cayley.max() >= m:
            raise StructureError("Cayley table must be an (m, m) table of label indices")
        if delta is None:
            delta_arr = np.ones(m, dtype=np.float64)
        else:
            delta_arr = np.asarray(delta, dtype=np.float64)
            if delta_arr.shape != (m,):
                raise StructureError("weight table must have one entry per label")
            if np.any(delta_arr <= 0) or not np.all(np.isfinite(delta_arr)):
                raise StructureError("weights must be positive and finite")

        object.__setattr__(self, "normal_factor", normal_factor)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "automorphisms", automorphisms)
        object.__setattr__(self, "_label_index", {lab: i for i, lab in enumerate(labels)})

        identity_index = self._find_identity(cayley)
        inverse_index = self._find_inverses(cayley, identity_index)
        cayley.setflags(write=False)
        delta_arr.setflags(write=False)
        object.__setattr__(self, "cayley", cayley)
        object.__setattr__(self, "delta", delta_arr)
        object.__setattr__(self, "identity_index", identity_index)
        object.__setattr__(self, "inverse_index", inverse_index)

        self._validate_associativity()
        self._validate_action()
        self._validate_delta()

        duals = tuple(aut.dual() for aut in automorphisms)
        object.__setattr__(self, "dual_automorphisms", duals)
        kperm = np.vstack([aut.permutation() for aut in automorphisms])
        operm = np.vstack([aut.permutation() for aut in duals])
        kperm.setflags(write=False)
        operm.setflags(write=False)
        object.__setattr__(self, "_kperm", kperm)
        object.__setattr__(self, "_omega_perm", operm)

    def __setattr__(self, name, value):
        raise AttributeError("TauSystem is immutable")

    # -- construction-time validation -------------------------------------

    @staticmethod
    def _find_identity(cayley) -> int:
        m = cayley.shape[0]
        idx = np.arange(m)
        for e in range(m):
            if np.array_equal(cayley[e], idx) and np.array_equal(cayley[:, e], idx):
                return e
        raise StructureError("Cayley table has no identity")

    @staticmethod
    def _find_inverses(cayley, e) -> np.ndarray:
        m = cayley.shape[0]
        inv = np.full(m, -1, dtype=np.int64)
        rows, cols = np.nonzero(cayley == e)
        for r, c in zip(rows, cols):
            inv[r] = c
        if np.any(inv < 0):
            raise StructureError("Cayley table has elements without inverses")
        for i in range(m):
            if cayley[inv[i], i] != e:
                raise StructureError("Cayley table inverses are one-sided")
        inv.setflags(write=False)
        return inv

    def _validate_associativity(self):
        c = self.cayley
        m = c.shape[0]
        if m <= _ASSOC_TABLE_LIMIT:
            if not np.array_equal(c[c], c[:, c]):
                raise StructureError("Cayley table is not associative")
        else:
            rng = np.random.default_rng(0)
            i, j, k = rng.integers(0, m, size=(3, _RANDOM_TRIPLES))
            if not np.array_equal(c[c[i, j], k], c[i, c[j, k]]):
                raise StructureError("Cayley table failed sampled associativity")

    def _validate_action(self):
        from .automorphisms import _matmul_mod

        auts = self.automorphisms
        if not auts[self.identity_index].is_identity:
            raise StructureError("identity label must act as the identity automorphism")
        m = len(auts)
        if m <= _PAIR_CHECK_LIMIT:
            pairs = ((i, j) for i in range(m) for j in range(m))
        else:
            rng = np.random.default_rng(1)
            pairs = zip(*rng.integers(0, m, size=(2, 10 * _RANDOM_TRIPLES)))
        divisors = self.normal_factor.divisors
        for i, j in pairs:
            # canonical (row-reduced) matrices are equal iff the maps are;
            # comparing products directly skips re-validating each composite
            product = _matmul_mod(auts[i].matrix, auts[j].matrix, divisors)
            if not np.array_equal(product, auts[self.cayley[i, j]].matrix):
                raise StructureError(
                    f"action is not a homomorphism at labels "
                    f"({self.labels[i]!r}, {self.labels[j]!r})"
                )

    def _validate_delta(self):
        d = self.delta
        if not math.isclose(d[self.identity_index], 1.0, rel_tol=1e-12):
            raise StructureError("weight of the identity label must be 1")
        prod = d[:, None] * d[None, :]
        if not np.allclose(d[self.cayley], prod, rtol=1e-9):
            raise StructureError("weight table is not multiplicative over the Cayley table")

    # -- basic structure ----------------------------------------------------

    @property
    def acting_order(self) -> int:
        return len(self.labels)

    @property
    def order(self) -> int:
        return len(self.labels) * self.normal_factor.order

    def label_index(self, label) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise StructureError(f"unknown acting-group label {label!r}") from None

    def delta_of(self, label) -> float:
        return float(self.delta[self.label_index(label)])

    @property
    def identity(self) -> GTauElement:
        return (self.labels[self.identity_index], self.normal_factor.identity)

    def check_element(self, x) -> tuple[int, tuple[int, ...]]:
        """Return (label index, reduced coords) for an element, validating it."""
        try:
            label, coords = x
        except (TypeError, ValueError):
            raise StructureError(f"group elements are (label, coords) pairs, got {x!r}") from None
        return self.label_index(label), self.normal_factor.check_member(coords)

    def elements(self) -> Iterator[GTauElement]:
        for label in self.labels:
            for k in self.normal_factor.elements():
                yield (label, k)

    # -- group law ----------------------------------------------------------

    def multiply(self, x: GTauElement, y: GTauElement) -> GTauElement:
        """(h, k) * (h', k') = (h h', k + tau_h(k'))."""
        i, k = self.check_element(x)
        j, kp = self.check_element(y)
        coords = self.normal_factor.add(k, self.automorphisms[i].apply(kp))
        return (self.labels[self.cayley[i, j]], coords)

    def invert(self, x: GTauElement) -> GTauElement:
        """(h, k)^-1 = (h^-1, tau_{h^-1}(-k))."""
        i, k = self.check_element(x)
        inv = self.inverse_index[i]
        coords = self.automorphisms[inv].apply(self.normal_factor.negate(k))
        return (self.labels[inv], coords)

    def modular_function(self, x: GTauElement) -> float:
        """delta(h) * Delta_H(h) * Delta_K(k); the finite factors are unimodular."""
        i, _ = self.check_element(x)
        return float(self.delta[i])

    # -- dual structure -------------------------------------------------------

    def omega_action(self, label, omega) -> tuple[int, ...]:
        """Index of the character k -> omega(tau_{h^-1}(k))."""
        i = self.label_index(label)
        return self.dual_automorphisms[i].apply(omega)

    def omega_perm(self, index: int) -> np.ndarray:
        """Permutation of character indices induced by the label at ``index``."""
        return self._omega_perm[index]

    def kperm(self, index: int) -> np.ndarray:
        """Permutation of K indices induced by the label at ``index``."""
        return self._kperm[index]

    def dual(self) -> "TauSystem":
        """The dual system (H, K-hat, tau-hat) with inverted weights."""
        return TauSystem(
            self.normal_factor,
            self.labels,
            self.dual_automorphisms,
            self.cayley,
            1.0 / self.delta,
        )

    def double_dual(self) -> "TauSystem":
        return self.dual().dual()

    def pushforward_check(self, label, g: KFunction) -> tuple[float, float]:
        """Both sides of the measure-pushforward identity for the dual action.

        lhs = integral of g(omega_h) in Plancherel measure, rhs = delta(h)
        times the integral of g.  For finite K the action permutes the
        characters and delta = 1, so the sides are sums of the same multiset;
        fsum returns the correctly rounded value either way, making the
        equality exact.
        """
        if g.side != "dual":
            raise StructureError("pushforward_check expects a dual-side test function")
        if g.group != self.normal_factor:
            raise StructureError("test function lives on a different group")
        vals = g.values
        if np.any(vals.imag != 0) or np.any(vals.real < 0):
            raise StructureError("test function must be real and nonnegative")
        i = self.label_index(label)
        n = self.normal_factor.order
        lhs = math.fsum(vals.real[self._omega_perm[i]]) / n
        rhs = float(self.delta[i]) * (math.fsum(vals.real) / n)
        return lhs, rhs

    def __eq__(self, other):
        return (
            isinstance(other, TauSystem)
            and self.normal_factor == other.normal_factor
            and self.labels == other.labels
            and np.array_equal(self.cayley, other.cayley)
            and self.automorphisms == other.automorphisms
            and np.allclose(self.delta, other.delta)
        )

    def __hash__(self):
        return hash((self.normal_factor, self.labels))

    def __repr__(self):
        return (
            f"TauSystem(|H|={self.acting_order}, K={list(self.normal_factor.divisors)})"
        )


def trivial_system(group: FiniteLcaGroup, label="e") -> TauSystem:
    """H = {e}: the semidirect product degenerates to K itself."""
    return TauSystem(group, [label], [identity_automorphism(group)], [[0]])


def double_dual_theta(system: TauSystem, x: GTauElement) -> GTauElement:
    """The canonical map (h, k) -> (h, evaluation character of k).

    The double-dual character group is re-identified with K through the
    canonical index map, so the map is the identity on data; that it is a
    group isomorphism onto the double-dual system is a verification
    obligation covered by the suites, not a property of this function.
    """
    i, coords = system.check_element(x)
    return (system.labels[i], coords)


class GroupFunction:
    """Dense |H| x |K| table of complex values on the product, with a side tag."""

    __slots__ = ("system", "side", "values")

    def __init__(self, system: TauSystem, side: str, values):
        if side not in ("primal", "dual"):
            raise StructureError(f"side must be 'primal' or 'dual', got {side!r}")
        values = np.asarray(values, dtype=np.complex128)
        expected = (system.acting_order, system.normal_factor.order)
        if values.shape != expected:
            raise StructureError(f"values shape {values.shape} != {expected}")
        if not np.all(np.isfinite(values.view(np.float64))):
            raise StructureError("function values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("GroupFunction is immutable")

    @classmethod
    def zeros(cls, system: TauSystem, side: str) -> "GroupFunction":
        return cls(system, side, np.zeros((system.acting_order, system.normal_factor.order)))

    def slice_weights(self) -> np.ndarray:
        """Integration weight of each (h, .) slice under this side's measure."""
        if self.side == "primal":
            return np.asarray(self.system.delta, dtype=np.float64)
        return 1.0 / (self.system.delta * self.system.normal_factor.order)

    def norm_sq(self) -> float:
        row_power = np.sum(np.abs(self.values) ** 2, axis=1)
        return float(np.sum(self.slice_weights() * row_power))

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def row(self, label) -> np.ndarray:
        """Read-only view of the slice at one acting label."""
        return self.values[self.system.label_index(label)]

    def __call__(self, x) -> complex:
        i, coords = self.system.check_element(x)
        return complex(self.values[i, self.system.normal_factor.index_of(coords)])

    def __repr__(self):
        return f"GroupFunction({self.system!r}, side={self.side!r})"


def random_group_function(system: TauSystem, side: str, rng) -> GroupFunction:
    shape = (system.acting_order, system.normal_factor.order)
    values = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return GroupFunction(system, side, values)
