"""Finite locally compact abelian groups and the Fourier transform on them.

A group is a product of cyclic factors prod_i Z_{n_i} in elementary-divisor
form.  Elements are coordinate tuples reduced mod the divisors; the same
divisor profile canonically represents the character group, so one
``FiniteLcaGroup`` object serves both roles and functions carry a ``side``
tag ("primal" = on K, "dual" = on the character group) to keep the measure
conventions apart.

Measure conventions (these make the transform unitary):

* Haar measure on K is counting measure (weight 1 per point).
* Plancherel measure on the character group is (1/|K|) * counting.

All objects are immutable after construction and every operation is a pure
function, so values may be shared freely across threads.
"""

from __future__ import annotations

import math
import os
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .exceptions import DomainError, SideMismatchError, StructureError

DEFAULT_MAX_ORDER = 10**6


def max_order() -> int:
    """Dense-table size cap; override with the TAUH_MAX_ORDER env var."""
    raw = os.environ.get("TAUH_MAX_ORDER", "")
    if not raw:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise DomainError(f"TAUH_MAX_ORDER must be an integer, got {raw!r}") from exc
    if value < 1:
        raise DomainError("TAUH_MAX_ORDER must be positive")
    return value


class FiniteLcaGroup:
    """Product of cyclic groups prod_i Z_{n_i} with componentwise addition."""

    __slots__ = ("divisors", "order", "exponent", "_coords")

    def __init__(self, divisors: Sequence[int]):
        divisors = tuple(int(n) for n in divisors)
        if not divisors:
            raise DomainError("need at least one divisor (use (1,) for the trivial group)")
        if any(n < 1 for n in divisors):
            raise DomainError(f"divisors must be >= 1, got {divisors}")
        order = math.prod(divisors)
        if order > max_order():
            raise DomainError(f"group order {order} exceeds the cap {max_order()}")
        object.__setattr__(self, "divisors", divisors)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponent", math.lcm(*divisors))
        object.__setattr__(self, "_coords", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteLcaGroup is immutable")

    def __repr__(self):
        return f"FiniteLcaGroup({list(self.divisors)})"

    def __eq__(self, other):
        return isinstance(other, FiniteLcaGroup) and self.divisors == other.divisors

    def __hash__(self):
        return hash(self.divisors)

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def element(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Validate and reduce a coordinate vector to canonical form."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise StructureError(
                f"expected {self.rank} coordinates for divisors {self.divisors}, got {len(coords)}"
            )
        return tuple(c % n for c, n in zip(coords, self.divisors))

    def check_member(self, coords) -> tuple[int, ...]:
        """Reject coordinates that are not already reduced."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise StructureError(f"wrong number of coordinates for {self!r}")
        for c, n in zip(coords, self.divisors):
            if not 0 <= c < n:
                raise StructureError(f"coordinate {c} out of range [0, {n})")
        return coords

    def add(self, a, b) -> tuple[int, ...]:
        a = self.check_member(a)
        b = self.check_member(b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.divisors))

    def negate(self, a) -> tuple[int, ...]:
        a = self.check_member(a)
        return tuple((-x) % n for x, n in zip(a, self.divisors))

    def index_of(self, coords) -> int:
        coords = self.check_member(coords)
        idx = 0
        for c, n in zip(coords, self.divisors):
            idx = idx * n + c
        return idx

    def element_at(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise StructureError(f"element index {index} out of range")
        out = []
        for n in reversed(self.divisors):
            out.append(index % n)
            index //= n
        return tuple(reversed(out))

    def elements(self) -> Iterator[tuple[int, ...]]:
        for idx in range(self.order):
            yield self.element_at(idx)

    def coords_table(self) -> np.ndarray:
        """(order, rank) int64 array of all elements in C-index order."""
        cached = self._coords
        if cached is None:
            cached = np.indices(self.divisors).reshape(self.rank, -1).T
            cached = np.ascontiguousarray(cached, dtype=np.int64)
            cached.setflags(write=False)
            object.__setattr__(self, "_coords", cached)
        return cached

    def index_table(self, coords: np.ndarray) -> np.ndarray:
        """Vectorized index_of for an (m, rank) array of reduced coordinates."""
        return np.ravel_multi_index(coords.T, self.divisors)

    def char_phase(self, omega, k) -> int:
        """Integer numerator t with pairing value exp(2*pi*i*t/exponent).

        Exact integer arithmetic; equality of phases mod the exponent is
        equality of pairing values, which checks use instead of comparing
        floating-point exponentials.
        """
        omega = self.check_member(omega)
        k = self.check_member(k)
        L = self.exponent
        return sum(w * x * (L // n) for w, x, n in zip(omega, k, self.divisors)) % L

    def character(self, coords) -> "Character":
        return Character(self, coords)


class Character:
    """Character indexed by a group element: omega_j(k) = exp(2*pi*i sum j_i k_i / n_i)."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FiniteLcaGroup, coords):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", group.element(coords))

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def __repr__(self):
        return f"Character({self.group!r}, {list(self.coords)})"

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and self.group == other.group
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.group, self.coords))

    def phase(self, k) -> int:
        return self.group.char_phase(self.coords, k)

    def __call__(self, k) -> complex:
        L = self.group.exponent
        return complex(np.exp(2j * np.pi * self.phase(k) / L))


def char_eval(group: FiniteLcaGroup, omega, k) -> complex:
    """Pairing value of the character with index ``omega`` at ``k``."""
    L = group.exponent
    return complex(np.exp(2j * np.pi * group.char_phase(omega, k) / L))


class KFunction:
    """Dense complex-valued function on a finite LCA group or on its dual."""

    __slots__ = ("group", "values", "side")

    def __init__(self, group: FiniteLcaGroup, values, side: str = "primal"):
        if side not in ("primal", "dual"):
            raise StructureError(f"side must be 'primal' or 'dual', got {side!r}")
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (group.order,):
            raise StructureError(
                f"values shape {values.shape} does not match group order {group.order}"
            )
        if not np.all(np.isfinite(values.view(np.float64))):
            raise StructureError("function values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "side", side)

    def __setattr__(self, name, value):
        raise AttributeError("KFunction is immutable")

    def __repr__(self):
        return f"KFunction({self.group!r}, side={self.side!r})"

    @classmethod
    def from_dict(cls, group, mapping, side="primal"):
        values = np.zeros(group.order, dtype=np.complex128)
        for coords, v in mapping.items():
            values[group.index_of(coords)] = v
        return cls(group, values, side)

    def __call__(self, coords) -> complex:
        return complex(self.values[self.group.index_of(coords)])


def _require_side(v: KFunction, side: str, what: str):
    if v.side != side:
        raise SideMismatchError(f"{what} expects a {side}-side function, got {v.side}-side")


def fourier_transform(v: KFunction) -> KFunction:
    """Transform on the group:  out(omega) = sum_k v(k) * conj(omega(k)).

    Linear in v; maps counting-measure L2 isometrically onto the Plancherel
    L2 of the character group.
    """
    _require_side(v, "primal", "fourier_transform")
    out = _kernels.batch_dft(v.values, v.group.divisors, inverse=False)
    return KFunction(v.group, out, side="dual")


def inverse_fourier_transform(phi: KFunction) -> KFunction:
    """Synthesis with Plancherel weight: out(k) = (1/|K|) sum_omega phi(omega) omega(k)."""
    _require_side(phi, "dual", "inverse_fourier_transform")
    out = _kernels.batch_dft(phi.values, phi.group.divisors, inverse=True)
    return KFunction(phi.group, out, side="primal")


def inner_product(u: KFunction, v: KFunction, measure: str) -> complex:
    """L2 inner product sum u * conj(v) under the named measure.

    ``haar`` (weight 1, primal side) or ``plancherel`` (weight 1/|K|, dual
    side).
    """
    if u.group != v.group:
        raise StructureError("inner_product requires functions on the same group")
    if u.side != v.side:
        raise StructureError("inner_product requires functions on the same side")
    raw = complex(np.vdot(v.values, u.values))  # vdot conjugates its first argument
    if measure == "haar":
        if u.side != "primal":
            raise StructureError("haar measure applies to primal-side functions")
        return raw
    if measure == "plancherel":
        if u.side != "dual":
            raise StructureError("plancherel measure applies to dual-side functions")
        return raw / u.group.order
    raise StructureError(f"unknown measure {measure!r}")
