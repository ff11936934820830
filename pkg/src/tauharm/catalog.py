"""Built-in finite semi-direct products with closed-form dual-law oracles.

Three families, each a finite stand-in for a classical group:

* ``affine:n``     -- units of Z_n acting on Z_n by multiplication (the
  ax+b group at modular scale).
* ``heisenberg:n`` -- Z_n acting on Z_n x Z_n by the shear (q, z) ->
  (q, z + q s); the circle factor of the Weyl-Heisenberg group is replaced
  by Z_n, which is exactly the set of values the characters of Z_n take.
* ``motion:n``     -- the 90-degree rotation group {I, J, J^2, J^3} acting
  on Z_n^2 (SO(2) itself does not act on the discrete plane; the order-4
  subgroup preserves the structure: compact acting group, weight 1,
  orthogonal action).

Every entry carries ``dual_law_oracle``, a closed-form multiplication on the
dual group written directly from the known dual laws and independent of the
generic construction; the constructor cross-checks the two on element pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .automorphisms import Automorphism
from .exceptions import DomainError, StructureError
from .lca import FiniteLcaGroup
from .semidirect import GTauElement, TauSystem

# Entries at or below this total order get their oracle checked on all pairs
# (the verify suites use the larger limit; construction stays snappy with the
# smaller one and a random sample beyond it).
EXHAUSTIVE_PAIR_LIMIT = 2000
_CONSTRUCTION_PAIR_LIMIT = 256
_RANDOM_PAIRS = 10**4


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    system: TauSystem
    dual_law_oracle: Callable[[GTauElement, GTauElement], GTauElement]
    notes: str = ""
    _dual: TauSystem = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_dual", self.system.dual())
        verify_dual_law(self, exhaustive_limit=_CONSTRUCTION_PAIR_LIMIT)

    @property
    def dual_system(self) -> TauSystem:
        return self._dual


def verify_dual_law(entry: CatalogEntry, exhaustive_limit: int = EXHAUSTIVE_PAIR_LIMIT, rng=None) -> int:
    """Compare the constructed dual multiplication against the entry's
    closed-form oracle: all pairs up to ``exhaustive_limit`` elements, a
    random sample beyond.  Raises on the first mismatch, returns the number
    of pairs checked."""
    dual = entry.dual_system
    elements = list(dual.elements())
    total = len(elements)
    if total <= exhaustive_limit:
        pairs = ((x, y) for x in elements for y in elements)
        count = total * total
    else:
        rng = rng or np.random.default_rng(0)
        idx = rng.integers(0, total, size=(_RANDOM_PAIRS, 2))
        pairs = ((elements[i], elements[j]) for i, j in idx)
        count = _RANDOM_PAIRS
    for x, y in pairs:
        got = dual.multiply(x, y)
        want = entry.dual_law_oracle(x, y)
        if got != want:
            raise StructureError(
                f"{entry.name}: dual law disagrees with the oracle at {x} * {y}: "
                f"constructed {got}, oracle {want}"
            )
    return count


def finite_affine(n: int) -> CatalogEntry:
    """Units of Z_n acting on Z_n by multiplication; weight identically 1.

    Dual action sends the character with index j to index j * h^-1, so the
    dual law is (u, j)(u', j') = (u u', j + u^-1 j').
    """
    if n < 2:
        raise DomainError("finite_affine requires n >= 2")
    group = FiniteLcaGroup((n,))
    labels = [u for u in range(1, n) if math.gcd(u, n) == 1]
    index = {u: i for i, u in enumerate(labels)}
    cayley = [[index[(u * v) % n] for v in labels] for u in labels]
    auts = [Automorphism(group, [[u]]) for u in labels]
    system = TauSystem(group, labels, auts, cayley)

    def oracle(x: GTauElement, y: GTauElement) -> GTauElement:
        (u, (j,)), (u2, (j2,)) = x, y
        return ((u * u2) % n, ((j + pow(u, -1, n) * j2) % n,))

    return CatalogEntry(
        name=f"affine:{n}",
        system=system,
        dual_law_oracle=oracle,
        notes="units of Z_n acting by multiplication; finite ax+b analog",
    )


def finite_heisenberg(n: int) -> CatalogEntry:
    """Z_n acting on Z_n x Z_n by the shear (q, z) -> (q, z + q s).

    In multiplicative form the action is (omega, z) -> (omega, z * omega(s));
    writing the circle factor additively as Z_n makes it the unipotent matrix
    [[1, 0], [s, 1]].  The dual law is
    (s, k, m)(s', k', m') = (s + s', k + k' - m' s, m + m').
    """
    if n < 2:
        raise DomainError("finite_heisenberg requires n >= 2")
    group = FiniteLcaGroup((n, n))
    labels = list(range(n))
    cayley = [[(s + t) % n for t in labels] for s in labels]
    auts = [Automorphism(group, [[1, 0], [s, 1]]) for s in labels]
    system = TauSystem(group, labels, auts, cayley)

    def oracle(x: GTauElement, y: GTauElement) -> GTauElement:
        (s, (k, m)), (s2, (k2, m2)) = x, y
        return ((s + s2) % n, ((k + k2 - m2 * s) % n, (m + m2) % n))

    return CatalogEntry(
        name=f"heisenberg:{n}",
        system=system,
        dual_law_oracle=oracle,
        notes="discrete Weyl-Heisenberg analog with the circle replaced by Z_n",
    )


_ROTATION = np.array([[0, -1], [1, 0]], dtype=np.int64)


def finite_motion(n: int) -> CatalogEntry:
    """The order-4 rotation group acting on Z_n^2; finite rigid-motion analog.

    The dual action of a rotation sigma is the transpose of its inverse
    acting on character indices; the oracle below computes exactly that,
    independently of the generic dual construction.
    """
    if n < 2:
        raise DomainError("finite_motion requires n >= 2")
    group = FiniteLcaGroup((n, n))
    labels = list(range(4))
    cayley = [[(r + t) % 4 for t in labels] for r in labels]
    powers = [np.linalg.matrix_power(_ROTATION, r) % n for r in labels]
    auts = [Automorphism(group, powers[r]) for r in labels]
    system = TauSystem(group, labels, auts, cayley)

    dual_mats = [np.linalg.matrix_power(_ROTATION, (4 - r) % 4).T % n for r in labels]

    def oracle(x: GTauElement, y: GTauElement) -> GTauElement:
        (r, w), (r2, w2) = x, y
        acted = dual_mats[r] @ np.asarray(w2, dtype=np.int64)
        coords = tuple(int((a + b) % n) for a, b in zip(w, acted))
        return ((r + r2) % 4, coords)

    return CatalogEntry(
        name=f"motion:{n}",
        system=system,
        dual_law_oracle=oracle,
        notes="90-degree rotations acting on the discrete plane",
    )


_FAMILIES = {
    "affine": finite_affine,
    "heisenberg": finite_heisenberg,
    "motion": finite_motion,
}


def families() -> tuple[str, ...]:
    return tuple(sorted(_FAMILIES))


def get_entry(name: str) -> CatalogEntry:
    """Look up an entry by its CLI name, e.g. ``affine:5``."""
    try:
        family, _, arg = name.partition(":")
        builder = _FAMILIES[family]
        n = int(arg)
    except (KeyError, ValueError):
        raise DomainError(
            f"unknown catalog name {name!r}; expected one of "
            + ", ".join(f"{f}:<n>" for f in families())
        ) from None
    return builder(n)
