"""Automorphisms of finite LCA groups as integer matrices.

A matrix M defines the map k -> M k (componentwise mod the divisors).  The
map is well-defined on prod Z_{n_i} iff M[i][j]*n_j = 0 mod n_i for all i, j;
row i of M only matters mod n_i, so matrices are stored row-reduced and two
matrices are equal iff they agree in that canonical form.

Matrices (not permutation tables) keep composition independent of the group
order and give the dual automorphism a closed form.  ``permutation`` exists
as a validation fallback only.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import DomainError, InvalidAutomorphism, StructureError
from .lca import FiniteLcaGroup

# Above this order, bijectivity switches from the exhaustive image check to
# the per-prime determinant test.
EXHAUSTIVE_BIJECTIVITY_LIMIT = 10**4


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _aut_order_prime(p: int, exps: list[int]) -> int:
    # Order of the automorphism group of the p-group with ascending exponent
    # list ``exps`` (Hillar-Rhea counting formula); cross-checked against
    # brute-force enumeration in the tests.
    k = len(exps)
    d = [max(l for l in range(k) if exps[l] == exps[i]) + 1 for i in range(k)]
    c = [min(l for l in range(k) if exps[l] == exps[i]) + 1 for i in range(k)]
    total = 1
    for i in range(k):
        total *= p ** d[i] - p**i
    for j in range(k):
        total *= (p ** exps[j]) ** (k - d[j])
    for i in range(k):
        total *= (p ** (exps[i] - 1)) ** (k - c[i] + 1)
    return total


def automorphism_group_order(divisors) -> int:
    """|Aut(prod Z_{n_i})| via the per-prime counting formula."""
    by_prime: dict[int, list[int]] = {}
    for n in divisors:
        for p, e in _prime_factors(int(n)).items():
            by_prime.setdefault(p, []).append(e)
    total = 1
    for p, exps in by_prime.items():
        total *= _aut_order_prime(p, sorted(exps))
    return total


def _det_mod(mat: list[list[int]], p: int) -> int:
    """Determinant mod a prime, by Gaussian elimination over F_p."""
    m = [[int(x) % p for x in row] for row in mat]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            factor = m[r][col] * inv % p
            if factor:
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[col])]
    return det % p


def _reduce_rows(mat: np.ndarray, divisors) -> np.ndarray:
    return mat % np.asarray(divisors, dtype=np.int64)[:, None]


def _matmul_mod(a, b, divisors):
    return _reduce_rows(a @ b, divisors)


def _matpow_mod(mat, exp: int, divisors):
    d = len(divisors)
    result = _reduce_rows(np.eye(d, dtype=np.int64), divisors)
    base = _reduce_rows(np.asarray(mat, dtype=np.int64), divisors)
    while exp > 0:
        if exp & 1:
            result = _matmul_mod(result, base, divisors)
        base = _matmul_mod(base, base, divisors)
        exp >>= 1
    return result


class Automorphism:
    """Invertible integer matrix acting on a finite LCA group."""

    __slots__ = ("group", "matrix")

    def __init__(self, group: FiniteLcaGroup, matrix):
        mat = np.asarray(matrix, dtype=np.int64)
        d = group.rank
        if mat.shape != (d, d):
            raise StructureError(f"matrix shape {mat.shape} does not match rank {d}")
        divisors = np.asarray(group.divisors, dtype=np.int64)
        # well-definedness: column j lives mod n_j, so M[i][j]*n_j must die mod n_i
        if np.any((mat * divisors[None, :]) % divisors[:, None] != 0):
            raise InvalidAutomorphism(
                f"matrix does not preserve the relations of {group!r}: "
                "need M[i][j]*n_j = 0 (mod n_i) for all i, j"
            )
        mat = _reduce_rows(mat, group.divisors)
        mat.setflags(write=False)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "matrix", mat)
        if not self._is_bijective():
            raise InvalidAutomorphism(f"matrix {matrix!r} is not a bijection of {group!r}")

    def __setattr__(self, name, value):
        raise AttributeError("Automorphism is immutable")

    def _is_bijective(self) -> bool:
        group = self.group
        if group.order <= EXHAUSTIVE_BIJECTIVITY_LIMIT:
            image = self.permutation()
            return len(np.unique(image)) == group.order
        return self._is_bijective_algebraic()

    def _is_bijective_algebraic(self) -> bool:
        # Surjective iff for every prime p | |K| the induced map on K/pK is
        # invertible; that map is the submatrix on the p-divisible coordinates
        # reduced mod p.
        mat = self.matrix.tolist()
        order = self.group.order
        for p in _prime_factors(order):
            rows = [i for i, n in enumerate(self.group.divisors) if n % p == 0]
            sub = [[mat[i][j] for j in rows] for i in rows]
            if _det_mod(sub, p) == 0:
                return False
        return True

    def __repr__(self):
        return f"Automorphism({self.group!r}, {self.matrix.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.group == other.group
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.group, self.matrix.tobytes()))

    @property
    def is_identity(self) -> bool:
        eye = _reduce_rows(np.eye(self.group.rank, dtype=np.int64), self.group.divisors)
        return np.array_equal(self.matrix, eye)

    def apply(self, k) -> tuple[int, ...]:
        k = self.group.check_member(k)
        out = self.matrix @ np.asarray(k, dtype=np.int64)
        return tuple(int(x % n) for x, n in zip(out, self.group.divisors))

    def apply_table(self, coords: np.ndarray) -> np.ndarray:
        """Apply to an (m, rank) coordinate array, returning reduced coordinates."""
        divisors = np.asarray(self.group.divisors, dtype=np.int64)
        return (coords @ self.matrix.T) % divisors[None, :]

    def permutation(self) -> np.ndarray:
        """Index permutation p with p[index(k)] = index(M k); validation fallback."""
        group = self.group
        image = self.apply_table(group.coords_table())
        return group.index_table(image)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: compose(a, b).apply(k) == a.apply(b.apply(k))."""
        if self.group != other.group:
            raise StructureError("cannot compose automorphisms of different groups")
        return Automorphism(self.group, _matmul_mod(self.matrix, other.matrix, self.group.divisors))

    def inverse(self) -> "Automorphism":
        """Inverse via a power: a**(|Aut(K)| - 1) = a**-1 by Lagrange.

        Works uniformly for mixed divisors, where adjugate formulas do not.
        """
        exp = automorphism_group_order(self.group.divisors) - 1
        inv = Automorphism(self.group, _matpow_mod(self.matrix, exp, self.group.divisors))
        if not inv.compose(self).is_identity:
            raise InvalidAutomorphism("inverse computation failed; matrix is not invertible")
        return inv

    def delta(self) -> float:
        """Haar-rescaling factor of the automorphism.

        Any bijection of a finite set preserves counting measure, so this is
        exactly 1.  The operation exists as the shared interface with the
        continuum case (see ``continuum_delta``), where linear maps rescale
        Lebesgue measure by 1/|det|.
        """
        return 1.0

    def dual(self) -> "Automorphism":
        """Induced automorphism on the character group: omega -> omega o self^-1.

        In coordinates: with X the matrix of self^-1 and N = diag(n_i), the
        dual index map is D = N X^T N^-1, i.e. D[l][i] = n_l * X[i][l] / n_i.
        The division is exact precisely because X is well-defined; for
        uniform divisors D is simply the transpose of X.  Validated against
        the exhaustive pairing oracle in the tests.
        """
        x = self.inverse().matrix
        n = self.group.divisors
        d = self.group.rank
        dual_mat = np.empty((d, d), dtype=np.int64)
        for l in range(d):
            for i in range(d):
                num = n[l] * int(x[i][l])
                if num % n[i] != 0:
                    raise InvalidAutomorphism("dual matrix scaling is not integral")
                dual_mat[l, i] = num // n[i]
        return Automorphism(self.group, dual_mat)


def identity_automorphism(group: FiniteLcaGroup) -> Automorphism:
    return Automorphism(group, np.eye(group.rank, dtype=np.int64))


def continuum_delta(action) -> float:
    """Haar-rescaling factor of a linear map on a continuum factor R^d.

    For a scalar a acting as x -> a x this is 1/|a| (the affine group's
    modulus); for a matrix it is 1/|det|.
    """
    arr = np.asarray(action, dtype=np.float64)
    if arr.ndim == 0:
        det = float(arr)
    elif arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        det = float(np.linalg.det(arr))
    else:
        raise StructureError(f"expected a scalar or square matrix, got shape {arr.shape}")
    if det == 0.0 or not math.isfinite(det):
        raise DomainError("linear map must be invertible")
    return 1.0 / abs(det)
