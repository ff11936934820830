"""Transforms on semi-direct products and their Parseval identities.

With f a primal-side function and delta the per-label weight of the system:

* plain transform:        F(h, omega)  = delta(h)     * DFT(f_h)(omega)
* generalized transform:  F#(h, omega) = delta(h)^3/2 * DFT(f_h)(omega_h)

where omega_h is the dual action of h on character indices, realized as a
precomputed permutation per label.  Both are unitary from primal-weighted L2
onto dual-weighted L2; the inverses below undo them exactly (up to floating
round-off).

The delta factors are applied literally where the defining formulas put
them, never folded into the measure weights, so every identity in this
module can be audited term by term.  Each Parseval residual evaluates its
two sides through disjoint code paths (synthesis + primal sums on one side,
transform + dual sums on the other).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import SideMismatchError, StructureError
from .semidirect import GroupFunction, TauSystem

PARSEVAL_IDENTITIES = (
    "plain_primal_weighted",
    "plain_dual_weighted",
    "generalized_primal_weighted",
    "generalized_dual_weighted",
)


@dataclass(frozen=True)
class TransformResult:
    """A dual-side transform table plus the L2 norm of its source."""

    function: GroupFunction
    source_norm: float


def _require_side(f: GroupFunction, side: str, what: str) -> None:
    if f.side != side:
        raise SideMismatchError(f"{what} expects a {side}-side function, got {f.side}-side")


def _omega_perm_matrix(system: TauSystem) -> np.ndarray:
    return np.vstack([system.omega_perm(i) for i in range(system.acting_order)])


def _inverse_perm_matrix(perm: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perm)
    np.put_along_axis(inv, perm, np.broadcast_to(np.arange(perm.shape[1]), perm.shape).copy(), axis=1)
    return inv


def tau_fourier(f: GroupFunction) -> TransformResult:
    """Row-wise DFT scaled by delta(h); unitary primal L2 -> dual L2."""
    _require_side(f, "primal", "tau_fourier")
    sys = f.system
    rows = _kernels.batch_dft(f.values, sys.normal_factor.divisors, inverse=False)
    rows *= sys.delta[:, None]
    return TransformResult(GroupFunction(sys, "dual", rows), f.norm())


def tau_fourier_inverse(F: GroupFunction) -> GroupFunction:
    """Row-wise synthesis scaled by delta(h)^-1; exact round trip with tau_fourier."""
    _require_side(F, "dual", "tau_fourier_inverse")
    sys = F.system
    rows = _kernels.batch_dft(F.values, sys.normal_factor.divisors, inverse=True)
    rows /= sys.delta[:, None]
    return GroupFunction(sys, "primal", rows)


def gen_tau_fourier(f: GroupFunction) -> TransformResult:
    """DFT evaluated at the acted character omega_h, scaled by delta(h)^3/2."""
    _require_side(f, "primal", "gen_tau_fourier")
    sys = f.system
    rows = _kernels.batch_dft(f.values, sys.normal_factor.divisors, inverse=False)
    perm = _omega_perm_matrix(sys)
    rows = np.take_along_axis(rows, perm, axis=1)
    rows *= (sys.delta ** 1.5)[:, None]
    return TransformResult(GroupFunction(sys, "dual", rows), f.norm())


def gen_tau_fourier_inverse(F: GroupFunction) -> GroupFunction:
    """Synthesis against the acted characters, scaled by delta(h)^-1/2."""
    _require_side(F, "dual", "gen_tau_fourier_inverse")
    sys = F.system
    inv_perm = _inverse_perm_matrix(_omega_perm_matrix(sys))
    rows = np.take_along_axis(np.asarray(F.values), inv_perm, axis=1)
    rows = _kernels.batch_dft(rows, sys.normal_factor.divisors, inverse=True)
    rows /= np.sqrt(sys.delta)[:, None]
    return GroupFunction(sys, "primal", rows)


def synthesize(Psi: GroupFunction, variant: str = "plain") -> GroupFunction:
    """The primal-side synthesis appearing in the Parseval identities.

    plain:   g(h, k) = (1/|K|) sum_omega Psi(h, omega) * omega(k)
    twisted: g(h, k) = (1/|K|) sum_omega Psi(h, omega) * omega_h(k)
    """
    _require_side(Psi, "dual", "synthesize")
    sys = Psi.system
    if variant == "plain":
        rows = np.asarray(Psi.values)
    elif variant == "twisted":
        inv_perm = _inverse_perm_matrix(_omega_perm_matrix(sys))
        rows = np.take_along_axis(np.asarray(Psi.values), inv_perm, axis=1)
    else:
        raise StructureError(f"unknown synthesis variant {variant!r}")
    rows = _kernels.batch_dft(rows, sys.normal_factor.divisors, inverse=True)
    return GroupFunction(sys, "primal", rows)


def parseval_residual(f: GroupFunction, Psi: GroupFunction, identity: str) -> float:
    """|LHS - RHS| of one of the four orthogonality identities.

    The identities pair a primal integral of f against the synthesis of Psi
    with a dual integral of the transform of f against Psi; they differ in
    which transform is used and on which side the extra delta power sits:

    * plain_primal_weighted:        delta^-1  inside the primal integral
    * plain_dual_weighted:          delta     inside the dual integral
    * generalized_primal_weighted:  delta^-1/2 inside the primal integral
    * generalized_dual_weighted:    delta^1/2 inside the dual integral
    """
    _require_side(f, "primal", "parseval_residual")
    _require_side(Psi, "dual", "parseval_residual")
    if f.system is not Psi.system and f.system != Psi.system:
        raise StructureError("f and Psi must live on the same system")
    if identity not in PARSEVAL_IDENTITIES:
        raise StructureError(f"unknown identity {identity!r}; expected one of {PARSEVAL_IDENTITIES}")
    sys = f.system
    delta = np.asarray(sys.delta)
    n = sys.normal_factor.order

    generalized = identity.startswith("generalized")
    g = synthesize(Psi, "twisted" if generalized else "plain")
    # primal pairing per label, Haar = counting on K
    s = np.sum(f.values * np.conj(g.values), axis=1)

    if generalized:
        F = gen_tau_fourier(f).function
    else:
        F = tau_fourier(f).function
    # dual pairing per label, Plancherel = (1/|K|) * counting
    t = np.sum(F.values * np.conj(Psi.values), axis=1) / n

    if identity == "plain_primal_weighted":
        lhs = np.sum(delta**-1 * s * delta)
        rhs = np.sum(t * delta**-1)
    elif identity == "plain_dual_weighted":
        lhs = np.sum(s * delta)
        rhs = np.sum(delta * t * delta**-1)
    elif identity == "generalized_primal_weighted":
        lhs = np.sum(delta**-0.5 * s * delta)
        rhs = np.sum(t * delta**-1)
    else:  # generalized_dual_weighted
        lhs = np.sum(s * delta)
        rhs = np.sum(delta**0.5 * t * delta**-1)
    return float(abs(lhs - rhs))


def preimage(phi: GroupFunction, variant: str = "plain") -> GroupFunction:
    """Explicit right inverse on the dual side (the surjectivity witness).

    With v_h the synthesis of the slice phi_h (so that DFT(v_h) = phi_h):

    * plain:       f(h, k) = delta(h)^-1   * v_h(k)
    * generalized: f(h, k) = delta(h)^-1/2 * v_h(tau_{h^-1}(k))

    Applying the matching transform to the result returns phi.
    """
    _require_side(phi, "dual", "preimage")
    sys = phi.system
    v = _kernels.batch_dft(phi.values, sys.normal_factor.divisors, inverse=True)
    if variant == "plain":
        rows = v / sys.delta[:, None]
    elif variant == "generalized":
        perm = np.vstack([sys.kperm(sys.inverse_index[i]) for i in range(sys.acting_order)])
        rows = np.take_along_axis(v, perm, axis=1) / np.sqrt(sys.delta)[:, None]
    else:
        raise StructureError(f"unknown preimage variant {variant!r}")
    return GroupFunction(sys, "primal", rows)


def transform_relation_residual(f: GroupFunction) -> float:
    """Sup distance in F#(h, omega) = delta(h)^1/2 * F(h, omega_h).

    Cross-checks the two transform pipelines against each other; zero up to
    round-off by construction.
    """
    _require_side(f, "primal", "transform_relation_residual")
    sys = f.system
    sharp = gen_tau_fourier(f).function.values
    plain = tau_fourier(f).function.values
    perm = _omega_perm_matrix(sys)
    reindexed = np.take_along_axis(np.asarray(plain), perm, axis=1)
    expected = np.sqrt(sys.delta)[:, None] * reindexed
    return float(np.max(np.abs(sharp - expected)))
