"""Named invariant suites behind ``tauh verify``.

Each check returns a nonnegative residual; a check passes when the residual
is at or below its tolerance.  Counting checks (group axioms, pointwise
identities over integer phases) report the number of failures, so their
tolerance is 0.  Randomized checks draw from a generator seeded per check
name, making a report a pure function of (target, suite, trials, seed).

Suites: group, duality, plancherel, parseval, inversion.  Finite systems and
the sampled affine continuum have different check sets under the same suite
names.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from . import affine as affine_mod
from . import transforms
from .affine import AffineGrid
from .catalog import EXHAUSTIVE_PAIR_LIMIT, CatalogEntry, verify_dual_law
from .exceptions import StructureError
from .lca import KFunction
from .semidirect import GroupFunction, TauSystem, random_group_function

SUITES = ("group", "duality", "plancherel", "parseval", "inversion")

_ASSOC_EXHAUSTIVE = 300_000
_PAIR_EXHAUSTIVE = 10**6
_POINTWISE_EXHAUSTIVE = 10**4
_SAMPLED = 1000


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def _rng_for(name: str, seed: int):
    return np.random.default_rng(np.random.SeedSequence((seed, zlib.crc32(name.encode()))))


# -- vectorized element arithmetic on finite systems -------------------------


def _mul_vec(sys: TauSystem, hi, ki, hj, kj):
    K = sys.normal_factor
    coords = K.coords_table()
    divisors = np.asarray(K.divisors, dtype=np.int64)
    hk = sys.cayley[hi, hj]
    acted = sys._kperm[hi, kj]
    summed = (coords[ki] + coords[acted]) % divisors
    return hk, K.index_table(summed)


def _inv_vec(sys: TauSystem, hi, ki):
    K = sys.normal_factor
    coords = K.coords_table()
    divisors = np.asarray(K.divisors, dtype=np.int64)
    hinv = sys.inverse_index[hi]
    neg_idx = K.index_table((-coords[ki]) % divisors)
    return hinv, sys._kperm[hinv, neg_idx]


def _axioms_failures(sys: TauSystem, rng) -> int:
    m, n = sys.acting_order, sys.normal_factor.order
    total = m * n
    hi, ki = np.divmod(np.arange(total), n)
    e_h = np.full(total, sys.identity_index)
    e_k = np.zeros(total, dtype=np.int64)
    failures = 0
    for (ha, ka), (hb, kb) in (((e_h, e_k), (hi, ki)), ((hi, ki), (e_h, e_k))):
        h, k = _mul_vec(sys, ha, ka, hb, kb)
        failures += int(np.count_nonzero((h != hi) | (k != ki)))
    vh, vk = _inv_vec(sys, hi, ki)
    for (ha, ka), (hb, kb) in (((hi, ki), (vh, vk)), ((vh, vk), (hi, ki))):
        h, k = _mul_vec(sys, ha, ka, hb, kb)
        failures += int(np.count_nonzero((h != sys.identity_index) | (k != 0)))
    if total**3 <= _ASSOC_EXHAUSTIVE:
        g = np.arange(total)
        i, j, k = (x.ravel() for x in np.meshgrid(g, g, g, indexing="ij"))
    else:
        i, j, k = rng.integers(0, total, size=(3, _SAMPLED))
    hi1, ki1 = i // n, i % n
    hj1, kj1 = j // n, j % n
    hk1, kk1 = k // n, k % n
    ha, ka = _mul_vec(sys, hi1, ki1, hj1, kj1)
    ha, ka = _mul_vec(sys, ha, ka, hk1, kk1)
    hb, kb = _mul_vec(sys, hj1, kj1, hk1, kk1)
    hb, kb = _mul_vec(sys, hi1, ki1, hb, kb)
    failures += int(np.count_nonzero((ha != hb) | (ka != kb)))
    return failures


def _haar_invariance_residual(sys: TauSystem, rng, trials: int) -> float:
    """Left invariance of the weighted sum over the whole product.

    Run on a system as-is this checks the primal measure; run on the dual
    system it checks the dual one (the constant 1/|K| factor of the dual
    measure cancels from both sides and is omitted).
    """
    m, n = sys.acting_order, sys.normal_factor.order
    total = m * n
    coords = sys.normal_factor.coords_table()
    divisors = np.asarray(sys.normal_factor.divisors, dtype=np.int64)
    weights = np.asarray(sys.delta)[:, None]
    if total <= 256:
        translates = np.arange(total)
    else:
        translates = rng.integers(0, total, size=64)
    worst = 0.0
    for _ in range(max(1, min(trials, 4))):
        f = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        base = np.sum(weights * f)
        scale = max(1.0, abs(base))
        for g0 in translates:
            h0, k0 = divmod(int(g0), n)
            h0inv = sys.inverse_index[h0]
            rows = sys.cayley[h0inv]
            shifted = sys.normal_factor.index_table((coords - coords[k0]) % divisors)
            cols = sys._kperm[h0inv, shifted]
            lhs = np.sum(weights * f[rows][:, cols])
            worst = max(worst, abs(lhs - base) / scale)
    return worst


def _finite_group_checks(sys: TauSystem, trials, seed):
    dual = sys.dual()

    def axioms_primal():
        return float(_axioms_failures(sys, _rng_for("group:axioms_primal", seed)))

    def axioms_dual():
        return float(_axioms_failures(dual, _rng_for("group:axioms_dual", seed)))

    def action_homomorphism():
        failures = 0
        for i in range(sys.acting_order):
            for j in range(sys.acting_order):
                composed = sys.automorphisms[i].compose(sys.automorphisms[j])
                if composed != sys.automorphisms[sys.cayley[i, j]]:
                    failures += 1
        return float(failures)

    def delta_multiplicative():
        d = np.asarray(sys.delta)
        return float(np.max(np.abs(d[sys.cayley] - d[:, None] * d[None, :])))

    def haar_primal():
        return _haar_invariance_residual(sys, _rng_for("group:haar_invariance_primal", seed), trials)

    def haar_dual():
        return _haar_invariance_residual(dual, _rng_for("group:haar_invariance_dual", seed), trials)

    def modular_multiplicative():
        rng = _rng_for("group:modular_multiplicative", seed)
        elements = list(sys.elements())
        worst = 0.0
        for _ in range(min(trials, 100)):
            x = elements[rng.integers(len(elements))]
            y = elements[rng.integers(len(elements))]
            lhs = sys.modular_function(sys.multiply(x, y))
            rhs = sys.modular_function(x) * sys.modular_function(y)
            worst = max(worst, abs(lhs - rhs))
        return worst

    return [
        ("group:axioms_primal", axioms_primal, 0.0),
        ("group:axioms_dual", axioms_dual, 0.0),
        ("group:action_homomorphism", action_homomorphism, 0.0),
        ("group:delta_multiplicative", delta_multiplicative, 1e-12),
        ("group:haar_invariance_primal", haar_primal, 1e-12),
        ("group:haar_invariance_dual", haar_dual, 1e-12),
        ("group:modular_multiplicative", modular_multiplicative, 1e-12),
    ]


def _finite_duality_checks(sys: TauSystem, trials, seed, entry: CatalogEntry | None):
    def dual_action_homomorphism():
        operm = sys._omega_perm
        failures = 0
        for t in range(sys.acting_order):
            for h in range(sys.acting_order):
                if not np.array_equal(operm[sys.cayley[t, h]], operm[t][operm[h]]):
                    failures += 1
        return float(failures)

    def double_dual_structure():
        return 0.0 if sys.double_dual() == sys else 1.0

    def double_dual_homomorphism():
        rng = _rng_for("duality:double_dual_homomorphism", seed)
        dd = sys.double_dual()
        total = sys.order
        if total**2 <= _PAIR_EXHAUSTIVE:
            g = np.arange(total)
            i, j = (x.ravel() for x in np.meshgrid(g, g, indexing="ij"))
        else:
            i, j = rng.integers(0, total, size=(2, 10 * _SAMPLED))
        n = sys.normal_factor.order
        ha, ka = _mul_vec(sys, i // n, i % n, j // n, j % n)
        hb, kb = _mul_vec(dd, i // n, i % n, j // n, j % n)
        return float(np.count_nonzero((ha != hb) | (ka != kb)))

    def double_dual_pointwise():
        # the evaluation character of tau_h(k) must equal the double-dual
        # action of h on the evaluation character of k; in integer phases:
        # phase(omega, tau_h(k)) == phase(omega_{h^-1}, k) for all h, k, omega
        rng = _rng_for("duality:double_dual_pointwise", seed)
        K = sys.normal_factor
        coords = K.coords_table()
        L = K.exponent
        scale = np.asarray([L // d for d in K.divisors], dtype=np.int64)
        scaled = coords * scale[None, :]
        failures = 0
        exhaustive = sys.acting_order * K.order**2 <= _POINTWISE_EXHAUSTIVE
        for h in range(sys.acting_order):
            acted_k = coords[sys._kperm[h]]
            acted_omega = scaled[sys._omega_perm[sys.inverse_index[h]]]
            if exhaustive:
                lhs = (scaled @ acted_k.T) % L
                rhs = (acted_omega @ coords.T) % L
                failures += int(np.count_nonzero(lhs != rhs))
            else:
                oi, ki = rng.integers(0, K.order, size=(2, _SAMPLED))
                lhs = np.sum(scaled[oi] * acted_k[ki], axis=1) % L
                rhs = np.sum(acted_omega[oi] * coords[ki], axis=1) % L
                failures += int(np.count_nonzero(lhs != rhs))
        return float(failures)

    def pushforward():
        rng = _rng_for("duality:pushforward", seed)
        worst = 0.0
        for label in sys.labels:
            g = KFunction(sys.normal_factor, rng.random(sys.normal_factor.order), side="dual")
            lhs, rhs = sys.pushforward_check(label, g)
            worst = max(worst, abs(lhs - rhs))
        return worst

    checks = [
        ("duality:dual_action_homomorphism", dual_action_homomorphism, 0.0),
        ("duality:double_dual_structure", double_dual_structure, 0.0),
        ("duality:double_dual_homomorphism", double_dual_homomorphism, 0.0),
        ("duality:double_dual_pointwise", double_dual_pointwise, 0.0),
        ("duality:pushforward", pushforward, 0.0),
    ]
    if entry is not None:

        def dual_law_oracle():
            try:
                verify_dual_law(entry, EXHAUSTIVE_PAIR_LIMIT, _rng_for("duality:dual_law_oracle", seed))
            except StructureError:
                return 1.0
            return 0.0

        checks.append(("duality:dual_law_oracle", dual_law_oracle, 0.0))
    return checks


def _finite_plancherel_checks(sys: TauSystem, trials, seed):
    def isometry(forward, name):
        rng = _rng_for(name, seed)
        worst = 0.0
        for _ in range(trials):
            f = random_group_function(sys, "primal", rng)
            result = forward(f)
            worst = max(worst, abs(result.function.norm_sq() - f.norm_sq()) / f.norm_sq())
        return worst

    return [
        ("plancherel:plain", lambda: isometry(transforms.tau_fourier, "plancherel:plain"), 1e-10),
        (
            "plancherel:generalized",
            lambda: isometry(transforms.gen_tau_fourier, "plancherel:generalized"),
            1e-10,
        ),
    ]


def _finite_parseval_checks(sys: TauSystem, trials, seed):
    def residual(identity):
        def run():
            rng = _rng_for(f"parseval:{identity}", seed)
            worst = 0.0
            for _ in range(trials):
                f = random_group_function(sys, "primal", rng)
                psi = random_group_function(sys, "dual", rng)
                worst = max(worst, transforms.parseval_residual(f, psi, identity))
            return worst

        return run

    def linearity():
        rng = _rng_for("parseval:linearity", seed)
        worst = 0.0
        for _ in range(min(trials, 25)):
            f = random_group_function(sys, "primal", rng)
            g = random_group_function(sys, "primal", rng)
            alpha = complex(*rng.standard_normal(2))
            beta = complex(*rng.standard_normal(2))
            combo = GroupFunction(sys, "primal", alpha * f.values + beta * g.values)
            lhs = transforms.tau_fourier(combo).function.values
            rhs = (
                alpha * transforms.tau_fourier(f).function.values
                + beta * transforms.tau_fourier(g).function.values
            )
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    checks = [
        (f"parseval:{identity}", residual(identity), 1e-10)
        for identity in transforms.PARSEVAL_IDENTITIES
    ]
    checks.append(("parseval:linearity", linearity, 1e-12))
    return checks


def _finite_inversion_checks(sys: TauSystem, trials, seed):
    def roundtrip(forward, inverse, name):
        def run():
            rng = _rng_for(name, seed)
            worst = 0.0
            for _ in range(trials):
                f = random_group_function(sys, "primal", rng)
                back = inverse(forward(f).function)
                worst = max(worst, float(np.max(np.abs(back.values - f.values))))
            return worst

        return run

    def consistency():
        rng = _rng_for("inversion:consistency", seed)
        worst = 0.0
        for _ in range(min(trials, 25)):
            f = random_group_function(sys, "primal", rng)
            plain = transforms.tau_fourier_inverse(transforms.tau_fourier(f).function)
            gen = transforms.gen_tau_fourier_inverse(transforms.gen_tau_fourier(f).function)
            worst = max(worst, float(np.max(np.abs(plain.values - gen.values))))
        return worst

    def surjectivity(forward, variant, name):
        def run():
            rng = _rng_for(name, seed)
            worst = 0.0
            for _ in range(trials):
                phi = random_group_function(sys, "dual", rng)
                witness = transforms.preimage(phi, variant)
                image = forward(witness).function
                worst = max(worst, float(np.max(np.abs(image.values - phi.values))))
            return worst

        return run

    def relation():
        rng = _rng_for("inversion:transform_relation", seed)
        worst = 0.0
        for _ in range(min(trials, 25)):
            f = random_group_function(sys, "primal", rng)
            worst = max(worst, transforms.transform_relation_residual(f))
        return worst

    return [
        (
            "inversion:roundtrip_plain",
            roundtrip(transforms.tau_fourier, transforms.tau_fourier_inverse, "inversion:roundtrip_plain"),
            1e-12,
        ),
        (
            "inversion:roundtrip_generalized",
            roundtrip(
                transforms.gen_tau_fourier,
                transforms.gen_tau_fourier_inverse,
                "inversion:roundtrip_generalized",
            ),
            1e-12,
        ),
        ("inversion:consistency", consistency, 1e-12),
        (
            "inversion:surjectivity_plain",
            surjectivity(transforms.tau_fourier, "plain", "inversion:surjectivity_plain"),
            1e-10,
        ),
        (
            "inversion:surjectivity_generalized",
            surjectivity(transforms.gen_tau_fourier, "generalized", "inversion:surjectivity_generalized"),
            1e-10,
        ),
        ("inversion:transform_relation", relation, 1e-12),
    ]


# -- continuum checks ---------------------------------------------------------

_PLANCHEREL_TARGET = 1.0 / (2.0 * math.sqrt(2.0))


def _continuum_group_checks(grid: AffineGrid, trials, seed):
    def associativity():
        rng = _rng_for("group:dual_associativity", seed)
        worst = 0.0
        for _ in range(min(trials, 200)):
            xs = [(rng.uniform(0.5, 2.0), rng.uniform(-4, 4)) for _ in range(3)]
            left = affine_mod.dual_multiply(affine_mod.dual_multiply(xs[0], xs[1]), xs[2])
            right = affine_mod.dual_multiply(xs[0], affine_mod.dual_multiply(xs[1], xs[2]))
            worst = max(worst, abs(left[0] - right[0]), abs(left[1] - right[1]))
        return worst

    def identity():
        rng = _rng_for("group:dual_identity", seed)
        worst = 0.0
        for _ in range(min(trials, 200)):
            x = (rng.uniform(0.5, 2.0), rng.uniform(-4, 4))
            for y in (affine_mod.dual_multiply((1.0, 0.0), x), affine_mod.dual_multiply(x, (1.0, 0.0))):
                worst = max(worst, abs(y[0] - x[0]), abs(y[1] - x[1]))
        return worst

    def inverse():
        rng = _rng_for("group:dual_inverse", seed)
        worst = 0.0
        for _ in range(min(trials, 200)):
            x = (rng.uniform(0.5, 2.0), rng.uniform(-4, 4))
            e = affine_mod.dual_multiply(affine_mod.dual_inverse(x), x)
            worst = max(worst, abs(e[0] - 1.0), abs(e[1]))
        return worst

    def delta_multiplicative():
        rng = _rng_for("group:delta_multiplicative", seed)
        worst = 0.0
        for _ in range(min(trials, 200)):
            a, a2 = rng.uniform(0.25, 4.0, size=2)
            worst = max(worst, abs(affine_mod.delta(a * a2) - affine_mod.delta(a) * affine_mod.delta(a2)))
        return worst

    return [
        ("group:dual_associativity", associativity, 1e-12),
        ("group:dual_identity", identity, 0.0),
        ("group:dual_inverse", inverse, 1e-12),
        ("group:delta_multiplicative", delta_multiplicative, 1e-13),
    ]


def _continuum_duality_checks(grid: AffineGrid, trials, seed):
    def pushforward_scaling():
        gauss = lambda w: np.exp(-np.pi * w**2)
        worst = 0.0
        for a in grid.a:
            lhs, rhs = affine_mod.scaling_pushforward_sides(grid, gauss, float(a))
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
        return worst

    def dual_haar_invariance():
        bump = lambda a, w: np.exp(-(((a - 1.45) / 0.07) ** 2) / 2 - (w / 1.0) ** 2 / 2)
        return affine_mod.dual_haar_invariance_residual(grid, bump, (1.03, 0.3))

    def dual_law_oracle():
        # closed-form law (a a', omega + a^-1 omega'), written independently
        # of dual_multiply; agreement must be floating-point exact
        rng = _rng_for("duality:dual_law_oracle", seed)
        worst = 0.0
        for _ in range(10**4):
            x = (rng.uniform(0.25, 4.0), rng.uniform(-8, 8))
            y = (rng.uniform(0.25, 4.0), rng.uniform(-8, 8))
            a2, w2 = affine_mod.dual_multiply(x, y)
            oracle = (x[0] * y[0], x[1] + y[1] / x[0])
            worst = max(worst, abs(a2 - oracle[0]), abs(w2 - oracle[1]))
        return worst

    return [
        ("duality:pushforward_scaling", pushforward_scaling, 1e-6),
        ("duality:dual_haar_invariance", dual_haar_invariance, 1e-3),
        ("duality:dual_law_oracle", dual_law_oracle, 0.0),
    ]


def _continuum_plancherel_checks(grid: AffineGrid, trials, seed):
    def gaussian_residuals(variant):
        f = affine_mod.gaussian_window(grid)
        lhs, rhs = affine_mod.plancherel_sides(f, variant)
        return max(
            abs(lhs - _PLANCHEREL_TARGET) / _PLANCHEREL_TARGET,
            abs(rhs - _PLANCHEREL_TARGET) / _PLANCHEREL_TARGET,
        )

    def refinement():
        fine_grid = grid.refined(2)
        worst_ratio = 0.0
        for variant in ("plain", "generalized"):
            coarse = gaussian_residuals(variant)
            f_fine = affine_mod.gaussian_window(fine_grid)
            lhs, rhs = affine_mod.plancherel_sides(f_fine, variant)
            fine = max(
                abs(lhs - _PLANCHEREL_TARGET) / _PLANCHEREL_TARGET,
                abs(rhs - _PLANCHEREL_TARGET) / _PLANCHEREL_TARGET,
            )
            worst_ratio = max(worst_ratio, fine / coarse)
        return worst_ratio

    return [
        ("plancherel:plain_gaussian", lambda: gaussian_residuals("plain"), 1e-4),
        ("plancherel:generalized_gaussian", lambda: gaussian_residuals("generalized"), 1e-3),
        # halving the steps must at least halve the residual; the 0.5 bound is
        # a ratio, not an error tolerance, so --tol does not override it
        ("plancherel:refinement", refinement, 0.5, "fixed"),
    ]


def _continuum_inversion_checks(grid: AffineGrid, trials, seed):
    def roundtrip(variant, name):
        def run():
            rng = _rng_for(name, seed)
            forward = affine_mod.tau_fourier if variant == "plain" else affine_mod.gen_tau_fourier
            worst = 0.0
            inputs = [affine_mod.gaussian_window(grid)]
            inputs += [affine_mod.random_bump_function(grid, rng) for _ in range(min(trials, 3))]
            for f in inputs:
                back = affine_mod.reconstruct(forward(f), variant)
                worst = max(worst, affine_mod.interior_relative_l2_error(back, f))
            return worst

        return run

    def agreement():
        rng = _rng_for("inversion:reconstruction_agreement", seed)
        f = affine_mod.random_bump_function(grid, rng)
        plain = affine_mod.reconstruct(affine_mod.tau_fourier(f), "plain")
        gen = affine_mod.reconstruct(affine_mod.gen_tau_fourier(f), "generalized")
        return affine_mod.interior_relative_l2_error(plain, gen)

    return [
        ("inversion:roundtrip_plain", roundtrip("plain", "inversion:roundtrip_plain"), 1e-3),
        (
            "inversion:roundtrip_generalized",
            roundtrip("generalized", "inversion:roundtrip_generalized"),
            1e-3,
        ),
        ("inversion:reconstruction_agreement", agreement, 1e-3),
    ]


def _continuum_parseval_checks(grid: AffineGrid, trials, seed):
    def quadruple(variant):
        def run():
            f = affine_mod.gaussian_window(grid)
            return affine_mod.quadruple_integral_residual(f, variant) / affine_mod.primal_norm_sq(f)

        return run

    def scaling():
        # doubling f multiplies both sides of the quadruple identity by 4
        f = affine_mod.gaussian_window(grid)
        doubled = affine_mod.SampledAffineFunction(grid, "primal", 2.0 * f.values)
        worst = 0.0
        for variant in ("plain", "generalized"):
            lhs1, rhs1 = affine_mod.plancherel_sides(f, variant)
            lhs2, rhs2 = affine_mod.plancherel_sides(doubled, variant)
            worst = max(worst, abs(lhs2 / lhs1 - 4.0), abs(rhs2 / rhs1 - 4.0))
        return worst

    return [
        ("parseval:quadruple_plain", quadruple("plain"), 1e-3),
        ("parseval:quadruple_generalized", quadruple("generalized"), 1e-3),
        ("parseval:quadruple_scaling", scaling, 1e-12),
    ]


# -- runner -------------------------------------------------------------------


def run_checks(target, suite="all", trials=100, seed=0, tol=None):
    """Run the named suite(s) against a system, catalog entry, or grid.

    Returns CheckResults sorted by name.  ``trials`` = 0 yields an empty
    report; ``tol`` overrides every check's default tolerance.
    """
    entry = None
    if isinstance(target, CatalogEntry):
        entry = target
        target = target.system
    if suite != "all" and suite not in SUITES:
        raise StructureError(f"unknown suite {suite!r}; expected 'all' or one of {SUITES}")
    if trials <= 0:
        return []

    if isinstance(target, TauSystem):
        builders = {
            "group": lambda: _finite_group_checks(target, trials, seed),
            "duality": lambda: _finite_duality_checks(target, trials, seed, entry),
            "plancherel": lambda: _finite_plancherel_checks(target, trials, seed),
            "parseval": lambda: _finite_parseval_checks(target, trials, seed),
            "inversion": lambda: _finite_inversion_checks(target, trials, seed),
        }
    elif isinstance(target, AffineGrid):
        builders = {
            "group": lambda: _continuum_group_checks(target, trials, seed),
            "duality": lambda: _continuum_duality_checks(target, trials, seed),
            "plancherel": lambda: _continuum_plancherel_checks(target, trials, seed),
            "parseval": lambda: _continuum_parseval_checks(target, trials, seed),
            "inversion": lambda: _continuum_inversion_checks(target, trials, seed),
        }
    else:
        raise StructureError(f"cannot verify object of type {type(target).__name__}")

    wanted = SUITES if suite == "all" else (suite,)
    results = []
    for name in wanted:
        for spec in builders[name]():
            check_name, fn, default_tol = spec[:3]
            fixed = len(spec) > 3 or default_tol == 0.0
            residual = float(fn())
            tolerance = default_tol if (tol is None or fixed) else float(tol)
            results.append(CheckResult(check_name, residual, tolerance))
    return sorted(results, key=lambda r: r.name)
