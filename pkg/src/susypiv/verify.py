"""The verification suite: every acceptance-grade property as a named check.

Each criterion function returns CheckResult entries with the measured value,
its threshold, and wall time; run_all executes the lot and appends the
overall-runtime check.  The CLI `verify` subcommand and the acceptance test
module are both thin wrappers over this file, so the numbers they report are
always the same.

Known red check: the decay threshold |g(+-10)| < 0.2 for the parameter set
(eps = 2+i, theta = pi/6, nu = 0.8+0.5i, j = 2).  That candidate is a
certified solution (residual ~1e-11) whose tail is (-1/2 - eps/omega)/y, so
|g(+-10)| -> |1/2 + eps/omega|/10 = 0.2735...; the 0.2 threshold is not
attainable at |x| = 10 for these parameters.  The check is kept as stated
and reports its failure honestly.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import closedforms as cf
from .errors import NonNormalizable
from .numerics import fd_derivative, linear_grid, ratio_spread
from .oscillator import (
    DerivativeTower,
    Frequency,
    LadderDirection,
    SeedKind,
    SeedSpec,
    eigenvalue,
    seed_jet,
    tower_eval,
)
from .painleve import g_first_order, g_higher_order, piv_residual, asymptotic_decay
from .pha import apply_natural_ladder, commutation_residual
from .susy import (
    Chain,
    LevelStatus,
    apply_intertwiner,
    created_state,
    normalize_on_grid,
    partner_potential,
    spectrum,
    transformed_state,
    wronskian_derivatives,
)

_SQRT2 = np.sqrt(2.0)


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    measured: str
    threshold: str
    seconds: float = 0.0
    negative_control: bool = False

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tag = " [negative control]" if self.negative_control else ""
        return (
            f"[{mark}] criterion {self.criterion:2d} | {self.name}{tag}: "
            f"measured {self.measured} vs {self.threshold} ({self.seconds:.2f}s)"
        )


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _rel_diff(lhs, rhs, floor: float = 1.0):
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), floor)))


def check_dual_branch(samples: int = 100, seed: int = 20240817) -> list:
    """Criterion 1: both seed branches agree to 1e-8 over random parameters."""

    def body():
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(samples):
            theta = rng.uniform(0.0, 1.4)
            r, phi = 3.0 * np.sqrt(rng.uniform()), rng.uniform(0, 2 * np.pi)
            eps = r * np.exp(1j * phi)
            rn, phin = 0.95 * np.sqrt(rng.uniform()), rng.uniform(0, 2 * np.pi)
            nu = rn * np.exp(1j * phin)
            x = rng.uniform(-5.0, 5.0)
            freq = Frequency(theta)
            spec = SeedSpec.general(eps, nu)
            first = seed_jet(spec, freq, x, branch="first")
            second = seed_jet(spec, freq, x, branch="second")
            worst = max(
                worst,
                abs(first.u - second.u) / abs(first.u),
                abs(first.du - second.du) / abs(first.du),
            )
        return worst

    worst, secs = _timed(body)
    results = [
        CheckResult(1, "dual-branch seed agreement", worst < 1e-8, f"{worst:.3e}", "< 1e-8", secs),
        CheckResult(1, "dual-branch runtime", secs < 5.0, f"{secs:.2f}s", "< 5 s", secs),
    ]
    return results


def _criterion2_seeds():
    seeds = [SeedSpec.general(0.35 + 0.45j, 0.4 + 0.2j), SeedSpec.general(2 + 1j, 0.8 + 0.5j)]
    seeds += [SeedSpec.bound_even(j) for j in range(4)]
    seeds += [SeedSpec.bound_odd(j) for j in range(4)]
    seeds.append(SeedSpec.ams(0.6 + 0.3j))
    return seeds


def check_seed_residuals() -> list:
    """Criterion 2: Schroedinger residual of every seed kind, tower second derivative."""

    def body():
        freq = Frequency(np.pi / 6)
        omega = freq.omega
        worst = 0.0
        for spec in _criterion2_seeds():
            if spec.kind is SeedKind.BOUND_ODD:
                grid = linear_grid(1e-3, 8.0, 1200)
            else:
                grid = linear_grid(-8.0, 8.0, 1601)
            eps = spec.epsilon_for(freq)
            jet = seed_jet(spec, freq, grid)
            tower = DerivativeTower(eps, omega)
            u2 = tower_eval(tower, jet, 2)
            residual = -0.5 * u2 + 0.5 * omega**2 * grid**2 * jet.u - eps * jet.u
            worst = max(worst, float(np.max(np.abs(residual) / np.maximum(1.0, np.abs(jet.u)))))
        return worst

    worst, secs = _timed(body)
    return [
        CheckResult(2, "seed Schroedinger residuals", worst < 1e-8, f"{worst:.3e}", "< 1e-8", secs),
        CheckResult(2, "seed residual runtime", secs < 5.0, f"{secs:.2f}s", "< 5 s", secs),
    ]


def check_closed_forms() -> list:
    """Criterion 3: Wronskian-generic partner potentials match the hand-derived forms."""

    def body():
        freq = Frequency(np.pi / 6)
        full = linear_grid(-8.0, 8.0, 1601)
        half = linear_grid(1e-3, 8.0, 1200)
        worst = 0.0

        def compare(chain, grid, reference):
            nonlocal worst
            (w, dw, d2w), mask = wronskian_derivatives(chain, grid, 2)
            v_gen = 0.5 * chain.freq.omega**2 * grid**2 - (d2w / w - (dw / w) ** 2)
            keep = ~mask
            worst = max(worst, _rel_diff(v_gen[keep], reference[keep]))

        for j in (1, 2, 3):
            compare(Chain(SeedSpec.bound_even(j), freq, 1), full, cf.bound_even_partner(j, freq, full))
        compare(Chain(SeedSpec.bound_odd(1), freq, 1), half, cf.bound_odd_partner(1, freq, half))
        compare(Chain(SeedSpec.ams(0.6 + 0.3j), freq, 1), full, cf.ams_partner(0.6 + 0.3j, freq, full))

        for spec in (SeedSpec.general(0.7 + 0.4j, 0.3 - 0.2j), SeedSpec.ams(0.9 + 0.4j)):
            chain2 = Chain(spec, freq, 2)
            jet = seed_jet(spec, freq, full)
            ref = cf.second_order_partner(jet.u, jet.du, spec.epsilon_for(freq), freq, full)
            compare(chain2, full, ref)
        return worst

    worst, secs = _timed(body)
    return [
        CheckResult(3, "closed-form potential regression", worst < 1e-8, f"{worst:.3e}", "< 1e-8", secs)
    ]


def check_intertwining_and_factorization() -> list:
    """Criterion 4: intertwining residual (FD route) and first-order factorization."""

    def body():
        freq = Frequency(np.pi / 6)
        omega = freq.omega
        base = SeedSpec.general(0.35 + 0.45j, 0.4 + 0.2j)
        grid = linear_grid(-4.0, 4.0, 81)
        worst_intertwine = 0.0
        for k in (1, 2):
            chain = Chain(base, freq, k)
            v_k = partner_potential(chain, grid)
            for n in range(6):
                psi = transformed_state(chain, n, grid)
                d2 = fd_derivative(lambda xx: transformed_state(chain, n, xx), grid, order=2)
                energy = eigenvalue(n, freq)
                residual = -0.5 * d2 + v_k * psi - energy * psi
                worst_intertwine = max(
                    worst_intertwine,
                    float(np.max(np.abs(residual)) / np.max(np.abs(energy * psi))),
                )

        chain1 = Chain(base, freq, 1)
        eps1 = base.epsilon_for(freq)
        u1 = seed_jet(base, freq, grid)
        t1 = DerivativeTower(eps1, omega)
        beta = u1.du / u1.u
        dbeta = tower_eval(t1, u1, 2) / u1.u - beta**2
        rng = np.random.default_rng(7)
        worst_factor = 0.0
        for _ in range(3):
            eps_t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            v = seed_jet(SeedSpec.general(eps_t, 0.2 + 0.1j), freq, grid)
            v2 = tower_eval(DerivativeTower(eps_t, omega), v, 2)
            w = (-v.du + beta * v.u) / _SQRT2
            dw = (-v2 + dbeta * v.u + beta * v.du) / _SQRT2
            lhs = (dw + beta * w) / _SQRT2
            rhs = -0.5 * v2 + (0.5 * omega**2 * grid**2 - eps1) * v.u
            worst_factor = max(worst_factor, _rel_diff(lhs, rhs, floor=float(np.max(np.abs(rhs)))))
        return worst_intertwine, worst_factor

    (worst_i, worst_f), secs = _timed(body)
    return [
        CheckResult(4, "intertwining residual (k=1,2; n=0..5)", worst_i < 1e-6, f"{worst_i:.3e}", "< 1e-6", secs),
        CheckResult(4, "first-order factorization identity", worst_f < 1e-8, f"{worst_f:.3e}", "< 1e-8", secs),
    ]


def check_ladder() -> list:
    """Criterion 5: natural-ladder proportionality and commutation residuals."""

    def body():
        freq = Frequency(np.pi / 6)
        grid = linear_grid(-4.0, 4.0, 81)
        chain1 = Chain(SeedSpec.bound_even(1), freq, 1)
        chain2 = Chain(SeedSpec.ams(0.9 + 0.4j), freq, 2)
        spread1 = ratio_spread(
            apply_natural_ladder(chain1, LadderDirection.RAISE, 0, grid),
            transformed_state(chain1, 1, grid),
        )
        spread2 = ratio_spread(
            apply_natural_ladder(chain2, LadderDirection.RAISE, 1, grid),
            transformed_state(chain2, 2, grid),
        )
        res1 = commutation_residual(chain1, 3, grid)
        res2 = commutation_residual(chain2, 2, grid)
        return max(spread1, spread2), max(res1, res2)

    (spread, residual), secs = _timed(body)
    return [
        CheckResult(5, "ladder proportionality spread", spread < 1e-6, f"{spread:.3e}", "< 1e-6", secs),
        CheckResult(5, "ladder commutation residual", residual < 1e-5, f"{residual:.3e}", "< 1e-5", secs),
    ]


def check_rational_solution() -> list:
    """Criterion 6: the seed at energy -omega/2 with nu = 0 gives g = -1/y, (a,b) = (-2,-2)."""

    def body():
        freq = Frequency(np.pi / 6)
        chain = Chain(SeedSpec.ams(0j), freq, 1)
        cand = g_first_order(chain, 1)
        ab_err = max(abs(cand.a + 2.0), abs(cand.b + 2.0))
        wide = linear_grid(-8.0, 8.0, 801)
        wide = wide[np.abs(wide) >= 0.5]
        g_err = float(np.max(np.abs(cand.g(wide) + 1.0 / (freq.sqrt_omega * wide))))
        narrow = linear_grid(-5.0, 5.0, 801)
        narrow = narrow[np.abs(narrow) >= 0.5]
        residual = piv_residual(cand, narrow, "analytic").max_residual
        return ab_err, g_err, residual

    (ab_err, g_err, residual), secs = _timed(body)
    return [
        CheckResult(6, "rational candidate parameters (-2,-2)", ab_err < 1e-12, f"{ab_err:.3e}", "< 1e-12", secs),
        CheckResult(6, "rational candidate g = -1/y", g_err < 1e-10, f"{g_err:.3e}", "< 1e-10", secs),
        CheckResult(6, "rational candidate residual", residual < 1e-12, f"{residual:.3e}", "< 1e-12", secs),
    ]


FIGURE_ENERGIES = (0.01 + 1j, 1 + 1j, 2 + 1j)
FIGURE_NU = 0.8 + 0.5j


def check_figure_candidates() -> list:
    """Criterion 7: first- and second-order candidates on the figure parameter sets."""

    def body():
        freq = Frequency(np.pi / 6)
        grid = linear_grid(-8.0, 8.0, 401)
        worst_an, worst_fd, excluded = 0.0, 0.0, 0
        for k in (1, 2):
            for eps in FIGURE_ENERGIES:
                chain = Chain(SeedSpec.general(eps, FIGURE_NU), freq, k)
                cand = g_first_order(chain, 2) if k == 1 else g_higher_order(chain)
                rep_an = piv_residual(cand, grid, "analytic")
                rep_fd = piv_residual(cand, grid, "fd")
                worst_an = max(worst_an, rep_an.max_residual)
                worst_fd = max(worst_fd, rep_fd.max_residual)
                excluded += len(rep_an.excluded)
        return worst_an, worst_fd, excluded

    (worst_an, worst_fd, excluded), secs = _timed(body)
    return [
        CheckResult(7, "figure candidates analytic residual", worst_an < 1e-6, f"{worst_an:.3e}", "< 1e-6", secs),
        CheckResult(
            7,
            "figure candidates fd residual",
            worst_fd < 1e-4,
            f"{worst_fd:.3e} ({excluded} excluded pts)",
            "< 1e-4",
            secs,
        ),
        CheckResult(7, "figure candidates runtime", secs < 20.0, f"{secs:.2f}s", "< 20 s", secs),
    ]


def check_asymptotics() -> list:
    """Criterion 8: decay of the parametric-figure candidate.

    The 0.2-at-10 clause fails by construction of the candidate itself (tail
    |1/2 + eps/omega| / |y| = 0.2735... at |y| = 10); see the module
    docstring.  It is evaluated and reported as stated.
    """

    def body():
        freq = Frequency(np.pi / 6)
        chain = Chain(SeedSpec.general(2 + 1j, FIGURE_NU), freq, 1)
        cand = g_first_order(chain, 2)
        values = [asymptotic_decay(cand, X) for X in (6.0, 8.0, 10.0)]
        return values

    values, secs = _timed(body)
    trend_ok = values[0] >= values[1] >= values[2]
    return [
        CheckResult(8, "decay magnitude at |x| = 10", values[2] < 0.2, f"{values[2]:.4f}", "< 0.2", secs),
        CheckResult(
            8,
            "decay trend over X = 6, 8, 10",
            trend_ok,
            "[" + ", ".join(f"{v:.4f}" for v in values) + "]",
            "non-increasing",
            secs,
        ),
    ]


def check_spectrum_bookkeeping() -> list:
    """Criterion 9: deleted/created level bookkeeping and normalizability flags."""

    def body():
        freq = Frequency(np.pi / 6)
        omega = freq.omega
        notes = []
        ok = True

        entries = spectrum(Chain(SeedSpec.bound_even(1), freq, 1))
        deleted = [e.label for e in entries if e.status is LevelStatus.DELETED]
        created = [e for e in entries if e.status is LevelStatus.CREATED]
        ok &= deleted == [2] and not created
        notes.append(f"bound-even(1): deleted={deleted} created={len(created)}")

        entries = spectrum(Chain(SeedSpec.bound_odd(1), freq, 1))
        deleted = [e.label for e in entries if e.status is LevelStatus.DELETED]
        created = [e for e in entries if e.status is LevelStatus.CREATED]
        ok &= deleted == [1] and not created
        notes.append(f"bound-odd(1): deleted={deleted} created={len(created)}")

        entries = spectrum(Chain(SeedSpec.ams(0.6 + 0.3j), freq, 1))
        created = [e for e in entries if e.status is LevelStatus.CREATED]
        ok &= len(created) == 1 and abs(created[0].energy + 0.5 * omega) < 1e-12
        ok &= not [e for e in entries if e.status is LevelStatus.DELETED]
        notes.append(f"ams: created={[e.label for e in created]}")

        grid = linear_grid(-8.0, 8.0, 1601)
        try:
            normalize_on_grid(created_state(Chain(SeedSpec.bound_even(1), freq, 1), 1, grid), grid)
            ok = False
            notes.append("bound-even created state unexpectedly normalizable")
        except NonNormalizable:
            notes.append("bound-even created state: NonNormalizable")
        return ok, "; ".join(notes)

    (ok, notes), secs = _timed(body)
    return [CheckResult(9, "spectrum bookkeeping", ok, notes, "exact case analysis", secs)]


def check_harmonic_limit() -> list:
    """Criterion 10: theta = 0 with real parameters keeps everything real."""

    def body():
        freq = Frequency(0.0)
        grid = linear_grid(-8.0, 8.0, 801)
        worst = 0.0
        for k in (1, 2):
            chain = Chain(SeedSpec.general(-1.0, 0.5), freq, k)
            v = partner_potential(chain, grid)
            worst = max(worst, float(np.max(np.abs(v.imag))))
            cand = g_higher_order(chain) if k == 2 else g_first_order(chain, 2)
            sample = grid[np.abs(grid) >= 1e-2]
            worst = max(worst, float(np.max(np.abs(cand.g(sample).imag))))
        v = partner_potential(Chain(SeedSpec.ams(0.3), freq, 1), grid)
        worst = max(worst, float(np.max(np.abs(v.imag))))
        return worst

    worst, secs = _timed(body)
    return [
        CheckResult(10, "harmonic-limit imaginary parts", worst < 1e-10, f"{worst:.3e}", "< 1e-10", secs)
    ]


def check_negative_controls() -> list:
    """Criterion 11: corrupted candidates must produce large residuals."""

    def body():
        freq = Frequency(np.pi / 6)
        chain = Chain(SeedSpec.general(2 + 1j, FIGURE_NU), freq, 1)
        cand = g_first_order(chain, 2)
        grid = linear_grid(-8.0, 8.0, 401)
        bad_b = piv_residual(cand.perturbed(b_offset=1.0), grid, "analytic").max_residual
        bad_g = piv_residual(cand.perturbed(g_scale=1.01), grid, "analytic").max_residual
        return bad_b, bad_g

    (bad_b, bad_g), secs = _timed(body)
    return [
        CheckResult(
            11, "corrupted b detected", bad_b > 1e-2, f"{bad_b:.3e}", "> 1e-2", secs, negative_control=True
        ),
        CheckResult(
            11, "scaled g detected", bad_g > 1e-2, f"{bad_g:.3e}", "> 1e-2", secs, negative_control=True
        ),
    ]


CRITERIA = {
    1: check_dual_branch,
    2: check_seed_residuals,
    3: check_closed_forms,
    4: check_intertwining_and_factorization,
    5: check_ladder,
    6: check_rational_solution,
    7: check_figure_candidates,
    8: check_asymptotics,
    9: check_spectrum_bookkeeping,
    10: check_harmonic_limit,
    11: check_negative_controls,
}


def run_all() -> list:
    """Run every criterion; appends the overall-runtime check (criterion 12)."""
    t0 = time.perf_counter()
    results: list = []
    for number in sorted(CRITERIA):
        results.extend(CRITERIA[number]())
    total = time.perf_counter() - t0
    results.append(
        CheckResult(12, "full suite runtime", total < 60.0, f"{total:.1f}s", "< 60 s", total)
    )
    return results


def summarize(results) -> dict:
    total_seconds = next(
        (r.seconds for r in results if r.criterion == 12),
        sum({r.criterion: r.seconds for r in results}.values()),
    )
    return {
        "total": len(results),
        "passed": int(sum(r.passed for r in results)),
        "failed": [r.name for r in results if not r.passed],
        "seconds": round(total_seconds, 2),
    }
