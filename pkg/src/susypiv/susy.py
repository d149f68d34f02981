"""Darboux/Wronskian transformation engine.

A Chain holds k connected seeds u_{j+1} = a^- u_j at energies stepping down
by omega.  Everything the partner Hamiltonian needs is a derivative of
ln W(u_1, ..., u_k), so the engine reduces to: evaluate each seed as a jet,
extend jets to arbitrary derivative order through the towers, and take
determinants with differentiated rows.  Differentiating a Wronskian row onto
an order already present kills the determinant, which is why each derivative
of W costs only one or two extra determinants.

Transformed eigenstates are produced by iterating the first-order map
f -> (-f' + (ln(W_j/W_{j-1}))' f)/sqrt(2); the Schroedinger equation of the
intermediate Hamiltonian closes f'' at every stage, so the whole iteration
stays a jet computation.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DeletedLevel, NonNormalizable, SingularPoint
from .numerics import trapezoid
from .oscillator import (
    DerivativeTower,
    Frequency,
    JetValue,
    LadderDirection,
    LevelStatus,
    SeedKind,
    SeedSpec,
    SpectrumEntry,
    eigenfunction_jet,
    eigenvalue,
    ladder_jet,
    seed_jet,
    tower_eval,
)

_SQRT2 = np.sqrt(2.0)

DELTA_W = 1e-12  # |W| below this times the row-norm product flags a singular point
DECAY_AMPLITUDE_RATIO = 1e-3  # endpoint-to-peak magnitude defining "decays"
TAIL_FRACTION = 0.01  # tolerated tail share of the normalization integral
MAX_ORDER = 5


class Domain(Enum):
    FULL_LINE = "full-line"
    HALF_LINE = "half-line"


@dataclass(frozen=True)
class Chain:
    """A connected family of k seeds defining a k-th order transformation.

    Energies form the arithmetic progression eps_j = eps_1 - (j-1) omega; the
    domain collapses to (0, inf) exactly when the base seed is an odd bound
    state (its node at the origin becomes an infinite barrier there).
    """

    base: SeedSpec
    freq: Frequency
    k: int = 1

    def __post_init__(self):
        if not 1 <= self.k <= MAX_ORDER:
            raise ValueError(f"transformation order must be in 1..{MAX_ORDER}")

    @property
    def epsilons(self) -> tuple:
        eps1 = self.base.epsilon_for(self.freq)
        return tuple(eps1 - j * self.freq.omega for j in range(self.k))

    @property
    def domain(self) -> Domain:
        return Domain.HALF_LINE if self.base.kind is SeedKind.BOUND_ODD else Domain.FULL_LINE


@dataclass(frozen=True)
class WronskianJet:
    x: object
    W: object
    dW: object
    d2W: object
    singular: object  # bool or boolean mask


def _check_domain(chain: Chain, x):
    if chain.domain is Domain.HALF_LINE and np.any(np.asarray(x) <= 0):
        raise ValueError("half-line chain: x must be positive")


def chain_seed_jets(chain: Chain, x) -> list:
    """Jets of u_1, ..., u_k; u_{j+1} by lowering u_j at its own energy."""
    _check_domain(chain, x)
    jets = [seed_jet(chain.base, chain.freq, x)]
    eps = chain.epsilons
    for j in range(1, chain.k):
        tower = DerivativeTower(eps[j - 1], chain.freq.omega)
        jets.append(ladder_jet(LadderDirection.LOWER, jets[-1], tower))
    return jets


@lru_cache(maxsize=None)
def _wronskian_terms(k: int, order: int) -> tuple:
    """Determinant expansion of d^order W / dx^order as (coefficient, row orders)."""
    terms = {tuple(range(k)): 1}
    for _ in range(order):
        nxt: dict = {}
        for rows, coef in terms.items():
            for i in range(k):
                bumped = rows[i] + 1
                if bumped in rows:
                    continue
                new = rows[:i] + (bumped,) + rows[i + 1 :]
                nxt[new] = nxt.get(new, 0) + coef
        terms = nxt
    return tuple(sorted(terms.items()))


def _derivative_table(chain: Chain, x, max_row: int):
    """table[m][j] = m-th derivative of seed j at x (arrays over x)."""
    jets = chain_seed_jets(chain, x)
    towers = [
        DerivativeTower(eps, chain.freq.omega, max_order=max(max_row, 2))
        for eps in chain.epsilons
    ]
    return [
        [tower_eval(towers[j], jets[j], m) for j in range(chain.k)]
        for m in range(max_row + 1)
    ]


def _det(table, rows, cols):
    r = len(rows)
    if r == 0:
        first = np.asarray(table[0][0])
        return np.ones(first.shape, dtype=complex)
    if r == 1:
        return np.asarray(table[rows[0]][cols[0]], dtype=complex)
    first = np.asarray(table[0][0])
    mat = np.empty(first.shape + (r, r), dtype=complex)
    for i, m in enumerate(rows):
        for jc, c in enumerate(cols):
            mat[..., i, jc] = table[m][c]
    return np.linalg.det(mat)


def _wronskian_orders(table, cols, orders):
    k = len(cols)
    out = []
    for order in orders:
        acc = None
        for rows, coef in _wronskian_terms(k, order):
            d = _det(table, rows, cols)
            acc = coef * d if acc is None else acc + coef * d
        if acc is None:  # empty seed set differentiates to zero
            first = np.asarray(table[0][0])
            acc = np.zeros(first.shape, dtype=complex)
        out.append(acc)
    return out


def _singular_mask(table, k, delta_w, W):
    norm_product = np.ones(np.asarray(table[0][0]).shape)
    for m in range(k):
        row_norm = np.max(np.abs(np.stack([table[m][j] for j in range(k)])), axis=0)
        norm_product = norm_product * row_norm
    return np.abs(W) < delta_w * norm_product


def wronskian_derivatives(chain: Chain, x, max_order: int = 2, delta_w: float = DELTA_W):
    """W and its x-derivatives up to max_order, plus the singular-point mask."""
    _check_domain(chain, x)
    table = _derivative_table(chain, x, chain.k - 1 + max_order)
    cols = tuple(range(chain.k))
    ws = _wronskian_orders(table, cols, tuple(range(max_order + 1)))
    mask = _singular_mask(table, chain.k, delta_w, ws[0])
    return ws, mask


def wronskian_jet(chain: Chain, x, delta_w: float = DELTA_W) -> WronskianJet:
    """(W, W', W'') of the chain at x; raises SingularPoint at a scalar zero of W."""
    (w, dw, d2w), mask = wronskian_derivatives(chain, x, 2, delta_w)
    scalar = np.asarray(x).ndim == 0
    if scalar:
        if bool(mask):
            raise SingularPoint(f"Wronskian vanishes at x={x}")
        return WronskianJet(x=x, W=complex(w), dW=complex(dw), d2W=complex(d2w), singular=False)
    return WronskianJet(x=x, W=w, dW=dw, d2W=d2w, singular=mask)


def partner_potential(chain: Chain, x):
    """V_k(x) = omega^2 x^2 / 2 - (ln W)''.  Scalar x raises at singular points."""
    jet = wronskian_jet(chain, x)
    omega = chain.freq.omega
    xf = np.asarray(x, dtype=float)
    lnpp = jet.d2W / jet.W - (jet.dW / jet.W) ** 2
    v = 0.5 * omega**2 * xf**2 - lnpp
    return complex(v) if np.asarray(x).ndim == 0 else v


def partner_potential_dx(chain: Chain, x):
    """d/dx of the partner potential, from the third Wronskian derivative."""
    (w, dw, d2w, d3w), mask = wronskian_derivatives(chain, x, 3)
    omega = chain.freq.omega
    xf = np.asarray(x, dtype=float)
    l1 = dw / w
    lnppp = d3w / w - 3.0 * (d2w / w) * l1 + 2.0 * l1**3
    v = omega**2 * xf - lnppp
    if np.asarray(x).ndim == 0:
        if bool(mask):
            raise SingularPoint(f"Wronskian vanishes at x={x}")
        return complex(v)
    return v


def apply_intertwiner(chain: Chain, energy, jet: JetValue):
    """Value and derivative of B_k^+ f for a solution f of the oscillator at `energy`.

    Iterates the first-order maps built from consecutive Wronskian ratios;
    f'' closes through the intermediate Schroedinger equations, so the input
    jet (f, f') is all that is ever needed.
    """
    _check_domain(chain, jet.x)
    omega = chain.freq.omega
    xf = np.asarray(jet.x, dtype=float)
    table = _derivative_table(chain, jet.x, chain.k + 1)

    shape = np.asarray(table[0][0]).shape
    log_d1 = [np.zeros(shape, dtype=complex)]
    log_d2 = [np.zeros(shape, dtype=complex)]
    for j in range(1, chain.k + 1):
        w, dw, d2w = _wronskian_orders(table, tuple(range(j)), (0, 1, 2))
        l1 = dw / w
        log_d1.append(l1)
        log_d2.append(d2w / w - l1**2)

    f = np.asarray(jet.u, dtype=complex) + np.zeros(shape, dtype=complex)
    fd = np.asarray(jet.du, dtype=complex) + np.zeros(shape, dtype=complex)
    base_v = 0.5 * omega**2 * xf**2
    for j in range(1, chain.k + 1):
        beta = log_d1[j] - log_d1[j - 1]
        dbeta = log_d2[j] - log_d2[j - 1]
        v_prev = base_v - log_d2[j - 1]
        fpp = 2.0 * (v_prev - energy) * f
        f, fd = (-fd + beta * f) / _SQRT2, (-fpp + dbeta * f + beta * fd) / _SQRT2
    return f, fd


def deleted_levels(chain: Chain) -> frozenset:
    """Level labels removed from the partner spectrum (in the domain's labeling)."""
    if chain.base.kind not in (SeedKind.BOUND_EVEN, SeedKind.BOUND_ODD):
        return frozenset()
    start = 2 * chain.base.j if chain.base.kind is SeedKind.BOUND_EVEN else 2 * chain.base.j + 1
    full_line = {start - m for m in range(chain.k) if start - m >= 0}
    if chain.domain is Domain.FULL_LINE:
        return frozenset(full_line)
    return frozenset((d - 1) // 2 for d in full_line if d % 2 == 1)


def _full_line_index(chain: Chain, n: int) -> int:
    return n if chain.domain is Domain.FULL_LINE else 2 * n + 1


def level_energy(chain: Chain, n: int) -> complex:
    return eigenvalue(_full_line_index(chain, n), chain.freq)


def transformed_state_jet(chain: Chain, n: int, x):
    if n < 0:
        raise ValueError("level index must be non-negative")
    if n in deleted_levels(chain):
        raise DeletedLevel(f"level {n} was deleted by this transformation")
    idx = _full_line_index(chain, n)
    jet = eigenfunction_jet(idx, chain.freq, x)
    return apply_intertwiner(chain, eigenvalue(idx, chain.freq), jet)


def transformed_state(chain: Chain, n: int, x):
    """Unnormalized B_k^+ applied to the retained bound state with label n."""
    value, _ = transformed_state_jet(chain, n, x)
    return complex(value) if np.asarray(x).ndim == 0 else value


def created_state(chain: Chain, j: int, x):
    """State at the new level eps_j: reduced Wronskian over full Wronskian."""
    if not 1 <= j <= chain.k:
        raise ValueError("created-state index must be in 1..k")
    _check_domain(chain, x)
    table = _derivative_table(chain, x, chain.k - 1)
    cols_all = tuple(range(chain.k))
    cols_red = tuple(c for c in cols_all if c != j - 1)
    (w,) = _wronskian_orders(table, cols_all, (0,))
    (w_red,) = _wronskian_orders(table, cols_red, (0,))
    out = w_red / w
    return complex(out) if np.asarray(x).ndim == 0 else out


def created_state_logderiv(chain: Chain, j: int, x):
    """(ln psi_eps_j)' computed from the two Wronskian log-derivatives."""
    if not 1 <= j <= chain.k:
        raise ValueError("created-state index must be in 1..k")
    _check_domain(chain, x)
    table = _derivative_table(chain, x, chain.k)
    cols_all = tuple(range(chain.k))
    cols_red = tuple(c for c in cols_all if c != j - 1)
    w, dw = _wronskian_orders(table, cols_all, (0, 1))
    w_red, dw_red = _wronskian_orders(table, cols_red, (0, 1))
    return dw_red / w_red - dw / w


def _decays(values, half_line: bool) -> bool:
    mags = np.abs(values)
    peak = mags.max()
    if not np.isfinite(peak) or peak == 0.0:
        return False
    return bool(mags[0] < DECAY_AMPLITUDE_RATIO * peak and mags[-1] < DECAY_AMPLITUDE_RATIO * peak)


def spectrum(chain: Chain, decay_radius: float = 8.0, n_max: int = 10, probe_points: int = 257):
    """Level bookkeeping: retained and deleted bound levels plus created ones.

    A new level eps_j enters only when its created state decays at both ends
    of the probe window (the paper's case analysis, made quantitative by the
    endpoint-to-peak ratio).
    """
    entries = []
    deleted = deleted_levels(chain)
    for n in range(n_max):
        status = LevelStatus.DELETED if n in deleted else LevelStatus.RETAINED
        entries.append(SpectrumEntry(label=n, energy=level_energy(chain, n), status=status))
    if chain.domain is Domain.HALF_LINE:
        probe = np.linspace(1e-3, decay_radius, probe_points)
    else:
        probe = np.linspace(-decay_radius, decay_radius, probe_points)
    for j in range(1, chain.k + 1):
        psi = created_state(chain, j, probe)
        if _decays(psi, chain.domain is Domain.HALF_LINE):
            entries.append(
                SpectrumEntry(
                    label=f"eps{j}", energy=chain.epsilons[j - 1], status=LevelStatus.CREATED
                )
            )
    return entries


def normalize_on_grid(values, grid):
    """|psi|^2 / integral(|psi|^2) by trapezoid quadrature.

    Refuses (NonNormalizable) when the state has not decayed at the window
    ends: endpoint amplitude above the decay ratio, or an endpoint-density
    tail estimate worth more than TAIL_FRACTION of the integral.
    """
    values = np.asarray(values)
    grid = np.asarray(grid, dtype=float)
    dens = np.abs(values) ** 2
    integral = float(np.real(trapezoid(dens, grid)))
    if integral <= 0 or not np.isfinite(integral):
        raise NonNormalizable("state magnitude is degenerate on this grid")
    peak = np.sqrt(dens.max())
    end_amp = max(np.sqrt(dens[0]), np.sqrt(dens[-1]))
    tail_estimate = (dens[0] + dens[-1]) * (grid[-1] - grid[0])
    if end_amp > DECAY_AMPLITUDE_RATIO * peak or tail_estimate > TAIL_FRACTION * integral:
        raise NonNormalizable("state does not decay at the grid ends")
    return dens / integral
