"""Ladder algebra of the partner Hamiltonians.

The natural ladder of a k-th order partner is the (2k+1)-th order operator
"intertwine down, step with the oscillator ladder, intertwine up".  Acting
on a transformed bound state that collapses to intertwining the stepped
oscillator state, which is how apply_natural_ladder evaluates it.  The
commutator with the partner Hamiltonian equals +-omega times the ladder
operator; dividing all energies by omega turns that into the unit-spacing
convention of the deformed oscillator algebras, whose generalized number
operator is the cubic with the three extremal energies as roots.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateTriple, LadderEdge
from .numerics import fd_derivative
from .oscillator import (
    DerivativeTower,
    LadderDirection,
    eigenfunction_jet,
    eigenvalue,
    ladder_jet,
    seed_jet,
)
from .susy import (
    Chain,
    Domain,
    apply_intertwiner,
    created_state,
    created_state_logderiv,
    deleted_levels,
    partner_potential,
    transformed_state,
)

_NULL_STATE_RATIO = 1e-10


@dataclass(frozen=True)
class ExtremalState:
    """One extremal-state entry: dimensionless energy plus lazy evaluators.

    Degeneracy (the state vanishing identically, e.g. raising the seed
    exp(+omega x^2/2) gives zero) is only detected when the entry is
    evaluated, so an unused degenerate entry never blocks the others.
    """

    energy: complex  # in units of omega
    _value: Callable
    _logderiv: Callable
    _probe: Callable

    def _check(self):
        if self._probe():
            raise DegenerateTriple("extremal state vanishes identically for this chain")

    def value(self, x):
        self._check()
        return self._value(x)

    def logderiv(self, x):
        self._check()
        return self._logderiv(x)


@dataclass(frozen=True)
class ExtremalTriple:
    states: tuple  # three ExtremalState entries

    @property
    def energies(self) -> tuple:
        return tuple(s.energy for s in self.states)


def _retained_indices(chain: Chain, n: int) -> bool:
    return n >= 0 and n not in deleted_levels(chain)


def apply_natural_ladder(chain: Chain, direction: LadderDirection, n: int, x):
    """L^(+-) on the transformed level n: intertwined oscillator ladder step.

    Proportional to the transformed state at n +- 1; LadderEdge when that
    target is deleted or below the ladder bottom.  Half-line chains have
    level spacing 2 omega, so a single +-omega step always exits the
    retained spectrum there.
    """
    if chain.domain is Domain.HALF_LINE:
        raise LadderEdge("every +-omega step leaves the half-line (odd-sector) spectrum")
    if not _retained_indices(chain, n):
        raise LadderEdge(f"level {n} is not retained")
    target = n + 1 if direction is LadderDirection.RAISE else n - 1
    if not _retained_indices(chain, target):
        raise LadderEdge(f"target level {target} is deleted or below the ladder bottom")
    jet = eigenfunction_jet(n, chain.freq, x)
    tower = DerivativeTower(eigenvalue(n, chain.freq), chain.freq.omega)
    stepped = ladder_jet(direction, jet, tower)
    energy = eigenvalue(target, chain.freq)
    value, _ = apply_intertwiner(chain, energy, stepped)
    return complex(value) if np.asarray(x).ndim == 0 else value


def commutation_residual(
    chain: Chain,
    n: int,
    grid,
    direction: LadderDirection = LadderDirection.RAISE,
    h: float = 1e-3,
) -> float:
    """Residual of [H_k, L^(+-)] = +-omega L^(+-) witnessed on level n.

    Equals the eigen-residual of L^(+-) psi_n at the shifted energy
    E_n +- omega, with the second derivative taken by finite differences
    (Richardson-extrapolated), so the certificate does not reuse the
    analytic derivative chain it is checking.
    """
    grid = np.asarray(grid, dtype=float)
    psi_t = apply_natural_ladder(chain, direction, n, grid)
    scale = np.max(np.abs(psi_t))
    if scale == 0.0:
        raise LadderEdge("ladder output vanishes on the grid")
    d2 = fd_derivative(lambda xx: apply_natural_ladder(chain, direction, n, xx), grid, order=2, h=h)
    v_k = partner_potential(chain, grid)
    shift = chain.freq.omega if direction is LadderDirection.RAISE else -chain.freq.omega
    energy = eigenvalue(n, chain.freq) + shift
    residual = -0.5 * d2 + v_k * psi_t - energy * psi_t
    return float(np.max(np.abs(residual)) / scale)


def _probe_grid(chain: Chain):
    if chain.domain is Domain.HALF_LINE:
        return np.linspace(0.3, 3.0, 7)
    return np.linspace(-2.4, 2.4, 7)


def _intertwined_entry(chain: Chain, jet_builder, energy_dimful, energy_dimless, probe_scale):
    """probe_scale(x) sets the magnitude a genuinely nonzero output must beat;
    it must come from the chain inputs, not from the possibly-null
    intermediate jet (a degenerate raised seed is already exactly zero)."""
    probe_x = _probe_grid(chain)

    def value(x):
        v, _ = apply_intertwiner(chain, energy_dimful, jet_builder(x))
        return v

    def logderiv(x):
        v, dv = apply_intertwiner(chain, energy_dimful, jet_builder(x))
        return dv / v

    def probe():
        v, _ = apply_intertwiner(chain, energy_dimful, jet_builder(probe_x))
        scale = probe_scale(probe_x)
        return bool(np.max(np.abs(v)) <= _NULL_STATE_RATIO * max(scale, 1e-300))

    return ExtremalState(energy=energy_dimless, _value=value, _logderiv=logderiv, _probe=probe)


def extremal_triple(chain: Chain) -> ExtremalTriple:
    """The three states annihilated by the reduced third-order lowering operator.

    First order: (intertwined ground state, 1/u_1, intertwined raised seed)
    at dimensionless energies (1/2, eps_1/omega, eps_1/omega + 1).  Higher
    connected orders keep the outer two and swap the middle entry for the
    created state at the bottom chain energy eps_k (dimensionless
    eps_1/omega - (k-1)); that assignment is certified downstream by the
    residual of the resulting Painleve IV candidate.
    """
    freq = chain.freq
    omega = freq.omega
    eps1 = chain.epsilons[0]
    e_seed = eps1 / omega

    def seed_scale(x):
        jet = seed_jet(chain.base, freq, x)
        return float(np.max((1.0 + np.abs(x)) * (np.abs(jet.u) + np.abs(jet.du))))

    ground = _intertwined_entry(
        chain,
        lambda x: eigenfunction_jet(0, freq, x),
        eigenvalue(0, freq),
        complex(0.5),
        lambda x: float(np.max(np.abs(eigenfunction_jet(0, freq, x).u))),
    )

    def raised_seed_jet(x):
        jet = seed_jet(chain.base, freq, x)
        tower = DerivativeTower(eps1, omega)
        return ladder_jet(LadderDirection.RAISE, jet, tower)

    raised = _intertwined_entry(chain, raised_seed_jet, eps1 + omega, e_seed + 1.0, seed_scale)

    if chain.k == 1:
        probe_x = _probe_grid(chain)

        def inv_value(x):
            return 1.0 / seed_jet(chain.base, freq, x).u

        def inv_logderiv(x):
            jet = seed_jet(chain.base, freq, x)
            return -jet.du / jet.u

        def inv_probe():
            jet = seed_jet(chain.base, freq, probe_x)
            return bool(np.max(np.abs(jet.u)) == 0.0)

        middle = ExtremalState(
            energy=e_seed, _value=inv_value, _logderiv=inv_logderiv, _probe=inv_probe
        )
    else:
        j_last = chain.k

        def created_value(x):
            return created_state(chain, j_last, x)

        def created_logd(x):
            return created_state_logderiv(chain, j_last, x)

        def created_probe():
            probe_x = _probe_grid(chain)
            return bool(np.max(np.abs(created_state(chain, j_last, probe_x))) == 0.0)

        middle = ExtremalState(
            energy=e_seed - (chain.k - 1),
            _value=created_value,
            _logderiv=created_logd,
            _probe=created_probe,
        )

    return ExtremalTriple(states=(ground, middle, raised))


def number_operator_roots(chain: Chain) -> tuple:
    """Roots of the cubic generalized number operator: the extremal energies.

    The roots are plain energy bookkeeping, so they stay well defined even
    when one of the extremal states degenerates to zero (the state entries
    raise DegenerateTriple only when evaluated).
    """
    return extremal_triple(chain).energies
