"""The complex oscillator: spectrum, bound states, seed solutions, ladder.

The model is the potential omega^2 x^2 / 2 with omega = exp(i theta) on the
unit circle.  Working phase domain is theta in [0, pi/2): the omega -> -omega
symmetry and energy conjugation under theta -> -theta fold everything else
onto it, and at theta = pi/2 the oscillator turns repulsive (no bound
states), so that phase is rejected outright.

Every Schroedinger solution is handled as a jet (u, u') plus a derivative
tower: u'' = (omega^2 x^2 - 2 eps) u closes all higher x-derivatives as
polynomial combinations p_m u + q_m u', which is what the Wronskian engine
consumes.
"""

from dataclasses import InitVar, dataclass, field
from enum import Enum

import numpy as np
import numpy.polynomial.polynomial as npoly
import scipy.special as sp

from .errors import LambdaPole, RepulsiveOscillator
from .specfun import DEFAULT_CONTROL, SeriesControl, erf_c, hermite, hyp1f1, hyp1f1_deriv

_SQRT2 = np.sqrt(2.0)
_SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class Frequency:
    """Unit-modulus frequency omega = exp(i theta), theta in [0, pi/2).

    Pass validate=False only in tests that probe the conjugation symmetry
    outside the working domain.
    """

    theta: float
    validate: InitVar[bool] = True
    omega: complex = field(init=False, compare=False)
    sqrt_omega: complex = field(init=False, compare=False)

    def __post_init__(self, validate):
        th = float(self.theta)
        if validate:
            if abs(abs(th) - np.pi / 2) < 1e-12:
                raise RepulsiveOscillator(
                    "theta = +-pi/2 is the repulsive oscillator: no square-integrable states"
                )
            if not 0.0 <= th < np.pi / 2:
                raise ValueError("working phase domain is theta in [0, pi/2)")
        object.__setattr__(self, "omega", complex(np.cos(th), np.sin(th)))
        object.__setattr__(self, "sqrt_omega", complex(np.cos(th / 2), np.sin(th / 2)))


class SeedKind(Enum):
    GENERAL = "general"
    BOUND_EVEN = "bound-even"
    BOUND_ODD = "bound-odd"
    AMS = "ams"


@dataclass(frozen=True)
class SeedSpec:
    """A seed (transformation) solution choice.

    GENERAL carries a free factorization energy and the deformation nu;
    BOUND_EVEN(j)/BOUND_ODD(j) force the energy onto the bound level
    (2j + 1/2) omega resp. (2j + 3/2) omega; AMS forces it to -omega/2
    (ground level minus omega) with nu as the one-parameter deformation.
    """

    kind: SeedKind
    epsilon: complex | None = None
    nu: complex = 0j
    j: int = 0

    def __post_init__(self):
        if abs(self.nu) >= 1.0:
            raise ValueError("deformation parameter requires |nu| < 1")
        if self.j < 0:
            raise ValueError("bound index j must be non-negative")
        if self.kind is SeedKind.GENERAL and self.epsilon is None:
            raise ValueError("general seed needs an explicit factorization energy")
        if self.kind is not SeedKind.GENERAL and self.epsilon is not None:
            raise ValueError(f"{self.kind.value} seed forces its own energy; leave epsilon unset")

    @classmethod
    def general(cls, epsilon, nu=0j):
        return cls(SeedKind.GENERAL, epsilon=complex(epsilon), nu=complex(nu))

    @classmethod
    def bound_even(cls, j: int):
        return cls(SeedKind.BOUND_EVEN, j=j)

    @classmethod
    def bound_odd(cls, j: int):
        return cls(SeedKind.BOUND_ODD, j=j)

    @classmethod
    def ams(cls, nu=0j):
        return cls(SeedKind.AMS, nu=complex(nu))

    def epsilon_for(self, freq: Frequency) -> complex:
        """Factorization energy of this seed at the given frequency."""
        if self.kind is SeedKind.GENERAL:
            return complex(self.epsilon)
        if self.kind is SeedKind.BOUND_EVEN:
            return (2 * self.j + 0.5) * freq.omega
        if self.kind is SeedKind.BOUND_ODD:
            return (2 * self.j + 1.5) * freq.omega
        return -0.5 * freq.omega  # AMS


@dataclass(frozen=True)
class JetValue:
    """A Schroedinger solution sampled as (value, first derivative) at x."""

    x: object
    u: object
    du: object


class LadderDirection(Enum):
    RAISE = "+"
    LOWER = "-"


class LevelStatus(Enum):
    RETAINED = "retained"
    DELETED = "deleted"
    CREATED = "created"


@dataclass(frozen=True)
class SpectrumEntry:
    label: object  # int level index, or "eps<j>" for created levels
    energy: complex
    status: LevelStatus


class DerivativeTower:
    """Polynomial pairs (p_m, q_m) with u^(m) = p_m(x) u + q_m(x) u'.

    All orders up to max_order are precomputed at construction, so instances
    are immutable afterwards and safe to share across threads.
    """

    def __init__(self, epsilon, omega, max_order: int = 8):
        self.epsilon = complex(epsilon)
        self.omega = complex(omega)
        self.max_order = int(max_order)
        ratio = np.array([-2.0 * self.epsilon, 0.0, self.omega**2])  # u''/u
        p = [np.array([1.0 + 0j]), np.array([0j])]
        q = [np.array([0j]), np.array([1.0 + 0j])]
        for m in range(1, self.max_order):
            p.append(npoly.polyadd(npoly.polyder(p[m]), npoly.polymul(q[m], ratio)))
            q.append(npoly.polyadd(p[m], npoly.polyder(q[m])))
        self._p = p
        self._q = q

    def coefficients(self, m: int):
        return self._p[m], self._q[m]


def tower_eval(tower: DerivativeTower, jet: JetValue, m: int):
    """m-th x-derivative of the solution sampled by `jet`."""
    if m < 0 or m > tower.max_order:
        raise ValueError(f"derivative order {m} outside cached range 0..{tower.max_order}")
    p_m, q_m = tower.coefficients(m)
    return npoly.polyval(jet.x, p_m) * jet.u + npoly.polyval(jet.x, q_m) * jet.du


def eigenvalue(n: int, freq: Frequency) -> complex:
    """Bound level (n + 1/2) omega on the spectral ray arg = theta."""
    if n < 0:
        raise ValueError("level index must be non-negative")
    return (n + 0.5) * freq.omega


def eigenfunction_jet(n: int, freq: Frequency, x) -> JetValue:
    """Unnormalized bound eigenfunction H_n(sqrt(omega) x) exp(-omega x^2/2)."""
    if n < 0:
        raise ValueError("level index must be non-negative")
    omega = freq.omega
    y = freq.sqrt_omega * np.asarray(x, dtype=float)
    gauss = np.exp(-0.5 * omega * np.asarray(x, dtype=float) ** 2)
    h_n = hermite(n, y)
    u = h_n * gauss
    du = -omega * np.asarray(x, dtype=float) * u
    if n >= 1:
        du = du + 2.0 * n * freq.sqrt_omega * hermite(n - 1, y) * gauss
    return JetValue(x=x, u=u, du=du)


def _near_nonpositive_integer(w, tol: float = 1e-12) -> bool:
    w = complex(w)
    if abs(w.imag) > tol:
        return False
    r = round(w.real)
    return r <= 0 and abs(w.real - r) <= tol


def lambda_coefficient(nu, epsilon, omega) -> complex:
    """Mixing coefficient of the two-series seed combination.

    Vanishes automatically on even bound levels (gamma pole in its
    denominator); on odd bound levels the numerator gamma poles and the
    coefficient is undefined unless nu = 0, which is reported as LambdaPole.
    """
    nu = complex(nu)
    a_odd = 0.75 - epsilon / (2.0 * omega)
    a_even = 0.25 - epsilon / (2.0 * omega)
    if _near_nonpositive_integer(a_odd):
        if nu != 0:
            raise LambdaPole(
                "seed mixing coefficient poles at this energy; perturb epsilon or set nu = 0"
            )
        return 0j
    if _near_nonpositive_integer(a_even) or nu == 0:
        return 0j
    return 2.0 * nu * complex(sp.gamma(a_odd)) / complex(sp.gamma(a_even))


def _general_jet(spec, freq, x, ctl, branch):
    omega = freq.omega
    eps = spec.epsilon_for(freq)
    lam = lambda_coefficient(spec.nu, eps, omega)
    xf = np.asarray(x, dtype=float)
    z = omega * xf**2
    if branch == "first":
        a1 = 0.25 - eps / (2.0 * omega)
        a2 = 0.75 - eps / (2.0 * omega)
        pref = np.exp(-0.5 * z)
        f1 = hyp1f1(a1, 0.5, z, ctl)
        f2 = hyp1f1(a2, 1.5, z, ctl)
        f1d = hyp1f1_deriv(a1, 0.5, z, 1, ctl)
        f2d = hyp1f1_deriv(a2, 1.5, z, 1, ctl)
        u = pref * (f1 + lam * xf * f2)
        du = -omega * xf * u + pref * (2.0 * omega * xf * f1d + lam * f2 + 2.0 * lam * omega * xf**2 * f2d)
    else:
        a1 = 0.25 + eps / (2.0 * omega)
        a2 = 0.75 + eps / (2.0 * omega)
        pref = np.exp(0.5 * z)
        f1 = hyp1f1(a1, 0.5, -z, ctl)
        f2 = hyp1f1(a2, 1.5, -z, ctl)
        f1d = hyp1f1_deriv(a1, 0.5, -z, 1, ctl)
        f2d = hyp1f1_deriv(a2, 1.5, -z, 1, ctl)
        u = pref * (f1 + lam * xf * f2)
        du = omega * xf * u + pref * (-2.0 * omega * xf * f1d + lam * f2 - 2.0 * lam * omega * xf**2 * f2d)
    return JetValue(x=x, u=u, du=du)


def seed_jet(
    spec: SeedSpec,
    freq: Frequency,
    x,
    ctl: SeriesControl = DEFAULT_CONTROL,
    branch: str = "auto",
) -> JetValue:
    """Seed solution u(x, eps) and its derivative at x (scalar or array).

    For general seeds the two algebraically equal branches differ in which
    Gaussian prefactor they carry; on the working domain Re(omega) > 0, so
    branch "auto" resolves to "first" (decaying prefactor, best conditioned).
    "second" exists as the standing cross-check route.
    """
    if branch not in ("auto", "first", "second"):
        raise ValueError("branch must be 'auto', 'first' or 'second'")
    if spec.kind is SeedKind.BOUND_EVEN:
        return eigenfunction_jet(2 * spec.j, freq, x)
    if spec.kind is SeedKind.BOUND_ODD:
        return eigenfunction_jet(2 * spec.j + 1, freq, x)
    if spec.kind is SeedKind.AMS:
        omega = freq.omega
        xf = np.asarray(x, dtype=float)
        pref = np.exp(0.5 * omega * xf**2)
        u = pref * (1.0 + (spec.nu / freq.sqrt_omega) * erf_c(freq.sqrt_omega * xf, ctl))
        du = omega * xf * u + (2.0 * spec.nu / _SQRT_PI) * np.exp(-0.5 * omega * xf**2)
        return JetValue(x=x, u=u, du=du)
    return _general_jet(spec, freq, x, ctl, "first" if branch == "auto" else branch)


def ladder_jet(direction: LadderDirection, jet: JetValue, tower: DerivativeTower) -> JetValue:
    """Apply (1/sqrt2)(-+ d/dx + omega x) to the jet; u'' comes from the tower.

    Raising shifts the solution energy by +omega, lowering by -omega.
    """
    omega = tower.omega
    xf = np.asarray(jet.x, dtype=float)
    u2 = tower_eval(tower, jet, 2)
    if direction is LadderDirection.RAISE:
        val = (-jet.du + omega * xf * jet.u) / _SQRT2
        dval = (-u2 + omega * jet.u + omega * xf * jet.du) / _SQRT2
    else:
        val = (jet.du + omega * xf * jet.u) / _SQRT2
        dval = (u2 + omega * jet.u + omega * xf * jet.du) / _SQRT2
    return JetValue(x=jet.x, u=val, du=dval)
