"""Exception types raised by the library.

Everything derives from SusypivError so callers can catch library failures
with a single except clause; the CLI maps subclasses onto exit codes.
"""


class SusypivError(Exception):
    """Base class for all library errors."""


class PoleAtB(SusypivError):
    """Kummer series denominator parameter hits a pole before termination."""


class NotConverged(SusypivError):
    """Series exhausted max_terms without meeting the stopping rule.

    Shrink |z|, loosen the control, or evaluate the algebraically
    equivalent second branch of the seed solution instead.
    """


class RepulsiveOscillator(SusypivError):
    """Frequency phase of +-pi/2 requested: no square-integrable states."""


class LambdaPole(SusypivError):
    """Seed mixing coefficient undefined (gamma pole in its numerator)."""


class SingularPoint(SusypivError):
    """Wronskian vanishes on the real axis at the requested point."""


class DeletedLevel(SusypivError):
    """Requested level was removed from the partner spectrum."""


class NonNormalizable(SusypivError):
    """Sampled state does not decay enough for grid normalization."""


class LadderEdge(SusypivError):
    """Ladder step would leave the retained part of the spectrum."""


class DegenerateTriple(SusypivError):
    """An extremal state vanishes identically for this chain."""


class DegenerateSolution(SusypivError):
    """Candidate g vanishes identically; the equation terms b/g are undefined."""


class ZeroCrossing(SusypivError):
    """State magnitude below threshold at a grid point (log-derivative pole)."""


class NoValidAssignment(SusypivError):
    """No cyclic role assignment passes the residual certification."""


class EmptyGrid(SusypivError):
    """All residual grid points were excluded."""
