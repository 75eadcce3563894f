"""Exception types shared across the library.

Every failure mode that callers are expected to handle gets its own class;
anything else is allowed to surface as a plain ValueError from the layer
that noticed it.
"""


class FloquetRatchetError(Exception):
    """Base class for all library-specific failures."""


class NonFinite(FloquetRatchetError):
    """An amplitude became NaN or Inf during propagation.

    Usually means the norm overflowed in a broken-phase run; enabling
    per-step renormalization is the standard fix.
    """


class ZeroNorm(FloquetRatchetError):
    """An observable was requested for a state with vanishing norm."""


class TooShort(FloquetRatchetError):
    """A time series does not span enough periods for a stable average."""


class BracketFailure(FloquetRatchetError):
    """A bisection was started on an interval that does not straddle the target."""


class EigenFailure(FloquetRatchetError):
    """The eigensolver did not converge on a Floquet operator."""


class DegenerateIntermediate(FloquetRatchetError):
    """A perturbative sum hit an intermediate state with (near-)zero unperturbed energy.

    This signals an unhandled resonance: the state should have been part of
    the degenerate subspace instead of the perturbative sum.
    """


class SizeMismatch(FloquetRatchetError):
    """Grid and momentum representations disagree about the problem size."""
