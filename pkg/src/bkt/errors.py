"""Exception types shared across the package."""


class BktError(Exception):
    """Base class for all library errors."""


class DimensionError(BktError):
    """Matrix is not square with a power-of-two side of at least 2."""


class DimensionMismatch(BktError):
    """Matrix and draw disagree on the number of players."""


class ComplementarityError(BktError):
    """Some pair violates P[i,j] + P[j,i] = 1."""


class RangeError(BktError):
    """A numeric value is outside its allowed interval."""


class PermutationError(BktError):
    """Draw leaves are not a permutation of 1..N."""


class ScaleError(BktError):
    """Instance is too large for an exhaustive operation (override to force)."""


class NotDeterministic(BktError):
    """Operation requires a deterministic (all 0/1) comparison matrix."""


class NotWinner(BktError):
    """The distinguished player does not win the given tournament."""


class NonpositiveEpsilon(BktError):
    """Perturbation radius must be strictly positive."""


class EpsilonTooLarge(BktError):
    """Perturbation radius exceeds the smallest nonzero matrix entry."""


class ParameterError(BktError):
    """Invalid or inconsistent generator/solver parameters."""


class NoWinningDraw(BktError):
    """No draw wins outright for the distinguished player."""
