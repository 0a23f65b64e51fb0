"""Exception types shared across the package."""


class NavlearnError(Exception):
    """Base class for all navlearn errors."""


class NoPathError(NavlearnError):
    """Target vertex is unreachable from the source."""


class DisconnectedGraphError(NavlearnError):
    """Operation requires a connected graph but found infinite distances."""


class AlphaOutOfRangeError(NavlearnError):
    """Requested hotspot count is outside 1..n."""


class CapExceededError(NavlearnError):
    """A step/hop budget was exhausted before termination."""


class WalkCapError(CapExceededError):
    """Paired random walks failed to intersect within the cap (after retries)."""


class StepCapError(CapExceededError):
    """A baseline walk/navigation exceeded its step cap."""


class TraversalCapError(CapExceededError):
    """Greedy reward traversal exceeded its hop cap."""


class NavigationError(NavlearnError):
    """Hotspot navigation failed (a greedy traversal hit its cap)."""
