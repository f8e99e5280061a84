"""Exception types shared across the package."""


class MetricValidationError(ValueError):
    """A distance matrix violates one or more metric axioms.

    ``violations`` holds one string per violated axiom, e.g. ``Asymmetric(0,1)``
    or ``TriangleViolation(0,2,1)``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class QuotientNotMetric(Exception):
    """Merging zero-distance classes produced a non-metric matrix.

    Signals that the merge tolerance was applied to a matrix whose near-zero
    entries were not actual duplicates.
    """


class SearchSpaceTooLarge(Exception):
    """The correspondence search space exceeds the configured enumeration cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(
            f"correspondence search space has {size} candidates, cap is {cap}"
        )


class TooManyTerminals(Exception):
    """Terminal count exceeds the topology enumeration cap."""

    def __init__(self, k, cap):
        self.k = k
        self.cap = cap
        super().__init__(f"{k} terminals exceeds the topology cap of {cap}")


class LPInfeasible(Exception):
    """The edge-length program reported infeasibility (internal bug by construction)."""


class NumericalFailure(Exception):
    """The LP solver did not reach the required feasibility tolerance."""


class MissingCorrespondence(Exception):
    """A tree edge lacks the correspondence required by thread pruning."""
