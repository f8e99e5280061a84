"""Finite metric and pseudometric spaces as labeled distance matrices.

A space is a tuple of point labels plus a symmetric nonnegative matrix with
zero diagonal that satisfies the triangle inequality up to an absolute
feasibility slack. Metric spaces additionally require strictly positive
off-diagonal entries; pseudometric spaces allow zeros and can be collapsed
to a metric space with :func:`quotient`.
"""

from __future__ import annotations

import numpy as np

from .errors import MetricValidationError, QuotientNotMetric

# Absolute slack for triangle-inequality checks. Inputs are desk-scale
# decimals, so an absolute tolerance is adequate.
EPS_FEAS = 1e-9

# Pseudodistance at or below which two points are considered duplicates.
EPS_MERGE = 1e-9


def _collect_violations(dist: np.ndarray, allow_zero_offdiag: bool) -> list[str]:
    """Return every violated axiom as a formatted string, in a fixed order."""
    n = dist.shape[0]
    violations = []
    for i in range(n):
        if dist[i, i] != 0.0:
            violations.append(f"NonzeroDiagonal({i})")
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] != dist[j, i]:
                violations.append(f"Asymmetric({i},{j})")
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] < 0.0 or dist[j, i] < 0.0:
                violations.append(f"NegativeEntry({i},{j})")
    if not allow_zero_offdiag:
        for i in range(n):
            for j in range(i + 1, n):
                if dist[i, j] == 0.0 and dist[j, i] == 0.0:
                    violations.append(f"ZeroOffDiagonal({i},{j})")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k == i or k == j:
                    continue
                if dist[i, j] > dist[i, k] + dist[k, j] + EPS_FEAS:
                    violations.append(f"TriangleViolation({i},{j},{k})")
    return violations


def _as_matrix(matrix) -> np.ndarray:
    dist = np.array(matrix, dtype=float)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise MetricValidationError(["NotSquare"])
    if dist.shape[0] < 1:
        raise MetricValidationError(["Empty"])
    if not np.all(np.isfinite(dist)):
        i, j = np.argwhere(~np.isfinite(dist))[0]
        raise MetricValidationError([f"NonFinite({i},{j})"])
    return dist


class PseudometricSpace:
    """Labeled point set with a pseudometric distance matrix.

    Off-diagonal zeros are allowed; every other metric axiom is enforced at
    construction time. Instances are immutable and safe to share.
    """

    _allow_zero_offdiag = True

    def __init__(self, labels, matrix, name: str | None = None):
        dist = _as_matrix(matrix)
        n = dist.shape[0]
        if labels is None:
            labels = [f"p{i}" for i in range(n)]
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise MetricValidationError(["LabelCountMismatch"])
        violations = _collect_violations(dist, self._allow_zero_offdiag)
        if violations:
            raise MetricValidationError(violations)
        dist.setflags(write=False)
        self.labels = labels
        self.dist = dist
        self.name = name

    @property
    def n(self) -> int:
        return len(self.labels)

    def diameter(self) -> float:
        return float(self.dist.max())

    def restrict(self, indices) -> "PseudometricSpace":
        """Subspace on the given point indices (sorted, deduplicated)."""
        idx = sorted(set(int(i) for i in indices))
        if not idx:
            raise ValueError("cannot restrict to an empty point set")
        sub = self.dist[np.ix_(idx, idx)]
        labels = tuple(self.labels[i] for i in idx)
        return type(self)(labels, sub, name=self.name)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name if self.name is not None else "",
            "points": list(self.labels),
            "matrix": [[float(v) for v in row] for row in self.dist],
        }

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<{type(self).__name__}{tag} n={self.n} diam={self.diameter():g}>"

    def __eq__(self, other):
        if not isinstance(other, PseudometricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))


class FiniteMetricSpace(PseudometricSpace):
    """A pseudometric space with strictly positive off-diagonal distances."""

    _allow_zero_offdiag = False

    @classmethod
    def from_json_dict(cls, obj: dict) -> "FiniteMetricSpace":
        if not isinstance(obj, dict) or "matrix" not in obj:
            raise MetricValidationError(["MissingMatrix"])
        return cls(obj.get("points"), obj["matrix"], name=obj.get("name"))


def validate(matrix, labels=None, name: str | None = None) -> FiniteMetricSpace:
    """Validate a distance matrix and wrap it as a metric space.

    Raises :class:`MetricValidationError` listing every violated axiom with
    its point indices.
    """
    return FiniteMetricSpace(labels, matrix, name=name)


def diameter(space: PseudometricSpace) -> float:
    """Largest pairwise distance; zero for a one-point space."""
    return space.diameter()


def quotient(space: PseudometricSpace) -> FiniteMetricSpace:
    """Collapse near-zero distance classes of a pseudometric to a metric space.

    Points at pseudodistance <= EPS_MERGE are merged transitively. Each class
    is represented by its lexicographically smallest label, and class
    distances are read off the representatives.
    """
    n = space.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if space.dist[i, j] <= EPS_MERGE:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)

    # Representative = member with the lexicographically smallest label.
    reps = []
    labels = []
    for root in sorted(classes):
        members = classes[root]
        best = min(members, key=lambda i: space.labels[i])
        reps.append(best)
        labels.append(space.labels[best])
    sub = space.dist[np.ix_(reps, reps)]
    try:
        return FiniteMetricSpace(labels, sub, name=space.name)
    except MetricValidationError as exc:
        raise QuotientNotMetric(str(exc)) from exc
