"""Relations, correspondences, distortion, and exact optimal-correspondence search.

A relation between point sets of sizes n_x and n_y is stored as a boolean
incidence matrix. A correspondence is a relation whose projections cover both
sides. The distortion of a relation is the largest absolute difference between
the distances of related pairs; half the minimal distortion over all
correspondences is the Gromov-Hausdorff distance.

The exact search does not enumerate all doubly-surjective subsets of the
product. Every correspondence contains a union graph(f) | graph(g) for maps
f: X -> Y and g: Y -> X, and distortion never decreases when pairs are added,
so the minimum over that union family equals the minimum over all
correspondences. The family has n_y**n_x * n_x**n_y members, down from
2**(n_x*n_y).
"""

from __future__ import annotations

import numpy as np

from .errors import SearchSpaceTooLarge
from .spaces import PseudometricSpace

# Hard cap on the size of the (f, g) search space; exceeding it raises
# instead of silently degrading to a heuristic.
DEFAULT_ENUMERATION_CAP = 10**8


class Relation:
    """Nonempty relation between index sets, as an incidence matrix."""

    def __init__(self, incidence):
        inc = np.array(incidence, dtype=bool)
        if inc.ndim != 2:
            raise ValueError("incidence must be a 2-d boolean matrix")
        if not inc.any():
            raise ValueError("relation must be nonempty")
        inc.setflags(write=False)
        self.incidence = inc

    @classmethod
    def from_pairs(cls, pairs, n_x: int, n_y: int) -> "Relation":
        inc = np.zeros((n_x, n_y), dtype=bool)
        for i, j in pairs:
            inc[i, j] = True
        return cls(inc)

    @property
    def n_x(self) -> int:
        return self.incidence.shape[0]

    @property
    def n_y(self) -> int:
        return self.incidence.shape[1]

    def pairs(self) -> list[tuple[int, int]]:
        """Sorted list of index pairs (the serialization order)."""
        return [(int(i), int(j)) for i, j in np.argwhere(self.incidence)]

    def transpose(self) -> "Relation":
        return type(self)(self.incidence.T)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return np.array_equal(self.incidence, other.incidence)

    def __hash__(self):
        return hash((self.incidence.shape, self.incidence.tobytes()))

    def __repr__(self):
        return f"<{type(self).__name__} {self.n_x}x{self.n_y} pairs={len(self.pairs())}>"


class Correspondence(Relation):
    """Relation surjective onto both sides."""

    def __init__(self, incidence):
        super().__init__(incidence)
        if not self.incidence.any(axis=1).all():
            raise ValueError("correspondence must cover every point on the left")
        if not self.incidence.any(axis=0).all():
            raise ValueError("correspondence must cover every point on the right")

    def transpose(self) -> "Correspondence":
        return Correspondence(self.incidence.T)


def distortion(rel: Relation, x: PseudometricSpace, y: PseudometricSpace) -> float:
    """Max over related pairs (i,j), (i',j') of |d_x(i,i') - d_y(j,j')|."""
    idx = np.argwhere(rel.incidence)
    rows = idx[:, 0]
    cols = idx[:, 1]
    diff = x.dist[np.ix_(rows, rows)] - y.dist[np.ix_(cols, cols)]
    return float(np.abs(diff).max())


def restrict(rel: Relation, x_subset, y_subset) -> Relation | None:
    """Relation induced on index subsets, reindexed; None when no pair survives."""
    xs = sorted(set(int(i) for i in x_subset))
    ys = sorted(set(int(j) for j in y_subset))
    if not xs or not ys:
        raise ValueError("subsets must be nonempty")
    sub = rel.incidence[np.ix_(xs, ys)]
    if not sub.any():
        return None
    return Relation(sub)


def search_space_size(n_x: int, n_y: int) -> int:
    return n_y**n_x * n_x**n_y


def enumerate_minimal_correspondences(n_x: int, n_y: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield every union graph(f) | graph(g) once, in deterministic order.

    The stream covers at least one optimal correspondence for any pair of
    spaces of these sizes (see module docstring).
    """
    if n_x < 1 or n_y < 1:
        raise ValueError("point sets must be nonempty")
    size = search_space_size(n_x, n_y)
    if size > cap:
        raise SearchSpaceTooLarge(size, cap)
    seen = set()
    f_choices = _all_maps(n_x, n_y)
    g_choices = _all_maps(n_y, n_x)
    for f in f_choices:
        base = np.zeros((n_x, n_y), dtype=bool)
        base[np.arange(n_x), f] = True
        for g in g_choices:
            inc = base.copy()
            inc[g, np.arange(n_y)] = True
            key = inc.tobytes()
            if key not in seen:
                seen.add(key)
                yield Correspondence(inc)


def _all_maps(n_from: int, n_to: int):
    """All functions {0..n_from-1} -> {0..n_to-1} in lexicographic order."""
    maps = []
    current = [0] * n_from
    while True:
        maps.append(tuple(current))
        pos = n_from - 1
        while pos >= 0 and current[pos] == n_to - 1:
            current[pos] = 0
            pos -= 1
        if pos < 0:
            return maps
        current[pos] += 1


def _eccentricity_order(dist: np.ndarray) -> list[int]:
    ecc = dist.max(axis=1)
    return sorted(range(dist.shape[0]), key=lambda i: (-ecc[i], i))


def optimal_correspondence(
    x: PseudometricSpace,
    y: PseudometricSpace,
    upper_bound: float | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[Correspondence, float]:
    """Correspondence of minimal distortion between two spaces, found exactly.

    Depth-first assignment of f: X -> Y then g: Y -> X with branch-and-bound.
    The partial distortion of the pairs fixed so far prunes any branch that
    already exceeds the incumbent, and no branch can finish below the
    diameter-gap floor |diam x - diam y|. When ``upper_bound`` is given it
    must be an achievable distortion (e.g. of a known correspondence); branches
    above it are cut as well.

    Ties on distortion are broken toward the lexicographically smallest
    incidence matrix in row-major order, which makes results reproducible.

    Returns the winning correspondence and its distortion.
    """
    dx = x.dist
    dy = y.dist
    n_x = x.n
    n_y = y.n
    size = search_space_size(n_x, n_y)
    if size > cap:
        raise SearchSpaceTooLarge(size, cap)

    floor = abs(x.diameter() - y.diameter())
    x_order = _eccentricity_order(dx)
    y_order = _eccentricity_order(dy)

    def added_distortion(i, j, pairs_i, pairs_j, best_so_far, bail_above):
        """Max |d| against already-fixed pairs, bailing early above the cut."""
        worst = best_so_far
        row_x = dx[i]
        row_y = dy[j]
        for a, b in zip(pairs_i, pairs_j):
            delta = row_x[a] - row_y[b]
            if delta < 0:
                delta = -delta
            if delta > worst:
                worst = delta
                if worst > bail_above:
                    return worst
        return worst

    # Greedy incumbent: assign f in eccentricity order, then g, each time
    # choosing the partner with the least added distortion (ties -> lowest index).
    f_greedy = [0] * n_x
    pi, pj = [], []
    partial = 0.0
    for i in x_order:
        best_j, best_val = 0, None
        for j in range(n_y):
            val = added_distortion(i, j, pi, pj, partial, np.inf)
            if best_val is None or val < best_val:
                best_j, best_val = j, val
        f_greedy[i] = best_j
        pi.append(i)
        pj.append(best_j)
        partial = best_val
    g_greedy = [0] * n_y
    for j in y_order:
        best_i, best_val = 0, None
        for i in range(n_x):
            val = added_distortion(i, j, pi, pj, partial, np.inf)
            if best_val is None or val < best_val:
                best_i, best_val = i, val
        g_greedy[j] = best_i
        pi.append(best_i)
        pj.append(j)
        partial = best_val

    inc = np.zeros((n_x, n_y), dtype=bool)
    inc[np.arange(n_x), f_greedy] = True
    inc[g_greedy, np.arange(n_y)] = True
    best_dis = partial
    best_bytes = inc.tobytes()

    cut = best_dis if upper_bound is None else min(best_dis, upper_bound)

    # DFS state: one pair appended per assignment; g may repeat pairs already
    # fixed by f, which costs nothing.
    f_vals = [0] * n_x
    g_vals = [0] * n_y
    stack_i: list[int] = []
    stack_j: list[int] = []

    def record_candidate(dis):
        nonlocal best_dis, best_bytes, cut
        mat = np.zeros((n_x, n_y), dtype=bool)
        mat[np.arange(n_x), f_vals] = True
        mat[g_vals, np.arange(n_y)] = True
        key = mat.tobytes()
        if dis < best_dis or (dis == best_dis and key < best_bytes):
            best_dis = dis
            best_bytes = key
            cut = best_dis if upper_bound is None else min(best_dis, upper_bound)

    def assign_g(pos, partial):
        if pos == n_y:
            record_candidate(partial)
            return
        j = y_order[pos]
        for i in range(n_x):
            val = added_distortion(i, j, stack_i, stack_j, partial, cut)
            if max(val, floor) > cut:
                continue
            g_vals[j] = i
            stack_i.append(i)
            stack_j.append(j)
            assign_g(pos + 1, val)
            stack_i.pop()
            stack_j.pop()

    def assign_f(pos, partial):
        if pos == n_x:
            assign_g(0, partial)
            return
        i = x_order[pos]
        for j in range(n_y):
            val = added_distortion(i, j, stack_i, stack_j, partial, cut)
            if max(val, floor) > cut:
                continue
            f_vals[i] = j
            stack_i.append(i)
            stack_j.append(j)
            assign_f(pos + 1, val)
            stack_i.pop()
            stack_j.pop()

    assign_f(0, 0.0)

    if upper_bound is not None and best_dis > upper_bound:
        # The caller's bound was not achievable; redo without it.
        return optimal_correspondence(x, y, upper_bound=None, cap=cap)

    witness = Correspondence(
        np.frombuffer(best_bytes, dtype=bool).reshape(n_x, n_y)
    )
    return witness, float(best_dis)
