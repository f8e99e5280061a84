"""Candidate tree topologies connecting k terminals.

Terminals occupy vertex slots 0..k-1 and are fixed; Steiner slots are
numbered k..k+s-1 and are interchangeable, so topologies are deduplicated
up to Steiner relabeling via a canonical edge-list encoding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .errors import TooManyTerminals

# (2k-5)!! full topologies for k terminals; beyond 7 the enumeration is no
# longer desk-scale.
DEFAULT_TERMINAL_CAP = 7


@dataclass(frozen=True)
class SteinerTopology:
    """Tree on k terminal slots and s Steiner slots, Steiner degree >= 3."""

    k: int
    s: int
    edges: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        )
        n = self.k + self.s
        if self.k < 1 or self.s < 0:
            raise ValueError("invalid slot counts")
        if self.k == 1:
            if self.s != 0 or self.edges:
                raise ValueError("a single terminal admits only the trivial topology")
            return
        if len(self.edges) != n - 1:
            raise ValueError("a tree on %d vertices needs %d edges" % (n, n - 1))
        deg = [0] * n
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"bad edge ({u},{v})")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            deg[u] += 1
            deg[v] += 1
        if not _connected(n, self.edges):
            raise ValueError("topology is not connected")
        for t in range(self.k):
            if deg[t] < 1:
                raise ValueError(f"terminal {t} is isolated")
        for v in range(self.k, n):
            if deg[v] < 3:
                raise ValueError(f"Steiner slot {v} has degree {deg[v]} < 3")

    @property
    def n_vertices(self) -> int:
        return self.k + self.s

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if a == v or b == v)

    def neighbors(self, v: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return sorted(out)

    def is_full(self) -> bool:
        """Terminals are leaves and every Steiner slot has degree exactly 3."""
        if self.k == 2:
            return self.s == 0
        return (
            self.s == self.k - 2
            and all(self.degree(t) == 1 for t in range(self.k))
            and all(self.degree(v) == 3 for v in range(self.k, self.n_vertices))
        )


def _connected(n: int, edges) -> bool:
    if n == 1:
        return True
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    stack = [0]
    seen = {0}
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def canonical_form(topology: SteinerTopology) -> tuple[tuple[int, int], ...]:
    """Relabeling-invariant encoding: minimum sorted edge list over Steiner
    slot permutations. Equal encodings iff the topologies are isomorphic with
    terminals fixed pointwise."""
    k, s = topology.k, topology.s
    if s == 0:
        return topology.edges
    slots = list(range(k, k + s))
    best = None
    for perm in permutations(slots):
        relabel = {old: new for old, new in zip(slots, perm)}
        mapped = tuple(
            sorted(
                tuple(sorted((relabel.get(u, u), relabel.get(v, v))))
                for u, v in topology.edges
            )
        )
        if best is None or mapped < best:
            best = mapped
    return best


def _canonical_topology(k: int, s: int, edges) -> SteinerTopology:
    t = SteinerTopology(k, s, tuple(edges))
    return SteinerTopology(k, s, canonical_form(t))


def _full_topologies(k: int) -> list[SteinerTopology]:
    if k == 2:
        return [SteinerTopology(2, 0, ((0, 1),))]
    # Grow by terminal insertion: terminal t splits an existing edge with a
    # fresh degree-3 Steiner slot. Slots are numbered from k upward.
    trees = [(((0, k), (1, k), (2, k)), 1)]  # (edges, slot_count)
    for t in range(3, k):
        grown = []
        for edges, s in trees:
            for idx in range(len(edges)):
                u, v = edges[idx]
                w = k + s
                new_edges = edges[:idx] + edges[idx + 1 :] + ((u, w), (v, w), (t, w))
                grown.append((new_edges, s + 1))
        trees = grown
    out = {}
    for edges, s in trees:
        topo = _canonical_topology(k, s, edges)
        out[topo.edges] = topo
    return [out[key] for key in sorted(out)]


def _contractions(topology: SteinerTopology) -> list[SteinerTopology]:
    """All degenerate trees reachable by merging Steiner slots into terminals
    or each other, never merging two terminals."""
    k = topology.k
    n = topology.n_vertices
    edges = list(topology.edges)
    contractible = [e for e in edges if e[0] >= k or e[1] >= k]
    results = {}
    for mask in range(1, 2 ** len(contractible)):
        chosen = [contractible[i] for i in range(len(contractible)) if mask >> i & 1]
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        terminal_of = {}
        for u, v in chosen:
            ru, rv = find(u), find(v)
            tu = terminal_of.get(ru, ru if ru < k else None)
            tv = terminal_of.get(rv, rv if rv < k else None)
            if tu is not None and tv is not None and ru != rv:
                ok = False
                break
            merged_terminal = tu if tu is not None else tv
            parent[max(ru, rv)] = min(ru, rv)
            if merged_terminal is not None:
                terminal_of[find(ru)] = merged_terminal
        if not ok:
            continue
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        new_id = {}
        next_slot = k
        for root in sorted(groups):
            members = groups[root]
            terminals = [m for m in members if m < k]
            if terminals:
                gid = terminals[0]
            else:
                gid = next_slot
                next_slot += 1
            for m in members:
                new_id[m] = gid
        new_edges = []
        for u, v in edges:
            gu, gv = new_id[u], new_id[v]
            if gu != gv:
                new_edges.append((min(gu, gv), max(gu, gv)))
        s_new = next_slot - k
        try:
            topo = _canonical_topology(k, s_new, new_edges)
        except ValueError:
            continue
        results[topo.edges] = topo
    return list(results.values())


def enumerate_topologies(
    k: int, mode: str = "full", max_terminals: int = DEFAULT_TERMINAL_CAP
) -> list[SteinerTopology]:
    """Candidate topologies for k terminals, deduplicated and in a fixed order.

    mode="full": every full Steiner topology (terminals are leaves, Steiner
    slots have degree exactly 3); degenerate optima are recovered downstream
    by collapsing zero-length edges.
    mode="all": additionally every contraction of Steiner slots into terminals
    or each other.
    """
    if k < 2:
        raise ValueError("need at least two terminals")
    if mode not in ("full", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    if k > max_terminals:
        raise TooManyTerminals(k, max_terminals)
    full = _full_topologies(k)
    if mode == "full":
        return full
    out = {t.edges: t for t in full}
    for t in full:
        for c in _contractions(t):
            out.setdefault(c.edges, c)
    return [out[key] for key in sorted(out, key=lambda e: (len(e), e))]
