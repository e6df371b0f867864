"""Immutable undirected graphs, seeded random generators, and brute-force
independent-set oracles.

The brute-force routines here (`enumerate_independent_sets`,
`partition_function`, `max_independent_set_size`) are the ground truth the
rest of the package is checked against; they are deliberately exhaustive and
guarded to small vertex counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.spatial import Delaunay, QhullError

ORACLE_MAX_VERTICES = 24


class GraphError(ValueError):
    """Invalid graph construction or oracle guard violation."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with normalized, deduplicated edges.

    Edges are stored as sorted ``(min, max)`` pairs; ``neighbors[v]`` is the
    sorted tuple of vertices adjacent to ``v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise GraphError(f"vertex count must be >= 1, got {n}")
        seen: set[tuple[int, int]] = set()
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise GraphError(f"self-loop on vertex {i}")
            seen.add((min(i, j), max(i, j)))
        adj: list[set[int]] = [set() for _ in range(n)]
        for i, j in seen:
            adj[i].add(j)
            adj[j].add(i)
        return cls(
            n=n,
            edges=tuple(sorted(seen)),
            neighbors=tuple(tuple(sorted(s)) for s in adj),
        )

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint index arrays, for vectorized edge checks."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.intp)
            return empty, empty.copy()
        arr = np.asarray(self.edges, dtype=np.intp)
        return arr[:, 0], arr[:, 1]


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edge_list(n, pairs)


@dataclass(frozen=True)
class VertexAssignment:
    """Length-n bit sequence; bit 1 marks a vertex as included in the set."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.bits):
            raise GraphError("assignment bits must be 0 or 1")

    @classmethod
    def from_index(cls, index: int, n: int) -> "VertexAssignment":
        return cls(tuple((index >> v) & 1 for v in range(n)))

    def to_index(self) -> int:
        return sum(b << v for v, b in enumerate(self.bits))

    @property
    def size(self) -> int:
        return sum(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class ViolationSet:
    """Edges with both endpoints set, plus the surrounding boundary.

    ``vertices`` collects the endpoints of violating edges; ``boundary`` is
    the set of their neighbors that are not themselves violating endpoints.
    The resample/reset region is the union of the two.
    """

    edges: frozenset[tuple[int, int]]
    boundary: frozenset[int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    @property
    def reset_set(self) -> frozenset[int]:
        return self.vertices | self.boundary

    def __len__(self) -> int:
        return len(self.edges)


def violations(g: Graph, a: VertexAssignment | Sequence[int]) -> ViolationSet:
    bits = a.bits if isinstance(a, VertexAssignment) else tuple(a)
    if len(bits) != g.n:
        raise GraphError(f"assignment length {len(bits)} != n={g.n}")
    bad = frozenset(e for e in g.edges if bits[e[0]] and bits[e[1]])
    endpoints = set(v for e in bad for v in e)
    boundary = frozenset(
        w for v in endpoints for w in g.neighbors[v] if w not in endpoints
    )
    return ViolationSet(edges=bad, boundary=boundary)


def is_independent(g: Graph, a: VertexAssignment | Sequence[int]) -> bool:
    bits = a.bits if isinstance(a, VertexAssignment) else tuple(a)
    return not any(bits[i] and bits[j] for i, j in g.edges)


def _check_oracle_size(g: Graph) -> None:
    if g.n > ORACLE_MAX_VERTICES:
        raise GraphError(
            f"brute-force oracle limited to n <= {ORACLE_MAX_VERTICES}, got {g.n}"
        )


def independent_set_mask(g: Graph) -> np.ndarray:
    """Boolean vector over all 2^n assignments; True where independent.

    Index convention: assignment bit for vertex v is bit v of the index.
    """
    _check_oracle_size(g)
    idx = np.arange(1 << g.n, dtype=np.int64)
    ok = np.ones(idx.shape, dtype=bool)
    for i, j in g.edges:
        ok &= ((idx >> i) & (idx >> j) & 1) == 0
    return ok


def bit_counts(n: int) -> np.ndarray:
    """Popcount of every index below 2^n."""
    idx = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros(idx.shape, dtype=np.int64)
    for b in range(n):
        counts += (idx >> b) & 1
    return counts


def enumerate_independent_sets(g: Graph) -> list[VertexAssignment]:
    """All independent sets of g, lexicographic in the bit sequence."""
    mask = independent_set_mask(g)
    found = [VertexAssignment.from_index(int(k), g.n) for k in np.flatnonzero(mask)]
    return sorted(found, key=lambda a: a.bits)


def independent_set_size_counts(g: Graph) -> np.ndarray:
    """counts[k] = number of independent sets with k vertices."""
    mask = independent_set_mask(g)
    sizes = bit_counts(g.n)
    return np.bincount(sizes[mask], minlength=g.n + 1)


def partition_function(g: Graph, lam: float) -> float:
    if lam <= 0:
        raise GraphError(f"weight parameter must be positive, got {lam}")
    counts = independent_set_size_counts(g)
    return float(sum(c * lam**k for k, c in enumerate(counts)))


def max_independent_set_size(g: Graph) -> int:
    if g.n > 20:
        raise GraphError(f"exhaustive MIS limited to n <= 20, got {g.n}")
    counts = independent_set_size_counts(g)
    return int(np.flatnonzero(counts)[-1])


# --- random generators ----------------------------------------------------

def gen_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular simple graph via stub pairing with full restart.

    Restarting on any self-loop or duplicate pair keeps the draw
    asymptotically uniform for fixed d.
    """
    if n < 1 or d < 0 or d >= n:
        raise GraphError(f"need 0 <= d < n, got n={n}, d={d}")
    if (n * d) % 2 != 0:
        raise GraphError(f"n*d must be even, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(100_000):
        rng.shuffle(stubs)
        a, b = stubs[0::2], stubs[1::2]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        if np.any(lo == hi):
            continue
        pairs = set(zip(lo.tolist(), hi.tolist()))
        if len(pairs) == lo.size:
            return Graph.from_edge_list(n, pairs)
    raise GraphError(f"pairing failed to produce a simple graph for n={n}, d={d}")


def gen_bounded_planar(n: int, d: int, seed: int) -> Graph:
    """Random planar graph with maximum degree at most d.

    Samples points in the unit square, takes their Delaunay triangulation
    (planar by construction), then deletes random edges until no vertex
    exceeds degree d. Edges joining two over-degree vertices are removed
    first, which keeps the surviving graph as dense as the degree bound
    allows. Edge deletion preserves planarity, so the result is planar.
    """
    if n < 1 or d < 1:
        raise GraphError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return Graph.from_edge_list(1, [])
    if n == 2:
        return Graph.from_edge_list(2, [(0, 1)])
    edges = None
    for _ in range(100):
        points = rng.random((n, 2))
        try:
            tri = Delaunay(points)
        except QhullError:  # degenerate point set; redraw
            continue
        found: set[tuple[int, int]] = set()
        for simplex in tri.simplices:
            for k in range(3):
                i, j = int(simplex[k]), int(simplex[(k + 1) % 3])
                found.add((min(i, j), max(i, j)))
        edges = sorted(found)
        break
    if edges is None:
        raise GraphError("Delaunay triangulation failed repeatedly")
    degree = np.zeros(n, dtype=np.int64)
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    while degree.max() > d:
        both = [k for k, (i, j) in enumerate(edges) if degree[i] > d and degree[j] > d]
        cand = both or [
            k for k, (i, j) in enumerate(edges) if degree[i] > d or degree[j] > d
        ]
        k = cand[int(rng.integers(len(cand)))]
        i, j = edges.pop(k)
        degree[i] -= 1
        degree[j] -= 1
    return Graph.from_edge_list(n, edges)


def gen_star(leaves: int) -> Graph:
    """Star graph: vertex 0 joined to vertices 1..leaves."""
    if leaves < 1:
        raise GraphError(f"need at least one leaf, got {leaves}")
    return Graph.from_edge_list(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def path_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edge_list(n, [(v, (v + 1) % n) for v in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen_graph() -> Graph:
    outer = [(v, (v + 1) % 5) for v in range(5)]
    inner = [(5 + v, 5 + (v + 2) % 5) for v in range(5)]
    spokes = [(v, v + 5) for v in range(5)]
    return Graph.from_edge_list(10, outer + inner + spokes)


# --- text interchange format ----------------------------------------------

def write_graph(g: Graph, stream: TextIO) -> None:
    """Write "n m" then one "i j" line per edge."""
    stream.write(f"{g.n} {g.num_edges}\n")
    for i, j in g.edges:
        stream.write(f"{i} {j}\n")


def read_graph(stream: TextIO) -> Graph:
    header = stream.readline().split()
    if len(header) != 2:
        raise GraphError("graph header must be 'n m'")
    n, m = int(header[0]), int(header[1])
    pairs = []
    for _ in range(m):
        parts = stream.readline().split()
        if len(parts) != 2:
            raise GraphError("edge line must be 'i j'")
        pairs.append((int(parts[0]), int(parts[1])))
    return Graph.from_edge_list(n, pairs)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return read_graph(fh)


def save_graph(g: Graph, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        write_graph(g, fh)
