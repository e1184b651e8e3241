"""
Undirected graphs used as walk substrates.

Graphs are stored in compressed sparse row form: ``indptr`` and ``indices``
give the sorted neighbor list of every vertex, so ``indices[indptr[v]:indptr[v + 1]]``
are the neighbors of ``v``. Vertex labels are 0-based.

A self-loop at ``v`` appears once in the neighbor list of ``v`` and counts once
toward its degree. Loops are only meaningful for the coined walk; the bipartite
double cover and the Szegedy reflections reject them.
"""

from __future__ import annotations

import io
import itertools
from typing import Iterable, Sequence, TextIO

import numpy as np

__all__ = [
    "GraphError",
    "EdgeListParseError",
    "Graph",
    "MarkedSet",
    "from_edge_list",
    "generate",
    "bipartite_double_cover",
    "export",
    "FAMILIES",
    "marked_prefix",
    "parse_marked",
]

FAMILIES = ("complete", "complete_loops", "cycle", "torus2d", "hypercube", "paley", "petersen")


class GraphError(ValueError):
    """Invalid graph structure or invalid generator parameters."""


class EdgeListParseError(GraphError):
    """Malformed edge-list text; ``line`` is the 1-based offending line, if known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class Graph:
    """
    Immutable undirected simple graph (optionally with single self-loops).

    Parameters
    ----------
    vertex_count : int
        Number of vertices N.
    edges : iterable of (int, int)
        Undirected edges, each listed once in either orientation.
    allow_self_loops : bool
        Accept ``(v, v)`` edges.

    Raises
    ------
    GraphError
        On out-of-range indices, duplicate edges, disallowed loops or
        isolated vertices.
    """

    __slots__ = ("_n", "_indptr", "_indices", "_edge_count", "_loop_count", "_allow_loops")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]], allow_self_loops: bool = False):
        n = int(vertex_count)
        if n < 1:
            raise GraphError("vertex_count must be positive")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise GraphError("edges must be pairs of vertex indices")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphError(f"vertex index out of range [0, {n})")
        loops = e[:, 0] == e[:, 1]
        if loops.any() and not allow_self_loops:
            v = int(e[loops][0, 0])
            raise GraphError(f"self-loop at vertex {v} not allowed")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        keys = lo * n + hi
        uniq, counts = np.unique(keys, return_counts=True)
        if (counts > 1).any():
            k = int(uniq[counts > 1][0])
            raise GraphError(f"duplicate edge {k // n} {k % n}")

        proper = ~loops
        tails = np.concatenate([lo[proper], hi[proper], lo[loops]])
        heads = np.concatenate([hi[proper], lo[proper], hi[loops]])
        order = np.lexsort((heads, tails))
        tails, heads = tails[order], heads[order]
        degree = np.bincount(tails, minlength=n)
        if (degree == 0).any():
            v = int(np.flatnonzero(degree == 0)[0])
            raise GraphError(f"vertex {v} is isolated")

        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degree, out=indptr[1:])
        heads = heads.astype(np.int64)
        indptr.flags.writeable = False
        heads.flags.writeable = False
        self._n = n
        self._indptr = indptr
        self._indices = heads
        self._edge_count = int(len(keys))
        self._loop_count = int(loops.sum())
        self._allow_loops = bool(allow_self_loops)

    # -- structure -----------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        """Number of undirected edges |E|, self-loops included."""
        return self._edge_count

    @property
    def loop_count(self) -> int:
        return self._loop_count

    @property
    def has_self_loops(self) -> bool:
        return self._loop_count > 0

    @property
    def self_loops_allowed(self) -> bool:
        return self._allow_loops

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} out of range [0, {self._n})")
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbor tuples."""
        return tuple(tuple(int(b) for b in self.neighbors(v)) for v in range(self._n))

    def edges(self) -> list[tuple[int, int]]:
        """Canonical ``(min, max)`` pairs in lexicographic order."""
        tails = np.repeat(np.arange(self._n), self.degrees)
        keep = tails <= self._indices
        return list(zip(tails[keep].tolist(), self._indices[keep].tolist()))

    def is_regular(self) -> bool:
        d = self.degrees
        return bool((d == d[0]).all())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
        )

    def __hash__(self) -> int:
        return hash((self._n, self._indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(N={self._n}, |E|={self._edge_count})"


class MarkedSet(frozenset):
    """Frozen set of marked vertex indices, validated against a vertex count."""

    def __new__(cls, vertices: Iterable[int] = (), vertex_count: int | None = None):
        items = [int(v) for v in vertices]
        if vertex_count is not None:
            bad = [v for v in items if not 0 <= v < vertex_count]
            if bad:
                raise GraphError(f"marked vertex {bad[0]} out of range [0, {vertex_count})")
        return super().__new__(cls, items)

    @property
    def k(self) -> int:
        return len(self)

    def mask(self, vertex_count: int) -> np.ndarray:
        m = np.zeros(vertex_count, dtype=bool)
        if self:
            idx = np.fromiter(self, dtype=np.int64)
            if idx.min() < 0 or idx.max() >= vertex_count:
                raise GraphError(f"marked vertex out of range [0, {vertex_count})")
            m[idx] = True
        return m

    def __repr__(self) -> str:
        return f"MarkedSet({sorted(self)})"


# -- file format ----------------------------------------------------------------


def from_edge_list(text: str | TextIO, allow_self_loops: bool = False) -> Graph:
    """
    Parse the whitespace-separated edge-list format.

    One ``u v`` pair per line, 0-based indices, ``#`` lines and blank lines
    ignored. The vertex count is one more than the largest index.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(f"expected two vertex indices, got {len(parts)} fields", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(f"non-integer vertex index in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise EdgeListParseError("negative vertex index", lineno)
        if u == v and not allow_self_loops:
            raise EdgeListParseError(f"self-loop at vertex {u} not allowed", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListParseError(f"duplicate edge {key[0]} {key[1]} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append(key)
    if not edges:
        raise EdgeListParseError("no edges")
    n = 1 + max(max(e) for e in edges)
    return Graph(n, edges, allow_self_loops=allow_self_loops)


def export(g: Graph, format: str = "edge_list") -> str:
    """Serialize as a canonical edge list or as an undirected DOT graph."""
    edges = g.edges()
    if format == "edge_list":
        return "".join(f"{u} {v}\n" for u, v in edges)
    if format == "dot":
        lines = ["graph G {"]
        lines += [f"  {v};" for v in range(g.vertex_count)]
        lines += [f"  {u} -- {v};" for u, v in edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {format!r}")


# -- generators -------------------------------------------------------------------


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q**0.5) + 1))


def _complete_edges(n: int) -> np.ndarray:
    i, j = np.triu_indices(n, k=1)
    return np.stack([i, j], axis=1)


def _require(ok: bool, family: str, constraint: str) -> None:
    if not ok:
        raise GraphError(f"{family}: parameter must satisfy {constraint}")


def generate(family: str, n: int | None = None) -> Graph:
    """
    Build a standard graph family.

    ``n`` is the single size parameter: vertex count for ``complete``,
    ``complete_loops`` and ``cycle``; side length for ``torus2d``; dimension
    for ``hypercube``; the prime for ``paley``. ``petersen`` takes none.
    """
    if family == "petersen":
        _require(n is None, family, "no parameters")
        pairs = list(itertools.combinations(range(5), 2))
        edges = [
            (i, j)
            for i, j in itertools.combinations(range(len(pairs)), 2)
            if not set(pairs[i]) & set(pairs[j])
        ]
        return Graph(10, edges)
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n is None:
        raise GraphError(f"{family}: missing size parameter")
    n = int(n)
    if family == "complete":
        _require(n >= 2, family, "N >= 2")
        return Graph(n, _complete_edges(n))
    if family == "complete_loops":
        _require(n >= 2, family, "N >= 2")
        loops = np.stack([np.arange(n), np.arange(n)], axis=1)
        return Graph(n, np.concatenate([_complete_edges(n), loops]), allow_self_loops=True)
    if family == "cycle":
        _require(n >= 3, family, "N >= 3")
        return Graph(n, [(v, (v + 1) % n) for v in range(n)])
    if family == "torus2d":
        _require(n >= 3, family, "side >= 3")
        edges = []
        for r in range(n):
            for c in range(n):
                v = r * n + c
                edges.append((v, r * n + (c + 1) % n))
                edges.append((v, ((r + 1) % n) * n + c))
        return Graph(n * n, edges)
    if family == "hypercube":
        _require(n >= 1, family, "dimension d >= 1")
        edges = [(v, v ^ (1 << b)) for v in range(1 << n) for b in range(n) if v < v ^ (1 << b)]
        return Graph(1 << n, edges)
    # paley
    _require(_is_prime(n) and n % 4 == 1, family, "q prime with q = 1 mod 4")
    residues = {(x * x) % n for x in range(1, n)}
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if (b - a) % n in residues]
    return Graph(n, edges)


def bipartite_double_cover(g: Graph) -> Graph:
    """
    Tensor product ``g x K2``.

    Vertices ``0..N-1`` form part X and ``N..2N-1`` part Y; ``x`` joins ``N + y``
    whenever ``x ~ y`` in ``g``, so the cover has ``2|E|`` edges.
    """
    if g.has_self_loops:
        raise GraphError("bipartite double cover is undefined for graphs with self-loops")
    n = g.vertex_count
    tails = np.repeat(np.arange(n), g.degrees)
    edges = np.stack([tails, g.indices + n], axis=1)
    return Graph(2 * n, edges)


def marked_prefix(n: int, k: int) -> MarkedSet:
    """The marked set ``{0, ..., k-1}``."""
    return MarkedSet(range(k), vertex_count=n)


def parse_marked(text: str | Sequence[int] | None, vertex_count: int | None = None) -> MarkedSet:
    """Parse a comma-separated list such as ``"0,3"``; empty or None gives the empty set."""
    if text is None:
        return MarkedSet()
    if isinstance(text, str):
        text = text.strip()
        if not text:
            return MarkedSet()
        try:
            items = [int(t) for t in text.split(",")]
        except ValueError:
            raise GraphError(f"marked list must be comma-separated integers, got {text!r}") from None
    else:
        items = list(text)
    return MarkedSet(items, vertex_count=vertex_count)
