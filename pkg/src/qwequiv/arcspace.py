"""
The directed-arc state space shared by both walks.

Arc ``(a, b)`` is at once the coined state "at ``a``, pointing to ``b``" and
the double-cover edge joining ``a`` in X to ``b`` in Y. Arcs are grouped by
tail vertex with heads sorted inside each group, so the arcs leaving ``a``
occupy the contiguous slice ``offsets[a]:offsets[a + 1]``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from qwequiv.graph import Graph, GraphError, MarkedSet

__all__ = [
    "Arc",
    "ArcBasis",
    "build_basis",
    "uniform_state",
    "vertex_superposition",
    "marked_probability",
    "CONVENTIONS",
    "INIT_MODES",
]

CONVENTIONS = ("tail", "head", "either")
INIT_MODES = ("arc_uniform", "vertex_uniform")


class Arc(NamedTuple):
    tail: int
    head: int

    def reversed(self) -> "Arc":
        return Arc(self.head, self.tail)


class ArcBasis:
    """
    Ordered arc basis of a graph.

    Attributes
    ----------
    graph : Graph
    tails, heads : ndarray of int64
        Endpoints of arc ``i``.
    offsets : ndarray of int64
        ``offsets[a]:offsets[a + 1]`` is the block of arcs with tail ``a``.
    reverse : ndarray of int64
        ``reverse[i]`` is the index of the reversed arc; loop arcs map to themselves.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.vertex_count
        self.offsets = graph.indptr
        self.tails = np.repeat(np.arange(n, dtype=np.int64), graph.degrees)
        self.heads = graph.indices
        # keys are strictly increasing because of the grouping and sorting
        self._keys = self.tails * n + self.heads
        self.reverse = np.searchsorted(self._keys, self.heads * n + self.tails)
        for arr in (self.tails, self.reverse, self._keys):
            arr.flags.writeable = False

    @property
    def dimension(self) -> int:
        return len(self.tails)

    @property
    def vertex_count(self) -> int:
        return self.graph.vertex_count

    def __len__(self) -> int:
        return self.dimension

    def __getitem__(self, i: int) -> Arc:
        return Arc(int(self.tails[i]), int(self.heads[i]))

    def __iter__(self):
        return (Arc(a, b) for a, b in zip(self.tails.tolist(), self.heads.tolist()))

    @property
    def arcs(self) -> list[Arc]:
        return list(self)

    def index_of(self, arc: tuple[int, int]) -> int:
        a, b = arc
        n = self.vertex_count
        if not (0 <= a < n and 0 <= b < n):
            raise KeyError(arc)
        key = a * n + b
        i = int(np.searchsorted(self._keys, key))
        if i >= len(self._keys) or self._keys[i] != key:
            raise KeyError(arc)
        return i

    def __contains__(self, arc: object) -> bool:
        try:
            self.index_of(arc)  # type: ignore[arg-type]
        except (KeyError, TypeError, ValueError):
            return False
        return True

    def __repr__(self) -> str:
        return f"ArcBasis(N={self.vertex_count}, dimension={self.dimension})"


def build_basis(g: Graph) -> ArcBasis:
    return ArcBasis(g)


def uniform_state(basis: ArcBasis, mode: str = "arc_uniform") -> np.ndarray:
    """
    Uniform initial state.

    ``arc_uniform`` puts ``1/sqrt(dimension)`` on every arc; ``vertex_uniform``
    puts ``1/sqrt(N deg(a))`` on each arc leaving ``a``.
    """
    if basis.dimension == 0:
        raise ValueError("empty basis")
    if mode == "arc_uniform":
        return np.full(basis.dimension, 1.0 / np.sqrt(basis.dimension))
    if mode == "vertex_uniform":
        deg = basis.graph.degrees[basis.tails].astype(float)
        return 1.0 / np.sqrt(basis.vertex_count * deg)
    raise ValueError(f"unknown initial-state mode {mode!r}; expected one of {INIT_MODES}")


def vertex_superposition(basis: ArcBasis, a: int, side: str = "outgoing") -> np.ndarray:
    """Equal superposition of the arcs leaving (``outgoing``) or entering (``incoming``) vertex ``a``."""
    if not 0 <= a < basis.vertex_count:
        raise GraphError(f"vertex {a} out of range [0, {basis.vertex_count})")
    if side == "outgoing":
        support = basis.tails == a
    elif side == "incoming":
        support = basis.heads == a
    else:
        raise ValueError(f"unknown side {side!r}")
    psi = np.zeros(basis.dimension)
    psi[support] = 1.0 / np.sqrt(basis.graph.degree(a))
    return psi


def marked_probability(state: np.ndarray, basis: ArcBasis, marked: MarkedSet, convention: str = "tail") -> float:
    """Total weight on arcs whose tail, head, or either endpoint is marked."""
    m = marked.mask(basis.vertex_count)
    if convention == "tail":
        sel = m[basis.tails]
    elif convention == "head":
        sel = m[basis.heads]
    elif convention == "either":
        sel = m[basis.tails] | m[basis.heads]
    else:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    amp = state[sel]
    return float(np.dot(amp, amp))
