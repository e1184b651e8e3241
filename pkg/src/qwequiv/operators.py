"""
Real orthogonal operators on the arc space.

Every operator applies matrix-free (``op.apply(v)`` or ``op @ v``) and can be
materialized as a scipy CSR matrix through ``op.matrix`` for entrywise
comparison. Products apply their factors right to left, so ``compose([A, B])``
acts like ``A B`` and ``B`` hits the state first.

The Szegedy-side operators are built from projectors onto the star states of
the double cover (``szegedy_reflection``, ``szegedy_query``). The coined-side
operators are built from vertex blocks, the arc reversal permutation and sign
diagonals (``coin_grover``, ``shift_flipflop``, ``oracle``). The two families
share only the arc basis, which keeps the equivalence checks meaningful.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from qwequiv.arcspace import ArcBasis
from qwequiv.graph import Graph, GraphError, MarkedSet

__all__ = [
    "WalkOperator",
    "SubspaceReflection",
    "GroverCoin",
    "Permutation",
    "SignDiagonal",
    "Product",
    "coin_grover",
    "shift_flipflop",
    "oracle",
    "szegedy_reflection",
    "szegedy_query",
    "compose",
    "walk_operator",
    "WALK_KINDS",
    "SEARCH_KINDS",
]

WALK_KINDS = (
    "szegedy_W",
    "szegedy_Wprime",
    "szegedy_Wq1",
    "szegedy_Wq2",
    "coined_U",
    "coined_USKW",
    "coined_SCQ",
    "coined_U2Q",
)
SEARCH_KINDS = tuple(k for k in WALK_KINDS if k not in ("szegedy_W", "coined_U"))


class WalkOperator:
    """Base class: a linear operator on the arc space of a fixed dimension."""

    def __init__(self, dimension: int, label: str):
        self.dimension = int(dimension)
        self.label = label

    def apply(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _build_matrix(self) -> sp.csr_matrix:
        raise NotImplementedError

    @cached_property
    def matrix(self) -> sp.csr_matrix:
        m = sp.csr_matrix(self._build_matrix())
        m.eliminate_zeros()
        return m

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def orthogonality_error(self) -> float:
        """``max |A^T A - I|`` over all entries."""
        m = self.matrix
        diff = (m.T @ m - sp.identity(self.dimension, format="csr")).tocsr()
        return float(abs(diff).max()) if diff.nnz else 0.0

    def _check_vector(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.dimension:
            raise ValueError(f"{self.label}: dimension mismatch ({v.shape[0]} vs {self.dimension})")
        return v

    def __matmul__(self, other):
        if isinstance(other, WalkOperator):
            return compose([self, other])
        return self.apply(self._check_vector(other))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label!r}, dimension={self.dimension})"


class SubspaceReflection(WalkOperator):
    """
    ``sign * (2 F F^T - I)`` for a frame ``F`` with orthonormal columns.

    ``sign=-1`` gives ``I - 2 F F^T``, the sign flip on the span of ``F``.
    """

    def __init__(self, frame: sp.spmatrix, label: str, sign: int = 1):
        super().__init__(frame.shape[0], label)
        self.frame = sp.csr_matrix(frame)
        self.sign = 1 if sign > 0 else -1
        self._frame_t = self.frame.T.tocsr()
        self._segments = None
        if self.frame.nnz and np.diff(self.frame.indptr).max() == 1:
            self._init_segments()
        if self._segments is None:
            support = np.flatnonzero(np.diff(self.frame.indptr))
            self._full = len(support) == self.dimension
            self._support = support
            self._frame_rows = self.frame if self._full else self.frame[support]
            # both products walk the frame rows in order, so the long vector is
            # streamed and only the short column vector is accessed at random
            self._frame_rows_t = self._frame_rows.T

    def _init_segments(self):
        # columns with disjoint supports: F F^T v is a per-column weighted sum
        # broadcast back, done with a gather and reduceat instead of two matvecs
        ft = self._frame_t
        counts = np.diff(ft.indptr)
        ft = ft[counts > 0]
        counts = counts[counts > 0]
        rows = ft.indices.astype(np.intp)
        w = ft.data.astype(float)
        starts = ft.indptr[:-1].astype(np.intp)
        # only worth it when every row is covered in order; scattered rows make
        # the gather slower than the sparse products
        if not (len(rows) == self.dimension and bool((rows == np.arange(self.dimension)).all())):
            return
        # star frames carry one weight per column, which folds into a single scale
        scale = None
        wc = w[starts]
        if np.array_equal(w, np.repeat(wc, counts)):
            scale = 2.0 * wc * wc
        self._segments = (w, starts, counts, scale)

    def _apply_segments(self, v):
        w, starts, counts, scale = self._segments
        if scale is None:
            z = np.repeat(np.add.reduceat(v * w, starts), counts)
            z *= w
            z *= 2.0
        else:
            z = np.repeat(np.add.reduceat(v, starts) * scale, counts)
        z -= v
        if self.sign < 0:
            np.negative(z, out=z)
        return z

    def apply(self, v):
        if self._segments is not None:
            return self._apply_segments(v)
        if self._full:
            z = self._frame_rows @ (self._frame_rows_t @ v)
            z *= 2.0
            z -= v
            if self.sign < 0:
                np.negative(z, out=z)
            return z
        z = self._frame_rows @ (self._frame_rows_t @ v[self._support])
        z *= 2.0
        if self.sign > 0:
            out = -v
            out[self._support] += z
        else:
            out = v.copy()
            out[self._support] -= z
        return out

    def _build_matrix(self):
        m = 2.0 * (self.frame @ self._frame_t) - sp.identity(self.dimension, format="csr")
        return m if self.sign > 0 else -m


class GroverCoin(WalkOperator):
    """
    Block-diagonal coin over the contiguous tail groups of an arc basis.

    Unmarked blocks invert their amplitudes about the block mean; blocks in
    ``negated`` are multiplied by -1.
    """

    def __init__(self, offsets: np.ndarray, negated: np.ndarray, label: str):
        self.offsets = np.asarray(offsets, dtype=np.int64)
        super().__init__(int(self.offsets[-1]), label)
        self.sizes = np.diff(self.offsets)
        self.negated = np.asarray(negated, dtype=bool)
        self._neg_arcs = np.repeat(self.negated, self.sizes)

    def apply(self, v):
        means = np.add.reduceat(v, self.offsets[:-1]) / self.sizes
        out = 2.0 * np.repeat(means, self.sizes) - v
        out[self._neg_arcs] = -v[self._neg_arcs]
        return out

    def _build_matrix(self):
        blocks = []
        for d, neg in zip(self.sizes.tolist(), self.negated.tolist()):
            if neg:
                blocks.append(-np.eye(d))
            else:
                blocks.append(np.full((d, d), 2.0 / d) - np.eye(d))
        return sp.block_diag(blocks, format="csr")


class Permutation(WalkOperator):
    """``(P v)[i] = v[source[i]]``."""

    def __init__(self, source: np.ndarray, label: str):
        self.source = np.asarray(source, dtype=np.int64)
        super().__init__(len(self.source), label)

    def apply(self, v):
        return v[self.source]

    def _build_matrix(self):
        n = self.dimension
        return sp.csr_matrix((np.ones(n), (np.arange(n), self.source)), shape=(n, n))


class SignDiagonal(WalkOperator):
    """Diagonal operator with entries +1 or -1."""

    def __init__(self, signs: np.ndarray, label: str):
        self.signs = np.asarray(signs, dtype=float)
        super().__init__(len(self.signs), label)

    def apply(self, v):
        return self.signs * v

    def _build_matrix(self):
        return sp.diags(self.signs, format="csr")


class Product(WalkOperator):
    """Ordered product; the last factor acts first."""

    def __init__(self, factors: Sequence[WalkOperator], label: str | None = None):
        flat: list[WalkOperator] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Product) else [f])
        dims = {f.dimension for f in flat}
        if len(dims) != 1:
            raise ValueError(f"dimension mismatch among factors: {sorted(dims)}")
        self.factors = tuple(flat)
        super().__init__(dims.pop(), label or " ".join(f.label for f in factors))

    def apply(self, v):
        for f in reversed(self.factors):
            v = f.apply(v)
        return v

    def _build_matrix(self):
        m = self.factors[-1].matrix
        for f in reversed(self.factors[:-1]):
            m = f.matrix @ m
        return m


def compose(ops: Sequence[WalkOperator], label: str | None = None) -> WalkOperator:
    """Operator product ``ops[0] ops[1] ... ops[-1]`` (rightmost acts first)."""
    if not ops:
        raise ValueError("compose needs at least one operator")
    if len(ops) == 1 and label is None:
        return ops[0]
    return Product(ops, label)


# -- coined side ------------------------------------------------------------------


def coin_grover(
    g: Graph,
    basis: ArcBasis,
    marked: MarkedSet | None = None,
    marked_coin: str = "grover",
) -> GroverCoin:
    """
    Grover diffusion coin, optionally with ``-I`` at marked vertices.

    With ``marked_coin="negative_identity"`` the marked vertices get ``-I``
    (the selective coin of SKW search); with ``"grover"`` the marked set is ignored.
    """
    if marked_coin not in ("grover", "negative_identity"):
        raise ValueError(f"unknown marked_coin {marked_coin!r}")
    n = g.vertex_count
    if marked_coin == "negative_identity" and marked is not None:
        negated = marked.mask(n)
        label = "C'"
    else:
        negated = np.zeros(n, dtype=bool)
        label = "C"
    return GroverCoin(basis.offsets, negated, label)


def shift_flipflop(basis: ArcBasis) -> Permutation:
    """Flip-flop shift ``S|a,b> = |b,a>``."""
    return Permutation(basis.reverse, "S")


def oracle(basis: ArcBasis, marked: MarkedSet, side: str = "tail") -> SignDiagonal:
    """Sign flip on arcs whose tail (``Q``) or head (the incoming-arc query) is marked."""
    m = marked.mask(basis.vertex_count)
    if side == "tail":
        hit = m[basis.tails]
        label = "Q"
    elif side == "head":
        hit = m[basis.heads]
        label = "Q_in"
    else:
        raise ValueError(f"unknown oracle side {side!r}")
    return SignDiagonal(np.where(hit, -1.0, 1.0), label)


# -- Szegedy side -------------------------------------------------------------------


def _star_frame(basis: ArcBasis, side: str, vertices: np.ndarray, normalized: bool) -> sp.csr_matrix:
    """
    Columns are the double-cover star states of ``vertices``.

    Side X stars collect edges ``|x, y>`` at fixed ``x`` (arc tails); side Y
    stars collect edges at fixed ``y`` (arc heads).
    """
    if side == "X":
        endpoint = basis.tails
    elif side == "Y":
        endpoint = basis.heads
    else:
        raise ValueError(f"unknown side {side!r}; expected 'X' or 'Y'")
    n = basis.vertex_count
    column = np.full(n, -1, dtype=np.int64)
    column[vertices] = np.arange(len(vertices))
    col = column[endpoint]
    rows = np.flatnonzero(col >= 0)
    if normalized:
        deg = np.bincount(endpoint, minlength=n).astype(float)
        vals = 1.0 / np.sqrt(deg[endpoint[rows]])
    else:
        vals = np.ones(len(rows))
    return sp.csr_matrix((vals, (rows, col[rows])), shape=(basis.dimension, len(vertices)))


def _require_loopless(g: Graph) -> None:
    if g.has_self_loops:
        raise GraphError("Szegedy operators are undefined for graphs with self-loops")


def szegedy_reflection(
    g: Graph,
    basis: ArcBasis,
    side: str = "X",
    absorbing: MarkedSet | None = None,
) -> SubspaceReflection:
    """
    ``R1 = 2 sum_x |phi_x><phi_x| - I`` (side X) or ``R2`` over ``|psi_y>`` (side Y).

    With ``absorbing`` the marked stars are left out of the projector, so the
    edges incident to a marked vertex on that side are negated.
    """
    _require_loopless(g)
    n = g.vertex_count
    keep = np.ones(n, dtype=bool)
    if absorbing is not None:
        keep &= ~absorbing.mask(n)
    frame = _star_frame(basis, side, np.flatnonzero(keep), normalized=True)
    label = {"X": "R1", "Y": "R2"}[side] + ("'" if absorbing is not None else "")
    return SubspaceReflection(frame, label)


def szegedy_query(g: Graph, basis: ArcBasis, marked: MarkedSet, side: str = "X") -> SubspaceReflection:
    """
    Grover-type query on one part of the double cover.

    ``I - 2 sum_{x marked} P_x`` where ``P_x`` projects onto all edges incident
    to ``x`` in that part: ``Q1`` for side X, ``Q2`` for side Y.
    """
    _require_loopless(g)
    verts = np.flatnonzero(marked.mask(g.vertex_count))
    frame = _star_frame(basis, side, verts, normalized=False)
    # P_x is a sum of rank-one edge projectors, one column per edge
    edges = sp.csr_matrix(
        (np.ones(frame.nnz), (frame.tocoo().row, np.arange(frame.nnz))),
        shape=(basis.dimension, frame.nnz),
    )
    return SubspaceReflection(edges, {"X": "Q1", "Y": "Q2"}[side], sign=-1)


# -- factory ------------------------------------------------------------------------


def walk_operator(kind: str, g: Graph, basis: ArcBasis, marked: MarkedSet | None = None) -> WalkOperator:
    """
    One of the walk and search operators.

    ======================  =========================
    ``szegedy_W``           ``R2 R1``
    ``szegedy_Wprime``      ``R2' R1'``
    ``szegedy_Wq1``         ``R2 Q2 R1 Q1``
    ``szegedy_Wq2``         ``R2 R1 Q1``
    ``coined_U``            ``S C``
    ``coined_USKW``         ``S C'``
    ``coined_SCQ``          ``S C Q``
    ``coined_U2Q``          ``S C S C Q``
    ======================  =========================
    """
    if kind not in WALK_KINDS:
        raise ValueError(f"unknown walk kind {kind!r}; expected one of {', '.join(WALK_KINDS)}")
    if kind in SEARCH_KINDS and not marked:
        raise GraphError(f"{kind} needs at least one marked vertex")

    if kind.startswith("szegedy"):
        if kind == "szegedy_Wprime":
            r1 = szegedy_reflection(g, basis, "X", absorbing=marked)
            r2 = szegedy_reflection(g, basis, "Y", absorbing=marked)
            return compose([r2, r1], "W'")
        r1 = szegedy_reflection(g, basis, "X")
        r2 = szegedy_reflection(g, basis, "Y")
        if kind == "szegedy_W":
            return compose([r2, r1], "W")
        q1 = szegedy_query(g, basis, marked, "X")
        if kind == "szegedy_Wq1":
            q2 = szegedy_query(g, basis, marked, "Y")
            return compose([r2, q2, r1, q1], "Wq1")
        return compose([r2, r1, q1], "Wq2")

    s = shift_flipflop(basis)
    if kind == "coined_USKW":
        return compose([s, coin_grover(g, basis, marked, "negative_identity")], "U_SKW")
    c = coin_grover(g, basis)
    if kind == "coined_U":
        return compose([s, c], "U")
    q = oracle(basis, marked, "tail")
    if kind == "coined_SCQ":
        return compose([s, c, q], "SCQ")
    return compose([s, c, s, c, q], "U^2 Q")
