"""Dense reference constructions written straight from the definitions, one arc at a time."""

import numpy as np


def arc_list(g):
    return [(a, int(b)) for a in range(g.vertex_count) for b in g.neighbors(a)]


def dense_star_reflection(g, side, absorbing=()):
    """2 sum |phi><phi| - I with phi the normalized star of each (unabsorbed) vertex."""
    arcs = arc_list(g)
    dim = len(arcs)
    proj = np.zeros((dim, dim))
    for v in range(g.vertex_count):
        if v in absorbing:
            continue
        phi = np.zeros(dim)
        for i, (a, b) in enumerate(arcs):
            if (a if side == "X" else b) == v:
                phi[i] = 1.0
        phi /= np.linalg.norm(phi)
        proj += np.outer(phi, phi)
    return 2 * proj - np.eye(dim)


def dense_grover_coin(g, negated=()):
    """Entry (i, j) is 2/deg - delta when arcs i, j share a tail; -delta at negated tails."""
    arcs = arc_list(g)
    dim = len(arcs)
    m = np.zeros((dim, dim))
    for i, (a, _) in enumerate(arcs):
        for j, (c, _) in enumerate(arcs):
            if a != c:
                continue
            if a in negated:
                m[i, j] = -1.0 if i == j else 0.0
            else:
                m[i, j] = 2.0 / g.degree(a) - (1.0 if i == j else 0.0)
    return m


def dense_shift(g):
    arcs = arc_list(g)
    pos = {arc: i for i, arc in enumerate(arcs)}
    m = np.zeros((len(arcs), len(arcs)))
    for j, (a, b) in enumerate(arcs):
        m[pos[(b, a)], j] = 1.0
    return m


def dense_oracle(g, marked, side="tail"):
    arcs = arc_list(g)
    return np.diag([-1.0 if (a if side == "tail" else b) in marked else 1.0 for a, b in arcs])


def tensor_k2_adjacency(g):
    """Adjacency of G x K2 as kron(K2, A): rows/cols 0..N-1 are X, N..2N-1 are Y."""
    n = g.vertex_count
    a = np.zeros((n, n), dtype=int)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return np.kron(np.array([[0, 1], [1, 0]]), a)


def adjacency_matrix(g):
    n = g.vertex_count
    a = np.zeros((n, n), dtype=int)
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1
    return a


def quadratic_residue_neighbors(q, v):
    res = {(x * x) % q for x in range(1, q)}
    return sorted(u for u in range(q) if u != v and (u - v) % q in res)
