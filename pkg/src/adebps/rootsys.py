"""ADE Dynkin diagrams, the Cartan form, and positive-root enumeration.

All vectors are positional integer tuples over the fixed node order
n1..n_rank, so values stay comparable across modules and files.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

RootVector = tuple[int, ...]

#: brute-force coefficient bound; no ADE positive root exceeds it
ORACLE_BOUND = 6


@dataclass(frozen=True)
class DynkinDiagram:
    """A simply-laced Dynkin tree with the fixed node order n1..n_rank.

    Canonical shapes produced by :func:`build_diagram`:

    * ``A_n`` chain n1-n2-...-n_n
    * ``D_n`` chain n1-...-n_{n-1}, with n_n attached to n_{n-2}
    * ``E_n`` chain n1-...-n_{n-1}, with n_n attached to n_{n-3}
    """

    kind: str
    rank: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        r = self.rank
        if r < 1:
            raise ValueError("rank must be positive")
        deg = [0] * r
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(r)]
        for e in self.edges:
            i, j = e
            if not (0 <= i < r and 0 <= j < r) or i == j:
                raise ValueError(f"bad edge {e!r}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {e!r}")
            seen.add(key)
            deg[i] += 1
            deg[j] += 1
            adj[i].append(j)
            adj[j].append(i)
        if len(self.edges) != r - 1:
            raise ValueError("a Dynkin diagram is a tree: need rank-1 edges")
        reached = {0}
        stack = [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in reached:
                    reached.add(nb)
                    stack.append(nb)
        if len(reached) != r:
            raise ValueError("diagram is not connected")
        if any(d > 3 for d in deg) or sum(d == 3 for d in deg) > 1:
            raise ValueError("node degrees are not of ADE shape")

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(b if a == i else a for a, b in self.edges if i in (a, b)))

    def adjacent(self, i: int, j: int) -> bool:
        return (i, j) in self.edges or (j, i) in self.edges

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """2 on the diagonal, -1 across each edge, 0 elsewhere."""
        m = [[0] * self.rank for _ in range(self.rank)]
        for i in range(self.rank):
            m[i][i] = 2
        for i, j in self.edges:
            m[i][j] = -1
            m[j][i] = -1
        return tuple(tuple(row) for row in m)

    def node_names(self) -> tuple[str, ...]:
        return tuple(f"n{i + 1}" for i in range(self.rank))


def build_diagram(kind: str, rank: int) -> DynkinDiagram:
    """Canonical ADE diagram; raises ValueError on an illegal (kind, rank)."""
    k = kind.upper()
    if k == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif k == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        edges = [(i, i + 1) for i in range(rank - 2)]
        edges.append((rank - 3, rank - 1))
    elif k == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        edges = [(i, i + 1) for i in range(rank - 2)]
        edges.append((rank - 4, rank - 1))
    else:
        raise ValueError(f"unknown kind {kind!r}: expected A, D or E")
    return DynkinDiagram(k, rank, tuple(edges))


def node_index(name: str, rank: int) -> int:
    """Parse a node label n1..n_rank to its 0-based index."""
    if not name.startswith("n"):
        raise ValueError(f"bad node name {name!r}")
    try:
        k = int(name[1:])
    except ValueError:
        raise ValueError(f"bad node name {name!r}") from None
    if not 1 <= k <= rank:
        raise ValueError(f"node {name!r} out of range for rank {rank}")
    return k - 1


def cartan_pairing(d: DynkinDiagram, u: RootVector, v: RootVector) -> int:
    """u^T C v; the curve-intersection pairing is the negative of this."""
    if len(u) != d.rank or len(v) != d.rank:
        raise ValueError("dimension mismatch")
    total = 2 * sum(a * b for a, b in zip(u, v))
    for i, j in d.edges:
        total -= u[i] * v[j] + u[j] * v[i]
    return total


def is_positive_root(d: DynkinDiagram, v: RootVector) -> bool:
    if len(v) != d.rank:
        return False
    if any(c < 0 for c in v) or not any(v):
        return False
    return cartan_pairing(d, v, v) == 2


@lru_cache(maxsize=None)
def _positive_roots(d: DynkinDiagram) -> tuple[RootVector, ...]:
    # Closure under adding simple roots: v + e_i is a root exactly when the
    # quadratic condition still holds (simply laced), and every positive
    # root is reachable from a simple root this way.
    rank = d.rank
    simple = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
    found: set[RootVector] = set(simple)
    frontier = list(simple)
    while frontier:
        v = frontier.pop()
        for k in range(rank):
            u = v[:k] + (v[k] + 1,) + v[k + 1:]
            if u in found:
                continue
            if cartan_pairing(d, u, u) == 2:
                found.add(u)
                frontier.append(u)
    return tuple(sorted(found))


def enumerate_positive_roots(d: DynkinDiagram) -> list[RootVector]:
    """All v >= 0 with v^T C v = 2, sorted lexicographically."""
    return list(_positive_roots(d))


def enumerate_positive_roots_bruteforce(d: DynkinDiagram, bound: int = ORACLE_BOUND) -> list[RootVector]:
    """Independent oracle: scan every vector with coefficients in [0, bound]."""
    rank = d.rank
    C = np.array(d.cartan_matrix(), dtype=np.int64)
    vals = bound + 1
    total = vals**rank
    hits: list[RootVector] = []
    chunk = 1 << 19
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        V = np.empty((idx.size, rank), dtype=np.int64)
        for k in range(rank - 1, -1, -1):
            V[:, k] = idx % vals
            idx = idx // vals
        q = ((V @ C) * V).sum(axis=1)
        hits.extend(tuple(int(x) for x in row) for row in V[q == 2])
    return sorted(hits)


def highest_root(d: DynkinDiagram) -> RootVector:
    """The unique positive root that dominates all others coefficientwise."""
    roots = _positive_roots(d)
    best = max(roots, key=sum)
    for r in roots:
        if any(b < c for b, c in zip(best, r)):
            raise ArithmeticError("no coefficientwise-maximal root found")
    return best
