"""Black/white markings of a Dynkin diagram, root folding, divisor lifts.

White nodes label curve classes F_1..F_r that survive on the threefold;
black nodes label curves E_1..E_s contracted by the resolution of the
surface.  A positive root folds to its white part.  Conversely a curve
class lifts to a divisor upstairs by giving each black node the ceiling
of half the sum of its white neighbours' multiplicities; the class comes
from a positive root exactly when the lift has square -2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .rootsys import (
    DynkinDiagram,
    RootVector,
    build_diagram,
    cartan_pairing,
    enumerate_positive_roots,
    is_positive_root,
    node_index,
)

CurveClass = tuple[int, ...]


@dataclass(frozen=True)
class Marking:
    """A partition of the nodes into black (contracted) and ordered white."""

    diagram: DynkinDiagram
    black: frozenset[int]
    white_order: tuple[int, ...]

    def __post_init__(self):
        nodes = set(range(self.diagram.rank))
        if not set(self.black) <= nodes:
            raise ValueError("black nodes out of range")
        if len(set(self.white_order)) != len(self.white_order):
            raise ValueError("duplicate node in white order")
        if set(self.white_order) & set(self.black):
            raise ValueError("black and white overlap")
        if set(self.white_order) | set(self.black) != nodes:
            raise ValueError("black and white must cover all nodes")

    @property
    def black_order(self) -> tuple[int, ...]:
        """Black nodes in node order, fixing the labels E_1..E_s."""
        return tuple(sorted(self.black))

    def black_is_independent(self) -> bool:
        return not any(i in self.black and j in self.black for i, j in self.diagram.edges)


def divisor_labels(m: Marking) -> dict[str, int]:
    """Label -> node map: F1..Fr for white in order, E1..Es for black."""
    labels = {f"F{i + 1}": node for i, node in enumerate(m.white_order)}
    labels.update({f"E{j + 1}": node for j, node in enumerate(m.black_order)})
    return labels


def project(root: RootVector, m: Marking) -> CurveClass | None:
    """White part of a positive root; None when it is supported on black."""
    if not is_positive_root(m.diagram, root):
        raise ValueError(f"not a positive root: {root!r}")
    white = tuple(root[i] for i in m.white_order)
    return white if any(white) else None


@dataclass(frozen=True)
class BPSRecord:
    cls: CurveClass
    fiber_count: int
    invariant: Fraction


def bps_table(m: Marking) -> list[BPSRecord]:
    """Fold all positive roots and count fibers; n = count/2 per class."""
    fibers: Counter[CurveClass] = Counter()
    for root in enumerate_positive_roots(m.diagram):
        cls = project(root, m)
        if cls is not None:
            fibers[cls] += 1
    return [BPSRecord(cls, n, Fraction(n, 2)) for cls, n in sorted(fibers.items())]


@dataclass(frozen=True)
class LiftedDivisor:
    """Completion of a curve class to a divisor on the resolved surface."""

    full: tuple[int, ...]  # coefficient per diagram node
    k: tuple[int, ...]     # white-neighbour multiplicity sums, per black_order
    delta: tuple[int, ...]  # pairing with each contracted curve, per black_order
    self_pairing: int      # square under the curve-intersection form (-Cartan)


def lift(cls: CurveClass, m: Marking) -> LiftedDivisor:
    """Assign each black node ceil(k/2) of its white-neighbour sum k.

    Each delta entry is then k - 2*ceil(k/2), i.e. 0 or -1; this needs the
    black set to be pairwise non-adjacent.
    """
    if len(cls) != len(m.white_order):
        raise ValueError("class length does not match the number of white nodes")
    if any(c < 0 for c in cls):
        raise ValueError("class must be effective")
    if not any(cls):
        raise ValueError("zero class has no lift")
    if not m.black_is_independent():
        raise ValueError("adjacent black nodes: lift is not defined")
    d = m.diagram
    full = [0] * d.rank
    for node, mult in zip(m.white_order, cls):
        full[node] = mult
    ks = []
    for b in m.black_order:
        kj = sum(full[nb] for nb in d.neighbors(b))  # neighbours of black are white
        full[b] = (kj + 1) // 2
        ks.append(kj)
    full_t = tuple(full)
    delta = tuple(kj - 2 * full_t[b] for kj, b in zip(ks, m.black_order))
    return LiftedDivisor(full_t, tuple(ks), delta, -cartan_pairing(d, full_t, full_t))


def corresponds_to_root(cls: CurveClass, m: Marking) -> bool:
    """True exactly when the class is the white part of some positive root."""
    return lift(cls, m).self_pairing == -2


def euler_characteristic(divisor: tuple[int, ...], m: Marking) -> int:
    """Arithmetic genus count v^T C v / 2 of an effective nonzero divisor."""
    d = m.diagram
    if len(divisor) != d.rank:
        raise ValueError("divisor length does not match the rank")
    if any(c < 0 for c in divisor):
        raise ValueError("divisor must be effective")
    if not any(divisor):
        raise ValueError("zero divisor")
    return cartan_pairing(d, divisor, divisor) // 2


# -- marking file format -------------------------------------------------
#
# Key/value lines, '#' starts a comment:
#
#   kind  E
#   rank  8
#   black n1 n3 n5 n7
#   white n2 n4 n6 n8
#
# 'white' lists the white nodes in order (F1, F2, ...); 'black' may be
# empty.  Together they must cover every node exactly once.


def parse_marking(text: str) -> Marking:
    kind: str | None = None
    rank: int | None = None
    black: list[str] | None = None
    white: list[str] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0].lower()
        if key == "kind" and len(tokens) == 2:
            kind = tokens[1]
        elif key == "rank" and len(tokens) == 2:
            try:
                rank = int(tokens[1])
            except ValueError:
                raise ValueError(f"marking line {lineno}: bad rank {tokens[1]!r}") from None
        elif key == "black":
            black = tokens[1:]
        elif key == "white":
            white = tokens[1:]
        else:
            raise ValueError(f"marking line {lineno}: cannot parse {raw!r}")
    if kind is None or rank is None or black is None or white is None:
        raise ValueError("marking needs kind, rank, black and white lines")
    d = build_diagram(kind, rank)
    return Marking(
        d,
        frozenset(node_index(n, rank) for n in black),
        tuple(node_index(n, rank) for n in white),
    )


def format_marking(m: Marking) -> str:
    names = m.diagram.node_names()
    return (
        f"kind {m.diagram.kind}\n"
        f"rank {m.diagram.rank}\n"
        f"black {' '.join(names[i] for i in m.black_order)}\n"
        f"white {' '.join(names[i] for i in m.white_order)}\n"
    )
