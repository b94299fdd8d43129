"""Fixed-point geometry descriptors and equivariant localization.

A descriptor records the torus-fixed points of the threefold, the fixed
points and pointwise-fixed rational curves of the surface over them,
tangent weights, and which divisors pass through each fixed point with
which normal-direction weight.  That data is enough to restrict the
structure sheaf of a lifted divisor to every fixed component, push it
down, and assemble the full equivariant Euler pairing as an exact
integer character; its positive/negative parts give the obstruction and
deformation spaces whose Euler-class ratio is the invariant.

The single geometric rule used throughout: the fiber weight of O(-Z) at
a fixed point is minus the sum, over divisors through the point, of
(multiplicity of the divisor in Z) times (tangent weight of the
direction normal to that divisor).  On a pointwise-fixed curve the fiber
weight is constant, the along-curve direction has weight 0, and the
restriction degree is minus the intersection number with the curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .folding import CurveClass, LiftedDivisor, Marking, divisor_labels, lift
from .rootsys import cartan_pairing
from .symring import (
    LaurentPoly,
    PointClassElem,
    RatFn,
    VirtualCharacter,
    euler_class,
    expfactor,
    to_polynomial,
)


class DescriptorError(ValueError):
    """Malformed or inconsistent fixed-point data."""


@dataclass(frozen=True)
class Incidence:
    divisor: str  # label of a marked-diagram node, e.g. "F2" or "E1"
    weight: int


@dataclass(frozen=True)
class YPoint:
    name: str
    weights: tuple[int, int, int]


@dataclass(frozen=True)
class SPoint:
    name: str
    weights: tuple[int, int]
    image: str
    incidences: tuple[Incidence, ...]


@dataclass(frozen=True)
class SCurve:
    """A pointwise-fixed rational curve; its name is its divisor label."""

    name: str
    image: str
    normal_weight: int
    self_intersection: int
    incidences: tuple[Incidence, ...]  # crossing divisors with transverse weight


@dataclass(frozen=True)
class GeometryDescriptor:
    y_points: tuple[YPoint, ...]
    s_points: tuple[SPoint, ...]
    s_curves: tuple[SCurve, ...]
    canonical_weight: int = -3

    def y_point(self, name: str) -> YPoint:
        for y in self.y_points:
            if y.name == name:
                return y
        raise DescriptorError(f"unknown fixed point {name!r}")


def _labels(m: Marking) -> dict[str, int]:
    return divisor_labels(m)


def _node_of(label: str, labels: dict[str, int]) -> int:
    try:
        return labels[label]
    except KeyError:
        raise DescriptorError(f"unknown divisor label {label!r}") from None


def _euler_by_todd(weights) -> LaurentPoly:
    """e(N)/td at a fixed point: one factor (1 - mu^-w) per tangent weight."""
    out = LaurentPoly.one()
    for w in weights:
        if w == 0:
            raise DescriptorError("tangent weight 0: degenerate fixed point")
        out = out * expfactor(-w)
    return out


def line_bundle_weight_at_point(lft: LiftedDivisor, q: SPoint, g: GeometryDescriptor, m: Marking) -> int:
    """Fiber weight of O(-Z) at an isolated fixed point of the surface."""
    if q not in g.s_points:
        raise DescriptorError(f"unknown point {q.name!r}")
    labels = _labels(m)
    return -sum(lft.full[_node_of(inc.divisor, labels)] * inc.weight for inc in q.incidences)


def line_bundle_on_curve(
    lft: LiftedDivisor, e: SCurve, g: GeometryDescriptor, m: Marking
) -> tuple[int, int]:
    """(fiber weight, degree) of O(-Z) on a pointwise-fixed curve.

    The degree is minus the intersection number with the curve.  The
    weight follows the same rule as at isolated points, taken at any
    crossing: the along-curve direction contributes weight 0, so only
    the curve's own multiplicity times the transverse weight survives.
    All crossings must agree.
    """
    if e not in g.s_curves:
        raise DescriptorError(f"unknown curve {e.name!r}")
    labels = _labels(m)
    node = _node_of(e.name, labels)
    mult = lft.full[node]
    degree = cartan_pairing(m.diagram, _unit(m.diagram.rank, node), lft.full)
    candidates = {-mult * inc.weight for inc in e.incidences}
    if len(candidates) > 1:
        raise DescriptorError(f"inconsistent restriction weight on {e.name!r}: {sorted(candidates)}")
    weight = candidates.pop() if candidates else -mult * e.normal_weight
    return weight, degree


def _unit(rank: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(rank))


def point_contribution(lft: LiftedDivisor, q: SPoint, g: GeometryDescriptor, m: Marking) -> RatFn:
    """Residue summand of one isolated surface point, image prefactor included."""
    y = g.y_point(q.image)
    w = line_bundle_weight_at_point(lft, q, g, m)
    num = _euler_by_todd(y.weights) * expfactor(w)
    den = _euler_by_todd(q.weights)
    return RatFn(num, den)


def curve_contribution(lft: LiftedDivisor, e: SCurve, g: GeometryDescriptor, m: Marking) -> RatFn:
    """Residue summand of a pointwise-fixed curve, pushed down to its image.

    Works in the nilpotent ring over the curve: the tangent line has
    weight 0 and degree 2 (Todd factor 1 + x), the normal line has the
    recorded weight and degree equal to the self-intersection.
    """
    if e not in g.s_curves:
        raise DescriptorError(f"unknown curve {e.name!r}")
    if e.normal_weight == 0:
        raise DescriptorError(f"curve {e.name!r} has normal weight 0: not invertible")
    y = g.y_point(e.image)
    w, d = line_bundle_on_curve(lft, e, g, m)
    restriction = 1 - PointClassElem.exponential(w, d)
    td_tangent = PointClassElem(1, Fraction(1))  # series of x/(1-e^-x) at degree 2
    normal = 1 - PointClassElem.exponential(-e.normal_weight, -e.self_intersection)
    integrand = restriction * td_tangent * normal.inverse()
    return RatFn(_euler_by_todd(y.weights)) * integrand.integrate()


def chern_character_at(p: YPoint, lft: LiftedDivisor, g: GeometryDescriptor, m: Marking) -> RatFn:
    """Restriction of the pushed-down Chern character to one threefold point."""
    total = RatFn(0)
    for q in g.s_points:
        if q.image == p.name:
            total = total + point_contribution(lft, q, g, m)
    for e in g.s_curves:
        if e.image == p.name:
            total = total + curve_contribution(lft, e, g, m)
    return total


def total_chi(lft: LiftedDivisor, g: GeometryDescriptor, m: Marking) -> VirtualCharacter:
    """Full equivariant Euler pairing as an integer character.

    Sums ch^dual * ch / (e(N)/td) over the threefold fixed points; the
    result must reduce to an honest Laurent polynomial with integer
    coefficients, otherwise the descriptor and the lift are inconsistent.
    """
    total = RatFn(0)
    for p in g.y_points:
        ch = chern_character_at(p, lft, g, m)
        if not ch:
            continue
        total = total + ch.dual() * ch / RatFn(_euler_by_todd(p.weights))
    return to_polynomial(total)


@dataclass(frozen=True)
class ExtDecomposition:
    """Splitting 1 - ext1 + ext2 - mu^serre of an Euler pairing character."""

    ext1: VirtualCharacter
    ext2: VirtualCharacter
    serre_weight: int = 3

    def chi(self) -> VirtualCharacter:
        one = VirtualCharacter({0: 1})
        serre = VirtualCharacter({self.serre_weight: 1})
        return one - self.ext1 + self.ext2 - serre


def ext_decompose(chi: VirtualCharacter, serre_weight: int = 3) -> ExtDecomposition:
    """Split off the unit and Serre-dual parts and separate the rest by sign.

    A weight-0 remainder or a dimension mismatch means the splitting
    assumption fails; that is an error, never a silent cancellation.
    """
    if chi.coefficient(0) != 1:
        raise ValueError(f"weight-0 part of chi is {chi.coefficient(0)}, expected 1")
    rest = chi - VirtualCharacter({0: 1}) + VirtualCharacter({serre_weight: 1})
    if rest.coefficient(0) != 0:
        raise ValueError("weight-0 residue after removing unit and Serre parts")
    ext2, ext1 = rest.split()
    if ext1.dim() != ext2.dim():
        raise ValueError(f"dimension mismatch: dim ext1 {ext1.dim()} != dim ext2 {ext2.dim()}")
    return ExtDecomposition(ext1=ext1, ext2=ext2, serre_weight=serre_weight)


def bps_from_localization(cls: CurveClass, m: Marking, g: GeometryDescriptor) -> Fraction:
    """Invariant of a class as the Euler-class ratio at its fixed sheaf."""
    lft = lift(cls, m)
    if lft.self_pairing != -2:
        raise ValueError(f"class {cls!r} does not come from a positive root")
    chi = total_chi(lft, g, m)
    dec = ext_decompose(chi, serre_weight=-g.canonical_weight)
    e2 = euler_class(dec.ext2)
    e1 = euler_class(dec.ext1)
    if e2.degree != e1.degree:
        raise ValueError("equivariant degrees of the two Euler classes do not cancel")
    return Fraction(e2.scalar, e1.scalar)


# -- descriptor validation -------------------------------------------------


def validate_descriptor(g: GeometryDescriptor, m: Marking) -> list[str]:
    """Hard structural checks (raise DescriptorError) plus soft warnings.

    Hard: unique names, resolvable images and labels, threefold tangent
    triples summing to minus the canonical weight, incidence weights
    drawn from the point's tangent weights, every divisor seen at exactly
    two fixed ends (or being itself a fixed curve), and along-curve
    weights at the two ends of each divisor cancelling.

    Soft (returned): surface tangent weights not summing to 1, or a
    fixed curve with self-intersection other than -2.
    """
    warnings: list[str] = []
    labels = _labels(m)
    names = [y.name for y in g.y_points] + [q.name for q in g.s_points] + [e.name for e in g.s_curves]
    if len(set(names)) != len(names):
        raise DescriptorError("component names are not unique")
    for y in g.y_points:
        if sum(y.weights) != -g.canonical_weight:
            raise DescriptorError(
                f"tangent weights of {y.name} sum to {sum(y.weights)}, expected {-g.canonical_weight}"
            )
    for q in g.s_points:
        g.y_point(q.image)
        if len(q.incidences) > 2:
            raise DescriptorError(f"{q.name}: more than two divisors through a surface point")
        pool = list(q.weights)
        for inc in q.incidences:
            _node_of(inc.divisor, labels)
            if inc.weight not in pool:
                raise DescriptorError(
                    f"{q.name}: incidence weight {inc.weight} not among tangent weights {q.weights}"
                )
            pool.remove(inc.weight)
        if sum(q.weights) != 1:
            warnings.append(f"{q.name}: tangent weights sum to {sum(q.weights)}, not 1")
    curve_labels = set()
    for e in g.s_curves:
        g.y_point(e.image)
        _node_of(e.name, labels)
        curve_labels.add(e.name)
        for inc in e.incidences:
            _node_of(inc.divisor, labels)
        if e.self_intersection != -2:
            warnings.append(f"{e.name}: self-intersection {e.self_intersection}, not -2")
    # ends per divisor label: (along-curve weight at each fixed end)
    ends: dict[str, list[int]] = {}
    for q in g.s_points:
        if len(q.incidences) == 1:
            inc = q.incidences[0]
            pool = list(q.weights)
            pool.remove(inc.weight)
            ends.setdefault(inc.divisor, []).append(pool[0])
        elif len(q.incidences) == 2:
            a, b = q.incidences
            ends.setdefault(a.divisor, []).append(b.weight)
            ends.setdefault(b.divisor, []).append(a.weight)
    for e in g.s_curves:
        for inc in e.incidences:
            ends.setdefault(inc.divisor, []).append(inc.weight)
    for label in labels:
        got = ends.get(label, [])
        if label in curve_labels:
            if got:
                raise DescriptorError(f"fixed curve {label} also appears in incidence data")
            continue
        if len(got) != 2:
            raise DescriptorError(f"divisor {label} has {len(got)} fixed ends, expected 2")
        if sum(got) != 0:
            raise DescriptorError(f"divisor {label}: end weights {got} do not cancel")
    return warnings


# -- descriptor file format --------------------------------------------------
#
# Versioned header, three sections, '#' starts a comment:
#
#   DESCRIPTOR-VERSION 1
#   CANONICAL-WEIGHT -3
#   Y-POINTS
#   <name> <w1> <w2> <w3>
#   S-POINTS
#   <name> <w1> <w2> <image> [<divisor>:<normal weight> ...]
#   S-CURVES
#   <name> <image> <normal weight> <self-intersection> [<divisor>:<weight> ...]
#
# Divisors are referred to by their marked-diagram labels F1..Fr, E1..Es;
# the name of an S-CURVES entry is the label of the curve itself.


def parse_descriptor(text: str) -> GeometryDescriptor:
    version: int | None = None
    canonical: int | None = None
    section: str | None = None
    y_points: list[YPoint] = []
    s_points: list[SPoint] = []
    s_curves: list[SCurve] = []

    def parse_incidences(tokens: list[str], lineno: int) -> tuple[Incidence, ...]:
        out = []
        for tok in tokens:
            div, _, w = tok.partition(":")
            if not div or not w:
                raise DescriptorError(f"line {lineno}: bad incidence {tok!r}")
            out.append(Incidence(div, _int(w, lineno)))
        return tuple(out)

    def _int(tok: str, lineno: int) -> int:
        try:
            return int(tok)
        except ValueError:
            raise DescriptorError(f"line {lineno}: expected an integer, got {tok!r}") from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if head == "DESCRIPTOR-VERSION" and len(tokens) == 2:
            version = _int(tokens[1], lineno)
            if version != 1:
                raise DescriptorError(f"unsupported descriptor version {version}")
            continue
        if head == "CANONICAL-WEIGHT" and len(tokens) == 2:
            canonical = _int(tokens[1], lineno)
            continue
        if head in ("Y-POINTS", "S-POINTS", "S-CURVES") and len(tokens) == 1:
            section = head
            continue
        if version is None:
            raise DescriptorError("descriptor must start with DESCRIPTOR-VERSION")
        if section == "Y-POINTS":
            if len(tokens) != 4:
                raise DescriptorError(f"line {lineno}: Y point needs name and 3 weights")
            y_points.append(YPoint(tokens[0], tuple(_int(t, lineno) for t in tokens[1:4])))
        elif section == "S-POINTS":
            if len(tokens) < 4:
                raise DescriptorError(f"line {lineno}: S point needs name, 2 weights, image")
            s_points.append(
                SPoint(
                    tokens[0],
                    (_int(tokens[1], lineno), _int(tokens[2], lineno)),
                    tokens[3],
                    parse_incidences(tokens[4:], lineno),
                )
            )
        elif section == "S-CURVES":
            if len(tokens) < 4:
                raise DescriptorError(
                    f"line {lineno}: S curve needs name, image, normal weight, self-intersection"
                )
            s_curves.append(
                SCurve(
                    tokens[0],
                    tokens[1],
                    _int(tokens[2], lineno),
                    _int(tokens[3], lineno),
                    parse_incidences(tokens[4:], lineno),
                )
            )
        else:
            raise DescriptorError(f"line {lineno}: data outside of a section")
    if version is None:
        raise DescriptorError("missing DESCRIPTOR-VERSION header")
    if canonical is None:
        raise DescriptorError("missing CANONICAL-WEIGHT header")
    if not y_points:
        raise DescriptorError("no Y-POINTS given")
    return GeometryDescriptor(tuple(y_points), tuple(s_points), tuple(s_curves), canonical)


def format_descriptor(g: GeometryDescriptor) -> str:
    lines = [
        "DESCRIPTOR-VERSION 1",
        f"CANONICAL-WEIGHT {g.canonical_weight}",
        "",
        "Y-POINTS",
    ]
    for y in g.y_points:
        lines.append(f"{y.name} {y.weights[0]} {y.weights[1]} {y.weights[2]}")
    lines.append("")
    lines.append("S-POINTS")
    for q in g.s_points:
        incs = " ".join(f"{i.divisor}:{i.weight}" for i in q.incidences)
        lines.append(f"{q.name} {q.weights[0]} {q.weights[1]} {q.image}" + (f" {incs}" if incs else ""))
    lines.append("")
    lines.append("S-CURVES")
    for e in g.s_curves:
        incs = " ".join(f"{i.divisor}:{i.weight}" for i in e.incidences)
        lines.append(
            f"{e.name} {e.image} {e.normal_weight} {e.self_intersection}" + (f" {incs}" if incs else "")
        )
    return "\n".join(lines) + "\n"
