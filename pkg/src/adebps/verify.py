"""Itemized self-checks behind the command-line ``verify`` command.

The quick subset exercises the four reference classes of the built-in
case; the full run adds enumeration oracles, whole-table consistency,
the non-root scan and the blackening uniqueness search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from . import catalog
from .folding import bps_table, lift, project
from .localize import (
    GeometryDescriptor,
    bps_from_localization,
    chern_character_at,
    ext_decompose,
    point_contribution,
    total_chi,
    validate_descriptor,
)
from .rootsys import (
    build_diagram,
    enumerate_positive_roots,
    enumerate_positive_roots_bruteforce,
    highest_root,
)
from .symring import LaurentPoly, RatFn, VirtualCharacter, euler_class, expfactor

# The four reference classes of the built-in case with their known
# character totals, Euler-class rows (scalar, degree) and invariants.
REFERENCE_CLASSES = (
    ((3, 5, 4, 3), {0: 1, 3: -1}, (Fraction(1), 0), (Fraction(1), 0), Fraction(1)),
    ((2, 4, 4, 2), {0: 1, 1: 1, 2: -1, 3: -1}, (Fraction(1), 1), (Fraction(2), 1), Fraction(1, 2)),
    ((2, 4, 3, 2), {0: 1, 1: -1, 2: 1, 3: -1}, (Fraction(2), 1), (Fraction(1), 1), Fraction(2)),
    ((1, 2, 2, 1), {0: 1, 1: -2, 2: 2, 3: -1}, (Fraction(4), 2), (Fraction(1), 2), Fraction(4)),
)

# Known statistics of the built-in folded table: (roots, classes, invariant).
TABLE_GROUPS = ((32, 16, Fraction(1)), (4, 4, Fraction(1, 2)), (48, 12, Fraction(2)), (32, 4, Fraction(4)))

# Golden data for the longest-root lift: restriction weights at the
# seven isolated surface points and characters at the five threefold points.
GOLDEN_POINT_WEIGHTS = {"Q1": -10, "Q1'": -6, "Q2": -6, "Q2'": -6, "Q3": -6, "Q3'": -6, "Q4": -6}
GOLDEN_CH = {
    "P1": LaurentPoly({-11: 1, -10: -1, -7: 1, -6: -1, -2: -1, 0: 1}),
    "P2": LaurentPoly({-8: 1, -6: -1, -2: -1, 0: 1}),
    "P3": LaurentPoly({-8: 1, -6: -1, -2: -1, 0: 1}),
    "P4": LaurentPoly({-8: 1, -6: -1, -2: -1, 0: 1}),
    "P": LaurentPoly({-8: 1, -6: -1, -2: -1, 0: 1}),
}
GOLDEN_CONTRIBUTIONS = {
    "P1": LaurentPoly({-5: 1, -3: -1, -2: 1, -1: 1, 1: -1, 2: 1, 4: -1, 5: -1, 6: 1, 8: -1}),
    "P2": LaurentPoly(
        {-4: 1, -3: 2, -2: 1, -1: 1, 0: 2, 1: 1, 2: -1, 3: -2, 4: -1, 5: -1, 6: -2, 7: -1}
    ),
    "P3": LaurentPoly(
        {-4: 1, -3: 2, -2: 1, -1: 1, 0: 2, 1: 1, 2: -1, 3: -2, 4: -1, 5: -1, 6: -2, 7: -1}
    ),
    "P4": LaurentPoly(
        {-4: 1, -3: 1, -2: 1, -1: 1, 0: 1, 1: 1, 2: -1, 3: -1, 4: -1, 5: -1, 6: -1, 7: -1}
    ),
    "P": LaurentPoly(
        {-5: -1, -4: -3, -3: -4, -2: -4, -1: -4, 0: -4, 1: -2, 2: 2, 3: 4, 4: 4, 5: 4, 6: 4, 7: 3, 8: 1}
    ),
}
GOLDEN_SUMMANDS = {
    "Q1": RatFn(expfactor(-10) * expfactor(3) * expfactor(-1), expfactor(4)),
    "Q1'": RatFn(expfactor(-6) * expfactor(-5) * expfactor(-1), expfactor(-4)),
    "Q2": RatFn(
        expfactor(-6) * expfactor(-1) * expfactor(1) * expfactor(-3),
        expfactor(2) * expfactor(-3),
    ),
    "Q2'": RatFn(
        expfactor(-6) * expfactor(-1) * expfactor(1) * expfactor(-3),
        expfactor(-2) * expfactor(1),
    ),
    "Q3": RatFn(
        expfactor(-6) * expfactor(-1) * expfactor(1) * expfactor(-3),
        expfactor(-2) * expfactor(1),
    ),
    "Q3'": RatFn(
        expfactor(-6) * expfactor(1) * expfactor(-1) * expfactor(-3),
        expfactor(2) * expfactor(-3),
    ),
    "Q4": RatFn(expfactor(-6) * expfactor(-2)),
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(results: list[CheckResult], name: str, fn) -> None:
    try:
        detail = fn()
        results.append(CheckResult(name, True, detail or ""))
    except Exception as exc:  # a failed check must report, not crash the run
        results.append(CheckResult(name, False, str(exc)))


def _root_counts() -> str:
    expected = {("A", n): n * (n + 1) // 2 for n in range(1, 9)}
    expected.update({("D", 4): 12, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120})
    for (kind, rank), want in sorted(expected.items()):
        got = len(enumerate_positive_roots(build_diagram(kind, rank)))
        assert got == want, f"{kind}{rank}: {got} roots, expected {want}"
    return f"{len(expected)} diagrams"


def _closure_equals_bruteforce() -> str:
    kinds = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)]
    kinds += [("E", 6), ("E", 7), ("E", 8)]
    for kind, rank in kinds:
        d = build_diagram(kind, rank)
        assert enumerate_positive_roots(d) == enumerate_positive_roots_bruteforce(d), f"{kind}{rank}"
    return f"{len(kinds)} diagrams"


def _highest_root() -> str:
    m = catalog.e8_a5_marking()
    h = highest_root(m.diagram)
    assert h == (2, 3, 4, 5, 6, 4, 2, 3), f"highest root {h}"
    assert project(h, m) == (3, 5, 4, 3)
    return str(h)


def _table_statistics() -> str:
    m = catalog.e8_a5_marking()
    table = bps_table(m)
    assert len(table) == 36, f"{len(table)} classes"
    mapped = sum(r.fiber_count for r in table)
    dropped = len(enumerate_positive_roots(m.diagram)) - mapped
    assert mapped == 116 and dropped == 4, f"{mapped} mapped, {dropped} dropped"
    groups = {}
    for r in table:
        roots, classes = groups.get(r.invariant, (0, 0))
        groups[r.invariant] = (roots + r.fiber_count, classes + 1)
    for roots, classes, inv in TABLE_GROUPS:
        assert groups.get(inv) == (roots, classes), f"group n={inv}: {groups.get(inv)}"
    return "36 classes, 116 roots, 4 dropped"


def _lift_validity() -> str:
    m = catalog.e8_a5_marking()
    for rec in bps_table(m):
        lft = lift(rec.cls, m)
        assert lft.self_pairing == -2, f"{rec.cls}: square {lft.self_pairing}"
        assert all(d in (0, -1) for d in lft.delta), f"{rec.cls}: delta {lft.delta}"
    top = lift((3, 5, 4, 3), m)
    blacks = tuple(top.full[b] for b in m.black_order)
    assert blacks == (2, 4, 6, 2), f"black coefficients {blacks}"
    return "36 lifts, longest root gives (2, 4, 6, 2)"


def _nonroot_classes_scan() -> str:
    m = catalog.e8_a5_marking()
    image = {rec.cls for rec in bps_table(m)}
    seen = 0
    for cls in product(range(7), repeat=4):
        if not any(cls) or cls in image:
            continue
        sq = lift(cls, m).self_pairing
        assert sq <= -4, f"{cls}: square {sq}"
        seen += 1
    return f"{seen} non-root classes all have square <= -4"


def _descriptor_lints() -> str:
    m, g = catalog.load_case("e8-a5")
    warnings = validate_descriptor(g, m)
    assert not warnings, "; ".join(warnings)
    return "hard checks pass, no warnings"


def _golden_intermediates() -> str:
    m, g = catalog.load_case("e8-a5")
    top = lift((3, 5, 4, 3), m)
    count = 0
    for q in g.s_points:
        got = point_contribution(top, q, g, m)
        assert got == GOLDEN_SUMMANDS[q.name], f"summand at {q.name}"
        count += 1
    for p in g.y_points:
        ch = chern_character_at(p, top, g, m)
        assert ch == RatFn(GOLDEN_CH[p.name]), f"character at {p.name}"
        contrib = ch.dual() * ch / RatFn(_prefactor(g, p.name))
        assert contrib == RatFn(GOLDEN_CONTRIBUTIONS[p.name]), f"contribution of {p.name}"
        count += 2
    dual = chern_character_at(g.y_point("P1"), top, g, m).dual()
    assert dual == RatFn(LaurentPoly({0: 1, 2: -1, 6: -1, 7: 1, 10: -1, 11: 1}))
    return f"{count + 1} golden values reproduced"


def _prefactor(g: GeometryDescriptor, name: str) -> LaurentPoly:
    out = LaurentPoly.one()
    for w in g.y_point(name).weights:
        out = out * expfactor(-w)
    return out


def _reference_totals() -> str:
    m, g = catalog.load_case("e8-a5")
    for cls, total, _, _, _ in REFERENCE_CLASSES:
        chi = total_chi(lift(cls, m), g, m)
        assert chi == VirtualCharacter(total), f"{cls}: chi = {chi}"
    return "4 character totals"


def _reference_euler_rows() -> str:
    m, g = catalog.load_case("e8-a5")
    for cls, _, row2, row1, n in REFERENCE_CLASSES:
        dec = ext_decompose(total_chi(lift(cls, m), g, m), serre_weight=-g.canonical_weight)
        e2, e1 = euler_class(dec.ext2), euler_class(dec.ext1)
        assert (e2.scalar, e2.degree) == row2, f"{cls}: e(ext2) = {e2}"
        assert (e1.scalar, e1.degree) == row1, f"{cls}: e(ext1) = {e1}"
        assert Fraction(e2.scalar, e1.scalar) == n, f"{cls}: n = {e2.scalar / e1.scalar}"
    return "4 Euler-class rows"


def _cross_pipeline_reference() -> str:
    m, g = catalog.load_case("e8-a5")
    fibers = {rec.cls: rec.invariant for rec in bps_table(m)}
    for cls, _, _, _, n in REFERENCE_CLASSES:
        loc = bps_from_localization(cls, m, g)
        assert loc == fibers[cls] == n, f"{cls}: localization {loc}, folding {fibers[cls]}"
    return "4 classes agree"


def _totals_unit_ends() -> str:
    m, g = catalog.load_case("e8-a5")
    for cls, _, _, _, _ in REFERENCE_CLASSES:
        chi = total_chi(lift(cls, m), g, m)
        assert chi.evaluate(Fraction(1)) == 0, f"{cls}: chi(1) != 0"
        assert chi.coefficient(0) == 1 and chi.coefficient(3) == -1, f"{cls}: ends of {chi}"
    return "4 totals vanish at mu=1 with coefficients +1/-1 at weights 0/3"


def _cross_pipeline_full() -> str:
    m, g = catalog.load_case("e8-a5")
    for rec in bps_table(m):
        loc = bps_from_localization(rec.cls, m, g)
        assert loc == rec.invariant, f"{rec.cls}: localization {loc}, folding {rec.invariant}"
    return "36 classes agree"


def _blackening_unique() -> str:
    m = catalog.e8_a5_marking()
    d = m.diagram
    roots = enumerate_positive_roots(d)
    h = highest_root(d)
    target = sorted((3, 5, 4, 3))
    survivors = []
    for black in combinations(range(d.rank), 4):
        blackset = set(black)
        if any(i in blackset and j in blackset for i, j in d.edges):
            continue
        white = [i for i in range(d.rank) if i not in blackset]
        if sorted(h[i] for i in white) != target:
            continue
        dropped = sum(1 for r in roots if all(r[i] == 0 for i in white))
        if dropped != 4:
            continue
        survivors.append(blackset)
    assert survivors == [set(m.black)], f"survivors {survivors}"
    return "unique among 70 subsets"


def run_checks(case: str = "e8-a5", quick: bool = False) -> list[CheckResult]:
    if case not in catalog.CASES:
        raise ValueError(f"unknown case {case!r}; known cases: {', '.join(sorted(catalog.CASES))}")
    results: list[CheckResult] = []
    _check(results, "fixed-point data passes structural lints", _descriptor_lints)
    _check(results, "golden fixed-point intermediates reproduced", _golden_intermediates)
    _check(results, "character totals for the four reference classes", _reference_totals)
    _check(results, "Euler-class rows and invariants for the reference classes", _reference_euler_rows)
    _check(results, "folding and localization agree on the reference classes", _cross_pipeline_reference)
    _check(results, "totals vanish at mu=1 with unit ends", _totals_unit_ends)
    if quick:
        return results
    _check(results, "positive-root counts match the closed forms", _root_counts)
    _check(results, "closure enumeration equals the brute-force scan", _closure_equals_bruteforce)
    _check(results, "highest root and its white part", _highest_root)
    _check(results, "folded table statistics", _table_statistics)
    _check(results, "lift validity across the table image", _lift_validity)
    _check(results, "square of the lift rejects non-root classes", _nonroot_classes_scan)
    _check(results, "folding and localization agree on every table class", _cross_pipeline_full)
    _check(results, "the blackening is the unique valid one", _blackening_unique)
    return results
