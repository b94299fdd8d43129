"""Exact genus-0 BPS invariants of ADE resolutions.

Two independent pipelines over the same marked Dynkin diagram: fold the
positive roots onto curve classes and count fibers, or restrict to the
torus-fixed points and take the ratio of equivariant Euler classes.
Both are exact; on the built-in E8 case they agree class by class.
"""

from .catalog import e8_a5_descriptor, e8_a5_marking, load_case
from .folding import (
    BPSRecord,
    CurveClass,
    LiftedDivisor,
    Marking,
    bps_table,
    corresponds_to_root,
    divisor_labels,
    euler_characteristic,
    lift,
    parse_marking,
    project,
)
from .localize import (
    DescriptorError,
    ExtDecomposition,
    GeometryDescriptor,
    Incidence,
    SCurve,
    SPoint,
    YPoint,
    bps_from_localization,
    chern_character_at,
    curve_contribution,
    ext_decompose,
    format_descriptor,
    line_bundle_on_curve,
    line_bundle_weight_at_point,
    parse_descriptor,
    point_contribution,
    total_chi,
    validate_descriptor,
)
from .rootsys import (
    DynkinDiagram,
    RootVector,
    build_diagram,
    cartan_pairing,
    enumerate_positive_roots,
    enumerate_positive_roots_bruteforce,
    highest_root,
    is_positive_root,
)
from .symring import (
    EulerClass,
    LaurentPoly,
    PointClassElem,
    RatFn,
    VirtualCharacter,
    dualize,
    euler_class,
    expfactor,
    integrate_point_class,
    to_polynomial,
)

__version__ = "0.1.0"
