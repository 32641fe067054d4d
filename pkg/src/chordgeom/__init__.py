"""Chord-tangent-centroid geometry for strictly convex plane curves.

Build a catalog curve, probe it at a point, and slice it with chords
parallel to the tangent there.  The toolkit evaluates chord length,
section and triangle areas, the three triangle centroids and their
distances to the chord line, extrapolates the small-offset limits, and
decides numerically whether the curve is a parabola.
"""

from .errors import (
    ChordGeomError,
    ConvexityError,
    CurveParseError,
    DegenerateGeometryError,
    DomainError,
    NoChordError,
    QuadratureError,
)
from .curves import (
    CATALOG_KINDS,
    CurveSpec,
    ProbeFrame,
    curvature_at,
    from_frame,
    make_curve,
    probe_frame,
    to_frame,
)
from .chords import (
    ChordSolution,
    TangentApex,
    TriangleReport,
    alpha,
    centroid_distances,
    chord_endpoints,
    chord_growth_residual,
    frame_slopes,
    max_offset,
    tangent_apex,
    tangent_feet,
    triangle_report,
)
from .sections import (
    SectionReport,
    area_derivative_residual,
    section_area,
    section_centroid,
    section_report,
    triangle_area,
)
from .asymptotics import (
    DetectionConfig,
    GridConfig,
    LimitEstimate,
    LimitSuite,
    PowerLawFit,
    ProbeFunctionals,
    TestOutcome,
    Verdict,
    classify_parabola,
    estimate_limit,
    h_grid,
    limit_suite,
    power_law_fit,
    probe_functionals,
    probe_grid,
)
from .cli import CSV_HEADER, SweepRow, parse_curve_spec, sweep_row

__version__ = "0.1.0"
