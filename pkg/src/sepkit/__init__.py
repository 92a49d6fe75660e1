"""sepkit: interval contractors, separators, Minkowski set operations and
a subdivision paver, with guaranteed sonar simulation and set-membership
localization on raster maps."""

from .interval import (
    EMPTY, WHOLE, Box, Interval,
    parse_box, parse_interval, format_box, format_interval,
)
from .contractor import (
    ConstraintSpec, Contractor, CtcEmpty, CtcFixpoint, CtcIdentity,
    const, ctc_compose, ctc_intersect, ctc_union_hull, fwd_bwd, sqr, sqrt, var,
)
from .separator import (
    AffineTransform, Separator,
    sep_cartesian_product, sep_complement, sep_empty, sep_exist_project,
    sep_from_constraint, sep_full, sep_intersect, sep_transform, sep_union,
)
from .raster import OccupancyMap, RasterContractor, ctc_raster, load_map
from .geometry import (
    PieSpec, pie_bounding_box,
    sep_disk, sep_halfplane, sep_halfplane_union_map, sep_pie,
    sep_raster_map, sep_rect, sep_ring, sep_triangle,
)
from .minkowski import (
    SCALING, TRANSLATION, SetToSetProblem,
    auto_a_domain, sep_minkowski_diff, sep_minkowski_sum, sep_set_to_set,
)
from .paver import (
    BOUNDARY, INSIDE, OUTSIDE, PaverConfig, SubPaving, pave, subpaving_stats,
)
from .svgplot import svg_string, write_svg
from .localization import (
    PoseEstimate, RangeReading, SonarMeasurement,
    build_pose_separator, load_measurements, localize, save_measurements,
    simulate_range,
)

__version__ = "0.1.0"
