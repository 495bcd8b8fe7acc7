"""Stratified sampling of the unit square by diagonal strips, with exact,
quasi-Monte Carlo, and Monte Carlo estimates of the expected squared L2 star
discrepancy."""

from .asymptotics import (
    ApproximantOrderReport,
    ComponentSums,
    SumCheckReport,
    component_sums,
    cubic_component_closed_form,
    estimate_limit_offset,
    fit_error_order,
    interior_strip_sum,
    interior_sum_check,
    paired_strip_integral,
    power_sqrt_order_report,
    power_sqrt_sum,
    power_sqrt_sum_approx,
    power_sum,
    power_sum_approx,
)
from .estimators import (
    DiscrepancyEstimate,
    Method,
    expected_l2_sq_mc,
    expected_l2_sq_qmc,
    jittered_baseline,
    random_baseline,
    ratio_to_random,
    vertical_baseline,
)
from .exactform import (
    StripIntegralTable,
    expected_l2_sq_asymptotic,
    expected_l2_sq_exact,
    strip_integral_first,
    strip_integral_last,
    strip_integral_lower,
    strip_integral_table,
    strip_integral_upper,
)
from .lowdisc import (
    HaltonConfig,
    PointSet,
    brute_force_l2_sq,
    halton,
    l2_discrepancy_sq,
    l2_discrepancy_sq_batch,
    radical_inverse,
)
from .partition import (
    GeneratingSet,
    Point2,
    StratifiedSample,
    cell_area,
    cell_of,
    generating_set,
    sample_jittered,
    sample_jittered_batch,
    sample_stratified,
    sample_stratified_batch,
    sample_vertical,
    sample_vertical_batch,
)
from .qgeometry import (
    HalfPlane,
    OverlapProfile,
    VertexCase,
    classify_vertices,
    intersection_area,
    intersection_area_grid,
    mean_square_overlap,
    overlap_fraction,
    overlap_fraction_grid,
    overlap_vector,
    signed_offset,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximantOrderReport",
    "ComponentSums",
    "DiscrepancyEstimate",
    "GeneratingSet",
    "HalfPlane",
    "HaltonConfig",
    "Method",
    "OverlapProfile",
    "Point2",
    "PointSet",
    "StratifiedSample",
    "StripIntegralTable",
    "SumCheckReport",
    "VertexCase",
    "brute_force_l2_sq",
    "cell_area",
    "cell_of",
    "classify_vertices",
    "component_sums",
    "cubic_component_closed_form",
    "estimate_limit_offset",
    "expected_l2_sq_asymptotic",
    "expected_l2_sq_exact",
    "expected_l2_sq_mc",
    "expected_l2_sq_qmc",
    "fit_error_order",
    "generating_set",
    "halton",
    "interior_strip_sum",
    "interior_sum_check",
    "intersection_area",
    "intersection_area_grid",
    "jittered_baseline",
    "l2_discrepancy_sq",
    "l2_discrepancy_sq_batch",
    "mean_square_overlap",
    "overlap_fraction",
    "overlap_fraction_grid",
    "overlap_vector",
    "paired_strip_integral",
    "power_sqrt_order_report",
    "power_sqrt_sum",
    "power_sqrt_sum_approx",
    "power_sum",
    "power_sum_approx",
    "radical_inverse",
    "random_baseline",
    "ratio_to_random",
    "sample_jittered",
    "sample_jittered_batch",
    "sample_stratified",
    "sample_stratified_batch",
    "sample_vertical",
    "sample_vertical_batch",
    "signed_offset",
    "strip_integral_first",
    "strip_integral_last",
    "strip_integral_lower",
    "strip_integral_table",
    "strip_integral_upper",
    "vertical_baseline",
]
