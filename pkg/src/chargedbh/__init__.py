"""Charged black-hole initial data, star-shaped inverse mean curvature flow,
and Penrose-type inequality certificates at desk scale."""

from .exact_rnt import (
    ExtremalParameterError,
    LapseDomainError,
    NakedSingularityError,
    RntParams,
    area_radius_power,
    electric_field_radial,
    embed_profile,
    embedding_slope,
    horizon_area,
    horizon_radii,
    horizon_radius_power,
    lapse,
    mass_coefficient,
    mass_from_horizon,
    rnt_scalar_curvature,
    unit_sphere_area,
)
from .graph_data import (
    DecayError,
    ExtrapolationError,
    MassBreakdown,
    RadialGraphData,
    TruncationWarning,
    adm_flux,
    adm_mass_limit,
    check_decay,
    energy_condition_residual,
    flat_graph_data,
    graph_scalar_curvature,
    induced_metric_factor,
    load_graph_data,
    mass_via_formula,
    perturbed_rnt_graph_data,
    rnt_graph_data,
    table_graph_data,
)
from .imcf import (
    FlowBreakdownError,
    FlowRun,
    FlowState,
    FluxChainResult,
    FluxChainSample,
    flux_chain,
    imcf_step,
    run_flow,
)
from .inequalities import (
    CERTIFICATE_NAMES,
    InequalityReport,
    af_scalar_constant,
    penrose_report,
    theorem_certificates,
)
from .surface_geometry import (
    CurvatureData,
    DegenerateMetricError,
    SphereGrid,
    StarShapedSurface,
    area,
    axisymmetric_grid,
    charge_flux,
    curvature,
    full_grid,
    load_surface,
    make_grid,
    make_sphere,
    make_spheroid,
    newton_maclaurin_margin,
    radial_inverse_power_field,
    random_convex_surface,
    random_star_surface,
    save_surface,
    total_intrinsic_curvature,
    total_mean_curvature,
    yamabe_quotients,
)

__version__ = "0.1.0"
