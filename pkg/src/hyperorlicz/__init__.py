"""Discrete hypergroups, Orlicz norms, weighted translation operators, and
horizon-bounded empirical checks of their dynamics."""

from .errors import (
    NonFiniteIntegrand,
    NotCentral,
    PreconditionFailed,
    ScenarioError,
    WindowOverflow,
)
from .functions import (
    ZERO_FUNCTION,
    SparseFunction,
    convolve_fn_measure,
    indicator,
    integrate_haar,
    measure_of_set,
    sup_on_set,
    translate,
)
from .hypergroups import (
    AxiomViolation,
    CenterReport,
    HypergroupModel,
    SparseMeasure,
    dunkl_ramirez,
    integer_group,
    point_mass,
    su2,
    table_hypergroup,
)
from .operators import (
    DEFAULT_CONVENTION,
    CenterPowers,
    EtaSequence,
    ProductConvention,
    TableEta,
    Weight,
    apply_right_inverse,
    apply_single_step,
    apply_weighted_translation,
    center_powers,
    constant_weight,
    eta_from_table,
    geometric_weight,
    hereditary_weight_pair,
    iterate_single_step,
    shifted_weight_product,
    step_weight,
    table_weight,
    translated_weight,
    weight_product,
)
from .orlicz import (
    Delta2Report,
    L1EmbeddingReport,
    NormResult,
    YoungFunction,
    complementary_eval,
    cosh_minus_one,
    delta2_check,
    exp_minus_linear,
    l1_embedding_check,
    luxemburg_norm,
    orlicz_norm,
    phi_p,
    tabulated_young,
    young_inverse,
)
from .dynamics import (
    AperiodicityVerdict,
    CenterAperiodicityReport,
    CriterionReport,
    CriterionRow,
    OrbitResult,
    WitnessReport,
    WitnessRow,
    aperiodic_center_check,
    aperiodic_sequence_check,
    build_transitivity_witness,
    orbit_density_probe,
    periodic_point_check,
    probe_center_conditions,
    probe_hereditary,
    probe_series_necessary,
    probe_sup_necessary,
    strongly_aperiodic_check,
)
from .scenario import RunSettings, Scenario, load_scenario, parse_scenario

__version__ = "0.1.0"

__all__ = [
    "AperiodicityVerdict",
    "AxiomViolation",
    "CenterAperiodicityReport",
    "CenterPowers",
    "CenterReport",
    "CriterionReport",
    "CriterionRow",
    "DEFAULT_CONVENTION",
    "Delta2Report",
    "EtaSequence",
    "HypergroupModel",
    "L1EmbeddingReport",
    "NonFiniteIntegrand",
    "NormResult",
    "NotCentral",
    "OrbitResult",
    "PreconditionFailed",
    "ProductConvention",
    "RunSettings",
    "Scenario",
    "ScenarioError",
    "SparseFunction",
    "SparseMeasure",
    "TableEta",
    "Weight",
    "WindowOverflow",
    "WitnessReport",
    "WitnessRow",
    "YoungFunction",
    "ZERO_FUNCTION",
    "aperiodic_center_check",
    "aperiodic_sequence_check",
    "apply_right_inverse",
    "apply_single_step",
    "apply_weighted_translation",
    "build_transitivity_witness",
    "center_powers",
    "complementary_eval",
    "constant_weight",
    "convolve_fn_measure",
    "cosh_minus_one",
    "delta2_check",
    "dunkl_ramirez",
    "eta_from_table",
    "exp_minus_linear",
    "geometric_weight",
    "hereditary_weight_pair",
    "indicator",
    "integer_group",
    "integrate_haar",
    "iterate_single_step",
    "l1_embedding_check",
    "load_scenario",
    "luxemburg_norm",
    "measure_of_set",
    "orbit_density_probe",
    "orlicz_norm",
    "parse_scenario",
    "periodic_point_check",
    "phi_p",
    "point_mass",
    "probe_center_conditions",
    "probe_hereditary",
    "probe_series_necessary",
    "probe_sup_necessary",
    "shifted_weight_product",
    "step_weight",
    "strongly_aperiodic_check",
    "su2",
    "sup_on_set",
    "table_hypergroup",
    "table_weight",
    "tabulated_young",
    "translate",
    "translated_weight",
    "weight_product",
    "young_inverse",
]
