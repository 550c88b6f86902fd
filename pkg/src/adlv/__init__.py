"""Dimensions of affine Deligne-Lusztig varieties for Res_{k'/k} GL_h via extended EL-charts."""

from .charts import (
    ELChart,
    ExtendedELChart,
    PhiComponent,
    adapted_family,
    chart_from_type,
    cyclic_phi,
    hodge_point,
    is_cyclic,
    normalize,
    type_of,
    v_dim,
    v_set,
    v_set_bruteforce,
    validate,
)
from .components import (
    ConjectureReport,
    component_count,
    conjecture_report,
    lemma7_checks,
    psi_chain,
    s1_s2_decomposition,
    tilde_mu,
)
from .coweights import (
    GCocharacter,
    IndexedInt,
    SuperbasicDatum,
    dominance_leq,
    dominant_sort,
    embed,
    is_minuscule,
    newton_point,
    orbit_sum,
)
from .deformation import canonical_path, deformation_frame, hodge_chain_check, phi_index, step_delta
from .enumeration import dimension, enumerate_charts, top_charts
from .errors import (
    AdlvError,
    InternalDisagreement,
    InvalidInput,
    KappaMismatch,
    MazurFailure,
    NotSuperbasic,
)
from .levi import (
    GeneralClassDatum,
    LeviPartition,
    d_value,
    general_dim,
    mazur_nonempty,
    newton_levi,
    recursion_check,
    sigma_m_dom,
    sigma_m_max,
    sigma_mu_set,
)
from .polygons import (
    bracket,
    dim_formula,
    half_defect,
    lattice_points,
    lattice_points_between,
    length_to_dom,
    pairing,
    pairing_g,
    rho_pairing,
    superbasic_dim_formula,
    transfer_length,
    two_element_length,
)

__version__ = "0.1.0"
