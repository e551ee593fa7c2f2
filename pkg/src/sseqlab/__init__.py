"""Mod-2 Serre spectral sequence workbench.

Exact F_2 linear algebra, graded polynomial algebras, the universal
coefficient pipeline for fibre cohomology, a bounded-window spectral
sequence engine with unknown transgressive scalars, gauge-group
reports over the four-sphere, and a bounded-degree hit-problem solver.
"""

from .errors import (
    ConfigError,
    IncompleteTableError,
    InvariantBreach,
    SseqlabError,
    UsageError,
    ValidationError,
)
from .f2 import F2Matrix, F2Vector, image_basis, kernel_basis, quotient_dim, rank, solve
from .gauge import (
    DEFAULT_EPSILON_RULE,
    EpsilonRule,
    GaugeBranch,
    GaugeReport,
    epsilon_class,
    g2_fibration_spec,
    g2_homotopy_table,
    gauge_report,
    periodicity_check,
)
from .graded import (
    Monomial,
    PolyAlgebraSpec,
    Polynomial,
    basis_in_degree,
    multiply,
    poincare_dims,
)
from .homotopy import (
    DimEntry,
    FGAbelianGroup,
    GradedDims,
    HomotopyTable,
    TableEntry,
    connectivity,
    ext1_to_f2,
    fibre_truncation_dims,
    hom_to_f2,
    hurewicz_homology,
    loopspace_shift,
    uct_cohomology_dim,
)
from .specseq import (
    BigradedBasis,
    DifferentialAssignment,
    FibrationSpec,
    Page,
    UnknownScalar,
    admissible_differentials,
    build_e2,
    leibniz_extend,
    resolve_assignment,
    run_to_einfty,
    sweep_unknowns,
    total_dims,
    turn_page,
)
from .steenrod import (
    HitReport,
    SteenrodTable,
    hit_quotient,
    sq,
    suggest_g2_table,
    table_from_entries,
    validate_table,
)

__version__ = "0.1.0"
