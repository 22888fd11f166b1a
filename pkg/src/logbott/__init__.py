"""Exact verification of logarithmic Bott residue localization.

Characteristic numbers of a logarithmic tangent bundle are computed
globally in an explicit Chow-ring presentation and locally as residue
contributions of the zero components of a logarithmic vector field; the
two sides are compared exactly over the rationals.  A chart-level
analyzer extracts Bott matrices of fields in SNC coordinates, and a
numeric module validates polytube residues at isolated points.
"""

from .catalog import ExampleEntry, build_example, check_entry, EXAMPLE_IDS
from .charts import (
    ComponentChart,
    LogChartField,
    NondegeneracyVerdict,
    bott_matrix,
    check_nondegenerate,
    log_eigenvalues,
    zero_ideal,
)
from .chern import (
    BundleData,
    InvariantPolySpec,
    ShiftedChernPolynomial,
    block_product,
    bundle_from_total,
    equivariant_det,
    evaluate_phi,
    line_bundle,
    log_chern,
    shift_block,
    total_chern,
    trivial_bundle,
    whitney_product,
)
from .errors import (
    ConsistencyError,
    ConstraintError,
    IncompleteTableError,
    LogBottError,
    NondegeneracyError,
    NonUnitError,
    PresentationError,
    RingMismatchError,
    TubeError,
)
from .localization import (
    FixedComponent,
    GlobalSide,
    VerificationReport,
    global_value,
    local_contribution,
    localization_sum,
    residue_form,
    verify,
)
from .poly import Poly, as_fraction
from .residues import (
    LocalMap,
    QuadratureConfig,
    polytube_residue,
    residue_with_extrapolation,
    richardson_limit,
    transformation_check,
    tube_point,
)
from .ring import (
    GradedClass,
    RingPresentation,
    homogeneous_part,
    integrate,
    invert_unit,
    normal_form,
)

__version__ = "0.1.0"
