"""Killing vector fields of flat spaces and the matrix groups they generate.

The central map takes a Lie-algebra matrix ``V`` to the vector field
``d/dt exp(tV) x |_{t=0}`` it induces; :func:`extract_generator` inverts it
for Killing fields of Euclidean space and Minkowski spacetime.
"""

from .bridge import (
    GeneratorMatrix,
    NotKillingError,
    boost_generator,
    extract_generator,
    generator_from_label,
    induce_field,
    isometry_basis,
    lift_generator,
    lorentz_rotation_generator,
    poincare_translation_generator,
    rotation_generator,
    translation_generator,
)
from .flow import FlowReport, flow_compare, flow_compare_many, integrate_flow
from .group_exp import (
    GroupElement,
    GroupInvariantError,
    apply,
    compose,
    expm,
    expm_closed,
    invert,
    preserves_metric,
    se_compose_parts,
    se_decompose,
)
from .killing_fields import (
    AffineVectorField,
    cyclic_rotation,
    enumerate_killing_basis,
    evaluate_field,
    field_bracket,
    is_killing,
    killing_residual,
)
from .lie_algebra import (
    ClosureError,
    StructureConstants,
    matrix_bracket,
    structure_constants,
    verify_semidirect_split,
)
from .metric_space import (
    FlatMetric,
    Point,
    Signature,
    euclidean,
    inner,
    lift_point,
    make_metric,
    minkowski,
    unlift_point,
)

__version__ = "0.1.0"
