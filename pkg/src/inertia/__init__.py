"""Exact inertia-operator calculus.

Finite-group machinery on Cayley tables, the Grothendieck group of finite
groupoids with its inertia operators and eigenprojections, exact arithmetic
in Q[q] and Q(q) with the eigenvalue-family membership tests, motivic
classes of quasi-split tori by equivariant flag inclusion-exclusion, and
exact eigen-decomposition of the built-in invariant-submodule fixtures.
"""

from .errors import (
    FlagCapExceededError,
    InertiaError,
    InvalidCayleyTableError,
    NotDiagonalizableError,
    OrderCapExceededError,
    PartialFixtureError,
    UnknownClassError,
)
from .fixtures import FIXTURE_NAMES, fixture, fixture_json, fixture_notes
from .groupoids import (
    GroupoidClass,
    StirlingTable,
    class_of,
    element_from_json,
    element_to_json,
    filtration_degree,
    format_element,
    inertia,
    inertia_r,
    iterated_inertia,
    parse_element,
    product,
    projection,
    stirling_first_kind,
)
from .groups import (
    CommutingTupleOrbit,
    ConjugacyClass,
    FiniteGroup,
    GroupKey,
    GroupRegistry,
    Subgroup,
    abelian_group,
    abelian_invariant_factors,
    are_isomorphic,
    canonical_key,
    cyclic_group,
    default_registry,
    dihedral_group,
    direct_product,
    group_from_cayley_table,
    group_from_generators,
    group_from_permutation_text,
    quaternion_group,
    symmetric_group,
    trivial_group,
)
from .linalg import (
    BasisLabel,
    EigenDecomposition,
    FiltrationRank,
    LabeledVector,
    OperatorMatrix,
    eigen_components,
    eigen_decompose,
    filtration_order,
    is_triangular,
    matrix_from_json,
    matrix_to_json,
)
from .perms import Permutation, parse_generators, parse_permutation
from .qfield import (
    Partition,
    Polynomial,
    RationalFunction,
    SpectrumDecomposition,
    format_polynomial,
    parse_polynomial,
    parse_rational_function,
    partition_polynomial,
    spectrum_decompose,
)
from .torus import (
    CoverTerm,
    Flag,
    FlagOrbit,
    MotiveExpr,
    PermAction,
    enumerate_flags,
    flag_orbits,
    orbit_partition,
    torus_motive,
)

__version__ = "0.1.0"
