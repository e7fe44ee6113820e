"""Wigner functions on the discrete phase space GF(p^n) x GF(p^n)."""

from .errors import *  # noqa: F401,F403
from .field import (
    Basis,
    FieldElement,
    FieldSpec,
    Ordering,
    basis_catalog,
    character,
    combine,
    default_ordering,
    dual_basis,
    expand,
    make_basis,
    make_field,
    normal_basis,
    ordering,
    polynomial_basis,
    primitive_element,
    self_dual_basis,
    trace,
)
from .geometry import Line, PhasePoint, Striation, intersect, sloped_line, striation_table, vertical_line
from .nonunique import (
    alternate_wigner,
    constant_shift_form,
    count_by_conditions,
    count_distinct_wigner,
    linear_shift_form,
)
from .operators import (
    Ket,
    Operator,
    basis_ket,
    build_displacement,
    build_fourier,
    build_parity,
    build_X,
    build_Z,
    conjugate_ket,
    phase_phi,
)
from .phase import UnitPhase
from .phase_space import (
    KernelSet,
    MubFamily,
    WignerGrid,
    build_kernel,
    build_mubs,
    check_kernel,
    covariant_transform_check,
    inverse_map,
    line_indicator,
    verify_line_identity,
    wigner,
    wigner_map,
)
from .rotations import (
    RotationSet,
    build_S,
    build_U,
    build_V,
    canonical_rotation_set,
    cocycle,
    shifted_rotation_set,
)
from .tensor_map import TensorState, factorize_Z, free_hamiltonian, from_physical, product_check, to_physical
from .tomography import Tomogram, fidelity, reconstruct, simulate_counts, tomogram_of

__version__ = "0.1.0"
