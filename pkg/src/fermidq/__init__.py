"""Deformation quantization on finite fermionic (Grassmann) phase spaces.

The package builds graded Poisson and Dirac brackets, fermionic Moyal star
products, star-genvalue solutions (Wigner functions), traces and partial
traces, entanglement entropies, and the Fock-space operator cross-check, for
algebras of up to 16 anticommuting generators.  See the ``demos`` directory
for narrative walk-throughs and ``fermidq --help`` for the CLI.
"""

from .algebra import (
    AlgebraError,
    GrassmannAlgebra,
    GrassmannElement,
    Parity,
    Side,
    berezin_integral,
    derivative,
    hodge_dual,
    multiply,
    parity,
    restrict,
    substitute,
)
from .brackets import (
    BracketTensor,
    ConstraintClass,
    ConstraintSet,
    canonical_tensor,
    classify_constraints,
    constraint_matrix,
    dirac_bracket,
    impose_constraints_strongly,
    nac_tensor,
    poisson_bracket,
    quantization_form,
    time_derivative,
)
from .fock import (
    CliffordRep,
    HolomorphicPairing,
    clifford_representation,
    holomorphic_transform,
    inverse_holomorphic_transform,
    oracle_star,
    symbol_of_matrix,
    weyl_quantize,
    wigner_operator_map,
)
from .scenario import (
    ScenarioConfig,
    SweepSpec,
    hamiltonian_split,
    oscillator_hamiltonian,
    phase_space_algebra,
    reduced_theta_algebra,
    run_scenario,
    run_sweep,
)
from .spectral import (
    AlgebraOperator,
    OperatorSide,
    SpectralResolution,
    fourier_dirichlet_residuals,
    mult_operator,
    spectral_decompose,
    star_genvalue_solve,
)
from .star import (
    BracketMode,
    StarProduct,
    SymmetricForm,
    build_star_product,
    nac_form,
    star,
    star_bracket,
    star_exponential,
    star_power,
)
from .states import (
    Bipartition,
    EntropyReport,
    IndefiniteStateError,
    WignerState,
    closed_form_entanglement,
    entanglement_entropy,
    entropy_abs,
    level_scales,
    partial_trace,
    renyi_entropy,
    state_spectrum,
    trace,
)

__version__ = "0.1.0"
