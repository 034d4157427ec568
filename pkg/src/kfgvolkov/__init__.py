"""Klein-Fock-Gordon fundamental solutions, free and in a plane-wave field."""
from .geometry import (
    IntervalClassification,
    PhysicalConstants,
    Region,
    SpacetimePoint,
    classify,
    to_lightcone,
)
from .goursat import GoursatGrid, convergence_study, riemann_residual, solve_goursat
from .potentials import (
    CircularPolarized,
    Constant,
    FieldAverages,
    LinearPolarized,
    PulseEnvelope,
    Tabulated,
    Zero,
    average_over,
    effective_k0,
    phase_factor,
)
from .propagators import (
    ConeError,
    PropagatorValue,
    delta_1_free,
    delta_c_free,
    delta_s_free,
    psi_minus,
    psi_plus,
    riemann_function,
    schwinger_propagator,
    volkov_psi,
)
from .quadrature import (
    QuadratureResult,
    macdonald_superposition,
    proper_time_numeric,
    psi_minus_numeric,
    psi_plus_numeric,
    sonin_numeric,
)

__version__ = "0.1.0"
