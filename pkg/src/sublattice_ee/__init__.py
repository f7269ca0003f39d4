"""Exact entanglement entropy of periodic sublattices of a lattice scalar field.

A free scalar of mass m on an N-site ring with spacing eps, in its vacuum or a
thermal state. Keeping every p-th site gives a subsystem of N_A = N/p sites;
its symplectic spectrum follows from two residue-class sums over the modes,
so the entropy costs O(N). A dense-matrix oracle checks the closed forms.
"""

__version__ = "0.1.0"

from .errors import (
    DivergentEntropyError,
    EigensolverStalled,
    InvalidCorrelatorError,
    InvalidInput,
    NumericalFailure,
    QuadratureError,
    SpectrumTooFlatError,
    SublatticeError,
    UnphysicalSpectrumError,
    UnstableCouplingError,
)
from .kernels import BACKEND
from .model import (
    VACUUM,
    CouplingMatrix,
    LatticeSpec,
    ModeSpectrum,
    dispersion,
    dispersion_from_coupling,
    occupation,
    thermal_occupations,
)
from .circulant import CirculantMatrix, circulant_eigenvalues, sublattice_correlators
from .symplectic import (
    SymplecticSpectrum,
    spectrum,
    spectrum_general,
    spectrum_thermal,
    spectrum_two_oscillators,
    spectrum_vacuum,
)
from .entropy import (
    EntanglementResult,
    EntanglementSpectrum,
    entanglement_spectrum,
    entropy_from_spectrum,
    entropy_xi_form,
    first_law_check,
    lam_from_energy,
    mode_entropy,
    modular_energies,
)
from .oracle import (
    dense_correlators,
    entropy_of_sites,
    periodic_sites,
    symmetric_eigh,
    symplectic_spectrum_dense,
)
from .asymptotics import (
    ContinuumSpec,
    continuum_entropy,
    continuum_lambda0,
    elliptic_E,
    elliptic_K,
    reference_expansions,
    thermal_continuum_lambda0,
    uv_entropy_density_p2,
)
from .analysis import (
    SweepResult,
    cross_validate,
    extensivity_profile,
    figure_data,
    mutual_information_antipodal,
    parameter_sweep,
)
