"""Three-qubit Mermin inequality tests in a driven cavity.

Library layout:

* :mod:`mermincav.numerics` - dense complex linear algebra substrate;
* :mod:`mermincav.qubits` - register states, gates, encoding, correlations;
* :mod:`mermincav.ghzprep` - one-step GHZ preparation and its Fock oracle;
* :mod:`mermincav.spectroscopy` - dispersive spectral joint-measurement;
* :mod:`mermincav.experiment` - two-step confirmation and Q evaluation;
* :mod:`mermincav.cli` - command-line front end emitting CSV/JSON/PNG.
"""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    GridTooCoarseError,
    MerminCavError,
    MissingParametersError,
    NegativePhotonNumberError,
    NonCommensurateTimeError,
    NoScheduleFoundError,
    NotHermitianError,
    NotSymmetricSectorError,
    NotUnitaryError,
    OutOfRangeError,
    ParseError,
    SingularMatrixError,
    TruncationError,
    ZeroNormError,
)
from .experiment import (
    MerminReport,
    MerminSettings,
    TwoStepVerification,
    mermin_q,
    run_mermin,
    verify_ghz_two_step,
)
from .ghzprep import (
    EvolutionCoefficients,
    GhzSchedule,
    PrepParams,
    closed_form_propagator,
    evolution_coefficients,
    fock_evolution_oracle,
    ghz_schedule,
    prepare_ghz,
)
from .qubits import (
    BASIS_LABELS,
    JointProbabilities,
    LocalAngles,
    SpinDecomposition,
    ThreeQubitState,
    apply_single,
    basis_state,
    collective_spin,
    correlation_closed_form,
    encode_locals,
    encode_rotation,
    fidelity,
    ghz_state,
    ghz_state_phase_free,
    joint_probabilities,
    parity_correlation,
    pauli,
    spin_decomposition,
)
from .spectroscopy import (
    CavityMoments,
    DispersiveParams,
    PeakEstimate,
    QubitMoments,
    SpectrumCurve,
    ValidityReport,
    chi_shift,
    default_detuning_grid,
    dispersive_validity,
    extract_probabilities,
    lindblad_steady_oracle,
    lorentzian_mixture,
    qubit_moments,
    steady_photon_number,
    steady_state_cavity_moments,
    transmission_spectrum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
