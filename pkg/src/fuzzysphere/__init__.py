"""Fuzzy sphere spectral triple, differential calculus and scalar field."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    AdjointEigenbasis,
    FuzzySphere,
    adjoint_eigenbasis,
    clock_shift,
    fuzzy_sphere,
    su2_generators,
)
from .exceptions import (  # noqa: E402
    ContractViolationError,
    DegenerateSpectrumError,
    InternalConsistencyError,
    UnstableRankError,
)
from .forms import (  # noqa: E402
    JunkRanks,
    RepresentedForm,
    UniversalForm,
    derive,
    exterior_derivative,
    junk_quotient_rank,
    represent,
)
from .scalar import (  # noqa: E402
    ActionReport,
    ScalarField,
    integrate,
    integration_correspondence,
    laplacian_spectrum,
    mode_decompose,
    scalar_action,
)
from .triple import (  # noqa: E402
    SpectrumReport,
    chirality_index,
    chirality_left,
    chirality_opposite,
    dirac_operator,
    dirac_operator_adjoint_form,
    dirac_operator_left,
    dirac_spectrum,
    hilbert_trace,
    lift_left,
    lift_right,
    zeromode_projector,
)
from .estimators import FuzzyDirac, HarmonicTransform, ScalarAction  # noqa: E402
