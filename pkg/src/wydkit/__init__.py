"""Numerical checks of the Wigner-Yanase-Dyson uncertainty inequality.

Modules
-------
algebra
    Block-diagonal algebras with a weighted trace, spectral decomposition
    and functional calculus.
measure
    Atomic correlation measures ``mu_ab`` and the identities they satisfy.
uncertainty
    Variance, covariance, WYD information and the two routes to the gap.
harness
    Random instances, batch verification, beta sweeps and measure dumps.
"""

from .algebra import (BlockOperator, DensityOperator, SpectralDecomposition,
                      TraceAlgebra, eigendecompose, fractional_power,
                      functional_calculus, l2_norm, trace, validate_density)
from .errors import (ConsistencyError, DomainError, InputError,
                     NotHermitianError, NotNormalizedError, NotPositiveError,
                     NumericalError, WYDError)
from .measure import (AtomicMeasure2D, build_measure, check_positivity,
                      integrate, polarized_measure, real_part_symmetry_defect,
                      rectangle_mass, wyd_pairing)
from .tolerances import Tolerances
from .uncertainty import (Atom4D, UncertaintyReport, beta_correlation,
                          beta_information, center, covariance, g_curve,
                          kernel, kosaki_gap, kosaki_gap_via_measure,
                          product_measure, schrodinger_check, variance)

__version__ = "0.1.0"
