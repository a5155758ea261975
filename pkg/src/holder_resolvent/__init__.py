"""Duality maps, Bregman distances and resolvents in l_p^n, with sampled verification
of the Hoelder-type bounds for mappings of firmly nonexpansive type."""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError, InputError, RegimeError, SolverError
from .geometry import (DualVector, LpSpace, PrimalVector, bregman_phi, dual_norm, duality_map,
                       inverse_duality_map, norm, pairing)
from .sampling import SamplerConfig
from .operators import (Constant, GradQuadratic, LinearPSD, OperatorSpec, ScaledDuality,
                        SubgradL1, Sum, Zero, default_catalog, evaluate, spec_from_dict)
from .resolvent import (ResolventProblem, ResolventSolution, fnt_margin, resolve_batch,
                        solve_resolvent)
from .reports import InequalityReport
from .checks import (check_coarse_bound, check_duality_map, check_fnt, check_holder_T,
                     check_keylem1, check_normalization_inequality, check_phi_identity,
                     check_strong_monotonicity, check_support_inequality, check_theorem_main1,
                     estimate_mu)
from .fitting import HolderFit, fit_holder_exponent
from .search import adversarial_search
from .config import RunConfig, parse_config, serialize_config
