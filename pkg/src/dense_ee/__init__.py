"""Energy-efficient design of dense multi-antenna cellular networks.

Closed-form SE bounds for Poisson-deployed BSs, EE maximization over pilot
reuse, density, power, antennas and UEs per cell, and a Monte Carlo engine
that checks the bounds against sampled geometries and channels.
"""

__version__ = "0.1.0"

from .params import (ASYMPTOTIC, Asymptotic, DesignPoint, FixedDensityConstraint,
                     HardwareParams, InfeasibleError, InfeasibleTarget, PropagationParams,
                     SinrTarget, Validation, db_to_linear, validate_design,
                     watts_to_energy_per_symbol)
from .se import (GeometryRealization, SeBound, asymptotic_sinr, average_sinr,
                 effective_sinr_given_geometry, feasibility_limit, interference_sums,
                 se_lower_bound, sinr_lower_bound)
from .theorems import (TheoremCoefficients, optimal_beta, optimal_cbar_given_k,
                       optimal_k_given_cbar, theorem_coefficients)
from .power import (EEBreakdown, apc, apc_shares, ase, avg_tx_power_per_ue, ee, ee_asymptotic,
                    ee_beta_star, ee_from_se, radiated_power_per_ue)
from .optimize import (ConvergenceError, Optimum, RelaxedOptimum, SolverConfig,
                       alternate_optimize, brute_force_ee_max, integer_refine,
                       optimize_asymptotic, optimize_at_density, optimize_fixed_configuration,
                       optimize_fixed_ue_density)
from .geometry import MonteCarloConfig, ResampleLimitExceeded, sample_typical_geometry, trial_rng
from .montecarlo import (Estimate, MomentEstimate, mc_average_se, mc_cross_moment,
                         mc_distance_moment, mc_moments)
from .channel import (ChannelSampleBatch, TermCheck, draw_channels, example_geometry,
                      validate_effective_sinr_terms)
from .config import ConfigError, RunConfig, config_from_dict, load_config
