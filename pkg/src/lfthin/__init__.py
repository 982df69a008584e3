"""Two-parameter thinning built from linear-fractional pgfs.

The pgf ``psi_{m,r}(s) = 1 - m(1-s)/(1 + r(1-s))`` of the BerG(m, r) law
defines the operator ``(m, r) . X``, the sum of ``X`` iid BerG(m, r)
variables.  The package covers the parameter semigroup, truncated pgf
arithmetic, BerG/CompNB laws, INAR(1) processes with exact stationary
marginals and tests for [M, R]-monotonicity.
"""
from .berg import (BergMoments, CompNBParams, ZMGParams, berg_moments, berg_nfold_pmf, berg_pmf,
                   berg_sample, compnb_pmf, compnb_sample, compnb_series, nb_pmf, thin_mixture,
                   zmg_to_berg)
from .catalog import CATALOG_NAMES, OperatorCatalogEntry, catalog_map
from .distributions import (BerG, Binomial, CompNB, Convolution, DescriptorError, FromPmf, NegBinom,
                            PointMass, Poisson, Uniform, parse_descriptor)
from .inar import (ConstraintViolation, InarPath, InarSpec, InnovationDecomposition,
                   build_stationary_berg, build_stationary_compnb, build_stationary_zmg,
                   conditional_moments, inar_from_parts, inma_lag, inma_simulate,
                   innovation_decompose, joint_pgf, reversibility_check, simulate,
                   stationarity_check, stationary_fixed_point_error, stationary_moments,
                   theoretical_acf, transient_moments)
from .monotone import (MonotoneParams, MonotonicityVerdict, alpha_monotone_check, binomial_thin,
                       convolution_params, exp_mixture, marginal_convolution_params,
                       marginal_Mr_check, marginal_mR_check, mr_monotone_check,
                       mr_monotone_synthesize, power_thin, q_sequence, thinned_alpha_is_MR)
from .pgf import (DEFAULT_K, ContractViolation, CriterionResult, PmfVector, TruncationWarning,
                  compose_pmf, convolve, convolve_power, integrate_criterion, lf_power_series,
                  max_abs_diff, pgf_derivative_at, point_mass, series_compose)
from .semigroup import (IDENTITY, Classification, NonFiniteParameterError, ParameterError, Region,
                        ThinningParams, commutes, compose, pgf_eval, pgf_iterate, power, validate)
from .streams import RNG_ALGORITHM, make_rng, spawn_rngs
from .thinning import (iterate_check, operator_compose_check, thin_conditional_moments,
                       thin_conditional_pmf, thin_iterate_pmf, thin_marginal_pmf, thin_moments,
                       thin_sample)
from .verify import RunConfig, VerificationReport, run_mc_verify

__all__ = [name for name in dir() if not name.startswith("_")]
