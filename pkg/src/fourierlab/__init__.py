"""fourierlab: a numerical laboratory for weighted vector-valued Fourier inequalities."""

__version__ = "0.1.0"

from .errors import DomainError
from .quadrature import QuadratureConfig, DEFAULT_QUAD
from .values import (ValueSpace, ValuePoint, norm, dual_pair, dual_exponent,
                     aligned_dual_vector, embed_l1_copy, rademacher_average,
                     type_cotype_constant)
from .fourier import (TrigPolynomial, StepFunction, dft_coefficients,
                      trig_synthesis, step_ft, weighted_lq_norm_ft_line,
                      ons_coefficients, ons_synthesis, fwht, walsh_values)
from .rearrange import (PiecewiseConstant, RearrangementCurve, LZParams,
                        rearrange_sequence, rearrange_sampled,
                        lz_norm_sequence, lz_norm_function,
                        weighted_lp_norm_sequence, weighted_lp_norm_torus)
from .interpolation import (InterpParams, k_functional, limiting_interp_norm,
                            hardy_check_functions, hardy_check_sequences,
                            reiteration_bracket_check)
from .inequalities import (PittParams, RegionVerdict, TypeNotion,
                           pitt_region_classify, pitt_ratio, type_test_ratio,
                           zygmund_check, exp_summability, bochkarev_decay,
                           stein_weiss_check)
from .sharpness import (CounterexampleSpec, GrowthFit, SharpnessReport,
                        build_counterexample, growth_series, fit_growth,
                        sharpness_verdict, default_schedule, dense_schedule)
