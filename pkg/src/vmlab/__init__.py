"""vmlab: numerical companion for p-Dunford integrability on finite atomic
probability spaces.

Vector measures, Dunford norms and p-summing estimates are computed for
simple functions with values in weighted L^q spaces of small dimension.
"""
from .counterexamples import (KotheExampleConfig, PettisExampleConfig,
                              kothe_dual_witnesses, kothe_example,
                              pettis_example, pettis_space)
from .dunford import (DunfordOperator, ScalarFamilyReport, SimpleFunction,
                      approximation_defect, average_scalar, averaging,
                      bochner_norm, dunford_apply, dunford_norm,
                      indefinite_integral, pair, power_map_gap, sv_profile,
                      zfp_ui_modulus)
from .errors import *  # noqa: F401,F403
from .normed import (EXACT, HEURISTIC, MomentMaxResult, SpaceDescriptor,
                     conjugate_exponent, dual_ball_extreme_points,
                     maximize_p_moment, p_moment, sphere_directions)
from .space import (DiscreteProbabilitySpace, Partition, enumerate_partitions,
                    is_refinement, lp_norm, make_space, subset_mass,
                    ui_modulus)
from .summing import (CompositionReport, LinearOperator, PietschCertificate,
                      SummingEstimate, SummingLower, compose_function,
                      compose_measure, dual_sphere, family_ratio,
                      operator_norm, pi_p_estimate, pi_p_lower,
                      pietsch_lp_upper, primal_directions,
                      verify_composition_bound, verify_measure_bound)
from .thickness import (ThicknessBoundReport, ThicknessInstance,
                        ThicknessRadius, thickness_chain_profile,
                        thickness_norm_bound, thickness_radius)
from .variation import (VectorMeasure, evaluate, holder_coefficients,
                        p_semivariation, p_variation, partition_p_sum,
                        scalar_p_variation, semivariation_over_subset)

__version__ = "0.1.0"
