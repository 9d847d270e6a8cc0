"""planepart: plane-partition counts p2(n), exact and superasymptotic.

Exact values come from the sigma2 recurrence for the MacMahon product; the
estimate assembles Farey-arc terms built from generalized Dedekind sums and
the Almkvist special function, truncated superasymptotically with a full
error ledger.
"""

from .arith import (BernoulliCache, Constants, DerivedConstants, FareyFraction,
                    PrecisionContext, PrecisionError, bernoulli_number,
                    bernoulli_poly, constants, derived_constants, farey,
                    lngamma, mod_inverse, precision_for, sigma2, sigma2_table)
from .exact import PlanePartitionTable, p2_enumerate, p2_exact_table
from .dedekind import (CoeffSeries, DedekindSummary, b1k_estimate, b_coeffs,
                       b_hk, b_min, bound_suite, c_hk, dedekind_summary,
                       reciprocity_residual, v1_hk, vp_hk, vp_hk_cot)
from .almkvist import (AlmkvistEval, SaddleData, almkvist_saddle,
                       almkvist_series, g_radical, saddle_data, wright_leading)
from .circle import (EstimateReport, MinorArcBound, PhiBreakdown, TermRecord,
                     c_of_lambda, cutoff_probe, d_of_lambda, lambda_c,
                     lambda_param, minor_arc_bound, mstar_numeric,
                     mstar_theory, n_cutoff_numeric, n_cutoff_theory,
                     p2_estimate, phi0_bound, phi_m, psi_m, sa_error_bound)

__version__ = "0.1.0"
