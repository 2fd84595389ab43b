"""Billiards in an ellipse with confocal elliptic caustics: closed-form
Mather beta-function, rotation number, invariant measure and Lazutkin
parameter, validated against a geometric orbit-simulation oracle."""

from .beta_mather import (BetaEvaluation, beta_closed, beta_geometric,
                          beta_of_lambda, beta_of_rho, lazutkin_param)
from .billiard import (BounceState, OrientedLine, bounce, bounce_between,
                       chord_endpoints, gen_function, gen_function_grads,
                       joachimsthal, lambda_of_line, momenta_product, reflect,
                       reverse_line)
from .conics import (CausticParam, Ellipse, boundary_point, caustic_from_lambda,
                     caustic_perimeter, caustic_point, caustic_semi_axes,
                     caustic_support, circumference, support, support_deriv)
from .elliptic import (carlson_rc, carlson_rd, carlson_rf, carlson_rj, ellint_E,
                       ellint_Ecomp, ellint_F, ellint_K, ellint_Pi)
from .errors import ClosureNotFoundError, DomainError, NoSolutionError, NumericError
from .poncelet import (ClosureInfo, OrbitRecord, closed_cycle_perimeter,
                       detect_closure, empirical_beta, empirical_rotation,
                       launch_tangent, orbit_rows, run_orbit, write_orbit_csv)
from .rigidity import (MonotonicityReport, RecoveryResult,
                       certify_circumference_monotonicity,
                       recover_from_diameter_pair, recover_from_quarter_and_length)
from .rotation_measure import (MeasureChart, lambda_from_rho, mu_arc,
                               mu_cumulative, rotation_number,
                               rotation_number_quadrature, total_measure)

__version__ = "0.1.0"
