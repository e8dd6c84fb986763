"""High-precision critical points of x(x-1)...(x-N) and the zeta-value
identities they lead to: the 1/log N expansion of the first critical
point, exact combinatorial triangles, roots-of-unity summation formulas,
arithmetic-progression sums and Dirichlet L-values.
"""

from .asymptotics import (
    GAMMA,
    ConstSymbol,
    FormalSeries,
    SymbolicConstantPoly,
    c4_candidates,
    default_binding,
    empirical_coefficient_fit,
    evaluate_expansion,
    evaluate_expansion_at_log,
    expansion_coefficients,
    inverse_expansion_check,
    reversion_residual,
    truncated_alpha,
    zeta_symbol,
    zeta_value,
)
from .combinatorics import (
    TriangleTable,
    alternating_c_sum,
    b_entry,
    b_table,
    bernoulli,
    c_entry,
    c_table,
    eulerian,
    stirling1_signed,
    stirling2,
    triangle,
)
from .errors import (
    BindingError,
    CapabilityError,
    ConvergenceError,
    DomainError,
    InputError,
    PoleError,
    PolyzetaError,
)
from .numerics import (
    DEFAULT_PRECISION,
    Precision,
    e_unit,
    euler_gamma,
    harmonic,
    pi_const,
    zeta_partial,
    zeta_partial_tail_bounds,
)
from .roots import GapQuery, RootEstimate, coefficient_form_crosscheck, find_root, logderiv_p
from .unity import (
    dirichlet_L,
    representatives,
    second_logderiv_sides,
    taylor_inv_sq,
    theta_lhs,
    theta_rhs,
    two_sided_power_sum,
    zeta2_finite,
    zeta_even_closed,
    zeta_from_odd,
)

__version__ = "0.1.0"
