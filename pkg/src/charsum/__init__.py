"""Character sums over finite fields F_q and F_{q^2}, and a verification
harness for the identity P(j,k) = V(j)V(k) between Katz's mixed exponential
sums and norm-restricted Gauss sums, together with the Mellin-transform,
Eisenstein, hypergeometric and classical Gauss/Jacobi machinery around it.
"""

from .characters import (
    AddChar,
    MultChar,
    char,
    decompose_odd,
    delta,
    delta_elem,
    is_odd,
    norm_compose,
    octic_M8,
    quadratic_char,
    restrict_to_base,
    trivial_char,
)
from .classical_sums import (
    check_hasse_davenport_product,
    check_lifted_gauss,
    check_quartic_gauss,
    eisenstein_E,
    eisenstein_E2,
    gauss,
    jacobi,
)
from .finite_field import (
    FieldElement,
    FieldError,
    FieldTower,
    PrimePowerField,
    build_tower,
    construct_field,
    factor_prime_power,
    trace_to_prime,
)
from .harness import RunConfig, cache_gauss_tables, load_gauss_tables, run
from .hypergeometric import (
    binom,
    check_norm_jacobi_hyp,
    hyp2f1,
    norm_fiber,
    norm_restricted_jacobi,
)
from .katz import (
    KatzContext,
    decompose_q,
    decompose_q_squared,
    double_mellin_mixed,
    double_mellin_product,
    fiber_jacobi_transform,
    kernel_double_sum,
    kernel_sum,
    kernel_transform,
    mellin_transform,
    mixed_sum,
    norm_restricted_gauss,
    quadratic_kernel_expected,
    quadratic_kernel_mellin,
    verify_master_identity,
)
from .report import CheckRecord, VerificationReport
from .tolerance import TolerancePolicy

__version__ = "0.1.0"
