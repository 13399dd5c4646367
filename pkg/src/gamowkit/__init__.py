"""Resonance (Gamow) states of 1-D barriers and their regularized inner products."""
from .errors import *  # noqa: F401,F403
from .poles import (
    Pole, count_zeros, find_bound_states, find_resonances, mirror_pole, newton_refine,
    scan_rectangle, verify_pole,
)
from .products import (
    ROMO, STANDARD, SYMMETRIC, ZELDOVICH, ProductVerdict, SweepRecord, TailTermDecomposition, Verdict, cone_classify,
    lambda_sweep, product_limit, product_regularized, tail_decomposition,
)
from .profile import PotentialProfile, build_profile, load_profile, save_profile, square_barrier
from .quad import QuadResult, gaussian_tail_integral, integrate_adaptive
from .scatter import TransferMatrix, jost_outgoing, scattering_amplitudes, transfer_matrix
from .specfun import (
    Limit, LogComplex, TailVerdict, big_F, big_F_asymptotic, faddeeva, j_limit,
    j_regularized, j_regularized_log,
)
from .states import (
    PlanewaveState, bound_state, eval_state, gamow_state, interior_overlap_boundary,
    scattering_state, zeldovich_norm,
)

__version__ = "0.1.0"
