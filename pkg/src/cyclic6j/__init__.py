"""Cyclic representations of the Weyl algebra at odd roots of unity.

Numerical construction of cyclic Clebsch-Gordan operators, 6j tensors,
cyclic dilogarithm operators and charged 6j tensors, together with a seeded
verification harness for every exact identity they satisfy (pentagon,
extended pentagon, orthogonality, tetrahedral symmetries, and the scalar
special-function identities underneath).
"""

from .context import (BranchSearchError, Context, DomainError,
                      SingularInputError, dist_to_cut_rays, make_context,
                      mod_index, nth_roots, omega_pow, principal_nth_root)
from .specfun import (FermatTriple, asymptotic_ratio, bracket, euler_dilog,
                      f_func, g_func, h_func, kron_delta_N, omega_fermat,
                      omega_fermat2, omega_simple, phi_func, q_pochhammer,
                      r_func, s_classical)
from .weylrep import (BorelElement, FusedTriple, StandardRep, conjugate_rep,
                      fuse, fuse_triple_admissible, inverse_rep,
                      is_regular_pair, mat_X, mat_Y, mat_Z, normal_rep,
                      psi_param, rep_D, rep_E, tensor_D, tensor_E)
from .dilog import (CyclicDilogParams, cyclic_dilog_op, make_anticyclic_pair,
                    sample_thm410_inputs, solve_thm410_params, upsilon)
from .intertwine import (OCGFamily, SixJTensor, ocg, psi_pair, sixj)
from .charged import (ChargePair, ChargedSixJTensor, c_sixj, s_matrix,
                      t_matrix, zeta_candidates)
from .tetra import (Branching, BorelCocycle, DecoratedTetrahedron,
                    IntegralCharge, cocycle_from_generators, evaluate_xi,
                    halve_charge, make_branching, reps_from_cocycle)
from .harness import RELATIONS, VerificationReport, run_all, run_relation

__version__ = "0.1.0"
