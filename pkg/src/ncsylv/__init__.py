"""Exact symbolic verification of Sylvester-type determinant identities
in the free algebra on matrix letters, across the commutative,
Cartier-Foata, right-quantum, single-parameter and multiparameter
weighted regimes."""

from .coeff import BetaPoly, LaurentPoly, Q, beta_binomial
from .freealg import (Element, NCMatrix, SymbolicMatrix, inversions,
                      neumann_inverse, substitute)
from .paths import (cycle_decomposition, decompose_path, e_mu,
                    enumerate_constrained, enumerate_sequences, phi)
from .relations import (RelationSystem, Relator, is_in_ideal, make_system,
                        normal_form, relators, swap_factor)
from .sylvester import (SylvesterInstance, VerifyReport, beta_expansion_check,
                        build_C, build_C_detform, c_entry_det_form,
                        make_instance, qij_counterexample, verify_C_relations,
                        verify_inverse_formula, verify_master_decomposition,
                        verify_sylvester)
from .weights import WeightScheme, bracket_matrix, det_expand, det_iminus, weight

__version__ = "0.1.0"
