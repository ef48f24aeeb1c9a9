"""Chiral maniplex extensions: flag graphs, GPR-graphs and verified
permutation-group constructions."""

from .permcore import (GroupWord, Perm, PermGroup, compose, evaluate_word,
                       group_order, is_member, left_product, order_of,
                       word_action)
from .maniplex import (FreenessError, Maniplex, Orientation, PreconditionError,
                       RootedManiplex, RotationSystem, Symmetry,
                       classify_symmetry, covers, dually_bipartite_colouring,
                       facets, find_rooted_automorphism,
                       intersection_property_check, is_orientable,
                       rotation_system, schlafli, tau, validate)
from .toroidal import (TorusParams, build_toroidal_map, canonical_params,
                       expected_flag_count, is_chiral_params, regular_quotient)
from .gpr import (ExtensionReport, GprGraph, VerificationError, cayley_gpr,
                  check_tau_relations, components, gpr_group,
                  rooted_digraph_isomorphic, verify_extension_criterion)
from .extend_db import (DbExtensionResult, Matching, build_matching,
                        extend_dually_bipartite, facet_word, rho_bar)
from .two_s_m import (TwoSM, build_two_s_m, lift_automorphism,
                      translation_chi_automorphisms, two_s_m_type,
                      verify_aut_structure)
from .mix import (DiamondGroup, diamond, enantiomorph_generators,
                  intersection_property_group, is_regular_via_mix,
                  lemma_pre_quotient_check, regular_quotient_extension)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
