"""Exact-arithmetic toolkit for negative-definite plumbing trees."""

from .arith import (ArithmeticDomainError, format_rational,
                    generic_determinant, hj_expand, hj_value, parse_rational,
                    smith_divisors, tree_determinant)
from .classify import (ClassificationReport, canonical_code, classify,
                       enumerate_and_classify, find_proper_e8, find_very_bad,
                       is_insulated)
from .diagonal import (DegenerateFormError, DiagonalForm, MarkedGraph,
                       NotNegativeDefiniteError, derationalizer,
                       is_negative_definite, rooted_diagonalize, split,
                       surger)
from .graph import (BlowDownError, CycleError, DisconnectedError,
                    DuplicateEdgeError, DuplicateVertexError, EmptyGraphError,
                    GraphError, GraphSyntaxError, ParseError, PlumbingGraph,
                    UnknownVertexError, VertexProfile, blow_down_candidates,
                    blow_down_once, deficiency, intersection_matrix,
                    is_minimal, minimalize, parse_graph, serialize,
                    vertex_profile)
from .laufer import (BoxTooSmallError, LATTICE_L_SPACE, LauferResult,
                     LauferStep, LauferTrace, NOT_LATTICE_L_SPACE,
                     canonical_vector, chi, deficiency_iteration, laufer_run,
                     min_cycle_bruteforce, pairing)
from .pi1 import (GroupPresentation, abelianization_invariants,
                  homology_order_matches_determinant, mumford_presentation)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
