"""Defining sets of CNF satisfying assignments and optimal graph colorings:
core types, exact desk-scale solvers, executable reductions, and brute-force
verification oracles."""

from .cnf import (CnfError, CnfFormula, ContractViolation, Eval,
                  PartialAssignment, enumerate_proper, evaluate,
                  is_proper_partial, normalize_width, parse_assignment,
                  parse_cnf)
from .colordefs import (DefsetColorInstance, is_defining_coloring_set,
                        min_defining_coloring_family, min_defining_coloring_set)
from .colorreduce import (ClauseGadget, build_g_phi, build_h,
                          synthesize_clause_gadget, verify_clause_gadget)
from .graphs import (Coloring, Graph, GraphError, chromatic_number,
                     enumerate_colorings, parse_coloring, parse_graph)
from .oracle import (oracle_min_defset_coloring, oracle_min_defset_sat,
                     verify_reduction)
from .satdefs import (DefsetSatInstance, QuantifiedSplit, exists_forall_check,
                      exists_uniqueexists_check, is_defining_set,
                      min_defining_set, min_defining_set_family)
from .satreduce import (ReductionArtifact, construct_mu, reduce_q2_to_q3,
                        reduce_unique_to_q2, split_to_3cnf)

__all__ = [name for name in dir() if not name.startswith("_")]
