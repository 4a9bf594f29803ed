"""starpart: exact toolkit for star coloring of sparse graphs.

Maximum average degree and potential functions in exact arithmetic,
forest / 2-independent-set partitions with an exhaustive solver, star
chromatic numbers, reducible-configuration scans, and discharging audits.
Every nontrivial algorithm ships with a brute-force oracle.
"""

from .graphs import (Graph, GraphBuilder, GraphError, ParseError,
                     ValidationError, VertexClass, PendentCycle,
                     classify_vertices, find_pendent_cycles,
                     find_pendent_triangles, girth, parse_graph,
                     serialize_graph, INFINITY)
from .density import (Density, PotentialResult, mad, mad_oracle, mad_le,
                      mad_le_8_3, rho, rho_star, rho_star_oracle)
from .starcolor import (Coloring, is_star_coloring, star_chromatic_number,
                        star_chromatic_number_oracle, greedy_star_coloring)
from .fii import (FiiPartition, FiiResult, verify_fii, find_fii,
                  enumerate_fii, fii_to_star5, boundary_search)
from .configs import (ConfigMatch, ReductionPlan, scan_configs,
                      attach_gadget, reduction_plan, verify_lemma_extension,
                      PendentTriangle, J1, J2, AddEdge, AddPath2,
                      ALL_CONFIG_IDS, GADGET_BUDGET)
from .discharging import (ChargeTable, Transfer, AuditReport,
                          run_discharging, audit_final_charges,
                          build_terminal_partition, TerminalResult)
from .generators import (gen_g5n, gen_mad_bounded, gen_corpus, gen_cycle,
                         gen_path, gen_tree_random, gen_complete, gen_star)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
