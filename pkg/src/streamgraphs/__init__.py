"""streamgraphs: certified streams, represented countable graphs, fueled
deciders, reduction gadgets and search solvers."""

from .streams import (pair, unpair, CertifiedStream, EventuallyConstant,
                      Periodic, GeneratorBacked, exists_one, infinitely_often,
                      eventually_always, limit, parse_stream, format_stream)
from .graphs import (OMEGA, FinGraph, standard, disjoint_union,
                     connected_union, construction, tree_to_graph,
                     graph_to_tree, degree, distance, is_promptly_connected,
                     isomorphic, OmegaCopies, Finite)
from .trees import (FiniteTree, FullBinary, SinglePath, LevelRule,
                    DisjointTreeUnion, string_code, string_decode)
from .spaces import (SpaceName, validate_prefix, validate_name, name_of,
                     name_of_tree, truncate, gr_to_egr, f_convert, pc,
                     IotaTrace)
from .decide import (Embedding, Verdict, fin_subgraph, semidecide_s,
                     decide_is_egr_noncomplete, CertTree, CertForest,
                     to_cert_forest, predicate_tf, wf2)
from .gadgets import (GadgetOutput, sigma1_gadget, sigma2_gadget,
                      forests_lift, ForestGraph, p_complete_generator,
                      acc_gadget, acc_decode, lim2_to_embR, embR_decode,
                      cycles_box, cycles_box_decode, enuminf_encode,
                      enuminf_decode, CertifiedPiSet, sigma11_choice_gadget,
                      choice_decode)
from .search import (SolutionStream, find_s_finite, find_is_via_cn,
                     cn_by_stabilization, find_s_components, ray_follow,
                     emb_ray_r, path_from_solution, restrict_to_connected,
                     find_t3, find_f2k2, cantor_unique_path)
from .problems import (Problem, ReductionHarness, LimitTower, LPO, LPO_N,
                       LIM, LIM2, CN, CCANTOR, CBAIRE, WF, oracle_call,
                       problem_by_name, d_components, compose,
                       subgraph_presence_problem, ray_embedding_problem,
                       FINDS_RAY, path_choice_roundtrip)

__version__ = "0.1.0"
