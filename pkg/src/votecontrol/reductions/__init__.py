"""Instance transformations between formula, graph and election problems."""

from .dodgson import (DodgsonControlGadget, DodgsonScoreGadget, pad_for_dodgson,
                      qsat2_to_dodgson_ccac, qsat2_to_dodgson_ccdcstar, sat3_to_dodgson_score)
from .graph import (doubled_digraph, dwork_hat, gnd_to_ismd, gnd_to_vcms, h_graph,
                    karp_3sat_to_vc, qsat2_to_vcma, qsat2_to_vcms, vcma_to_fasma,
                    vcma_to_fasmaa, vcms_to_fasms)
from .trace import REDUCTIONS, ReductionTrace, apply_reduction, run_reduction
from .voting import (YoungGadget, fasma_to_kemeny_ccac, fasmaa_to_kemeny_prime_ccav,
                     fasms_to_kemeny_ccdcstar, ismd_to_young_ccdv, mcgarvey,
                     decide_young_gadget, repair_for_young, young_condition,
                     young_precondition)

__all__ = [
    "DodgsonControlGadget", "DodgsonScoreGadget", "REDUCTIONS", "ReductionTrace",
    "YoungGadget", "apply_reduction", "doubled_digraph", "dwork_hat",
    "fasma_to_kemeny_ccac", "fasmaa_to_kemeny_prime_ccav", "fasms_to_kemeny_ccdcstar",
    "gnd_to_ismd", "gnd_to_vcms", "h_graph", "ismd_to_young_ccdv", "karp_3sat_to_vc",
    "mcgarvey", "pad_for_dodgson", "qsat2_to_dodgson_ccac", "qsat2_to_dodgson_ccdcstar",
    "qsat2_to_vcma", "qsat2_to_vcms", "repair_for_young", "run_reduction",
    "sat3_to_dodgson_score", "vcma_to_fasma", "vcma_to_fasmaa", "vcms_to_fasms",
    "young_precondition", "decide_young_gadget", "young_condition",
]
