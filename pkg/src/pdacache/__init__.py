"""Coded caching toolkit built on placement delivery arrays.

Core objects live in `pda` (parse, validate, classify, reduce), generators
in `constructions`, the erasure codec in `mds`, the end-to-end simulator in
`sim`, and closed-form scheme analysis plus sweeps in `analysis`. The
`pdacache` console script fronts all of it.
"""

from .pda import (BLANK, STAR, ParseError, Pda, PdaError, PdaParams,
                  ReductionError, StarClassification, ValidationError,
                  canonical_relabel, classify_stars, integer_positions, parse,
                  reduce, serialize, validate)
from .constructions import (RULE_I, RULE_II, ConstructionParams, comb,
                            construct, enumerate_subsets, mn_pda,
                            predicted_params)
from .mds import MdsCodec
from .sim import (CODED, UNCODED, DeliveryTranscript, Library, PlacementState,
                  Signal, decode_user, deliver, place, run_and_verify)
from .analysis import (SchemeRecord, crosscheck, lower_envelope,
                       new_params_I, new_params_II, original_params, sweep,
                       useless_per_column)

__all__ = [name for name in dir() if not name.startswith("_")]
