"""Proper mixed-thin graph witnesses, contraction sequences and poset transductions."""
from __future__ import annotations

from .engine import EngineStats, build_sequence, replay_sequence, verify_sequence
from .errors import MixThinError
from .fo import Structure, evaluate, quantifier_depth, satisfying_table, to_sexpr
from .formulas import formula_library
from .generators import (
    gen_complement_matching, gen_complete_binary_tree, gen_grid2d, gen_lower_bound,
    gen_multidim, gen_path_tree, gen_tree,
)
from .graph import NATURAL, SYMMETRIC, ContractionTrace, Graph, TriMatrix, contract_symmetric
from .oracle import SearchConfig, exact_thinness_small, exact_twinwidth, min_first_contraction_red
from .paths import PathRepresentation, from_path_representation, sample_representations
from .poset import ChainDecomposition, MarkedPoset, chain_cover, transitive_closure, width
from .transduction import (
    chain_cover_certificate, decode_graph_to_poset, decode_poset_to_graph,
    encode_graph_to_poset, encode_poset_to_graph,
)
from .trisection import Trisection, compute_trisection, verify_trisection
from .witness import MixedThinWitness, verify_witness

__all__ = [name for name in dir() if not name.startswith("_")]
