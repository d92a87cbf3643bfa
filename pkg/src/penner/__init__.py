"""Penner mapping classes from curve systems: transition matrices, exact dilatations and their minimisers."""

from __future__ import annotations

from .closed_forms import FlowPoint, companion_poly, conjectured_odd_limit, even_genus_min, f, silver_limit
from .core import (
    BigMatrix,
    apply_word,
    certified_dilatation,
    certified_spectral_radius,
    char_poly,
    is_primitive,
    spectral_radius_float,
    twist_matrix,
    word_char_poly,
    word_matrix,
)
from .graphs import (
    IntersectionGraph,
    adjacency_spectral_radius,
    cycle_graph,
    enriched_cycle_graph,
    genus_lower_bound,
    is_bipartite,
    shortest_induced_odd_cycle,
    tree_lower_bound,
)
from .minimizer import (
    MinimizerCertificate,
    check_prolongation_bound,
    conjecture_sweep,
    min_penner_dilatation,
    minmax_ratio,
    mu,
    pf_vector,
    prolong_at_sink,
    verify_flowdiff_conjugacy,
)
from .orientations import (
    AcyclicOrientation,
    TwistWord,
    canonical_word,
    enumerate_orientations,
    flow_difference,
    orientation_from_word,
    source_to_sink,
    twist_and_click_params,
)
from .polys import AlgebraicReal, IntPoly, largest_real_root
from .skein import HalfLaurent, SignedCurveSystem, h_alexander, homology_action, torus_alexander

__version__ = "0.1.0"
