"""Simulation, subsampling, and estimation for sparse exchangeable graphs.

A graphex triple (isolated-edge rate, star intensity, graphon) generates a
growing family of random graphs; this package simulates those graphs,
subsamples them by independent vertex sampling, estimates the generating
triple with (dilated) empirical graphons, and statistically verifies the
invariance and consistency properties that make those operations fit
together.
"""
from .errors import (
    ConfigError,
    DegenerateBinsError,
    EmptyGraphError,
    GraphexError,
    NonIntegrableError,
    NotDilatableError,
    OutOfRangeError,
    TrivialGraphexError,
    TruncationUnavailableError,
    UnknownSuiteError,
)
from .estimate import (
    canonical_order,
    dilated_empirical_graphon,
    empirical_graphon,
    generate_from_pixel,
)
from .graphs import Component, LabeledGraph, UnlabeledGraph, forget_labels, restrict
from .model import (
    ExpProductGraphon,
    ExpStar,
    Graphex,
    InversePowerGraphon,
    PixelGraphon,
    UniformBlockGraphon,
    UniformStar,
    ZeroGraphon,
    ZeroStar,
    graphon_from_family,
    star_from_family,
)
from .rng import RngStream
from .sample import CouplingOutcome, coupled_sample, p_sample, random_label
from .sequence import GraphSequence, dilate_graphex, dilate_measure, graph_sequence, jump_times
from .simulate import (
    LatentPoints,
    SimConfig,
    expected_edge_counts,
    simulate,
    simulate_projective,
)
from .verify import (
    FULL_TRIPLE,
    StatVector,
    SuiteConfig,
    TestReport,
    ensemble,
    run_suite,
    stats,
    suite_names,
    two_sample_test,
)

__version__ = "0.1.0"
