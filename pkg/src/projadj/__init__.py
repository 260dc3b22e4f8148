"""Approach regions in the unit disc, projective adjacency, Poisson integrals of
arc data, and a desk-scale oscillation counterexample."""

from .adjacency import (AdjacencyWitness, adjacent_to, boundary_grid, family_shadow,
                        refute_projective_adjacency, regularity_probe, set_shadow,
                        test_projective_adjacency)
from .arcs import FULL_CIRCLE, Arc, ArcUnion, normalize, union_all
from .counterexample import (CounterexampleArtifact, CounterexampleConfig, HypothesisError,
                             build_counterexample, build_lattice, build_O, build_V, select_phi,
                             tangency_gauge, v_sequence, verify_oscillation, zygmund_member)
from .geometry import (BoundaryPoint, DiscPoint, DomainError, Tent, chord_bounds, point_shadow,
                       shadow_halfwidth, stolz_contains, tau, tent_contains, tent_of)
from .harmonic import (BoundaryIndicator, PoissonTree, StepFunction, conjugate_eval,
                       estimate_tent_constant, harmonic_measure_arc, harmonic_measure_union,
                       holo_eval, oscillation, poisson_eval)
from .regions import (ApproachRegion, ClassificationReport, RegionError, RegionFamily, RangeError,
                      UnsupportedRegion, classify, germ_equal_upto, make_attached_example,
                      make_curve_region, make_explicit, make_prop2b_region, make_prop2c_region,
                      make_radial_region, make_sequence_region, make_stolz_region, nested_tails,
                      rotate, union_regions)

__version__ = "0.1.0"
