"""Right-angled hyperbolic polyhedra: combinatorics, volumes, spectra."""

from .core import (AbstractPolyhedron, BadParameter, Disconnected,
                   InconsistentEdgeUse, NotASphere, NotSimple,
                   PolyhedronError, ValidityReport, andreev_check,
                   build_from_faces, canonical_code, canonical_form, counts,
                   decode_code, dual, is_steinitz, load_polyhedron,
                   prismatic_circuits)
from .moves import (BadOperands, MoveDescriptor, MoveError, NotVeryGood,
                    SizeMismatch, UnsupportedIdealGluing, WrongKind,
                    antiprism, connect_sum, connect_sum_all, edge_addition,
                    edge_surgery, edge_twist, edge_twist_candidates,
                    good_edges, lobell, replay, tower)
from .census import (BudgetExceeded, CensusMember, CensusResult,
                     GrowthGraph, compact_census, growth_graph,
                     ideal_census, verify_provenance)
from .lobachevsky import (DegenerateShape, IdentityVerdict, PrecisionSpec,
                          PrecisionUnattainable, TetVolume, bloch_wigner,
                          check_identity_eq8, check_identity_eq9,
                          ideal_tet_volume, lobachevsky,
                          lobachevsky_fourier, v_oct, v_tet)
from .volumes import (NormalizedVolume, VolumeValue, antiprism_volume,
                      atkinson_bounds, landmark_constants, lobell_theta,
                      lobell_volume, normalized, tower_volume,
                      vd_from_omega)
from .realization import (CirclePattern, InconsistentPattern, NoConvergence,
                          NotIdealKind, RealizedPolyhedron, ideal_volume,
                          realize, solve_pattern, volume_from_points)
from .spectra import (GluingSchedule, MissingVolumes, OutOfRange,
                      SpectrumPoint, SpectrumRow, TermBudget, Unreachable,
                      approximation_schedule, classify, discreteness_bound,
                      distinct_count, repeated_sum_convergence,
                      spectrum_points, spectrum_table,
                      weighted_average_check)

__version__ = "1.0.0"
