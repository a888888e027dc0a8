"""Exact alpha-semistability: degree functions, Hilbert polynomials, HN filtrations, walls and chambers."""
from .hn import AmbiguousMDS, HNChain, LatticeError, SubobjectLattice, hn_filtration, maximal_destabilizing
from .models import builtin, example_threefold, product_p1_p1, projective_space
from .numring import (DualPolytopeBounds, GradedClass, ModelError, SheafClass, VarietyModel, bound_dual_polytope,
                      cone_test, degree)
from .stability import (DegreeSystem, HilbertPoly, Order, PhaseWeights, Rudakov, Status, Verdict,
                        bayer_phase_compare, classical_system, compare_asymptotic, hilbert_polynomial,
                        is_semistable, moduli_pgamma, reduced_hilbert, rudakov_compare, sheaf, truncate)
from .walls import (CompactRegion, ParameterSpace, SectionFrame, Wall, WallSystem, build_wall, enumerate_candidates,
                    sample_chambers, sign_vector, verdict_constancy_check, wall_crossing_report, wall_system)

__version__ = "0.1.0"
