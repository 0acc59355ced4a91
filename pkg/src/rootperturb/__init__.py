"""Perturbation analysis of complex polynomial roots.

Univariate: explicit bounds on how far the roots of a perturbed polynomial
can move, including roots that escape to infinity when the leading
coefficient changes, and a partition of the perturbed roots around the
original ones.  Multivariate: classification of boundary zeros of
polynomials that are stable on a polydomain.
"""

from .bounds import (BoundConstants, HypothesisReport, Prop2Result, RootRegime,
                     BoundReport, TwoRegimeBound, admissibility_threshold,
                     cd_constants, monic_root_bound, prop2_bound, theorem4_analyze)
from .domains import Disc, HalfPlane, Polydomain, Rect
from .errors import (AmbientMismatch, ArityMismatch, DegreeZero, EvalAtRoot,
                     FullAssignment, InvalidEpsilon, LeadingZero, NoConvergence,
                     NotAZero, OutsideClosure, ParseError, RootPerturbError,
                     ZeroPolynomial)
from .grouping import (RootGrouping, SeparationRadii, find_delta_empirically,
                       group_roots, separation_radii)
from .multivar import (MultiPoly, ProbeResult, ZeroClassification, ZeroKind,
                       classify_boundary_zero, deg_in_var, eval_multi, restrict,
                       slice_poly, stability_probe)
from .poly import (ZERO_POLY, Poly, derivative, evaluate, find_nonvanishing_point,
                   formal_degree, log_derivative, reciprocal, shift)
from .rootfind import DistinctRoots, RootSet, cluster, distinct_roots, roots

__version__ = "0.1.0"
