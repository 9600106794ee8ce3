"""Numerical toolkit for analytic disc attachment and holomorphic
extension-direction analysis on graph manifolds in C^N.

Main entry points:

* :mod:`crwedge.circle` -- spectral machinery on the unit circle.
* :mod:`crwedge.expressions` -- defining-expression parser and derivatives.
* :mod:`crwedge.manifold` -- graph manifolds, Levi forms, genericity.
* :mod:`crwedge.cones` -- convex cones, angle invariants, Levi cones.
* :mod:`crwedge.bishop` -- boundary fixed-point solver for attached discs.
* :mod:`crwedge.extension` -- disc-family sweeps and lift constructions.
* :mod:`crwedge.cli` -- scenario files and the command-line front end.
"""

__version__ = "0.1.0"

from .bishop import (  # noqa: F401
    AnalyticDisc,
    disc_interior_eval,
    singular_component,
    solve_bishop,
    wedge_membership_of_boundary,
)
from .circle import (  # noqa: F401
    BoundaryFunction,
    HarmonicField,
    SingularFunction,
    hilbert_t1,
    holder_norm,
    holomorphy_residual,
    radial_derivative_at_one,
    singular_factor,
)
from .cones import (  # noqa: F401
    FullCone,
    GeneratorCone,
    LeviCone,
    PolyhedralCone,
    SectorCone,
    WedgeSpec,
    angle_condition_equiv,
    edge_of_wedge_check,
    gamma_angle,
    levi_cone,
    polyhedral_approximation,
)
from .extension import (  # noqa: F401
    AlphaWedgeSpec,
    DiscFamilyReport,
    alpha_wedge_membership,
    eta_sweep,
    theorem_hypotheses_check,
    wedge_lift,
)
from .kernels import BACKEND as KERNEL_BACKEND  # noqa: F401
from .manifold import (  # noqa: F401
    EdgeSpec,
    GraphManifold,
    genericity_check,
    harmonic_normalization_check,
)
from .scenarios import load_scenario  # noqa: F401
