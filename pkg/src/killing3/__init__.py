"""Numerical toolkit for 3-manifolds carrying a unit-length Killing vector field.

The canonical metric is g = (T^b)^2 + dr^2 + phi^2 dtheta^2 in coordinates
(t, r, theta) with T = d/dt the Killing field; every metric in the package is
specified by the scalar profile triple (phi, h, k).  Modules:

* ``jets`` / ``fields``     exact derivative-carrying scalar evaluation
* ``tensor_core``           3x3 symmetric eigensolves, Gram audits, Riemann storage
* ``metric_family``         the (phi, h, k) spec, catalog metrics, CSV grids
* ``curvature_engine``      Christoffels, curvature, Ricci-operator spectrum
* ``np_formalism``          spin coefficients, kinematics, structure equations
* ``cotton_york``           conformal-flatness tests and the (B, C) fit
* ``conformal_family``      the twist ODE and conformally flat built metrics
* ``completeness_probe``    curvature-profile criterion and geodesics
* ``lorentz_bridge``        the Lorentzian partner metric and its relations
* ``cli``                   the ``killing3`` command-line front end
"""

from .conformal_family import (FamilyParams, OmegaSolution, build_cf_metric,
                               solve_omega_ode, wpde_residual)
from .completeness_probe import (CurvatureProfile, GeodesicState,
                                 GeodesicTrajectory, completeness_verdict,
                                 curvature_profile, integrate_geodesic,
                                 make_state, projection_residual)
from .cotton_york import (CottonYorkMatrix, FlatnessFit, cotton_york,
                          flatness_verdict, tmg_residual)
from .curvature_engine import (CurvaturePacket, RicciOfT, christoffels,
                               curvature_packet, gaussian_identity_residual,
                               hamilton_inequality, riemann)
from .errors import Killing3Error
from .fields import ScalarField, constant, from_expr, from_grid
from .frame_calculus import Geometry
from .jets import Jet2, ScalarJet
from .lorentz_bridge import (SignaturePair, lorentz_completeness,
                             lorentz_relations_check, to_lorentz)
from .metric_family import (FrameAt, MetricSpec, canonical_frame, catalog,
                            load_grid_csv, metric_components)
from .np_formalism import (KinematicData, SpinCoefficients, StructureResiduals,
                           conformal_rescale_check, killing_test, kinematics,
                           rotate_frame, spin_coefficients,
                           structure_residuals)
from .tensor_core import (LORENTZIAN, RIEMANNIAN, Riemann4, Sym3,
                          gram_residual, sym_eig3)

__version__ = "0.1.0"

__all__ = [
    "CottonYorkMatrix", "CurvaturePacket", "CurvatureProfile", "FamilyParams",
    "FlatnessFit", "FrameAt", "GeodesicState", "GeodesicTrajectory",
    "Geometry", "Jet2", "Killing3Error", "KinematicData", "LORENTZIAN",
    "MetricSpec", "OmegaSolution", "RIEMANNIAN", "RicciOfT", "Riemann4",
    "ScalarField", "ScalarJet", "SignaturePair", "SpinCoefficients",
    "StructureResiduals", "Sym3", "build_cf_metric", "canonical_frame",
    "catalog", "christoffels", "completeness_verdict",
    "conformal_rescale_check", "constant", "cotton_york", "curvature_packet",
    "curvature_profile", "flatness_verdict", "from_expr", "from_grid",
    "gaussian_identity_residual", "gram_residual", "hamilton_inequality",
    "integrate_geodesic", "killing_test", "kinematics", "load_grid_csv",
    "lorentz_completeness", "lorentz_relations_check", "make_state",
    "metric_components", "projection_residual", "riemann", "rotate_frame",
    "solve_omega_ode", "spin_coefficients", "structure_residuals",
    "sym_eig3", "tmg_residual", "to_lorentz", "wpde_residual",
]
