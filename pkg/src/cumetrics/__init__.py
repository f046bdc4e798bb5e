"""Exact engine for Cu-semigroup metrics, determinants and rotation maps
over one-dimensional model algebras."""

from .algebras import Block, K0Image, ModelAlgebra, PositiveField, UnitaryField
from .determinant import (HClass, det_hat, extended_det, h_norm,
                          numeric_det_oracle, sample_unitary_path)
from .geometry import CIRCLE, INTERVAL, OpenSet, PLFunction, circle_dist
from .lsc import INF, LscFunction, indicator, lsc_leq, lsc_sup, lsc_waybelow
from .morphisms import (EigenPattern, aff_t_distance, apply_pattern,
                        apply_unitary, d_cu, d_cu_report, d_N, h_distance,
                        thomsen_nu)
from .ntbasis import (NTBasis, d_R, frak_d, is_diagonalisable, k1_action,
                      nt_matrix, relative_rotation)
from .refined import (CuKElement, FiberDiagram, IdealModel, d_star,
                      fiber_norm, lower_bound_check)
from .scenarios import (ScenarioReport, diagonalisation_search, gjl_report,
                        novel_report, robert_report)

__version__ = "0.1.0"
