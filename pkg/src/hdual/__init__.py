"""Dual varieties over finite fields via Hasse derivatives and Groebner elimination."""

from .errors import (BudgetExceededError, ConfigurationError, DegreeOverflowError,
                     FieldMismatchError, HdualError, LevelOverflowError,
                     NoSuggestionError, NotOnVarietyError, ParseError,
                     RingMismatchError, SingularMatrixError, UndefinedDegreeError)
from .field import GF, FieldElement
from .poly import (GhostRing, MonomialOrder, Polynomial, PolyRing, ghost_lift,
                   ghost_project, h_degree, is_bihomogeneous, is_h_homogeneous)
from .hasse import binom_mod, frob_rep_check, hasse_derive, hasse_h, hasse_multi, nabla_h
from .groebner import (Ideal, buchberger, elimination_ideal, ideal_equal,
                       ideal_member, is_groebner, normal_form, reduce)
from .duality import (ConormalIdeal, DualVariety, QuadraticFormDual,
                      ReflexivityReport, check_reflexive, conormal_ideal,
                      dual_ideal, dual_variety, intermediate_ideal,
                      is_h_nonsingular, quadratic_form_dual, suggest_h)
from .forms import (DifferentialForm, PhLinearForm, QSymplecticForm, VectorField,
                    cone_check, contract, d_h, double_dual, lagrangian_check,
                    omega, ph_eval)

__version__ = "0.1.0"
