"""Geometric morphisms between finite presheaf toposes and their properties."""
from .canonical import canonical_to_sets, component_reps, sections, sets_object, sets_target
from .dec import DecTarget, from_dec_coreflection
from .flags import (Flag, MorphismFlags, OmegaComparison, cartesian_closed_check, classify_morphism,
                    nullstellensatz_transform, omega_comparison, shriek_preserves_zero, theta_via_units)
from .morphism import (AdjunctionReport, Functor, GeomError, GeomMorphism, Refutation, SiteTarget, Target,
                       Transformation, fully_faithful, refute_right_adjoint, verify_adjunction)
from .slice import down, slice, up
from .subtopos import is_sheaf, sheaf_objects, sheafify_functor
from .uiao import UIAOReport, composite_equivalence, uiao_verify
