"""Exact condensation calculus in finite (multi)fusion categories."""
from .cycfield import CycNumber, as_scalar
from .fusion import (
    CocycleSpec,
    FusionCategory,
    FusionRing,
    build_pointed,
    direct_sum_vect,
    fibonacci_category,
    matrix_units_category,
    multifusion_components,
    verify_fusion_ring,
    verify_pentagon,
)
from .skeletal import SkMorphism
from .condensation import (
    Bimodule,
    Condensation2,
    CondensationMonad,
    GroupAlgebraObstruction,
    build_group_algebra,
    check_bimodule,
    check_condensation_monad,
    relative_tensor,
    trivial_monad,
)
from .mod2cat import (
    ModCPresentation,
    enumerate_module_categories_cyclic,
    generator_endomorphism,
    hom_category_report,
    is_connected,
)

__version__ = "0.1.0"

__all__ = [
    "as_scalar",
    "Bimodule",
    "build_group_algebra",
    "build_pointed",
    "check_bimodule",
    "check_condensation_monad",
    "CocycleSpec",
    "Condensation2",
    "CondensationMonad",
    "CycNumber",
    "direct_sum_vect",
    "enumerate_module_categories_cyclic",
    "fibonacci_category",
    "FusionCategory",
    "FusionRing",
    "generator_endomorphism",
    "GroupAlgebraObstruction",
    "hom_category_report",
    "is_connected",
    "matrix_units_category",
    "ModCPresentation",
    "multifusion_components",
    "relative_tensor",
    "SkMorphism",
    "trivial_monad",
    "verify_fusion_ring",
    "verify_pentagon",
]
