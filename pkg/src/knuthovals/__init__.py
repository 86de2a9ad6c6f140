"""Knuth binary presemifield planes: hyperovals, line hyperovals, designs,
difference sets and bent functions, with exhaustive classification searches.
"""

from .gf2n import FieldContext, dickson3_count
from .algebra import (Presemifield, BitMatrix, knuth_kn, knuth_kn_td,
                      derive_presemifield, verify_presemifield, adjoint,
                      linpoly_eval, linpoly_values, linpoly_analyze)
from .ovals import (Hyperoval, LineHyperoval, is_hyperoval, standard_hyperoval,
                    og_hyperoval, od_hyperoval, dualize_type_a, dualize_type_b)
from .search import (HyperovalRecord, check_type_a, check_type_b,
                     canonical_form, normalize, search_translation_hyperovals)
from .designs import (Design, sigma_orbit, orbit_intersections, build_design,
                      development_design, difference_set, group_order_stats,
                      bent_from_hyperoval, design_invariants, distinguish_designs)
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "FieldContext", "dickson3_count",
    "Presemifield", "BitMatrix", "knuth_kn", "knuth_kn_td",
    "derive_presemifield", "verify_presemifield", "adjoint",
    "linpoly_eval", "linpoly_values", "linpoly_analyze",
    "Hyperoval", "LineHyperoval", "is_hyperoval", "standard_hyperoval",
    "og_hyperoval", "od_hyperoval", "dualize_type_a", "dualize_type_b",
    "HyperovalRecord", "check_type_a", "check_type_b", "canonical_form",
    "normalize", "search_translation_hyperovals",
    "Design", "sigma_orbit", "orbit_intersections", "build_design",
    "development_design", "difference_set", "group_order_stats",
    "bent_from_hyperoval", "design_invariants", "distinguish_designs",
    "KERNEL_BACKEND",
]
