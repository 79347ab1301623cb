"""Invariable generation of finite groups and homology of coset posets.

Exact verification toolkit: permutation-group algorithms (stabilizer chains,
conjugacy classes, Sylow subgroups), invariable-generation scans, subgroup
lattices and coset posets, simplicial homology over Q and F_p, fixed-point
congruence checks for p-group actions, and Zsigmondy/Lie-type order
arithmetic with bundled sporadic-group data.
"""

from .perms import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    format_permutation,
    inverse,
    parse_permutation,
)
from .groups import (
    CapExceeded,
    ConjugacyClass,
    GeneratedGroup,
    build_group,
    centralizer,
    conjugacy_classes,
    elements,
    is_primitive,
    is_transitive,
    load_group_file,
    minimal_blocks,
    orbits,
    subgroup_generated,
    sylow_subgroup,
)

__version__ = "0.1.0"

__all__ = [
    "Permutation", "compose", "conjugate", "cycle_type", "format_permutation",
    "inverse", "parse_permutation",
    "CapExceeded", "ConjugacyClass", "GeneratedGroup", "build_group",
    "centralizer", "conjugacy_classes", "elements", "is_primitive",
    "is_transitive", "load_group_file", "minimal_blocks", "orbits",
    "subgroup_generated", "sylow_subgroup",
    "__version__",
]
