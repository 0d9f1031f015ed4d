"""Finite group toolkit for embedding problems, fiber products and twisted wreath products."""

from .config import Limits, limits, override
from .constructions import (
    Semidirect,
    cyclic,
    dihedral,
    direct_power,
    direct_product,
    from_table,
    inversion_action,
    make_group,
    product_action,
    projection,
    semidirect_product,
    symmetric,
)
from .embedding import (
    EmbeddingProblem,
    SolutionSet,
    count_summary,
    make_ep,
    max_independent_family,
    shapiro_restrict,
    solutions_independent,
    solve,
)
from .errors import *  # noqa: F401,F403
from .fiber import (
    FiberProduct,
    check_fiber_independence,
    combine_solutions,
    fiber_product,
    power_fiber,
    verify_associativity,
)
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    Subgroup,
    closure,
    compose,
    conjugate,
    image,
    index,
    intersection,
    is_normal,
    kernel,
    normal_closure,
    normal_core,
    product_set,
    quotient,
    subgroup_calc,
    subgroup_generated,
)
from .homs import (
    automorphism_group,
    enumerate_homs,
    find_isomorphism,
    find_section,
    hom_calc,
    is_isomorphic,
)
from .independence import IndependenceReport, is_independent, is_independent_transitive
from .lattice import all_subgroups, normal_subgroups
from .transfer import (
    InducedProblem,
    TransferTower,
    build_induced,
    check_hypothesis_b,
    derive_tower,
    induce_nu,
    transfer_check,
    validate_tower,
)
from .wreath import (
    InducedModule,
    TwistedWreath,
    induced_module,
    shapiro,
    shapiro_fiber,
    twisted_wreath,
    wreath_fiber_iso,
)

__version__ = "0.1.0"
