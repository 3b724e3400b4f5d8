"""frlab: exact finite-group computations over dense Cayley tables.

Chief series, group classes (formations), rank conditions on chief
factors, hypercenters and intersections of maximal subgroups, all verified
by exhaustive desk-scale computation over a curated catalog of small
groups.  See the README for the CLI and the check suite.
"""

from .caps import Caps, scoped, set_caps
from .catalog import Catalog, default_catalog
from .centerint import (
    ShemetkovVerdict,
    c1_constant,
    c2_constant,
    hypercenter,
    int_x,
    shemetkov_check,
    t3_condition,
    x_maximal_subgroups,
)
from .checks import run_check, run_search
from .classes import (
    ClassFlags,
    ClassSpec,
    builtin,
    e_closure,
    is_f_central,
    np_extend,
    residual,
    s_critical,
    saturated_subformation_check,
)
from .construct import (
    automorphism_group,
    direct_product,
    is_isomorphic,
    semidirect_product,
    wreath_natural,
    wreath_regular,
)
from .grouptable import (
    GroupAction,
    GroupHom,
    GroupTable,
    Subgroup,
    centralizer_of_section,
    from_permutations,
    is_inner,
    quotient,
)
from .lattice import all_subgroups, maximal_subgroups, normal_subgroups
from .rankfn import (
    FRClass,
    RankSpec,
    fr_class,
    in_fr,
    is_good,
    is_very_good,
    preset,
    rank_spec,
    t2_structure,
    z_grfn,
)
from .recipes import GroupRecipe, build, parse_recipe, print_recipe
from .reports import CheckReport
from .series import (
    ChiefFactorView,
    ChiefSeriesRec,
    SimpleTypeKey,
    chief_series,
    chief_series_through,
    cp_subgroup,
    decompose_factor,
    factor_signature,
    gr_in_r,
)
from .structure import characteristic_subgroups
from .formats import load_group, load_rank_spec, parse_rank_spec, resolve_class

__version__ = "0.1.0"
