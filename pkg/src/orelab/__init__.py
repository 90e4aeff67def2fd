"""orelab: finite-group computation and verification of supplement conditions.

Core layers: explicit groups on index sets (groups), subgroup lattices and
structural operators (structure), group-class predicates and F-hypercentres
(formations), the subgroup-functor catalog (functors), supplement conditions
(supplements), the group corpus with persistence (corpus), and the statement
verification harness (verifier, statements).
"""

from .groups import (
    Action,
    Group,
    Homomorphism,
    Subgroup,
    are_isomorphic,
    direct_product,
    generate_subgroup,
    quotient,
    semidirect_product,
)
from .structure import (
    ChiefFactor,
    ChiefSeries,
    SubgroupLattice,
    all_chief_factors,
    centralizer,
    centralizer_of_factor,
    centre,
    chief_series,
    core,
    enumerate_subgroups,
    fitting,
    frattini,
    generalized_fitting,
    hall,
    hypercentre,
    is_primitive,
    is_subnormal,
    is_subnormally_embedded,
    maximal_subgroups,
    minimal_normal_subgroups,
    normal_closure,
    normalizer,
    sylow,
)
from .formations import (
    Formation,
    NILPOTENT,
    QUASINILPOTENT,
    SOLUBLE,
    SUPERSOLUBLE,
    TRIVIAL,
    f_hypercentre,
    f_phi_hypercentre,
    is_f_central,
    is_member,
    p_nilpotent,
    p_supersoluble,
    parse_formation,
    residual,
    satellite_check_nilpotent,
)
from .functors import (
    FUNCTORS,
    SubgroupFunctor,
    check_property,
    is_camp,
    is_cap,
    is_completely_c_permutable,
    is_modular,
    is_s_quasinormal,
    is_sq_embedded,
    is_ss_quasinormal,
    parse_functor,
    tau_members,
)
from .supplements import (
    SupplementWitness,
    implication_suite,
    is_c_supplemented,
    is_f_supplemented,
    is_f_tau_supplemented,
    is_weakly_s_permutable,
    pair_satisfies_f_supplement,
    satisfies_ore,
)
from .corpus import (
    CorpusEntry,
    GroupSpec,
    build,
    generate_corpus,
    load_group,
    parse_spec,
    save_group,
)
from .verifier import (
    VerificationReport,
    emit_report,
    replay_counterexample,
    search_question_b,
    verify,
    verify_suites,
)

__version__ = "0.1.0"
