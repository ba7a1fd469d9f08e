"""Rainbow tree embeddings in Cayley-sum colourings of finite abelian groups.

K_G is the complete graph on an abelian group G with edge xy coloured x+y.
This package decides, constructs and verifies rainbow embeddings of trees
into K_G: the four-family obstruction classifier, an exhaustive solver, the
core-condition decision, the deterministic constructive pipeline, orthogonal
double covers over Z_2^k, and the harmonious-labelling bridge.
"""

from .cayley import (
    Embedding,
    TargetSets,
    all_minus_zero_targets,
    color,
    full_targets,
    is_pseudoembedding,
    translate_embedding,
    verify_rainbow,
    weighted_vertex_sum,
)
from .classify import ObstructionReport, classify, mod_g_congruent
from .construct import (
    CoreEmbeddingResult,
    StarMultiset,
    build_core_embedding,
    core_certificate_from_embedding,
    extend_to_pseudoembedding,
    find_pair_sum,
    find_s_sum,
    find_simple_xast,
    find_triple_prescribed_sum,
    partition_zero_sum,
    pipeline_core,
    xastd_cyclic,
    zero_sum_bipartition_z2k,
)
from .groups import (
    GroupSpec,
    add,
    count_pair_solutions,
    enumerate_abelian_groups,
    is_elementary_two,
    neg,
    parse_group_spec,
    scalar_mul,
    sum_of_set,
    two_torsion_count,
)
from .harness import (
    ExperimentRow,
    HarmoniousLabelling,
    check_harmonious,
    experiment_cross_check,
    find_harmonious,
    harmonious_from_rainbow,
    run_report,
)
from .odc import Cover, translates_cover, verify_odc
from .solver import (
    InconclusiveError,
    SearchConfig,
    SearchStats,
    core_condition_search,
    count_embeddings,
    enumerate_embeddings,
    naive_count_embeddings,
    solve_exact,
    solve_with_core,
)
from .trees import (
    Core,
    Tree,
    enumerate_trees,
    find_approximation,
    find_core,
    from_prufer,
    layered_matching_decomposition,
    leaves_or_bare_paths,
    parse_tree,
    split_small_components,
)

__version__ = "0.1.0"
