"""Fat Hoffman graphs with smallest eigenvalue at least -3."""

from .decomposition import (
    SpecialGraphs,
    indecomposable_components,
    is_indecomposable,
    is_sum,
    recombine,
    special_graphs,
)
from .dynkin import DynkinShape, recognize_shape
from .enumeration import CorpusReport, enumerate_graphs, verify_corpus
from .errors import HoffmanError
from .families import family_a3tilde, family_a5, family_an, family_ht, family_me8
from .graph import (
    HoffmanGraph,
    are_isomorphic,
    attach_fat,
    find_isomorphism,
    induced_closure,
    induced_subgraph,
    parse_hg,
    read_hg,
    to_hg,
    validate,
    write_hg,
)
from .lattice import (
    LatticeClass,
    classify_reduced_lattice,
    classify_with_embedding,
    e8_root_system,
    lattice_invariants,
)
from .representation import (
    ReducedGram,
    VectorRep,
    build_representation,
    find_e8_embedding,
    find_standard_embedding,
    reduce_representation,
    reduced_gram,
)
from .saturation import is_saturated, verify_me8_maximality
from .spectra import (
    b_matrix,
    collapse_clique_representation,
    expand_fat_to_cliques,
    jacobi_eigenvalues,
    lambda_min,
    limit_table,
    min_eig_at_least,
)

__version__ = "0.1.0"
