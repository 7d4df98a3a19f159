"""Designs from finite geometries: p-ranks, codes, and linear embeddings.

The package builds 2-designs from affine and projective geometries, computes
p-ranks and the linear codes spanned by incidence matrices, tests linear
embeddability of residual designs, and searches for completions of a residual
design into affine resolvable or symmetric designs.  The `cli` module exposes
the same pipeline as the `embedrank` command.
"""

from .codes import (
    LinearCode,
    WeightDistribution,
    code_from_bitrows,
    code_from_cols,
    code_from_rows,
    codeword_from_hex,
    codeword_to_hex,
    codewords_of_weight,
    hill_newton_holds,
    johnson_restricted,
    min_weight,
    min_weight_design,
    punctured_rm_code,
    residual_code,
    rm_code,
    rudolph_bound,
    sdp_code,
    weight_distribution,
)
from .designs import (
    DesignParams,
    GoodBlock,
    IncidenceStructure,
    Resolution,
    derived,
    emit_des,
    emit_json,
    good_block,
    intersection_profile,
    is_affine_resolvable,
    is_simple,
    load_design,
    make_resolution,
    normal_block,
    parallel_classes,
    parse_des,
    parse_json,
    residual,
    resolutions,
    save_design,
    verify_tdesign,
)
from .embedding import (
    EmbeddabilityReport,
    EmbeddingSearchResult,
    NecessaryCondition,
    SymEmbedding,
    embeddability,
    embedding_search,
    parallel_union_codewords,
    quasi_residual_params,
    sym_embedding_code,
    sym_embedding_search,
    thm1_certify,
    thm5_necessary,
    thm_taf_necessary,
)
from .errors import EmbedrankError
from .fields import FieldSpec, field_from_order, field_make
from .geometry import ag_design, pg_design
from .iso import (
    CanonicalCert,
    PermGroup,
    are_isomorphic,
    automorphism_group,
    canonical_cert,
    orbits,
    resolution_orbits,
)
from .linalg import MatGFp, mat_nullspace, mat_rank, mat_rref

__version__ = "0.1.0"

__all__ = [
    "CanonicalCert",
    "DesignParams",
    "EmbeddabilityReport",
    "EmbeddingSearchResult",
    "EmbedrankError",
    "FieldSpec",
    "GoodBlock",
    "IncidenceStructure",
    "LinearCode",
    "MatGFp",
    "NecessaryCondition",
    "PermGroup",
    "Resolution",
    "SymEmbedding",
    "WeightDistribution",
    "ag_design",
    "are_isomorphic",
    "automorphism_group",
    "canonical_cert",
    "code_from_bitrows",
    "code_from_cols",
    "code_from_rows",
    "codeword_from_hex",
    "codeword_to_hex",
    "codewords_of_weight",
    "derived",
    "embeddability",
    "embedding_search",
    "emit_des",
    "emit_json",
    "field_from_order",
    "field_make",
    "good_block",
    "hill_newton_holds",
    "intersection_profile",
    "is_affine_resolvable",
    "is_simple",
    "johnson_restricted",
    "load_design",
    "make_resolution",
    "mat_nullspace",
    "mat_rank",
    "mat_rref",
    "min_weight",
    "min_weight_design",
    "normal_block",
    "orbits",
    "parallel_classes",
    "parallel_union_codewords",
    "parse_des",
    "parse_json",
    "pg_design",
    "punctured_rm_code",
    "quasi_residual_params",
    "residual",
    "residual_code",
    "resolution_orbits",
    "resolutions",
    "rm_code",
    "rudolph_bound",
    "save_design",
    "sdp_code",
    "sym_embedding_code",
    "sym_embedding_search",
    "thm1_certify",
    "thm5_necessary",
    "thm_taf_necessary",
    "verify_tdesign",
    "weight_distribution",
]
