//! Exact computation of derived Jacquet-Emerton modules of Orlik-Strauch
//! representations of `SL2(Qp)` via `sl2` weight-module cohomology.

pub mod cohom;
pub mod error;
pub mod exactla;
pub mod extbound;
pub mod jacquet;
pub mod sl2mod;

pub use cohom::{
    cohomology, cohomology_with, kostant_check, CertificationPolicy, CohomologyResult, Direction,
    LadderPolynomial, StabilizationCertificate,
};
pub use error::{Error, Result};
pub use exactla::{parse_rational, q, render_rational, Rational, SparseMatrix, Subspace};
pub use extbound::{
    classify_ext, classify_ext_with, hom_dimension_bound, hom_dimension_bound_by, ExtCase,
    ExtWitness, Relation, RelationKind, Verdict,
};
pub use jacquet::{
    assemble_les, les_consistency_check, DegreeReport, ExtensionFlag, HeckeEigenvalue,
    JacquetReport, OrlikStrauchSpec, OsFamily, PipelineOptions, SmoothCharacter, TorusCharacter,
};
pub use sl2mod::{
    bgg_check, bgg_morphism, check_bracket_relations, default_truncation, dual_verma,
    n_finite_dual, simple, verma, BggCheck, Family, ModuleMap, Sl2Op, Truncation, WeightModule,
};
