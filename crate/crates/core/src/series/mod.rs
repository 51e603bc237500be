//! Truncated power series, generating-function expansions, compatible-shape
//! tables and identity checks.

mod coefficient;
mod compatible;
mod gf;
mod identities;
mod truncated;

pub use coefficient::Coefficient;
pub use compatible::{compatible_counts, minimal_length, CompatibleTable, MAX_COMPATIBLE_NU};
pub use gf::{
    expand_g, expand_level0_gf, expand_level0_gf_at, expand_level0_sequence_gf,
    expand_motzkin_gf, GForm, MAX_G_ORDER, MAX_LEVEL0_ORDER,
};
pub use identities::{
    coker1_lhs, coker1_rhs, coker2_lhs, coker2_rhs, ouriden_lhs, ouriden_rhs, verify_identity,
    verify_identity_by_name, Counterexample, Identity, IdentityReport, InstanceResult,
    ParamRange, Status,
};
pub use truncated::{SeriesError, TruncatedSeries};
