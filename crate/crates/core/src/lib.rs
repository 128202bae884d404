//! Exact constructions for generalized and projective Reed–Muller codes over
//! small finite fields: field and polynomial arithmetic, frozen point/line
//! orderings, weight-spectrum enumeration, point-count bounds with their
//! extremal configurations, and exhaustive censuses that check the bounds.
//!
//! Everything is deterministic: fields pick a reproducible modulus, geometry
//! enumerates in a fixed lexicographic order, and parallel tallies merge with
//! commutative operations so results never depend on worker count.

pub mod analysis;
pub mod bounds;
pub mod codes;
mod enumerate;
mod error;
pub mod extremal;
pub mod geometry;
pub mod gf;
pub mod poly;
pub mod verify;

pub use analysis::{
    attainer_census, c_conditions_check, census, classify, passant_profile, zanella_check,
    AttainerCensus, CensusMode, CensusReport, CurveClassification, Tag, ZanellaCheck,
};
pub use bounds::{bound_table, BoundResult, BoundStatus, BoundTable};
pub use extremal::{ConfigTag, Construction};
pub use codes::{build_code, weight_spectrum, Code, CodeKind, SpectrumMode, WeightSpectrum};
pub use enumerate::{EnumOptions, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use geometry::{AffinePoint, LinearForm, ProjectivePoint};
pub use gf::{field_from_order, make_field, Field, FieldElement, FieldSpec};
pub use poly::{Form, LinearFactorization, Monomial, Space};
pub use verify::{CriterionReport, Tier};
