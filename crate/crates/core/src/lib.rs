//! Exact computer algebra for Salem numbers: integer polynomial arithmetic,
//! certified real roots, factorization, cyclotomic-factor analysis of Salem
//! sequences, Salem certificates, and linear relations among conjugates.

pub mod cyclo;
pub mod factor;
pub mod json;
mod modp;
pub mod parse;
pub mod poly;
pub mod realroots;
pub mod relations;
pub mod salem;

pub use cyclo::{CyclotomicHit, ProgressionSet, SalemSeq};
pub use factor::Factorization;
pub use parse::parse_poly;
pub use poly::{IntPoly, Sign};
pub use realroots::{Bound, RootBox, SturmChain};
pub use relations::{RelationReport, RelationVector, Status};
pub use salem::{Rejection, SalemCertificate};
