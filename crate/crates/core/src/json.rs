//! Serialization helpers: integers travel as decimal strings so no consumer
//! loses precision.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::poly::IntPoly;

pub fn big_str<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Ascending coefficient array of decimal strings.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}
