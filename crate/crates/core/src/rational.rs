//! JSON form of exact rationals: `{"num": "<decimal>", "den": "<decimal>"}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalRepr {
    fn from(q: &BigRational) -> Self {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Option<BigRational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RationalRepr::from(q).serialize(s)
}

pub fn serialize_vec<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(RationalRepr::from))
}

pub fn serialize_opt<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    q.as_ref().map(RationalRepr::from).serialize(s)
}
