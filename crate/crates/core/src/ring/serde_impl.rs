//! JSON encoding: `{"var": "A", "terms": [[exp, "coef"], ...]}` for Laurent
//! polynomials and `{"num": ..., "den": ...}` for fractions.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, RatFunc};

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: String,
    terms: Vec<(i64, String)>,
}

#[derive(Serialize, Deserialize)]
struct FracRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            var: "A".into(),
            terms: self.terms().iter().map(|(e, c)| (*e, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        if r.var != "A" {
            return Err(D::Error::custom(format!("unknown variable {:?}", r.var)));
        }
        let mut terms = Vec::with_capacity(r.terms.len());
        for (e, c) in r.terms {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FracRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FracRepr::deserialize(d)?;
        RatFunc::new(r.num, r.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{delta, quantum_delta};

    #[test]
    fn laurent_json_shape() {
        let j = serde_json::to_string(&delta()).unwrap();
        assert_eq!(j, r#"{"var":"A","terms":[[-2,"-1"],[2,"-1"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, delta());
    }

    #[test]
    fn ratfunc_round_trip() {
        let r = RatFunc::new(quantum_delta(1), quantum_delta(2)).unwrap();
        let j = serde_json::to_string(&r).unwrap();
        let back: RatFunc = serde_json::from_str(&j).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RatFunc>(
            r#"{"num":{"var":"A","terms":[]},"den":{"var":"A","terms":[]}}"#
        )
        .is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let p = quantum_delta(3).pow(40);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
