use serde_json::{json, Value};

use super::{Poly, PolyRing};
use crate::dvr::Dvr;
use crate::error::{Error, Result};

/// `num / π^den_exp` in lowest terms: when `den_exp > 0`, π does not divide `num`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly<D: Dvr> {
    num: Poly<D::Elem>,
    den_exp: u32,
}

impl<D: Dvr> KPoly<D> {
    /// Cancels common powers of π.
    pub fn new(dvr: &D, num: Poly<D::Elem>, den_exp: u32) -> Self {
        let px = PolyRing::new(dvr.clone());
        match px.min_coeff_val_exact(&num) {
            Err(_) => KPoly { num, den_exp: 0 },
            Ok(v) => {
                let s = v.min(den_exp);
                KPoly {
                    num: if s > 0 { px.div_pi_pow(&num, s) } else { num },
                    den_exp: den_exp - s,
                }
            }
        }
    }

    pub fn integral(num: Poly<D::Elem>) -> Self {
        KPoly { num, den_exp: 0 }
    }

    pub fn num(&self) -> &Poly<D::Elem> {
        &self.num
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    /// `{"coeffs": [...], "den_exp": k}`.
    pub fn to_json(&self, dvr: &D) -> Value {
        let mut v = PolyRing::new(dvr.clone()).to_json(&self.num);
        v["den_exp"] = json!(self.den_exp);
        v
    }

    /// Accepts `coeffs` or, for `Z_(p)`, a `text` polynomial; `den_exp` defaults to 0.
    pub fn from_json(dvr: &D, v: &Value) -> Result<Self> {
        let den_exp = match v.get("den_exp") {
            None => 0,
            Some(d) => d
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("bad den_exp {d}")))? as u32,
        };
        let px = PolyRing::new(dvr.clone());
        let num = if v.get("coeffs").is_some() {
            px.from_json(v)?
        } else if let Some(text) = v.get("text").and_then(Value::as_str) {
            let ints = super::parse_int_poly(text)?;
            let coeffs = ints
                .coeffs()
                .iter()
                .map(|c| dvr.from_json(&Value::String(c.to_string())))
                .collect::<Result<Vec<_>>>()?;
            px.from_coeffs(coeffs)
        } else {
            return Err(Error::Parse("polynomial needs \"coeffs\" or \"text\"".into()));
        };
        Ok(Self::new(dvr, num, den_exp))
    }
}
