use serde::{Deserialize, Serialize};

use super::{is_prime, FiniteField, Fqt, Zp};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Zp,
    Fqt,
}

/// Serializable description of the ambient DVR.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DvrContext {
    pub backend: Backend,
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_modulus: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

impl DvrContext {
    pub fn q(&self) -> u64 {
        self.p.pow(self.e)
    }

    /// Re-validates and builds the concrete ring.
    pub fn instantiate(&self) -> Result<AnyDvr> {
        make_context(self.backend, self.p, self.e, self.field_modulus.as_deref())?;
        Ok(match self.backend {
            Backend::Zp => AnyDvr::Zp(Zp::new(self.p)?),
            Backend::Fqt => {
                let modulus = self.field_modulus.clone().unwrap_or_else(|| vec![0, 1]);
                AnyDvr::Fqt(Fqt::new(FiniteField::new(self.p, &modulus)?))
            }
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let ctx: DvrContext =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("context: {e}")))?;
        ctx.instantiate()?;
        Ok(ctx)
    }
}

/// Validates the parameters of a DVR context.
pub fn make_context(
    backend: Backend,
    p: u64,
    e: u32,
    field_modulus: Option<&[u64]>,
) -> Result<DvrContext> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 {
        return Err(Error::BadArity("extension degree must be at least 1".into()));
    }
    match backend {
        Backend::Zp => {
            if e > 1 {
                return Err(Error::BadArity("the zp backend has e = 1".into()));
            }
            if field_modulus.is_some() {
                return Err(Error::BadArity("the zp backend takes no field modulus".into()));
            }
        }
        Backend::Fqt => match (e, field_modulus) {
            (1, Some(_)) => {
                return Err(Error::BadArity("no field modulus expected for e = 1".into()));
            }
            (1, None) => {}
            (_, None) => {
                return Err(Error::BadArity(format!("e = {e} needs a field modulus")));
            }
            (_, Some(m)) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::BadArity(format!(
                        "field modulus has degree {}, expected {e}",
                        m.len().saturating_sub(1)
                    )));
                }
                FiniteField::new(p, m)?;
            }
        },
    }
    Ok(DvrContext {
        backend,
        p,
        e,
        field_modulus: field_modulus.map(<[u64]>::to_vec),
    })
}

/// Runtime choice between the two backends.
#[derive(Clone, Debug)]
pub enum AnyDvr {
    Zp(Zp),
    Fqt(Fqt),
}
