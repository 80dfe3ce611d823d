//! The discrete valuation ring `V`, its finite residue rings `V/π^M` and the
//! valuation, reduction and lifting maps between them.
//!
//! Two families are supported: `Z_(p)` with `π = p` ([`Zp`]) and
//! `F_q[t]_(t)` with `π = t` ([`Fqt`]). Elements of `V` are kept as exact
//! canonical lifts (integers, resp. polynomials in `t`), elements of `V/π^M`
//! as packed base-`p` (resp. base-`q`) digit strings in a `u64`, so the packed
//! value doubles as the lexicographic enumeration index.

mod context;
mod field;
mod fqt;
mod zp;

use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

pub use context::{make_context, AnyDvr, Backend, DvrContext};
pub use field::FiniteField;
pub use fqt::{Fqt, FqtMod, TPoly};
pub use zp::{Zp, ZpMod};

/// π-adic valuation of an element of `V/π^M`. Zero has valuation `≥M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
}

impl Valuation {
    /// True when `π^j` divides the element.
    pub fn is_at_least(self, j: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= j,
            Valuation::AtLeast(m) => j <= m,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Lower bound usable in comparisons (`≥M` counts as `M`).
    pub fn floor(self) -> u32 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(m) => write!(f, "≥{m}"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::AtLeast(_) => s.serialize_str(&self.to_string()),
        }
    }
}

/// A commutative ring with a distinguished element representation.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Human-readable form; negative values start with `-`.
    fn render(&self, a: &Self::Elem) -> String;
    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem>;
}

/// A finite chain ring `V/π^M`: every ideal is a power of `(π)`.
pub trait ChainRing: Ring<Elem = u64> {
    fn prime(&self) -> u64;
    /// Size `q` of the residue field.
    fn residue_size(&self) -> u64;
    fn precision(&self) -> u32;
    /// `q^M`; elements are indexed `0..cardinality()` in lexicographic digit order.
    fn cardinality(&self) -> u64;
    fn at_precision(&self, precision: u32) -> Result<Self>;

    fn element(&self, index: u64) -> u64 {
        debug_assert!(index < self.cardinality());
        index
    }

    fn index(&self, a: &u64) -> u64 {
        *a
    }

    fn valuation(&self, a: &u64) -> Valuation {
        if *a == 0 {
            return Valuation::AtLeast(self.precision());
        }
        let q = self.residue_size();
        let (mut x, mut v) = (*a, 0);
        while x % q == 0 {
            x /= q;
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// `π^e`, which is zero once `e ≥ M`.
    fn pi_pow(&self, e: u32) -> u64 {
        if e >= self.precision() {
            0
        } else {
            self.residue_size().pow(e)
        }
    }

    /// Canonical `b` with `π^e b = a`; requires `π^e | a`.
    fn div_pi_pow(&self, a: &u64, e: u32) -> u64 {
        debug_assert!(self.valuation(a).is_at_least(e));
        if e >= self.precision() {
            0
        } else {
            a / self.residue_size().pow(e)
        }
    }

    /// Writes `a = low + π^e·high` with `low` a canonical representative mod `π^e`.
    fn split_at(&self, a: &u64, e: u32) -> (u64, u64) {
        if e >= self.precision() {
            return (*a, 0);
        }
        let base = self.residue_size().pow(e);
        (a % base, a / base)
    }

    fn unit_inverse(&self, a: &u64) -> Option<u64>;

    /// Residue-field element of `a`, as an index in `0..q`.
    fn residue_of(&self, a: &u64) -> u64 {
        a % self.residue_size()
    }

    /// Canonical lift of the residue-field element with index `r`.
    fn lift_residue(&self, r: u64) -> u64 {
        debug_assert!(r < self.residue_size());
        r
    }

    /// Truncates `a`, taken in `src`, to the precision of `self`.
    fn reduce_from(&self, src: &Self, a: &u64) -> Result<u64> {
        if self.precision() > src.precision() {
            return Err(Error::PrecisionIncrease {
                from: src.precision(),
                to: self.precision(),
            });
        }
        Ok(src.index(a) % self.cardinality())
    }

    /// Returns `(e, w)` with `a·w = π^e` and `w` a unit; `None` for zero.
    fn normalize(&self, a: &u64) -> Option<(u32, u64)> {
        let e = self.valuation(a).finite()?;
        let unit = self.div_pi_pow(a, e);
        let inv = self.unit_inverse(&unit).expect("quotient by maximal power is a unit");
        Some((e, inv))
    }
}

/// The ring `V` itself, with exact canonical lifts as elements.
pub trait Dvr: Ring + 'static {
    type Residue: ChainRing;

    fn prime(&self) -> u64;
    fn residue_size(&self) -> u64;
    fn backend(&self) -> Backend;
    fn residue_ring(&self, precision: u32) -> Result<Self::Residue>;
    /// `None` for zero.
    fn valuation_exact(&self, a: &Self::Elem) -> Option<u32>;
    /// Exact division by `π^e`; requires divisibility.
    fn div_pi_pow_exact(&self, a: &Self::Elem, e: u32) -> Self::Elem;
    fn uniformizer(&self) -> Self::Elem;
    fn reduce(&self, ring: &Self::Residue, a: &Self::Elem) -> u64;
    /// Canonical lift: digits become an exact element of `V`.
    fn lift(&self, ring: &Self::Residue, a: &u64) -> Self::Elem;
    fn context(&self) -> DvrContext;

    fn pi_pow_exact(&self, e: u32) -> Self::Elem {
        let pi = self.uniformizer();
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, &pi))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn checked_card(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .filter(|c| *c <= 1 << 62)
        .ok_or_else(|| Error::TooLarge(format!("{base}^{exp} exceeds the packed element range")))
}
