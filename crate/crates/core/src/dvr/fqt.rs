use std::sync::Arc;

use serde_json::Value;

use super::{checked_card, Backend, ChainRing, Dvr, DvrContext, FiniteField, Ring};
use crate::error::{Error, Result};

/// Polynomial in `t` over `F_q`, lowest power first, no trailing zeros.
pub type TPoly = Vec<u32>;

/// `F_q[t]` localized at `(t)`; elements are exact `t`-polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fqt {
    field: Arc<FiniteField>,
}

impl Fqt {
    pub fn new(field: FiniteField) -> Self {
        Fqt { field: Arc::new(field) }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    fn strip(mut v: TPoly) -> TPoly {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
}

fn digits_json(field: &FiniteField, c: u32) -> Value {
    Value::Array(field.digits(c).into_iter().map(Value::from).collect())
}

fn digits_from_json(field: &FiniteField, v: &Value) -> Result<u32> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("expected F_p digit array, found {v}")))?;
    let digits = arr
        .iter()
        .map(|d| d.as_u64().ok_or_else(|| Error::Parse(format!("bad F_p digit {d}"))))
        .collect::<Result<Vec<_>>>()?;
    field.from_digits(&digits)
}

fn render_tpoly(field: &FiniteField, digits: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = field.render(c);
        let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
        terms.push(match i {
            0 => coeff,
            _ => {
                let t = if i == 1 { "t".to_string() } else { format!("t^{i}") };
                if c == 1 {
                    t
                } else {
                    format!("{coeff}{t}")
                }
            }
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl Ring for Fqt {
    type Elem = TPoly;

    fn zero(&self) -> TPoly {
        Vec::new()
    }
    fn one(&self) -> TPoly {
        vec![1]
    }
    fn from_int(&self, n: i64) -> TPoly {
        Self::strip(vec![self.field.from_int(n)])
    }
    fn add(&self, a: &TPoly, b: &TPoly) -> TPoly {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                self.field
                    .add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0))
            })
            .collect();
        Self::strip(v)
    }
    fn sub(&self, a: &TPoly, b: &TPoly) -> TPoly {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &TPoly) -> TPoly {
        a.iter().map(|&c| self.field.neg(c)).collect()
    }
    fn mul(&self, a: &TPoly, b: &TPoly) -> TPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
            }
        }
        Self::strip(out)
    }
    fn is_zero(&self, a: &TPoly) -> bool {
        a.is_empty()
    }
    fn render(&self, a: &TPoly) -> String {
        render_tpoly(&self.field, a)
    }
    fn to_json(&self, a: &TPoly) -> Value {
        Value::Array(a.iter().map(|&c| digits_json(&self.field, c)).collect())
    }
    fn from_json(&self, v: &Value) -> Result<TPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected t-power array, found {v}")))?;
        let coeffs = arr
            .iter()
            .map(|d| digits_from_json(&self.field, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::strip(coeffs))
    }
}

impl Dvr for Fqt {
    type Residue = FqtMod;

    fn prime(&self) -> u64 {
        self.field.characteristic()
    }
    fn residue_size(&self) -> u64 {
        self.field.order()
    }
    fn backend(&self) -> Backend {
        Backend::Fqt
    }
    fn residue_ring(&self, precision: u32) -> Result<FqtMod> {
        FqtMod::new(self.field.clone(), precision)
    }
    fn valuation_exact(&self, a: &TPoly) -> Option<u32> {
        a.iter().position(|&c| c != 0).map(|i| i as u32)
    }
    fn div_pi_pow_exact(&self, a: &TPoly, e: u32) -> TPoly {
        debug_assert!(a.iter().take(e as usize).all(|&c| c == 0));
        a.iter().skip(e as usize).copied().collect()
    }
    fn uniformizer(&self) -> TPoly {
        vec![0, 1]
    }
    fn reduce(&self, ring: &FqtMod, a: &TPoly) -> u64 {
        let digits: Vec<u32> = a.iter().take(ring.precision as usize).copied().collect();
        ring.pack(&digits)
    }
    fn lift(&self, ring: &FqtMod, a: &u64) -> TPoly {
        let (buf, m) = ring.unpack(*a);
        Self::strip(buf[..m].to_vec())
    }
    fn context(&self) -> DvrContext {
        let e = self.field.degree();
        DvrContext {
            backend: Backend::Fqt,
            p: self.field.characteristic(),
            e,
            field_modulus: (e > 1).then(|| self.field.modulus().to_vec()),
        }
    }
}

/// `F_q[t]/(t^M)`; an element is the base-`q` number whose digits are its
/// `t`-coefficients (lowest first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqtMod {
    field: Arc<FiniteField>,
    precision: u32,
    card: u64,
}

const MAX_DIGITS: usize = 64;

impl FqtMod {
    pub fn new(field: Arc<FiniteField>, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(Error::BadArity("precision must be at least 1".into()));
        }
        let card = checked_card(field.order(), precision)?;
        Ok(FqtMod { field, precision, card })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    fn unpack(&self, mut a: u64) -> ([u32; MAX_DIGITS], usize) {
        let q = self.field.order();
        let mut buf = [0u32; MAX_DIGITS];
        for slot in buf.iter_mut().take(self.precision as usize) {
            *slot = (a % q) as u32;
            a /= q;
        }
        (buf, self.precision as usize)
    }

    #[inline]
    fn pack(&self, digits: &[u32]) -> u64 {
        let q = self.field.order();
        digits
            .iter()
            .take(self.precision as usize)
            .rev()
            .fold(0, |acc, &d| acc * q + d as u64)
    }

    fn map2(&self, a: u64, b: u64, f: impl Fn(u32, u32) -> u32) -> u64 {
        let (x, m) = self.unpack(a);
        let (y, _) = self.unpack(b);
        let mut out = [0u32; MAX_DIGITS];
        for i in 0..m {
            out[i] = f(x[i], y[i]);
        }
        self.pack(&out[..m])
    }
}

impl Ring for FqtMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: i64) -> u64 {
        self.field.from_int(n) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.map2(*a, *b, |x, y| self.field.add(x, y))
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.map2(*a, *b, |x, y| self.field.sub(x, y))
    }
    fn neg(&self, a: &u64) -> u64 {
        self.map2(*a, 0, |x, _| self.field.neg(x))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        let (x, m) = self.unpack(*a);
        let (y, _) = self.unpack(*b);
        let mut out = [0u32; MAX_DIGITS];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m - i {
                out[i + j] = self.field.add(out[i + j], self.field.mul(x[i], y[j]));
            }
        }
        self.pack(&out[..m])
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        let (buf, m) = self.unpack(*a);
        render_tpoly(&self.field, &buf[..m])
    }
    fn to_json(&self, a: &u64) -> Value {
        let (buf, m) = self.unpack(*a);
        Value::Array(buf[..m].iter().map(|&c| digits_json(&self.field, c)).collect())
    }
    fn from_json(&self, v: &Value) -> Result<u64> {
        let exact = Fqt { field: self.field.clone() }.from_json(v)?;
        Ok(Fqt { field: self.field.clone() }.reduce(self, &exact))
    }
}

impl ChainRing for FqtMod {
    fn prime(&self) -> u64 {
        self.field.characteristic()
    }
    fn residue_size(&self) -> u64 {
        self.field.order()
    }
    fn precision(&self) -> u32 {
        self.precision
    }
    fn cardinality(&self) -> u64 {
        self.card
    }
    fn at_precision(&self, precision: u32) -> Result<Self> {
        FqtMod::new(self.field.clone(), precision)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let (x, m) = self.unpack(*a);
        if x[0] == 0 {
            return None;
        }
        let f = &self.field;
        let a0inv = f.inv(x[0]);
        let mut y = [0u32; MAX_DIGITS];
        y[0] = a0inv;
        for j in 1..m {
            let mut s = 0;
            for i in 1..=j {
                s = f.add(s, f.mul(x[i], y[j - i]));
            }
            y[j] = f.neg(f.mul(a0inv, s));
        }
        Some(self.pack(&y[..m]))
    }
}
