use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::{checked_card, is_prime, Backend, ChainRing, Dvr, DvrContext, Ring};
use crate::error::{Error, Result};

/// `Z` localized at `p`; elements are integer lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        Ok(Zp { p })
    }
}

impl Ring for Zp {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &BigInt) -> Value {
        Value::String(a.to_string())
    }
    fn from_json(&self, v: &Value) -> Result<BigInt> {
        match v {
            Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer coefficient {s:?}"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Parse(format!("bad integer coefficient {n}"))),
            other => Err(Error::Parse(format!("expected integer, found {other}"))),
        }
    }
}

impl Dvr for Zp {
    type Residue = ZpMod;

    fn prime(&self) -> u64 {
        self.p
    }
    fn residue_size(&self) -> u64 {
        self.p
    }
    fn backend(&self) -> Backend {
        Backend::Zp
    }
    fn residue_ring(&self, precision: u32) -> Result<ZpMod> {
        ZpMod::new(self.p, precision)
    }
    fn valuation_exact(&self, a: &BigInt) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        let mut x = a.clone();
        let mut v = 0;
        loop {
            let (q, r) = x.div_rem(&p);
            if !r.is_zero() {
                return Some(v);
            }
            x = q;
            v += 1;
        }
    }
    fn div_pi_pow_exact(&self, a: &BigInt, e: u32) -> BigInt {
        let d = BigInt::from(self.p).pow(e);
        debug_assert!((a % &d).is_zero());
        a / d
    }
    fn uniformizer(&self) -> BigInt {
        BigInt::from(self.p)
    }
    fn reduce(&self, ring: &ZpMod, a: &BigInt) -> u64 {
        let m = BigInt::from(ring.modulus);
        a.mod_floor(&m).to_u64().expect("residue fits in u64")
    }
    fn lift(&self, _ring: &ZpMod, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
    fn context(&self) -> DvrContext {
        DvrContext {
            backend: Backend::Zp,
            p: self.p,
            e: 1,
            field_modulus: None,
        }
    }
}

/// `Z/p^M`, representatives in `[0, p^M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpMod {
    p: u64,
    precision: u32,
    modulus: u64,
}

impl ZpMod {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if precision == 0 {
            return Err(Error::BadArity("precision must be at least 1".into()));
        }
        let modulus = checked_card(p, precision)?;
        Ok(ZpMod { p, precision, modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl Ring for ZpMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.modulus as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.modulus <= 1 << 32 {
            (a * b) % self.modulus
        } else {
            ((*a as u128 * *b as u128) % self.modulus as u128) as u64
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn to_json(&self, a: &u64) -> Value {
        Value::String(a.to_string())
    }
    fn from_json(&self, v: &Value) -> Result<u64> {
        let n = Zp { p: self.p }.from_json(v)?;
        Ok(Zp { p: self.p }.reduce(self, &n))
    }
}

impl ChainRing for ZpMod {
    fn prime(&self) -> u64 {
        self.p
    }
    fn residue_size(&self) -> u64 {
        self.p
    }
    fn precision(&self) -> u32 {
        self.precision
    }
    fn cardinality(&self) -> u64 {
        self.modulus
    }
    fn at_precision(&self, precision: u32) -> Result<Self> {
        ZpMod::new(self.p, precision)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, *a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(s0.rem_euclid(self.modulus as i128) as u64)
    }
}

impl ZpMod {
    /// Symmetric representative in `(-p^M/2, p^M/2]`, handy for display.
    pub fn signed(&self, a: u64) -> i128 {
        if a > self.modulus / 2 {
            a as i128 - self.modulus as i128
        } else {
            a as i128
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::Valuation;

    #[test]
    fn valuation_of_twelve_mod_32() {
        let r = ZpMod::new(2, 5).unwrap();
        assert_eq!(r.valuation(&12), Valuation::Finite(2));
        assert_eq!(r.valuation(&0), Valuation::AtLeast(5));
    }

    #[test]
    fn reduce_and_lift() {
        let r5 = ZpMod::new(2, 5).unwrap();
        let r2 = ZpMod::new(2, 2).unwrap();
        assert_eq!(r2.reduce_from(&r5, &13).unwrap(), 1);
        assert_eq!(
            r5.reduce_from(&r2, &1),
            Err(Error::PrecisionIncrease { from: 2, to: 5 })
        );
        assert_eq!(r5.lift_residue(1), 1);
        let r3 = ZpMod::new(3, 4).unwrap();
        assert_eq!(r3.lift_residue(2), 2);
    }

    #[test]
    fn inverses_and_normalize() {
        let r = ZpMod::new(3, 3).unwrap();
        for a in 0..27u64 {
            match r.unit_inverse(&a) {
                Some(b) => assert_eq!(r.mul(&a, &b), 1),
                None => assert_eq!(a % 3, 0),
            }
        }
        let (e, w) = r.normalize(&18).unwrap();
        assert_eq!(e, 2);
        assert_eq!(r.mul(&18, &w), 9);
    }

    #[test]
    fn exact_valuation_and_reduction() {
        let z = Zp::new(2).unwrap();
        assert_eq!(z.valuation_exact(&BigInt::from(-24)), Some(3));
        assert_eq!(z.valuation_exact(&BigInt::from(0)), None);
        let r = z.residue_ring(3).unwrap();
        assert_eq!(z.reduce(&r, &BigInt::from(-1)), 7);
        assert_eq!(Zp::new(9), Err(Error::NonPrime(9)));
    }

    #[test]
    fn wide_modulus_multiplication() {
        let r = ZpMod::new(5, 20).unwrap();
        let a = r.modulus() - 1;
        assert_eq!(r.mul(&a, &a), 1);
    }
}
