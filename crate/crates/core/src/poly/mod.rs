//! Dense univariate polynomials over any [`Ring`], with the extra operations
//! available over chain rings (monic division, valuations) and over the DVR
//! (reduction, lifting, lowest terms).

mod enumerate;
mod format;
mod irreducible;
mod kpoly;

use serde_json::{json, Value};

use crate::dvr::{ChainRing, Dvr, Ring, Valuation};
use crate::error::{Error, Result};

pub use enumerate::{enumerate_monic, MonicIter};
pub use format::{format_poly, parse_int_poly};
pub use irreducible::{enumerate_irreducibles, is_irreducible, necklace_count};
pub use kpoly::KPoly;

/// Coefficients in ascending order with trailing zeros stripped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T> Poly<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }
}

impl<T: Default + PartialEq> Poly<T> {
    /// Strips trailing `T::default()`, which must be the ring's zero.
    pub fn from_raw(mut coeffs: Vec<T>) -> Self {
        let zero = T::default();
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
}

/// Polynomial arithmetic over a base ring.
#[derive(Clone, Debug)]
pub struct PolyRing<R> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(&self, coeffs: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_int(c)).collect())
    }

    pub fn zero(&self) -> Poly<R::Elem> {
        Poly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> Poly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, degree: usize) -> Poly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); degree];
        coeffs.push(c);
        self.from_coeffs(coeffs)
    }

    /// `x - a`.
    pub fn linear(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn is_monic(&self, f: &Poly<R::Elem>) -> bool {
        f.leading().is_some_and(|c| self.base.is_one(c))
    }

    pub fn add(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.base.zero();
        let coeffs = (0..n)
            .map(|i| {
                self.base
                    .add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero))
            })
            .collect();
        self.from_coeffs(coeffs)
    }

    pub fn neg(&self, a: &Poly<R::Elem>) -> Poly<R::Elem> {
        Poly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Poly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    pub fn pow(&self, a: &Poly<R::Elem>, mut e: u32) -> Poly<R::Elem> {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn product<'a, I>(&self, factors: I) -> Poly<R::Elem>
    where
        I: IntoIterator<Item = &'a Poly<R::Elem>>,
        R::Elem: 'a,
    {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `f(g(x))` by Horner's rule.
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        f.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }

    /// `f(x - a)`.
    pub fn shift(&self, f: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        self.compose(f, &self.linear(a))
    }

    pub fn eval(&self, f: &Poly<R::Elem>, a: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, a), c))
    }

    pub fn render(&self, f: &Poly<R::Elem>) -> String {
        format_poly(&self.base, f)
    }

    /// `{"coeffs": [...]}` with coefficients ascending.
    pub fn to_json(&self, f: &Poly<R::Elem>) -> Value {
        let coeffs: Vec<Value> = f.coeffs.iter().map(|c| self.base.to_json(c)).collect();
        json!({ "coeffs": coeffs })
    }

    pub fn from_json(&self, v: &Value) -> Result<Poly<R::Elem>> {
        let arr = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected a \"coeffs\" array".into()))?;
        let coeffs = arr.iter().map(|c| self.base.from_json(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.from_coeffs(coeffs))
    }
}

impl<R: ChainRing> PolyRing<R> {
    /// `f = q·m + r` with `deg r < deg m`; no inverses are needed since `m` is monic.
    pub fn divrem_monic(&self, f: &Poly<u64>, m: &Poly<u64>) -> Result<(Poly<u64>, Poly<u64>)> {
        if !self.is_monic(m) {
            return Err(Error::NonMonicDivisor);
        }
        let dm = m.coeffs.len() - 1;
        let mut rem = f.coeffs.clone();
        if rem.len() <= dm {
            return Ok((self.zero(), self.from_coeffs(rem)));
        }
        let mut quot = vec![0u64; rem.len() - dm];
        for top in (dm..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            quot[top - dm] = c;
            for (i, mc) in m.coeffs.iter().enumerate() {
                let idx = top - dm + i;
                rem[idx] = self.base.sub(&rem[idx], &self.base.mul(&c, mc));
            }
        }
        rem.truncate(dm);
        Ok((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn rem_monic(&self, f: &Poly<u64>, m: &Poly<u64>) -> Result<Poly<u64>> {
        self.divrem_monic(f, m).map(|(_, r)| r)
    }

    pub fn divides_monic(&self, m: &Poly<u64>, f: &Poly<u64>) -> Result<bool> {
        Ok(self.rem_monic(f, m)?.is_zero())
    }

    /// Minimum valuation of the coefficients.
    pub fn min_coeff_val(&self, g: &Poly<u64>) -> Result<Valuation> {
        g.coeffs
            .iter()
            .map(|c| self.base.valuation(c))
            .filter_map(Valuation::finite)
            .min()
            .map(Valuation::Finite)
            .ok_or(Error::ZeroPolynomial)
    }

    /// Coefficientwise truncation of `f` (taken over `src`) to this ring's precision.
    pub fn reduce_from(&self, src: &R, f: &Poly<u64>) -> Result<Poly<u64>> {
        let coeffs = f
            .coeffs
            .iter()
            .map(|c| self.base.reduce_from(src, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.from_coeffs(coeffs))
    }

    /// Canonical lift of a residue-field polynomial (coefficients as indices `< q`).
    pub fn lift_residue(&self, f: &Poly<u64>) -> Poly<u64> {
        self.from_coeffs(f.coeffs.iter().map(|&c| self.base.lift_residue(c)).collect())
    }
}

impl<D: Dvr> PolyRing<D> {
    pub fn reduce(&self, ring: &D::Residue, f: &Poly<D::Elem>) -> Poly<u64> {
        Poly::from_raw(f.coeffs.iter().map(|c| self.base.reduce(ring, c)).collect())
    }

    pub fn lift(&self, ring: &D::Residue, f: &Poly<u64>) -> Poly<D::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|c| self.base.lift(ring, c)).collect())
    }

    /// Minimum π-adic valuation of the coefficients of an exact polynomial.
    pub fn min_coeff_val_exact(&self, g: &Poly<D::Elem>) -> Result<u32> {
        g.coeffs
            .iter()
            .filter_map(|c| self.base.valuation_exact(c))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn div_pi_pow(&self, g: &Poly<D::Elem>, e: u32) -> Poly<D::Elem> {
        self.from_coeffs(g.coeffs.iter().map(|c| self.base.div_pi_pow_exact(c, e)).collect())
    }

    pub fn scale_pi_pow(&self, g: &Poly<D::Elem>, e: u32) -> Poly<D::Elem> {
        self.scale(g, &self.base.pi_pow_exact(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{Zp, ZpMod};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn f2() -> PolyRing<ZpMod> {
        PolyRing::new(ZpMod::new(2, 1).unwrap())
    }

    #[test]
    fn divrem_examples() {
        let r = f2();
        let x2 = r.from_ints(&[0, 0, 1]);
        assert_eq!(r.divrem_monic(&x2, &x2).unwrap(), (r.one(), r.zero()));
        let x6 = r.monomial(1, 6);
        let m = r.from_ints(&[1, 1, 1]);
        assert_eq!(r.rem_monic(&x6, &m).unwrap(), r.one());
        let phi22 = r.from_ints(&[0, 0, 1, -1, 0, -1, 1]);
        assert!(r.divides_monic(&m, &phi22).unwrap());
        let two_x = PolyRing::new(ZpMod::new(2, 3).unwrap()).from_ints(&[1, 2]);
        assert_eq!(
            PolyRing::new(ZpMod::new(2, 3).unwrap()).divrem_monic(&x2, &two_x),
            Err(Error::NonMonicDivisor)
        );
    }

    #[test]
    fn min_coeff_val_examples() {
        let r = PolyRing::new(ZpMod::new(2, 5).unwrap());
        assert_eq!(r.min_coeff_val(&r.from_ints(&[4, 2])).unwrap(), Valuation::Finite(1));
        assert_eq!(r.min_coeff_val(&r.zero()), Err(Error::ZeroPolynomial));
        let v = PolyRing::new(Zp::new(3).unwrap());
        let phi = v.from_ints(&[0, -1, 0, 1]);
        assert_eq!(v.min_coeff_val_exact(&v.scale_pi_pow(&phi, 2)).unwrap(), 2);
    }

    #[test]
    fn shift_and_compose() {
        let v = PolyRing::new(Zp::new(2).unwrap());
        let x2 = v.from_ints(&[0, 0, 1]);
        // (x - 1)^2 = x^2 - 2x + 1
        assert_eq!(v.shift(&x2, &BigInt::from(1)), v.from_ints(&[1, -2, 1]));
        assert_eq!(v.eval(&x2, &BigInt::from(3)), BigInt::from(9));
    }

    proptest! {
        #[test]
        fn division_reassembles(
            f in proptest::collection::vec(0u64..27, 0..12),
            m in proptest::collection::vec(0u64..27, 0..5),
        ) {
            let r = PolyRing::new(ZpMod::new(3, 3).unwrap());
            let f = r.from_coeffs(f);
            let mut mc = m;
            mc.push(1);
            let m = r.from_coeffs(mc);
            let (q, rem) = r.divrem_monic(&f, &m).unwrap();
            prop_assert!(rem.degree().map_or(true, |d| d < m.degree().unwrap()));
            prop_assert_eq!(r.add(&r.mul(&q, &m), &rem), f);
        }
    }
}
