use std::ops::Range;

use super::Poly;
use crate::dvr::ChainRing;
use crate::error::{Error, Result};

/// All monic polynomials of a fixed degree over a chain ring.
///
/// Index `i` maps to `x^d + Σ c_j x^j` where `c_j` is the `j`-th base-`|R|`
/// digit of `i`, so `c_0` varies fastest. Any index range can be iterated on
/// its own, which is how parallel scans split the work.
#[derive(Clone, Debug)]
pub struct MonicIter<R> {
    ring: R,
    degree: usize,
    range: Range<u64>,
}

pub fn enumerate_monic<R: ChainRing>(ring: &R, degree: usize) -> Result<MonicIter<R>> {
    if degree == 0 {
        return Err(Error::BadArity("monic enumeration needs degree ≥ 1".into()));
    }
    let total = ring
        .cardinality()
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::TooLarge(format!("{}^{degree} monic polynomials", ring.cardinality())))?;
    Ok(MonicIter {
        ring: ring.clone(),
        degree,
        range: 0..total,
    })
}

impl<R: ChainRing> MonicIter<R> {
    pub fn total(&self) -> u64 {
        self.range.end
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nth_monic(&self, mut index: u64) -> Poly<u64> {
        let card = self.ring.cardinality();
        let mut coeffs = Vec::with_capacity(self.degree + 1);
        for _ in 0..self.degree {
            coeffs.push(self.ring.element(index % card));
            index /= card;
        }
        coeffs.push(self.ring.one());
        Poly { coeffs }
    }

    /// Index of a monic polynomial of the right degree.
    pub fn index_of(&self, m: &Poly<u64>) -> u64 {
        let card = self.ring.cardinality();
        m.coeffs[..self.degree]
            .iter()
            .rev()
            .fold(0, |acc, c| acc * card + self.ring.index(c))
    }

    pub fn with_range(&self, range: Range<u64>) -> Self {
        let end = range.end.min(self.total());
        MonicIter {
            ring: self.ring.clone(),
            degree: self.degree,
            range: range.start.min(end)..end,
        }
    }
}

impl<R: ChainRing> Iterator for MonicIter<R> {
    type Item = Poly<u64>;

    fn next(&mut self) -> Option<Poly<u64>> {
        let i = self.range.next()?;
        Some(self.nth_monic(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.range.end - self.range.start) as usize;
        (n, Some(n))
    }
}

impl<R: ChainRing> ExactSizeIterator for MonicIter<R> {}
