use super::{is_prime, ZpMod};
use crate::error::{Error, Result};
use crate::poly::{is_irreducible, Poly};

const MAX_TABLE_ORDER: u64 = 1 << 10;

/// `F_{p^e} = F_p[u]/(modulus)`, with element `Σ c_i u^i` stored as the index
/// `Σ c_i p^i`. Arithmetic is table driven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteField {
    /// `modulus` lists F_p coefficients in ascending order and must be monic
    /// irreducible. For `e = 1` pass `[0, 1]` (or use [`FiniteField::prime`]).
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus(p));
        }
        let degree = (modulus.len() - 1) as u32;
        let order = p
            .checked_pow(degree)
            .filter(|&q| q <= MAX_TABLE_ORDER)
            .ok_or_else(|| Error::TooLarge(format!("F_{p}^{degree} exceeds the table limit")))?;
        let prime_field = ZpMod::new(p, 1)?;
        let m = Poly::from_raw(modulus.to_vec());
        if !is_irreducible(&prime_field, &m) {
            return Err(Error::ReducibleModulus(p));
        }

        let q = order as usize;
        let digits = |x: u64| -> Vec<u64> { (0..degree).map(|i| (x / p.pow(i)) % p).collect() };
        let pack = |d: &[u64]| -> u64 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * q + b as usize] = pack(&sum) as u32;

                let mut prod = vec![0u64; 2 * degree as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (degree as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    let shift = top - degree as usize;
                    for (i, mc) in modulus.iter().enumerate() {
                        prod[shift + i] = (prod[shift + i] + (p - c) * mc) % p;
                    }
                }
                mul[a as usize * q + b as usize] = pack(&prod[..degree as usize]) as u32;
            }
        }
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        Ok(FiniteField {
            p,
            degree,
            order,
            modulus: modulus.to_vec(),
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, &[0, 1])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order as usize + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    /// Meaningless for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// F_p digits of `a`, lowest power of `u` first.
    pub fn digits(&self, a: u32) -> Vec<u64> {
        (0..self.degree).map(|i| (a as u64 / self.p.pow(i)) % self.p).collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> Result<u32> {
        if d.len() > self.degree as usize || d.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("bad F_q digits {d:?}")));
        }
        Ok(d.iter().rev().fold(0, |acc, &c| acc * self.p + c) as u32)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// `a` as a polynomial in `u`, e.g. `u+1`.
    pub fn render(&self, a: u32) -> String {
        if self.degree == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "u".to_string(),
                (1, c) => format!("{c}u"),
                (i, 1) => format!("u^{i}"),
                (i, c) => format!("{c}u^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_four_elements() {
        let f = FiniteField::new(2, &[1, 1, 1]).unwrap();
        assert_eq!(f.order(), 4);
        // u·u = u + 1
        assert_eq!(f.mul(2, 2), 3);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.render(3), "u+1");
    }

    #[test]
    fn reducible_modulus_rejected() {
        // u^2 + 1 = (u + 1)^2 over F_2
        assert_eq!(FiniteField::new(2, &[1, 0, 1]), Err(Error::ReducibleModulus(2)));
        assert_eq!(FiniteField::new(4, &[0, 1]), Err(Error::NonPrime(4)));
    }

    #[test]
    fn field_axioms_f9() {
        let f = FiniteField::new(3, &[1, 0, 1]).unwrap();
        for a in 0..9 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..9 {
                for c in 0..9 {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
        }
    }
}
