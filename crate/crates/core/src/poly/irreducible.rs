use super::{enumerate_monic, Poly, PolyRing};
use crate::dvr::ChainRing;

/// Irreducibility over the residue field of `ring` (only the residues of the
/// coefficients matter), by trial division against every monic irreducible of
/// degree at most `deg f / 2`.
pub fn is_irreducible<R: ChainRing>(ring: &R, f: &Poly<u64>) -> bool {
    let field = ring.at_precision(1).expect("precision 1 always exists");
    let px = PolyRing::new(field.clone());
    let f = px.from_coeffs(f.coeffs().iter().map(|c| ring.residue_of(c)).collect());
    let Some(deg) = f.degree() else {
        return false;
    };
    if deg == 0 || !px.is_monic(&f) {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in irreducibles_over_field(&field, d) {
            if px.divides_monic(&g, &f).expect("irreducibles are monic") {
                return false;
            }
        }
    }
    true
}

fn irreducibles_over_field<R: ChainRing>(field: &R, degree: usize) -> Vec<Poly<u64>> {
    enumerate_monic(field, degree)
        .expect("degree ≥ 1")
        .filter(|f| is_irreducible(field, f))
        .collect()
}

/// Every monic irreducible of degree exactly `degree` over the residue field,
/// in enumeration order.
pub fn enumerate_irreducibles<R: ChainRing>(ring: &R, degree: usize) -> Vec<Poly<u64>> {
    if degree == 0 {
        return Vec::new();
    }
    let field = ring.at_precision(1).expect("precision 1 always exists");
    irreducibles_over_field(&field, degree)
}

/// `(1/d) Σ_{c | d} μ(c) q^{d/c}`.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    fn mobius(mut n: u32) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let total: i64 = (1..=d)
        .filter(|c| d % c == 0)
        .map(|c| mobius(c) * q.pow(d / c) as i64)
        .sum();
    (total / d as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{FiniteField, FqtMod, ZpMod};
    use std::sync::Arc;

    #[test]
    fn quadratics() {
        let f2 = ZpMod::new(2, 1).unwrap();
        let px = PolyRing::new(f2.clone());
        assert_eq!(enumerate_irreducibles(&f2, 2), vec![px.from_ints(&[1, 1, 1])]);

        let f3 = ZpMod::new(3, 1).unwrap();
        let px = PolyRing::new(f3.clone());
        let mut got = enumerate_irreducibles(&f3, 2);
        got.sort_by_key(|f| f.coeffs().iter().rev().copied().collect::<Vec<_>>());
        assert_eq!(
            got,
            vec![px.from_ints(&[1, 0, 1]), px.from_ints(&[2, 1, 1]), px.from_ints(&[2, 2, 1])]
        );
        assert_eq!(enumerate_irreducibles(&f2, 3).len(), 2);
    }

    #[test]
    fn necklace_counts_match() {
        for p in [2u64, 3, 5] {
            let f = ZpMod::new(p, 1).unwrap();
            for d in 1..=4u32 {
                assert_eq!(enumerate_irreducibles(&f, d as usize).len() as u64, necklace_count(p, d));
            }
        }
        let f4 = FqtMod::new(Arc::new(FiniteField::new(2, &[1, 1, 1]).unwrap()), 1).unwrap();
        for d in 1..=4u32 {
            assert_eq!(enumerate_irreducibles(&f4, d as usize).len() as u64, necklace_count(4, d));
        }
    }

    #[test]
    fn works_from_higher_precision() {
        // residues decide: x^2 + 3x + 1 over Z/4 reduces to x^2 + x + 1 over F_2
        let z4 = ZpMod::new(2, 2).unwrap();
        let px = PolyRing::new(z4.clone());
        assert!(is_irreducible(&z4, &px.from_ints(&[1, 3, 1])));
        assert!(!is_irreducible(&z4, &px.from_ints(&[1, 2, 1])));
    }
}
