use std::ops::RangeInclusive;

use super::{render_residue, MembershipVerdict, Witness, WitnessKind};
use crate::dvr::{ChainRing, Dvr};
use crate::error::{Error, Result};
use crate::matrix::{charpoly, companion, mat_eval};
use crate::parallel::first_failure;
use crate::poly::{enumerate_monic, KPoly, Poly, PolyRing};

/// Working precision `M = k·n` for the closure test of `g/π^k`.
pub fn closure_precision(k: u32, n: usize) -> u32 {
    k * n as u32
}

/// The charpoly test at a single monic `m` over `V/π^M`: every coefficient
/// of `y^{deg m - i}` in `charpoly(g(C))` must be divisible by `π^{k·i}`.
/// `g` must already be reduced to the ring of `m`.
pub fn closure_check_at<R: ChainRing>(
    ring: &R,
    g: &Poly<u64>,
    k: u32,
    m: &Poly<u64>,
) -> Result<Option<Witness>> {
    let px = PolyRing::new(ring.clone());
    let d = m.degree().ok_or(Error::NonMonic)?;
    let r = px.rem_monic(g, m)?;
    let c = companion(ring, m)?;
    let b = mat_eval(ring, &r, &c);
    let chi = charpoly(ring, &b);
    for i in 1..=d {
        let coeff = chi.coeff(d - i).copied().unwrap_or(0);
        let found = ring.valuation(&coeff);
        let required = k * i as u32;
        if !found.is_at_least(required) {
            return Ok(Some(Witness {
                kind: WitnessKind::Charpoly,
                m: render_residue(ring, m),
                m_coeffs: m.coeffs().to_vec(),
                m_index: 0,
                precision: ring.precision(),
                coefficient: Some(i),
                found,
                required,
                entry_valuations: Vec::new(),
            }));
        }
    }
    Ok(None)
}

fn scan_degree<R: ChainRing>(
    ring: &R,
    g: &Poly<u64>,
    k: u32,
    degree: usize,
    threads: usize,
) -> Result<(u64, Option<Witness>)> {
    let monics = enumerate_monic(ring, degree)?;
    let total = monics.total();
    let hit = first_failure(total, threads, |i| {
        let m = monics.nth_monic(i);
        closure_check_at(ring, g, k, &m)
            .expect("enumerated polynomials are monic")
            .map(|w| Witness { m_index: i, ..w })
    })?;
    Ok(match hit {
        Some((i, w)) => (i + 1, Some(w)),
        None => (total, None),
    })
}

/// Membership of `f = g/π^k` in the integral closure of `Int_K(M_n(V))`,
/// decided over the monic polynomials of the given degrees at precision `k·n`.
pub fn closure_membership_degrees<D: Dvr>(
    dvr: &D,
    f: &KPoly<D>,
    n: usize,
    degrees: RangeInclusive<usize>,
    threads: usize,
) -> Result<MembershipVerdict> {
    let k = f.den_exp();
    if k == 0 {
        return Ok(MembershipVerdict::trivially_member());
    }
    let precision = closure_precision(k, n);
    let ring = dvr.residue_ring(precision)?;
    let g = PolyRing::new(dvr.clone()).reduce(&ring, f.num());
    let mut checked = 0;
    for d in degrees {
        let (count, witness) = scan_degree(&ring, &g, k, d, threads)?;
        checked += count;
        if witness.is_some() {
            return Ok(MembershipVerdict {
                member: false,
                witness,
                checked_count: checked,
                precision_used: precision,
            });
        }
    }
    Ok(MembershipVerdict {
        member: true,
        witness: None,
        checked_count: checked,
        precision_used: precision,
    })
}

/// Membership in the integral closure, checked over every monic `m` of degree
/// exactly `n` modulo `π^{k·n}`. The witness is the first failing `m` in
/// enumeration order.
pub fn closure_membership<D: Dvr>(
    dvr: &D,
    f: &KPoly<D>,
    n: usize,
    threads: usize,
) -> Result<MembershipVerdict> {
    closure_membership_degrees(dvr, f, n, n..=n, threads)
}

/// The closure test restricted to the given monic moduli, which must live in
/// `dvr.residue_ring(closure_precision(k, n))`.
pub fn closure_membership_over<D: Dvr, I>(dvr: &D, f: &KPoly<D>, n: usize, moduli: I) -> Result<MembershipVerdict>
where
    I: IntoIterator<Item = Poly<u64>>,
{
    let k = f.den_exp();
    if k == 0 {
        return Ok(MembershipVerdict::trivially_member());
    }
    let precision = closure_precision(k, n);
    let ring = dvr.residue_ring(precision)?;
    let g = PolyRing::new(dvr.clone()).reduce(&ring, f.num());
    let mut checked = 0;
    for (i, m) in moduli.into_iter().enumerate() {
        checked += 1;
        if let Some(w) = closure_check_at(&ring, &g, k, &m)? {
            return Ok(MembershipVerdict {
                member: false,
                witness: Some(Witness { m_index: i as u64, ..w }),
                checked_count: checked,
                precision_used: precision,
            });
        }
    }
    Ok(MembershipVerdict {
        member: true,
        witness: None,
        checked_count: checked,
        precision_used: precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::little_h;
    use crate::dvr::{Ring, Valuation, Zp};
    use crate::membership::int_matrix_membership;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn x_over_2_fails() {
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        let f = KPoly::new(&z, px.x(), 1);
        let v = closure_membership(&z, &f, 2, 1).unwrap();
        assert!(!v.member);
        let w = v.witness.unwrap();
        assert_eq!(w.m, "x^2 + 1");
        assert_eq!((w.coefficient, w.found, w.required), (Some(2), Valuation::Finite(0), 2));

        // x^2 - 2 fails on the constant term: valuation 1 < 2
        let ring = z.residue_ring(2).unwrap();
        let rx = PolyRing::new(ring.clone());
        let m = rx.from_ints(&[-2, 0, 1]);
        let g = rx.x();
        let w = closure_check_at(&ring, &g, 1, &m).unwrap().unwrap();
        assert_eq!((w.coefficient, w.found, w.required), (Some(2), Valuation::Finite(1), 2));
    }

    #[test]
    fn alternative_g_is_in_closure() {
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        let g = crate::poly::parse_int_poly("x(x^2+2x+2)(x-1)(x^2+1)(x^2-x+1)(x^2+x+1)").unwrap();
        let f = KPoly::new(&z, px.from_coeffs(g.into_coeffs()), 2);
        assert!(closure_membership(&z, &f, 2, 1).unwrap().member);
        assert!(!int_matrix_membership(&z, &f, 2, 1).unwrap().member);
    }

    #[test]
    fn witness_rechecks_alone() {
        let z = Zp::new(3).unwrap();
        let px = PolyRing::new(z.clone());
        let f = KPoly::new(&z, px.from_ints(&[0, 0, 1, 1]), 1);
        let v = closure_membership(&z, &f, 2, 1).unwrap();
        let w = v.witness.clone().unwrap();
        let ring = z.residue_ring(w.precision).unwrap();
        let m = Poly::from_raw(w.m_coeffs.clone());
        let g = px.reduce(&ring, f.num());
        let again = closure_check_at(&ring, &g, 1, &m).unwrap().unwrap();
        assert_eq!(again.found, w.found);
        assert_eq!(again.coefficient, w.coefficient);
        assert_eq!(v.checked_count, w.m_index + 1);
    }

    #[test]
    fn thread_count_does_not_change_verdict() {
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        let f = KPoly::new(&z, px.from_ints(&[0, 1, 1, 0, 1]), 2);
        assert_eq!(
            closure_membership(&z, &f, 2, 1).unwrap(),
            closure_membership(&z, &f, 2, 3).unwrap()
        );
    }

    #[test]
    fn translated_h_passes_on_primary_moduli() {
        // h(x-a)/π^q passes on every m ≡ (x-a)^n mod π
        for p in [2u64, 3] {
            let z = Zp::new(p).unwrap();
            let px = PolyRing::new(z.clone());
            let n = 2;
            let h = little_h(&z, n).unwrap();
            let k = p as u32;
            let ring = z.residue_ring(closure_precision(k, n)).unwrap();
            let step = ring.residue_size();
            for a in 0..p {
                let f = KPoly::new(&z, px.shift(&h, &z.from_int(a as i64)), k);
                assert_eq!(f.den_exp(), k);
                let rx = PolyRing::new(ring.clone());
                let base = rx.pow(&rx.linear(&a), n as u32);
                let moduli = enumerate_monic(&ring, n).unwrap().filter(|m| {
                    (0..n).all(|i| ring.sub(&m.coeffs()[i], &base.coeffs()[i]) % step == 0)
                });
                let v = closure_membership_over(&z, &f, n, moduli).unwrap();
                assert!(v.member, "p={p} a={a}");
                assert_eq!(v.checked_count, ring.cardinality().pow(n as u32) / step.pow(n as u32));
            }
            // but h/π^q is not in the closure over all of them
            let f = KPoly::new(&z, h.clone(), k);
            assert!(!closure_membership(&z, &f, n, 1).unwrap().member);
        }
    }

    #[test]
    fn exact_degree_matches_all_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        for _ in 0..20 {
            let deg = rng.gen_range(2..9);
            let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-3..4)).collect();
            c.push(1);
            let k = rng.gen_range(1..3);
            let f = KPoly::new(&z, px.from_ints(&c), k);
            let a = closure_membership(&z, &f, 2, 1).unwrap();
            let b = closure_membership_degrees(&z, &f, 2, 1..=2, 1).unwrap();
            assert_eq!(a.member, b.member);
        }
    }
}
