//! Membership of `f = g/π^k` in `Int_K(M_n(V))` and in its integral closure,
//! properly integral verdicts, π-sequences and the ideal congruence between
//! properly integral numerators.

mod closure;
mod congruence;
mod pisequence;

use serde::Serialize;

use crate::dvr::{ChainRing, Dvr, Valuation};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::nullideal::null_membership;
use crate::poly::{KPoly, Poly, PolyRing};

pub use closure::{
    closure_check_at, closure_membership, closure_membership_degrees, closure_membership_over,
    closure_precision,
};
pub use congruence::{ideal_congruence, ideal_congruence_with, uniqueness_ideal_generator};
pub use pisequence::{mu_table, PiEntry, PiSequenceTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `g(C) ≢ 0 mod π^k` for the companion matrix `C` of `m`.
    NonVanishing,
    /// The coefficient of `y^{n-i}` in `charpoly(g(C))` is not divisible by `π^{k·i}`.
    Charpoly,
}

/// A monic `m` at which the check fails, with the numbers that show it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub m: String,
    /// Packed coefficients of `m`, ascending, at `precision`.
    pub m_coeffs: Vec<u64>,
    pub m_index: u64,
    pub precision: u32,
    pub coefficient: Option<usize>,
    pub found: Valuation,
    pub required: u32,
    pub entry_valuations: Vec<Vec<Valuation>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub witness: Option<Witness>,
    pub checked_count: u64,
    pub precision_used: u32,
}

impl MembershipVerdict {
    pub(crate) fn trivially_member() -> Self {
        MembershipVerdict {
            member: true,
            witness: None,
            checked_count: 0,
            precision_used: 0,
        }
    }
}

pub(crate) fn entry_valuations<R: ChainRing>(ring: &R, a: &Matrix<u64>) -> Vec<Vec<Valuation>> {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|e| ring.valuation(e)).collect())
        .collect()
}

/// `f ∈ Int_K(M_n(V))` iff `g mod π^k` lies in the null ideal of `M_n(V/π^k)`.
pub fn int_matrix_membership<D: Dvr>(
    dvr: &D,
    f: &KPoly<D>,
    n: usize,
    threads: usize,
) -> Result<MembershipVerdict> {
    if f.den_exp() == 0 {
        return Ok(MembershipVerdict::trivially_member());
    }
    null_membership(dvr, f.num(), f.den_exp(), n, threads)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProperVerdict {
    pub properly_integral: bool,
    pub closure: MembershipVerdict,
    pub ring: MembershipVerdict,
}

/// `f` is properly integral when it lies in the integral closure but not in
/// `Int_K(M_n(V))` itself.
pub fn properly_integral<D: Dvr>(
    dvr: &D,
    f: &KPoly<D>,
    n: usize,
    threads: usize,
) -> Result<ProperVerdict> {
    let closure = closure_membership(dvr, f, n, threads)?;
    let ring = int_matrix_membership(dvr, f, n, threads)?;
    Ok(ProperVerdict {
        properly_integral: closure.member && !ring.member,
        closure,
        ring,
    })
}

pub(crate) fn render_residue<R: ChainRing>(ring: &R, m: &Poly<u64>) -> String {
    PolyRing::new(ring.clone()).render(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_f, phi};
    use crate::dvr::{Ring, Zp};

    fn zp(p: u64) -> Zp {
        Zp::new(p).unwrap()
    }

    #[test]
    fn f_p2_fails_ring_at_x_squared() {
        let z = zp(2);
        let b = construct_f(&z, 2).unwrap();
        let v = int_matrix_membership(&z, &b.f, 2, 1).unwrap();
        assert!(!v.member);
        let w = v.witness.unwrap();
        assert_eq!(w.m, "x^2");
        assert_eq!(w.required, 2);
        assert_eq!(w.found, Valuation::Finite(1));
        assert_eq!(v.checked_count, 1);
    }

    #[test]
    fn phi_cubed_over_27_is_in_ring() {
        let z = zp(3);
        let px = PolyRing::new(z.clone());
        let g = px.pow(&phi(&z, 2).unwrap(), 3);
        let f = KPoly::new(&z, g, 3);
        let v = int_matrix_membership(&z, &f, 2, 1).unwrap();
        assert!(v.member);
        assert_eq!(v.checked_count, 729);
    }

    #[test]
    fn integral_inputs_short_circuit() {
        let z = zp(2);
        let px = PolyRing::new(z.clone());
        let f = KPoly::integral(px.from_ints(&[1, 5, 7]));
        assert!(int_matrix_membership(&z, &f, 3, 1).unwrap().member);
        assert!(closure_membership(&z, &f, 3, 1).unwrap().member);
    }

    #[test]
    fn f_is_properly_integral_p2() {
        let z = zp(2);
        let b = construct_f(&z, 2).unwrap();
        let v = properly_integral(&z, &b.f, 2, 1).unwrap();
        assert!(v.properly_integral);
        assert_eq!(v.closure.checked_count, 256);
        assert_eq!(v.closure.precision_used, 4);
    }

    #[test]
    fn phi_squared_over_4_is_not_properly_integral() {
        let z = zp(2);
        let px = PolyRing::new(z.clone());
        let f = KPoly::new(&z, px.pow(&phi(&z, 2).unwrap(), 2), 2);
        let v = properly_integral(&z, &f, 2, 1).unwrap();
        assert!(v.ring.member && v.closure.member);
        assert!(!v.properly_integral);
    }

    #[test]
    fn unit_scaling_keeps_verdict() {
        let z = zp(2);
        let px = PolyRing::new(z.clone());
        let b = construct_f(&z, 2).unwrap();
        for u in [3i64, 5, -1] {
            let scaled = KPoly::new(&z, px.scale(b.f.num(), &z.from_int(u)), b.f.den_exp());
            let v = properly_integral(&z, &scaled, 2, 1).unwrap();
            assert!(v.properly_integral, "unit {u}");
        }
    }
}
