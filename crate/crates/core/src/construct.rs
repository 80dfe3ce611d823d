//! The named polynomials: `Φ_{q,n}`, the properly integral `F = H·θ^q / π^q`
//! and the boundary polynomial `ψ = L·θ^{q+1}`.
//!
//! Everything is built exactly over canonical lifts in `V[x]` and reduced by
//! the consumer. Residue-field elements `a, b` appearing in the products are
//! lifted to their digit representatives.

use serde_json::{json, Value};

use crate::dvr::{ChainRing, Dvr};
use crate::error::{Error, Result};
use crate::poly::{enumerate_irreducibles, KPoly, Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct ConstructionBundle<D: Dvr> {
    pub dvr: D,
    pub n: usize,
    pub theta: Poly<D::Elem>,
    pub little_h: Poly<D::Elem>,
    pub big_h: Poly<D::Elem>,
    pub f: KPoly<D>,
    pub phi: Poly<D::Elem>,
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::BadArity(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// Lifts of every residue-field element, in index order `0, 1, …, q-1`.
fn residue_lifts<D: Dvr>(dvr: &D) -> Result<Vec<D::Elem>> {
    let field = dvr.residue_ring(1)?;
    Ok((0..dvr.residue_size())
        .map(|i| dvr.lift(&field, &field.lift_residue(i)))
        .collect())
}

/// `Φ_{q,n} = (x^{q^n} - x)(x^{q^{n-1}} - x)⋯(x^q - x)`.
pub fn phi<D: Dvr>(dvr: &D, n: usize) -> Result<Poly<D::Elem>> {
    require_n(n, 1)?;
    let px = PolyRing::new(dvr.clone());
    let q = dvr.residue_size() as usize;
    let mut acc = px.one();
    let mut qi = 1usize;
    for _ in 0..n {
        qi *= q;
        let factor = px.sub(&px.monomial(dvr.one(), qi), &px.x());
        acc = px.mul(&acc, &factor);
    }
    Ok(acc)
}

/// Degree of `Φ_{q,n}`: `q + q^2 + … + q^n`.
pub fn phi_degree(q: u64, n: usize) -> usize {
    (1..=n as u32).map(|i| q.pow(i) as usize).sum()
}

/// `θ = Π f^{⌊n/deg f⌋}` over lifted monic irreducibles `f` with `2 ≤ deg f ≤ n`.
pub fn theta<D: Dvr>(dvr: &D, n: usize) -> Result<Poly<D::Elem>> {
    require_n(n, 2)?;
    let px = PolyRing::new(dvr.clone());
    let field = dvr.residue_ring(1)?;
    let mut acc = px.one();
    for d in 2..=n {
        for f in enumerate_irreducibles(&field, d) {
            let lifted = px.lift(&field, &f);
            acc = px.mul(&acc, &px.pow(&lifted, (n / d) as u32));
        }
    }
    Ok(acc)
}

/// `x^{n-1} Π_{a ∈ S} (x^n + πa)` for the given set of residues `S`.
fn power_product<D: Dvr>(dvr: &D, n: usize, residues: &[D::Elem]) -> Poly<D::Elem> {
    let px = PolyRing::new(dvr.clone());
    let pi = dvr.uniformizer();
    residues.iter().fold(px.monomial(dvr.one(), n - 1), |acc, a| {
        let factor = px.add(&px.monomial(dvr.one(), n), &px.constant(dvr.mul(&pi, a)));
        px.mul(&acc, &factor)
    })
}

/// `h(x) = x^{n-1} Π_{a ∈ F_q^×} (x^n + πa)`.
pub fn little_h<D: Dvr>(dvr: &D, n: usize) -> Result<Poly<D::Elem>> {
    require_n(n, 2)?;
    let lifts = residue_lifts(dvr)?;
    Ok(power_product(dvr, n, &lifts[1..]))
}

/// `Π_{b ∈ F_q} g(x - b)`.
fn translate_product<D: Dvr>(dvr: &D, g: &Poly<D::Elem>) -> Result<Poly<D::Elem>> {
    let px = PolyRing::new(dvr.clone());
    let lifts = residue_lifts(dvr)?;
    Ok(lifts
        .iter()
        .fold(px.one(), |acc, b| px.mul(&acc, &px.shift(g, b))))
}

/// The full bundle `θ, h, H = Π_b h(x-b), F = H θ^q / π^q` and `Φ_{q,n}`.
pub fn construct_f<D: Dvr>(dvr: &D, n: usize) -> Result<ConstructionBundle<D>> {
    require_n(n, 2)?;
    let px = PolyRing::new(dvr.clone());
    let q = dvr.residue_size() as u32;
    let theta = theta(dvr, n)?;
    let little_h = little_h(dvr, n)?;
    let big_h = translate_product(dvr, &little_h)?;
    let num = px.mul(&big_h, &px.pow(&theta, q));
    let f = KPoly::new(dvr, num, q);
    debug_assert_eq!(f.den_exp(), q);
    Ok(ConstructionBundle {
        dvr: dvr.clone(),
        n,
        theta,
        little_h,
        big_h,
        f,
        phi: phi(dvr, n)?,
    })
}

/// `ψ = L θ^{q+1}` with `ℓ = x^{n-1} Π_{a ∈ F_q} (x^n + πa)` (all of `F_q`,
/// including 0) and `L = Π_a ℓ(x - a)`.
pub fn construct_psi<D: Dvr>(dvr: &D, n: usize) -> Result<Poly<D::Elem>> {
    require_n(n, 2)?;
    let px = PolyRing::new(dvr.clone());
    let q = dvr.residue_size() as u32;
    let lifts = residue_lifts(dvr)?;
    let ell = power_product(dvr, n, &lifts);
    let big_l = translate_product(dvr, &ell)?;
    Ok(px.mul(&big_l, &px.pow(&theta(dvr, n)?, q + 1)))
}

/// Degree identities every bundle satisfies.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeCheck {
    pub deg_phi: usize,
    pub deg_theta: usize,
    pub deg_h: usize,
    pub deg_big_h: usize,
    pub deg_f: usize,
    pub den_exp: u32,
    pub holds: bool,
}

impl<D: Dvr> ConstructionBundle<D> {
    pub fn q(&self) -> u64 {
        self.dvr.residue_size()
    }

    pub fn degree_check(&self) -> DegreeCheck {
        let q = self.q() as usize;
        let n = self.n;
        let deg = |p: &Poly<D::Elem>| p.degree().unwrap_or(0);
        let dphi = deg(&self.phi);
        let c = DegreeCheck {
            deg_phi: dphi,
            deg_theta: deg(&self.theta),
            deg_h: deg(&self.little_h),
            deg_big_h: deg(&self.big_h),
            deg_f: self.f.degree().unwrap_or(0),
            den_exp: self.f.den_exp(),
            holds: false,
        };
        let holds = c.deg_phi == phi_degree(self.q(), n)
            && c.deg_theta == dphi - q * n
            && c.deg_h == q * n - 1
            && c.deg_big_h == q * q * n - q
            && c.deg_f == q * dphi - q
            && c.den_exp == q as u32;
        DegreeCheck { holds, ..c }
    }

    /// JSON/text rendering of every component.
    pub fn to_json(&self) -> Value {
        let px = PolyRing::new(self.dvr.clone());
        let both = |p: &Poly<D::Elem>| {
            json!({ "text": px.render(p), "coeffs": px.to_json(p)["coeffs"].clone() })
        };
        json!({
            "context": self.dvr.context(),
            "n": self.n,
            "q": self.q(),
            "phi": both(&self.phi),
            "theta": both(&self.theta),
            "h": both(&self.little_h),
            "H": both(&self.big_h),
            "F": {
                "text": px.render(self.f.num()),
                "coeffs": px.to_json(self.f.num())["coeffs"].clone(),
                "den_exp": self.f.den_exp(),
                "degree": self.f.degree(),
            },
            "degrees": self.degree_check(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{FiniteField, Fqt, Zp};
    use crate::poly::parse_int_poly;
    use num_bigint::BigInt;

    fn zp(p: u64) -> Zp {
        Zp::new(p).unwrap()
    }

    fn int_poly(dvr: &Zp, text: &str) -> Poly<BigInt> {
        PolyRing::new(dvr.clone()).from_coeffs(parse_int_poly(text).unwrap().into_coeffs())
    }

    #[test]
    fn phi_examples() {
        let z2 = zp(2);
        assert_eq!(phi(&z2, 1).unwrap(), int_poly(&z2, "x^2 - x"));
        assert_eq!(phi(&z2, 2).unwrap(), int_poly(&z2, "x^6 - x^5 - x^3 + x^2"));
        let z3 = zp(3);
        let p32 = phi(&z3, 2).unwrap();
        assert_eq!(p32, int_poly(&z3, "(x^9-x)(x^3-x)"));
        assert_eq!(p32.degree(), Some(12));
    }

    #[test]
    fn theta_examples() {
        let z2 = zp(2);
        assert_eq!(theta(&z2, 2).unwrap(), int_poly(&z2, "x^2+x+1"));
        let z3 = zp(3);
        let t = theta(&z3, 2).unwrap();
        assert_eq!(t, int_poly(&z3, "(x^2+1)(x^2+x+2)(x^2+2x+2)"));
        assert_eq!(t.degree(), Some(6));
        assert_eq!(
            theta(&z2, 3).unwrap(),
            int_poly(&z2, "(x^2+x+1)(x^3+x+1)(x^3+x^2+1)")
        );
    }

    #[test]
    fn f_for_p2_matches_display() {
        let z2 = zp(2);
        let b = construct_f(&z2, 2).unwrap();
        assert_eq!(b.f.num(), &int_poly(&z2, "x(x^2+2)(x-1)((x-1)^2+2)(x^2+x+1)^2"));
        assert_eq!(b.f.den_exp(), 2);
        let px = PolyRing::new(z2.clone());
        assert_eq!(px.min_coeff_val_exact(b.f.num()).unwrap(), 0);
    }

    #[test]
    fn f_for_p3_matches_display() {
        let z3 = zp(3);
        let b = construct_f(&z3, 2).unwrap();
        let g = int_poly(
            &z3,
            "x(x^2+3)(x^2+6)(x-1)((x-1)^2+3)((x-1)^2+6)(x-2)((x-2)^2+3)((x-2)^2+6)\
             (x^2+1)^3(x^2+x+2)^3(x^2+2x+2)^3",
        );
        assert_eq!(b.f.num(), &g);
        assert_eq!(b.f.den_exp(), 3);
        assert_eq!(b.f.degree(), Some(33));
    }

    #[test]
    fn degree_of_f_for_n2() {
        for p in [2u64, 3, 5] {
            let b = construct_f(&zp(p), 2).unwrap();
            assert_eq!(b.f.degree(), Some((p * p * p + p * p - p) as usize));
        }
    }

    fn f4() -> Fqt {
        Fqt::new(FiniteField::new(2, &[1, 1, 1]).unwrap())
    }

    fn check_degrees<D: Dvr>(dvr: &D) {
        for n in 2..=3 {
            let b = construct_f(dvr, n).unwrap();
            assert!(b.degree_check().holds, "{:?}", b.degree_check());
            let psi = construct_psi(dvr, n).unwrap();
            let q = dvr.residue_size() as usize;
            assert_eq!(psi.degree(), Some((q + 1) * phi_degree(q as u64, n) - q));
        }
    }

    #[test]
    fn degree_formulas_all_small_q() {
        check_degrees(&zp(2));
        check_degrees(&zp(3));
        check_degrees(&f4());
        check_degrees(&zp(5));
    }

    #[test]
    fn psi_degrees() {
        assert_eq!(construct_psi(&zp(2), 2).unwrap().degree(), Some(16));
        assert_eq!(construct_psi(&zp(3), 2).unwrap().degree(), Some(45));
    }

    fn theta_times_linear_is_phi_mod_pi<D: Dvr>(dvr: &D, n: usize) {
        let px = PolyRing::new(dvr.clone());
        let field = dvr.residue_ring(1).unwrap();
        let fx = PolyRing::new(field.clone());
        let lifts = residue_lifts(dvr).unwrap();
        let linear = lifts
            .iter()
            .fold(px.one(), |acc, a| px.mul(&acc, &px.pow(&px.linear(a), n as u32)));
        let lhs = px.reduce(&field, &px.mul(&theta(dvr, n).unwrap(), &linear));
        let rhs = px.reduce(&field, &phi(dvr, n).unwrap());
        assert_eq!(fx.from_coeffs(lhs.into_coeffs()), fx.from_coeffs(rhs.into_coeffs()));
    }

    #[test]
    fn theta_factorization_mod_pi() {
        for n in 2..=3 {
            theta_times_linear_is_phi_mod_pi(&zp(2), n);
            theta_times_linear_is_phi_mod_pi(&zp(3), n);
            theta_times_linear_is_phi_mod_pi(&f4(), n);
        }
    }

    fn residues_mod_pi<D: Dvr>(dvr: &D, n: usize) {
        let px = PolyRing::new(dvr.clone());
        let field = dvr.residue_ring(1).unwrap();
        let q = dvr.residue_size() as u32;
        let lifts = residue_lifts(dvr).unwrap();
        let lin_pow = |e: u32| {
            lifts
                .iter()
                .fold(px.one(), |acc, b| px.mul(&acc, &px.pow(&px.linear(b), e)))
        };
        let b = construct_f(dvr, n).unwrap();
        let e = q * n as u32 - 1;
        assert_eq!(px.reduce(&field, &b.big_h), px.reduce(&field, &lin_pow(e)));
        let expected = px.mul(&lin_pow(e), &px.pow(&b.theta, q));
        assert_eq!(px.reduce(&field, b.f.num()), px.reduce(&field, &expected));

        // ψ · Π (x - a) ≡ Φ^{q+1} mod π
        let psi = construct_psi(dvr, n).unwrap();
        let lhs = px.mul(&psi, &lin_pow(1));
        let rhs = px.pow(&b.phi, q + 1);
        assert_eq!(px.reduce(&field, &lhs), px.reduce(&field, &rhs));
    }

    #[test]
    fn reductions_mod_pi() {
        residues_mod_pi(&zp(2), 2);
        residues_mod_pi(&zp(3), 2);
        residues_mod_pi(&zp(2), 3);
        residues_mod_pi(&f4(), 2);
    }
}
