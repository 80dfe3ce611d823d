use crate::dvr::{ChainRing, Dvr};
use crate::error::{Error, Result};
use crate::poly::{parse_int_poly, KPoly, Poly, PolyRing};

/// `u = x^2 (x-1)^2 (x^2+x+1)`, so the ideal is `(4, 2u)` in `Z_(2)[x]`.
pub fn uniqueness_ideal_generator<D: Dvr>(dvr: &D) -> Poly<D::Elem> {
    let ints = parse_int_poly("x^2(x-1)^2(x^2+x+1)").expect("fixed text");
    let coeffs = ints
        .coeffs()
        .iter()
        .map(|c| dvr.from_int(i64::try_from(c).expect("small")))
        .collect();
    PolyRing::new(dvr.clone()).from_coeffs(coeffs)
}

/// Whether `g1 - g2` lies in the ideal `(π^k, π^{k-1} u)`: the difference
/// must be `π^{k-1} w` mod `π^k` with `u | w` mod `π`.
pub fn ideal_congruence_with<D: Dvr>(
    dvr: &D,
    g1: &Poly<D::Elem>,
    g2: &Poly<D::Elem>,
    k: u32,
    u: &Poly<D::Elem>,
) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    let px = PolyRing::new(dvr.clone());
    let ring = dvr.residue_ring(k)?;
    let delta = px.reduce(&ring, &px.sub(g1, g2));
    if delta.is_zero() {
        return Ok(true);
    }
    let rx = PolyRing::new(ring.clone());
    if !rx.min_coeff_val(&delta)?.is_at_least(k - 1) {
        return Ok(false);
    }
    let field = ring.at_precision(1)?;
    let w = Poly::from_raw(
        delta
            .coeffs()
            .iter()
            .map(|c| ring.residue_of(&ring.div_pi_pow(c, k - 1)))
            .collect(),
    );
    let fx = PolyRing::new(field.clone());
    let u_bar = px.reduce(&field, u);
    if !fx.is_monic(&u_bar) {
        return Err(Error::HypothesisViolation("u must be monic mod π".into()));
    }
    fx.divides_monic(&u_bar, &fx.from_coeffs(w.into_coeffs()))
}

/// The uniqueness statement for `p = 2, n = 2`: two monic numerators of degree
/// 10 over `4` are compared modulo `(4, 2x^2(x-1)^2(x^2+x+1))`.
pub fn ideal_congruence<D: Dvr>(dvr: &D, f1: &KPoly<D>, f2: &KPoly<D>) -> Result<bool> {
    if dvr.residue_size() != 2 {
        return Err(Error::HypothesisViolation(format!(
            "needs residue field F_2, got q = {}",
            dvr.residue_size()
        )));
    }
    let px = PolyRing::new(dvr.clone());
    for (name, f) in [("first", f1), ("second", f2)] {
        if f.den_exp() != 2 || f.degree() != Some(10) || !px.is_monic(f.num()) {
            return Err(Error::HypothesisViolation(format!(
                "{name} polynomial must be monic of degree 10 over π^2"
            )));
        }
    }
    ideal_congruence_with(dvr, f1.num(), f2.num(), 2, &uniqueness_ideal_generator(dvr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_f;
    use crate::dvr::{Ring, Zp};

    fn alt_g(z: &Zp) -> KPoly<Zp> {
        let g = parse_int_poly("x(x^2+2x+2)(x-1)(x^2+1)(x^2-x+1)(x^2+x+1)").unwrap();
        KPoly::new(z, PolyRing::new(z.clone()).from_coeffs(g.into_coeffs()), 2)
    }

    #[test]
    fn f_and_g_are_congruent() {
        let z = Zp::new(2).unwrap();
        let f = construct_f(&z, 2).unwrap().f;
        assert!(ideal_congruence(&z, &f, &alt_g(&z)).unwrap());
        assert!(ideal_congruence(&z, &f, &f).unwrap());
    }

    #[test]
    fn perturbation_breaks_it() {
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        let f = construct_f(&z, 2).unwrap().f;
        let bumped = KPoly::new(&z, px.add(f.num(), &px.from_ints(&[0, 2])), 2);
        assert!(!ideal_congruence(&z, &f, &bumped).unwrap());
        // 2u itself is in the ideal
        let u = uniqueness_ideal_generator(&z);
        let shifted = KPoly::new(&z, px.add(f.num(), &px.scale(&u, &z.from_int(2))), 2);
        assert!(ideal_congruence(&z, &f, &shifted).unwrap());
    }

    #[test]
    fn hypotheses_are_checked() {
        let z = Zp::new(2).unwrap();
        let px = PolyRing::new(z.clone());
        let f = construct_f(&z, 2).unwrap().f;
        let short = KPoly::new(&z, px.from_ints(&[1, 0, 1]), 2);
        assert!(matches!(
            ideal_congruence(&z, &f, &short),
            Err(Error::HypothesisViolation(_))
        ));
        let z3 = Zp::new(3).unwrap();
        let f3 = construct_f(&z3, 2).unwrap().f;
        assert!(ideal_congruence(&z3, &f3, &f3).is_err());
    }
}
