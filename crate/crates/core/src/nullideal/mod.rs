//! Null ideals `N_k` of `M_n(V/π^k)`: membership through companion matrices,
//! minimal-degree monic elements `φ_k`, primary least common multiples and
//! the identity `N_k = (Φ_{q,n}, π)^k` for `k ≤ q`.

mod howell;

use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::{construct_psi, phi};
use crate::dvr::{ChainRing, Dvr, DvrContext};
use crate::error::{Error, Result};
use crate::matrix::{companion, mat_eval, min_entry_valuation};
use crate::membership::{entry_valuations, render_residue, MembershipVerdict, Witness, WitnessKind};
use crate::parallel::first_failure;
use crate::poly::{enumerate_irreducibles, enumerate_monic, Poly, PolyRing};

pub use howell::HowellForm;

/// Membership of `g` (over `V/π^k`) in `N_k`: `g` must be divisible by every
/// monic `m` of degree `n`, equivalently `g(C_m) = 0`.
pub fn null_membership_residue<R: ChainRing>(ring: &R, g: &Poly<u64>, n: usize, threads: usize) -> Result<MembershipVerdict> {
    let px = PolyRing::new(ring.clone());
    let monics = enumerate_monic(ring, n)?;
    let total = monics.total();
    let hit = first_failure(total, threads, |i| {
        let m = monics.nth_monic(i);
        let r = px.rem_monic(g, &m).expect("monic");
        (!r.is_zero()).then(|| {
            let value = mat_eval(ring, &r, &companion(ring, &m).expect("monic"));
            Witness {
                kind: WitnessKind::NonVanishing,
                m: render_residue(ring, &m),
                m_coeffs: m.coeffs().to_vec(),
                m_index: i,
                precision: ring.precision(),
                coefficient: None,
                found: min_entry_valuation(ring, &value),
                required: ring.precision(),
                entry_valuations: entry_valuations(ring, &value),
            }
        })
    })?;
    Ok(match hit {
        Some((i, w)) => MembershipVerdict {
            member: false,
            witness: Some(w),
            checked_count: i + 1,
            precision_used: ring.precision(),
        },
        None => MembershipVerdict {
            member: true,
            witness: None,
            checked_count: total,
            precision_used: ring.precision(),
        },
    })
}

/// Membership of `g mod π^k` in `N_k = N_{V_k}(M_n(V_k))`.
pub fn null_membership<D: Dvr>(dvr: &D, g: &Poly<D::Elem>, k: u32, n: usize, threads: usize) -> Result<MembershipVerdict> {
    if k == 0 {
        return Ok(MembershipVerdict::trivially_member());
    }
    let ring = dvr.residue_ring(k)?;
    let gk = PolyRing::new(dvr.clone()).reduce(&ring, g);
    null_membership_residue(&ring, &gk, n, threads)
}

/// Result of a minimal-degree search for a monic common multiple.
#[derive(Clone, Debug)]
pub struct CommonMultiple {
    pub degree: usize,
    pub witness: Poly<u64>,
    pub rows_inserted: u64,
}

/// `x^j mod m` for `j = 0..=top`, as coefficient vectors of length `deg m`.
fn power_residues<R: ChainRing>(ring: &R, m: &Poly<u64>, top: usize) -> Vec<Vec<u64>> {
    let d = m.degree().expect("monic");
    let mut v = vec![0u64; d];
    v[0] = ring.one();
    let mut out = Vec::with_capacity(top + 1);
    out.push(v.clone());
    for _ in 0..top {
        // multiply by x and reduce by m
        let carry = v[d - 1];
        for i in (1..d).rev() {
            v[i] = ring.sub(&v[i - 1], &ring.mul(&carry, &m.coeffs()[i]));
        }
        v[0] = ring.neg(&ring.mul(&carry, &m.coeffs()[0]));
        out.push(v.clone());
    }
    out
}

/// Smallest `D` in `d_start..=d_max` admitting a monic `f` of degree `D`
/// divisible by every modulus, with the Howell-canonical `f`.
///
/// The unknowns are the lower coefficients `c_0..c_{D-1}`; divisibility by `m`
/// reads `Σ c_j (x^j mod m) = -(x^D mod m)` coefficientwise.
pub fn min_common_multiple<R: ChainRing>(
    ring: &R,
    moduli: &[Poly<u64>],
    d_start: usize,
    d_max: usize,
) -> Result<CommonMultiple> {
    let mut rows_total = 0;
    for d in d_start.max(1)..=d_max {
        let mut form = HowellForm::new(ring.clone(), d + 1);
        for m in moduli {
            let pw = power_residues(ring, m, d);
            for i in 0..pw[0].len() {
                let mut row: Vec<u64> = (0..d).map(|j| pw[j][i]).collect();
                row.push(ring.neg(&pw[d][i]));
                form.insert(row);
            }
            if !form.is_consistent() {
                break;
            }
        }
        rows_total += form.inserted();
        if form.is_consistent() {
            form.canonicalize();
            let mut coeffs = form.solve().expect("consistent Howell systems are solvable");
            coeffs.push(ring.one());
            return Ok(CommonMultiple {
                degree: d,
                witness: Poly::from_raw(coeffs),
                rows_inserted: rows_total,
            });
        }
    }
    Err(Error::SearchExhausted(d_max))
}

#[derive(Clone, Debug, Serialize)]
pub struct NullIdealReport {
    pub context: DvrContext,
    pub n: usize,
    pub k: u32,
    pub min_monic_degree: usize,
    pub witness_phi_k: String,
    pub witness_coeffs: Vec<u64>,
    pub witness_in_null_ideal: bool,
    pub generators_verified: bool,
    pub phi_power_matches: bool,
    pub rows_inserted: u64,
}

fn all_monics<R: ChainRing>(ring: &R, n: usize) -> Result<Vec<Poly<u64>>> {
    Ok(enumerate_monic(ring, n)?.collect())
}

/// Whether `π^{k-j} Φ^j ∈ N_k` for `1 ≤ j ≤ k`.
pub fn generators_in_null_ideal<D: Dvr>(dvr: &D, n: usize, k: u32, threads: usize) -> Result<bool> {
    let px = PolyRing::new(dvr.clone());
    let phi = phi(dvr, n)?;
    for j in 1..=k {
        let g = px.scale_pi_pow(&px.pow(&phi, j), k - j);
        if !null_membership(dvr, &g, k, n, threads)?.member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The minimal degree of a monic element of `N_k`, searching `D` from
/// `d_start` up to `d_max`.
pub fn minimal_monic_degree_from<D: Dvr>(
    dvr: &D,
    n: usize,
    k: u32,
    d_start: usize,
    d_max: usize,
    threads: usize,
) -> Result<NullIdealReport> {
    if k == 0 || n == 0 {
        return Err(Error::BadArity(format!("need k ≥ 1 and n ≥ 1, got k={k}, n={n}")));
    }
    let ring = dvr.residue_ring(k)?;
    let found = min_common_multiple(&ring, &all_monics(&ring, n)?, d_start, d_max)?;
    let witness_in = null_membership_residue(&ring, &found.witness, n, threads)?.member;
    let deg_phi = phi(dvr, n)?.degree().expect("nonzero");
    Ok(NullIdealReport {
        context: dvr.context(),
        n,
        k,
        min_monic_degree: found.degree,
        witness_phi_k: render_residue(&ring, &found.witness),
        witness_coeffs: found.witness.coeffs().to_vec(),
        witness_in_null_ideal: witness_in,
        generators_verified: generators_in_null_ideal(dvr, n, k, threads)?,
        phi_power_matches: found.degree == k as usize * deg_phi,
        rows_inserted: found.rows_inserted,
    })
}

/// `deg φ_k`, ascending from `D = 1`. `d_max` defaults to `k·deg Φ`, where
/// `Φ^k` always lies in `N_k`.
pub fn minimal_monic_degree<D: Dvr>(dvr: &D, n: usize, k: u32, d_max: Option<usize>) -> Result<NullIdealReport> {
    let deg_phi = crate::construct::phi_degree(dvr.residue_size(), n);
    minimal_monic_degree_from(dvr, n, k, 1, d_max.unwrap_or(k as usize * deg_phi), 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct LcmReport {
    pub iota: String,
    pub k: u32,
    pub n: usize,
    /// `D = deg ι · ⌊n / deg ι⌋`.
    pub primary_degree: usize,
    pub moduli: usize,
    pub degree: usize,
    pub witness: String,
    pub expected: usize,
    pub matches: bool,
}

/// Every monic `m` of degree `deg ι·r` over `V_k` with `m ≡ ι^r mod π`.
pub fn primary_moduli<R: ChainRing>(ring: &R, iota: &Poly<u64>, r: u32) -> Result<Vec<Poly<u64>>> {
    let px = PolyRing::new(ring.clone());
    let field = ring.at_precision(1)?;
    let fx = PolyRing::new(field.clone());
    let iota_bar = fx.from_coeffs(iota.coeffs().iter().map(|c| ring.residue_of(c)).collect());
    let base = px.lift_residue(&fx.pow(&iota_bar, r));
    let d = base.degree().expect("monic");
    let step = ring.pi_pow(1);
    let choices = ring.cardinality() / ring.residue_size();
    let total = choices
        .checked_pow(d as u32)
        .ok_or_else(|| Error::TooLarge(format!("{choices}^{d} primary moduli")))?;
    Ok((0..total)
        .map(|mut idx| {
            let mut coeffs = base.coeffs().to_vec();
            for c in coeffs.iter_mut().take(d) {
                let t = idx % choices;
                idx /= choices;
                *c = ring.add(c, &ring.mul(&step, &t));
            }
            Poly::from_raw(coeffs)
        })
        .collect())
}

/// Minimal degree of a monic common multiple of the `ι`-primary polynomials
/// of degree `D = deg ι·⌊n/deg ι⌋` over `V_k`. For `k ≤ q` it equals `k·D`.
pub fn lcm_primary<D: Dvr>(dvr: &D, iota: &Poly<u64>, k: u32, n: usize, d_max: Option<usize>) -> Result<LcmReport> {
    let ring = dvr.residue_ring(k)?;
    let field = ring.at_precision(1)?;
    let deg_iota = iota.degree().filter(|&d| d >= 1 && d <= n).ok_or_else(|| {
        Error::BadArity(format!("ι must have degree between 1 and n = {n}"))
    })?;
    if !crate::poly::is_irreducible(&field, &ring_to_field(&ring, iota)) {
        return Err(Error::HypothesisViolation("ι must be monic irreducible mod π".into()));
    }
    let r = (n / deg_iota) as u32;
    let moduli = primary_moduli(&ring, iota, r)?;
    let big_d = deg_iota * r as usize;
    let found = min_common_multiple(&ring, &moduli, big_d, d_max.unwrap_or(k as usize * big_d + big_d))?;
    let expected = k as usize * big_d;
    Ok(LcmReport {
        iota: render_residue(&field, &ring_to_field(&ring, iota)),
        k,
        n,
        primary_degree: big_d,
        moduli: moduli.len(),
        degree: found.degree,
        witness: render_residue(&ring, &found.witness),
        expected,
        matches: found.degree == expected,
    })
}

fn ring_to_field<R: ChainRing>(ring: &R, f: &Poly<u64>) -> Poly<u64> {
    Poly::from_raw(f.coeffs().iter().map(|c| ring.residue_of(c)).collect())
}

/// Lcm degrees for every monic irreducible `ι` of degree at most `n`.
pub fn all_primary_lcms<D: Dvr>(dvr: &D, k: u32, n: usize) -> Result<Vec<LcmReport>> {
    let field = dvr.residue_ring(1)?;
    let mut out = Vec::new();
    for d in 1..=n {
        for iota in enumerate_irreducibles(&field, d) {
            out.push(lcm_primary(dvr, &iota, k, n, None)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiGap {
    pub degree: usize,
    pub in_null_ideal: bool,
    pub phi_power_degree: usize,
    pub strict_gap: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub context: DvrContext,
    pub n: usize,
    pub k: u32,
    pub q: u64,
    pub deg_phi: usize,
    pub generators_in_null_ideal: bool,
    pub min_monic_degree: Option<usize>,
    /// `Some` when `k ≤ q`, where `deg φ_k = k·deg Φ` is claimed.
    pub degree_equality: Option<bool>,
    /// Present for `k = q + 1`.
    pub psi: Option<PsiGap>,
    pub pass: bool,
}

impl PhiReport {
    pub fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Checks `N_k = (Φ, π)^k` for `k ≤ q` (generators and the minimal degree
/// `k·deg Φ`), and for `k = q + 1` that `ψ ∈ N_k` has degree below
/// `(q+1)·deg Φ`. Beyond `q + 1` only the generators are checked.
pub fn verify_phi_theorem<D: Dvr>(dvr: &D, n: usize, k: u32, threads: usize) -> Result<PhiReport> {
    if k == 0 {
        return Err(Error::BadArity("k must be at least 1".into()));
    }
    let q = dvr.residue_size();
    let deg_phi = phi(dvr, n)?.degree().expect("nonzero");
    let generators = generators_in_null_ideal(dvr, n, k, threads)?;
    let mut report = PhiReport {
        context: dvr.context(),
        n,
        k,
        q,
        deg_phi,
        generators_in_null_ideal: generators,
        min_monic_degree: None,
        degree_equality: None,
        psi: None,
        pass: generators,
    };
    if u64::from(k) <= q {
        let r = minimal_monic_degree_from(dvr, n, k, 1, k as usize * deg_phi, threads)?;
        let eq = r.min_monic_degree == k as usize * deg_phi && r.witness_in_null_ideal;
        report.min_monic_degree = Some(r.min_monic_degree);
        report.degree_equality = Some(eq);
        report.pass &= eq;
    } else if u64::from(k) == q + 1 && n >= 2 {
        let psi = construct_psi(dvr, n)?;
        let deg_psi = psi.degree().expect("nonzero");
        let in_null = null_membership(dvr, &psi, k, n, threads)?.member;
        let r = minimal_monic_degree_from(dvr, n, k, 1, deg_psi, threads)?;
        let gap = PsiGap {
            degree: deg_psi,
            in_null_ideal: in_null,
            phi_power_degree: k as usize * deg_phi,
            strict_gap: deg_psi < k as usize * deg_phi,
        };
        report.min_monic_degree = Some(r.min_monic_degree);
        report.pass &= gap.in_null_ideal && gap.strict_gap && r.min_monic_degree <= deg_psi;
        report.psi = Some(gap);
    }
    Ok(report)
}
