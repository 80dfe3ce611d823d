use serde::Serialize;

use crate::construct::phi_degree;
use crate::dvr::{Dvr, DvrContext};
use crate::error::{Error, Result};
use crate::nullideal::minimal_monic_degree_from;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiEntry {
    pub d: usize,
    /// `⌊d / deg Φ⌋`, defined for `d ≤ q·deg Φ`.
    pub mu_formula: Option<u32>,
    pub mu_oracle: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiSequenceTable {
    pub context: DvrContext,
    pub n: usize,
    pub deg_phi: usize,
    /// `(k, deg φ_k)` for every `k` with `deg φ_k ≤ d_max`.
    pub phi_k_degrees: Vec<(u32, usize)>,
    pub entries: Vec<PiEntry>,
    /// Degrees `d` with `μ_d > μ_{d-1}`.
    pub jumps: Vec<usize>,
    pub agreement: bool,
}

/// `μ_d` for `0 ≤ d ≤ d_max`, from the closed formula and from the minimal
/// degrees of the null ideals `N_k` (`μ_d = max{k : deg φ_k ≤ d}`).
pub fn mu_table<D: Dvr>(dvr: &D, n: usize, d_max: usize, threads: usize) -> Result<PiSequenceTable> {
    let q = dvr.residue_size();
    let deg_phi = phi_degree(q, n);
    let formula_range = q as usize * deg_phi;

    let mut phi_k_degrees = Vec::new();
    let mut start = 1;
    for k in 1u32.. {
        match minimal_monic_degree_from(dvr, n, k, start, d_max, threads) {
            Ok(report) => {
                start = report.min_monic_degree;
                phi_k_degrees.push((k, report.min_monic_degree));
            }
            Err(Error::SearchExhausted(_)) => break,
            Err(e) => return Err(e),
        }
    }

    let entries: Vec<PiEntry> = (0..=d_max)
        .map(|d| PiEntry {
            d,
            mu_formula: (d <= formula_range).then(|| (d / deg_phi) as u32),
            mu_oracle: phi_k_degrees.iter().filter(|(_, deg)| *deg <= d).count() as u32,
        })
        .collect();
    let jumps = entries
        .windows(2)
        .filter(|w| w[1].mu_oracle > w[0].mu_oracle)
        .map(|w| w[1].d)
        .collect();
    let agreement = entries
        .iter()
        .all(|e| e.mu_formula.map_or(true, |f| f == e.mu_oracle));
    Ok(PiSequenceTable {
        context: dvr.context(),
        n,
        deg_phi,
        phi_k_degrees,
        entries,
        jumps,
        agreement,
    })
}
