use crate::dvr::ChainRing;

/// Row-echelon form over a chain ring with the Howell property: every row with
/// pivot `π^e` has its annihilator multiple `π^{M-e}·row` in the span of the
/// rows below it. Rows are kept one per pivot column, pivots normalized to
/// exactly `π^e`.
///
/// With the right-hand side as the last column, the system is consistent iff
/// no pivot lands in that column.
#[derive(Clone, Debug)]
pub struct HowellForm<R> {
    ring: R,
    width: usize,
    rows: Vec<Option<(u32, Vec<u64>)>>,
    inserted: u64,
}

impl<R: ChainRing> HowellForm<R> {
    /// An empty form for `width` columns, the last of which is treated as the
    /// right-hand side by [`HowellForm::is_consistent`] and [`HowellForm::solve`].
    pub fn new(ring: R, width: usize) -> Self {
        HowellForm {
            ring,
            width,
            rows: vec![None; width],
            inserted: 0,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn inserted(&self) -> u64 {
        self.inserted
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().flatten().count()
    }

    pub fn pivot(&self, col: usize) -> Option<(u32, &[u64])> {
        self.rows[col].as_ref().map(|(e, r)| (*e, r.as_slice()))
    }

    fn axpy(&self, v: &mut [u64], c: u64, row: &[u64], from: usize) {
        for j in from..self.width {
            if row[j] != 0 {
                v[j] = self.ring.sub(&v[j], &self.ring.mul(&c, &row[j]));
            }
        }
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        assert_eq!(row.len(), self.width, "row width");
        self.inserted += 1;
        let mut work = vec![row];
        while let Some(mut v) = work.pop() {
            let mut start = 0;
            while let Some(c) = (start..self.width).find(|&j| v[j] != 0) {
                start = c;
                let (e, w) = self.ring.normalize(&v[c]).expect("nonzero entry");
                match &self.rows[c] {
                    Some((f, r)) if e >= *f => {
                        let coef = self.ring.div_pi_pow(&v[c], *f);
                        let r = r.clone();
                        self.axpy(&mut v, coef, &r, c);
                        debug_assert_eq!(v[c], 0);
                    }
                    _ => {
                        for x in v[c..].iter_mut() {
                            *x = self.ring.mul(x, &w);
                        }
                        let m = self.ring.precision();
                        if e > 0 {
                            let s = self.ring.pi_pow(m - e);
                            work.push(v.iter().map(|x| self.ring.mul(x, &s)).collect());
                        }
                        if let Some((_, old)) = self.rows[c].replace((e, v)) {
                            work.push(old);
                        }
                        break;
                    }
                }
            }
        }
    }

    /// Whether no pivot sits in the right-hand-side column.
    pub fn is_consistent(&self) -> bool {
        self.width == 0 || self.rows[self.width - 1].is_none()
    }

    /// Reduces every entry above a pivot `π^e` to a canonical residue mod `π^e`,
    /// which makes the form unique for a given row span.
    pub fn canonicalize(&mut self) {
        for c in (0..self.width).rev() {
            let Some((e, pr)) = self.rows[c].clone() else {
                continue;
            };
            for r in 0..c {
                if let Some((_, row)) = self.rows[r].as_mut() {
                    let (_, high) = self.ring.split_at(&row[c], e);
                    if high != 0 {
                        for j in c..self.width {
                            row[j] = self.ring.sub(&row[j], &self.ring.mul(&high, &pr[j]));
                        }
                    }
                }
            }
        }
    }

    /// One solution `x` of `Σ_j row_j x_j = rhs` for every inserted row, with
    /// the right-hand side stored as the last column. Free variables are 0.
    pub fn solve(&self) -> Option<Vec<u64>> {
        if !self.is_consistent() {
            return None;
        }
        let n = self.width - 1;
        let mut x = vec![0u64; n];
        for c in (0..n).rev() {
            let Some((e, row)) = &self.rows[c] else {
                continue;
            };
            let mut resid = row[n];
            for j in c + 1..n {
                resid = self.ring.sub(&resid, &self.ring.mul(&row[j], &x[j]));
            }
            if !self.ring.valuation(&resid).is_at_least(*e) {
                return None;
            }
            x[c] = self.ring.div_pi_pow(&resid, *e);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{Ring, ZpMod};
    use proptest::prelude::*;

    fn satisfies(ring: &ZpMod, rows: &[Vec<u64>], x: &[u64]) -> bool {
        rows.iter().all(|r| {
            let n = r.len() - 1;
            let lhs = (0..n).fold(0, |acc, j| ring.add(&acc, &ring.mul(&r[j], &x[j])));
            lhs == r[n]
        })
    }

    #[test]
    fn zero_divisor_system() {
        // 2x = 2 mod 4 has solutions; 2x = 1 does not.
        let r = ZpMod::new(2, 2).unwrap();
        let mut h = HowellForm::new(r.clone(), 2);
        h.insert(vec![2, 2]);
        assert_eq!(h.solve(), Some(vec![1]));
        h.insert(vec![2, 1]);
        assert!(!h.is_consistent());
    }

    #[test]
    fn inconsistency_from_annihilator() {
        // 2x + 2y = 1 over Z/4 has a unit-free pivot; only 2·row exposes 0 = 2.
        let r = ZpMod::new(2, 2).unwrap();
        let mut h = HowellForm::new(r, 3);
        h.insert(vec![2, 2, 1]);
        assert!(!h.is_consistent());
        assert_eq!(h.solve(), None);
    }

    #[test]
    fn canonical_is_unique() {
        let r = ZpMod::new(3, 2).unwrap();
        let rows = vec![vec![3, 1, 2, 5], vec![0, 3, 6, 0], vec![1, 1, 1, 1]];
        let mut a = HowellForm::new(r.clone(), 4);
        let mut b = HowellForm::new(r.clone(), 4);
        for row in &rows {
            a.insert(row.clone());
        }
        for row in rows.iter().rev() {
            b.insert(row.clone());
        }
        // adding a combination does not change the span
        let comb: Vec<u64> = (0..4).map(|j| r.add(&rows[0][j], &r.mul(&4, &rows[2][j]))).collect();
        b.insert(comb);
        a.canonicalize();
        b.canonicalize();
        assert_eq!(a.rows, b.rows);
    }

    fn brute_solvable(ring: &ZpMod, rows: &[Vec<u64>], n: usize) -> bool {
        let card = ring.cardinality();
        (0..card.pow(n as u32)).any(|mut i| {
            let x: Vec<u64> = (0..n)
                .map(|_| {
                    let d = i % card;
                    i /= card;
                    d
                })
                .collect();
            satisfies(ring, rows, &x)
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            p in prop_oneof![Just(2u64), Just(3)],
            m in 1u32..4,
            seed in proptest::collection::vec(0u64..1000, 12),
        ) {
            let ring = ZpMod::new(p, m).unwrap();
            let card = ring.cardinality();
            let rows: Vec<Vec<u64>> = seed.chunks(3).map(|c| c.iter().map(|x| x % card).collect()).collect();
            let mut h = HowellForm::new(ring.clone(), 3);
            for r in &rows {
                h.insert(r.clone());
            }
            let expected = brute_solvable(&ring, &rows, 2);
            prop_assert_eq!(h.is_consistent(), expected);
            if let Some(x) = h.solve() {
                prop_assert!(satisfies(&ring, &rows, &x));
            } else {
                prop_assert!(!expected);
            }
        }
    }
}
