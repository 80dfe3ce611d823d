//! Square matrices over a ring: companion matrices, polynomial evaluation,
//! division-free characteristic polynomials and powers.

use serde_json::{json, Value};

use crate::dvr::{ChainRing, Ring, Valuation};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};

/// Row-major `n × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(<[T]>::to_vec).collect()
    }
}

pub fn zero<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix {
        n,
        entries: vec![ring.zero(); n * n],
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn scalar<R: Ring>(ring: &R, n: usize, c: &R::Elem) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |i, j| if i == j { c.clone() } else { ring.zero() })
}

pub fn is_zero<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.entries.iter().all(|e| ring.is_zero(e))
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(Matrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.add(x, y)).collect(),
    })
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    Ok(Matrix {
        n: a.n,
        entries: a.entries.iter().zip(&b.entries).map(|(x, y)| ring.sub(x, y)).collect(),
    })
}

pub fn scale<R: Ring>(ring: &R, a: &Matrix<R::Elem>, c: &R::Elem) -> Matrix<R::Elem> {
    Matrix {
        n: a.n,
        entries: a.entries.iter().map(|x| ring.mul(x, c)).collect(),
    }
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let n = a.n;
    let mut out = vec![ring.zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a.entries[i * n + k];
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let t = ring.mul(aik, &b.entries[k * n + j]);
                out[i * n + j] = ring.add(&out[i * n + j], &t);
            }
        }
    }
    Ok(Matrix { n, entries: out })
}

pub fn mat_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if v.len() != a.n {
        return Err(Error::DimensionMismatch(a.n, v.len()));
    }
    Ok(a.entries
        .chunks(a.n)
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect())
}

/// Companion matrix of a monic `m` of degree `n`: ones on the subdiagonal and
/// the negated coefficients of `m` in the last column.
pub fn companion<R: Ring>(ring: &R, m: &Poly<R::Elem>) -> Result<Matrix<R::Elem>> {
    let px = PolyRing::new(ring.clone());
    if !px.is_monic(m) {
        return Err(Error::NonMonic);
    }
    let n = m.degree().expect("monic is nonzero");
    if n == 0 {
        return Err(Error::BadArity("companion matrix needs degree ≥ 1".into()));
    }
    let mut c = zero(ring, n);
    for i in 1..n {
        c.set(i, i - 1, ring.one());
    }
    for i in 0..n {
        c.set(i, n - 1, ring.neg(&m.coeffs()[i]));
    }
    Ok(c)
}

/// `g(A)` by Horner's rule.
pub fn mat_eval<R: Ring>(ring: &R, g: &Poly<R::Elem>, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.n;
    let mut acc = zero(ring, n);
    for c in g.coeffs().iter().rev() {
        acc = mul(ring, &acc, a).expect("same dimension");
        for i in 0..n {
            let d = ring.add(acc.get(i, i), c);
            acc.set(i, i, d);
        }
    }
    acc
}

pub fn mat_pow<R: Ring>(ring: &R, a: &Matrix<R::Elem>, mut j: u64) -> Matrix<R::Elem> {
    let mut result = identity(ring, a.n);
    let mut base = a.clone();
    while j > 0 {
        if j & 1 == 1 {
            result = mul(ring, &result, &base).expect("same dimension");
        }
        j >>= 1;
        if j > 0 {
            base = mul(ring, &base, &base).expect("same dimension");
        }
    }
    result
}

/// `det(yI - A)` by the Samuelson–Berkowitz recursion, which uses only ring
/// operations and so is valid over `Z/p^M` even when `p ≤ n`.
pub fn charpoly<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Poly<R::Elem> {
    let n = a.n;
    let px = PolyRing::new(ring.clone());
    if n == 0 {
        return px.one();
    }
    // Coefficients highest degree first, for the trailing block A[r.., r..].
    let mut vec = vec![ring.one(), ring.neg(a.get(n - 1, n - 1))];
    for r in (0..n - 1).rev() {
        let size = n - r;
        // First column of the Toeplitz matrix: 1, -a_rr, -R C, -R A1 C, ...
        let mut col = Vec::with_capacity(size + 1);
        col.push(ring.one());
        col.push(ring.neg(a.get(r, r)));
        let mut v: Vec<R::Elem> = (r + 1..n).map(|i| a.get(i, r).clone()).collect();
        for k in 0..size - 1 {
            if k > 0 {
                v = (r + 1..n)
                    .map(|i| {
                        (r + 1..n).zip(&v).fold(ring.zero(), |acc, (j, x)| {
                            ring.add(&acc, &ring.mul(a.get(i, j), x))
                        })
                    })
                    .collect();
            }
            let rc = (r + 1..n)
                .zip(&v)
                .fold(ring.zero(), |acc, (j, x)| ring.add(&acc, &ring.mul(a.get(r, j), x)));
            col.push(ring.neg(&rc));
        }
        // new = T · vec, with T lower-triangular Toeplitz of shape (size+1) × size
        let next: Vec<R::Elem> = (0..=size)
            .map(|i| {
                (0..vec.len()).filter(|&j| j <= i).fold(ring.zero(), |acc, j| {
                    ring.add(&acc, &ring.mul(&col[i - j], &vec[j]))
                })
            })
            .collect();
        vec = next;
    }
    vec.reverse();
    px.from_coeffs(vec)
}

/// Minimum valuation over the entries.
pub fn min_entry_valuation<R: ChainRing>(ring: &R, a: &Matrix<u64>) -> Valuation {
    a.entries
        .iter()
        .map(|e| ring.valuation(e))
        .filter_map(Valuation::finite)
        .min()
        .map_or(Valuation::AtLeast(ring.precision()), Valuation::Finite)
}

/// `{"n": …, "M": …, "entries": [["…"]]}`.
pub fn to_json<R: ChainRing>(ring: &R, a: &Matrix<u64>) -> Value {
    let rows: Vec<Vec<String>> = a
        .rows()
        .into_iter()
        .map(|r| r.iter().map(|e| ring.render(e)).collect())
        .collect();
    json!({ "n": a.n, "M": ring.precision(), "entries": rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{FiniteField, FqtMod, ZpMod};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn z(p: u64, m: u32) -> ZpMod {
        ZpMod::new(p, m).unwrap()
    }

    #[test]
    fn companion_examples() {
        let r = z(2, 3);
        let px = PolyRing::new(r.clone());
        let c = companion(&r, &px.from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 0], vec![1, 0]]);
        let f2 = z(2, 1);
        let px2 = PolyRing::new(f2.clone());
        let c = companion(&f2, &px2.from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(c.rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(companion(&r, &px.from_ints(&[0, 2])), Err(Error::NonMonic));
    }

    #[test]
    fn eval_examples() {
        let r = z(2, 4);
        let px = PolyRing::new(r.clone());
        let c = companion(&r, &px.from_ints(&[0, 0, 1])).unwrap();
        // h = x(x^2 + 2): h(C) = 2C
        let h = px.from_ints(&[0, 2, 0, 1]);
        let hc = mat_eval(&r, &h, &c);
        assert_eq!(hc, scale(&r, &c, &2));
        assert_eq!(min_entry_valuation(&r, &hc), Valuation::Finite(1));

        let f2 = z(2, 1);
        let px2 = PolyRing::new(f2.clone());
        let phi = px2.from_ints(&[0, 0, 1, -1, 0, -1, 1]);
        let c = companion(&f2, &px2.from_ints(&[1, 1, 1])).unwrap();
        assert!(is_zero(&f2, &mat_eval(&f2, &phi, &c)));
        let a = Matrix::from_rows(vec![vec![1, 2], vec![3, 0]]).unwrap();
        assert_eq!(mat_eval(&r, &px.one(), &a), identity(&r, 2));
    }

    #[test]
    fn charpoly_examples() {
        let r = z(2, 4);
        let px = PolyRing::new(r.clone());
        assert_eq!(charpoly(&r, &identity(&r, 2)), px.from_ints(&[1, -2, 1]));
        let m = px.from_ints(&[-2, 0, 1]);
        let cp = charpoly(&r, &companion(&r, &m).unwrap());
        assert_eq!(cp, m);
        assert_eq!(r.valuation(&cp.coeffs()[1]), Valuation::AtLeast(4));
        assert_eq!(r.valuation(&cp.coeffs()[0]), Valuation::Finite(1));
    }

    #[test]
    fn powers() {
        let r = z(3, 2);
        let px = PolyRing::new(r.clone());
        let c2 = companion(&r, &px.from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(mat_pow(&r, &c2, 0), identity(&r, 2));
        assert!(is_zero(&r, &mat_pow(&r, &c2, 2)));
        let c3 = companion(&r, &px.from_ints(&[0, 0, 0, 1])).unwrap();
        let sq = mat_pow(&r, &c3, 2);
        assert_eq!(sq.rows(), vec![vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn charpoly_over_fqt() {
        let ring = FqtMod::new(Arc::new(FiniteField::new(2, &[1, 1, 1]).unwrap()), 3).unwrap();
        let px = PolyRing::new(ring.clone());
        let m = px.from_coeffs(vec![7, 13, 2, 1]);
        assert_eq!(charpoly(&ring, &companion(&ring, &m).unwrap()), m);
    }

    proptest! {
        #[test]
        fn cayley_hamilton(n in 1usize..5, m in 1u32..7, seed in proptest::collection::vec(0u64..u64::MAX, 16)) {
            let r = z(2, m);
            let a = Matrix::from_fn(n, |i, j| seed[i * 4 + j] % r.modulus());
            let cp = charpoly(&r, &a);
            prop_assert!(is_zero(&r, &mat_eval(&r, &cp, &a)));
        }

        #[test]
        fn companion_charpoly(c in proptest::collection::vec(0u64..125, 1..5)) {
            let r = z(5, 3);
            let px = PolyRing::new(r.clone());
            let mut coeffs = c;
            coeffs.push(1);
            let m = px.from_coeffs(coeffs);
            prop_assert_eq!(charpoly(&r, &companion(&r, &m).unwrap()), m);
        }

        #[test]
        fn eval_commutes_with_reduction(
            g in proptest::collection::vec(0u64..81, 0..8),
            a in proptest::collection::vec(0u64..81, 9),
            low in 1u32..4,
        ) {
            let hi = z(3, 4);
            let lo = z(3, low);
            let pxh = PolyRing::new(hi.clone());
            let pxl = PolyRing::new(lo.clone());
            let g = pxh.from_coeffs(g);
            let a = Matrix::from_fn(3, |i, j| a[i * 3 + j]);
            let reduce_mat = |m: &Matrix<u64>| Matrix::from_fn(3, |i, j| lo.reduce_from(&hi, m.get(i, j)).unwrap());
            let left = reduce_mat(&mat_eval(&hi, &g, &a));
            let right = mat_eval(&lo, &pxl.reduce_from(&hi, &g).unwrap(), &reduce_mat(&a));
            prop_assert_eq!(left, right);
        }
    }
}
