//! Lipschitz and Hurwitz quaternions modulo `p^M` for odd `p`, the explicit
//! isomorphism with `M_2(Z/p^M)` and the transfer of integer-valuedness.

use serde::Serialize;

use crate::dvr::{ChainRing, Ring, Zp, ZpMod};
use crate::error::{Error, Result};
use crate::matrix::{self, charpoly, Matrix};
use crate::nullideal::{minimal_monic_degree, HowellForm};
use crate::parallel::first_failure;
use crate::poly::{KPoly, Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuatOrder {
    Lipschitz,
    Hurwitz,
}

impl std::str::FromStr for QuatOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lipschitz" => Ok(QuatOrder::Lipschitz),
            "hurwitz" => Ok(QuatOrder::Hurwitz),
            _ => Err(Error::Parse(format!("unknown order {s:?}"))),
        }
    }
}

/// `a0 + a1 i + a2 j + a3 k` over `Z/p^M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuatR {
    pub coords: [u64; 4],
    pub order: QuatOrder,
}

/// Quaternion arithmetic over `Z/p^M`: `i^2 = j^2 = -1`, `ij = k = -ji`.
#[derive(Clone, Debug)]
pub struct QuatAlgebra {
    ring: ZpMod,
    order: QuatOrder,
}

impl QuatAlgebra {
    pub fn new(p: u64, precision: u32, order: QuatOrder) -> Result<Self> {
        if p == 2 {
            return Err(Error::Unsupported("quaternion orders ramify at 2".into()));
        }
        Ok(QuatAlgebra {
            ring: ZpMod::new(p, precision)?,
            order,
        })
    }

    pub fn ring(&self) -> &ZpMod {
        &self.ring
    }

    pub fn elem(&self, coords: [u64; 4]) -> QuatR {
        QuatR {
            coords: coords.map(|c| c % self.ring.modulus()),
            order: self.order,
        }
    }

    /// `(h0 + h1 i + h2 j + h3 k) / 2`, the Hurwitz half-integer form; 2 is a
    /// unit for odd `p`, so this lands in the same coordinates.
    pub fn from_halves(&self, h: [i64; 4]) -> QuatR {
        let half = self.ring.unit_inverse(&2).expect("p is odd");
        self.elem(h.map(|c| self.ring.mul(&self.ring.from_int(c), &half)))
    }

    pub fn from_int(&self, c: u64) -> QuatR {
        self.elem([c, 0, 0, 0])
    }

    pub fn add(&self, x: &QuatR, y: &QuatR) -> QuatR {
        let r = &self.ring;
        self.elem(std::array::from_fn(|t| r.add(&x.coords[t], &y.coords[t])))
    }

    pub fn mul(&self, x: &QuatR, y: &QuatR) -> QuatR {
        let r = &self.ring;
        let [a0, a1, a2, a3] = x.coords;
        let [b0, b1, b2, b3] = y.coords;
        let dot = |terms: [(u64, u64, bool); 4]| {
            terms.iter().fold(0, |acc, &(u, v, neg)| {
                let t = r.mul(&u, &v);
                if neg {
                    r.sub(&acc, &t)
                } else {
                    r.add(&acc, &t)
                }
            })
        };
        self.elem([
            dot([(a0, b0, false), (a1, b1, true), (a2, b2, true), (a3, b3, true)]),
            dot([(a0, b1, false), (a1, b0, false), (a2, b3, false), (a3, b2, true)]),
            dot([(a0, b2, false), (a1, b3, true), (a2, b0, false), (a3, b1, false)]),
            dot([(a0, b3, false), (a1, b2, false), (a2, b1, true), (a3, b0, false)]),
        ])
    }

    /// Reduced norm `a0^2 + a1^2 + a2^2 + a3^2`.
    pub fn norm(&self, x: &QuatR) -> u64 {
        x.coords
            .iter()
            .fold(0, |acc, c| self.ring.add(&acc, &self.ring.mul(c, c)))
    }

    /// `g(x)` by Horner's rule; `g` has coefficients in `Z/p^M`.
    pub fn eval(&self, g: &Poly<u64>, x: &QuatR) -> QuatR {
        g.coeffs().iter().rev().fold(self.from_int(0), |acc, c| {
            self.add(&self.mul(&acc, x), &self.from_int(*c))
        })
    }

    pub fn is_zero(&self, x: &QuatR) -> bool {
        x.coords == [0; 4]
    }

    pub fn cardinality(&self) -> u64 {
        self.ring.cardinality().pow(4)
    }

    /// The `index`-th element in lexicographic coordinate order.
    pub fn nth(&self, mut index: u64) -> QuatR {
        let m = self.ring.modulus();
        let coords = std::array::from_fn(|_| {
            let c = index % m;
            index /= m;
            c
        });
        self.elem(coords)
    }
}

/// The isomorphism `i ↦ [[0,-1],[1,0]]`, `j ↦ [[a,b],[b,-a]]` with
/// `a^2 + b^2 = -1` in `Z/p^M`.
#[derive(Clone, Debug, Serialize)]
pub struct QuatIso {
    pub p: u64,
    pub precision: u32,
    pub a: u64,
    pub b: u64,
    #[serde(skip)]
    images: [Matrix<u64>; 4],
    pub relations_hold: bool,
    pub spans: bool,
}

fn sum_of_squares_is_minus_one(r: &ZpMod, a: u64, b: u64) -> bool {
    r.add(&r.add(&r.mul(&a, &a), &r.mul(&b, &b)), &1) == 0
}

/// Hensel-lifts `a^2 + b^2 ≡ -1` from `p` to `p^M`, moving `b` (or `a`
/// when `b ≡ 0 mod p`).
fn hensel(p: u64, precision: u32) -> Result<(u64, u64)> {
    let f = ZpMod::new(p, 1)?;
    let (a, b) = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| sum_of_squares_is_minus_one(&f, a, b))
        .ok_or(Error::NoSolution(p))?;
    let r = ZpMod::new(p, precision)?;
    let lift = |fixed: u64, mut moving: u64| {
        for _ in 0..precision {
            let err = r.add(&r.add(&r.mul(&fixed, &fixed), &r.mul(&moving, &moving)), &1);
            let inv = r.unit_inverse(&r.mul(&2, &moving)).expect("unit derivative");
            moving = r.sub(&moving, &r.mul(&err, &inv));
        }
        moving
    };
    let (a, b) = if b % p != 0 {
        (a, lift(a, b))
    } else {
        (lift(b, a), b)
    };
    let m = r.modulus();
    Ok((a.min(m - a) % m, b.min(m - b) % m))
}

/// `det` of a square matrix from its characteristic polynomial.
fn det<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let c = charpoly(ring, a);
    let c0 = c.coeff(0).cloned().unwrap_or_else(|| ring.zero());
    if a.dim() % 2 == 0 {
        c0
    } else {
        ring.neg(&c0)
    }
}

pub fn find_iso(p: u64, precision: u32) -> Result<QuatIso> {
    if p == 2 {
        return Err(Error::Unsupported("needs an odd prime".into()));
    }
    let (a, b) = hensel(p, precision)?;
    let r = ZpMod::new(p, precision)?;
    if !sum_of_squares_is_minus_one(&r, a, b) {
        return Err(Error::NoSolution(p));
    }
    let neg = |x: u64| r.neg(&x);
    let one = matrix::identity(&r, 2);
    let mi = Matrix::from_rows(vec![vec![0, neg(1)], vec![1, 0]])?;
    let mj = Matrix::from_rows(vec![vec![a, b], vec![b, neg(a)]])?;
    let mk = matrix::mul(&r, &mi, &mj)?;
    let minus_one = matrix::scalar(&r, 2, &neg(1));
    let relations_hold = matrix::mul(&r, &mi, &mi)? == minus_one
        && matrix::mul(&r, &mj, &mj)? == minus_one
        && mk == matrix::scale(&r, &matrix::mul(&r, &mj, &mi)?, &neg(1));
    let images = [one, mi, mj, mk];
    let span = Matrix::from_fn(4, |row, col| images[col].entries()[row]);
    let spans = r.unit_inverse(&det(&r, &span)).is_some();
    Ok(QuatIso {
        p,
        precision,
        a,
        b,
        images,
        relations_hold,
        spans,
    })
}

impl QuatIso {
    pub fn ring(&self) -> ZpMod {
        ZpMod::new(self.p, self.precision).expect("validated")
    }

    pub fn image(&self, x: &QuatR) -> Matrix<u64> {
        let r = self.ring();
        let mut acc = matrix::zero(&r, 2);
        for (c, m) in x.coords.iter().zip(&self.images) {
            acc = matrix::add(&r, &acc, &matrix::scale(&r, m, c)).expect("2x2");
        }
        acc
    }

    /// The quaternion mapping to `target`, found by solving the 4×4 linear
    /// system over `Z/p^M`.
    pub fn preimage(&self, target: &Matrix<u64>, order: QuatOrder) -> Result<QuatR> {
        if target.dim() != 2 {
            return Err(Error::DimensionMismatch(2, target.dim()));
        }
        let mut form = HowellForm::new(self.ring(), 5);
        for e in 0..4 {
            let mut row: Vec<u64> = self.images.iter().map(|m| m.entries()[e]).collect();
            row.push(target.entries()[e]);
            form.insert(row);
        }
        let x = form
            .solve()
            .ok_or_else(|| Error::UnexpectedVanishing("the quaternion images do not span M_2".into()))?;
        Ok(QuatR {
            coords: [x[0], x[1], x[2], x[3]],
            order,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuatFailure {
    pub a: u64,
    pub b: u64,
    pub precision: u32,
    pub quaternion: QuatR,
    pub value: QuatR,
    pub value_matrix: Vec<Vec<u64>>,
}

/// Pulls the companion matrix of `x^2` back to a quaternion `w` modulo `p^k`
/// and shows `g(w) ≢ 0`, so `g/p^k ∉ Int_Q(A)`. Returns `None` for `k = 0`.
pub fn quat_membership_failure(f: &KPoly<Zp>, p: u64, order: QuatOrder) -> Result<Option<QuatFailure>> {
    let k = f.den_exp();
    if k == 0 {
        return Ok(None);
    }
    let iso = find_iso(p, k)?;
    let z = Zp::new(p)?;
    let ring = iso.ring();
    let alg = QuatAlgebra::new(p, k, order)?;
    let c = matrix::companion(&ring, &PolyRing::new(ring.clone()).monomial(1, 2))?;
    let w = iso.preimage(&c, order)?;
    debug_assert_eq!(iso.image(&w), c);
    let g = PolyRing::new(z).reduce(&ring, f.num());
    let value = alg.eval(&g, &w);
    if alg.is_zero(&value) {
        return Err(Error::UnexpectedVanishing(format!(
            "g vanishes mod {p}^{k} at the pullback of the companion matrix of x^2"
        )));
    }
    Ok(Some(QuatFailure {
        a: iso.a,
        b: iso.b,
        precision: k,
        quaternion: w,
        value,
        value_matrix: iso.image(&value).rows(),
    }))
}

/// First quaternion modulo `p^k` (in coordinate order) at which `g` does not
/// vanish, scanning the whole of `A/p^kA`.
pub fn quat_first_nonvanishing(g: &Poly<u64>, alg: &QuatAlgebra, threads: usize) -> Result<Option<QuatR>> {
    let hit = first_failure(alg.cardinality(), threads, |i| {
        let w = alg.nth(i);
        (!alg.is_zero(&alg.eval(g, &w))).then_some(w)
    })?;
    Ok(hit.map(|(_, w)| w))
}

#[derive(Clone, Debug, Serialize)]
pub struct QuatDegreeReport {
    pub p: u64,
    pub k: u32,
    pub iso_valid: bool,
    pub min_degree: usize,
    pub witness_vanishes_on_quaternions: bool,
}

/// The least degree of a monic `g` with `g ≡ 0` on `A/p^kA`, transported
/// through the isomorphism to the null ideal of `M_2(Z/p^k)`.
pub fn quat_min_vanishing_degree(p: u64, k: u32, threads: usize) -> Result<QuatDegreeReport> {
    let iso = find_iso(p, k)?;
    let z = Zp::new(p)?;
    let report = minimal_monic_degree(&z, 2, k, None)?;
    let alg = QuatAlgebra::new(p, k, QuatOrder::Lipschitz)?;
    let g = Poly::from_raw(report.witness_coeffs.clone());
    Ok(QuatDegreeReport {
        p,
        k,
        iso_valid: iso.relations_hold && iso.spans,
        min_degree: report.min_monic_degree,
        witness_vanishes_on_quaternions: quat_first_nonvanishing(&g, &alg, threads)?.is_none(),
    })
}
