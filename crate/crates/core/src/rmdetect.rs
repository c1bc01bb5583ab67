//! Point counts of genus-2 curves over F_p and F_{p^2}, Weil polynomials,
//! and the real-multiplication test.

use crate::ellsurf::is_fundamental;
use crate::exactmath::{is_prime, smallest_nonresidue, FiniteField, Q};
use crate::igusa::SexticForm;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

/// `y^2 = f(x)` over F_p, coefficients f0..f6 reduced to [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFF {
    pub p: u64,
    pub f: [u64; 7],
}

/// Binary-sextic discriminant mod p of f0..f6, via the Euclidean resultant.
pub fn binary_disc_mod_p(f: &[u64; 7], p: u64) -> u64 {
    let field = FiniteField { p, nr: smallest_nonresidue(p), deg: 1 };
    let asc: Vec<_> = f.iter().map(|&c| field.elem(c as i64)).collect();
    match SexticForm::new(&asc) {
        Ok(s) => s.binary_discriminant().a,
        Err(_) => 0,
    }
}

impl CurveFF {
    /// Curve from coefficients f0..f6; errors on p = 2, composite p, or bad reduction.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        if p == 2 || !is_prime(p) || p >= 1 << 16 {
            return Err(Error::BadReduction(p));
        }
        let mut f = [0u64; 7];
        for (i, &c) in coeffs.iter().enumerate().take(7) {
            f[i] = c.rem_euclid(p as i64) as u64;
        }
        let c = CurveFF { p, f };
        if binary_disc_mod_p(&c.f, p) == 0 {
            return Err(Error::BadReduction(p));
        }
        Ok(c)
    }
    /// Reduce a rational model after clearing denominators.
    pub fn from_rational(f: &SexticForm<Q>, p: u64) -> Result<Self> {
        let mut l = BigInt::from(1);
        for c in &f.f {
            l = l.lcm(c.denom());
        }
        let pb = BigInt::from(p);
        let coeffs: Vec<i64> =
            f.f.iter().map(|c| (c.numer() * (&l / c.denom())).mod_floor(&pb).to_i64().expect("small")).collect();
        Self::new(p, &coeffs)
    }
    pub fn degree(&self) -> usize {
        if self.f[6] != 0 {
            6
        } else {
            5
        }
    }
    /// The quadratic twist `y^2 = n f(x)`.
    pub fn twist(&self, n: u64) -> Self {
        CurveFF { p: self.p, f: self.f.map(|c| c * n % self.p) }
    }
}

/// `legendre[x]` in {0, 1, -1} for x in [0, p).
fn legendre_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[(x * x % p) as usize] = 1;
    }
    t
}

/// Number of points on the smooth projective model over F_q, q = p^degree.
///
/// Affine points by character sum; at infinity 2 or 0 for a sextic
/// (f6 square or not in F_q) and 1 for a quintic.
pub fn count_points(c: &CurveFF, degree: u32) -> Result<u64> {
    let p = c.p;
    if binary_disc_mod_p(&c.f, p) == 0 {
        return Err(Error::BadReduction(p));
    }
    let leg = legendre_table(p);
    let f = c.f;
    match degree {
        1 => {
            let mut s: i64 = 0;
            for x in 0..p {
                let mut v = 0u64;
                for k in (0..7).rev() {
                    v = (v * x + f[k]) % p;
                }
                s += 1 + leg[v as usize] as i64;
            }
            let inf = if c.degree() == 5 { 1 } else { 1 + leg[f[6] as usize] as i64 };
            Ok((s + inf) as u64)
        }
        2 => {
            let n = smallest_nonresidue(p);
            // chi over F_{p^2} of a + b w is chi_p of the norm a^2 - n b^2
            let s: i64 = (0..p)
                .into_par_iter()
                .map(|b| {
                    let mut acc = 0i64;
                    for a in 0..p {
                        let (mut va, mut vb) = (0u64, 0u64);
                        for k in (0..7).rev() {
                            let na = (va * a + n * (vb * b % p) + f[k]) % p;
                            let nb = (va * b + vb * a) % p;
                            va = na;
                            vb = nb;
                        }
                        let norm = (va * va + (p - n) * (vb * vb % p)) % p;
                        acc += 1 + leg[norm as usize] as i64;
                    }
                    acc
                })
                .sum();
            // every element of F_p is a square in F_{p^2}
            let inf = if c.degree() == 5 { 1 } else { 2 };
            Ok((s + inf) as u64)
        }
        _ => Err(Error::BadReduction(p)),
    }
}

/// Counts and the Frobenius data `P(T) = T^4 - aT^3 + bT^2 - paT + p^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeilData {
    pub p: u64,
    pub n1: u64,
    pub n2: u64,
    pub a: i64,
    pub b: i64,
}

impl WeilData {
    /// `Q(X) = X^2 - aX + (b - 2p)` as ascending coefficients.
    pub fn q_poly(&self) -> [i64; 3] {
        [self.b - 2 * self.p as i64, -self.a, 1]
    }
    /// `disc(Q) = a^2 - 4b + 8p`.
    pub fn disc_q(&self) -> i64 {
        self.a * self.a - 4 * self.b + 8 * self.p as i64
    }
    /// `P(T)` as ascending coefficients.
    pub fn p_poly(&self) -> [i64; 5] {
        let p = self.p as i64;
        [p * p, -p * self.a, self.b, -self.a, 1]
    }
}

/// `a = p + 1 - n1`, `b = (a^2 - (p^2 + 1 - n2)) / 2`.
pub fn weil_data(n1: u64, n2: u64, p: u64) -> Result<WeilData> {
    let pi = p as i64;
    let a = pi + 1 - n1 as i64;
    let s2 = pi * pi + 1 - n2 as i64;
    let num = a * a - s2;
    if num % 2 != 0 {
        return Err(Error::InconsistentCounts);
    }
    let b = num / 2;
    let w = WeilData { p, n1, n2, a, b };
    // Weil bounds
    if a * a > 16 * pi || b.abs() > 6 * pi {
        return Err(Error::InconsistentCounts);
    }
    Ok(w)
}

/// P(T) has no rational root and no factorization into integer quadratics.
pub fn is_p_irreducible(w: &WeilData) -> bool {
    let c = w.p_poly();
    let p = w.p as i64;
    let eval = |t: i64| c.iter().rev().fold(0i128, |acc, &x| acc * t as i128 + x as i128);
    for r in [1, p, p * p] {
        if eval(r) == 0 || eval(-r) == 0 {
            return false;
        }
    }
    // (T^2 + u T + v)(T^2 + u' T + v') with v v' = p^2
    let bound = 4 * p + 4;
    for v in [1, p, p * p, -1, -p, -p * p] {
        let v2 = p * p / v;
        for u in -bound..=bound {
            let u2 = -w.a - u;
            if u * u2 + v + v2 == w.b && u * v2 + u2 * v == -p * w.a {
                return false;
            }
        }
    }
    true
}

/// Outcome of the real-multiplication test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RMVerdict {
    /// disc(Q) = c^2 D. `a_zero` flags the case where Q = X^2 - c^2 D and
    /// the data cannot separate F_p- from F_{p^2}-rational RM.
    RmOverFp {
        c: u64,
        a_zero: bool,
    },
    /// Q = X^2 - n with n not of the form c^2 D.
    RmOverFp2Only,
    NoRmEvidence,
    Inconclusive(String),
}

impl RMVerdict {
    /// RM over F_p with a nonzero linear term: the certified case.
    pub fn certifies_rm(&self) -> bool {
        matches!(self, RMVerdict::RmOverFp { a_zero: false, .. })
    }
}

/// `c` with `n = c^2 d`, if any.
fn square_ratio(n: i64, d: i64) -> Option<u64> {
    if n <= 0 || n % d != 0 {
        return None;
    }
    let m = (n / d) as u64;
    let c = num_integer::Roots::sqrt(&m);
    (c > 0 && c * c == m).then_some(c)
}

/// The real-multiplication test for discriminant `d`, given whether P(T) is irreducible.
pub fn rm_test(w: &WeilData, d: i64, p_irreducible: bool) -> Result<RMVerdict> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    if !p_irreducible {
        return Ok(RMVerdict::Inconclusive("P(T) is reducible".into()));
    }
    if let Some(c) = square_ratio(w.disc_q(), d) {
        return Ok(RMVerdict::RmOverFp { c, a_zero: w.a == 0 });
    }
    if w.a == 0 {
        return Ok(RMVerdict::RmOverFp2Only);
    }
    Ok(RMVerdict::NoRmEvidence)
}

/// Count, extract Weil data, decide irreducibility and run the test.
pub fn rm_check(c: &CurveFF, d: i64) -> Result<(WeilData, bool, RMVerdict)> {
    let n1 = count_points(c, 1)?;
    let n2 = count_points(c, 2)?;
    let w = weil_data(n1, n2, c.p)?;
    let irr = is_p_irreducible(&w);
    let v = rm_test(&w, d, irr)?;
    Ok((w, irr, v))
}

/// Odd, prime to `d`, and the cleared model has good reduction.
pub fn is_good_prime(f: &SexticForm<Q>, p: u64, d: i64) -> bool {
    p != 2 && is_prime(p) && d % p as i64 != 0 && CurveFF::from_rational(f, p).is_ok()
}
