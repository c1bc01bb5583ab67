//! Dense univariate polynomials over a [`Field`].

use super::field::{Field, Q};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial with ascending coefficients `c[i]` of `x^i`.
///
/// The coefficient vector is trimmed, so the zero polynomial has no
/// coefficients and [`UniPoly::degree`] returns `None`. `zero` is the
/// scalar zero of the coefficient field, kept so finite-field polynomials
/// remember their field even when empty.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K: Field> {
    c: Vec<K>,
    zero: K,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut c: Vec<K>, zero: K) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c, zero }
    }
    /// Build from nonempty coefficients; the field is taken from `c[0]`.
    pub fn from_coeffs(c: Vec<K>) -> Self {
        let zero = c[0].zero_like();
        Self::new(c, zero)
    }
    pub fn zero(zero: K) -> Self {
        UniPoly { c: vec![], zero }
    }
    pub fn constant(k: K) -> Self {
        let z = k.zero_like();
        Self::new(vec![k], z)
    }
    /// The monomial `k x^n`.
    pub fn monomial(k: K, n: usize) -> Self {
        let z = k.zero_like();
        let mut c = vec![z.clone(); n + 1];
        c[n] = k;
        Self::new(c, z)
    }
    /// The polynomial `x`.
    pub fn x(zero: K) -> Self {
        Self::monomial(zero.one_like(), 1)
    }
    pub fn coeffs(&self) -> &[K] {
        &self.c
    }
    pub fn field_zero(&self) -> &K {
        &self.zero
    }
    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> K {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lc(&self) -> K {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(), self.zero.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect(), self.zero.clone())
    }
    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| x.neg()).collect(), self.zero.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.zero.clone());
        }
        let mut c = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(c, self.zero.clone())
    }
    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(k)).collect(), self.zero.clone())
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.zero.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); n];
        c.extend(self.c.iter().cloned());
        Self::new(c, self.zero.clone())
    }
    pub fn eval(&self, x: &K) -> K {
        let mut acc = self.zero.clone();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
    /// `self(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.zero.clone());
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(a.clone()));
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        Self::new(
            self.c.iter().enumerate().skip(1).map(|(i, a)| a.mul(&a.int_like(i as i64))).collect(),
            self.zero.clone(),
        )
    }
    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }
    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let li = d.lc().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        let n = self.c.len();
        if n <= dd {
            return Ok((Self::zero(self.zero.clone()), self.clone()));
        }
        let mut quo = vec![self.zero.clone(); n - dd];
        for k in (0..n - dd).rev() {
            let t = r[k + dd].mul(&li);
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].sub(&t.mul(b));
                }
            }
            quo[k] = t;
        }
        r.truncate(dd);
        Ok((Self::new(quo, self.zero.clone()), Self::new(r, self.zero.clone())))
    }
    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }
    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (qq, r) = self.divrem(d).ok()?;
        if r.is_zero() {
            Some(qq)
        } else {
            None
        }
    }
    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
    /// Number of times `q` divides `self` (`self` nonzero, `q` nonconstant).
    pub fn valuation(&self, q: &Self) -> usize {
        let mut v = 0;
        let mut f = self.clone();
        if f.is_zero() || q.degree().unwrap_or(0) == 0 {
            return usize::MAX;
        }
        while let Some(g) = f.div_exact(q) {
            f = g;
            v += 1;
        }
        v
    }
}

/// Res(f, g) by the Euclidean recurrence over a field.
///
/// Uses Res(g, f) = (-1)^(mn) Res(f, g) and Res(g, f) = lc(g)^(m-k) Res(g, f mod g)
/// with m = deg f, k = deg(f mod g).
pub fn resultant<K: Field>(f: &UniPoly<K>, g: &UniPoly<K>) -> Result<K> {
    let z = f.field_zero().clone();
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        if f.is_zero() && g.is_zero() {
            return Err(Error::UndefinedResultant);
        }
        // Res with the zero polynomial: zero unless the other is a nonzero constant.
        let other = if f.is_zero() { g } else { f };
        return Ok(if other.degree() == Some(0) { z.one_like() } else { z });
    };
    if m == 0 {
        return Ok(f.lc().pow(n as u64));
    }
    if n == 0 {
        return Ok(g.lc().pow(m as u64));
    }
    if m < n {
        let r = resultant(g, f)?;
        return Ok(if (m * n) % 2 == 1 { r.neg() } else { r });
    }
    // m >= n >= 1: Res(f,g) = (-1)^(mn) Res(g,f) and reduce f mod g.
    let r = f.rem(g)?;
    let sign = (m * n) % 2 == 1;
    let val = match r.degree() {
        None => z.clone(),
        Some(k) => g.lc().pow((m - k) as u64).mul(&resultant(g, &r)?),
    };
    Ok(if sign { val.neg() } else { val })
}

/// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
pub fn discriminant<K: Field>(f: &UniPoly<K>) -> Result<K> {
    let d = f.degree().ok_or(Error::ConstantPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant(f, &f.derivative())?;
    let r = r.div(&f.lc()).ok_or(Error::DivisionByZero)?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { r.neg() } else { r })
}

/// Yun's squarefree decomposition: pairwise coprime monic squarefree
/// factors with multiplicities. Characteristic zero only.
pub fn squarefree_factor(f: &UniPoly<Q>) -> Vec<(UniPoly<Q>, usize)> {
    let mut out = vec![];
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = fp.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Multiply through by the lcm of denominators and divide by the content,
/// leaving an integer polynomial with positive leading coefficient.
pub fn primitive_part(f: &UniPoly<Q>) -> UniPoly<Q> {
    if f.is_zero() {
        return f.clone();
    }
    let mut l = num_bigint::BigInt::one();
    for a in f.coeffs() {
        l = l.lcm(a.denom());
    }
    let mut g = num_bigint::BigInt::zero();
    for a in f.coeffs() {
        g = g.gcd(&(a.numer() * (&l / a.denom())));
    }
    let mut s = Q::new(l, g);
    if f.lc().is_negative() {
        s = -s;
    }
    f.scale(&s)
}

/// Shorthand for a rational polynomial from integer coefficients.
pub fn qpoly(c: &[i64]) -> UniPoly<Q> {
    UniPoly::new(c.iter().map(|&x| super::field::q(x)).collect(), Q::zero())
}
