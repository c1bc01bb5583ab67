use super::field::{Field, Q};
use super::poly::UniPoly;
use crate::{Error, Result};
use num_traits::{One, Zero};

/// Reduced quotient of rational polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction {
    num: UniPoly<Q>,
    den: UniPoly<Q>,
}

impl RationalFunction {
    pub fn new(num: UniPoly<Q>, den: UniPoly<Q>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let mut n = num.div_exact(&g).expect("gcd divides");
        let mut d = den.div_exact(&g).expect("gcd divides");
        let l = d.lc().inv().expect("nonzero");
        n = n.scale(&l);
        d = d.scale(&l);
        Ok(RationalFunction { num: n, den: d })
    }
    pub fn from_poly(p: UniPoly<Q>) -> Self {
        RationalFunction { num: p, den: UniPoly::constant(Q::one()) }
    }
    pub fn constant(c: Q) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }
    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero(Q::zero()))
    }
    pub fn x() -> Self {
        Self::from_poly(UniPoly::x(Q::zero()))
    }
    pub fn num(&self) -> &UniPoly<Q> {
        &self.num
    }
    pub fn den(&self) -> &UniPoly<Q> {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero den")
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero den")
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }
    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }
    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.num.scale(k), self.den.clone()).expect("nonzero den")
    }
    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
    /// Evaluate a polynomial at this rational function.
    pub fn apply(&self, p: &UniPoly<Q>) -> Self {
        let mut acc = Self::zero();
        for a in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::constant(a.clone()));
        }
        acc
    }
}
