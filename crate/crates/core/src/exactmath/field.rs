//! Scalars: rationals and finite fields of degree 1 or 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary precision rational number in lowest terms.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"a"` or `"a/b"` into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        Some(Q::from_integer(s.parse().ok()?))
    }
}

/// Exact field operations.
///
/// Finite-field elements carry their field, so constants are made "like" an
/// existing element rather than from nothing.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` on zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Field for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn int_like(&self, n: i64) -> Self {
        q(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Element of F_p (deg 1) or F_{p^2} = F_p(w), w^2 = nr (deg 2).
///
/// `nr` is the smallest quadratic nonresidue mod p and is stored in every
/// element, as is the degree. Degree-1 elements have `b == 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteFieldElem {
    pub p: u64,
    pub nr: u64,
    pub deg: u8,
    pub a: u64,
    pub b: u64,
}

impl fmt::Debug for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 1 {
            write!(f, "{} (mod {})", self.a, self.p)
        } else {
            write!(f, "{}+{}w (mod {}, w^2={})", self.a, self.b, self.p, self.nr)
        }
    }
}

/// Deterministic primality by trial division; only small primes are used.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest quadratic nonresidue modulo an odd prime.
pub fn smallest_nonresidue(p: u64) -> u64 {
    (2..p).find(|&n| powmod(n, (p - 1) / 2, p) == p - 1).unwrap_or(0)
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

/// A finite field F_p or F_{p^2}, used to mint elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    pub p: u64,
    pub nr: u64,
    pub deg: u8,
}

impl FiniteField {
    /// F_p for an odd prime p.
    pub fn prime(p: u64) -> crate::Result<Self> {
        if p == 2 || !is_prime(p) || p >= 1 << 31 {
            return Err(crate::Error::NotOddPrime(p));
        }
        Ok(FiniteField { p, nr: smallest_nonresidue(p), deg: 1 })
    }
    /// F_{p^2} = F_p(w) with w^2 the smallest nonresidue.
    pub fn quadratic(p: u64) -> crate::Result<Self> {
        let mut f = Self::prime(p)?;
        f.deg = 2;
        Ok(f)
    }
    pub fn order(&self) -> u64 {
        if self.deg == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }
    pub fn elem(&self, a: i64) -> FiniteFieldElem {
        FiniteFieldElem { p: self.p, nr: self.nr, deg: self.deg, a: a.rem_euclid(self.p as i64) as u64, b: 0 }
    }
    pub fn elem2(&self, a: i64, b: i64) -> FiniteFieldElem {
        assert!(self.deg == 2 || b == 0, "second coordinate needs F_p^2");
        FiniteFieldElem {
            p: self.p,
            nr: self.nr,
            deg: self.deg,
            a: a.rem_euclid(self.p as i64) as u64,
            b: b.rem_euclid(self.p as i64) as u64,
        }
    }
    /// Reduce a rational; `None` if p divides the denominator.
    pub fn reduce(&self, x: &Q) -> Option<FiniteFieldElem> {
        let p = BigInt::from(self.p);
        let n = x.numer().mod_floor(&p).to_u64()?;
        let d = x.denom().mod_floor(&p).to_u64()?;
        let di = invmod(d, self.p)?;
        Some(FiniteFieldElem { p: self.p, nr: self.nr, deg: self.deg, a: n * di % self.p, b: 0 })
    }
    /// All elements, in the order a + b*p.
    pub fn elements(&self) -> impl Iterator<Item = FiniteFieldElem> + '_ {
        let p = self.p;
        (0..self.order()).map(move |k| FiniteFieldElem { p, nr: self.nr, deg: self.deg, a: k % p, b: k / p })
    }
}

impl FiniteFieldElem {
    pub fn field(&self) -> FiniteField {
        FiniteField { p: self.p, nr: self.nr, deg: self.deg }
    }
    /// The norm to F_p (identity on F_p).
    pub fn norm(&self) -> u64 {
        let p = self.p;
        (self.a * self.a % p + p - self.nr * (self.b * self.b % p) % p) % p
    }
}

impl Field for FiniteFieldElem {
    fn zero_like(&self) -> Self {
        FiniteFieldElem { a: 0, b: 0, ..*self }
    }
    fn one_like(&self) -> Self {
        FiniteFieldElem { a: 1, b: 0, ..*self }
    }
    fn int_like(&self, n: i64) -> Self {
        FiniteFieldElem { a: n.rem_euclid(self.p as i64) as u64, b: 0, ..*self }
    }
    fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!((self.p, self.deg), (o.p, o.deg));
        FiniteFieldElem { a: (self.a + o.a) % self.p, b: (self.b + o.b) % self.p, ..*self }
    }
    fn sub(&self, o: &Self) -> Self {
        FiniteFieldElem { a: (self.a + self.p - o.a) % self.p, b: (self.b + self.p - o.b) % self.p, ..*self }
    }
    fn mul(&self, o: &Self) -> Self {
        let p = self.p;
        if self.deg == 1 {
            return FiniteFieldElem { a: self.a * o.a % p, b: 0, ..*self };
        }
        let a = (self.a * o.a + self.nr * (self.b * o.b % p)) % p;
        let b = (self.a * o.b + self.b * o.a) % p;
        FiniteFieldElem { a, b, ..*self }
    }
    fn neg(&self) -> Self {
        FiniteFieldElem { a: (self.p - self.a) % self.p, b: (self.p - self.b) % self.p, ..*self }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // conjugate over norm
        let ni = invmod(self.norm(), self.p)?;
        Some(FiniteFieldElem { a: self.a * ni % self.p, b: (self.p - self.b) % self.p * ni % self.p, ..*self })
    }
}

/// Quadratic character: 0, 1 or -1, via a^((q-1)/2).
pub fn quadratic_character(a: &FiniteFieldElem) -> i8 {
    if a.is_zero() {
        return 0;
    }
    let q = a.field().order();
    let e = a.pow((q - 1) / 2);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// Integer square root of a nonnegative big integer, if exact.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// The nonnegative rational square root of `x`, if there is one.
pub fn is_rational_square(x: &Q) -> Option<Q> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(Q::new(n, d))
}
