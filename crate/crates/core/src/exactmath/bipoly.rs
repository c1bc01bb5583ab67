use super::field::{Field, FiniteField, FiniteFieldElem, Q};
use super::poly::UniPoly;
use super::ratfun::RationalFunction;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Sparse polynomial in two variables: `(i, j) -> coefficient of r^i s^j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Q)>>(it: I) -> Self {
        let mut p = BiPoly::new();
        for (i, j, c) in it {
            p.add_term(i, j, c);
        }
        p
    }
    pub fn add_term(&mut self, i: u32, j: u32, c: Q) {
        let e = self.terms.entry((i, j)).or_insert_with(Q::zero);
        *e += c;
        if Zero::is_zero(e) {
            self.terms.remove(&(i, j));
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Q)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }
    pub fn scale(&self, k: &Q) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * k)))
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (i, j, c) in o.terms() {
            p.add_term(i, j, c.clone());
        }
        p
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut p = BiPoly::new();
        for (i, j, a) in self.terms() {
            for (k, l, b) in o.terms() {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
    pub fn eval(&self, r: &Q, s: &Q) -> Q {
        let mut acc = Q::zero();
        for (i, j, c) in self.terms() {
            acc += c * num_traits::pow(r.clone(), i as usize) * num_traits::pow(s.clone(), j as usize);
        }
        acc
    }
    /// Value at F_p points; `None` if a coefficient denominator vanishes mod p.
    pub fn eval_ff(&self, f: &FiniteField, r: &FiniteFieldElem, s: &FiniteFieldElem) -> Option<FiniteFieldElem> {
        let mut acc = f.elem(0);
        for (i, j, c) in self.terms() {
            acc = acc.add(&f.reduce(c)?.mul(&r.pow(i as u64)).mul(&s.pow(j as u64)));
        }
        Some(acc)
    }
    /// Substitute rational functions of one parameter for both variables.
    pub fn eval_rf(&self, r: &RationalFunction, s: &RationalFunction) -> RationalFunction {
        // Horner in s, with polynomial-in-r coefficients.
        let mut acc = RationalFunction::zero();
        let cols = self.coeffs_in_second();
        for c in cols.iter().rev() {
            acc = acc.mul(s).add(&r.apply(c));
        }
        acc
    }
    /// Coefficients of s^j, each a polynomial in r.
    pub fn coeffs_in_second(&self) -> Vec<UniPoly<Q>> {
        let dj = self.terms().map(|(_, j, _)| j).max().map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<Q>> = vec![vec![]; dj];
        for (i, j, c) in self.terms() {
            let v = &mut cols[j as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, Q::zero());
            }
            v[i as usize] = c.clone();
        }
        cols.into_iter().map(|v| UniPoly::new(v, Q::zero())).collect()
    }
    /// Swap the roles of r and s.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (j, i, c.clone())))
    }
    /// Positive rational c with self / c integral and of content 1.
    pub fn content(&self) -> Q {
        let mut l = BigInt::one();
        for (_, _, c) in self.terms() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, _, c) in self.terms() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        if g.is_zero() {
            return Q::one();
        }
        Q::new(g, l).abs()
    }
    /// Render with the given variable names, highest total degree first.
    pub fn to_string_with(&self, r: &str, s: &str) -> String {
        let mut out = String::new();
        let mut ts: Vec<_> = self.terms().collect();
        ts.sort_by_key(|&(i, j, _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (n, (i, j, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = [(r, i), (s, j)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if One::is_one(&a) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
