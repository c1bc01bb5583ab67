use super::field::Q;
use super::poly::UniPoly;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sparse multivariate polynomial over Q, exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl MPoly {
    pub fn new(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }
    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Q)>>(nvars: usize, it: I) -> Self {
        let mut p = MPoly::new(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length");
            let slot = p.terms.entry(e.clone()).or_insert_with(Q::zero);
            *slot += c;
            if slot.is_zero() {
                p.terms.remove(&e);
            }
        }
        p
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Q)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }
    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in x.iter().zip(e) {
                t *= num_traits::pow(v.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }
    /// Fix all variables but the last, returning a polynomial in the last.
    pub fn specialize(&self, params: &[Q]) -> UniPoly<Q> {
        assert_eq!(params.len() + 1, self.nvars);
        let mut c: Vec<Q> = vec![];
        for (e, coef) in &self.terms {
            let mut t = coef.clone();
            for (v, &k) in params.iter().zip(e) {
                t *= num_traits::pow(v.clone(), k as usize);
            }
            let d = *e.last().expect("at least one variable") as usize;
            if c.len() <= d {
                c.resize(d + 1, Q::zero());
            }
            c[d] += t;
        }
        UniPoly::new(c, Q::zero())
    }
}
