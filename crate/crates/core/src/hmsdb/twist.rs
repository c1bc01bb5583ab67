use super::HMSRecord;
use crate::curvesearch::{curve_from_ic, InvariantTable};
use crate::exactmath::{is_prime, quadratic_character, Field, FiniteField};
use crate::igusa::IgusaClebsch;
use crate::rmdetect::rm_check;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistOptions {
    /// Let extra-II factors take part in the candidate subsets.
    pub include_extra_ii: bool,
    /// Restrict candidate subsets to these factor indices.
    pub only_factors: Option<Vec<usize>>,
}

impl Default for TwistOptions {
    fn default() -> Self {
        TwistOptions { include_extra_ii: true, only_factors: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistSearchResult {
    /// Surviving `(C, subset)`, sorted.
    pub survivors: Vec<(i64, Vec<usize>)>,
    pub candidates: usize,
    /// Points (over all primes) whose curve certified RM over F_p.
    pub certified_points: usize,
    /// More than one survivor.
    pub incomplete_separation: bool,
}

fn primes_dividing(n: i64) -> Vec<i64> {
    let mut n = n.abs();
    let mut out = vec![];
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Squarefree C supported on -1 and the primes dividing 2D, ascending.
pub fn twist_constants(d: i64) -> Vec<i64> {
    let mut ps = primes_dividing(2 * d);
    ps.sort();
    let mut cs = vec![1i64];
    for p in ps {
        let more: Vec<i64> = cs.iter().map(|c| c * p).collect();
        cs.extend(more);
    }
    let neg: Vec<i64> = cs.iter().map(|c| -c).collect();
    cs.extend(neg);
    cs.sort();
    cs
}

/// Find `(C, subset)` with `z^2 = C prod f_i` consistent with the RM data.
///
/// At every `(r, s)` in F_p^2 with `I10 != 0` a curve with the mapped
/// invariants is looked up, and whenever its counts certify RM over F_p
/// (nonzero linear term) each candidate must make `C prod f_i(r, s)` a
/// square in F_p (zero included). Both quadratic twists of the witness are
/// tested. Empty subsets are not candidates.
pub fn twist_search(
    rec: &HMSRecord,
    primes: &[u64],
    tables: &BTreeMap<u64, InvariantTable>,
    opts: &TwistOptions,
) -> Result<TwistSearchResult> {
    let (Some(icm), Some(tc)) = (&rec.ic_map, &rec.twist_candidates) else {
        return Err(Error::Parse {
            at: format!("D={}", rec.d),
            msg: "record has no ic_map or twist_candidates".into(),
        });
    };
    let mut den = BigInt::from(1);
    for poly in &icm.inv {
        for (_, _, c) in poly.terms() {
            den = den.lcm(c.denom());
        }
    }
    for &p in primes {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if rec.d % p as i64 == 0 || (&den % BigInt::from(p)) == BigInt::from(0) {
            return Err(Error::BadReduction(p));
        }
        if !tables.contains_key(&p) {
            return Err(Error::PrimeOutOfRange(p));
        }
    }
    let usable: Vec<usize> = (0..tc.factors.len())
        .filter(|i| opts.include_extra_ii || !tc.extra_ii.contains(i))
        .filter(|i| opts.only_factors.as_ref().is_none_or(|o| o.contains(i)))
        .collect();
    let mut alive: Vec<(i64, Vec<usize>)> = vec![];
    for c in twist_constants(rec.d) {
        for mask in 1u32..(1 << usable.len()) {
            let sub: Vec<usize> = (0..usable.len()).filter(|k| mask >> k & 1 == 1).map(|k| usable[k]).collect();
            alive.push((c, sub));
        }
    }
    let candidates = alive.len();
    let mut certified = 0;
    let mut sorted = primes.to_vec();
    sorted.sort();
    sorted.dedup();
    for p in sorted {
        let tbl = &tables[&p];
        let f = FiniteField::prime(p)?;
        for r in f.elements() {
            for s in f.elements() {
                let ev = |b: &crate::exactmath::BiPoly| b.eval_ff(&f, &r, &s);
                let (Some(i2), Some(i4), Some(i6), Some(i10)) =
                    (ev(&icm.inv[0]), ev(&icm.inv[1]), ev(&icm.inv[2]), ev(&icm.inv[3]))
                else {
                    continue;
                };
                if i10.is_zero() {
                    continue;
                }
                let Some(curve) = curve_from_ic(&IgusaClebsch::new(i2, i4, i6, i10), tbl) else { continue };
                let nr = f.nr;
                let certifies = [curve.clone(), curve.twist(nr)]
                    .iter()
                    .any(|c| rm_check(c, rec.d).map(|(_, _, v)| v.certifies_rm()).unwrap_or(false));
                if !certifies {
                    continue;
                }
                certified += 1;
                let vals: Vec<_> = tc.factors.iter().map(ev).collect();
                alive.retain(|(c, sub)| {
                    let mut v = f.elem(*c);
                    for &i in sub {
                        match &vals[i] {
                            Some(x) => v = v.mul(x),
                            None => return true,
                        }
                    }
                    quadratic_character(&v) >= 0
                });
            }
        }
    }
    alive.sort();
    if alive.is_empty() {
        return Err(Error::NoSurvivors);
    }
    Ok(TwistSearchResult {
        incomplete_separation: alive.len() > 1,
        survivors: alive,
        candidates,
        certified_points: certified,
    })
}
