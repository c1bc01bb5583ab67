//! Genus-2 curves over F_p from Igusa-Clebsch points, by exhaustive
//! invariant matching.

use crate::exactmath::{invmod, is_prime, smallest_nonresidue, FiniteFieldElem};
use crate::igusa::{canonical_rep, formulas, IgusaClebsch};
use crate::rmdetect::CurveFF;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::io::{Read, Write};

/// Largest prime accepted by [`build_invariant_table`].
pub const MAX_TABLE_PRIME: u64 = 13;

const MAGIC: &[u8; 8] = b"HMSKTBL1";

/// Invariant formulas and discriminant with everything reduced mod p.
///
/// This is the hot loop of table construction: small-integer arithmetic,
/// power tables, and a precomputed canonical key for every invariant tuple.
pub struct FastInvariants {
    p: u64,
    pow: Vec<[u64; 11]>,
    terms: [Vec<([u8; 7], u64)>; 3],
    inv: Vec<u64>,
    canon: Vec<u32>,
}

impl FastInvariants {
    pub fn new(p: u64) -> Self {
        let pow = (0..p)
            .map(|x| {
                let mut r = [1u64; 11];
                for e in 1..11 {
                    r[e] = r[e - 1] * x % p;
                }
                r
            })
            .collect();
        let red = |t: &[([u8; 7], i64)]| t.iter().map(|(e, c)| (*e, c.rem_euclid(p as i64) as u64)).collect();
        let terms = [red(formulas::I2), red(formulas::I4), red(formulas::I6)];
        let inv = (0..p).map(|x| invmod(x, p).unwrap_or(0)).collect();
        let canon = canonical_table(p);
        FastInvariants { p, pow, terms, inv, canon }
    }

    fn eval(&self, which: usize, f: &[u64; 7]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (e, c) in &self.terms[which] {
            let mut t = *c;
            for k in 0..7 {
                if e[k] != 0 {
                    t = t * self.pow[f[k] as usize][e[k] as usize] % p;
                }
            }
            acc += t;
        }
        acc % p
    }

    /// Res(a, b) mod p for ascending coefficient slices with given degrees.
    fn resultant(&self, a: &[u64], b: &[u64]) -> u64 {
        let p = self.p;
        let mut f = [0u64; 7];
        let mut g = [0u64; 7];
        f[..a.len()].copy_from_slice(a);
        g[..b.len()].copy_from_slice(b);
        let deg = |h: &[u64; 7]| (0..7).rev().find(|&i| h[i] != 0);
        let mut res = 1u64;
        loop {
            let (Some(m), Some(n)) = (deg(&f), deg(&g)) else { return 0 };
            if m == 0 {
                return res * self.pow[f[0] as usize][n] % p;
            }
            if n == 0 {
                return res * self.pow[g[0] as usize][m] % p;
            }
            // r = f mod g
            let li = self.inv[g[n] as usize];
            let mut r = f;
            for k in (n..=m).rev() {
                let t = r[k] * li % p;
                if t != 0 {
                    for j in 0..=n {
                        r[k - n + j] = (r[k - n + j] + p - t * g[j] % p) % p;
                    }
                }
            }
            let Some(kdeg) = deg(&r) else { return 0 };
            let mut s = res * self.pow[g[n] as usize][m - kdeg] % p;
            if (m * n) % 2 == 1 {
                s = (p - s) % p;
            }
            res = s;
            f = g;
            g = r;
        }
    }

    /// Binary-sextic discriminant mod p.
    pub fn disc(&self, f: &[u64; 7]) -> u64 {
        let p = self.p;
        let d: [u64; 6] = std::array::from_fn(|i| f[i + 1] * (i as u64 + 1) % p);
        if f[6] != 0 {
            // (-1)^15 Res(f, f') / f6
            let r = self.resultant(f, &d);
            (p - r * self.inv[f[6] as usize] % p) % p
        } else if f[5] != 0 {
            // f5^2 * Res(f, f') / f5
            let r = self.resultant(&f[..6], &d[..5]);
            r * f[5] % p
        } else {
            0
        }
    }

    /// (I2, I4, I6, I10) mod p.
    pub fn invariants(&self, f: &[u64; 7]) -> [u64; 4] {
        [self.eval(0, f), self.eval(1, f), self.eval(2, f), self.disc(f)]
    }

    /// Index of the canonical representative of a tuple.
    pub fn key(&self, ic: &[u64; 4]) -> u32 {
        let p = self.p;
        self.canon[(((ic[0] * p + ic[1]) * p + ic[2]) * p + ic[3]) as usize]
    }
}

/// For every tuple index, the index of its canonical representative.
fn canonical_table(p: u64) -> Vec<u32> {
    let nr = smallest_nonresidue(p);
    let n = (p * p * p * p) as usize;
    let mut out = vec![0u32; n];
    let mk = |a: u64| FiniteFieldElem { p, nr, deg: 1, a, b: 0 };
    for (idx, slot) in out.iter_mut().enumerate().skip(1) {
        let i = idx as u64;
        let ic = IgusaClebsch::new(mk(i / (p * p * p)), mk(i / (p * p) % p), mk(i / p % p), mk(i % p));
        let c = canonical_rep(&ic).expect("nonzero tuple");
        *slot = (((c.i2.a * p + c.i4.a) * p + c.i6.a) * p + c.i10.a) as u32;
    }
    out
}

/// Map from canonical invariant tuple to one witness curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub p: u64,
    pub nr: u64,
    pub entries: BTreeMap<[u8; 4], [u8; 7]>,
}

/// Enumeration order of the candidate models.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Forward,
    Reverse,
}

/// Candidate number `i` in forward order: sextics with f6 in {1, nr}, then
/// quintics with f5 in {1, nr}; the remaining coefficients run through
/// F_p with f0 fastest.
fn candidate(p: u64, nr: u64, i: u64) -> [u64; 7] {
    let p5 = p.pow(5);
    let p6 = p5 * p;
    let mut f = [0u64; 7];
    let (lead, pos, rest, n) = if i < 2 * p6 {
        (if i < p6 { 1 } else { nr }, 6, i % p6, 6)
    } else {
        let j = i - 2 * p6;
        (if j < p5 { 1 } else { nr }, 5, j % p5, 5)
    };
    f[pos] = lead;
    let mut r = rest;
    for c in f.iter_mut().take(n) {
        *c = r % p;
        r /= p;
    }
    f
}

/// Number of candidate models, `2p^6 + 2p^5`.
pub fn candidate_count(p: u64) -> u64 {
    2 * p.pow(6) + 2 * p.pow(5)
}

pub fn build_invariant_table(p: u64) -> Result<InvariantTable> {
    build_invariant_table_with(p, Order::Forward)
}

/// Build the table keeping the first witness met in the given order.
///
/// The candidate range is split into chunks processed in parallel; chunk
/// maps are merged in chunk order, so the result equals a sequential run.
pub fn build_invariant_table_with(p: u64, order: Order) -> Result<InvariantTable> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > MAX_TABLE_PRIME {
        return Err(Error::PrimeOutOfRange(p));
    }
    let nr = smallest_nonresidue(p);
    let fast = FastInvariants::new(p);
    let total = candidate_count(p);
    let chunk = p.pow(4);
    let nchunks = total.div_ceil(chunk);
    let parts: Vec<BTreeMap<u32, [u8; 7]>> = (0..nchunks)
        .into_par_iter()
        .map(|c| {
            let mut m = BTreeMap::new();
            for k in c * chunk..((c + 1) * chunk).min(total) {
                let i = match order {
                    Order::Forward => k,
                    Order::Reverse => total - 1 - k,
                };
                let f = candidate(p, nr, i);
                let ic = fast.invariants(&f);
                if ic[3] == 0 {
                    continue;
                }
                m.entry(fast.key(&ic)).or_insert_with(|| f.map(|x| x as u8));
            }
            m
        })
        .collect();
    let mut merged: BTreeMap<u32, [u8; 7]> = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            merged.entry(k).or_insert(v);
        }
    }
    let unpack = |k: u32| {
        let k = k as u64;
        [(k / (p * p * p)) as u8, (k / (p * p) % p) as u8, (k / p % p) as u8, (k % p) as u8]
    };
    Ok(InvariantTable { p, nr, entries: merged.into_iter().map(|(k, v)| (unpack(k), v)).collect() })
}

impl InvariantTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    /// Little-endian layout: magic `HMSKTBL1`, then u32 p, u32 nonresidue,
    /// u32 record count; each record is 4 key bytes (I2, I4, I6, I10 of the
    /// canonical representative) and 7 coefficient bytes f0..f6.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.p as u32).to_le_bytes())?;
        w.write_all(&(self.nr as u32).to_le_bytes())?;
        w.write_all(&(self.entries.len() as u32).to_le_bytes())?;
        for (k, v) in &self.entries {
            w.write_all(k)?;
            w.write_all(v)?;
        }
        Ok(())
    }
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let bad = |m: &str| Error::Parse { at: "invariant table".into(), msg: m.into() };
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(bad("bad magic"));
        }
        let mut u = [0u8; 4];
        let mut next = |r: &mut R| -> Result<u32> {
            r.read_exact(&mut u)?;
            Ok(u32::from_le_bytes(u))
        };
        let p = next(&mut r)? as u64;
        let nr = next(&mut r)? as u64;
        let n = next(&mut r)?;
        if !is_prime(p) || p == 2 || nr != smallest_nonresidue(p) {
            return Err(bad("bad header"));
        }
        let mut entries = BTreeMap::new();
        for _ in 0..n {
            let mut rec = [0u8; 11];
            r.read_exact(&mut rec)?;
            let k: [u8; 4] = rec[..4].try_into().expect("4 bytes");
            let v: [u8; 7] = rec[4..].try_into().expect("7 bytes");
            if k.iter().chain(&v).any(|&x| x as u64 >= p) {
                return Err(bad("residue out of range"));
            }
            entries.insert(k, v);
        }
        Ok(InvariantTable { p, nr, entries })
    }
    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(f))
    }
}

/// A curve over F_p with the given invariants, if one exists.
pub fn curve_from_ic(ic: &IgusaClebsch<FiniteFieldElem>, tbl: &InvariantTable) -> Option<CurveFF> {
    if ic.i10.a == 0 && ic.i10.b == 0 {
        return None;
    }
    let c = canonical_rep(ic).ok()?;
    let key = [c.i2.a as u8, c.i4.a as u8, c.i6.a as u8, c.i10.a as u8];
    let f = tbl.entries.get(&key)?;
    Some(CurveFF { p: tbl.p, f: f.map(|x| x as u64) })
}
