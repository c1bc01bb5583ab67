use crate::exactmath::{q, qf, Q};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// ADE root lattices of reducible fibers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLattice {
    A(u32),
    D(u32),
    E(u32),
}

impl RootLattice {
    pub fn rank(&self) -> u32 {
        match *self {
            RootLattice::A(n) | RootLattice::D(n) | RootLattice::E(n) => n,
        }
    }
    /// Absolute discriminant.
    pub fn disc(&self) -> u32 {
        match *self {
            RootLattice::A(n) => n + 1,
            RootLattice::D(_) => 4,
            RootLattice::E(6) => 3,
            RootLattice::E(7) => 2,
            RootLattice::E(_) => 1,
        }
    }
}

impl fmt::Display for RootLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLattice::A(n) => write!(f, "A{n}"),
            RootLattice::D(n) => write!(f, "D{n}"),
            RootLattice::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for RootLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { at: s.to_string(), msg: "unknown root lattice".into() };
        let (kind, n) = s.split_at(1.min(s.len()));
        let n: u32 = n.parse().map_err(|_| bad())?;
        match (kind, n) {
            ("A", 1..) => Ok(RootLattice::A(n)),
            ("D", 4..) => Ok(RootLattice::D(n)),
            ("E", 6..=8) => Ok(RootLattice::E(n)),
            _ => Err(bad()),
        }
    }
}

/// Local height correction of a section meeting component `k` (0 = identity).
///
/// A_n: k(n+1-k)/(n+1). D_n: 1 for the near component (k=1), n/4 for the
/// far ones (k=2,3). E6: 4/3, E7: 3/2, E8 has no non-identity simple component.
pub fn fiber_contribution(l: RootLattice, k: usize) -> Result<Q> {
    let bad = || Error::InvalidComponent { fiber: l.to_string(), index: k };
    if k == 0 {
        return Ok(Q::zero());
    }
    let k64 = k as i64;
    match l {
        RootLattice::A(n) if k <= n as usize => {
            let n = n as i64;
            Ok(qf(k64 * (n + 1 - k64), n + 1))
        }
        RootLattice::D(_) if k == 1 => Ok(Q::one()),
        RootLattice::D(n) if k <= 3 => Ok(qf(n as i64, 4)),
        RootLattice::E(6) if k <= 2 => Ok(qf(4, 3)),
        RootLattice::E(7) if k == 1 => Ok(qf(3, 2)),
        _ => Err(bad()),
    }
}

/// `2 chi + 2 (P.O) - sum of contributions`.
pub fn section_height(chi: u32, po: u32, contributions: &[Q]) -> Q {
    let mut h = q(2 * chi as i64 + 2 * po as i64);
    for c in contributions {
        h -= c;
    }
    h
}

/// Symmetric matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeGram(pub Vec<Vec<Q>>);

impl LatticeGram {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        self.0.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| self.0[i][j] == self.0[j][i]))
    }
    /// Determinant by Gaussian elimination over Q; 1 for the empty matrix.
    pub fn det(&self) -> Q {
        let mut m = self.0.clone();
        let n = m.len();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &piv;
                let (top, bot) = m.split_at_mut(r);
                for (x, y) in bot[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }
}

/// `|det H| * prod disc(L_v) / |tors|^2`, unsigned.
pub fn shioda_tate_disc(fibers: &[RootLattice], height_gram: &LatticeGram, torsion: u32) -> Result<Q> {
    if torsion == 0 {
        return Err(Error::ZeroTorsion);
    }
    let mut d = height_gram.det();
    if d < Q::zero() {
        d = -d;
    }
    for f in fibers {
        d *= q(f.disc() as i64);
    }
    Ok(d / q(torsion as i64 * torsion as i64))
}

/// Fundamental discriminants: D = 1 mod 4 squarefree, or D = 4m with
/// m = 2, 3 mod 4 squarefree. Positive ones only, D > 1.
pub fn is_fundamental(d: i64) -> bool {
    let squarefree = |m: i64| (2..).take_while(|k| k * k <= m).all(|k| m % (k * k) != 0);
    if d <= 1 {
        return false;
    }
    match d % 4 {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            (m % 4 == 2 || m % 4 == 3) && squarefree(m)
        }
        _ => false,
    }
}

/// Gram matrix `[[2, D], [D, (D^2 - D)/2]]` of determinant -D.
pub fn od_gram(d: i64) -> Result<LatticeGram> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    Ok(LatticeGram(vec![vec![q(2), q(d)], vec![q(d), q((d * d - d) / 2)]]))
}
