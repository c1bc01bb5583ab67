//! Igusa-Clebsch points and the elliptic K3 surfaces with II* and III* fibers.

use crate::ellsurf::WeierstrassQt;
use crate::exactmath::{q, UniPoly, Q};
use crate::igusa::IgusaClebsch;
use crate::{Error, Result};
use num_traits::{One, Zero};

/// `y^2 = x^3 + t^3 (a t + a') x + t^5 (b'' t^2 + b t + b')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Model {
    pub a: Q,
    pub a1: Q,
    pub b2: Q,
    pub b: Q,
    pub b1: Q,
}

impl K3Model {
    /// Fields in the order (a, a', b'', b, b').
    pub fn new(a: Q, a1: Q, b2: Q, b: Q, b1: Q) -> Self {
        K3Model { a, a1, b2, b, b1 }
    }
    pub fn weierstrass(&self) -> WeierstrassQt {
        let z = Q::zero();
        let a4 = UniPoly::new(vec![z.clone(), z.clone(), z.clone(), self.a1.clone(), self.a.clone()], z.clone());
        let a6 = UniPoly::new(
            vec![
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                self.b1.clone(),
                self.b.clone(),
                self.b2.clone(),
            ],
            z.clone(),
        );
        WeierstrassQt::short(a4, a6)
    }
    /// Apply `(x, y, t) -> (l^2 x, l^3 y, m t)` in the coordinates that keep the
    /// shape, i.e. `t^3(at+a')` scales by `l^4` and `t^5(...)` by `l^6`.
    pub fn rescale(&self, l: &Q, m: &Q) -> Self {
        let l4 = num_traits::pow(l.clone(), 4);
        let l6 = num_traits::pow(l.clone(), 6);
        let mp = |e: usize| num_traits::pow(m.clone(), e);
        K3Model {
            a: &self.a * &l4 * mp(4),
            a1: &self.a1 * &l4 * mp(3),
            b2: &self.b2 * &l6 * mp(7),
            b: &self.b * &l6 * mp(6),
            b1: &self.b1 * &l6 * mp(5),
        }
    }
}

/// The K3 attached to `(I2:I4:I6:I10)`:
/// `(a, a', b'', b, b') = (-I4/12, -1, I10/4, (I2 I4 - 3 I6)/108, I2/24)`.
pub fn k3_from_ic(ic: &IgusaClebsch<Q>) -> Result<K3Model> {
    if ic.i10.is_zero() {
        return Err(Error::DegenerateAbelianSurface);
    }
    Ok(K3Model {
        a: -&ic.i4 / q(12),
        a1: -Q::one(),
        b2: &ic.i10 / q(4),
        b: (&ic.i2 * &ic.i4 - q(3) * &ic.i6) / q(108),
        b1: &ic.i2 / q(24),
    })
}

/// Inverse of [`k3_from_ic`] up to weighted scaling.
///
/// Under `x -> l^2 x, y -> l^3 y, t -> t/l` the coefficients scale as
/// `a -> a, a' -> l a', b'' -> b''/l, b -> b, b' -> l b'`, so `l = -1/a'`
/// brings the model to `a' = -1` without extracting roots.
pub fn ic_from_k3(m: &K3Model) -> Result<IgusaClebsch<Q>> {
    if m.a1.is_zero() {
        return Err(Error::ProductCase);
    }
    let l = -m.a1.recip();
    let (a, b2, b, b1) = (m.a.clone(), &m.b2 / &l, m.b.clone(), &m.b1 * &l);
    let i2 = q(24) * b1;
    let i4 = -q(12) * a;
    let i10 = q(4) * b2;
    let i6 = (&i2 * &i4 - q(108) * b) / q(3);
    Ok(IgusaClebsch::new(i2, i4, i6, i10))
}

/// `X^2 - sX + p` with roots the two j-invariants when `a' = 0`, where
/// `p = -a^3/(27 b' b'')` and `s = 1 + p - b^2/(4 b' b'')`.
/// Returned as ascending coefficients `[p, -s, 1]`.
pub fn inose_j_pair(m: &K3Model) -> Result<UniPoly<Q>> {
    if !m.a1.is_zero() || m.b1.is_zero() || m.b2.is_zero() {
        return Err(Error::NotInoseCase);
    }
    let bb = &m.b1 * &m.b2;
    let p = -num_traits::pow(m.a.clone(), 3) / (q(27) * &bb);
    let s = Q::one() + &p - &m.b * &m.b / (q(4) * &bb);
    Ok(UniPoly::new(vec![p, -s, Q::one()], Q::zero()))
}
