//! Elliptic surfaces over Q(t): Kodaira fibers, sections, Jacobians of
//! quartics, heights and Shioda-Tate discriminants.

mod lattice;

pub use lattice::{
    fiber_contribution, is_fundamental, od_gram, section_height, shioda_tate_disc, LatticeGram, RootLattice,
};

use crate::exactmath::{coprime_basis, q, MPoly, RationalFunction, UniPoly, Q};
use crate::{Error, Result};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over Q[t].
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassQt {
    pub a1: UniPoly<Q>,
    pub a2: UniPoly<Q>,
    pub a3: UniPoly<Q>,
    pub a4: UniPoly<Q>,
    pub a6: UniPoly<Q>,
}

fn zp() -> UniPoly<Q> {
    UniPoly::zero(Q::zero())
}

impl WeierstrassQt {
    pub fn new(a1: UniPoly<Q>, a2: UniPoly<Q>, a3: UniPoly<Q>, a4: UniPoly<Q>, a6: UniPoly<Q>) -> Self {
        WeierstrassQt { a1, a2, a3, a4, a6 }
    }
    pub fn short(a4: UniPoly<Q>, a6: UniPoly<Q>) -> Self {
        Self::new(zp(), zp(), zp(), a4, a6)
    }
    pub fn coeffs(&self) -> [&UniPoly<Q>; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }
    /// (b2, b4, b6, b8).
    pub fn b_invariants(&self) -> [UniPoly<Q>; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let c = |n: i64| UniPoly::constant(q(n));
        let b2 = a1.mul(a1).add(&a2.mul(&c(4)));
        let b4 = a4.mul(&c(2)).add(&a1.mul(a3));
        let b6 = a3.mul(a3).add(&a6.mul(&c(4)));
        let b8 = a1
            .mul(a1)
            .mul(a6)
            .add(&a2.mul(a6).mul(&c(4)))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(a3).mul(a3))
            .sub(&a4.mul(a4));
        [b2, b4, b6, b8]
    }
    /// Substitute t -> 1/s and clear with s^(k i), k minimal with deg a_i <= k i.
    pub fn at_infinity(&self) -> (Self, usize) {
        let degs = [1usize, 2, 3, 4, 6];
        let mut k = 0;
        for (a, i) in self.coeffs().iter().zip(degs) {
            if let Some(d) = a.degree() {
                k = k.max(d.div_ceil(i));
            }
        }
        let flip = |a: &UniPoly<Q>, n: usize| {
            let mut c = vec![Q::zero(); n + 1];
            for (j, x) in a.coeffs().iter().enumerate() {
                c[n - j] = x.clone();
            }
            UniPoly::new(c, Q::zero())
        };
        let w = WeierstrassQt {
            a1: flip(&self.a1, k),
            a2: flip(&self.a2, 2 * k),
            a3: flip(&self.a3, 3 * k),
            a4: flip(&self.a4, 4 * k),
            a6: flip(&self.a6, 6 * k),
        };
        (w, k)
    }
    /// `y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)` at a section.
    pub fn residual(&self, s: &SectionQt) -> RationalFunction {
        let rf = |p: &UniPoly<Q>| RationalFunction::from_poly(p.clone());
        let (x, y) = (&s.x, &s.y);
        let lhs = y.mul(y).add(&rf(&self.a1).mul(x).mul(y)).add(&rf(&self.a3).mul(y));
        let rhs = x.pow(3).add(&rf(&self.a2).mul(&x.mul(x))).add(&rf(&self.a4).mul(x)).add(&rf(&self.a6));
        lhs.sub(&rhs)
    }
}

/// c4, c6 and the discriminant; `c4^3 - c6^2 = 1728 disc`.
pub fn c4_c6_delta(w: &WeierstrassQt) -> Result<(UniPoly<Q>, UniPoly<Q>, UniPoly<Q>)> {
    let [b2, b4, b6, b8] = w.b_invariants();
    let c = |n: i64| UniPoly::constant(q(n));
    let c4 = b2.mul(&b2).sub(&b4.mul(&c(24)));
    let c6 = b2.pow(3).neg().add(&b2.mul(&b4).mul(&c(36))).sub(&b6.mul(&c(216)));
    let d = b2
        .mul(&b2)
        .mul(&b8)
        .neg()
        .sub(&b4.pow(3).mul(&c(8)))
        .sub(&b6.mul(&b6).mul(&c(27)))
        .add(&b2.mul(&b4).mul(&b6).mul(&c(9)));
    if d.is_zero() {
        return Err(Error::SingularFibration);
    }
    Ok((c4, c6, d))
}

/// `c4^3 / disc` in lowest terms.
pub fn j_invariant(w: &WeierstrassQt) -> Result<RationalFunction> {
    let (c4, _, d) = c4_c6_delta(w)?;
    RationalFunction::new(c4.pow(3), d)
}

/// Kodaira fiber types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl FiberType {
    /// The root lattice spanned by non-identity components.
    pub fn root_lattice(&self) -> Option<RootLattice> {
        use FiberType::*;
        match *self {
            I(n) if n >= 2 => Some(RootLattice::A(n - 1)),
            I(_) | II => None,
            III => Some(RootLattice::A(1)),
            IV => Some(RootLattice::A(2)),
            IStar(n) => Some(RootLattice::D(n + 4)),
            IVStar => Some(RootLattice::E(6)),
            IIIStar => Some(RootLattice::E(7)),
            IIStar => Some(RootLattice::E(8)),
        }
    }
    /// Whether the fiber has more than one component.
    pub fn is_reducible(&self) -> bool {
        self.root_lattice().is_some()
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FiberType::*;
        match self {
            I(n) => write!(f, "I{n}"),
            II => write!(f, "II"),
            III => write!(f, "III"),
            IV => write!(f, "IV"),
            IStar(n) => write!(f, "I{n}*"),
            IVStar => write!(f, "IV*"),
            IIIStar => write!(f, "III*"),
            IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for FiberType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use FiberType::*;
        let bad = || Error::Parse { at: s.to_string(), msg: "unknown fiber type".into() };
        Ok(match s {
            "II" => II,
            "III" => III,
            "IV" => IV,
            "IV*" => IVStar,
            "III*" => IIIStar,
            "II*" => IIStar,
            _ => {
                let body = s.strip_prefix('I').ok_or_else(bad)?;
                if let Some(n) = body.strip_suffix('*') {
                    IStar(n.parse().map_err(|_| bad())?)
                } else {
                    I(body.parse().map_err(|_| bad())?)
                }
            }
        })
    }
}

/// A place of P^1: a monic squarefree polynomial in t, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Place {
    Finite(UniPoly<Q>),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

/// Valuation used for the zero polynomial.
pub const VAL_INF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct KodairaFiber {
    pub place: Place,
    pub fiber_type: FiberType,
    /// (v(c4), v(c6), v(disc)) of the minimal model; `VAL_INF` for a zero polynomial.
    pub vals: (u32, u32, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub fibers: Vec<KodairaFiber>,
    /// Sum over all places of deg(place) * v(disc_min).
    pub total_delta: u32,
}

impl Classification {
    /// Euler characteristic of the surface, `total_delta / 12`.
    pub fn chi(&self) -> Option<u32> {
        self.total_delta.is_multiple_of(12).then_some(self.total_delta / 12)
    }
    pub fn at_infinity(&self) -> Option<&KodairaFiber> {
        self.fibers.iter().find(|f| f.place == Place::Infinity)
    }
    /// The finite fiber whose place divides, or equals, the given polynomial's root set.
    pub fn at_root(&self, p: &UniPoly<Q>) -> Option<&KodairaFiber> {
        self.fibers.iter().find(|f| match &f.place {
            Place::Finite(q) => p.rem(q).is_ok_and(|r| r.is_zero()),
            Place::Infinity => false,
        })
    }
}

fn val(f: &UniPoly<Q>, p: &UniPoly<Q>) -> u32 {
    if f.is_zero() {
        VAL_INF
    } else {
        f.valuation(p) as u32
    }
}

/// Type from char-0 valuations, after stripping non-minimal multiples of (4, 6, 12).
fn classify_vals(mut v4: u32, mut v6: u32, mut vd: u32) -> Result<((u32, u32, u32), FiberType)> {
    while v4 >= 4 && v6 >= 6 && vd >= 12 {
        if v4 != VAL_INF {
            v4 -= 4;
        }
        if v6 != VAL_INF {
            v6 -= 6;
        }
        vd -= 12;
    }
    use FiberType::*;
    let t = if vd == 0 {
        I(0)
    } else if v4 == 0 {
        I(vd)
    } else {
        match vd {
            2 => II,
            3 => III,
            4 => IV,
            6 => IStar(0),
            // I_n* has v(c4) = 2, v(c6) = 3; the starred exceptional types have v(c4) >= 3
            n if n > 6 && v4 == 2 && v6 == 3 => IStar(n - 6),
            8 => IVStar,
            9 => IIIStar,
            10 => IIStar,
            _ => return Err(Error::NotEllipticModel),
        }
    };
    Ok(((v4, v6, vd), t))
}

/// Kodaira fibers at every bad place, including t = infinity.
///
/// Finite places are a coprime squarefree basis built from disc, c4 and c6,
/// so every irreducible factor of a place has the same valuations.
pub fn kodaira_classify(w: &WeierstrassQt) -> Result<Classification> {
    let (c4, c6, d) = c4_c6_delta(w)?;
    let mut inputs = vec![d.clone()];
    for c in [&c4, &c6] {
        if c.degree().unwrap_or(0) > 0 {
            inputs.push(c.clone());
        }
    }
    let mut fibers = vec![];
    let mut total = 0u32;
    for p in coprime_basis(&inputs) {
        let vd = val(&d, &p);
        if vd == 0 {
            continue;
        }
        let (vals, t) = classify_vals(val(&c4, &p), val(&c6, &p), vd)?;
        total += vals.2 * p.degree().unwrap_or(0) as u32;
        if vals.2 > 0 {
            fibers.push(KodairaFiber { place: Place::Finite(p), fiber_type: t, vals });
        }
    }
    let (wi, _) = w.at_infinity();
    let (c4i, c6i, di) = c4_c6_delta(&wi)?;
    let s = UniPoly::x(Q::zero());
    let (vals, t) = classify_vals(val(&c4i, &s), val(&c6i, &s), val(&di, &s))?;
    total += vals.2;
    if vals.2 > 0 {
        fibers.push(KodairaFiber { place: Place::Infinity, fiber_type: t, vals });
    }
    fibers.sort_by(|a, b| {
        let key = |f: &KodairaFiber| (f.place == Place::Infinity, f.place.degree(), f.fiber_type);
        key(a).cmp(&key(b))
    });
    Ok(Classification { fibers, total_delta: total })
}

/// A claimed fiber: a (not necessarily irreducible) place polynomial, or
/// infinity, with its type.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedFiber {
    pub place: Option<UniPoly<Q>>,
    pub fiber_type: FiberType,
}

/// Compare a classification with claimed fibers, type by type.
///
/// For every type that is reducible or claimed, the product of computed
/// places of that type must equal the product of claimed places of that
/// type up to a constant, and infinity must agree. Returns the mismatches.
pub fn compare_fibers(c: &Classification, expected: &[ExpectedFiber]) -> Vec<String> {
    let mut types: Vec<FiberType> = c.fibers.iter().map(|f| f.fiber_type).filter(|t| t.is_reducible()).collect();
    types.extend(expected.iter().map(|e| e.fiber_type));
    types.sort();
    types.dedup();
    let one = || UniPoly::constant(q(1));
    let mut errs = vec![];
    for t in types {
        let mut got = one();
        let mut got_inf = false;
        for f in c.fibers.iter().filter(|f| f.fiber_type == t) {
            match &f.place {
                Place::Finite(p) => got = got.mul(p),
                Place::Infinity => got_inf = true,
            }
        }
        let mut want = one();
        let mut want_inf = false;
        for e in expected.iter().filter(|e| e.fiber_type == t) {
            match &e.place {
                Some(p) => want = want.mul(p),
                None => want_inf = true,
            }
        }
        if got.monic() != want.monic() || got_inf != want_inf {
            errs.push(format!(
                "type {t}: computed {:?} (inf {got_inf}), claimed {:?} (inf {want_inf})",
                got.monic().coeffs(),
                want.monic().coeffs()
            ));
        }
    }
    errs
}

/// A section `(x(t), y(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionQt {
    pub x: RationalFunction,
    pub y: RationalFunction,
}

impl SectionQt {
    pub fn negate(&self, w: &WeierstrassQt) -> Self {
        // -P = (x, -y - a1 x - a3)
        let rf = |p: &UniPoly<Q>| RationalFunction::from_poly(p.clone());
        SectionQt { x: self.x.clone(), y: self.y.neg().sub(&rf(&w.a1).mul(&self.x)).sub(&rf(&w.a3)) }
    }
}

/// Exact check that the section lies on the surface.
pub fn verify_section(w: &WeierstrassQt, s: &SectionQt) -> bool {
    w.residual(s).is_zero()
}

/// A Weierstrass family: coefficients are polynomials in parameters and t
/// (t is the last variable).
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFamily {
    pub a: [MPoly; 5],
}

/// A family section with `x = x_num / x_den`, `y = y_num / y_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionFamily {
    pub x_num: MPoly,
    pub x_den: MPoly,
    pub y_num: MPoly,
    pub y_den: MPoly,
}

impl WeierstrassFamily {
    pub fn specialize(&self, params: &[Q]) -> WeierstrassQt {
        let s: Vec<_> = self.a.iter().map(|m| m.specialize(params)).collect();
        WeierstrassQt::new(s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone(), s[4].clone())
    }
    pub fn nparams(&self) -> usize {
        self.a[0].nvars() - 1
    }
}

impl SectionFamily {
    pub fn specialize(&self, params: &[Q]) -> Option<SectionQt> {
        let x = RationalFunction::new(self.x_num.specialize(params), self.x_den.specialize(params)).ok()?;
        let y = RationalFunction::new(self.y_num.specialize(params), self.y_den.specialize(params)).ok()?;
        Some(SectionQt { x, y })
    }
}

/// Verify a family section at `specializations` seeded random rational
/// parameter values, each check exact.
pub fn verify_section_family(w: &WeierstrassFamily, s: &SectionFamily, specializations: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < specializations {
        let params: Vec<Q> = (0..w.nparams())
            .map(|_| Q::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=9).into()))
            .collect();
        let Some(sec) = s.specialize(&params) else { continue };
        if !verify_section(&w.specialize(&params), &sec) {
            return false;
        }
        done += 1;
    }
    true
}

/// Classical invariants (I, J) of `a x^4 + b x^3 + c x^2 + d x + e`.
pub fn quartic_invariants(
    a: &UniPoly<Q>,
    b: &UniPoly<Q>,
    c: &UniPoly<Q>,
    d: &UniPoly<Q>,
    e: &UniPoly<Q>,
) -> (UniPoly<Q>, UniPoly<Q>) {
    let k = |n: i64| UniPoly::constant(q(n));
    let i = k(12).mul(a).mul(e).sub(&k(3).mul(b).mul(d)).add(&c.mul(c));
    let j = k(72)
        .mul(a)
        .mul(c)
        .mul(e)
        .add(&k(9).mul(b).mul(c).mul(d))
        .sub(&k(27).mul(a).mul(d).mul(d))
        .sub(&k(27).mul(e).mul(b).mul(b))
        .sub(&k(2).mul(&c.pow(3)));
    (i, j)
}

/// Jacobian `Y^2 = X^3 - 27 I X - 27 J` of `y^2 = q(x)`.
///
/// `q` holds the x-coefficients in ascending order as polynomials in the
/// base parameter; a cubic is read as a quartic with zero leading term.
pub fn jacobian_of_quartic(qx: &[UniPoly<Q>]) -> Result<WeierstrassQt> {
    if qx.len() < 4 || qx.len() > 5 {
        return Err(Error::NotSquarefree);
    }
    let z = zp();
    let g = |i: usize| qx.get(i).cloned().unwrap_or_else(|| z.clone());
    let (e, d, c, b, a) = (g(0), g(1), g(2), g(3), g(4));
    let (i, j) = quartic_invariants(&a, &b, &c, &d, &e);
    let m27 = UniPoly::constant(q(-27));
    let w = WeierstrassQt::short(i.mul(&m27), j.mul(&m27));
    match c4_c6_delta(&w) {
        Ok(_) => Ok(w),
        Err(_) => Err(Error::NotSquarefree),
    }
}
