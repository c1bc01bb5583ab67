//! The thirty Hilbert modular surface equations and their checks:
//! square lifting of table points, invariant matching, branch
//! parametrizations and the twist search.

pub mod schema;
mod twist;

pub use twist::{twist_search, TwistOptions, TwistSearchResult};

use crate::ellsurf::{
    fiber_contribution, section_height, shioda_tate_disc, ExpectedFiber, FiberType, LatticeGram, RootLattice,
    SectionFamily, WeierstrassFamily, WeierstrassQt,
};
use crate::exactmath::{is_rational_square, parse_q, BiPoly, MPoly, RationalFunction, UniPoly, Q};
use crate::igusa::{igusa_clebsch, weighted_equal, IgusaClebsch, SexticForm};
use crate::rmdetect::{is_good_prime, rm_check, CurveFF, RMVerdict};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use schema::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::path::Path;

/// The discriminants in the database, ascending.
pub const DISCRIMINANTS: [i64; 30] = [
    5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44, 53, 56, 57, 60, 61, 65, 69, 73, 76, 77, 85, 88, 89, 92, 93,
    97,
];

/// The shipped database file.
pub const BUNDLED_JSON: &str = include_str!("../../data/hms.json");

/// Environment variable overriding the database path.
pub const DB_ENV: &str = "HMSKIT_DB";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchMeaning {
    ExtraI2,
    FiberPromotion,
    SectionDivisibility,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub var: String,
    pub x: RationalFunction,
    pub y: RationalFunction,
    pub derived: bool,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchComponent {
    pub factor: BiPoly,
    pub meaning: BranchMeaning,
    pub parametrizations: Vec<Parametrization>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointRow {
    pub coords: (Q, Q),
    pub sextic: SexticForm<Q>,
    /// Set for rows quarantined as inconsistent transcriptions.
    pub disputed: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    Rational,
    K3,
    HonestlyElliptic,
    GeneralType,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IcMap {
    /// I2, I4, I6, I10 as polynomials in the record coordinates.
    pub inv: [BiPoly; 4],
    pub source: String,
}

impl IcMap {
    pub fn eval(&self, r: &Q, s: &Q) -> IgusaClebsch<Q> {
        let [a, b, c, d] = &self.inv;
        IgusaClebsch::new(a.eval(r, s), b.eval(r, s), c.eval(r, s), d.eval(r, s))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistCandidates {
    pub factors: Vec<BiPoly>,
    pub labels: Vec<String>,
    /// Indices of factors that come from extra II fibers.
    pub extra_ii: Vec<usize>,
    pub expected_c: i64,
    pub expected_subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct K3Family {
    pub vars: Vec<String>,
    pub model: WeierstrassFamily,
    pub section: SectionFamily,
    pub height: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fibration {
    pub name: String,
    pub base: String,
    pub model: WeierstrassQt,
    pub expected: Vec<ExpectedFiber>,
    pub chi: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeData {
    pub fibers: Vec<RootLattice>,
    pub height: LatticeGram,
    pub torsion: u32,
    pub ns_disc: i64,
    /// Sign of the NS discriminant.
    pub sign: i8,
    pub model: String,
}

impl LatticeData {
    pub fn computed_disc(&self) -> Result<Q> {
        shioda_tate_disc(&self.fibers, &self.height, self.torsion)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightIdentity {
    pub value: Q,
    pub chi: u32,
    pub po: u32,
    /// Fiber lattice and the component the section meets.
    pub components: Vec<(RootLattice, usize)>,
}

impl HeightIdentity {
    pub fn computed(&self) -> Result<Q> {
        let c = self.components.iter().map(|&(l, k)| fiber_contribution(l, k)).collect::<Result<Vec<_>>>()?;
        Ok(section_height(self.chi, self.po, &c))
    }
}

/// One surface `z^2 = twist * cover(r, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HMSRecord {
    pub d: i64,
    pub coord_names: [String; 2],
    /// Primitive part of the printed polynomial.
    pub cover: BiPoly,
    pub twist: Q,
    pub cover_source: String,
    pub branch_components: Vec<BranchComponent>,
    pub points: Vec<PointRow>,
    pub surface_kind: SurfaceKind,
    pub picard: Option<u32>,
    pub ic_map: Option<IcMap>,
    pub twist_candidates: Option<TwistCandidates>,
    pub k3_family: Option<K3Family>,
    pub fibrations: Vec<Fibration>,
    pub lattice: Option<LatticeData>,
    pub heights: Vec<HeightIdentity>,
    raw: RawRecord,
}

impl HMSRecord {
    /// The printed polynomial, `twist * cover`.
    pub fn full_cover(&self) -> BiPoly {
        self.cover.scale(&self.twist)
    }
    /// The stored file form of this record.
    pub fn raw(&self) -> &RawRecord {
        &self.raw
    }
    pub fn fibration(&self, name: &str) -> Option<&Fibration> {
        self.fibrations.iter().find(|f| f.name == name)
    }
}

// ---- parsing ----

fn perr(at: &str, msg: impl Into<String>) -> Error {
    Error::Parse { at: at.to_string(), msg: msg.into() }
}

fn pq(s: &str, at: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| perr(at, format!("malformed rational {s:?}")))
}

fn pterms(t: &RawTerms, at: &str) -> Result<BiPoly> {
    let mut out = Vec::with_capacity(t.len());
    for (k, (i, j, c)) in t.iter().enumerate() {
        out.push((*i, *j, pq(c, &format!("{at}[{k}]"))?));
    }
    Ok(BiPoly::from_terms(out))
}

fn pmterms(t: &RawMTerms, at: &str) -> Result<MPoly> {
    let mut out = Vec::with_capacity(t.len());
    for (k, (i, j, l, c)) in t.iter().enumerate() {
        out.push((vec![*i, *j, *l], pq(c, &format!("{at}[{k}]"))?));
    }
    Ok(MPoly::from_terms(3, out))
}

fn ppoly(c: &[String], at: &str) -> Result<UniPoly<Q>> {
    let v = c.iter().enumerate().map(|(k, s)| pq(s, &format!("{at}[{k}]"))).collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(v, Q::zero()))
}

fn pratfun(r: &RawRatFun, at: &str) -> Result<RationalFunction> {
    let n = ppoly(&r.num, &format!("{at}.num"))?;
    let d = ppoly(&r.den, &format!("{at}.den"))?;
    RationalFunction::new(n, d).map_err(|_| perr(at, "zero denominator"))
}

fn convert(raw: RawRecord) -> Result<HMSRecord> {
    let at = format!("D={}", raw.d);
    let a = |s: &str| format!("{at}.{s}");
    let cover = pterms(&raw.cover.terms, &a("cover.terms"))?;
    if cover.is_empty() {
        return Err(perr(&a("cover"), "empty polynomial"));
    }
    if !cover.content().is_one() {
        return Err(perr(&a("cover"), "content is not 1"));
    }
    let twist = pq(&raw.twist, &a("twist"))?;
    if !twist.is_positive() {
        return Err(perr(&a("twist"), "twist must be positive"));
    }
    let mut branch_components = vec![];
    for (k, b) in raw.branch_components.iter().enumerate() {
        let bat = a(&format!("branch_components[{k}]"));
        let meaning = match b.meaning.as_str() {
            "extra-I2" => BranchMeaning::ExtraI2,
            "fiber-promotion" => BranchMeaning::FiberPromotion,
            "section-divisibility" => BranchMeaning::SectionDivisibility,
            m => return Err(perr(&bat, format!("unknown meaning {m:?}"))),
        };
        let mut ps = vec![];
        for (j, p) in b.parametrizations.iter().enumerate() {
            let pat = format!("{bat}.parametrizations[{j}]");
            ps.push(Parametrization {
                var: p.var.clone(),
                x: pratfun(&p.x, &format!("{pat}.x"))?,
                y: pratfun(&p.y, &format!("{pat}.y"))?,
                derived: p.derived,
                source: p.source.clone(),
            });
        }
        branch_components.push(BranchComponent {
            factor: pterms(&b.factor, &format!("{bat}.factor"))?,
            meaning,
            parametrizations: ps,
        });
    }
    let mut points = vec![];
    for (k, p) in raw.points.iter().enumerate() {
        let pat = a(&format!("points[{k}]"));
        let c = (pq(&p.coords[0], &format!("{pat}.coords[0]"))?, pq(&p.coords[1], &format!("{pat}.coords[1]"))?);
        let f = p
            .sextic
            .iter()
            .enumerate()
            .map(|(j, s)| pq(s, &format!("{pat}.sextic[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let sextic = SexticForm::new(&f).map_err(|_| perr(&pat, "sextic must have degree 5 or 6"))?;
        points.push(PointRow { coords: c, sextic, disputed: p.disputed.clone() });
    }
    let surface_kind = match raw.surface_kind.kind.as_str() {
        "rational" => SurfaceKind::Rational,
        "K3" => SurfaceKind::K3,
        "honestly-elliptic" => SurfaceKind::HonestlyElliptic,
        "general-type" => SurfaceKind::GeneralType,
        k => return Err(perr(&a("surface_kind"), format!("unknown kind {k:?}"))),
    };
    let ic_map = match &raw.ic_map {
        None => None,
        Some(m) => Some(IcMap {
            inv: [
                pterms(&m.i2, &a("ic_map.I2"))?,
                pterms(&m.i4, &a("ic_map.I4"))?,
                pterms(&m.i6, &a("ic_map.I6"))?,
                pterms(&m.i10, &a("ic_map.I10"))?,
            ],
            source: m.source.clone(),
        }),
    };
    let twist_candidates = match &raw.twist_candidates {
        None => None,
        Some(t) => {
            let factors = t
                .factors
                .iter()
                .enumerate()
                .map(|(k, f)| pterms(f, &a(&format!("twist_candidates.factors[{k}]"))))
                .collect::<Result<Vec<_>>>()?;
            let n = factors.len();
            if t.labels.len() != n || t.extra_ii.iter().chain(&t.expected_subset).any(|&i| i >= n) {
                return Err(perr(&a("twist_candidates"), "index or label count out of range"));
            }
            Some(TwistCandidates {
                factors,
                labels: t.labels.clone(),
                extra_ii: t.extra_ii.clone(),
                expected_c: t.expected_c,
                expected_subset: t.expected_subset.clone(),
            })
        }
    };
    let k3_family = match &raw.k3_family {
        None => None,
        Some(k) => {
            let f = |t: &RawMTerms, n: &str| pmterms(t, &a(&format!("k3_family.{n}")));
            let s = &k.section;
            Some(K3Family {
                vars: k.vars.clone(),
                model: WeierstrassFamily {
                    a: [f(&k.a1, "a1")?, f(&k.a2, "a2")?, f(&k.a3, "a3")?, f(&k.a4, "a4")?, f(&k.a6, "a6")?],
                },
                section: SectionFamily {
                    x_num: f(&s.x_num, "section.x_num")?,
                    x_den: f(&s.x_den, "section.x_den")?,
                    y_num: f(&s.y_num, "section.y_num")?,
                    y_den: f(&s.y_den, "section.y_den")?,
                },
                height: pq(&s.height, &a("k3_family.section.height"))?,
            })
        }
    };
    let mut fibrations = vec![];
    for (k, fb) in raw.fibrations.iter().enumerate() {
        let fat = a(&format!("fibrations[{k}]"));
        let c = fb.a.iter().enumerate().map(|(i, c)| ppoly(c, &format!("{fat}.a[{i}]"))).collect::<Result<Vec<_>>>()?;
        let mut expected = vec![];
        for (j, e) in fb.expected_fibers.iter().enumerate() {
            let eat = format!("{fat}.expected_fibers[{j}]");
            let place = match &e.place {
                None => None,
                Some(p) => Some(ppoly(p, &eat)?),
            };
            let fiber_type: FiberType = e.fiber_type.parse().map_err(|_| perr(&eat, "unknown fiber type"))?;
            expected.push(ExpectedFiber { place, fiber_type });
        }
        fibrations.push(Fibration {
            name: fb.name.clone(),
            base: fb.base.clone(),
            model: WeierstrassQt::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone()),
            expected,
            chi: fb.chi,
        });
    }
    let lattice = match &raw.lattice {
        None => None,
        Some(l) => {
            let lat = a("lattice");
            let fibers = l.fibers.iter().map(|s| s.parse()).collect::<Result<Vec<RootLattice>>>()?;
            let mut rows = vec![];
            for (i, r) in l.height_matrix.iter().enumerate() {
                rows.push(r.iter().map(|s| pq(s, &format!("{lat}.height_matrix[{i}]"))).collect::<Result<Vec<_>>>()?);
            }
            let height = LatticeGram(rows);
            if !height.is_symmetric() {
                return Err(perr(&lat, "height matrix is not symmetric"));
            }
            Some(LatticeData {
                fibers,
                height,
                torsion: l.torsion,
                ns_disc: l.ns_disc,
                sign: l.sign,
                model: l.model.clone(),
            })
        }
    };
    let mut heights = vec![];
    for (k, h) in raw.heights.iter().enumerate() {
        let hat = a(&format!("heights[{k}]"));
        let components = h
            .components
            .iter()
            .map(|c| Ok((c.fiber.parse::<RootLattice>()?, c.component)))
            .collect::<Result<Vec<_>>>()?;
        heights.push(HeightIdentity { value: pq(&h.value, &hat)?, chi: h.chi, po: h.po, components });
    }
    Ok(HMSRecord {
        d: raw.d,
        coord_names: raw.coords.clone(),
        cover,
        twist,
        cover_source: raw.cover.source.clone(),
        branch_components,
        points,
        surface_kind,
        picard: raw.surface_kind.picard,
        ic_map,
        twist_candidates,
        k3_family,
        fibrations,
        lattice,
        heights,
        raw,
    })
}

/// Parse and validate database text.
pub fn parse_database(text: &str) -> Result<Vec<HMSRecord>> {
    let db: RawDb = serde_json::from_str(text)
        .map_err(|e| perr(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    if db.schema != SCHEMA_VERSION {
        return Err(perr("schema", format!("expected version {SCHEMA_VERSION}, found {}", db.schema)));
    }
    let mut seen = BTreeSet::new();
    for r in &db.records {
        if !seen.insert(r.d) {
            return Err(perr(&format!("D={}", r.d), "duplicate discriminant"));
        }
    }
    if seen.iter().copied().collect::<Vec<_>>() != DISCRIMINANTS {
        return Err(perr("records", format!("expected the 30 discriminants, found {seen:?}")));
    }
    db.records.into_iter().map(convert).collect()
}

/// Load a database file.
pub fn load_database(path: &Path) -> Result<Vec<HMSRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_database(&text)
}

/// The database named by `HMSKIT_DB`, or the bundled one.
pub fn default_database() -> Result<Vec<HMSRecord>> {
    match std::env::var_os(DB_ENV) {
        Some(p) => load_database(Path::new(&p)),
        None => parse_database(BUNDLED_JSON),
    }
}

/// Pretty JSON in the file layout, newline-terminated.
pub fn serialize_database(records: &[HMSRecord]) -> String {
    let db = RawDb { schema: SCHEMA_VERSION, records: records.iter().map(|r| r.raw.clone()).collect() };
    let mut s = serde_json::to_string_pretty(&db).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn find(records: &[HMSRecord], d: i64) -> Option<&HMSRecord> {
    records.iter().find(|r| r.d == d)
}

// ---- verification ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RmSpot {
    pub p: u64,
    pub n1: u64,
    pub n2: u64,
    pub a: i64,
    pub b: i64,
    pub disc_q: i64,
    pub p_irreducible: bool,
    pub verdict: String,
    /// False only for `NoRmEvidence` with P irreducible.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub index: usize,
    pub coords: [String; 2],
    pub disputed: Option<String>,
    /// `cover(point)` is a nonzero rational square.
    pub square: bool,
    /// Nonnegative square root of `twist * cover(point)`.
    pub sqrt: Option<String>,
    /// Weighted equality of the row's invariants with the map, if there is one.
    pub ic_match: Option<bool>,
    pub ic_sextic: Option<[String; 4]>,
    pub ic_map: Option<[String; 4]>,
    pub rm: Vec<RmSpot>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub component: usize,
    pub parametrization: usize,
    pub var: String,
    pub derived: bool,
    pub identically_zero: bool,
    /// Numerator of the composition when it is not zero.
    pub remainder: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordReport {
    pub d: i64,
    pub rows: Vec<RowReport>,
    pub branch: Vec<BranchReport>,
    pub rows_passed: usize,
    pub rows_total: usize,
    pub quarantined: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rm_primes: Vec<u64>,
    pub records: Vec<RecordReport>,
    pub quarantined: usize,
    pub passed: bool,
}

fn ic_strings(ic: &IgusaClebsch<Q>) -> [String; 4] {
    ic.coords().map(|c| c.to_string())
}

/// RM spot-check of one row at one prime; `None` if `p` is not good.
pub fn rm_spot(rec: &HMSRecord, row: &PointRow, p: u64) -> Option<RmSpot> {
    if !is_good_prime(&row.sextic, p, rec.d) {
        return None;
    }
    let c = CurveFF::from_rational(&row.sextic, p).ok()?;
    let (w, irr, v) = rm_check(&c, rec.d).ok()?;
    let ok = !(irr && v == RMVerdict::NoRmEvidence);
    Some(RmSpot {
        p,
        n1: w.n1,
        n2: w.n2,
        a: w.a,
        b: w.b,
        disc_q: w.disc_q(),
        p_irreducible: irr,
        verdict: format!("{v:?}"),
        ok,
    })
}

/// Check one table row: square lifting, invariant match, RM spot-checks.
pub fn verify_point_row(rec: &HMSRecord, index: usize, rm_primes: &[u64]) -> RowReport {
    let row = &rec.points[index];
    let (r, s) = &row.coords;
    let v = rec.full_cover().eval(r, s);
    let sqrt = if v.is_zero() { None } else { is_rational_square(&v) };
    let square = sqrt.is_some();
    let (mut ic_match, mut ic_sextic, mut ic_map) = (None, None, None);
    if let Some(m) = &rec.ic_map {
        let want = m.eval(r, s);
        ic_map = Some(ic_strings(&want));
        match igusa_clebsch(&row.sextic) {
            Ok(got) => {
                ic_match = Some(!want.i10.is_zero() && weighted_equal(&got, &want));
                ic_sextic = Some(ic_strings(&got));
            }
            Err(_) => ic_match = Some(false),
        }
    }
    let rm: Vec<RmSpot> = rm_primes.iter().filter_map(|&p| rm_spot(rec, row, p)).collect();
    let passed = square && ic_match != Some(false) && rm.iter().all(|x| x.ok);
    RowReport {
        index,
        coords: [r.to_string(), s.to_string()],
        disputed: row.disputed.clone(),
        square,
        sqrt: sqrt.map(|z| z.to_string()),
        ic_match,
        ic_sextic,
        ic_map,
        rm,
        passed,
    }
}

/// Compose every stored parametrization with its factor.
pub fn verify_branch(rec: &HMSRecord) -> Vec<BranchReport> {
    let mut out = vec![];
    for (ci, c) in rec.branch_components.iter().enumerate() {
        for (pi, p) in c.parametrizations.iter().enumerate() {
            let v = c.factor.eval_rf(&p.x, &p.y);
            let zero = v.is_zero();
            out.push(BranchReport {
                component: ci,
                parametrization: pi,
                var: p.var.clone(),
                derived: p.derived,
                identically_zero: zero,
                remainder: (!zero).then(|| v.num().coeffs().iter().map(|q| q.to_string()).collect()),
            });
        }
    }
    out
}

/// Verify the records with discriminant `only` (or all), in parallel over rows.
pub fn verify_database(records: &[HMSRecord], only: Option<i64>, rm_primes: &[u64]) -> VerificationReport {
    let chosen: Vec<&HMSRecord> = records.iter().filter(|r| only.is_none_or(|d| r.d == d)).collect();
    let reports: Vec<RecordReport> = chosen
        .par_iter()
        .map(|rec| {
            let rows: Vec<RowReport> =
                (0..rec.points.len()).into_par_iter().map(|i| verify_point_row(rec, i, rm_primes)).collect();
            let branch = verify_branch(rec);
            let quarantined = rows.iter().filter(|r| r.disputed.is_some()).count();
            let rows_passed = rows.iter().filter(|r| r.passed).count();
            let passed =
                rows.iter().all(|r| r.passed || r.disputed.is_some()) && branch.iter().all(|b| b.identically_zero);
            RecordReport { d: rec.d, rows_total: rows.len(), rows, branch, rows_passed, quarantined, passed }
        })
        .collect();
    let quarantined = reports.iter().map(|r| r.quarantined).sum();
    let passed = quarantined <= 2 && reports.iter().all(|r| r.passed);
    VerificationReport { rm_primes: rm_primes.to_vec(), records: reports, quarantined, passed }
}
