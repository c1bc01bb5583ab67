//! The `hmskit` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use crate::curvesearch::{build_invariant_table, curve_from_ic, InvariantTable, MAX_TABLE_PRIME};
use crate::ellsurf::{
    fiber_contribution, kodaira_classify, section_height, shioda_tate_disc, LatticeGram, Place, RootLattice,
    WeierstrassQt, VAL_INF,
};
use crate::exactmath::{parse_q, FiniteField, UniPoly, Q};
use crate::hmsdb::{self, HMSRecord, TwistOptions};
use crate::igusa::{canonical_rep, igusa_clebsch, IgusaClebsch, SexticForm};
use crate::rmdetect::{count_points, rm_check, CurveFF};
use crate::shioda_inose::{ic_from_k3, k3_from_ic, K3Model};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "hmskit", version, about = "Exact tools for Hilbert modular surfaces of small discriminant")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Database file (default: $HMSKIT_DB, else the bundled copy).
    #[arg(long, global = true)]
    pub db: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Igusa-Clebsch invariants of y^2 = f(x).
    Invariants(InvariantsArgs),
    /// Convert between invariants and the K3 coefficients (a, a', b'', b, b').
    K3(K3Args),
    /// Kodaira fiber table of a Weierstrass model over Q(t).
    Fibers(FibersArgs),
    /// Section height 2 chi + 2 (P.O) - sum of corrections.
    Height(HeightArgs),
    /// Neron-Severi discriminant from fibers, height matrix and torsion.
    Nsdisc(NsdiscArgs),
    /// Point count over F_p or F_{p^2}.
    Count(CountArgs),
    /// Real-multiplication test from point counts.
    RmTest(RmTestArgs),
    /// Build the invariant table for a prime.
    Mktable(MktableArgs),
    /// Look up a curve with given invariants in a table.
    CurveFromIc(CurveFromIcArgs),
    /// Print a database record.
    Show(ShowArgs),
    /// Run the database verification pipeline.
    Verify(VerifyArgs),
    /// Recover the twist constant and branch factors.
    TwistSearch(TwistSearchArgs),
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    /// Coefficients "f6,...,f0" (descending; give 0 for f6 on a quintic).
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Print the canonical representative over F_p.
    #[arg(long, requires = "prime")]
    pub normalize: bool,
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct K3Args {
    /// I2 I4 I6 I10.
    #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["I2", "I4", "I6", "I10"])]
    pub from_ic: Option<Vec<String>>,
    /// a a' b'' b b'.
    #[arg(long, num_args = 5, allow_hyphen_values = true, value_names = ["A", "A1", "B2", "B", "B1"])]
    pub to_ic: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct FibersArgs {
    /// JSON file {"a": [a1, a2, a3, a4, a6]} with ascending coefficient lists.
    #[arg(long, conflicts_with = "disc")]
    pub model: Option<PathBuf>,
    /// Take the model from a database record.
    #[arg(long)]
    pub disc: Option<i64>,
    /// Fibration name within the record (default: the first).
    #[arg(long, requires = "disc")]
    pub name: Option<String>,
}

#[derive(Args, Debug)]
pub struct HeightArgs {
    /// Euler characteristic of the surface.
    #[arg(long)]
    pub chi: u32,
    /// Intersection number of the section with the zero section.
    #[arg(long)]
    pub po: u32,
    /// Correction terms as rationals, comma separated or repeated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub contr: Vec<String>,
    /// Fiber components "A8:3", "D7:1", "E7:1", comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub component: Vec<String>,
}

#[derive(Args, Debug)]
pub struct NsdiscArgs {
    /// Reducible fiber lattices, e.g. "A1,A1,A2".
    #[arg(long, value_delimiter = ',')]
    pub fibers: Vec<String>,
    /// Height matrix, rows separated by ';', e.g. "1/3,0;0,13/6".
    #[arg(long, allow_hyphen_values = true)]
    pub gram: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub torsion: u32,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Coefficients "f6,...,f0" (descending).
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Odd prime of good reduction.
    #[arg(long)]
    pub prime: u64,
    /// Extension degree, 1 or 2.
    #[arg(long, default_value_t = 1)]
    pub ext: u32,
}

#[derive(Args, Debug)]
pub struct RmTestArgs {
    /// Coefficients "f6,...,f0" (descending).
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Odd prime of good reduction.
    #[arg(long)]
    pub prime: u64,
    /// Fundamental discriminant D.
    #[arg(long)]
    pub disc: i64,
}

#[derive(Args, Debug)]
pub struct MktableArgs {
    /// Odd prime, at most 13.
    #[arg(long)]
    pub prime: u64,
    /// Output file.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CurveFromIcArgs {
    /// Table written by mktable.
    #[arg(long)]
    pub table: PathBuf,
    /// I2 I4 I6 I10 (rationals, reduced mod the table prime).
    #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["I2", "I4", "I6", "I10"])]
    pub ic: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ShowArgs {
    /// Discriminant of the record.
    #[arg(long)]
    pub disc: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Only this discriminant (default: all thirty).
    #[arg(long)]
    pub disc: Option<i64>,
    /// Primes for RM spot-checks, e.g. "7,11,13".
    #[arg(long, value_delimiter = ',')]
    pub rm_primes: Vec<u64>,
}

#[derive(Args, Debug)]
pub struct TwistSearchArgs {
    #[arg(long)]
    pub disc: i64,
    /// Primes to use, e.g. "11,13".
    #[arg(long, value_delimiter = ',', required = true)]
    pub primes: Vec<u64>,
    /// Directory with table_<p>.bin files; missing tables are built (and
    /// saved there).
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// Leave extra-II factors out of the candidate subsets.
    #[arg(long)]
    pub no_extra_ii: bool,
}

enum Outcome {
    Ok,
    Failed,
}

/// Run with `argv` (including the program name); returns the exit code.
pub fn run<S: AsRef<str>>(argv: &[S]) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(Error::NoSurvivors) => {
            eprintln!("error: {}", Error::NoSurvivors);
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(json_mode: bool, v: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(v).expect("json value"));
    } else {
        print!("{}", text());
    }
}

fn bad(at: &str, msg: &str) -> Error {
    Error::Parse { at: at.into(), msg: msg.into() }
}

fn rat(s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| bad(s, "not a rational number"))
}

/// "f6,...,f0" into a form; quintics may omit f6.
pub fn parse_curve(s: &str) -> Result<SexticForm<Q>> {
    let mut c = s.split(',').map(|t| rat(t.trim())).collect::<Result<Vec<_>>>()?;
    if c.len() != 6 && c.len() != 7 {
        return Err(bad(s, "expected 6 or 7 coefficients"));
    }
    c.reverse();
    SexticForm::new(&c)
}

fn database(cli: &Cli) -> Result<Vec<HMSRecord>> {
    match &cli.db {
        Some(p) => hmsdb::load_database(p),
        None => hmsdb::default_database(),
    }
}

fn record(db: &[HMSRecord], d: i64) -> Result<&HMSRecord> {
    hmsdb::find(db, d).ok_or_else(|| bad(&format!("D={d}"), "no such record"))
}

fn ic_json(ic: &IgusaClebsch<impl std::fmt::Display + crate::exactmath::Field>) -> Value {
    json!({"I2": ic.i2.to_string(), "I4": ic.i4.to_string(), "I6": ic.i6.to_string(), "I10": ic.i10.to_string()})
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let js = cli.json;
    match &cli.command {
        Command::Invariants(a) => {
            let f = parse_curve(&a.curve)?;
            let ic = igusa_clebsch(&f)?;
            let mut v = json!({"invariants": ic_json(&ic)});
            let mut text = format!("I2 = {}\nI4 = {}\nI6 = {}\nI10 = {}\n", ic.i2, ic.i4, ic.i6, ic.i10);
            if a.normalize {
                let p = a.prime.expect("clap enforces --prime");
                let field = FiniteField::prime(p)?;
                let red = IgusaClebsch::reduce(&ic, &field).ok_or(Error::BadReduction(p))?;
                let c = canonical_rep(&red)?;
                let t = [c.i2.a, c.i4.a, c.i6.a, c.i10.a];
                v["canonical"] = json!({"prime": p, "rep": t});
                text += &format!("canonical mod {p}: ({}, {}, {}, {})\n", t[0], t[1], t[2], t[3]);
            }
            emit(js, &v, || text);
        }
        Command::K3(a) => {
            if let Some(v) = &a.from_ic {
                let c = v.iter().map(|s| rat(s)).collect::<Result<Vec<_>>>()?;
                let m = k3_from_ic(&IgusaClebsch::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))?;
                let out = json!({"a": m.a.to_string(), "a1": m.a1.to_string(), "b2": m.b2.to_string(),
                    "b": m.b.to_string(), "b1": m.b1.to_string()});
                emit(js, &out, || {
                    format!(
                        "y^2 = x^3 + t^3 (a t + a') x + t^5 (b'' t^2 + b t + b')\na = {}\na' = {}\nb'' = {}\nb = {}\nb' = {}\n",
                        m.a, m.a1, m.b2, m.b, m.b1
                    )
                });
            } else if let Some(v) = &a.to_ic {
                let c = v.iter().map(|s| rat(s)).collect::<Result<Vec<_>>>()?;
                let m = K3Model::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone());
                let ic = ic_from_k3(&m)?;
                emit(js, &ic_json(&ic), || {
                    format!("I2 = {}\nI4 = {}\nI6 = {}\nI10 = {}\n", ic.i2, ic.i4, ic.i6, ic.i10)
                });
            }
        }
        Command::Fibers(a) => {
            let (w, chi_claim) = if let Some(path) = &a.model {
                (read_model(path)?, None)
            } else if let Some(d) = a.disc {
                let db = database(cli)?;
                let rec = record(&db, d)?;
                let fb = match &a.name {
                    Some(n) => rec.fibration(n),
                    None => rec.fibrations.first(),
                }
                .ok_or_else(|| bad(&format!("D={d}"), "no such fibration"))?;
                (fb.model.clone(), Some(fb.chi))
            } else {
                return Err(bad("fibers", "give --model or --disc"));
            };
            let c = kodaira_classify(&w)?;
            let mut rows = vec![];
            let mut text = format!("{:<40} {:<6} {:<14} {}\n", "place", "type", "(v4,v6,vd)", "lattice");
            for f in &c.fibers {
                let place = match &f.place {
                    Place::Infinity => "inf".to_string(),
                    Place::Finite(p) => poly_string(p, "t"),
                };
                let vs: Vec<String> = [f.vals.0, f.vals.1, f.vals.2]
                    .iter()
                    .map(|&v| if v == VAL_INF { "inf".into() } else { v.to_string() })
                    .collect();
                let lat = f.fiber_type.root_lattice().map(|l| l.to_string()).unwrap_or_else(|| "-".into());
                text += &format!(
                    "{:<40} {:<6} {:<14} {}\n",
                    place,
                    f.fiber_type.to_string(),
                    format!("({})", vs.join(",")),
                    lat
                );
                rows.push(json!({"place": place, "type": f.fiber_type.to_string(), "vals": vs, "lattice": lat}));
            }
            let chi = c.chi();
            text +=
                &format!("euler number {} (chi {})\n", c.total_delta, chi.map(|x| x.to_string()).unwrap_or("-".into()));
            if let (Some(cc), Some(want)) = (chi, chi_claim) {
                if cc != want {
                    text += &format!("warning: stored chi {want}\n");
                }
            }
            emit(js, &json!({"fibers": rows, "euler": c.total_delta, "chi": chi}), || text);
        }
        Command::Height(a) => {
            let mut cs = a.contr.iter().map(|s| rat(s)).collect::<Result<Vec<_>>>()?;
            for comp in &a.component {
                let (l, k) = comp.split_once(':').ok_or_else(|| bad(comp, "expected LATTICE:INDEX"))?;
                let l: RootLattice = l.parse()?;
                let k: usize = k.parse().map_err(|_| bad(comp, "bad component index"))?;
                cs.push(fiber_contribution(l, k)?);
            }
            let h = section_height(a.chi, a.po, &cs);
            emit(js, &json!({"height": h.to_string()}), || format!("{h}\n"));
        }
        Command::Nsdisc(a) => {
            let fibers = a.fibers.iter().map(|s| s.parse()).collect::<Result<Vec<RootLattice>>>()?;
            let gram = match &a.gram {
                None => LatticeGram(vec![]),
                Some(g) => LatticeGram(
                    g.split(';')
                        .map(|row| row.split(',').map(|x| rat(x.trim())).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            if !gram.is_symmetric() {
                return Err(bad("--gram", "matrix must be square and symmetric"));
            }
            let d = shioda_tate_disc(&fibers, &gram, a.torsion)?;
            emit(js, &json!({"disc": d.to_string(), "det_height": gram.det().to_string()}), || format!("{d}\n"));
        }
        Command::Count(a) => {
            let f = parse_curve(&a.curve)?;
            let c = CurveFF::from_rational(&f, a.prime)?;
            let n = count_points(&c, a.ext)?;
            emit(js, &json!({"prime": a.prime, "ext": a.ext, "count": n}), || format!("{n}\n"));
        }
        Command::RmTest(a) => {
            let f = parse_curve(&a.curve)?;
            let c = CurveFF::from_rational(&f, a.prime)?;
            let (w, irr, v) = rm_check(&c, a.disc)?;
            let out = json!({"prime": a.prime, "n1": w.n1, "n2": w.n2, "a": w.a, "b": w.b,
                "disc_q": w.disc_q(), "p_irreducible": irr, "verdict": format!("{v:?}")});
            emit(js, &out, || {
                format!(
                    "n1 = {}\nn2 = {}\na = {}\nb = {}\ndisc Q = {}\nP irreducible: {}\nverdict: {:?}\n",
                    w.n1,
                    w.n2,
                    w.a,
                    w.b,
                    w.disc_q(),
                    irr,
                    v
                )
            });
        }
        Command::Mktable(a) => {
            if a.prime > MAX_TABLE_PRIME {
                return Err(Error::PrimeOutOfRange(a.prime));
            }
            let t = build_invariant_table(a.prime)?;
            t.save(&a.out)?;
            emit(js, &json!({"prime": t.p, "entries": t.len(), "out": a.out.display().to_string()}), || {
                format!("wrote {} entries for p = {} to {}\n", t.len(), t.p, a.out.display())
            });
        }
        Command::CurveFromIc(a) => {
            let t = InvariantTable::load(&a.table)?;
            let field = FiniteField::prime(t.p)?;
            let c =
                a.ic.iter()
                    .map(|s| rat(s).and_then(|x| field.reduce(&x).ok_or(Error::BadReduction(t.p))))
                    .collect::<Result<Vec<_>>>()?;
            let ic = IgusaClebsch::new(c[0], c[1], c[2], c[3]);
            match curve_from_ic(&ic, &t) {
                Some(curve) => {
                    let desc: Vec<u64> = curve.f.iter().rev().copied().collect();
                    emit(js, &json!({"prime": t.p, "curve": desc}), || {
                        format!("{}\n", desc.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    });
                }
                None => {
                    emit(js, &json!({"prime": t.p, "curve": null}), || "no curve\n".into());
                    return Ok(Outcome::Failed);
                }
            }
        }
        Command::Show(a) => {
            let db = database(cli)?;
            let rec = record(&db, a.disc)?;
            let v = serde_json::to_value(rec.raw()).expect("record serializes");
            emit(js, &v, || show_text(rec));
        }
        Command::Verify(a) => {
            let db = database(cli)?;
            if let Some(d) = a.disc {
                record(&db, d)?;
            }
            let rep = hmsdb::verify_database(&db, a.disc, &a.rm_primes);
            let v = serde_json::to_value(&rep).expect("report serializes");
            emit(js, &v, || {
                let mut s = String::new();
                for r in &rep.records {
                    let branch_ok = r.branch.iter().filter(|b| b.identically_zero).count();
                    s += &format!(
                        "D={:<3} rows {}/{} pass{}  branch {}/{}  {}\n",
                        r.d,
                        r.rows_passed,
                        r.rows_total,
                        if r.quarantined > 0 { format!(" ({} quarantined)", r.quarantined) } else { String::new() },
                        branch_ok,
                        r.branch.len(),
                        if r.passed { "ok" } else { "FAIL" }
                    );
                }
                s += if rep.passed { "all checks passed\n" } else { "verification FAILED\n" };
                s
            });
            if !rep.passed {
                return Ok(Outcome::Failed);
            }
        }
        Command::TwistSearch(a) => {
            let db = database(cli)?;
            let rec = record(&db, a.disc)?;
            let mut tables = BTreeMap::new();
            for &p in &a.primes {
                tables.insert(p, obtain_table(p, a.tables.as_deref())?);
            }
            let opts = TwistOptions { include_extra_ii: !a.no_extra_ii, only_factors: None };
            let res = hmsdb::twist_search(rec, &a.primes, &tables, &opts)?;
            let labels = &rec.twist_candidates.as_ref().expect("checked by twist_search").labels;
            let v = serde_json::to_value(&res).expect("result serializes");
            emit(js, &v, || {
                let mut s = format!("{} candidates, {} certified points\n", res.candidates, res.certified_points);
                for (c, sub) in &res.survivors {
                    let names: Vec<&str> = sub.iter().map(|&i| labels[i].as_str()).collect();
                    s += &format!("survivor: C = {c}, factors {sub:?} [{}]\n", names.join(", "));
                }
                if res.incomplete_separation {
                    s += "incomplete separation: more than one survivor\n";
                }
                s
            });
        }
    }
    Ok(Outcome::Ok)
}

fn obtain_table(p: u64, dir: Option<&Path>) -> Result<InvariantTable> {
    if let Some(d) = dir {
        let path = d.join(format!("table_{p}.bin"));
        if path.exists() {
            let t = InvariantTable::load(&path)?;
            if t.p != p {
                return Err(bad(&path.display().to_string(), "table is for another prime"));
            }
            return Ok(t);
        }
        let t = build_invariant_table(p)?;
        std::fs::create_dir_all(d)?;
        t.save(&path)?;
        return Ok(t);
    }
    build_invariant_table(p)
}

fn read_model(path: &Path) -> Result<WeierstrassQt> {
    #[derive(serde::Deserialize)]
    struct M {
        a: [Vec<String>; 5],
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let m: M = serde_json::from_str(&text).map_err(|e| bad(&path.display().to_string(), &e.to_string()))?;
    let p = |v: &Vec<String>| -> Result<UniPoly<Q>> {
        Ok(UniPoly::new(v.iter().map(|s| rat(s)).collect::<Result<Vec<_>>>()?, Q::zero()))
    };
    Ok(WeierstrassQt::new(p(&m.a[0])?, p(&m.a[1])?, p(&m.a[2])?, p(&m.a[3])?, p(&m.a[4])?))
}

fn poly_string(p: &UniPoly<Q>, var: &str) -> String {
    let mut parts = vec![];
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = c.to_string();
        parts.push(match (mono.is_empty(), cs.as_str()) {
            (true, _) => cs,
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            _ => format!("{cs}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn show_text(rec: &HMSRecord) -> String {
    let [u, v] = &rec.coord_names;
    let mut s = format!("D = {}  ({:?}, Picard {:?})\n", rec.d, rec.surface_kind, rec.picard);
    s += &format!("z^2 = {} * ({})\n", rec.twist, rec.cover.to_string_with(u, v));
    for (i, b) in rec.branch_components.iter().enumerate() {
        s += &format!("branch[{i}] {:?}: {}\n", b.meaning, b.factor.to_string_with(u, v));
        for p in &b.parametrizations {
            s += &format!(
                "  {u} = ({}) / ({}), {v} = ({}) / ({}){}\n",
                poly_string(p.x.num(), &p.var),
                poly_string(p.x.den(), &p.var),
                poly_string(p.y.num(), &p.var),
                poly_string(p.y.den(), &p.var),
                if p.derived { "  (derived)" } else { "" }
            );
        }
    }
    if let Some(m) = &rec.ic_map {
        for (n, b) in ["I2", "I4", "I6", "I10"].iter().zip(&m.inv) {
            s += &format!("{n} = {}\n", b.to_string_with(u, v));
        }
    }
    s += &format!("{} points\n", rec.points.len());
    for p in &rec.points {
        let desc: Vec<String> = p.sextic.f.iter().rev().map(|c| c.to_string()).collect();
        s += &format!("  ({}, {})  [{}]\n", p.coords.0, p.coords.1, desc.join(","));
    }
    for f in &rec.fibrations {
        s += &format!("fibration {} over {} (chi {}), {} claimed fibers\n", f.name, f.base, f.chi, f.expected.len());
    }
    if let Some(l) = &rec.lattice {
        let fs: Vec<String> = l.fibers.iter().map(|f| f.to_string()).collect();
        s += &format!("lattice: {} | torsion {} | disc {}\n", fs.join(" "), l.torsion, l.sign as i64 * l.ns_disc);
    }
    for h in &rec.heights {
        let cs: Vec<String> = h.components.iter().map(|(l, k)| format!("{l}:{k}")).collect();
        s += &format!("height {} = 2*{} + 2*{} - [{}]\n", h.value, h.chi, h.po, cs.join(" "));
    }
    s
}
