//! The `trophom` command line: JSON input and output, example generators,
//! checks and reports. Every run is determined by its arguments.
//!
//! Exit codes: 0 on success, 1 when the input is invalid or a requested
//! check fails, 2 on parse and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{q, Rational};
use crate::homology::{chain_complex, hodge_table, HodgeTable, HomologyReport};
use crate::hypersurface::{build_hypersurface, degree, dual_subdivision, lattice_points, HeightFunction};
use crate::matroid::{bergman_complex, Matroid};
use crate::tropgeo::{balancing_violations, fan_linear_space, is_smooth_at, relative_fan, TropicalComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "trophom",
    version,
    about = "Tropical (p,q)-homology of tropical varieties in TP^N"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a built-in example (complex, heights or Bergman closure).
    Gen(GenArgs),
    /// Build the weighted hypersurface of a heights file.
    Hypersurface(Inputs),
    /// Hodge table, χ_p, χ_y and E of a complex.
    Homology(Inputs),
    /// The Euler characteristics χ_p.
    Chi(Inputs),
    /// The E-polynomial Σ χ_p u^p v^p and the χ_y-genus.
    Epoly(Inputs),
    /// Validate a complex or heights and run the requested checks.
    Check(CheckArgs),
    /// Closure of the Bergman fan of a matroid.
    Bergman(Inputs),
    /// Degree by intersection with a generic linear space.
    Degree(Inputs),
}

#[derive(Debug, Args, Default)]
pub struct Inputs {
    /// Complex JSON file.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Heights JSON file; the hypersurface is built first.
    #[arg(long)]
    pub heights: Option<PathBuf>,
    /// Matroid JSON file.
    #[arg(long)]
    pub matroid: Option<PathBuf>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Restrict reports to one value of p.
    #[arg(long)]
    pub p: Option<usize>,
    /// Seed for every pseudo-random choice.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Check the balancing condition.
    #[arg(long)]
    pub balanced: bool,
    /// Check smoothness (unimodular heights and matroidal relative fans).
    #[arg(long)]
    pub smooth: bool,
    /// Check that the dual subdivision is a unimodular triangulation.
    #[arg(long)]
    pub unimodular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// A single mobile point of TP^N.
    Point,
    /// The tropical line L^1 in TP^N.
    Line,
    /// The tropical plane L^2 in TP^N.
    Plane,
    /// L^k in TP^N.
    Linear,
    /// Certified smooth heights of a degree-d plane curve.
    Curve,
    /// Certified smooth heights of a degree-d surface in TP^3.
    Surface,
    /// Certified smooth heights of a degree-d hypersurface in TP^N.
    Heights,
    /// Pseudo-random integer heights on dΔ_N.
    Random,
    /// Bergman fan closure of the matroid given by --matroid.
    Bergman,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Ambient dimension N.
    #[arg(long = "n", default_value_t = 2)]
    pub n: usize,
    /// Degree d.
    #[arg(long = "d", default_value_t = 1)]
    pub d: u32,
    /// Dimension k of a linear space.
    #[arg(long = "k", default_value_t = 1)]
    pub k: usize,
    #[command(flatten)]
    pub inputs: Inputs,
}

/// Entry point for the binary. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(&cfg, &mut stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 2 for parse and I/O failures, 1 for invalid inputs.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Runs one command, writing reports to `out`. `Ok(false)` means a requested
/// check failed.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    match &cfg.command {
        Command::Gen(g) => cmd_gen(g, out),
        Command::Hypersurface(i) => cmd_hypersurface(i, out),
        Command::Homology(i) => cmd_homology(i, cfg.format, out),
        Command::Chi(i) => cmd_chi(i, cfg.format, out),
        Command::Epoly(i) => cmd_epoly(i, cfg.format, out),
        Command::Check(c) => cmd_check(c, cfg.format, out),
        Command::Bergman(i) => cmd_bergman(i, out),
        Command::Degree(i) => cmd_degree(i, cfg.format, out),
    }
}

/// Canonical serialization: sorted keys, two-space indent, final newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn missing(what: &str) -> Error {
    Error::Parse(format!("missing input: pass {what}"))
}

fn load_heights(i: &Inputs) -> Result<HeightFunction> {
    HeightFunction::from_json(&read_json(i.heights.as_deref().ok_or_else(|| missing("--heights"))?)?)
}

fn load_matroid(i: &Inputs) -> Result<Matroid> {
    Matroid::from_json(&read_json(i.matroid.as_deref().ok_or_else(|| missing("--matroid"))?)?)
}

/// The complex from `--complex`, or the hypersurface of `--heights`.
fn load_complex(i: &Inputs) -> Result<TropicalComplex> {
    match (&i.complex, &i.heights) {
        (Some(p), _) => TropicalComplex::from_json(&read_json(p)?),
        (None, Some(_)) => build_hypersurface(&load_heights(i)?),
        (None, None) => Err(missing("--complex or --heights")),
    }
}

fn emit(i: &Inputs, v: &Value, summary: &str, out: &mut dyn Write) -> Result<()> {
    match &i.out {
        Some(path) => {
            fs::write(path, canonical_json(v))?;
            writeln!(out, "{summary}")?;
        }
        None => out.write_all(canonical_json(v).as_bytes())?,
    }
    Ok(())
}

fn census(x: &TropicalComplex) -> String {
    let counts: Vec<String> = (0..=x.dim())
        .map(|k| format!("{} of dim {k}", x.faces_of_dim(k).count()))
        .collect();
    format!("{} faces in TP^{} ({})", x.len(), x.n(), counts.join(", "))
}

fn cmd_gen(g: &GenArgs, out: &mut dyn Write) -> Result<bool> {
    let origin = vec![q(0); g.n];
    let (v, summary) = match g.kind {
        GenKind::Point => {
            let x = TropicalComplex::new(
                g.n,
                vec![crate::tropgeo::FaceSpec::new(
                    crate::tropgeo::CoordSet::EMPTY,
                    vec![crate::tropgeo::Point::origin(g.n, crate::tropgeo::CoordSet::EMPTY)],
                    vec![],
                )],
            )?;
            (x.to_json(), census(&x))
        }
        GenKind::Line | GenKind::Plane | GenKind::Linear => {
            let k = match g.kind {
                GenKind::Line => 1,
                GenKind::Plane => 2,
                _ => g.k,
            };
            let x = fan_linear_space(&origin, k)?;
            (x.to_json(), census(&x))
        }
        GenKind::Curve | GenKind::Surface | GenKind::Heights => {
            let n = match g.kind {
                GenKind::Curve => 2,
                GenKind::Surface => 3,
                _ => g.n,
            };
            if !(1..=4).contains(&n) || !(1..=6).contains(&g.d) {
                return Err(Error::InvalidHeights(format!(
                    "generator supports 1 <= N <= 4 and 1 <= d <= 6, got N={n}, d={}",
                    g.d
                )));
            }
            let a = HeightFunction::alcoved(n, g.d)?;
            if !dual_subdivision(&a).is_unimodular() {
                return Err(Error::InvalidHeights("generated heights are not unimodular".into()));
            }
            (a.to_json(), format!("smooth heights of degree {} in TP^{n}", g.d))
        }
        GenKind::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(g.inputs.seed);
            let vals = lattice_points(g.n, g.d)
                .into_iter()
                .map(|m| (m, Rational::from_integer(rng.gen_range(-20i64..=20).into())));
            let a = HeightFunction::new(g.n, g.d, vals)?;
            (a.to_json(), format!("random heights of degree {} in TP^{}", g.d, g.n))
        }
        GenKind::Bergman => {
            let x = bergman_complex(&load_matroid(&g.inputs)?)?;
            (x.to_json(), census(&x))
        }
    };
    emit(&g.inputs, &v, &summary, out)?;
    Ok(true)
}

fn cmd_hypersurface(i: &Inputs, out: &mut dyn Write) -> Result<bool> {
    let a = load_heights(i)?;
    let x = build_hypersurface(&a)?;
    let summary = format!(
        "degree {}: {} facets, {} vertices; {}",
        a.degree(),
        x.faces_of_dim(x.dim()).count(),
        x.faces_of_dim(0).count(),
        census(&x)
    );
    emit(i, &x.to_json(), &summary, out)?;
    Ok(true)
}

fn write_report(i: &Inputs, format: Format, v: Value, text: String, out: &mut dyn Write) -> Result<()> {
    let body = match format {
        Format::Json => canonical_json(&v),
        Format::Text => text,
    };
    match &i.out {
        Some(path) => fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn table(i: &Inputs) -> Result<HodgeTable> {
    hodge_table(&load_complex(i)?)
}

fn check_p(i: &Inputs, t: &HodgeTable) -> Result<()> {
    match i.p {
        Some(p) if p > t.dim() => Err(Error::DimensionMismatch(format!("p = {p} exceeds dim X = {}", t.dim()))),
        _ => Ok(()),
    }
}

fn cmd_homology(i: &Inputs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let t = table(i)?;
    check_p(i, &t)?;
    let report = HomologyReport::from(&t);
    let (v, text) = match i.p {
        Some(p) => {
            let row = &t.rows()[p];
            let text = format!("h[{p}][q] for q = 0..{}: {row:?}\nchi_{p} = {}\n", t.dim(), t.chi(p));
            (json!({"n": t.dim(), "p": p, "h": row, "chi": t.chi(p)}), text)
        }
        None => {
            let text = format!(
                "{}chi = {:?}\nchi_y = {}\nE = {}\n",
                t.to_text(),
                report.chi,
                report.chi_y,
                report.e
            );
            (serde_json::to_value(&report)?, text)
        }
    };
    write_report(i, format, v, text, out)?;
    Ok(true)
}

fn cmd_chi(i: &Inputs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let t = table(i)?;
    check_p(i, &t)?;
    let (v, text) = match i.p {
        Some(p) => (json!({"p": p, "chi": t.chi(p)}), format!("chi_{p} = {}\n", t.chi(p))),
        None => {
            let chi: Vec<i64> = (0..=t.dim()).map(|p| t.chi(p)).collect();
            (json!({"chi": chi}), format!("chi = {chi:?}\n"))
        }
    };
    write_report(i, format, v, text, out)?;
    Ok(true)
}

fn cmd_epoly(i: &Inputs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let e = table(i)?.e_polynomial();
    let v = json!({"E": e.to_string(), "chi_y": e.chi_y(), "chi": e.coefficients()});
    let text = format!("E = {e}\nchi_y = {}\n", e.chi_y());
    write_report(i, format, v, text, out)?;
    Ok(true)
}

fn cmd_degree(i: &Inputs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let x = load_complex(i)?;
    let d = degree(&x, i.seed)?;
    write_report(
        i,
        format,
        json!({"degree": d, "seed": i.seed}),
        format!("degree = {d}\n"),
        out,
    )?;
    Ok(true)
}

fn cmd_bergman(i: &Inputs, out: &mut dyn Write) -> Result<bool> {
    let m = load_matroid(i)?;
    let x = bergman_complex(&m)?;
    emit(i, &x.to_json(), &census(&x), out)?;
    Ok(true)
}

/// One line of a check report.
struct CheckResult {
    name: &'static str,
    pass: bool,
    detail: Option<String>,
}

fn cmd_check(c: &CheckArgs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let i = &c.inputs;
    let heights = match &i.heights {
        Some(_) if i.complex.is_none() => Some(load_heights(i)?),
        _ => None,
    };
    let mut results = Vec::new();
    if let Some(a) = &heights {
        if c.unimodular || c.smooth {
            let s = dual_subdivision(a);
            let bad = first_non_unimodular(&s);
            results.push(CheckResult {
                name: "unimodular",
                pass: bad.is_none(),
                detail: bad.map(|cell| format!("cell {cell:?}")),
            });
        }
    } else if c.unimodular {
        return Err(Error::Parse("--unimodular needs --heights".into()));
    }
    let x = match &heights {
        Some(a) => build_hypersurface(a)?,
        None => load_complex(i)?,
    };
    results.push(CheckResult {
        name: "valid",
        pass: true,
        detail: None,
    });
    let bad_p = (0..=x.dim()).find(|&p| chain_complex(&x, p).map(|cc| !cc.is_complex()).unwrap_or(true));
    results.push(CheckResult {
        name: "boundary_squared_zero",
        pass: bad_p.is_none(),
        detail: bad_p.map(|p| format!("p = {p}")),
    });
    if c.balanced {
        let v = balancing_violations(&x)?;
        results.push(CheckResult {
            name: "balanced",
            pass: v.is_empty(),
            detail: v.first().map(|f| format!("face {f}")),
        });
    }
    if c.smooth {
        let certificate = match &i.matroid {
            Some(_) => Some(load_matroid(i)?),
            None => None,
        };
        let bad = first_non_smooth(&x, certificate.as_ref())?;
        results.push(CheckResult {
            name: "smooth",
            pass: bad.is_none(),
            detail: bad.map(|f| format!("face {f}")),
        });
    }
    let pass = results.iter().all(|r| r.pass);
    let v = json!({
        "pass": pass,
        "checks": results.iter().map(|r| json!({"name": r.name, "pass": r.pass, "counterexample": r.detail})).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        match &r.detail {
            Some(d) => text.push_str(&format!("{}: {status} ({d})\n", r.name)),
            None => text.push_str(&format!("{}: {status}\n", r.name)),
        }
    }
    write_report(i, format, v, text, out)?;
    Ok(pass)
}

fn first_non_unimodular(s: &crate::hypersurface::DualSubdivision) -> Option<Vec<Vec<u32>>> {
    s.cells()
        .iter()
        .find(|c| !s.is_unimodular_cell(c))
        .map(|c| c.iter().map(|&i| s.points()[i].clone()).collect())
}

/// First mobile face whose relative fan is not matroidal. The certificate for
/// a face whose relative fan has span rank `ρ` and dimension `δ` is the given
/// matroid when its Bergman fan has the same rank and dimension, and the
/// uniform matroid `U_{δ+1, ρ+1}` otherwise.
fn first_non_smooth(x: &TropicalComplex, given: Option<&Matroid>) -> Result<Option<usize>> {
    for id in 0..x.len() {
        let f = x.face(id);
        if !f.is_mobile() || f.dim() == x.dim() {
            continue;
        }
        let rel = relative_fan(x, id).restrict_to_span();
        let (rho, delta) = (rel.rank(), rel.dim());
        let m = match given {
            Some(m) if m.ground() == rho + 1 && m.rank() == delta + 1 => m.clone(),
            _ => Matroid::uniform(delta + 1, rho + 1)?,
        };
        if !is_smooth_at(x, id, &m)? {
            return Ok(Some(id));
        }
    }
    Ok(None)
}
