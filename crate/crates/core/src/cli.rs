//! Command-line front end. Every invocation produces one [`Report`].
//!
//! Exit codes: `0` success, `1` input or usage error, `2` the computation ran
//! and a certification failed.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::{DMatrix, DVector};
use serde_json::{json, Value};

use crate::algebra_file::AlgebraFile;
use crate::catalog::{self, CatalogEntry};
use crate::coord::{
    frenet_numeric_with, geodesic_integrate_with, second_fundamental_form_with, CoordinateMetric,
    LevelSetHypersurface, SampledCurve, ScalarField,
};
use crate::error::{Error, Result};
use crate::lie::{MetricLieAlgebra, Subspace};
use crate::report::Report;
use crate::tg::{self, CaseTag, SearchConfig};
use crate::tolerances::Tolerances;
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "tghyper",
    version,
    about = "Totally geodesic hypersurfaces of metric Lie groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structure of an algebra or chart.
    Info(Opts),
    /// Curvature operator spectrum, or chart curvature at --x0.
    Curvature(Opts),
    /// Certify a subspace (--subspace) or hyperplane (--normal).
    TgCheck(Opts),
    /// Frenet data of the orbit of --normal, or of a chart line through --x0 along --v0.
    Frenet(Opts),
    /// Case classification of a totally geodesic normal.
    Classify(Opts),
    /// Multistart search for totally geodesic hyperplanes.
    Search(Opts),
    /// RK4 geodesic in a chart.
    Geodesic(Opts),
    /// Residual ledger for one catalog entry, or all of them.
    Verify(VerifyOpts),
}

#[derive(Debug, Clone, Args, Default)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Compact single-line JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Args, Default)]
struct Opts {
    /// JSON algebra file.
    #[arg(long, conflicts_with = "builtin")]
    algebra: Option<PathBuf>,
    /// Catalog entry, NAME[:key=value,...].
    #[arg(long)]
    builtin: Option<String>,
    /// Semicolon-separated basis vectors, "v1;v2;...".
    #[arg(long, allow_hyphen_values = true)]
    subspace: Option<String>,
    /// Comma-separated normal vector.
    #[arg(long, allow_hyphen_values = true)]
    normal: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<String>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Trajectory CSV (geodesic).
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of search starts.
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
struct VerifyOpts {
    /// Catalog entry, NAME[:key=value,...]; all entries when omitted.
    name: Option<String>,
    #[command(flatten)]
    common: Common,
}

/// A finished invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
    /// Rendered report (pretty, or compact with `--json`).
    pub text: String,
    /// Where the report goes; `None` means stdout.
    pub out: Option<PathBuf>,
    /// Help or version text that replaces the report.
    pub message: Option<String>,
}

pub fn parse_vector(s: &str) -> Result<DVector<f64>> {
    let vals: std::result::Result<Vec<f64>, _> =
        s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match vals {
        Ok(v) if !v.is_empty() => Ok(DVector::from_vec(v)),
        _ => Err(Error::BadParams(format!("cannot parse vector {s:?}"))),
    }
}

pub fn parse_vectors(s: &str) -> Result<Vec<DVector<f64>>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_vector)
        .collect()
}

fn vec_json(v: &DVector<f64>) -> Value {
    json!(v.iter().copied().collect::<Vec<f64>>())
}

fn mat_json(m: &DMatrix<f64>) -> Value {
    json!((0..m.nrows())
        .map(|r| m.row(r).iter().copied().collect::<Vec<f64>>())
        .collect::<Vec<_>>())
}

fn ser<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

enum Source {
    File(MetricLieAlgebra),
    Builtin(CatalogEntry),
}

impl Source {
    fn algebra(&self) -> Option<&MetricLieAlgebra> {
        match self {
            Source::File(m) => Some(m),
            Source::Builtin(e) => e.algebra.as_ref(),
        }
    }

    fn metric(&self) -> Option<&CoordinateMetric> {
        match self {
            Source::File(_) => None,
            Source::Builtin(e) => e.metric.as_ref(),
        }
    }

    fn require_algebra(&self) -> Result<&MetricLieAlgebra> {
        self.algebra()
            .ok_or_else(|| Error::BadParams("this command needs a metric Lie algebra".into()))
    }

    fn require_metric(&self) -> Result<&CoordinateMetric> {
        self.metric().ok_or_else(|| {
            Error::BadParams(
                "this command needs a coordinate metric (--builtin with a chart)".into(),
            )
        })
    }

    /// Default chart point: the identity, else the centre of the sample box.
    fn default_point(&self) -> Option<DVector<f64>> {
        match self {
            Source::File(_) => None,
            Source::Builtin(e) => e
                .identity
                .clone()
                .or_else(|| e.sample_box.as_ref().map(|b| (&b.lo + &b.hi) / 2.0)),
        }
    }
}

struct Ctx {
    opts: Opts,
    tol: Tolerances,
    input: Value,
}

fn tolerances(overrides: &[String]) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for o in overrides {
        tol.set(o)?;
    }
    Ok(tol)
}

fn load_source(opts: &Opts, tol: &Tolerances) -> Result<(Source, Value)> {
    if let Some(path) = &opts.algebra {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let file = AlgebraFile::from_json(&text)?;
        let m = file.build(tol)?;
        Ok((Source::File(m), json!({ "algebra": ser(&file) })))
    } else if let Some(spec) = &opts.builtin {
        let mut entry = catalog::lookup_spec(spec)?;
        if let Some(m) = entry.algebra.take() {
            entry.algebra = Some(MetricLieAlgebra::with_tolerances(
                m.algebra().clone(),
                m.gram().clone(),
                *tol,
            )?);
        }
        let (name, params) = catalog::parse_builtin(spec)?;
        Ok((
            Source::Builtin(entry),
            json!({ "builtin": { "name": name, "params": params } }),
        ))
    } else {
        Err(Error::BadParams(
            "one of --algebra FILE or --builtin NAME is required".into(),
        ))
    }
}

fn unit_normal(m: &MetricLieAlgebra, s: &str) -> Result<DVector<f64>> {
    let t = parse_vector(s)?;
    m.check_dim(&t)?;
    let norm = m.norm(&t);
    if norm == 0.0 {
        return Err(Error::BadParams("normal has zero length".into()));
    }
    Ok(t / norm)
}

fn need<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a String> {
    v.as_ref()
        .ok_or_else(|| Error::BadParams(format!("{flag} is required")))
}

fn point(ctx: &Ctx, src: &Source, n: usize) -> Result<DVector<f64>> {
    let x = match &ctx.opts.x0 {
        Some(s) => parse_vector(s)?,
        None => src
            .default_point()
            .ok_or_else(|| Error::BadParams("--x0 is required".into()))?,
    };
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok(x)
}

fn info(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    let mut out = serde_json::Map::new();
    if let Some(m) = src.algebra() {
        let file = AlgebraFile::from_algebra(m);
        let chars = tg::character_space_with(m.algebra(), ctx.tol.character);
        let killing = tg::killing_form(m.algebra().structure_constants());
        let (keig, _) = crate::linalg::sorted_symmetric_eigen(&killing);
        let signature = (
            keig.iter().filter(|v| **v > 1e-10).count(),
            keig.iter().filter(|v| **v < -1e-10).count(),
            keig.iter().filter(|v| v.abs() <= 1e-10).count(),
        );
        out.insert(
            "algebra".into(),
            json!({
                "dim": m.dim(),
                "brackets": ser(&file.brackets),
                "gram": mat_json(m.gram()),
                "characters": ser(&chars),
                "killing_signature": { "positive": signature.0, "negative": signature.1, "zero": signature.2 },
            }),
        );
        r.residual("jacobi", m.algebra().jacobi_residual());
        r.residual(
            "torsion",
            m.connection().torsion_residual(m.onb_constants()),
        );
        r.residual("metric_compatibility", m.connection().metric_residual());
        r.residual("character", chars.residual);
    }
    if let Some(cm) = src.metric() {
        let x = point(ctx, src, cm.dim())?;
        out.insert(
            "metric".into(),
            json!({
                "name": cm.name(),
                "dim": cm.dim(),
                "exact_partials": cm.has_exact_partials(),
                "point": vec_json(&x),
                "gram": mat_json(&cm.gram(&x)?),
            }),
        );
    }
    if let Source::Builtin(e) = src {
        if let Some(b) = &e.sample_box {
            out.insert(
                "sample_box".into(),
                json!({ "lo": vec_json(&b.lo), "hi": vec_json(&b.hi) }),
            );
        }
    }
    r.result = Value::Object(out);
    Ok(())
}

fn curvature(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    if let (Some(m), None) = (src.algebra(), &ctx.opts.x0) {
        let c = m.curvature();
        let n = m.dim();
        let mut sect = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let (ei, ej) = (unit(n, i), unit(n, j));
                sect.push(json!({ "i": i, "j": j, "value": m.sectional(&ei, &ej)? }));
            }
        }
        r.result = json!({
            "operator_eigenvalues": vec_json(c.eigenvalues()),
            "bivector_pairs": ser(&c.pairs()),
            "operator_eigenvectors": mat_json(c.eigenvectors()),
            "basis_sectional": sect,
        });
        r.residual("curvature_symmetries", c.symmetry_residual());
        r.residual("first_bianchi", c.bianchi_residual());
        r.residual("operator_symmetry", c.operator_symmetry_residual());
        r.residual("operator_reconstruction", c.reconstruction_residual());
        return Ok(());
    }
    let cm = src.require_metric()?;
    let n = cm.dim();
    let x = point(ctx, src, n)?;
    let gamma = cm.christoffel(&x)?;
    let mut sect = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            sect.push(
                json!({ "i": i, "j": j, "value": cm.sectional(&x, &unit(n, i), &unit(n, j))? }),
            );
        }
    }
    let table: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (0..n).map(|j| gamma.get(k, i, j)).collect())
                .collect()
        })
        .collect();
    r.result = json!({ "point": vec_json(&x), "christoffel": table, "coordinate_sectional": sect });
    if let Some(exact) = cm.christoffel_exact(&x) {
        r.residual(
            "christoffel_fd_vs_exact",
            cm.christoffel_fd(&x)?.max_abs_diff(&exact?),
        );
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

/// Returns whether the certification passed.
fn tg_check(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<bool> {
    if let Some(m) = src.algebra().filter(|_| ctx.opts.x0.is_none()) {
        if let Some(s) = &ctx.opts.subspace {
            let vs = parse_vectors(s)?;
            let sub = Subspace::from_vectors(&vs, m.dim())?;
            let chk = tg::tg_subspace_check(m, &sub)?;
            r.residual("tg", chk.residual);
            r.residual("bracket", chk.bracket_residual);
            r.residual("connection", chk.connection_residual);
            r.result = ser(&chk);
            return Ok(chk.totally_geodesic);
        }
        let t = unit_normal(m, need(&ctx.opts.normal, "--subspace or --normal")?)?;
        let res = tg::hyperplane_tg_residual(m, &t)?;
        let ok = res < ctx.tol.tg;
        r.residual("tg", res);
        r.residual("codazzi", tg::codazzi_residual(m, &t)?);
        r.result = json!({ "normal": vec_json(&t), "totally_geodesic": ok, "residual": res });
        return Ok(ok);
    }
    let cm = src.require_metric()?;
    let n = cm.dim();
    let x = point(ctx, src, n)?;
    let c = parse_vector(need(&ctx.opts.normal, "--normal")?)?;
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: c.len(),
        });
    }
    let (c1, c2, x1) = (c.clone(), c.clone(), x.clone());
    let surface = LevelSetHypersurface::new(ScalarField::new(
        move |y| c1.dot(&(y - &x1)),
        move |_| c2.clone(),
    ));
    let sff = second_fundamental_form_with(cm, &surface, &x, &ctx.tol)?;
    let ok = sff.max_norm < ctx.tol.tg;
    r.residual("sff_max_norm", sff.max_norm);
    r.result = json!({ "point": vec_json(&x), "totally_geodesic": ok, "second_fundamental_form": ser(&sff) });
    Ok(ok)
}

fn frenet(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    if let (Some(m), Some(s)) = (src.algebra(), &ctx.opts.normal) {
        let t = unit_normal(m, s)?;
        let f = tg::frenet_orbit(m, &t, m.dim() - 1)?;
        r.residual("recursion", f.recursion_residual);
        r.residual("truncation", f.truncation_residual);
        if let Some(v) = tg::curvature_bracket_residual(m, &f) {
            r.residual("curvature_bracket", v);
        }
        if let Some(v) = tg::binormal_bracket_residual(m, &f) {
            r.residual("binormal_bracket", v);
        }
        if f.near_zero_warning {
            r.warnings
                .push("a curvature lies just below the zero threshold".into());
        }
        r.result = ser(&f);
        return Ok(());
    }
    let cm = src.require_metric()?;
    let n = cm.dim();
    let x = point(ctx, src, n)?;
    let dir = parse_vector(need(&ctx.opts.v0, "--v0 (or --normal for an algebra)")?)?;
    if dir.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: dir.len(),
        });
    }
    let tmax = ctx.opts.tmax.unwrap_or(1.0);
    let step = ctx.opts.step.unwrap_or(0.005);
    if !(tmax > 0.0 && step > 0.0) {
        return Err(Error::BadParams(
            "--tmax and --step must be positive".into(),
        ));
    }
    let samples = ((tmax / step).round() as usize + 1).max(2);
    let curve = SampledCurve::from_fn(-tmax / 2.0, tmax / 2.0, samples, |s| &x + s * &dir);
    let f = frenet_numeric_with(cm, &curve, true, &ctx.tol)?;
    r.residual("truncation", f.truncation_residual);
    if f.near_zero_warning {
        r.warnings
            .push("a curvature lies just below the zero threshold".into());
    }
    r.result = json!({ "point": vec_json(&x), "direction": vec_json(&dir), "samples": samples, "frenet": ser(&f) });
    Ok(())
}

fn classify(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    let m = src.require_algebra()?;
    let t = unit_normal(m, need(&ctx.opts.normal, "--normal")?)?;
    let c = tg::classify_case(m, &t)?;
    r.case_tag = Some(c.case_tag.as_str().to_string());
    r.residual("tg", c.tg_residual);
    r.residual("codazzi", c.codazzi_residual);
    r.residual("eigenvector", c.eigenvector_residual);
    r.residual("truncation", c.frenet.truncation_residual);
    if let Some(v) = c.character_residual {
        r.residual("character", v);
    }
    if let Some(w) = &c.witness {
        for (k, v) in &w.residuals {
            r.residual(k, *v);
        }
    }
    r.warnings.extend(c.warnings.iter().cloned());
    if c.case_tag == CaseTag::HigherOrder {
        r.warnings
            .push("normal orbit has Frenet order three or more".into());
    }
    r.result = ser(&c);
    Ok(())
}

fn search(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    let m = src.require_algebra()?;
    if ctx.opts.starts == 0 {
        return Err(Error::BadParams("--starts must be positive".into()));
    }
    let cfg = SearchConfig {
        seeds: ctx.opts.starts,
        seed: ctx.opts.seed,
        threshold: ctx.tol.search,
        dedup_angle: ctx.tol.dedup_angle,
        ..SearchConfig::default()
    };
    let found = tg::search_tg_hyperplanes(m, &cfg);
    r.residual(
        "worst",
        found.residuals.iter().fold(0.0, |a: f64, v| a.max(*v)),
    );
    r.result = json!({ "config": ser(&cfg), "search": ser(&found) });
    Ok(())
}

fn geodesic(ctx: &Ctx, src: &Source, r: &mut Report) -> Result<()> {
    let cm = src.require_metric()?;
    let n = cm.dim();
    let x = point(ctx, src, n)?;
    let v0 = parse_vector(need(&ctx.opts.v0, "--v0")?)?;
    let tmax = ctx.opts.tmax.unwrap_or(1.0);
    let step = ctx.opts.step.unwrap_or(ctx.tol.rk4_step);
    let tr = geodesic_integrate_with(cm, &x, &v0, tmax, step, &ctx.tol)?;
    if let Some(path) = &ctx.opts.csv {
        let f = std::fs::File::create(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        tr.write_csv(std::io::BufWriter::new(f))?;
    }
    r.residual("max_speed_drift", tr.max_speed_drift);
    r.result = json!({
        "x0": vec_json(&x),
        "v0": vec_json(&v0),
        "tmax": tmax,
        "step": tr.step,
        "steps": tr.times.len() - 1,
        "initial_speed": tr.initial_speed,
        "endpoint": tr.points.last(),
        "end_velocity": tr.velocities.last(),
        "csv": ctx.opts.csv.as_ref().map(|p| p.display().to_string()),
    });
    Ok(())
}

fn finish(mut report: Report, code: i32, common: &Common) -> Outcome {
    if report.result.is_null() {
        report.result = json!({});
    }
    Outcome {
        text: report.to_json(common.json),
        report,
        exit_code: code,
        out: common.out.clone(),
        message: None,
    }
}

fn run_opts(name: &str, opts: Opts) -> Outcome {
    let common = opts.common.clone();
    let tol = match tolerances(&common.tol) {
        Ok(t) => t,
        Err(e) => {
            return error_outcome(
                name,
                &json!({ "tol": common.tol }),
                &Tolerances::default(),
                &e,
                &common,
            )
        }
    };
    let flags = json!({
        "subspace": opts.subspace, "normal": opts.normal, "x0": opts.x0, "v0": opts.v0,
        "tmax": opts.tmax, "step": opts.step, "seed": opts.seed, "starts": opts.starts,
    });
    let (src, source_json) = match load_source(&opts, &tol) {
        Ok(s) => s,
        Err(e) => {
            let input = json!({ "command": name, "flags": flags, "tolerances": ser(&tol) });
            return error_outcome(name, &input, &tol, &e, &common);
        }
    };
    let input =
        json!({ "command": name, "source": source_json, "flags": flags, "tolerances": ser(&tol) });
    let ctx = Ctx { opts, tol, input };
    let mut report = Report::new(name, &ctx.input, &ctx.tol);
    let outcome = match name {
        "info" => info(&ctx, &src, &mut report).map(|_| true),
        "curvature" => curvature(&ctx, &src, &mut report).map(|_| true),
        "tg-check" => tg_check(&ctx, &src, &mut report),
        "frenet" => frenet(&ctx, &src, &mut report).map(|_| true),
        "classify" => classify(&ctx, &src, &mut report).map(|_| true),
        "search" => search(&ctx, &src, &mut report).map(|_| true),
        "geodesic" => geodesic(&ctx, &src, &mut report).map(|_| true),
        _ => unreachable!("dispatch covers every subcommand"),
    };
    let code = match outcome {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            report.set_error(&e);
            if e.is_certification_failure() {
                2
            } else {
                1
            }
        }
    };
    finish(report, code, &common)
}

fn error_outcome(
    name: &str,
    input: &Value,
    tol: &Tolerances,
    e: &Error,
    common: &Common,
) -> Outcome {
    let mut report = Report::new(name, input, tol);
    report.set_error(e);
    finish(report, 1, common)
}

fn run_verify(opts: VerifyOpts) -> Outcome {
    let common = opts.common.clone();
    let tol = match tolerances(&common.tol) {
        Ok(t) => t,
        Err(e) => {
            return error_outcome(
                "verify",
                &json!({ "tol": common.tol }),
                &Tolerances::default(),
                &e,
                &common,
            )
        }
    };
    let input = json!({ "command": "verify", "name": opts.name, "tolerances": ser(&tol) });
    let mut report = Report::new("verify", &input, &tol);
    let ledger = match &opts.name {
        Some(spec) => verify::verify_entry(spec, &tol).map(|e| verify::VerifyLedger {
            pass: e.pass,
            entries: vec![e],
        }),
        None => verify::verify_all(&tol),
    };
    let code = match ledger {
        Ok(l) => {
            for entry in &l.entries {
                for c in &entry.checks {
                    report.residual(&format!("{}/{}", entry.entry, c.name), c.value);
                }
                if let Some(err) = &entry.error {
                    report.warnings.push(format!("{}: {err}", entry.entry));
                }
            }
            report.result = ser(&l);
            if l.pass {
                0
            } else {
                2
            }
        }
        Err(e) => {
            report.set_error(&e);
            1
        }
    };
    finish(report, code, &common)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(err) => {
            use clap::error::ErrorKind;
            let informational = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let mut report = Report::new(
                "tghyper",
                &json!({ "usage_error": true }),
                &Tolerances::default(),
            );
            report.result = json!({ "error": { "kind": "Usage", "message": err.to_string() } });
            return Outcome {
                text: report.to_json(false),
                report,
                exit_code: if informational { 0 } else { 1 },
                out: None,
                message: Some(err.to_string()),
            };
        }
    };
    match cli.command {
        Command::Info(o) => run_opts("info", o),
        Command::Curvature(o) => run_opts("curvature", o),
        Command::TgCheck(o) => run_opts("tg-check", o),
        Command::Frenet(o) => run_opts("frenet", o),
        Command::Classify(o) => run_opts("classify", o),
        Command::Search(o) => run_opts("search", o),
        Command::Geodesic(o) => run_opts("geodesic", o),
        Command::Verify(o) => run_verify(o),
    }
}

/// Writes the outcome and returns the exit code.
pub fn emit(outcome: &Outcome) -> i32 {
    use std::io::Write;
    // Write errors on stdout (a closed pipe, say) are ignored.
    if let Some(msg) = &outcome.message {
        if outcome.exit_code == 0 {
            let _ = write!(std::io::stdout().lock(), "{msg}");
            return 0;
        }
        let _ = write!(std::io::stderr().lock(), "{msg}");
    }
    match &outcome.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{}\n", outcome.text)) {
                let _ = writeln!(
                    std::io::stderr().lock(),
                    "cannot write {}: {e}",
                    path.display()
                );
                return 1;
            }
        }
        None => {
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.text);
        }
    }
    outcome.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("tghyper").chain(args.iter().copied()))
    }

    #[test]
    fn vectors() {
        assert_eq!(
            parse_vector("1, -2,3.5").unwrap().as_slice(),
            &[1.0, -2.0, 3.5]
        );
        assert_eq!(parse_vectors("0,1,0;0,0,1").unwrap().len(), 2);
        assert!(parse_vector("1,a").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            go(&[
                "tg-check",
                "--builtin",
                "sl2:a=1,b=1",
                "--subspace",
                "0,1,0;0,0,1"
            ])
            .exit_code,
            0
        );
        assert_eq!(
            go(&["tg-check", "--builtin", "nonhomo", "--normal", "0,1,0,0"]).exit_code,
            2
        );
        assert_eq!(
            go(&["tg-check", "--builtin", "nosuch", "--normal", "1"]).exit_code,
            1
        );
        assert_eq!(go(&["frobnicate"]).exit_code, 1);
        let o = go(&["classify", "--builtin", "nonhomo", "--normal", "0,0,0,1"]);
        assert_eq!(o.report.case_tag.as_deref(), Some("CircleNormal"));
    }
}
