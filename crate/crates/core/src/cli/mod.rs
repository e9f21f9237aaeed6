//! Pipeline orchestration: stages, certificate files, the proof report and timings.
//!
//! Every stage reads its upstream certificates from the output directory and
//! writes its own, so stages can be run one at a time or chained with `all`.

pub mod config;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use config::{Auto, PipelineConfig};

use crate::error::{Error, Result};
use crate::heteroclinic::{self, ConnectionCertificate};
use crate::interval::Interval;
use crate::manifold::{self, ManifoldCertificate, Side};
use crate::model::Params;
use crate::pointproofs::{
    conjugate_pair, select, validate_equilibrium, validate_spectrum, EigenCertificate, EquilibriumCertificate,
    Stability,
};
use crate::rpa::NewtonOptions;

pub const SCHEMA: u32 = 1;

/// Initial guesses of the two equilibria the pipeline certifies.
pub const EQUILIBRIUM_GUESSES: [(&str, [f64; 3]); 2] = [("c0", [0.0, 0.0, 0.0]), ("c1", [1.0, 0.0, 1.0])];

/// Radius factor for the point proofs.
pub const POINT_R_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Equilibria,
    Eigen,
    Manifolds,
    Connection,
    All,
    ExportTrajectory,
    Tune,
}

impl Stage {
    pub const NAMES: [&'static str; 7] =
        ["equilibria", "eigen", "manifolds", "connection", "all", "export-trajectory", "tune"];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Equilibria => "equilibria",
            Stage::Eigen => "eigen",
            Stage::Manifolds => "manifolds",
            Stage::Connection => "connection",
            Stage::All => "all",
            Stage::ExportTrajectory => "export-trajectory",
            Stage::Tune => "tune",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "equilibria" => Stage::Equilibria,
            "eigen" => Stage::Eigen,
            "manifolds" => Stage::Manifolds,
            "connection" => Stage::Connection,
            "all" => Stage::All,
            "export-trajectory" => Stage::ExportTrajectory,
            "tune" => Stage::Tune,
            _ => {
                return Err(Error::Config(format!(
                    "unknown stage {s:?}; expected one of {}",
                    Stage::NAMES.join(", ")
                )))
            }
        })
    }
}

/// Process exit status for an error: 2 configuration, 3 missing upstream
/// certificate, 4 proof failure, 1 anything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => 2,
        Error::MissingCertificate(_) => 3,
        Error::Proof(_) | Error::Newton(_) | Error::Guess(_) | Error::Singular(_) | Error::Interval(_) => 4,
        Error::Dimension(_) | Error::Io { .. } | Error::Format(_) => 1,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquilibriaFile {
    pub schema: u32,
    pub certificates: Vec<EquilibriumCertificate>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub equilibrium: String,
    pub summary: String,
    pub certificates: Vec<EigenCertificate>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenFile {
    pub schema: u32,
    pub spectra: Vec<SpectrumEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifoldsFile {
    pub schema: u32,
    pub stable: ManifoldCertificate,
    pub unstable: ManifoldCertificate,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConnectionFile {
    pub schema: u32,
    pub certificate: ConnectionCertificate,
}

/// One certificate's line in the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub kind: String,
    pub label: String,
    pub success: bool,
    pub y: Interval,
    pub z0: Option<Interval>,
    pub z1: Option<Interval>,
    pub z: Interval,
    pub r: Option<f64>,
    pub r_big: f64,
    pub depends_on: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofReport {
    pub schema: u32,
    pub library_version: String,
    pub config: PipelineConfig,
    pub certificates: Vec<ReportEntry>,
    pub success: bool,
}

/// Options supplied on the command line on top of the config file.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub export_csv: Option<PathBuf>,
}

/// Result of a successful run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Option<ProofReport>,
    pub out_dir: PathBuf,
    /// Config written by `tune`.
    pub resolved: Option<PipelineConfig>,
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Format(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::MissingCertificate(format!("{what} not found at {} ({e}); run the upstream stage first", path.display()))
    })?;
    serde_json::from_str(&text)
        .map_err(|e| Error::MissingCertificate(format!("{what} at {} is unreadable: {e}", path.display())))
}

fn check_schema(found: u32, path: &Path) -> Result<()> {
    if found != SCHEMA {
        return Err(Error::MissingCertificate(format!(
            "{} has schema {found}, expected {SCHEMA}",
            path.display()
        )));
    }
    Ok(())
}

/// Certificate files of one output directory.
#[derive(Clone, Debug)]
pub struct Store {
    pub dir: PathBuf,
}

impl Store {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(Store { dir })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn equilibria(&self) -> Result<EquilibriaFile> {
        let p = self.path("equilibria.json");
        let f: EquilibriaFile = read_json(&p, "equilibrium certificates")?;
        check_schema(f.schema, &p)?;
        Ok(f)
    }

    pub fn eigen(&self) -> Result<EigenFile> {
        let p = self.path("eigen.json");
        let f: EigenFile = read_json(&p, "eigenpair certificates")?;
        check_schema(f.schema, &p)?;
        Ok(f)
    }

    pub fn manifolds(&self) -> Result<ManifoldsFile> {
        let p = self.path("manifolds.json");
        let f: ManifoldsFile = read_json(&p, "manifold certificates")?;
        check_schema(f.schema, &p)?;
        Ok(f)
    }

    pub fn connection(&self) -> Result<ConnectionFile> {
        let p = self.path("connection.json");
        let f: ConnectionFile = read_json(&p, "connection certificate")?;
        check_schema(f.schema, &p)?;
        Ok(f)
    }
}

fn point_newton() -> NewtonOptions {
    NewtonOptions::default()
}

fn equilibrium<'a>(f: &'a EquilibriaFile, label: &str) -> Result<&'a EquilibriumCertificate> {
    f.certificates
        .iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::MissingCertificate(format!("no certificate for equilibrium {label}")))
}

fn spectrum<'a>(f: &'a EigenFile, label: &str) -> Result<&'a [EigenCertificate]> {
    f.spectra
        .iter()
        .find(|s| s.equilibrium == label)
        .map(|s| s.certificates.as_slice())
        .ok_or_else(|| Error::MissingCertificate(format!("no eigenpair certificates for {label}")))
}

pub fn run_equilibria(p: &Params<Interval>) -> Result<EquilibriaFile> {
    let certificates = EQUILIBRIUM_GUESSES
        .iter()
        .map(|(label, g)| validate_equilibrium(label, p, *g, POINT_R_FACTOR, point_newton()))
        .collect::<Result<Vec<_>>>()?;
    for c in &certificates {
        log::info!("equilibrium {}: Y = {}, Z = {}, r = {:e}", c.label, c.existence.y, c.existence.z, c.r);
    }
    Ok(EquilibriaFile {
        schema: SCHEMA,
        certificates,
    })
}

pub fn run_eigen(p: &Params<Interval>, eq: &EquilibriaFile) -> Result<EigenFile> {
    let mut spectra = Vec::new();
    for (label, _) in EQUILIBRIUM_GUESSES {
        let e = equilibrium(eq, label)?;
        let certificates = validate_spectrum(p, e, POINT_R_FACTOR, point_newton())?;
        let summary = crate::pointproofs::spectrum_summary(&certificates);
        log::info!("spectrum at {label}: {summary}");
        spectra.push(SpectrumEntry {
            equilibrium: label.into(),
            summary,
            certificates,
        });
    }
    Ok(EigenFile { schema: SCHEMA, spectra })
}

/// The stable pair at `c0` and the unstable pair at `c1`, upper half plane first.
pub fn manifold_pairs(eig: &EigenFile) -> Result<([EigenCertificate; 2], [EigenCertificate; 2])> {
    let st = select(spectrum(eig, "c0")?, Stability::Stable);
    let un = select(spectrum(eig, "c1")?, Stability::Unstable);
    if st.len() != 2 || un.len() != 2 {
        return Err(Error::Proof(format!(
            "expected two stable eigenvalues at c0 and two unstable at c1, found {} and {}",
            st.len(),
            un.len()
        )));
    }
    let (e1, e2) = match un.iter().find(|e| !e.is_real && e.lambda_bar.im > 0.0) {
        Some(e) => (e.clone(), conjugate_pair(e)),
        None => (un[0].clone(), un[1].clone()),
    };
    Ok(([st[0].clone(), st[1].clone()], [e1, e2]))
}

pub fn run_manifolds(
    p: &Params<Interval>,
    cfg: &PipelineConfig,
    eq: &EquilibriaFile,
    eig: &EigenFile,
) -> Result<ManifoldsFile> {
    let (st, un) = manifold_pairs(eig)?;
    let stable = manifold::validate_manifold(
        p,
        equilibrium(eq, "c0")?,
        &st[0],
        &st[1],
        Side::Stable,
        &cfg.manifold_config(false),
    )?;
    let unstable = manifold::validate_manifold(
        p,
        equilibrium(eq, "c1")?,
        &un[0],
        &un[1],
        Side::Unstable,
        &cfg.manifold_config(true),
    )?;
    Ok(ManifoldsFile {
        schema: SCHEMA,
        stable,
        unstable,
    })
}

pub fn run_connection(p: &Params<Interval>, cfg: &PipelineConfig, m: &ManifoldsFile) -> Result<ConnectionFile> {
    let certificate = heteroclinic::validate_connection(p, &m.unstable, &m.stable, &cfg.orbit_config())?;
    log::info!(
        "connection {} → {}: r = {:e}, Z = {}",
        certificate.departure,
        certificate.arrival,
        certificate.r,
        certificate.existence.z
    );
    Ok(ConnectionFile {
        schema: SCHEMA,
        certificate,
    })
}

/// Resolve every `"auto"` entry of `cfg`; values already present are kept.
pub fn tune(cfg: &PipelineConfig) -> Result<PipelineConfig> {
    cfg.validate()?;
    let mut out = cfg.clone();
    if cfg.is_resolved() {
        return Ok(out);
    }
    let p = Params::<Interval>::standard();
    let eq = run_equilibria(&p)?;
    let eig = run_eigen(&p, &eq)?;
    let (st, un) = manifold_pairs(&eig)?;
    let c0 = equilibrium(&eq, "c0")?;
    let c1 = equilibrium(&eq, "c1")?;
    let s_cfg = cfg.manifold_config(false);
    let u_cfg = cfg.manifold_config(true);
    out.manifold.scale_s = Auto::Value(manifold::resolve_scale(&p, c0, &st[0], &st[1], &s_cfg)?);
    let scale_u = manifold::resolve_scale(&p, c1, &un[0], &un[1], &u_cfg)?;
    out.manifold.scale_u = Auto::Value(scale_u);
    if cfg.orbit.tau.value().is_none() || cfg.orbit.alpha0.value().is_none() {
        let pcert = manifold::validate_manifold(
            &p,
            c1,
            &un[0],
            &un[1],
            Side::Unstable,
            &manifold::ManifoldConfig {
                scale: Some(scale_u),
                ..u_cfg
            },
        )?;
        let (a, t) = heteroclinic::resolve_alpha_tau(&pcert, &p.mid(), &cfg.orbit_config())?;
        out.orbit.alpha0 = Auto::Value(a);
        out.orbit.tau = Auto::Value(t);
    }
    Ok(out)
}

fn entry(
    kind: &str,
    label: String,
    ex: &crate::rpa::ExistenceResult,
    z0: Option<Interval>,
    z1: Option<Interval>,
    r_big: f64,
    depends_on: &[&str],
) -> ReportEntry {
    ReportEntry {
        kind: kind.into(),
        label,
        success: ex.success,
        y: ex.y,
        z0,
        z1,
        z: ex.z,
        r: ex.radius(),
        r_big,
        depends_on: depends_on.iter().map(|s| s.to_string()).collect(),
    }
}

/// Report over whatever certificates exist in `store`, in pipeline order.
///
/// Timings are kept out of the report so that reruns are byte-identical.
pub fn build_report(store: &Store, cfg: &PipelineConfig) -> ProofReport {
    let mut certificates = Vec::new();
    if let Ok(eq) = store.equilibria() {
        for c in &eq.certificates {
            certificates.push(entry("equilibrium", c.label.clone(), &c.existence, None, None, c.r_big, &[]));
        }
    }
    if let Ok(eig) = store.eigen() {
        for s in &eig.spectra {
            for c in &s.certificates {
                let label = format!("{}: λ ≈ {}", s.equilibrium, format_lambda(c));
                certificates.push(entry("eigenpair", label, &c.existence, None, None, c.r_big, &[&s.equilibrium]));
            }
        }
    }
    if let Ok(m) = store.manifolds() {
        for c in [&m.stable, &m.unstable] {
            let (kind, deps): (&str, [&str; 1]) = match c.side {
                Side::Stable => ("stable manifold", ["c0"]),
                Side::Unstable => ("unstable manifold", ["c1"]),
            };
            certificates.push(entry(
                "manifold",
                format!("{kind} of {}", c.base),
                &c.existence,
                Some(c.bounds.z0()),
                Some(c.bounds.z1(c.r_big)),
                c.r_big,
                &deps,
            ));
        }
    }
    if let Ok(c) = store.connection() {
        let c = c.certificate;
        certificates.push(entry(
            "connection",
            format!("{} → {}", c.departure, c.arrival),
            &c.existence,
            Some(c.bounds.z0()),
            Some(c.bounds.z1(c.r_big)),
            c.r_big,
            &["unstable manifold of c1", "stable manifold of c0"],
        ));
    }
    let success = !certificates.is_empty() && certificates.iter().all(|c| c.success);
    ProofReport {
        schema: SCHEMA,
        library_version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        certificates,
        success,
    }
}

fn format_lambda(c: &EigenCertificate) -> String {
    let z = c.lambda_bar;
    if c.is_real {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn export_csv(store: &Store, cfg: &PipelineConfig, path: &Path) -> Result<()> {
    let c = store.connection()?;
    let text = heteroclinic::trajectory_csv(&c.certificate, cfg.output.csv_points);
    std::fs::write(path, text).map_err(|e| io_err(path, e))?;
    log::info!("trajectory written to {}", path.display());
    Ok(())
}

/// Run `stage` with the config at `opts.config` (defaults when absent).
pub fn run(stage: Stage, opts: &RunOptions) -> Result<Outcome> {
    let cfg = match &opts.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    run_with_config(stage, cfg, opts)
}

pub fn run_with_config(stage: Stage, mut cfg: PipelineConfig, opts: &RunOptions) -> Result<Outcome> {
    cfg.validate()?;
    let snapshot = cfg.clone();
    if let Some(out) = &opts.out {
        cfg.output.dir = out.clone();
    }
    let store = Store::new(&cfg.output.dir)?;
    if stage == Stage::Tune {
        let resolved = tune(&snapshot)?;
        let path = store.path("resolved.toml");
        std::fs::write(&path, resolved.to_toml()).map_err(|e| io_err(&path, e))?;
        log::info!("resolved configuration written to {}", path.display());
        return Ok(Outcome {
            report: None,
            out_dir: store.dir.clone(),
            resolved: Some(resolved),
        });
    }
    let p = Params::<Interval>::standard();
    let mut timings: BTreeMap<String, f64> = BTreeMap::new();
    let mut timed = |name: &str, f: &mut dyn FnMut() -> Result<()>| -> Result<()> {
        let t0 = Instant::now();
        let r = f();
        timings.insert(name.into(), t0.elapsed().as_secs_f64());
        r
    };
    let stages: &[Stage] = match stage {
        Stage::All => &[Stage::Equilibria, Stage::Eigen, Stage::Manifolds, Stage::Connection],
        _ => std::slice::from_ref(&stage),
    };
    let mut result = Ok(());
    for &s in stages {
        let step = timed(s.name(), &mut || match s {
            Stage::Equilibria => write_json(&store.path("equilibria.json"), &run_equilibria(&p)?),
            Stage::Eigen => write_json(&store.path("eigen.json"), &run_eigen(&p, &store.equilibria()?)?),
            Stage::Manifolds => {
                let m = run_manifolds(&p, &cfg, &store.equilibria()?, &store.eigen()?)?;
                write_json(&store.path("manifolds.json"), &m)
            }
            Stage::Connection => {
                let c = run_connection(&p, &cfg, &store.manifolds()?)?;
                write_json(&store.path("connection.json"), &c)
            }
            Stage::ExportTrajectory => {
                let path = opts.export_csv.clone().unwrap_or_else(|| store.path(&cfg.output.csv));
                export_csv(&store, &cfg, &path)
            }
            Stage::All | Stage::Tune => unreachable!("composite stages are expanded above"),
        });
        if let Err(e) = step {
            result = Err(e);
            break;
        }
    }
    if result.is_ok() && stage != Stage::ExportTrajectory {
        if let Some(path) = &opts.export_csv {
            if store.connection().is_ok() {
                export_csv(&store, &cfg, path)?;
            }
        }
    }
    let report = build_report(&store, &snapshot);
    write_json(&store.path(&cfg.output.report), &report)?;
    write_json(&store.path(&cfg.output.timings), &timings)?;
    result?;
    if !report.success {
        return Err(Error::Proof("report contains a failed certificate".into()));
    }
    Ok(Outcome {
        report: Some(report),
        out_dir: store.dir.clone(),
        resolved: None,
    })
}
