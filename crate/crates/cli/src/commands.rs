//! Command implementations. Each produces a [`Report`] plus an optional
//! failure that decides the exit status after the report is written.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};
use thinsheet::delta::reflection;
use thinsheet::lattice::{
    dispersion_leading, dispersion_static, epstein_zeta, ewald_interaction_matrix, ewald_lattice_sum, lattice_sum_J,
    mode_residual, static_interaction_matrix, tail_bound, DispersionMode, LatticeWavevector, ModeChannel,
};
use thinsheet::slab::{descending_log_grid, slab_limit_study};
use thinsheet::{Error as CoreError, Kinematics, Polarization, SheetMaterial};
use thiserror::Error;

use crate::args::{DispersionArgs, Format, LatticeQuery, MaterialArgs, OutputArgs, SlabArgs, SumArgs, SweepArgs};
use crate::config::{decode_config, GridValue, RunConfig};
use crate::grid::{parse_grid, Grid};
use crate::material::parse_material;
use crate::table::{Cell, Manifest, Report, Table};

pub const DEFAULT_CUTOFF: usize = 2000;

/// Accepted exponent windows for the thin-film convergence check.
pub const TE_EXPONENT_RANGE: (f64, f64) = (0.9, 1.1);
pub const TM_EXPONENT_RANGE: (f64, f64) = (0.4, 0.6);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Check(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Library errors: bad input is a usage error, poles and divergences are numeric.
fn core(e: CoreError) -> CliError {
    if e.is_numeric_failure() {
        CliError::Numeric(e.to_string())
    } else {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Set when the report was produced but the run still failed.
    pub failure: Option<CliError>,
}

/// `SOURCE_DATE_EPOCH` when set, so repeated runs can be byte-identical;
/// the current UTC time otherwise.
pub fn timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok());
    let time = match secs.and_then(|s| chrono::DateTime::from_timestamp(s, 0)) {
        Some(t) => t,
        None => chrono::Utc::now(),
    };
    time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn load_config(output: &OutputArgs) -> Result<RunConfig, CliError> {
    match &output.config {
        None => Ok(RunConfig::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            decode_config(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
    }
}

fn resolve_format(output: &OutputArgs, cfg: &RunConfig) -> Result<Format, CliError> {
    if let Some(f) = output.format {
        return Ok(f);
    }
    match cfg.format.as_deref() {
        None | Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(usage(format!("unknown format `{other}` (expected csv or json)"))),
    }
}

fn finish(
    report: Report,
    output: &OutputArgs,
    cfg: &RunConfig,
    failure: Option<CliError>,
) -> Result<Outcome, CliError> {
    Ok(Outcome {
        report,
        format: resolve_format(output, cfg)?,
        out: output.out.clone().or_else(|| cfg.out.clone()),
        failure,
    })
}

fn material_json(m: &SheetMaterial) -> Value {
    json!({
        "e": m.charge(),
        "m": m.mass(),
        "omega0": m.oscillator_frequency(),
        "n": m.areal_density(),
        "c": m.light_speed(),
        "q": m.q_parameter(),
    })
}

fn resolve_material(args: &MaterialArgs, cfg: &RunConfig) -> Result<SheetMaterial, CliError> {
    let c = args.c.or(cfg.c).unwrap_or(1.0);
    if let Some(spec) = &args.material {
        if args.c.is_some() {
            return Err(usage("--c applies to --q; give c as the fifth --material field"));
        }
        return parse_material(spec).map_err(usage);
    }
    if let Some(q) = args.q {
        return SheetMaterial::hydrodynamic(q, c).map_err(usage);
    }
    match (&cfg.material, cfg.q) {
        (Some(_), Some(_)) => Err(usage("config sets both `material` and `q`")),
        (Some(m), None) => m.to_material().map_err(usage),
        (None, Some(q)) => SheetMaterial::hydrodynamic(q, c).map_err(usage),
        (None, None) => Err(usage(
            "a material is required: --material e,m,omega0,n[,c] or --q <value>",
        )),
    }
}

fn resolve_grid(flag: &Option<String>, file: &Option<GridValue>, name: &str) -> Result<Option<Grid>, CliError> {
    if let Some(s) = flag {
        return parse_grid(s).map(Some).map_err(|e| usage(format!("--{name}: {e}")));
    }
    match file {
        Some(v) => v
            .to_grid()
            .map(Some)
            .map_err(|e| usage(format!("config `{name}`: {e}"))),
        None => Ok(None),
    }
}

/// `te`, `tm`, `p`, `all` or a comma list, returned in TE < TM < P order.
pub fn parse_polarizations(text: &str) -> Result<Vec<Polarization>, CliError> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(Polarization::ALL.to_vec());
    }
    let mut chosen = [false; 3];
    for part in text.split(',') {
        let pol: Polarization = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("unknown polarization `{}`", part.trim())))?;
        let idx = Polarization::ALL.iter().position(|p| *p == pol).expect("listed");
        chosen[idx] = true;
    }
    Ok(Polarization::ALL
        .iter()
        .zip(chosen)
        .filter(|(_, on)| *on)
        .map(|(p, _)| *p)
        .collect())
}

const SWEEP_COLUMNS: [&str; 11] = [
    "omega", "k", "pol", "re_r", "im_r", "re_t", "im_t", "abs_r2", "re_eta", "im_eta", "status",
];

fn status_of(e: &CoreError) -> &'static str {
    match e {
        CoreError::BoundStatePole => "pole",
        _ => "numeric-failure",
    }
}

fn sweep_row(mat: &SheetMaterial, pol: Polarization, omega: f64, k: f64) -> Result<Vec<Cell>, CliError> {
    let lead = [Cell::Num(omega), Cell::Num(k), Cell::text(pol.as_str())];
    let tail = match reflection(mat, pol, omega, k) {
        Ok(s) => vec![
            Cell::Num(s.r.re),
            Cell::Num(s.r.im),
            Cell::Num(s.t.re),
            Cell::Num(s.t.im),
            Cell::Num(s.r.norm_sqr()),
            Cell::Num(s.eta.re),
            Cell::Num(s.eta.im),
            Cell::text("ok"),
        ],
        Err(e) if e.is_numeric_failure() => {
            let mut v = vec![Cell::Num(f64::NAN); 7];
            v.push(Cell::text(status_of(&e)));
            v
        }
        Err(e) => return Err(usage(e)),
    };
    Ok(lead.into_iter().chain(tail).collect())
}

/// Resolved (omega, k) points, omega outer.
fn kinematic_points(
    omegas: &[f64],
    k: Option<&Grid>,
    angle: Option<&Grid>,
    c: f64,
) -> Result<Vec<(f64, f64)>, CliError> {
    let mut points = Vec::new();
    for &w in omegas {
        if w.is_nan() || w <= 0.0 {
            return Err(usage(format!("omega must be positive, got {w}")));
        }
        match (k, angle) {
            (_, Some(a)) => {
                for deg in a.points() {
                    let kin = Kinematics::from_angle(w, deg.to_radians(), c)
                        .map_err(|_| usage(format!("angle must lie in [0, 90) degrees, got {deg}")))?;
                    points.push((w, kin.k_parallel));
                }
            }
            (Some(kg), None) => {
                for kv in kg.points() {
                    if kv.is_nan() || kv < 0.0 {
                        return Err(usage(format!("k must be non-negative, got {kv}")));
                    }
                    points.push((w, kv));
                }
            }
            (None, None) => points.push((w, 0.0)),
        }
    }
    Ok(points)
}

pub fn cmd_sweep(args: &SweepArgs, single_point: bool) -> Result<Outcome, CliError> {
    let cfg = load_config(&args.output)?;
    let mat = resolve_material(&args.material, &cfg)?;
    let pols = parse_polarizations(args.pol.as_deref().or(cfg.pol.as_deref()).unwrap_or("all"))?;
    let omega = resolve_grid(&args.omega, &cfg.omega, "omega")?.ok_or_else(|| usage("--omega is required"))?;
    // a flag for one of k/angle displaces a file value for the other
    let (k_file, angle_file) = if args.k.is_some() || args.angle.is_some() {
        (None, None)
    } else {
        (cfg.k.clone(), cfg.angle.clone())
    };
    let k = resolve_grid(&args.k, &k_file, "k")?;
    let angle = resolve_grid(&args.angle, &angle_file, "angle")?;
    if k.is_some() && angle.is_some() {
        return Err(usage("give either k or angle, not both"));
    }
    let points = kinematic_points(&omega.points(), k.as_ref(), angle.as_ref(), mat.light_speed())?;
    if single_point && (points.len() != 1) {
        return Err(usage(
            "reflect evaluates a single (omega, k) point; use `sweep` for grids",
        ));
    }

    let rows: Vec<Vec<Vec<Cell>>> = points
        .par_iter()
        .map(|&(w, kv)| {
            pols.iter()
                .map(|&pol| sweep_row(&mat, pol, w, kv))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut flagged = 0usize;
    for row in rows.into_iter().flatten() {
        if row.last() != Some(&Cell::text("ok")) {
            flagged += 1;
        }
        table.push(row);
    }

    let name = if single_point { "reflect" } else { "sweep" };
    let mut manifest = Manifest::new(name, timestamp());
    manifest
        .input("material", material_json(&mat))
        .input("pol", pols.iter().map(|p| p.as_str()).collect::<Vec<_>>())
        .input("omega", omega.to_string());
    if let Some(a) = &angle {
        manifest.input("angle_degrees", a.to_string());
    }
    if let Some(kg) = &k {
        manifest.input("k", kg.to_string());
    }
    let mut resolved: Vec<f64> = points.iter().map(|p| p.1).collect();
    if angle.is_none() {
        resolved.dedup();
        resolved.truncate(k.as_ref().map_or(1, |g| g.len()));
    }
    manifest.setting("resolved_k", resolved);
    manifest.setting("flagged_rows", flagged);

    let failure =
        (single_point && flagged > 0).then(|| CliError::Numeric("the requested point is a scattering pole".into()));
    let report = Report {
        manifest,
        table,
        summary: BTreeMap::new(),
    };
    finish(report, &args.output, &cfg, failure)
}

fn in_range(x: Option<f64>, (lo, hi): (f64, f64)) -> bool {
    x.is_some_and(|v| (lo..=hi).contains(&v))
}

pub fn cmd_slab_limit(args: &SlabArgs) -> Result<Outcome, CliError> {
    let cfg = load_config(&args.output)?;
    let mat = resolve_material(&args.material, &cfg)?;
    let single = |flag: Option<f64>, file: &Option<GridValue>, name: &str| -> Result<Option<f64>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match file {
            None => Ok(None),
            Some(v) => {
                let pts = v
                    .to_grid()
                    .map_err(|e| usage(format!("config `{name}`: {e}")))?
                    .points();
                if pts.len() != 1 {
                    return Err(usage(format!("slab-limit takes a single `{name}`")));
                }
                Ok(Some(pts[0]))
            }
        }
    };
    let omega = single(args.omega, &cfg.omega, "omega")?.ok_or_else(|| usage("--omega is required"))?;
    let k = single(args.k, &cfg.k, "k")?.unwrap_or(0.0);
    let l_min = args.l_min.or(cfg.l_min).unwrap_or(1e-6);
    let l_max = args.l_max.or(cfg.l_max).unwrap_or(1e-3);
    let count = args.points.or(cfg.points).unwrap_or(10);
    if count < 3 {
        return Err(usage(format!("slab-limit needs at least 3 points, got {count}")));
    }
    if omega.is_nan() || omega <= 0.0 {
        return Err(usage("omega must be positive"));
    }
    let unit = mat.light_speed() / omega;
    let lengths = descending_log_grid(l_min * unit, l_max * unit, count).map_err(usage)?;
    let study = slab_limit_study(&mat, omega, k, &lengths).map_err(|e| match e {
        CoreError::Evanescent(why) => CliError::Usage(format!("refusing an evanescent limit study: {why}")),
        other => core(other),
    })?;

    let mut table = Table::new(&[
        "thickness",
        "permittivity",
        "re_r_te",
        "im_r_te",
        "re_r_tm",
        "im_r_tm",
        "residual_te",
        "residual_tm",
    ]);
    for p in &study.points {
        table.push(vec![
            Cell::Num(p.thickness),
            Cell::Num(p.permittivity),
            Cell::Num(p.r_te.re),
            Cell::Num(p.r_te.im),
            Cell::Num(p.r_tm.re),
            Cell::Num(p.r_tm.im),
            Cell::Num(p.residual_te),
            Cell::Num(p.residual_tm),
        ]);
    }
    // identically vanishing residuals are an exact limit, not a failed fit
    let exact_te = study.points.iter().all(|p| p.residual_te == 0.0);
    let exact_tm = study.points.iter().all(|p| p.residual_tm == 0.0);
    let te_ok = exact_te || in_range(study.exponent_te, TE_EXPONENT_RANGE);
    let tm_ok = exact_tm || in_range(study.exponent_tm, TM_EXPONENT_RANGE);

    let mut summary = BTreeMap::new();
    summary.insert("exponent_te".to_string(), json!(study.exponent_te));
    summary.insert("exponent_tm".to_string(), json!(study.exponent_tm));
    summary.insert(
        "expected_te".to_string(),
        json!([TE_EXPONENT_RANGE.0, TE_EXPONENT_RANGE.1]),
    );
    summary.insert(
        "expected_tm".to_string(),
        json!([TM_EXPONENT_RANGE.0, TM_EXPONENT_RANGE.1]),
    );
    summary.insert("sheet_r_te".to_string(), json!([study.sheet_te.re, study.sheet_te.im]));
    summary.insert("sheet_r_tm".to_string(), json!([study.sheet_tm.re, study.sheet_tm.im]));
    summary.insert("te_check".to_string(), json!(if te_ok { "pass" } else { "fail" }));
    summary.insert("tm_check".to_string(), json!(if tm_ok { "pass" } else { "fail" }));

    let mut manifest = Manifest::new("slab-limit", timestamp());
    manifest
        .input("material", material_json(&mat))
        .input("omega", omega)
        .input("k", k)
        .input("l_min", l_min)
        .input("l_max", l_max)
        .input("points", count)
        .setting("length_unit", "c/omega");

    let shown = |x: Option<f64>| x.map_or_else(|| "none".to_string(), |v| format!("{v:.4}"));
    let failure = (!(te_ok && tm_ok)).then(|| {
        CliError::Check(format!(
            "fitted exponents TE {} (want {} to {}), TM {} (want {} to {})",
            shown(study.exponent_te),
            TE_EXPONENT_RANGE.0,
            TE_EXPONENT_RANGE.1,
            shown(study.exponent_tm),
            TM_EXPONENT_RANGE.0,
            TM_EXPONENT_RANGE.1
        ))
    });
    finish(
        Report {
            manifest,
            table,
            summary,
        },
        &args.output,
        &cfg,
        failure,
    )
}

fn cutoff_of(sum: &SumArgs, cfg: &RunConfig) -> Result<usize, CliError> {
    let n = sum.n.or(sum.cutoff).or(cfg.cutoff).unwrap_or(DEFAULT_CUTOFF);
    if n == 0 {
        return Err(usage("cutoff must be at least 1"));
    }
    Ok(n)
}

pub fn cmd_lattice(query: &LatticeQuery) -> Result<Outcome, CliError> {
    match query {
        LatticeQuery::Zeta { s, output } => {
            let cfg = load_config(output)?;
            let value = epstein_zeta(*s).map_err(core)?;
            let mut table = Table::new(&["s", "value"]);
            table.push(vec![Cell::Num(*s), Cell::Num(value)]);
            let mut manifest = Manifest::new("lattice zeta", timestamp());
            manifest.input("s", *s);
            finish(
                Report {
                    manifest,
                    table,
                    summary: BTreeMap::new(),
                },
                output,
                &cfg,
                None,
            )
        }
        LatticeQuery::J { s, kx, ky, sum, output } => {
            let cfg = load_config(output)?;
            let k = LatticeWavevector::new(*kx, *ky);
            let (method, res) = if sum.ewald {
                ("ewald", ewald_lattice_sum(*s, k).map_err(core)?)
            } else {
                ("direct", lattice_sum_J(*s, k, cutoff_of(sum, &cfg)?).map_err(core)?)
            };
            let mut table = Table::new(&[
                "s",
                "kx",
                "ky",
                "method",
                "cutoff",
                "re_value",
                "im_value",
                "tail_estimate",
            ]);
            table.push(vec![
                Cell::Num(*s),
                Cell::Num(*kx),
                Cell::Num(*ky),
                Cell::text(method),
                Cell::Int(res.cutoff as i64),
                Cell::Num(res.value.re),
                Cell::Num(res.value.im),
                Cell::Num(res.tail_estimate),
            ]);
            let mut manifest = Manifest::new("lattice j", timestamp());
            manifest
                .input("s", *s)
                .input("kx", *kx)
                .input("ky", *ky)
                .setting("method", method);
            finish(
                Report {
                    manifest,
                    table,
                    summary: BTreeMap::new(),
                },
                output,
                &cfg,
                None,
            )
        }
        LatticeQuery::T { kx, ky, sum, output } => {
            let cfg = load_config(output)?;
            let k = LatticeWavevector::new(*kx, *ky);
            let (method, cutoff, tail, m) = if sum.ewald {
                let m = ewald_interaction_matrix(k).map_err(core)?;
                ("ewald", 0usize, 0.0, m)
            } else {
                let n = cutoff_of(sum, &cfg)?;
                let m = static_interaction_matrix(k, n).map_err(core)?;
                ("direct", n, tail_bound(3.0, n), m)
            };
            let mut cols = vec!["kx", "ky", "method", "cutoff"];
            let names = ["t11", "t12", "t13", "t21", "t22", "t23", "t31", "t32", "t33"];
            cols.extend(names);
            cols.extend(["trace", "tail_estimate"]);
            let mut table = Table::new(&cols);
            let mut row = vec![
                Cell::Num(*kx),
                Cell::Num(*ky),
                Cell::text(method),
                Cell::Int(cutoff as i64),
            ];
            row.extend(m.entries().iter().flatten().map(|v| Cell::Num(*v)));
            row.push(Cell::Num(m.trace()));
            row.push(Cell::Num(tail));
            table.push(row);
            let mut manifest = Manifest::new("lattice t", timestamp());
            manifest.input("kx", *kx).input("ky", *ky).setting("method", method);
            finish(
                Report {
                    manifest,
                    table,
                    summary: BTreeMap::new(),
                },
                output,
                &cfg,
                None,
            )
        }
        LatticeQuery::Dispersion(args) => cmd_dispersion(args),
    }
}

fn mode_cells(mode: &DispersionMode) -> Vec<Cell> {
    let w = mode.omega();
    vec![
        Cell::text(mode.channel.as_str()),
        Cell::Num(mode.eigenvalue),
        Cell::Num(mode.omega_squared),
        Cell::Num(w.re),
        Cell::Num(w.im),
        Cell::text(if mode.stable { "stable" } else { "unstable" }),
    ]
}

/// Leading-order root, keeping an unstable parallel root as a flagged value.
fn leading_mode(mat: &SheetMaterial, a: f64, channel: ModeChannel) -> Result<DispersionMode, CliError> {
    match dispersion_leading(mat, a, channel) {
        Ok(m) => Ok(m),
        Err(CoreError::Instability { omega_squared }) => {
            let z = epstein_zeta(3.0).map_err(core)?;
            let w0 = mat.oscillator_frequency();
            Ok(DispersionMode {
                channel,
                eigenvalue: 0.5 * z,
                omega_squared,
                shift: w0 * w0 - omega_squared,
                stable: false,
            })
        }
        Err(e) => Err(core(e)),
    }
}

pub fn cmd_dispersion(args: &DispersionArgs) -> Result<Outcome, CliError> {
    let cfg = load_config(&args.output)?;
    let mat = resolve_material(&args.material, &cfg)?;
    let a = args.spacing.or(cfg.spacing).unwrap_or(1.0);
    if !(a > 0.0 && a.is_finite()) {
        return Err(usage("--spacing must be positive"));
    }
    let mut manifest = Manifest::new("dispersion", timestamp());
    manifest.input("material", material_json(&mat)).input("spacing", a);

    let table = if args.leading {
        let mut table = Table::new(&[
            "channel",
            "eigenvalue",
            "omega_squared",
            "re_omega",
            "im_omega",
            "stability",
            "residual",
        ]);
        for ch in [ModeChannel::Parallel, ModeChannel::Perpendicular] {
            let mode = leading_mode(&mat, a, ch)?;
            let mut row = mode_cells(&mode);
            row.push(Cell::Num(mode_residual(&mat, a, &mode)));
            table.push(row);
        }
        manifest.setting("approximation", "leading");
        table
    } else {
        let kx = resolve_grid(&args.kx, &cfg.kx, "kx")?.unwrap_or(Grid::Values(vec![0.0]));
        let ky = resolve_grid(&args.ky, &cfg.ky, "ky")?.unwrap_or(Grid::Values(vec![0.0]));
        let ks: Vec<(f64, f64)> = kx
            .points()
            .into_iter()
            .flat_map(|x| ky.points().into_iter().map(move |y| (x, y)))
            .collect();
        let modes: Vec<Vec<DispersionMode>> = ks
            .par_iter()
            .map(|&(x, y)| dispersion_static(&mat, a, LatticeWavevector::new(x, y)).map_err(core))
            .collect::<Result<_, _>>()?;
        let mut table = Table::new(&[
            "kx",
            "ky",
            "branch",
            "channel",
            "eigenvalue",
            "omega_squared",
            "re_omega",
            "im_omega",
            "stability",
        ]);
        for (&(x, y), ms) in ks.iter().zip(&modes) {
            for (i, m) in ms.iter().enumerate() {
                let mut row = vec![Cell::Num(x), Cell::Num(y), Cell::Int(i as i64)];
                row.extend(mode_cells(m));
                table.push(row);
            }
        }
        manifest
            .input("kx", kx.to_string())
            .input("ky", ky.to_string())
            .setting("approximation", "static")
            .setting("interaction_matrix", "ewald");
        table
    };
    finish(
        Report {
            manifest,
            table,
            summary: BTreeMap::new(),
        },
        &args.output,
        &cfg,
        None,
    )
}
