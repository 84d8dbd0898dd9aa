use std::fs;
use std::path::Path;

use rayon::prelude::*;
use robin_corner::crack::{crack_regime, traction_trace, CrackRegime};
use robin_corner::energy::{energy_finite, series_energy};
use robin_corner::eval::{abs_error, eval_series, lambda_robin, rel_error};
use robin_corner::exactq::{classify as classify_pair, Approach, Classification, EnergyVerdict, FractionForm, Real, SeriesKind};
use robin_corner::series::{build_series, AsymptoticSeries};
use serde_json::json;

use crate::args::{parse_real, AngleArgs, ConfigArgs, GridArgs, SeriesFile};
use crate::table::{num, Table};
use crate::CliError;

impl SeriesFile {
    pub fn load(&self) -> Result<AsymptoticSeries, CliError> {
        let text = fs::read_to_string(&self.series).map_err(|e| CliError::io(&self.series, e))?;
        AsymptoticSeries::from_json(&text).map_err(|source| CliError::BadFile { path: self.series.clone(), source })
    }
}

fn show(r: &Real) -> String {
    match r {
        Real::Exact(q) => q.to_string(),
        Real::Irrational(x) => format!("{x} (irrational)"),
    }
}

fn form_text(f: &FractionForm) -> String {
    match f {
        FractionForm::OddOverEven { p, q, negative } => {
            format!("{}(2p-1)/(2q), p={p}, q={q}", if *negative { "-" } else { "+" })
        }
        FractionForm::AnyOverOdd { p, q } => format!("p/(2q-1), p={p}, q={q}"),
        FractionForm::Irrational => "irrational".into(),
    }
}

fn log_text(c: &Classification) -> String {
    match (c.series_kind, c.log_extra_step) {
        (SeriesKind::InfiniteWithLog { period }, Some(k)) => format!("log power added every {period} terms and at k={k}"),
        (SeriesKind::InfiniteWithLog { period }, None) => format!("log power added every {period} terms"),
        _ => "no log terms".into(),
    }
}

fn energy_text(v: EnergyVerdict) -> String {
    match v {
        EnergyVerdict::Finite => "finite for every j".into(),
        EnergyVerdict::Infinite => "infinite".into(),
        EnergyVerdict::FiniteIff { threshold, strict } => {
            format!("finite iff j {} {threshold}", if strict { ">" } else { ">=" })
        }
    }
}

/// One-line verdict, e.g. "apparent critical, S=2, no log terms, converges, energy finite".
pub fn summary(c: &Classification, j: u32) -> String {
    let length = match c.series_kind {
        SeriesKind::FiniteExact { last } => format!("S={last}"),
        _ => "infinite series".into(),
    };
    format!(
        "{}, {length}, {}, {}, energy {}",
        c.label(),
        log_text(c),
        if c.converges_near_zero { "converges" } else { "diverges" },
        if c.energy.is_finite_for(j) { "finite" } else { "infinite" }
    )
}

pub fn classify(args: &ConfigArgs, j: u32, as_json: bool) -> Result<(), CliError> {
    let config = args.config()?;
    if config.approach == Approach::ClosedForm {
        let ev = lambda_robin(j, config.omega(), config.gamma)?;
        let (lo, hi) = ev.bracket();
        if as_json {
            let doc = json!({"branch": "closed_form", "j": j, "lambda": ev.lambda, "bracket": [lo, hi], "residual": ev.residual});
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        } else {
            println!("alpha=-1: closed form branch");
            println!("lambda_{j} = {} in ({lo}, {hi}), residual {:e}", num(ev.lambda), ev.residual);
        }
        return Ok(());
    }
    let c = classify_pair(&config, j)?;
    if as_json {
        let doc = json!({
            "summary": summary(&c, j),
            "rho": show(&c.rho),
            "fraction_form": form_text(&c.form),
            "kind": c.label(),
            "last_term": match c.series_kind { SeriesKind::FiniteExact { last } => Some(last), _ => None },
            "log_schedule": log_text(&c),
            "converges": c.converges_near_zero,
            "energy": energy_text(c.energy),
            "energy_finite": c.energy.is_finite_for(j),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        return Ok(());
    }
    println!("{}", summary(&c, j));
    println!("rho = {}", show(&c.rho));
    println!("fraction form: {}", form_text(&c.form));
    println!("log schedule: {}", log_text(&c));
    println!("energy: {}", energy_text(c.energy));
    Ok(())
}

pub fn build(args: &ConfigArgs, j: u32, max_terms: u32, out: Option<&Path>) -> Result<(), CliError> {
    let s = build_series(&args.config()?, j, max_terms)?;
    log::info!("{} terms, {:?}", s.terms.len(), s.status);
    let text = s.to_json() + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn field_rows(s: &AsymptoticSeries, r: f64, thetas: &[f64]) -> Result<Vec<[f64; 5]>, CliError> {
    thetas
        .iter()
        .map(|&th| {
            let p = eval_series(s, r, th)?;
            Ok([r, th, p.u, p.u_r, p.u_theta_over_r])
        })
        .collect()
}

fn error_row(s: &AsymptoticSeries, r: f64) -> Result<[f64; 3], CliError> {
    Ok([r, abs_error(s, r)?, rel_error(s, r)?])
}

const FIELD_HEADER: [&str; 5] = ["r", "theta", "u", "u_r", "u_theta_over_r"];
const ERROR_HEADER: [&str; 3] = ["r", "E", "e"];
const ENERGY_HEADER: [&str; 6] = ["R", "eps", "energy", "bulk", "boundary", "eps_used"];

pub fn eval(s: &AsymptoticSeries, grid: &GridArgs, out: Option<&Path>) -> Result<(), CliError> {
    let thetas = grid.spec()?.thetas(s.config.omega());
    let mut rows = Vec::new();
    for r in grid.radii()? {
        rows.extend(field_rows(s, r, &thetas)?);
    }
    let mut t = Table::create(out, &FIELD_HEADER)?;
    for row in rows {
        t.numbers(&row)?;
    }
    t.finish()
}

pub fn error(s: &AsymptoticSeries, grid: &GridArgs, out: Option<&Path>) -> Result<(), CliError> {
    let rows = grid.radii()?.into_iter().map(|r| error_row(s, r)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::create(out, &ERROR_HEADER)?;
    for row in rows {
        t.numbers(&row)?;
    }
    t.finish()
}

fn energy_row(s: &AsymptoticSeries, r_max: f64, eps: f64) -> Result<[f64; 6], CliError> {
    let e = series_energy(s, r_max, eps)?;
    Ok([r_max, eps, e.value, e.bulk, e.boundary, e.eps_used])
}

pub fn energy(s: &AsymptoticSeries, r_max: f64, eps: f64, out: Option<&Path>) -> Result<(), CliError> {
    let row = energy_row(s, r_max, eps)?;
    let mut t = Table::create(out, &ENERGY_HEADER)?;
    t.numbers(&row)?;
    t.finish()
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

pub fn eig(angle: &AngleArgs, gammas: &[f64], j_max: u32, jobs: usize, out: Option<&Path>) -> Result<(), CliError> {
    let omega = angle.angle()?.radians();
    if j_max == 0 {
        return Err(CliError::Usage("--j-max must be at least 1".into()));
    }
    let tasks: Vec<(f64, u32)> = gammas.iter().flat_map(|&g| (1..=j_max).map(move |j| (g, j))).collect();
    let rows: Vec<_> = pool(jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|&(g, j)| {
                let ev = lambda_robin(j, omega, g)?;
                let (lo, hi) = ev.bracket();
                Ok::<_, CliError>(vec![num(g), j.to_string(), num(ev.lambda), num(lo), num(hi), num(ev.residual)])
            })
            .collect()
    });
    let mut t = Table::create(out, &["gamma", "j", "lambda", "lower", "upper", "residual"])?;
    for row in rows {
        t.row(row?)?;
    }
    t.finish()
}

pub fn crack(
    alpha: &str,
    irrational: bool,
    gamma: f64,
    trace: Option<&Path>,
    (x_min, x_max, n_x): (f64, f64, usize),
) -> Result<(), CliError> {
    let alpha = parse_real("--alpha", alpha, irrational)?;
    let report = crack_regime(&alpha, gamma).map_err(|e| match e {
        robin_corner::Error::InvalidConfig(_) => CliError::config(e),
        e => e.into(),
    })?;
    println!("{}", report.description());
    let regime = match report.regime {
        CrackRegime::Classical => "classical",
        CrackRegime::Weak => "weak",
        CrackRegime::Regular => "regular",
    };
    println!("regime: {regime}");
    println!("lambda1 = {}", num(report.lambda1));
    if report.regime == CrackRegime::Weak {
        let ev = lambda_robin(1, std::f64::consts::PI, gamma)?;
        println!("root residual = {:e}", ev.residual);
    }
    if let Some(path) = trace {
        if x_min.partial_cmp(&x_max) != Some(std::cmp::Ordering::Less) || n_x < 2 {
            return Err(CliError::Usage("trace needs x_min < x_max and n_x >= 2".into()));
        }
        let mut t = Table::create(Some(path), &["x", "sigma_yz"])?;
        for i in 0..n_x {
            let x = if i == n_x - 1 { x_max } else { x_min + (x_max - x_min) * i as f64 / (n_x - 1) as f64 };
            t.numbers(&[x, traction_trace(&report.series, x)?])?;
        }
        t.finish()?;
    }
    Ok(())
}

pub fn export(file: &SeriesFile, grid: &GridArgs, dir: &Path, jobs: usize) -> Result<(), CliError> {
    let s = file.load()?;
    let stem = file.series.file_stem().and_then(|x| x.to_str()).unwrap_or("series").to_string();
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let radii = grid.radii()?;
    let thetas = grid.spec()?.thetas(s.config.omega());
    let pool = pool(jobs)?;
    let (field, errors): (Vec<_>, Vec<_>) = pool.install(|| {
        radii
            .par_iter()
            .map(|&r| (field_rows(&s, r, &thetas), error_row(&s, r)))
            .unzip()
    });

    let path = dir.join(format!("{stem}_field.csv"));
    let mut t = Table::create(Some(&path), &FIELD_HEADER)?;
    for rows in field {
        for row in rows? {
            t.numbers(&row)?;
        }
    }
    t.finish()?;
    println!("{}", path.display());

    let path = dir.join(format!("{stem}_error.csv"));
    let mut t = Table::create(Some(&path), &ERROR_HEADER)?;
    for row in errors {
        t.numbers(&row?)?;
    }
    t.finish()?;
    println!("{}", path.display());

    if energy_finite(&s)? {
        let r_max = radii.iter().cloned().fold(0.0, f64::max);
        let path = dir.join(format!("{stem}_energy.csv"));
        let mut t = Table::create(Some(&path), &ENERGY_HEADER)?;
        t.numbers(&energy_row(&s, r_max, 0.0)?)?;
        t.finish()?;
        println!("{}", path.display());
    } else {
        log::warn!("energy is infinite near the tip; no energy table");
    }
    Ok(())
}
