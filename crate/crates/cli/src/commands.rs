use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use heisenhardy::certify::{run_checks, CheckReport, VerifyConfig};
use heisenhardy::constants::{
    construct_epsilon_domain, count_nonorthogonal_faces, cm_upper_bound_check, hardy_constant_assumption,
    hardy_constant_epsilon, hardy_constant_polytope, solve_cm,
};
use heisenhardy::distance::distance_report;
use heisenhardy::hardy::{minimize_quotient, quotient, trial_from_distance, trial_sequence, weight_field, Grid};
use heisenhardy::{Point, Polytope, WeightKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, ConstantsArgs, Format, GenerateArgs, QuotientArgs, Shape, ConstantKind, VerifyArgs};

const MIN_GRID: usize = 16;

pub fn run(cli: Cli) -> Result<String> {
    let fmt = cli.format;
    match cli.command {
        Command::Distance { polytope, point } => distance(&polytope, point, fmt),
        Command::Verify(a) => verify(a, fmt),
        Command::Cm { m } => cm(m, fmt),
        Command::Constants(a) => constants(a, fmt),
        Command::Quotient(a) => quotient_cmd(a, fmt),
        Command::Generate(a) => generate(a),
    }
}

fn load_polytope(path: &Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Polytope::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Two-line CSV from a flat JSON object, columns in key order.
fn flat_csv(v: &Value) -> String {
    let obj = v.as_object().expect("flat report is an object");
    let cols: Vec<(&str, &Value)> = obj.iter().map(|(k, v)| (k.as_str(), v)).collect();
    csv_row(&cols)
}

fn csv_row(cols: &[(&str, &Value)]) -> String {
    let head: Vec<&str> = cols.iter().map(|c| c.0).collect();
    let row: Vec<String> = cols.iter().map(|c| csv_cell(c.1)).collect();
    format!("{}\n{}\n", head.join(","), row.join(","))
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn distance(path: &Path, x: Point, fmt: Format) -> Result<String> {
    let p = load_polytope(path)?;
    let r = distance_report(&p, x)?;
    match fmt {
        Format::Json => to_json(&r),
        Format::Csv => {
            let vals = [x.x1, x.x2, x.x3, r.delta_c, r.delta_k, r.omega, r.d1, r.d2, r.bracket[0], r.bracket[1]].map(Value::from);
            let names = ["x1", "x2", "x3", "delta_c", "delta_k", "omega", "d1", "d2", "bracket_lo", "bracket_hi"];
            let cols: Vec<(&str, &Value)> = names.into_iter().zip(vals.iter()).collect();
            Ok(csv_row(&cols))
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    grid: usize,
    samples: usize,
    all_pass: bool,
    checks: Vec<CheckReport>,
}

fn verify(a: VerifyArgs, fmt: Format) -> Result<String> {
    let cfg = VerifyConfig { seed: a.seed, grid: a.grid as usize, samples: a.samples as usize };
    let checks = run_checks(&cfg, a.only.as_deref())?;
    let report = VerifyReport {
        seed: cfg.seed,
        grid: cfg.grid,
        samples: cfg.samples,
        all_pass: checks.iter().all(|c| c.pass),
        checks,
    };
    match fmt {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut out = String::from("id,pass\n");
            for c in &report.checks {
                writeln!(out, "{},{}", c.id, c.pass)?;
            }
            Ok(out)
        }
    }
}

fn cm(m: u32, fmt: Format) -> Result<String> {
    let s = solve_cm(m)?;
    let v = json!({"m": s.m, "c_m": s.c_m, "residual": s.residual, "bound_ok": cm_upper_bound_check(&s)});
    match fmt {
        Format::Json => to_json(&v),
        Format::Csv => {
            let cols: Vec<(&str, &Value)> = ["m", "c_m", "residual", "bound_ok"].into_iter().map(|k| (k, &v[k])).collect();
            Ok(csv_row(&cols))
        }
    }
}

fn constants(a: ConstantsArgs, fmt: Format) -> Result<String> {
    let mut v = match a.theorem {
        ConstantKind::Polytope => {
            let m = a.m.context("--m is required for theorem 3.2")?;
            serde_json::to_value(hardy_constant_polytope(m)?)?
        }
        ConstantKind::Assumption => {
            let x = a.a.context("--a is required for theorem 6.2")?;
            serde_json::to_value(hardy_constant_assumption(x)?)?
        }
        ConstantKind::Epsilon => {
            let eps = a.epsilon.context("--epsilon is required for theorem 3.3")?;
            let mut v = serde_json::to_value(hardy_constant_epsilon(eps)?)?;
            let (p, _) = construct_epsilon_domain(eps, a.sides)?;
            match &a.output {
                Some(path) => {
                    write_file(path, &p.to_json())?;
                    v["domain"] = json!(path.display().to_string());
                }
                None if fmt == Format::Json => v["domain"] = serde_json::from_str(&p.to_json())?,
                None => {}
            }
            v
        }
    };
    if let Some(obj) = v.as_object_mut() {
        obj.retain(|_, x| !x.is_null());
    }
    match fmt {
        Format::Json => to_json(&v),
        Format::Csv => Ok(flat_csv(&v)),
    }
}

/// Lower bound the minimal quotient must respect for a weight.
fn minimize_bound(p: &Polytope, kind: WeightKind) -> Result<f64> {
    let polytope_bound = || -> Result<f64> {
        let m = count_nonorthogonal_faces(p) as u32;
        Ok(hardy_constant_polytope(m)?.quotient_bound)
    };
    Ok(match kind {
        WeightKind::DeltaC => polytope_bound()?,
        WeightKind::DeltaK => polytope_bound()? / std::f64::consts::PI,
        WeightKind::PointCc => 1.0,
        WeightKind::Omega | WeightKind::D1D2 | WeightKind::KaplanOrigin | WeightKind::HalfSpaceLy => 0.25,
    })
}

#[derive(Serialize)]
struct QuotientRow {
    weight: WeightKind,
    grid: usize,
    mode: &'static str,
    n: Option<u32>,
    value: f64,
    bound: Option<f64>,
    pass: Option<bool>,
    runtime: f64,
}

fn quotient_cmd(a: QuotientArgs, fmt: Format) -> Result<String> {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(heisenhardy::Error::InvalidArgument(format!("--tol {t} must be positive")).into());
        }
    }
    if let Some(&n) = a.grid.iter().find(|&&n| n < MIN_GRID) {
        return Err(heisenhardy::Error::InvalidArgument(format!("--grid {n} is below {MIN_GRID}")).into());
    }
    let trials: Option<Vec<u32>> = match (&a.trials, a.trial) {
        (Some(list), _) => Some(list.clone()),
        (None, Some(n)) => Some(vec![n]),
        (None, None) if a.minimize => None,
        (None, None) => bail!(heisenhardy::Error::InvalidArgument("choose --minimize, --trial N or --trials LIST".into())),
    };
    if trials.as_ref().is_some_and(|t| t.contains(&0)) {
        return Err(heisenhardy::Error::InvalidArgument("trial indices start at 1".into()).into());
    }
    let p = load_polytope(&a.polytope)?;
    let mut rows = Vec::new();
    for &n in &a.grid {
        let tol = a.tol.unwrap_or(if n >= 64 { 0.05 } else { 0.1 });
        let start = Instant::now();
        let g = Grid::new(&p, n)?;
        let w = weight_field(&g, &p, a.weight, a.origin)?;
        match &trials {
            None => {
                let m = minimize_quotient(&g, &w, a.iters)?;
                let bound = minimize_bound(&p, a.weight)?;
                rows.push(QuotientRow {
                    weight: a.weight,
                    grid: n,
                    mode: "minimize",
                    n: None,
                    value: m.value,
                    bound: Some(bound),
                    pass: Some(m.value >= (1.0 - tol) * bound),
                    runtime: start.elapsed().as_secs_f64(),
                });
            }
            Some(list) => {
                for &k in list {
                    let t0 = Instant::now();
                    let u = match &w.distance {
                        Some(d) if a.weight == WeightKind::DeltaC => trial_from_distance(&g, d, k)?,
                        _ => trial_sequence(&g, &p, k)?,
                    };
                    let value = quotient(&g, &u, &w)?;
                    // the limit (1/2 + 1/n)² is known for the δ_C weight only
                    let bound = (a.weight == WeightKind::DeltaC).then(|| (0.5 + 1.0 / k as f64).powi(2));
                    let tol = a.tol.unwrap_or(0.05);
                    rows.push(QuotientRow {
                        weight: a.weight,
                        grid: n,
                        mode: "trial",
                        n: Some(k),
                        value,
                        bound,
                        pass: bound.map(|b| (value - b).abs() <= tol * b),
                        runtime: t0.elapsed().as_secs_f64(),
                    });
                }
            }
        }
    }
    match fmt {
        Format::Json if rows.len() == 1 => to_json(&rows[0]),
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from("weight,grid,mode,n,value,bound,pass,runtime\n");
            for r in &rows {
                let opt = |v: Option<String>| v.unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.weight,
                    r.grid,
                    r.mode,
                    opt(r.n.map(|v| v.to_string())),
                    r.value,
                    opt(r.bound.map(|v| v.to_string())),
                    opt(r.pass.map(|v| v.to_string())),
                    r.runtime
                )?;
            }
            Ok(out)
        }
    }
}

fn generate(a: GenerateArgs) -> Result<String> {
    let p = match a.shape {
        Shape::Cube => Polytope::cube(a.half)?,
        Shape::Simplex => Polytope::random_simplex(a.seed),
        Shape::Prism => Polytope::regular_prism(0.0, 0.0, a.radius, a.sides, 0.0, a.height)?,
        Shape::Cylinder => construct_epsilon_domain(a.epsilon, a.sides)?.0,
    };
    let text = p.to_json() + "\n";
    match &a.output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
