use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use holed_torus::charts::{
    eigen_split, lambda_of_punctured_torus, q_form, region_height, region_membership, LambdaTriple, SlitChartPoint,
    BOUNDARY_TOL,
};
use holed_torus::extremal::{estimate_extremal_length, CurveClass, ModulusEstimate, RefinementPlan};
use holed_torus::fuchsian::{fn_to_rep, length_spectrum, spectrum_csv};
use holed_torus::regions::{
    corner_certificate, critical_lengths, handle_cover, scan_sigma_slice, sigma_membership, AxisRange, Plane,
};
use holed_torus::{try_map_ordered, validate_descriptor, Complex64, Error, Execution, SurfaceDescriptor, VERSION};

use crate::{Cli, Command};

pub enum Report {
    Json(Value),
    Csv(String),
}

/// What the process prints and how it exits.
pub struct Outcome {
    pub report: Option<Report>,
    pub message: Option<String>,
    pub code: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

pub fn run(cli: &Cli) -> Outcome {
    let config = effective_config(cli);
    match dispatch(cli, &config) {
        Ok((report, None)) => Outcome {
            report: Some(report),
            message: None,
            code: 0,
        },
        // numeric failure with a report worth keeping
        Ok((report, Some(msg))) => Outcome {
            report: Some(report),
            message: Some(msg),
            code: 1,
        },
        Err(f) => Outcome {
            report: None,
            message: Some(f.message),
            code: f.code,
        },
    }
}

pub fn emit(out: Option<&Path>, report: &Report) -> io::Result<()> {
    let text = match report {
        Report::Json(v) => {
            let mut s = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
            s.push('\n');
            s
        }
        Report::Csv(s) => s.clone(),
    };
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn effective_config(cli: &Cli) -> Value {
    let path = |p: &Path| p.display().to_string();
    let mut c = match &cli.command {
        Command::Chart { input } => json!({ "command": "chart", "input": path(input) }),
        Command::Spectrum { input, max_word_len } => {
            json!({ "command": "spectrum", "input": path(input), "max_word_len": max_word_len })
        }
        Command::Sigma {
            input,
            y0,
            max_word_len,
        } => {
            json!({ "command": "sigma", "input": path(input), "y0": path(y0), "max_word_len": max_word_len })
        }
        Command::Scan {
            y0,
            plane,
            ranges,
            max_word_len,
        } => json!({
            "command": "scan", "y0": path(y0), "plane": plane, "ranges": ranges, "max_word_len": max_word_len,
        }),
        Command::Critical { y0 } => json!({ "command": "critical", "y0": path(y0) }),
        Command::Corner { y0, eps, max_word_len } => {
            json!({ "command": "corner", "y0": path(y0), "eps": eps, "max_word_len": max_word_len })
        }
        Command::Modulus {
            input,
            tau,
            s,
            class,
            grid_n,
            levels,
            tol,
        } => json!({
            "command": "modulus", "input": input.as_deref().map(path), "tau": tau, "s": s, "class": class,
            "grid_n": grid_n, "levels": levels, "tol": tol,
        }),
    };
    c["workers"] = json!(cli.workers);
    c
}

fn envelope(config: &Value, result: impl Serialize) -> Result<Value, Failure> {
    Ok(json!({
        "tool": "holed-torus",
        "version": VERSION,
        "config": config,
        "result": serde_json::to_value(result).map_err(Error::from)?,
    }))
}

fn csv_with_header(config: &Value, body: &str) -> String {
    format!("# holed-torus {VERSION}\n# config: {config}\n{body}")
}

fn read_descriptor(p: &Path) -> Result<SurfaceDescriptor, Failure> {
    let text = fs::read_to_string(p).map_err(|e| input_error(format!("cannot read {}: {e}", p.display())))?;
    let d = SurfaceDescriptor::from_json(&text)?;
    validate_descriptor(&d)?;
    Ok(d)
}

fn read_fn(p: &Path) -> Result<holed_torus::charts::FNChartPoint, Failure> {
    read_descriptor(p)?.as_fn().ok_or_else(|| {
        input_error(format!(
            "{} is not a Fenchel-Nielsen descriptor (chart \"fn\")",
            p.display()
        ))
    })
}

/// Runs `f` with the requested worker count. Only batched work is handed a
/// parallel policy.
fn with_workers<T>(workers: Option<usize>, f: impl FnOnce(Execution) -> Result<T, Failure> + Send) -> Result<T, Failure>
where
    T: Send,
{
    match workers {
        Some(0) => Err(input_error("--workers must be at least 1".into())),
        Some(1) => f(Execution::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure {
                code: 1,
                message: format!("cannot start {n} workers: {e}"),
            })?
            .install(|| f(Execution::Parallel)),
        #[cfg(feature = "parallel")]
        None => f(Execution::Parallel),
        #[cfg(not(feature = "parallel"))]
        _ => f(Execution::Sequential),
    }
}

type Dispatched = (Report, Option<String>);

fn dispatch(cli: &Cli, config: &Value) -> Result<Dispatched, Failure> {
    let seq = Execution::Sequential;
    let ok = |r: Report| Ok((r, None));
    match &cli.command {
        Command::Chart { input } => ok(Report::Json(envelope(config, chart(input)?)?)),
        Command::Spectrum { input, max_word_len } => {
            let rep = fn_to_rep(read_fn(input)?)?;
            let entries = length_spectrum(&rep, *max_word_len, seq)?;
            ok(Report::Csv(csv_with_header(config, &spectrum_csv(&entries))))
        }
        Command::Sigma {
            input,
            y0,
            max_word_len,
        } => {
            let v = sigma_membership(read_fn(input)?, read_fn(y0)?, *max_word_len, seq)?;
            ok(Report::Json(envelope(config, v)?))
        }
        Command::Scan {
            y0,
            plane,
            ranges,
            max_word_len,
        } => {
            let y0 = read_fn(y0)?;
            let plane: Plane = plane.parse()?;
            let r: [AxisRange; 2] = [ranges[0].parse()?, ranges[1].parse()?];
            let grid = with_workers(cli.workers, |exec| {
                Ok(scan_sigma_slice(y0, plane, r, *max_word_len, exec)?)
            })?;
            ok(Report::Csv(csv_with_header(config, &grid.to_csv())))
        }
        Command::Critical { y0 } => {
            let d = read_descriptor(y0)?;
            let lengths = critical_lengths(&d)?;
            let strips = holed_torus::regions::strip_report(&d)?;
            let cover = match handle_cover(&d) {
                Ok(c) => json!({ "available": true, "descriptor": c }),
                Err(e) => json!({ "available": false, "reason": e.to_string() }),
            };
            ok(Report::Json(envelope(
                config,
                json!({ "critical_lengths": lengths, "strips": strips, "handle_cover": cover }),
            )?))
        }
        Command::Corner { y0, eps, max_word_len } => {
            let r = corner_certificate(read_fn(y0)?, *eps, *max_word_len, seq)?;
            let certified = r.certified();
            ok(Report::Json(envelope(
                config,
                json!({ "certified": certified, "report": r }),
            )?))
        }
        Command::Modulus {
            input,
            tau,
            s,
            class,
            grid_n,
            levels,
            tol,
        } => {
            let p = match (input, tau, s) {
                (Some(path), _, _) => read_descriptor(path)?
                    .as_slit()
                    .ok_or_else(|| input_error(format!("{} is not a slit descriptor", path.display())))?,
                (None, Some(t), Some(s)) => SlitChartPoint::new(parse_tau(t)?, *s)?,
                _ => return Err(input_error("give either --input or both --tau and --s".into())),
            };
            let plan = RefinementPlan {
                grid_n: *grid_n,
                levels: *levels,
                rel_tol: *tol,
            };
            plan.grids()?;
            modulus(cli.workers, config, p, class, &plan)
        }
    }
}

fn parse_tau(t: &str) -> Result<Complex64, Failure> {
    let bad = || input_error(format!("--tau {t:?} is not re,im"));
    let (re, im) = t.split_once(',').ok_or_else(bad)?;
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

fn chart(input: &Path) -> Result<Value, Failure> {
    let d = read_descriptor(input)?;
    let v = validate_descriptor(&d)?;
    let mut out = json!({
        "descriptor": d,
        "valid": true,
        "once_punctured": v.once_punctured,
        "once_holed_torus": v.once_holed_torus,
    });
    match d {
        SurfaceDescriptor::Lambda { x } => {
            let split = eigen_split(x);
            out["lambda"] = json!({
                "q": q_form(x),
                "region_gap": q_form(x) + 4.0,
                "classification": region_membership(x, BOUNDARY_TOL)?,
                "eigen_split": split,
                "boundary_height": region_height(split.zeta)?,
            });
        }
        SurfaceDescriptor::Slit { tau, s: 0.0 } => {
            let t: LambdaTriple = lambda_of_punctured_torus(Complex64::new(tau[0], tau[1]))?;
            out["lambda"] = json!({
                "x": t.x,
                "region_gap": t.region_gap(),
                "classification": t.classify(BOUNDARY_TOL)?,
            });
        }
        SurfaceDescriptor::Fixture { .. } => {
            let f = d.as_fixture().expect("fixture descriptor");
            out["fixture"] = json!({ "punctures": f.punctures() });
        }
        _ => {}
    }
    Ok(out)
}

fn modulus(
    workers: Option<usize>,
    config: &Value,
    p: SlitChartPoint,
    class: &str,
    plan: &RefinementPlan,
) -> Result<Dispatched, Failure> {
    let classes: Vec<CurveClass> = if class == "all" {
        CurveClass::ALL.to_vec()
    } else {
        vec![class.parse()?]
    };
    let batched = classes.len() > 1;
    let solve = |exec: Execution| {
        Ok(try_map_ordered(exec, &classes, |&c| {
            estimate_extremal_length(p, c, plan)
        })?)
    };
    let estimates: Vec<ModulusEstimate> = if batched {
        with_workers(workers, solve)?
    } else {
        solve(Execution::Sequential)?
    };
    let unconverged: Vec<String> = estimates
        .iter()
        .filter(|e| !e.converged)
        .map(|e| json!(e.class).as_str().unwrap_or_default().to_string())
        .collect();
    let result = if batched {
        let x = [estimates[0].estimate, estimates[1].estimate, estimates[2].estimate];
        let triple = LambdaTriple::new(x)?;
        json!({
            "triple": triple.x,
            "region_gap": triple.region_gap(),
            "error_indicator": estimates.iter().map(|e| e.error_indicator).fold(0.0, f64::max),
            "components": estimates,
        })
    } else {
        serde_json::to_value(&estimates[0]).map_err(Error::from)?
    };
    let report = Report::Json(envelope(config, result)?);
    let message = (!unconverged.is_empty()).then(|| {
        format!(
            "refinement did not converge to rel_tol {} for class {}",
            plan.rel_tol,
            unconverged.join(", ")
        )
    });
    Ok((report, message))
}
