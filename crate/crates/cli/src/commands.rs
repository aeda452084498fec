use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde_json::json;
use vortex_sheets::continuation::{BranchTracer, ContinuationOptions};
use vortex_sheets::evolution::{EvolutionConfig, Evolver, FlowState, Trajectory};
use vortex_sheets::linear::{admissibility, det_block};
use vortex_sheets::{Bifurcation, BifurcationKind, BifurcationPoint, Branch, Error, ParamPoint, Scheme, Sign};

use crate::config::RunConfig;
use crate::{Failure, PointArgs};

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn spectrum(cfg: &RunConfig, c: f64, sigma: f64, gamma: f64, nmax: usize) -> Result<(), Failure> {
    if nmax == 0 {
        return Err(Failure::usage("--nmax must be at least 1"));
    }
    let params = ParamPoint::new(c, sigma, gamma)?;
    let mut text = String::from("# format=1\nn,det,frequency_or_growth,stable\n");
    for n in 1..=nmax {
        let det = det_block(n, &params);
        text.push_str(&format!("{n},{},{},{}\n", sci(det), sci(det.abs().sqrt()), det > 0.0));
    }
    match &cfg.out {
        Some(_) => {
            let path = cfg.out_dir()?.join("spectrum.csv");
            create(&path)?.write_all(text.as_bytes())?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn bifurcation(point: &PointArgs, sign: Sign) -> Bifurcation {
    let m = point.m;
    match point.kind {
        BifurcationKind::Speed => Bifurcation::Speed { m, sigma: point.sigma, gamma: point.gamma, sign },
        BifurcationKind::Tension => Bifurcation::Tension { m, c: point.c, gamma: point.gamma },
        BifurcationKind::Vorticity => Bifurcation::Vorticity { m, sigma: point.sigma, sign },
    }
}

fn report(p: &BifurcationPoint) -> Result<(), Failure> {
    println!("kind = {}", p.kind);
    println!("m = {}", p.m);
    println!("sign = {}", p.sign.map_or("na", Sign::name));
    println!("threshold = {}", sci(p.value()));
    println!("c = {}", sci(p.params.c));
    println!("sigma = {}", sci(p.params.sigma));
    println!("gamma = {}", sci(p.params.gamma));
    if p.kind == BifurcationKind::Speed {
        let a = admissibility(p.m, p.params.sigma, p.params.gamma)?;
        let fmt = |v: Option<f64>| v.map_or("none".to_string(), sci);
        println!(
            "sets: in_s1 = {}, in_s2 = {}, m_minus = {}, m_plus = {}",
            a.in_s1,
            a.in_s2,
            fmt(a.m_minus),
            fmt(a.m_plus)
        );
    }
    println!(
        "collision: k2 = {}, distance = {:.3e}, ok = {}, near = {}",
        sci(p.collision.offending_k),
        p.collision.distance,
        p.collision.ok,
        p.collision.near_collision
    );
    println!("kernel x0 = ({}, {})", sci(p.kernel.0), sci(p.kernel.1));
    println!("cokernel y0 = ({}, {})", sci(p.cokernel.0), sci(p.cokernel.1));
    println!("pairing = {}", sci(p.pairing));
    println!("pairing_fd = {}", sci(p.pairing_fd(1e-3)?));
    println!("admissible = {}", p.admissible);
    println!("reason = {}", p.reason);
    Ok(())
}

pub fn thresholds(point: &PointArgs, sign: Option<Sign>) -> Result<(), Failure> {
    let signs = match (point.kind, sign) {
        (BifurcationKind::Tension, _) => vec![Sign::Plus],
        (_, Some(s)) => vec![s],
        (_, None) => vec![Sign::Plus, Sign::Minus],
    };
    let mut refusals = Vec::new();
    for (i, s) in signs.into_iter().enumerate() {
        if i > 0 {
            println!();
        }
        let p = bifurcation(point, s).locate()?;
        report(&p)?;
        if !p.admissible {
            refusals.push(format!("{} {}: {}", p.kind, p.sign.map_or("na", Sign::name), p.reason));
        }
    }
    if refusals.is_empty() {
        Ok(())
    } else {
        Err(Failure::refused(refusals.join("; ")))
    }
}

pub fn branch(
    cfg: &RunConfig,
    point: &PointArgs,
    sign: Sign,
    ds: f64,
    steps: usize,
    direction: i32,
) -> Result<(), Failure> {
    if steps == 0 {
        return Err(Failure::usage("--steps must be at least 1"));
    }
    let options = ContinuationOptions {
        modes: cfg.modes,
        quad: cfg.quad,
        tol: cfg.tol,
        direction,
        ..Default::default()
    };
    if steps as f64 * ds > options.trust_amplitude * (1.0 + 1e-12) {
        return Err(Failure::usage(format!(
            "{steps} steps of {ds} exceed the trust amplitude {}",
            options.trust_amplitude
        )));
    }
    let p = bifurcation(point, sign).locate()?;
    if !p.admissible {
        return Err(Failure::refused(format!(
            "{} m={} sign={}: {}",
            p.kind,
            p.m,
            p.sign.map_or("na", Sign::name),
            p.reason
        )));
    }
    let mut tracer = BranchTracer::new(p, ds, options)?;
    let mut failure = None;
    for _ in 0..steps {
        if let Err(e) = tracer.advance() {
            failure = Some(e);
            break;
        }
    }
    let branch = tracer.into_branch();
    let dir = cfg.out_dir()?;
    let path = if branch.steps.is_empty() { None } else { Some(branch.save(&dir)?) };
    let summary = summarize(&branch, path.as_deref(), cfg.tol, failure.as_ref());
    println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn summarize(branch: &Branch, path: Option<&Path>, tol: f64, failure: Option<&Error>) -> serde_json::Value {
    let p = &branch.point;
    let asym = branch.asymptotics(2.0).ok();
    let certified = branch.certify(2).ok();
    let max_residual = branch.steps.iter().map(|s| s.residual_norm).fold(0.0, f64::max);
    json!({
        "status": if failure.is_some() { "failed" } else { "ok" },
        "error": failure.map(ToString::to_string),
        "file": path.map(|p| p.display().to_string()),
        "point": {
            "kind": p.kind.name(),
            "m": p.m,
            "sign": p.sign.map_or("na", Sign::name),
            "threshold": p.value(),
            "c": p.params.c,
            "sigma": p.params.sigma,
            "gamma": p.params.gamma,
            "pairing": p.pairing,
        },
        "steps": branch.steps.len(),
        "max_residual": max_residual,
        "p0_extrapolated": asym.map(|a| a.p0_extrapolated),
        "p0_error": asym.map(|a| (a.p0_extrapolated - p.value()).abs()),
        "tangent_defect": asym.map(|a| a.tangent_defect),
        "power_exponent": asym.and_then(|a| a.power_exponent),
        "certification": {
            "grid_factor": 2,
            "max_residual": certified.as_ref().map(|r| r.iter().copied().fold(0.0, f64::max)),
            "certified": certified.as_ref().map(|r| r.iter().all(|v| *v <= tol)),
        },
    })
}

#[allow(clippy::too_many_arguments)]
pub fn evolve(
    cfg: &RunConfig,
    input: &Path,
    row: Option<usize>,
    dt: f64,
    t_final: f64,
    scheme: Scheme,
    filter: f64,
    stride: usize,
) -> Result<(), Failure> {
    if !input.exists() {
        return Err(Failure::io(format!("{}: no such file", input.display())));
    }
    let branch = Branch::load(input)?;
    let index = row.unwrap_or(branch.steps.len().saturating_sub(1));
    let step = branch
        .steps
        .get(index)
        .ok_or_else(|| Failure::usage(format!("row {index} outside 0..{}", branch.steps.len())))?;
    let point = &branch.point;
    let params = point.kind.with_value(&point.params, step.param_value)?;
    let config = EvolutionConfig::new(dt, t_final)?
        .with_scheme(scheme)
        .with_filter(filter)?
        .with_stride(stride.max(1));
    let evolver = Evolver::new(params.sigma, params.gamma, point.m, step.state.modes(), config)?;
    let u0 = FlowState::from_sheet(&step.state);
    let mut traj = Trajectory { times: Vec::new(), states: Vec::new() };
    let mut max_err: f64 = 0.0;
    let mut last_err = 0.0;
    evolver.run_with(&u0, |t, u| {
        last_err = u.distance(&u0.translated(params.c * t), 2.0)?;
        max_err = max_err.max(last_err);
        traj.times.push(t);
        traj.states.push(u.clone());
        Ok(())
    })?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("branch");
    let path = cfg.out_dir()?.join(format!("trajectory_{stem}_row{index}.csv"));
    traj.write_csv(create(&path)?)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "file": path.display().to_string(),
            "row": index,
            "s": step.s,
            "c": params.c,
            "sigma": params.sigma,
            "gamma": params.gamma,
            "dt": evolver.dt(),
            "t_final": t_final,
            "max_shape_error": max_err,
            "final_shape_error": last_err,
        }))
        .expect("report serializes")
    );
    Ok(())
}
