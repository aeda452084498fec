//! End-to-end checks, one line per criterion. Runs as a plain binary so the
//! report is printed even when every check passes.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vortex_sheets::continuation::{trace_branch, ContinuationOptions};
use vortex_sheets::contour::{biot_savart_velocity, trace_velocities};
use vortex_sheets::evolution::{measure_frequencies, observed_orders, predicted_frequencies, verify_traveling};
use vortex_sheets::functional::unit_directions;
use vortex_sheets::linear::{
    assembled_jacobian, block, det_block, singular_values, threshold_sigma_forms, Bifurcation, BifurcationKind,
    BifurcationPoint, Sign,
};
use vortex_sheets::{
    EvenSeries, EvolutionConfig, FullSeries, Grid, Interface, OddSeries, ParamPoint, Scheme, SheetState,
    SteadyFunctional,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn trivial_sweep() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let m = 1 + i % 4;
        let p = ParamPoint::new(
            rng.random_range(-2.0..=2.0),
            3.0 - rng.random_range(0.0..3.0),
            rng.random_range(-2.0..=2.0),
        )
        .unwrap();
        let f = SteadyFunctional::for_modes(m, 8);
        worst = worst.max(f.residual(&p, &SheetState::zero(m, 8)).unwrap().y_norm);
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-12 && t < Duration::from_secs(5),
        format!("max residual {worst:.2e} over 100 points in {:.2} s", secs(t)),
    )
}

fn operator_oracles() -> Outcome {
    let grid = Grid::new(256).unwrap();
    let iface = Interface::new(&grid, &FullSeries::zeros(1, 1)).unwrap();
    let mut d_err = 0.0f64;
    let mut h_err = 0.0f64;
    let mut check = |f: &dyn Fn(f64) -> f64, mean: f64, hilbert: &dyn Fn(f64) -> f64| {
        let fo = grid.sample_offset(f);
        let d = iface.d0(&fo).unwrap();
        d_err = d_err.max(d.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max));
        let h = iface.h0(&fo).unwrap();
        h_err = h_err.max(max_abs_diff(&h, &grid.sample(hilbert)));
    };
    check(&|_| 1.0, 1.0, &|_| 0.0);
    for k in 1..=8 {
        let kf = k as f64;
        check(&move |x| (kf * x).cos(), 0.0, &move |x| (kf * x).sin());
        check(&move |x| (kf * x).sin(), 0.0, &move |x| -(kf * x).cos());
    }
    outcome(
        d_err <= 1e-11 && h_err <= 1e-11,
        format!("D0 error {d_err:.2e}, H0 error {h_err:.2e}"),
    )
}

fn jacobian_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 4;
    let mut worst = 0.0f64;
    let mut leak = 0.0f64;
    for m in [2, 3] {
        let f = SteadyFunctional::for_modes(m, n);
        let dirs = unit_directions(m, n);
        for _ in 0..20 {
            let p = ParamPoint::new(
                rng.random_range(-2.0..=2.0),
                rng.random_range(0.1..3.0),
                rng.random_range(-2.0..=2.0),
            )
            .unwrap();
            let fd = f.fd_jacobian(&p, &SheetState::zero(m, n), &dirs, 1e-5).unwrap().matrix;
            for k in 1..=n {
                let b = block(k * m, &p).entries;
                let scale = b.abs().max();
                for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let got = fd[(r * n + k - 1, c * n + k - 1)];
                    worst = worst.max((got - b[(r, c)]).abs() / scale);
                }
            }
            let scale = assembled_jacobian(&p, m, n).abs().max();
            for i in 0..2 * n {
                for j in 0..2 * n {
                    if i % n != j % n {
                        leak = leak.max(fd[(i, j)].abs() / scale);
                    }
                }
            }
        }
    }
    outcome(
        worst <= 1e-6 && leak <= 1e-8,
        format!("max relative block error {worst:.2e}, leakage {leak:.2e}"),
    )
}

fn random_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn admissible_sweep(count: usize) -> Vec<BifurcationPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut points = Vec::new();
    let mut i = 0;
    while points.len() < count {
        let m = rng.random_range(2..=6);
        let sigma = rng.random_range(0.1..3.0);
        let gamma = rng.random_range(-2.0..=2.0);
        let c = rng.random_range(-2.0..=2.0);
        let bif = match i % 3 {
            0 => Bifurcation::Speed { m, sigma, gamma, sign: random_sign(&mut rng) },
            1 => Bifurcation::Tension { m, c, gamma },
            _ => Bifurcation::Vorticity { m, sigma, sign: random_sign(&mut rng) },
        };
        i += 1;
        if let Ok(point) = bif.locate() {
            if point.admissible {
                points.push(point);
            }
        }
    }
    points
}

fn thresholds() -> Outcome {
    let points = admissible_sweep(50);
    let mut det_err = 0.0f64;
    let mut form_err = 0.0f64;
    for p in &points {
        let b = block(p.m, &p.params).entries;
        let scale = (b[(0, 0)] * b[(1, 1)]).abs() + (b[(0, 1)] * b[(1, 0)]).abs();
        det_err = det_err.max(det_block(p.m, &p.params).abs() / scale);
        if p.kind == BifurcationKind::Tension {
            let (a, b) = threshold_sigma_forms(p.m, p.params.c, p.params.gamma).unwrap();
            form_err = form_err.max((a - b).abs() / a.abs());
        }
    }
    outcome(
        det_err <= 1e-12 && form_err <= 1e-14,
        format!("{} points: relative det {det_err:.2e}, tension forms {form_err:.2e}", points.len()),
    )
}

// ⟨∂_p Dℱ x₀, y₀⟩ from the nonlinear map: centered in p, centered in the
// amplitude along x₀, Richardson-combined in the amplitude.
fn pairing_from_functional(point: &BifurcationPoint) -> f64 {
    let n = 4;
    let f = SteadyFunctional::for_modes(point.m, n);
    let x0 = point.kernel_state(n);
    let y0 = point.cokernel_vector(n);
    let p = point.value();
    let h = if point.kind == BifurcationKind::Tension { 0.5 * p.min(0.2) } else { 0.1 };
    let g = |dp: f64, e: f64| -> f64 {
        let params = point.kind.with_value(&point.params, p + dp).unwrap();
        let r = f.residual_vector(&params, &x0.scaled(e)).unwrap();
        r.iter().zip(&y0).map(|(a, b)| a * b).sum()
    };
    let mixed = |e: f64| (g(h, e) - g(h, -e) - g(-h, e) + g(-h, -e)) / (4.0 * h * e);
    let e = 1e-3;
    (4.0 * mixed(e / 2.0) - mixed(e)) / 3.0
}

fn transversality() -> Outcome {
    let points = admissible_sweep(50);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 8;
    let mut bad_kernel = 0;
    let mut range = 0.0f64;
    let mut pair_err = 0.0f64;
    for p in &points {
        let small = singular_values(&p.params, p.m, n).iter().filter(|s| **s < 1e-8).count();
        if small != 1 {
            bad_kernel += 1;
        }
        let l = assembled_jacobian(&p.params, p.m, n);
        let y0 = nalgebra::DVector::from_vec(p.cokernel_vector(n));
        for _ in 0..20 {
            let u = nalgebra::DVector::from_fn(2 * n, |_, _| rng.random_range(-1.0..1.0));
            range = range.max((&l * &u).dot(&y0).abs() / (l.norm() * u.norm() * y0.norm()));
        }
        let fd = pairing_from_functional(p);
        let alg = p.pairing_fd(1e-2).unwrap();
        pair_err = pair_err.max((fd - p.pairing).abs() / p.pairing.abs());
        pair_err = pair_err.max((alg - p.pairing).abs() / p.pairing.abs());
    }
    outcome(
        bad_kernel == 0 && range <= 1e-12 && pair_err <= 1e-8,
        format!(
            "{} points: {bad_kernel} without a simple kernel, range defect {range:.2e}, pairing error {pair_err:.2e}",
            points.len()
        ),
    )
}

fn branches() -> Outcome {
    let opts = ContinuationOptions::default();
    let mut pass = true;
    let mut parts = Vec::new();
    for bif in [
        Bifurcation::Speed { m: 2, sigma: 1.0, gamma: 0.0, sign: Sign::Plus },
        Bifurcation::Tension { m: 2, c: 1.0, gamma: 1.0 },
        Bifurcation::Vorticity { m: 2, sigma: 1.0, sign: Sign::Plus },
    ] {
        let point = bif.locate().unwrap();
        let start = Instant::now();
        let result = trace_branch(&point, 1e-3, 10, &opts);
        let t = start.elapsed();
        let Ok(branch) = result else {
            pass = false;
            parts.push(format!("{}: {}", point.kind, result.unwrap_err()));
            continue;
        };
        let half = trace_branch(&point, 5e-4, 10, &opts).unwrap();
        let a = branch.asymptotics(2.0).unwrap();
        let b = half.asymptotics(2.0).unwrap();
        let res = branch.steps.iter().map(|s| s.residual_norm).fold(0.0, f64::max);
        let p0 = (a.p0_extrapolated - point.value()).abs();
        let drift = (a.tangent_defect - b.tangent_defect).abs() / a.tangent_defect;
        pass &= res <= 1e-10 && p0 <= 1e-6 && drift <= 0.1 && t < Duration::from_secs(60);
        parts.push(format!(
            "{}: residual {res:.1e}, p0 {p0:.1e}, defect {:.3}/{:.3}, {:.2} s",
            point.kind,
            a.tangent_defect,
            b.tangent_defect,
            secs(t)
        ));
    }
    outcome(pass, parts.join("; "))
}

fn perturbed() -> SheetState {
    let eta = EvenSeries::new(2, vec![0.01, -0.003, 0.0005]).unwrap();
    let psi = OddSeries::new(2, vec![0.02, 0.004, -0.001]).unwrap();
    SheetState::new(eta, psi).unwrap()
}

fn velocity_field() -> Outcome {
    let gamma = 2.0;
    let grid = Grid::new(256).unwrap();
    let circle = SheetState::zero(1, 4);
    let mut inner = 0.0f64;
    let mut outer = 0.0f64;
    for i in 0..20 {
        let th = 0.31 * i as f64;
        let r = 0.8 * (i as f64 + 0.5) / 20.0;
        let u = biot_savart_velocity(&grid, &circle, gamma, [r * th.cos(), r * th.sin()]).unwrap();
        inner = inner.max(u[0].hypot(u[1]));
        let r = 1.2 + 0.15 * i as f64;
        let x = [r * th.cos(), r * th.sin()];
        let u = biot_savart_velocity(&grid, &circle, gamma, x).unwrap();
        outer = outer.max((u[0] + gamma * x[1] / (r * r)).hypot(u[1] - gamma * x[0] / (r * r)));
    }
    let mut jump = 0.0f64;
    for (state, g) in [(perturbed(), -1.3), (perturbed().scaled(3.0), 0.4)] {
        let tv = trace_velocities(&grid, &state, g).unwrap();
        let omega: Vec<f64> = state.psi().derivative().evaluate(&grid).iter().map(|w| w + g).collect();
        jump = jump.max(max_abs_diff(&tv.tangential_jump(), &omega));
    }
    let limits = trace_limit_defect();
    outcome(
        inner <= 1e-10 && outer <= 1e-10 && jump <= 1e-8 && limits <= 1e-8,
        format!(
            "|u-| {inner:.2e}, |u+ - exact| {outer:.2e}, jump - omega {jump:.2e}, traces vs one-sided limits {limits:.2e}"
        ),
    )
}

// Traces against the off-curve field extrapolated to the sheet along the
// normal from each side.
fn trace_limit_defect() -> f64 {
    let gamma = 0.7;
    let state = perturbed();
    let grid = Grid::new(256).unwrap();
    let tv = trace_velocities(&grid, &state, gamma).unwrap();
    let fine = Grid::new(1 << 15).unwrap();
    let iface = Interface::from_state(&grid, &state).unwrap();
    let z = iface.positions();
    let t = iface.tangents();
    let mut worst = 0.0f64;
    for j in (0..grid.len()).step_by(17) {
        let len = t[j][0].hypot(t[j][1]);
        let n = [-t[j][1] / len, t[j][0] / len];
        for (side, trace) in [(1.0, tv.inner[j]), (-1.0, tv.outer[j])] {
            let mut limit = [0.0, 0.0];
            for k in 1..=8 {
                let d = side * 2e-3 * k as f64;
                let u = biot_savart_velocity(&fine, &state, gamma, [z[j][0] + d * n[0], z[j][1] + d * n[1]]).unwrap();
                let w: f64 = (1..=8).filter(|&i| i != k).map(|i| i as f64 / (i as f64 - k as f64)).product();
                limit[0] += w * u[0];
                limit[1] += w * u[1];
            }
            worst = worst.max((limit[0] - trace[0]).hypot(limit[1] - trace[1]));
        }
    }
    worst
}

fn dispersion() -> Outcome {
    use rayon::prelude::*;
    let mut cases = Vec::new();
    for &(sigma, gamma, m) in &[(1.0, 0.0, 1), (1.0, 0.0, 2), (2.0, 0.5, 1), (1.0, 1.0, 2)] {
        for n in 1..=8 / m {
            let k = n * m;
            if det_block(k, &ParamPoint::new(0.0, sigma, gamma).unwrap()) > 0.0 {
                cases.push((sigma, gamma, m, n));
            }
        }
    }
    let errs: Vec<(f64, f64)> = cases
        .par_iter()
        .map(|&(sigma, gamma, m, n)| {
            let k = n * m;
            let root = det_block(k, &ParamPoint::new(0.0, sigma, gamma).unwrap()).sqrt();
            let (lo, hi) = predicted_frequencies(k, sigma, gamma).unwrap();
            let cfg = EvolutionConfig::new(2.0 * PI / hi / 100.0, 3.0 * 2.0 * PI / lo)
                .unwrap()
                .with_scheme(Scheme::Rk4)
                .with_filter(0.0)
                .unwrap();
            let (a, b) = measure_frequencies(sigma, gamma, m, n, 8 / m, 1e-8, &cfg).unwrap();
            let (a, b) = (a.abs().min(b.abs()), a.abs().max(b.abs()));
            let pair = ((a - lo).abs() / lo).max((b - hi).abs() / hi);
            let geo = ((a * b).sqrt() - root).abs() / root;
            (pair, geo)
        })
        .collect();
    let pair = errs.iter().map(|e| e.0).fold(0.0, f64::max);
    let geo = errs.iter().map(|e| e.1).fold(0.0, f64::max);
    outcome(
        pair <= 5e-3 && geo <= 5e-3,
        format!("{} modes: frequency error {pair:.2e}, sqrt(det) error {geo:.2e}", cases.len()),
    )
}

fn traveling() -> Outcome {
    let opts = ContinuationOptions::default();
    let vort = Bifurcation::Vorticity { m: 2, sigma: 1.0, sign: Sign::Plus }.locate().unwrap();
    let branch = trace_branch(&vort, 1e-3, 10, &opts).unwrap();
    let step = branch.steps.last().unwrap();
    let params = vort.kind.with_value(&vort.params, step.param_value).unwrap();
    let drift = verify_traveling(&step.state, &params, &EvolutionConfig::new(1e-3, 0.1).unwrap(), 2.0)
        .unwrap()
        .max_shape_error;

    let speed = Bifurcation::Speed { m: 2, sigma: 1.0, gamma: 0.0, sign: Sign::Plus }.locate().unwrap();
    let branch = trace_branch(&speed, 1e-3, 10, &opts).unwrap();
    let step = branch.steps.last().unwrap();
    let params = speed.kind.with_value(&speed.params, step.param_value).unwrap();
    let run = |dt: f64| {
        verify_traveling(&step.state, &params, &EvolutionConfig::new(dt, 0.05).unwrap(), 2.0)
            .unwrap()
            .max_shape_error
    };
    let errors: Vec<f64> = [2e-3, 1e-3, 5e-4].iter().map(|&dt| run(dt)).collect();
    let orders = observed_orders(&errors);
    let fine = run(1e-4);
    let order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    outcome(
        drift <= 1e-7 && fine <= 1e-6 && order >= 1.95,
        format!("stationary drift {drift:.2e}, speed error {fine:.2e} at dt=1e-4, orders {orders:.2?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trivial-solution sweep", trivial_sweep),
        ("operator oracles", operator_oracles),
        ("Jacobian agreement", jacobian_agreement),
        ("closed-form thresholds", thresholds),
        ("kernel, range and transversality", transversality),
        ("branch existence", branches),
        ("velocity field", velocity_field),
        ("dispersion", dispersion),
        ("traveling waves", traveling),
    ];
    let results: Vec<(Outcome, Duration)> = criteria
        .iter()
        .map(|(_, f)| {
            let start = Instant::now();
            let out = f();
            (out, start.elapsed())
        })
        .collect();
    let mut failed = 0;
    for (i, ((name, _), (out, t))) in criteria.iter().zip(&results).enumerate() {
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} {name} ({:.1} s): {}", i + 1, secs(*t), out.detail);
        failed += usize::from(!out.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
