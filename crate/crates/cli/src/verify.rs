use std::f64::consts::PI;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vortex_sheets::contour::{biot_savart_velocity, trace_velocities};
use vortex_sheets::evolution::{measure_frequencies, predicted_frequencies};
use vortex_sheets::functional::unit_directions;
use vortex_sheets::linear::{block, det_block};
use vortex_sheets::{
    EvenSeries, EvolutionConfig, FullSeries, Grid, Interface, OddSeries, ParamPoint, Scheme, SheetState,
    SteadyFunctional,
};

use crate::config::RunConfig;
use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Trivial,
    Jacobian,
    Operators,
    Velocity,
    Dispersion,
    All,
}

struct Check {
    name: String,
    measured: f64,
    tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured, tolerance }
    }

    fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn grid(cfg: &RunConfig, m: usize, n: usize) -> Result<Grid, Failure> {
    Ok(match cfg.quad {
        Some(q) => {
            let g = Grid::new(q)?;
            g.check_resolution(m, n)?;
            g
        }
        None => Grid::for_modes(m, n),
    })
}

fn trivial(cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let m = 1 + i % 4;
        let p = ParamPoint::new(
            rng.random_range(-2.0..=2.0),
            3.0 - rng.random_range(0.0..3.0),
            rng.random_range(-2.0..=2.0),
        )?;
        let f = SteadyFunctional::new(grid(cfg, m, 8)?);
        worst = worst.max(f.residual(&p, &SheetState::zero(m, 8))?.y_norm);
    }
    Ok(vec![Check::new("trivial residual, 100 points", worst, 1e-12)])
}

fn operators(cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let g = grid(cfg, 1, 8)?;
    let iface = Interface::new(&g, &FullSeries::zeros(1, 1))?;
    let mut d_err = 0.0f64;
    let mut h_err = 0.0f64;
    for k in 0..=8 {
        let kf = k as f64;
        let cases: Vec<(Box<dyn Fn(f64) -> f64>, f64, Box<dyn Fn(f64) -> f64>)> = if k == 0 {
            vec![(Box::new(|_| 1.0), 1.0, Box::new(|_| 0.0))]
        } else {
            vec![
                (Box::new(move |x| (kf * x).cos()), 0.0, Box::new(move |x| (kf * x).sin())),
                (Box::new(move |x| (kf * x).sin()), 0.0, Box::new(move |x| -(kf * x).cos())),
            ]
        };
        for (f, mean, hilbert) in cases {
            let fo = g.sample_offset(&f);
            let d = iface.d0(&fo)?;
            d_err = d_err.max(d.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max));
            let h = iface.h0(&fo)?;
            let exact = g.sample(&hilbert);
            h_err = h_err.max(h.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
        }
    }
    Ok(vec![
        Check::new("D0 at the circle vs mean", d_err, 1e-11),
        Check::new("H0 at the circle vs Hilbert", h_err, 1e-11),
    ])
}

fn jacobian(cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let n = 4;
    let mut checks = Vec::new();
    for m in [2, 3] {
        let f = SteadyFunctional::new(grid(cfg, m, n)?);
        let dirs = unit_directions(m, n);
        let mut per_mode = vec![0.0f64; n];
        let mut leak = 0.0f64;
        for _ in 0..20 {
            let p = ParamPoint::new(
                rng.random_range(-2.0..=2.0),
                rng.random_range(0.1..3.0),
                rng.random_range(-2.0..=2.0),
            )?;
            let fd = f.fd_jacobian(&p, &SheetState::zero(m, n), &dirs, 1e-5)?.matrix;
            let mut scale = 0.0f64;
            for k in 1..=n {
                let b = block(k * m, &p).entries;
                let bs = b.abs().max();
                scale = scale.max(bs);
                for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let got = fd[(r * n + k - 1, c * n + k - 1)];
                    per_mode[k - 1] = per_mode[k - 1].max((got - b[(r, c)]).abs() / bs);
                }
            }
            for i in 0..2 * n {
                for j in 0..2 * n {
                    if i % n != j % n {
                        leak = leak.max(fd[(i, j)].abs() / scale);
                    }
                }
            }
        }
        for (k, err) in per_mode.iter().enumerate() {
            checks.push(Check::new(format!("m={m} n={} block vs FD", k + 1), *err, 1e-6));
        }
        checks.push(Check::new(format!("m={m} cross-mode leakage"), leak, 1e-8));
    }
    Ok(checks)
}

fn velocity(cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let gamma = 2.0;
    let g = grid(cfg, 1, 4)?;
    let circle = SheetState::zero(1, 4);
    let mut inner = 0.0f64;
    let mut outer = 0.0f64;
    for i in 0..20 {
        let th = 0.31 * i as f64;
        let r = 0.8 * (i as f64 + 0.5) / 20.0;
        let u = biot_savart_velocity(&g, &circle, gamma, [r * th.cos(), r * th.sin()])?;
        inner = inner.max(u[0].hypot(u[1]));
        let r = 1.2 + 0.15 * i as f64;
        let x = [r * th.cos(), r * th.sin()];
        let u = biot_savart_velocity(&g, &circle, gamma, x)?;
        outer = outer.max((u[0] + gamma * x[1] / (r * r)).hypot(u[1] - gamma * x[0] / (r * r)));
    }
    let state = SheetState::new(
        EvenSeries::new(2, vec![0.01, -0.003, 0.0005])?,
        OddSeries::new(2, vec![0.02, 0.004, -0.001])?,
    )?;
    let g2 = grid(cfg, 2, 3)?;
    let tv = trace_velocities(&g2, &state, -1.3)?;
    let omega: Vec<f64> = state.psi().derivative().evaluate(&g2).iter().map(|w| w - 1.3).collect();
    let jump = tv
        .tangential_jump()
        .iter()
        .zip(&omega)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let (a, b) = tv.normal();
    let normal = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(vec![
        Check::new("circle |u-| at 20 interior points", inner, 1e-10),
        Check::new("circle |u+ - gamma x_perp/|x|^2| at 20 exterior points", outer, 1e-10),
        Check::new("tangential jump vs omega", jump, 1e-8),
        Check::new("normal velocity continuity", normal, 1e-10),
    ])
}

fn dispersion(_cfg: &RunConfig) -> Result<Vec<Check>, Failure> {
    let mut checks = Vec::new();
    for &(sigma, gamma, m) in &[(1.0, 0.0, 2), (1.0, 1.0, 2)] {
        for n in 1..=8 / m {
            let k = n * m;
            let det = det_block(k, &ParamPoint::new(0.0, sigma, gamma)?);
            let Some((lo, hi)) = predicted_frequencies(k, sigma, gamma) else { continue };
            if det <= 0.0 {
                continue;
            }
            let cfg = EvolutionConfig::new(2.0 * PI / hi / 100.0, 3.0 * 2.0 * PI / lo)?
                .with_scheme(Scheme::Rk4)
                .with_filter(0.0)?;
            let (a, b) = measure_frequencies(sigma, gamma, m, n, 8 / m, 1e-8, &cfg)?;
            let geo = (a * b).abs().sqrt();
            checks.push(Check::new(
                format!("sigma={sigma} gamma={gamma} k={k} sqrt|O1 O2| vs sqrt(det)"),
                (geo - det.sqrt()).abs() / det.sqrt(),
                5e-3,
            ));
        }
    }
    Ok(checks)
}

pub fn run(cfg: &RunConfig, suite: Suite) -> Result<(), Failure> {
    let suites: Vec<(&str, fn(&RunConfig) -> Result<Vec<Check>, Failure>)> = vec![
        ("trivial", trivial),
        ("operators", operators),
        ("jacobian", jacobian),
        ("velocity", velocity),
        ("dispersion", dispersion),
    ];
    let selected: Vec<_> = suites
        .into_iter()
        .filter(|(name, _)| suite == Suite::All || Suite::from_str(name, true).ok() == Some(suite))
        .collect();
    let mut failed = 0;
    for (name, f) in selected {
        for check in f(cfg)? {
            let tag = if check.pass() { "PASS" } else { "FAIL" };
            println!("{tag} {name}: {} measured={:.3e} tol={:.1e}", check.name, check.measured, check.tolerance);
            failed += usize::from(!check.pass());
        }
    }
    if failed > 0 {
        return Err(Failure::numerical(format!("{failed} checks failed")));
    }
    Ok(())
}
