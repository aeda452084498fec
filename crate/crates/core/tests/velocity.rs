use vortex_sheets::contour::{biot_savart_velocity, trace_velocities};
use vortex_sheets::{EvenSeries, Grid, Interface, OddSeries, SheetState};

fn perturbed() -> SheetState {
    let eta = EvenSeries::new(2, vec![0.01, -0.003, 0.0005]).unwrap();
    let psi = OddSeries::new(2, vec![0.02, 0.004, -0.001]).unwrap();
    SheetState::new(eta, psi).unwrap()
}

// Lagrange extrapolation to h = 0 from samples at h = h0·(1..=k).
fn extrapolate(values: &[[f64; 2]]) -> [f64; 2] {
    let k = values.len();
    let mut out = [0.0, 0.0];
    for (i, v) in values.iter().enumerate() {
        let xi = (i + 1) as f64;
        let mut w = 1.0;
        for j in 0..k {
            if j != i {
                let xj = (j + 1) as f64;
                w *= xj / (xj - xi);
            }
        }
        out[0] += w * v[0];
        out[1] += w * v[1];
    }
    out
}

#[test]
fn circle_velocity_field() {
    let gamma = 2.0;
    let grid = Grid::new(256).unwrap();
    let state = SheetState::zero(1, 4);
    for i in 0..20 {
        let th = 0.31 * i as f64;
        let r = 0.8 * (i as f64 + 0.5) / 20.0;
        let u = biot_savart_velocity(&grid, &state, gamma, [r * th.cos(), r * th.sin()]).unwrap();
        assert!(u[0].hypot(u[1]) <= 1e-10, "inner {i}: {u:?}");

        let r = 1.2 + 0.15 * i as f64;
        let x = [r * th.cos(), r * th.sin()];
        let u = biot_savart_velocity(&grid, &state, gamma, x).unwrap();
        let exact = [-gamma * x[1] / (r * r), gamma * x[0] / (r * r)];
        let err = (u[0] - exact[0]).hypot(u[1] - exact[1]);
        assert!(err <= 1e-10, "outer {i}: {err:e}");
    }
}

#[test]
fn circle_traces() {
    let grid = Grid::new(128).unwrap();
    let tv = trace_velocities(&grid, &SheetState::zero(2, 4), 1.0).unwrap();
    let (inner, outer) = tv.tangential();
    for j in 0..grid.len() {
        assert!(inner[j].abs() < 1e-12);
        assert!((outer[j] - 1.0).abs() < 1e-12);
    }
    assert!(tv.tangential_jump().iter().all(|w| (w - 1.0).abs() < 1e-12));
}

#[test]
fn traces_match_one_sided_limits() {
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
        // inward unit normal
        let n = [-t[j][1] / len, t[j][0] / len];
        for (side, trace) in [(1.0, tv.inner[j]), (-1.0, tv.outer[j])] {
            let samples: Vec<[f64; 2]> = (1..=8)
                .map(|k| {
                    let d = side * 2e-3 * k as f64;
                    let p = [z[j][0] + d * n[0], z[j][1] + d * n[1]];
                    biot_savart_velocity(&fine, &state, gamma, p).unwrap()
                })
                .collect();
            let limit = extrapolate(&samples);
            worst = worst.max((limit[0] - trace[0]).hypot(limit[1] - trace[1]));
        }
    }
    assert!(worst <= 1e-8, "trace vs limit {worst:e}");
}

#[test]
fn jump_and_normal_continuity_on_perturbed_state() {
    let gamma = -1.3;
    let state = perturbed();
    let grid = Grid::new(256).unwrap();
    let tv = trace_velocities(&grid, &state, gamma).unwrap();
    let omega: Vec<f64> = state.psi().derivative().evaluate(&grid).iter().map(|w| w + gamma).collect();
    let jump = tv.tangential_jump();
    let err = jump.iter().zip(&omega).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err <= 1e-8, "{err:e}");
    let (a, b) = tv.normal();
    let err = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(err <= 1e-12, "{err:e}");
}
