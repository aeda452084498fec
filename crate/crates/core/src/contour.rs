//! Singular-integral contour operators for a closed interface written as a
//! graph over the unit circle, `z(x) = R(x) e^{ix}` with `R = √(1 + 2η)`.
//!
//! All integrals use the normalized measure `(1/2π)∫_0^{2π}`. Principal
//! values at a primary node `x_j` are computed with the alternate-point
//! trapezoidal rule: the integrand is sampled on the half-offset grid, which
//! surrounds `x_j` symmetrically. The kernels below have a simple-pole
//! singularity with a smooth residue, so the rule converges spectrally for
//! analytic data. (An equivalent route splits each kernel into a `cot` part
//! plus an analytic remainder; it is not needed for evaluation.)
//!
//! Near the diagonal the kernel denominator `1 + η(x) + η(y) − R(x)R(y)cos(x−y)`
//! is a difference of O(1) numbers. It is evaluated in the cancellation-free
//! form `(R(x) − R(y))²/2 + 2R(x)R(y) sin²((x−y)/2)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fourier::{EvenSeries, FullSeries, Grid, OddSeries};

/// Radial perturbation `η` (even) and velocity potential `ψ` (odd) of an
/// `m`-fold sheet. The vorticity density is never stored; it is `γ + ψ_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetState {
    eta: EvenSeries,
    psi: OddSeries,
}

impl SheetState {
    pub fn new(eta: EvenSeries, psi: OddSeries) -> Result<Self> {
        if eta.m() != psi.m() {
            return Err(Error::InvalidArgument(format!(
                "eta is {}-fold but psi is {}-fold",
                eta.m(),
                psi.m()
            )));
        }
        if eta.len() != psi.len() {
            return Err(Error::InvalidArgument(format!(
                "eta has {} modes but psi has {}",
                eta.len(),
                psi.len()
            )));
        }
        Ok(Self { eta, psi })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            eta: EvenSeries::zeros(m, n),
            psi: OddSeries::zeros(m, n),
        }
    }

    pub fn m(&self) -> usize {
        self.eta.m()
    }

    /// Number of fold-modes `N` carried by each component.
    pub fn modes(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self) -> &EvenSeries {
        &self.eta
    }

    pub fn psi(&self) -> &OddSeries {
        &self.psi
    }

    /// Norm of the unknown space: `‖η‖_{s+1/4} + ‖ψ‖_{s−1/4}`.
    pub fn x_norm(&self, s: f64) -> f64 {
        self.eta.sobolev_norm(s + 0.25) + self.psi.sobolev_norm(s - 0.25)
    }

    /// Coefficients packed as `[a_1..a_N, b_1..b_N]`.
    pub fn to_coefficients(&self) -> Vec<f64> {
        self.eta
            .coeffs()
            .iter()
            .chain(self.psi.coeffs())
            .copied()
            .collect()
    }

    pub fn from_coefficients(m: usize, coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "packed state needs an even, positive length, got {}",
                coeffs.len()
            )));
        }
        let n = coeffs.len() / 2;
        Self::new(
            EvenSeries::new(m, coeffs[..n].to_vec())?,
            OddSeries::new(m, coeffs[n..].to_vec())?,
        )
    }

    /// `self + factor·other`.
    pub fn combine(&self, other: &SheetState, factor: f64) -> Result<SheetState> {
        if self.m() != other.m() || self.modes() != other.modes() {
            return Err(Error::InvalidArgument("states differ in shape".into()));
        }
        let packed: Vec<f64> = self
            .to_coefficients()
            .iter()
            .zip(other.to_coefficients())
            .map(|(a, b)| a + factor * b)
            .collect();
        Self::from_coefficients(self.m(), &packed)
    }

    pub fn scaled(&self, factor: f64) -> SheetState {
        Self {
            eta: self.eta.scaled(factor),
            psi: self.psi.scaled(factor),
        }
    }
}

/// Which side of the interface a point lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Owner {
    Inside,
    Outside,
    OnInterface,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub position: [f64; 2],
    pub owner: Owner,
}

impl CurvePoint {
    /// Classifies `position` against the curve `R(θ)e^{iθ}` at its polar angle.
    pub fn classify(position: [f64; 2], eta: &FullSeries) -> Result<Self> {
        let theta = position[1].atan2(position[0]);
        let arg = 1.0 + 2.0 * eta.value_at(theta);
        if arg <= 0.0 {
            return Err(Error::Domain(format!("1 + 2 eta = {arg:.3e} at angle {theta:.6}")));
        }
        let r = arg.sqrt();
        let rho = position[0].hypot(position[1]);
        let owner = if (rho - r).abs() <= 1e-12 * r {
            Owner::OnInterface
        } else if rho < r {
            Owner::Inside
        } else {
            Owner::Outside
        };
        Ok(Self { position, owner })
    }
}

/// Samples of `η` and the curve on both quadrature grids, ready for kernel sums.
pub struct Interface<'g> {
    grid: &'g Grid,
    eta: Vec<f64>,
    eta_x: Vec<f64>,
    eta_xx: Vec<f64>,
    radius: Vec<f64>,
    eta_off: Vec<f64>,
    radius_off: Vec<f64>,
    // Indexed by d = (j − k) mod Q, with x_j − y_k = (2d − 1)π/Q.
    sin_u: Vec<f64>,
    sin_half_sq: Vec<f64>,
}

fn radii(eta: &[f64], label: &str) -> Result<Vec<f64>> {
    eta.iter()
        .enumerate()
        .map(|(j, &e)| {
            let arg = 1.0 + 2.0 * e;
            if arg > 0.0 && arg.is_finite() {
                Ok(arg.sqrt())
            } else {
                Err(Error::Domain(format!(
                    "1 + 2 eta = {arg:.3e} at {label} node {j}"
                )))
            }
        })
        .collect()
}

fn perp(v: [f64; 2]) -> [f64; 2] {
    [-v[1], v[0]]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

impl<'g> Interface<'g> {
    pub fn new(grid: &'g Grid, eta: &FullSeries) -> Result<Self> {
        let eta_p = eta.evaluate(grid);
        let d1 = eta.derivative();
        let eta_x = d1.evaluate(grid);
        let eta_xx = d1.derivative().evaluate(grid);
        let eta_off = eta.evaluate_offset(grid);
        Self::from_samples(grid, eta_p, eta_x, eta_xx, eta_off)
    }

    pub fn from_state(grid: &'g Grid, state: &SheetState) -> Result<Self> {
        Self::new(grid, &state.eta().to_full())
    }

    /// Builds the interface from raw samples: `η`, `η_x`, `η_xx` on the
    /// primary nodes and `η` on the offset nodes.
    pub fn from_samples(
        grid: &'g Grid,
        eta: Vec<f64>,
        eta_x: Vec<f64>,
        eta_xx: Vec<f64>,
        eta_off: Vec<f64>,
    ) -> Result<Self> {
        let q = grid.len();
        if [eta.len(), eta_x.len(), eta_xx.len(), eta_off.len()]
            .iter()
            .any(|&l| l != q)
        {
            return Err(Error::InvalidArgument("sample length differs from grid size".into()));
        }
        let radius = radii(&eta, "primary")?;
        let radius_off = radii(&eta_off, "offset")?;
        let qf = q as f64;
        let (sin_u, sin_half_sq) = (0..q)
            .map(|d| {
                let u = (2.0 * d as f64 - 1.0) * std::f64::consts::PI / qf;
                let h = (0.5 * u).sin();
                (u.sin(), h * h)
            })
            .unzip();
        Ok(Self {
            grid,
            eta,
            eta_x,
            eta_xx,
            radius,
            eta_off,
            radius_off,
            sin_u,
            sin_half_sq,
        })
    }

    pub fn grid(&self) -> &Grid {
        self.grid
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn eta_x(&self) -> &[f64] {
        &self.eta_x
    }

    /// `R(x_j) = √(1 + 2η(x_j))`.
    pub fn radius(&self) -> &[f64] {
        &self.radius
    }

    /// Curve points `z(x_j)` on the primary grid.
    pub fn positions(&self) -> Vec<[f64; 2]> {
        self.grid
            .nodes()
            .iter()
            .zip(&self.radius)
            .map(|(x, r)| [r * x.cos(), r * x.sin()])
            .collect()
    }

    fn offset_positions(&self) -> Vec<[f64; 2]> {
        self.grid
            .offset_nodes()
            .iter()
            .zip(&self.radius_off)
            .map(|(y, r)| [r * y.cos(), r * y.sin()])
            .collect()
    }

    /// `z_x = (η_x/R + iR) e^{ix}` on the primary grid.
    pub fn tangents(&self) -> Vec<[f64; 2]> {
        self.grid
            .nodes()
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let (s, c) = x.sin_cos();
                let w = self.eta_x[j] / self.radius[j];
                let r = self.radius[j];
                [w * c - r * s, w * s + r * c]
            })
            .collect()
    }

    #[inline]
    fn kernels(&self, j: usize, k: usize) -> (f64, f64) {
        let q = self.grid.len();
        let d = (j + q - k) % q;
        let rx = self.radius[j];
        let ry = self.radius_off[k];
        let dr = 2.0 * (self.eta[j] - self.eta_off[k]) / (rx + ry);
        let s2 = self.sin_half_sq[d];
        let den = 0.5 * dr * dr + 2.0 * rx * ry * s2;
        let kd = (dr + 2.0 * ry * s2) / (rx * den);
        let kh = rx * ry * self.sin_u[d] / den;
        (kd, kh)
    }

    /// Applies `𝒟₀(η)` and `𝓗₀(η)` to every density in `densities` (each
    /// sampled on the offset grid) in one sweep over the kernel.
    pub fn kernel_sums(&self, densities: &[&[f64]]) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        let q = self.grid.len();
        if densities.iter().any(|f| f.len() != q) {
            return Err(Error::InvalidArgument("density length differs from grid size".into()));
        }
        let nf = densities.len();
        let rows: Vec<Vec<(f64, f64)>> = (0..q)
            .into_par_iter()
            .map(|j| {
                let mut acc = vec![(0.0, 0.0); nf];
                for k in 0..q {
                    let (kd, kh) = self.kernels(j, k);
                    for (a, f) in acc.iter_mut().zip(densities) {
                        a.0 += kd * f[k];
                        a.1 += kh * f[k];
                    }
                }
                acc
            })
            .collect();
        let scale = 1.0 / q as f64;
        let out = (0..nf)
            .map(|i| {
                let d0 = rows.iter().map(|r| r[i].0 * scale).collect();
                let h0 = rows.iter().map(|r| r[i].1 * scale).collect();
                (d0, h0)
            })
            .collect();
        Ok(out)
    }

    /// `𝒟₀(η)[f]` at the primary nodes; `f` sampled on the offset grid.
    pub fn d0(&self, f_offset: &[f64]) -> Result<Vec<f64>> {
        Ok(self.kernel_sums(&[f_offset])?.remove(0).0)
    }

    /// `𝓗₀(η)[f]` at the primary nodes.
    pub fn h0(&self, f_offset: &[f64]) -> Result<Vec<f64>> {
        Ok(self.kernel_sums(&[f_offset])?.remove(0).1)
    }

    /// `𝓗(η)[f] = η_x 𝒟₀(η)[f] + 𝓗₀(η)[f]`.
    pub fn h_full(&self, f_offset: &[f64]) -> Result<Vec<f64>> {
        let (d0, h0) = self.kernel_sums(&[f_offset])?.remove(0);
        Ok(self.combine_h(&d0, &h0))
    }

    /// Assembles `𝓗(η)[f]` from already computed `𝒟₀` and `𝓗₀` sums.
    pub fn combine_h(&self, d0: &[f64], h0: &[f64]) -> Vec<f64> {
        self.eta_x
            .iter()
            .zip(d0.iter().zip(h0))
            .map(|(ex, (d, h))| ex * d + h)
            .collect()
    }

    /// Curvature `𝒦(η)` of the graph parametrization.
    pub fn curvature(&self) -> Vec<f64> {
        self.radius
            .iter()
            .zip(self.eta_x.iter().zip(&self.eta_xx))
            .map(|(r, (ex, exx))| {
                let w = ex / r;
                let a = r * r + w * w;
                (exx - 2.0 * w * w) / a.powf(1.5) - a.powf(-0.5)
            })
            .collect()
    }

    /// Biot–Savart velocity at an off-interface point, by the plain trapezoid
    /// rule over the primary nodes. `omega` is sampled on the primary grid.
    pub fn biot_savart(&self, omega: &[f64], point: [f64; 2]) -> Result<[f64; 2]> {
        let q = self.grid.len();
        if omega.len() != q {
            return Err(Error::InvalidArgument("density length differs from grid size".into()));
        }
        let z = self.positions();
        let minimum = 2.0 * self.grid.spacing();
        let distance = z
            .iter()
            .map(|p| (point[0] - p[0]).hypot(point[1] - p[1]))
            .fold(f64::INFINITY, f64::min);
        if distance <= minimum {
            return Err(Error::TooClose { distance, minimum });
        }
        let mut u = [0.0, 0.0];
        for (p, w) in z.iter().zip(omega) {
            let d = [point[0] - p[0], point[1] - p[1]];
            let r2 = dot(d, d);
            let v = perp(d);
            u[0] += v[0] / r2 * w;
            u[1] += v[1] / r2 * w;
        }
        Ok([u[0] / q as f64, u[1] / q as f64])
    }

    /// Birkhoff–Rott principal value `BR(z)ω` at the primary nodes, with `ω`
    /// sampled on the offset grid.
    pub fn birkhoff_rott(&self, omega_offset: &[f64]) -> Result<Vec<[f64; 2]>> {
        let q = self.grid.len();
        if omega_offset.len() != q {
            return Err(Error::InvalidArgument("density length differs from grid size".into()));
        }
        let zp = self.positions();
        let zo = self.offset_positions();
        let out = (0..q)
            .into_par_iter()
            .map(|j| {
                let mut acc = [0.0, 0.0];
                for k in 0..q {
                    let d = [zp[j][0] - zo[k][0], zp[j][1] - zo[k][1]];
                    let rx = self.radius[j];
                    let ry = self.radius_off[k];
                    let dr = 2.0 * (self.eta[j] - self.eta_off[k]) / (rx + ry);
                    let dist2 = dr * dr + 4.0 * rx * ry * self.sin_half_sq[(j + q - k) % q];
                    let v = perp(d);
                    acc[0] += v[0] / dist2 * omega_offset[k];
                    acc[1] += v[1] / dist2 * omega_offset[k];
                }
                [acc[0] / q as f64, acc[1] / q as f64]
            })
            .collect();
        Ok(out)
    }

    /// Limits of the velocity on both sides of the sheet,
    /// `v± = BR(z)ω ± (ω/2) z_x/|z_x|²` with `⊥` the counter-clockwise
    /// rotation, so `z_x^⊥` points into the interior.
    pub fn trace_velocities(&self, omega: &[f64], omega_offset: &[f64]) -> Result<TraceVelocities> {
        if omega.len() != self.grid.len() {
            return Err(Error::InvalidArgument("density length differs from grid size".into()));
        }
        let br = self.birkhoff_rott(omega_offset)?;
        let tangents = self.tangents();
        let mut inner = Vec::with_capacity(br.len());
        let mut outer = Vec::with_capacity(br.len());
        for ((b, t), w) in br.iter().zip(&tangents).zip(omega) {
            let n2 = dot(*t, *t);
            let jump = [0.5 * w * t[0] / n2, 0.5 * w * t[1] / n2];
            inner.push([b[0] - jump[0], b[1] - jump[1]]);
            outer.push([b[0] + jump[0], b[1] + jump[1]]);
        }
        Ok(TraceVelocities {
            inner,
            outer,
            tangents,
        })
    }
}

/// Interior (`v⁻`) and exterior (`v⁺`) traces of the velocity at the primary nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceVelocities {
    pub inner: Vec<[f64; 2]>,
    pub outer: Vec<[f64; 2]>,
    pub tangents: Vec<[f64; 2]>,
}

impl TraceVelocities {
    /// `(v⁻·z_x, v⁺·z_x)` at each node.
    pub fn tangential(&self) -> (Vec<f64>, Vec<f64>) {
        self.tangents
            .iter()
            .zip(self.inner.iter().zip(&self.outer))
            .map(|(t, (a, b))| (dot(*a, *t), dot(*b, *t)))
            .unzip()
    }

    /// `(v⁻·z_x^⊥, v⁺·z_x^⊥)` at each node.
    pub fn normal(&self) -> (Vec<f64>, Vec<f64>) {
        self.tangents
            .iter()
            .zip(self.inner.iter().zip(&self.outer))
            .map(|(t, (a, b))| {
                let n = perp(*t);
                (dot(*a, n), dot(*b, n))
            })
            .unzip()
    }

    /// `(v⁺ − v⁻)·z_x`, which equals the vorticity density.
    pub fn tangential_jump(&self) -> Vec<f64> {
        let (a, b) = self.tangential();
        a.iter().zip(&b).map(|(x, y)| y - x).collect()
    }
}

/// The three principal-value operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    D0,
    H0,
    H,
}

/// Evaluates `op(η)[f]` at `Q` and `2Q` nodes and fails with
/// [`Error::Quadrature`] when the results on the shared nodes differ by more
/// than `tolerance`.
pub fn checked_operator(
    grid: &Grid,
    eta: &FullSeries,
    f: impl Fn(f64) -> f64,
    op: Operator,
    tolerance: f64,
) -> Result<Vec<f64>> {
    let apply = |g: &Grid| -> Result<Vec<f64>> {
        let iface = Interface::new(g, eta)?;
        let fo = g.sample_offset(&f);
        match op {
            Operator::D0 => iface.d0(&fo),
            Operator::H0 => iface.h0(&fo),
            Operator::H => iface.h_full(&fo),
        }
    };
    let coarse = apply(grid)?;
    let fine_grid = grid.refined();
    let fine = apply(&fine_grid)?;
    let defect = coarse
        .iter()
        .zip(fine.iter().step_by(2))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if defect > tolerance {
        return Err(Error::Quadrature { defect, tolerance });
    }
    Ok(coarse)
}

/// `R(x_j)` for a sheet state.
pub fn radius(state: &SheetState, grid: &Grid) -> Result<Vec<f64>> {
    Ok(Interface::from_state(grid, state)?.radius().to_vec())
}

/// Velocity induced at `point` by the sheet with density `ω = γ + ψ_x`.
pub fn biot_savart_velocity(
    grid: &Grid,
    state: &SheetState,
    gamma: f64,
    point: [f64; 2],
) -> Result<[f64; 2]> {
    let iface = Interface::from_state(grid, state)?;
    let omega: Vec<f64> = state
        .psi()
        .derivative()
        .evaluate(grid)
        .iter()
        .map(|w| gamma + w)
        .collect();
    iface.biot_savart(&omega, point)
}

/// Traces `v±` on the sheet with density `ω = γ + ψ_x`.
pub fn trace_velocities(grid: &Grid, state: &SheetState, gamma: f64) -> Result<TraceVelocities> {
    let iface = Interface::from_state(grid, state)?;
    let dpsi = state.psi().derivative();
    let omega: Vec<f64> = dpsi.evaluate(grid).iter().map(|w| gamma + w).collect();
    let omega_off: Vec<f64> = dpsi.evaluate_offset(grid).iter().map(|w| gamma + w).collect();
    iface.trace_velocities(&omega, &omega_off)
}
