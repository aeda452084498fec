//! Time evolution of the sheet at zero frame speed:
//!
//! ```text
//! η_t = −½ 𝓗(η)[ψ_x] − (γ/2) 𝓗(η)[1]
//! ψ_t = −((ψ_x + γ)/2) 𝒟₀(η)[ψ_x + γ] − σ 𝒦(η)      (mod constants)
//! ```
//!
//! i.e. `(η_t, ψ_t) = −ℱ(0, σ, γ; η, ψ)`. Profiles are general (not
//! even/odd) m-fold series, since a travelling profile loses its parity as it
//! moves. A zero of `ℱ(c, ·)` evolves as `(η̌, ψ̌)(x + ct)`.
//!
//! Two schemes are available. [`Scheme::Imex`] integrates the linear part
//! exactly per mode and the remainder with the second-order exponential
//! Runge–Kutta method of Cox and Matthews; it keeps steady states fixed.
//! [`Scheme::Rk4`] is classical Runge–Kutta on the full right-hand side and
//! uses the linear blocks only for the tail filter, which makes it an
//! independent check of the linearization when the filter is off.

use std::io::Write;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Matrix4, SMatrix, Vector4};
use num_complex::Complex64;

use crate::contour::SheetState;
use crate::error::{Error, Result};
use crate::fourier::{analyze_full, AliasPolicy, AliasReport, FullSeries, Grid};
use crate::functional::{ParamPoint, SteadyFunctional};
use crate::linear::block;

/// Largest coefficient magnitude before a run is declared blown up.
pub const BLOWUP_LIMIT: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Imex,
    Rk4,
}

impl Scheme {
    /// Upper bound on `dt · ω_max`.
    pub fn stability_bound(self) -> f64 {
        match self {
            Self::Imex => std::f64::consts::PI,
            Self::Rk4 => 2.8,
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "imex" | "etd" => Ok(Self::Imex),
            "rk4" => Ok(Self::Rk4),
            other => Err(Error::Parse(format!("unknown scheme '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    /// Fraction of the highest modes whose nonlinear forcing is zeroed.
    pub filter_fraction: f64,
    /// Record every `stride` steps; 0 records only the endpoints.
    pub stride: usize,
}

impl EvolutionConfig {
    pub fn new(dt: f64, t_final: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) || !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "dt and t_final must be positive, got dt={dt}, t_final={t_final}"
            )));
        }
        Ok(Self {
            dt,
            t_final,
            scheme: Scheme::Imex,
            filter_fraction: 1.0 / 3.0,
            stride: 0,
        })
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_filter(mut self, fraction: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&fraction) {
            return Err(Error::InvalidArgument(format!("filter fraction must lie in [0, 1), got {fraction}")));
        }
        self.filter_fraction = fraction;
        Ok(self)
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    /// Number of steps; the step is shortened so they land on `t_final`.
    pub fn steps(&self) -> usize {
        ((self.t_final / self.dt) - 1e-9).ceil().max(1.0) as usize
    }

    pub fn effective_dt(&self) -> f64 {
        self.t_final / self.steps() as f64
    }
}

/// A general m-fold profile `(η, ψ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowState {
    pub eta: FullSeries,
    pub psi: FullSeries,
}

impl FlowState {
    pub fn new(eta: FullSeries, psi: FullSeries) -> Result<Self> {
        if eta.m() != psi.m() || eta.len() != psi.len() {
            return Err(Error::InvalidArgument("eta and psi differ in shape".into()));
        }
        Ok(Self { eta, psi })
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            eta: FullSeries::zeros(m, n),
            psi: FullSeries::zeros(m, n),
        }
    }

    pub fn from_sheet(state: &SheetState) -> Self {
        Self {
            eta: state.eta().to_full(),
            psi: state.psi().to_full(),
        }
    }

    pub fn m(&self) -> usize {
        self.eta.m()
    }

    pub fn modes(&self) -> usize {
        self.eta.len()
    }

    /// `f(x + shift)` in both components.
    pub fn translated(&self, shift: f64) -> FlowState {
        Self {
            eta: self.eta.translated(shift),
            psi: self.psi.translated(shift),
        }
    }

    /// `‖η‖_{s+1/4} + ‖ψ‖_{s−1/4}`.
    pub fn x_norm(&self, s: f64) -> f64 {
        self.eta.sobolev_norm(s + 0.25) + self.psi.sobolev_norm(s - 0.25)
    }

    pub fn distance(&self, other: &FlowState, s: f64) -> Result<f64> {
        Ok(FlowState::new(self.eta.sub(&other.eta)?, self.psi.sub(&other.psi)?)?.x_norm(s))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.eta.max_abs_coeff().max(self.psi.max_abs_coeff())
    }

    /// Mode `j` (0-based) as `(η_cos, η_sin, ψ_cos, ψ_sin)`.
    fn mode(&self, j: usize) -> Vector4<f64> {
        Vector4::new(
            self.eta.cos_coeffs()[j],
            self.eta.sin_coeffs()[j],
            self.psi.cos_coeffs()[j],
            self.psi.sin_coeffs()[j],
        )
    }

    fn from_modes(m: usize, modes: &[Vector4<f64>]) -> Result<Self> {
        let col = |i: usize| modes.iter().map(|v| v[i]).collect::<Vec<_>>();
        Self::new(FullSeries::new(m, col(0), col(1))?, FullSeries::new(m, col(2), col(3))?)
    }

    /// Complex amplitude `η̂_j = η_cos − i η_sin`, so `η = Re(η̂ e^{ikx})`.
    pub fn eta_amplitude(&self, j: usize) -> Complex64 {
        Complex64::new(self.eta.cos_coeffs()[j], -self.eta.sin_coeffs()[j])
    }

    /// `[η_cos.., η_sin.., ψ_cos.., ψ_sin..]`.
    pub fn to_row(&self) -> Vec<f64> {
        [
            self.eta.cos_coeffs(),
            self.eta.sin_coeffs(),
            self.psi.cos_coeffs(),
            self.psi.sin_coeffs(),
        ]
        .concat()
    }
}

/// Linear generator of mode `k` on `(η_cos, η_sin, ψ_cos, ψ_sin)`: the
/// negative of the linearized steady map at zero speed.
pub fn mode_generator(k: usize, sigma: f64, gamma: f64) -> Result<Matrix4<f64>> {
    let b = block(k, &ParamPoint::new(0.0, sigma, gamma)?).entries;
    let (m11, m12, m21, m22) = (b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)]);
    // Output rows (F1_cos, F1_sin, F2_cos, F2_sin). The sine/cosine columns
    // follow from the cosine ones by translation covariance.
    let l = Matrix4::new(
        0.0, -m11, m12, 0.0, //
        m11, 0.0, 0.0, m12, //
        m21, 0.0, 0.0, m22, //
        0.0, m21, -m22, 0.0,
    );
    Ok(-l)
}

/// Largest `|Im λ|`-type rate of the linear generator over wavenumbers
/// `m, 2m, .., nm`: `|γ|k/2 + √|kλ_k/2|` with `λ_k = σ − γ² + γ²k/2 − σk²`.
pub fn max_linear_frequency(m: usize, n: usize, sigma: f64, gamma: f64) -> f64 {
    (1..=n)
        .map(|j| {
            let k = (j * m) as f64;
            let lambda = sigma - gamma * gamma + 0.5 * gamma * gamma * k - sigma * k * k;
            0.5 * gamma.abs() * k + (0.5 * k * lambda).abs().sqrt()
        })
        .fold(0.0, f64::max)
}

struct Propagator {
    generator: Matrix4<f64>,
    exp: Matrix4<f64>,
    phi1: Matrix4<f64>,
    phi2: Matrix4<f64>,
}

impl Propagator {
    /// `e^{hA}`, `hφ₁(hA)` and `hφ₂(hA)` from one exponential of the
    /// augmented matrix `[[hA, I, 0], [0, 0, I], [0, 0, 0]]`.
    fn new(a: Matrix4<f64>, h: f64) -> Self {
        let mut aug = SMatrix::<f64, 12, 12>::zeros();
        aug.fixed_view_mut::<4, 4>(0, 0).copy_from(&(a * h));
        aug.fixed_view_mut::<4, 4>(0, 4).copy_from(&Matrix4::identity());
        aug.fixed_view_mut::<4, 4>(4, 8).copy_from(&Matrix4::identity());
        let e = aug.exp();
        Self {
            generator: a,
            exp: e.fixed_view::<4, 4>(0, 0).into(),
            phi1: e.fixed_view::<4, 4>(0, 4) * h,
            phi2: e.fixed_view::<4, 4>(0, 8) * h,
        }
    }
}

/// A recorded trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<FlowState>,
}

impl Trajectory {
    pub fn last(&self) -> &FlowState {
        self.states.last().expect("trajectories are never empty")
    }

    /// CSV `t, eta_cos_1.., eta_sin_1.., psi_cos_1.., psi_sin_1..`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let err = |e: csv::Error| Error::Parse(e.to_string());
        let mut out = out;
        writeln!(out, "# format=1").map_err(|e| Error::Parse(e.to_string()))?;
        let n = self.states.first().map_or(0, FlowState::modes);
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        for name in ["eta_cos", "eta_sin", "psi_cos", "psi_sin"] {
            header.extend((1..=n).map(|i| format!("{name}_{i}")));
        }
        w.write_record(&header).map_err(err)?;
        for (t, st) in self.times.iter().zip(&self.states) {
            let mut row = vec![format!("{t:.16e}")];
            row.extend(st.to_row().iter().map(|v| format!("{v:.16e}")));
            w.write_record(&row).map_err(err)?;
        }
        w.flush().map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Integrator for one `(σ, γ)`, foldness and truncation.
pub struct Evolver {
    functional: SteadyFunctional,
    params: ParamPoint,
    m: usize,
    n: usize,
    config: EvolutionConfig,
    dt: f64,
    keep: usize,
    props: Vec<Propagator>,
}

impl Evolver {
    pub fn new(sigma: f64, gamma: f64, m: usize, n: usize, config: EvolutionConfig) -> Result<Self> {
        Self::with_grid(sigma, gamma, m, n, Grid::for_modes(m, n), config)
    }

    pub fn with_grid(sigma: f64, gamma: f64, m: usize, n: usize, grid: Grid, config: EvolutionConfig) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "evolution needs positive surface tension (the sheet is ill-posed otherwise), got {sigma}"
            )));
        }
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("foldness and modes must be positive".into()));
        }
        grid.check_resolution(m, n)?;
        let params = ParamPoint::new(0.0, sigma, gamma)?;
        let dt = config.effective_dt();
        let product = dt * max_linear_frequency(m, n, sigma, gamma);
        let bound = config.scheme.stability_bound();
        if product > bound {
            return Err(Error::UnstableStep { product, bound });
        }
        let props = (1..=n)
            .map(|j| Ok(Propagator::new(mode_generator(j * m, sigma, gamma)?, dt)))
            .collect::<Result<Vec<_>>>()?;
        let keep = n - (config.filter_fraction * n as f64).floor() as usize;
        Ok(Self {
            functional: SteadyFunctional::new(grid).with_policy(AliasPolicy::galerkin()),
            params,
            m,
            n,
            config,
            dt,
            keep,
            props,
        })
    }

    pub fn config(&self) -> &EvolutionConfig {
        &self.config
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn check_shape(&self, u: &FlowState) -> Result<()> {
        if u.m() != self.m || u.modes() != self.n {
            return Err(Error::InvalidArgument(format!(
                "state has foldness {} and {} modes, evolver expects {} and {}",
                u.m(),
                u.modes(),
                self.m,
                self.n
            )));
        }
        Ok(())
    }

    /// `(η_t, ψ_t)` with the alias reports of both projections.
    pub fn rhs_with_report(&self, u: &FlowState) -> Result<(FlowState, [AliasReport; 2])> {
        self.check_shape(u)?;
        let (f1, f2) = self.functional.fields(&self.params, &u.eta, &u.psi)?;
        let grid = self.functional.grid();
        let policy = self.functional.policy();
        let (r1, a1) = analyze_full(grid, &f1, self.m, self.n, policy)?;
        let (r2, a2) = analyze_full(grid, &f2, self.m, self.n, policy)?;
        Ok((FlowState::new(r1.scaled(-1.0), r2.scaled(-1.0))?, [a1, a2]))
    }

    pub fn rhs(&self, u: &FlowState) -> Result<FlowState> {
        Ok(self.rhs_with_report(u)?.0)
    }

    /// Filtered nonlinear remainder `rhs(u) − A u`, mode by mode.
    fn remainder(&self, u: &FlowState) -> Result<Vec<Vector4<f64>>> {
        let r = self.rhs(u)?;
        Ok((0..self.n)
            .map(|j| {
                if j >= self.keep {
                    Vector4::zeros()
                } else {
                    r.mode(j) - self.props[j].generator * u.mode(j)
                }
            })
            .collect())
    }

    fn filtered_rhs(&self, u: &FlowState) -> Result<Vec<Vector4<f64>>> {
        let nl = self.remainder(u)?;
        Ok((0..self.n)
            .map(|j| self.props[j].generator * u.mode(j) + nl[j])
            .collect())
    }

    /// One step of the configured scheme.
    pub fn step(&self, u: &FlowState) -> Result<FlowState> {
        self.check_shape(u)?;
        match self.config.scheme {
            Scheme::Imex => {
                let nu = self.remainder(u)?;
                let a: Vec<Vector4<f64>> = (0..self.n)
                    .map(|j| self.props[j].exp * u.mode(j) + self.props[j].phi1 * nu[j])
                    .collect();
                let a_state = FlowState::from_modes(self.m, &a)?;
                let na = self.remainder(&a_state)?;
                let out: Vec<Vector4<f64>> = (0..self.n)
                    .map(|j| a[j] + self.props[j].phi2 * (na[j] - nu[j]))
                    .collect();
                FlowState::from_modes(self.m, &out)
            }
            Scheme::Rk4 => {
                let h = self.dt;
                let base: Vec<Vector4<f64>> = (0..self.n).map(|j| u.mode(j)).collect();
                let shifted = |k: &[Vector4<f64>], f: f64| -> Result<FlowState> {
                    let v: Vec<_> = base.iter().zip(k).map(|(b, d)| b + d * f).collect();
                    FlowState::from_modes(self.m, &v)
                };
                let k1 = self.filtered_rhs(u)?;
                let k2 = self.filtered_rhs(&shifted(&k1, 0.5 * h)?)?;
                let k3 = self.filtered_rhs(&shifted(&k2, 0.5 * h)?)?;
                let k4 = self.filtered_rhs(&shifted(&k3, h)?)?;
                let out: Vec<Vector4<f64>> = (0..self.n)
                    .map(|j| base[j] + (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (h / 6.0))
                    .collect();
                FlowState::from_modes(self.m, &out)
            }
        }
    }

    /// Exact linear flow `e^{tA} u`, mode by mode.
    pub fn propagate_linear(&self, u: &FlowState, t: f64) -> Result<FlowState> {
        self.check_shape(u)?;
        let out: Vec<Vector4<f64>> = (0..self.n)
            .map(|j| (self.props[j].generator * t).exp() * u.mode(j))
            .collect();
        FlowState::from_modes(self.m, &out)
    }

    /// Steps to `t_final`, calling `observe(t, state)` at the start, every
    /// `stride` steps and at the end.
    pub fn run_with<F>(&self, u0: &FlowState, mut observe: F) -> Result<FlowState>
    where
        F: FnMut(f64, &FlowState) -> Result<()>,
    {
        self.check_shape(u0)?;
        let steps = self.config.steps();
        let mut u = u0.clone();
        let magnitude = u.max_abs_coeff();
        if !(magnitude <= BLOWUP_LIMIT) {
            return Err(Error::Blowup { time: 0.0, magnitude });
        }
        observe(0.0, &u)?;
        for i in 1..=steps {
            u = self.step(&u)?;
            let t = i as f64 * self.dt;
            let magnitude = u.max_abs_coeff();
            if !(magnitude <= BLOWUP_LIMIT) {
                return Err(Error::Blowup { time: t, magnitude });
            }
            if i == steps || (self.config.stride > 0 && i % self.config.stride == 0) {
                observe(t, &u)?;
            }
        }
        Ok(u)
    }

    pub fn run(&self, u0: &FlowState) -> Result<Trajectory> {
        let mut traj = Trajectory {
            times: Vec::new(),
            states: Vec::new(),
        };
        self.run_with(u0, |t, u| {
            traj.times.push(t);
            traj.states.push(u.clone());
            Ok(())
        })?;
        Ok(traj)
    }
}

/// Outcome of evolving a steady profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TravelReport {
    /// Largest `X`-norm gap to the translated profile over the recorded times.
    pub max_shape_error: f64,
    pub final_shape_error: f64,
}

/// Evolves a zero of `ℱ(c, σ, γ; ·)` and compares it with its rigid
/// translation `u₀(x + ct)`, recording every `config.stride` steps (every
/// step when the stride is 0).
pub fn verify_traveling(
    state: &SheetState,
    params: &ParamPoint,
    config: &EvolutionConfig,
    norm_index: f64,
) -> Result<TravelReport> {
    let mut config = config.clone();
    if config.stride == 0 {
        config.stride = 1;
    }
    let evolver = Evolver::new(params.sigma, params.gamma, state.m(), state.modes(), config)?;
    let u0 = FlowState::from_sheet(state);
    let mut max_err: f64 = 0.0;
    let mut last = 0.0;
    evolver.run_with(&u0, |t, u| {
        last = u.distance(&u0.translated(params.c * t), norm_index)?;
        max_err = max_err.max(last);
        Ok(())
    })?;
    Ok(TravelReport {
        max_shape_error: max_err,
        final_shape_error: last,
    })
}

/// `log₂(e_i / e_{i+1})` for errors at successively halved steps.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// The two frequencies of `η̂_k(t) ≈ A e^{iΩ₁t} + B e^{iΩ₂t}`, fitted by
/// order-2 linear prediction (Prony) on samples spaced `dt` apart.
pub fn prony_frequencies(samples: &[Complex64], dt: f64) -> Result<(f64, f64)> {
    if samples.len() < 6 {
        return Err(Error::InvalidArgument("need at least 6 samples".into()));
    }
    let rows = samples.len() - 2;
    let a = DMatrix::from_fn(rows, 2, |i, j| samples[i + 1 - j]);
    let b = DVector::from_fn(rows, |i, _| samples[i + 2]);
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-300)
        .map_err(|e| Error::Singular(e.to_string()))?;
    let (p, q) = (coef[0], coef[1]);
    let disc = (p * p + q * 4.0).sqrt();
    let z1 = (p + disc) / 2.0;
    let z2 = (p - disc) / 2.0;
    let mut f = [z1.arg() / dt, z2.arg() / dt];
    f.sort_by(f64::total_cmp);
    Ok((f[0], f[1]))
}

/// Linear-regime frequencies of wavenumber `n·m` measured from a run started
/// at `amplitude·cos(nmx)`.
pub fn measure_frequencies(
    sigma: f64,
    gamma: f64,
    m: usize,
    n: usize,
    modes: usize,
    amplitude: f64,
    config: &EvolutionConfig,
) -> Result<(f64, f64)> {
    if n == 0 || n > modes {
        return Err(Error::InvalidArgument(format!("mode {n} outside 1..={modes}")));
    }
    let mut config = config.clone();
    config.stride = 1;
    let evolver = Evolver::new(sigma, gamma, m, modes, config)?;
    let mut cos = vec![0.0; modes];
    cos[n - 1] = amplitude;
    let u0 = FlowState::new(FullSeries::new(m, cos, vec![0.0; modes])?, FullSeries::zeros(m, modes))?;
    let mut samples = Vec::new();
    evolver.run_with(&u0, |_, u| {
        samples.push(u.eta_amplitude(n - 1));
        Ok(())
    })?;
    prony_frequencies(&samples, evolver.dt())
}

/// Predicted `|Ω|` pair for wavenumber `k`: `|γk/2 ∓ √(−kλ/2)|`, sorted, or
/// `None` when the mode grows.
pub fn predicted_frequencies(k: usize, sigma: f64, gamma: f64) -> Option<(f64, f64)> {
    let kf = k as f64;
    let lambda = sigma - gamma * gamma + 0.5 * gamma * gamma * kf - sigma * kf * kf;
    let osc2 = -0.5 * kf * lambda;
    if osc2 < 0.0 {
        return None;
    }
    let (a, b) = ((0.5 * gamma * kf - osc2.sqrt()).abs(), (0.5 * gamma * kf + osc2.sqrt()).abs());
    Some((a.min(b), a.max(b)))
}
