//! The steady map `ℱ = (ℱ₁, ℱ₂)` whose zeros are sheets travelling at speed `c`:
//!
//! ```text
//! ℱ₁ = c η_x + ½ 𝓗(η)[ψ_x] + (γ/2) 𝓗(η)[1]
//! ℱ₂ = c ψ_x + ((ψ_x + γ)/2) 𝒟₀(η)[ψ_x + γ] + σ 𝒦(η)      (mod constants)
//! ```
//!
//! `ℱ₂` is only defined up to an additive constant, so its grid mean is
//! removed before any projection or norm.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::contour::{Interface, SheetState};
use crate::error::{Error, Result};
use crate::fourier::{analyze_even, analyze_odd, AliasPolicy, AliasReport, EvenSeries, FullSeries, Grid, OddSeries};

/// Rotation speed `c`, surface tension `σ > 0` and mean vorticity `γ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamPoint {
    pub c: f64,
    pub sigma: f64,
    pub gamma: f64,
}

impl ParamPoint {
    pub fn new(c: f64, sigma: f64, gamma: f64) -> Result<Self> {
        if !(c.is_finite() && sigma.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "surface tension must be positive, got {sigma}"
            )));
        }
        Ok(Self { c, sigma, gamma })
    }
}

/// `ℱ` projected onto the retained modes, with its norm in the target space
/// `H^{s−5/4}_odd × H^{s−7/4}_even`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub r1: OddSeries,
    pub r2: EvenSeries,
    pub y_norm: f64,
    pub alias: [AliasReport; 2],
}

impl Residual {
    /// Coefficients packed as `[r1_1..r1_N, r2_1..r2_N]`.
    pub fn to_vector(&self) -> Vec<f64> {
        self.r1.coeffs().iter().chain(self.r2.coeffs()).copied().collect()
    }
}

/// Target-space norm `‖r1‖_{s−5/4} + ‖r2‖_{s−7/4}`.
pub fn y_norm(r1: &OddSeries, r2: &EvenSeries, s: f64) -> f64 {
    r1.sobolev_norm(s - 1.25) + r2.sobolev_norm(s - 1.75)
}

/// Centered finite-difference Jacobian in coefficient space.
#[derive(Clone, Debug, PartialEq)]
pub struct FdJacobian {
    pub matrix: DMatrix<f64>,
    /// Relative gap between the `eps` and `2·eps` Richardson estimates.
    pub richardson_defect: f64,
    /// Set when `richardson_defect` exceeds `1e-4`.
    pub step_warning: bool,
}

/// Evaluator for `ℱ` on a fixed grid.
#[derive(Clone, Debug)]
pub struct SteadyFunctional {
    grid: Grid,
    policy: AliasPolicy,
    norm_index: f64,
}

impl SteadyFunctional {
    pub const DEFAULT_NORM_INDEX: f64 = 2.0;

    pub fn new(grid: Grid) -> Self {
        Self {
            grid,
            policy: AliasPolicy::galerkin(),
            norm_index: Self::DEFAULT_NORM_INDEX,
        }
    }

    /// Default grid for `n` modes of an `m`-fold state.
    pub fn for_modes(m: usize, n: usize) -> Self {
        Self::new(Grid::for_modes(m, n))
    }

    pub fn with_policy(mut self, policy: AliasPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_norm_index(mut self, s: f64) -> Self {
        self.norm_index = s;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn policy(&self) -> &AliasPolicy {
        &self.policy
    }

    pub fn norm_index(&self) -> f64 {
        self.norm_index
    }

    /// Pointwise `ℱ₁` and mean-free `ℱ₂` on the primary grid for arbitrary
    /// (not necessarily even/odd) profiles.
    pub fn fields(
        &self,
        params: &ParamPoint,
        eta: &FullSeries,
        psi: &FullSeries,
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let grid = &self.grid;
        let q = grid.len();
        let iface = Interface::new(grid, eta)?;
        let dpsi = psi.derivative();
        let psi_x = dpsi.evaluate(grid);
        let psi_x_off = dpsi.evaluate_offset(grid);
        let ones = vec![1.0; q];
        let mut sums = iface.kernel_sums(&[&psi_x_off, &ones])?;
        let (d0_one, h0_one) = sums.pop().expect("two densities");
        let (d0_psi, h0_psi) = sums.pop().expect("two densities");
        let h_psi = iface.combine_h(&d0_psi, &h0_psi);
        let h_one = iface.combine_h(&d0_one, &h0_one);
        let curvature = iface.curvature();
        let ParamPoint { c, sigma, gamma } = *params;

        let f1: Vec<f64> = (0..q)
            .map(|j| c * iface.eta_x()[j] + 0.5 * h_psi[j] + 0.5 * gamma * h_one[j])
            .collect();
        let mut f2: Vec<f64> = (0..q)
            .map(|j| {
                let omega = psi_x[j] + gamma;
                let d0_omega = d0_psi[j] + gamma * d0_one[j];
                c * psi_x[j] + 0.5 * omega * d0_omega + sigma * curvature[j]
            })
            .collect();
        let mean = f2.iter().sum::<f64>() / q as f64;
        f2.iter_mut().for_each(|v| *v -= mean);
        Ok((f1, f2))
    }

    fn project(&self, state: &SheetState, f1: &[f64], f2: &[f64]) -> Result<(OddSeries, EvenSeries, [AliasReport; 2])> {
        let (m, n) = (state.m(), state.modes());
        let (r1, a1) = analyze_odd(&self.grid, f1, m, n, &self.policy)?;
        let (r2, a2) = analyze_even(&self.grid, f2, m, n, &self.policy)?;
        Ok((r1, r2, [a1, a2]))
    }

    /// `ℱ₁` projected on the odd `m`-fold modes.
    pub fn f1(&self, params: &ParamPoint, state: &SheetState) -> Result<OddSeries> {
        Ok(self.evaluate(params, state)?.0)
    }

    /// `ℱ₂` with its mean removed, projected on the even `m`-fold modes.
    pub fn f2(&self, params: &ParamPoint, state: &SheetState) -> Result<EvenSeries> {
        Ok(self.evaluate(params, state)?.1)
    }

    pub fn evaluate(&self, params: &ParamPoint, state: &SheetState) -> Result<(OddSeries, EvenSeries)> {
        let r = self.residual(params, state)?;
        Ok((r.r1, r.r2))
    }

    pub fn residual(&self, params: &ParamPoint, state: &SheetState) -> Result<Residual> {
        let (f1, f2) = self.fields(params, &state.eta().to_full(), &state.psi().to_full())?;
        let (r1, r2, alias) = self.project(state, &f1, &f2)?;
        let y = y_norm(&r1, &r2, self.norm_index);
        Ok(Residual {
            r1,
            r2,
            y_norm: y,
            alias,
        })
    }

    /// `ℱ` packed as `[r1_1..r1_N, r2_1..r2_N]`.
    pub fn residual_vector(&self, params: &ParamPoint, state: &SheetState) -> Result<Vec<f64>> {
        Ok(self.residual(params, state)?.to_vector())
    }

    fn centered_columns(
        &self,
        params: &ParamPoint,
        state: &SheetState,
        directions: &[SheetState],
        eps: f64,
    ) -> Result<DMatrix<f64>> {
        let rows = 2 * state.modes();
        let columns: Vec<Vec<f64>> = directions
            .par_iter()
            .map(|d| -> Result<Vec<f64>> {
                let plus = self.residual_vector(params, &state.combine(d, eps)?)?;
                let minus = self.residual_vector(params, &state.combine(d, -eps)?)?;
                Ok(plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * eps)).collect())
            })
            .collect::<Result<_>>()?;
        let mut matrix = DMatrix::zeros(rows, directions.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                matrix[(i, j)] = *v;
            }
        }
        Ok(matrix)
    }

    /// `(ℱ(u + ε d) − ℱ(u − ε d)) / 2ε` for each direction `d`, with a
    /// Richardson comparison against step `2ε`.
    pub fn fd_jacobian(
        &self,
        params: &ParamPoint,
        state: &SheetState,
        directions: &[SheetState],
        eps: f64,
    ) -> Result<FdJacobian> {
        if !(1e-7..=1e-3).contains(&eps) {
            return Err(Error::InvalidArgument(format!(
                "finite-difference step {eps:e} outside [1e-7, 1e-3]"
            )));
        }
        if directions
            .iter()
            .any(|d| d.m() != state.m() || d.modes() != state.modes())
        {
            return Err(Error::InvalidArgument("direction shape differs from state".into()));
        }
        let fine = self.centered_columns(params, state, directions, eps)?;
        let coarse = self.centered_columns(params, state, directions, 2.0 * eps)?;
        let extrapolated = (&fine * 4.0 - &coarse) / 3.0;
        let scale = extrapolated.norm().max(f64::MIN_POSITIVE);
        let richardson_defect = (&fine - &extrapolated).norm() / scale;
        Ok(FdJacobian {
            matrix: fine,
            richardson_defect,
            step_warning: richardson_defect > 1e-4,
        })
    }
}

/// Unit directions in coefficient space: `cos(nmx)` in `η` for `n = 1..N`,
/// then `sin(nmx)` in `ψ`.
pub fn unit_directions(m: usize, n: usize) -> Vec<SheetState> {
    (0..2 * n)
        .map(|i| {
            let mut packed = vec![0.0; 2 * n];
            packed[i] = 1.0;
            SheetState::from_coefficients(m, &packed).expect("packed length is even")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_state_has_zero_residual() {
        let f = SteadyFunctional::for_modes(2, 8);
        for params in [
            ParamPoint::new(0.3, 1.0, -0.7).unwrap(),
            ParamPoint::new(-1.5, 2.5, 1.9).unwrap(),
        ] {
            let r = f.residual(&params, &SheetState::zero(2, 8)).unwrap();
            assert!(r.y_norm <= 1e-12, "{}", r.y_norm);
        }
    }

    #[test]
    fn sigma_must_be_positive() {
        assert!(ParamPoint::new(0.0, 0.0, 1.0).is_err());
        assert!(ParamPoint::new(0.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn fd_step_outside_range_is_rejected() {
        let f = SteadyFunctional::for_modes(2, 2);
        let p = ParamPoint::new(0.0, 1.0, 0.0).unwrap();
        let dirs = unit_directions(2, 2);
        assert!(f.fd_jacobian(&p, &SheetState::zero(2, 2), &dirs, 1e-2).is_err());
    }
}
