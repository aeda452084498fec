//! Local branches of m-fold sheets bifurcating from the circle.
//!
//! The amplitude `s` is the `cos(mx)` coefficient of `η`. At each step the
//! unknowns are the bifurcation parameter and every other coefficient:
//! `z = [p, a_2..a_N, b_1..b_N]`, and `ℱ(p, state) = 0` is solved by a chord
//! Newton method.

use std::io::{BufRead, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::contour::SheetState;
use crate::error::{Error, Result};
use crate::fourier::Grid;
use crate::functional::{ParamPoint, SteadyFunctional};
use crate::linear::{assembled_jacobian, assembled_parameter_derivative, Bifurcation, BifurcationKind, BifurcationPoint, Sign};

/// Version tag written on the first line of branch files.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationOptions {
    /// Retained fold-modes `N`.
    pub modes: usize,
    /// Quadrature nodes; `None` picks [`Grid::for_modes`].
    pub quad: Option<usize>,
    /// Residual tolerance on the target-space norm.
    pub tol: f64,
    pub max_iters: usize,
    /// Largest `|s|` reported as part of a local branch.
    pub trust_amplitude: f64,
    /// Step of the finite-difference Jacobian refresh.
    pub fd_eps: f64,
    /// Largest accepted energy fraction in modes `n > N/2`.
    pub tail_limit: f64,
    /// `+1` or `−1`: sign of the amplitude.
    pub direction: i32,
    pub norm_index: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            modes: 16,
            quad: None,
            tol: 1e-10,
            max_iters: 25,
            trust_amplitude: 0.05,
            fd_eps: 1e-6,
            tail_limit: 1e-10,
            direction: 1,
            norm_index: 2.0,
        }
    }
}

impl ContinuationOptions {
    fn validate(&self) -> Result<()> {
        if self.modes < 2 {
            return Err(Error::InvalidArgument("continuation needs at least 2 modes".into()));
        }
        if !(self.tol > 0.0) || !(self.trust_amplitude > 0.0) || !(self.fd_eps > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be positive".into()));
        }
        if self.direction != 1 && self.direction != -1 {
            return Err(Error::InvalidArgument(format!("direction must be +1 or -1, got {}", self.direction)));
        }
        Ok(())
    }

    pub fn functional(&self, m: usize) -> Result<SteadyFunctional> {
        let grid = match self.quad {
            Some(q) => {
                let grid = Grid::new(q)?;
                grid.check_resolution(m, self.modes)?;
                grid
            }
            None => Grid::for_modes(m, self.modes),
        };
        Ok(SteadyFunctional::new(grid).with_norm_index(self.norm_index))
    }
}

/// One converged point of a branch.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchStep {
    pub s: f64,
    pub param_value: f64,
    pub state: SheetState,
    pub residual_norm: f64,
    pub newton_iters: usize,
    /// Energy fraction of the state in modes `n > N/2`.
    pub tail_ratio: f64,
}

/// A traced branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub point: BifurcationPoint,
    pub steps: Vec<BranchStep>,
    pub direction: i32,
}

/// Fitted behaviour of a branch as `s → 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Asymptotics {
    /// `p(0)` from a least-squares quadratic in `s`.
    pub p0_extrapolated: f64,
    pub linear_coefficient: f64,
    /// `s²` coefficient of the quadratic fit.
    pub quadratic_fit: f64,
    /// `max ‖state − s·x₀‖_X / s²` over the steps.
    pub tangent_defect: f64,
    /// Exponent `k` of `|p(s) − p₀| ≈ A|s|^k`, when `p` moves at all.
    pub power_exponent: Option<f64>,
}

/// Energy fraction in modes `n > N/2`.
pub fn tail_ratio(state: &SheetState) -> f64 {
    let n = state.modes();
    let cut = n / 2;
    let mut total = 0.0;
    let mut tail = 0.0;
    for (j, (a, b)) in state.eta().coeffs().iter().zip(state.psi().coeffs()).enumerate() {
        let e = a * a + b * b;
        total += e;
        if j >= cut {
            tail += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        tail / total
    }
}

struct Solved {
    z: Vec<f64>,
    residual: f64,
    iters: usize,
}

/// Steps along a branch one amplitude at a time.
pub struct BranchTracer {
    point: BifurcationPoint,
    options: ContinuationOptions,
    functional: SteadyFunctional,
    ds: f64,
    steps: Vec<BranchStep>,
}

impl BranchTracer {
    pub fn new(point: BifurcationPoint, ds: f64, options: ContinuationOptions) -> Result<Self> {
        options.validate()?;
        if !point.admissible {
            return Err(Error::Inadmissible(point.reason.clone()));
        }
        if !(ds > 0.0 && ds <= 0.05) {
            return Err(Error::InvalidArgument(format!("step ds must lie in (0, 0.05], got {ds}")));
        }
        let functional = options.functional(point.m)?;
        Ok(Self {
            point,
            options,
            functional,
            ds,
            steps: Vec::new(),
        })
    }

    pub fn point(&self) -> &BifurcationPoint {
        &self.point
    }

    pub fn options(&self) -> &ContinuationOptions {
        &self.options
    }

    pub fn steps(&self) -> &[BranchStep] {
        &self.steps
    }

    pub fn functional(&self) -> &SteadyFunctional {
        &self.functional
    }

    pub fn into_branch(self) -> Branch {
        Branch {
            point: self.point,
            steps: self.steps,
            direction: self.options.direction,
        }
    }

    fn n(&self) -> usize {
        self.options.modes
    }

    fn state_of(&self, s: f64, z: &[f64]) -> Result<SheetState> {
        let n = self.n();
        let mut packed = Vec::with_capacity(2 * n);
        packed.push(s);
        packed.extend_from_slice(&z[1..]);
        SheetState::from_coefficients(self.point.m, &packed)
    }

    fn params_of(&self, p: f64) -> Result<ParamPoint> {
        self.point.kind.with_value(&self.point.params, p)
    }

    fn unknowns_of(&self, p: f64, state: &SheetState) -> Vec<f64> {
        let packed = state.to_coefficients();
        let mut z = Vec::with_capacity(packed.len());
        z.push(p);
        z.extend_from_slice(&packed[1..]);
        z
    }

    fn evaluate(&self, s: f64, z: &[f64]) -> Result<(Vec<f64>, f64)> {
        let params = self.params_of(z[0])?;
        let state = self.state_of(s, z)?;
        let r = self.functional.residual(&params, &state)?;
        Ok((r.to_vector(), r.y_norm))
    }

    /// Analytic linearization at the circle, with the parameter column taken
    /// at the current state.
    fn linear_jacobian(&self, s: f64, z: &[f64]) -> Result<DMatrix<f64>> {
        let n = self.n();
        let m = self.point.m;
        let params = self.params_of(z[0])?;
        let state = DVector::from_vec(self.state_of(s, z)?.to_coefficients());
        let l = assembled_jacobian(&params, m, n);
        let dp = assembled_parameter_derivative(self.point.kind, &params, m, n) * state;
        let mut j = l;
        j.set_column(0, &dp);
        Ok(j)
    }

    fn fd_jacobian(&self, s: f64, z: &[f64]) -> Result<DMatrix<f64>> {
        let dim = z.len();
        let eps = self.options.fd_eps;
        let columns: Vec<Vec<f64>> = (0..dim)
            .into_par_iter()
            .map(|i| -> Result<Vec<f64>> {
                let mut plus = z.to_vec();
                let mut minus = z.to_vec();
                plus[i] += eps;
                minus[i] -= eps;
                let (fp, _) = self.evaluate(s, &plus)?;
                let (fm, _) = self.evaluate(s, &minus)?;
                Ok(fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * eps)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(DMatrix::from_fn(dim, dim, |r, c| columns[c][r]))
    }

    fn newton(&self, s: f64, mut z: Vec<f64>) -> Result<Solved> {
        let tol = self.options.tol;
        let diverged = |residual: f64, iterations: usize| Error::NewtonDivergence {
            amplitude: s,
            residual,
            iterations,
        };
        let (mut g, mut r) = self.evaluate(s, &z)?;
        let initial = r;
        let mut lu = self.linear_jacobian(s, &z)?.lu();
        let mut fresh_fd = false;
        let mut iters = 0;
        while iters < self.options.max_iters {
            if r <= tol / 100.0 {
                break;
            }
            let dz = lu
                .solve(&DVector::from_vec(g.clone()))
                .ok_or_else(|| Error::Singular("continuation Jacobian".into()))?;
            let trial: Vec<f64> = z.iter().zip(dz.iter()).map(|(a, b)| a - b).collect();
            iters += 1;
            let (g_new, r_new) = match self.evaluate(s, &trial) {
                Ok(v) => v,
                Err(Error::Domain(_)) => return Err(diverged(r, iters)),
                Err(e) => return Err(e),
            };
            if !r_new.is_finite() || r_new > 1e3 * initial.max(tol) {
                return Err(diverged(r_new, iters));
            }
            let ratio = r_new / r;
            if ratio > 0.5 {
                if fresh_fd {
                    // Already using an up-to-date Jacobian: we are at the rounding floor.
                    if r_new < r {
                        z = trial;
                        r = r_new;
                    }
                    break;
                }
                if r_new < r {
                    z = trial;
                    g = g_new;
                    r = r_new;
                }
                lu = self.fd_jacobian(s, &z)?.lu();
                fresh_fd = true;
                continue;
            }
            fresh_fd = false;
            z = trial;
            g = g_new;
            r = r_new;
        }
        if r <= tol {
            Ok(Solved { z, residual: r, iters })
        } else {
            Err(diverged(r, iters))
        }
    }

    fn predictor(&self, s: f64) -> Result<Vec<f64>> {
        let p0 = self.point.value();
        let n = self.n();
        let x0 = self.point.kernel_state(n);
        // Known points, including the bifurcation point itself at s = 0.
        let mut known: Vec<(f64, Vec<f64>)> = vec![(0.0, self.unknowns_of(p0, &SheetState::zero(self.point.m, n)))];
        known.extend(
            self.steps
                .iter()
                .map(|st| (st.s, self.unknowns_of(st.param_value, &st.state))),
        );
        if known.len() == 1 {
            return Ok(self.unknowns_of(p0, &x0.scaled(s)));
        }
        let tail = &known[known.len().saturating_sub(3)..];
        let mut z = vec![0.0; tail[0].1.len()];
        for (i, (si, zi)) in tail.iter().enumerate() {
            let weight: f64 = tail
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, (sj, _))| (s - sj) / (si - sj))
                .product();
            z.iter_mut().zip(zi).for_each(|(a, b)| *a += weight * b);
        }
        Ok(z)
    }

    /// Solves at amplitude `s`, starting from the predictor.
    pub fn solve_at(&self, s: f64) -> Result<BranchStep> {
        if s.abs() > self.options.trust_amplitude * (1.0 + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "amplitude {s} beyond the trust amplitude {}",
                self.options.trust_amplitude
            )));
        }
        let guess = self.predictor(s)?;
        let (_, predicted) = self.evaluate(s, &guess)?;
        if predicted > s.abs() {
            return Err(Error::StepTooLarge {
                amplitude: s,
                residual: predicted,
                limit: s.abs(),
            });
        }
        let solved = self.newton(s, guess)?;
        let state = self.state_of(s, &solved.z)?;
        let tail = tail_ratio(&state);
        if tail > self.options.tail_limit {
            return Err(Error::Truncation {
                ratio: tail,
                limit: self.options.tail_limit,
            });
        }
        Ok(BranchStep {
            s,
            param_value: solved.z[0],
            state,
            residual_norm: solved.residual,
            newton_iters: solved.iters,
            tail_ratio: tail,
        })
    }

    /// Advances by one step of size `ds` in the configured direction.
    pub fn advance(&mut self) -> Result<&BranchStep> {
        let k = self.steps.len() + 1;
        let s = self.options.direction as f64 * k as f64 * self.ds;
        let step = self.solve_at(s)?;
        self.steps.push(step);
        Ok(self.steps.last().expect("just pushed"))
    }
}

/// Traces `steps` points of the branch at amplitudes `ds, 2ds, ...`.
pub fn trace_branch(point: &BifurcationPoint, ds: f64, steps: usize, options: &ContinuationOptions) -> Result<Branch> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one step is required".into()));
    }
    if steps as f64 * ds > options.trust_amplitude * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!(
            "{steps} steps of {ds} exceed the trust amplitude {}",
            options.trust_amplitude
        )));
    }
    let mut tracer = BranchTracer::new(point.clone(), ds, options.clone())?;
    for _ in 0..steps {
        tracer.advance()?;
    }
    Ok(tracer.into_branch())
}

fn least_squares(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let a = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    let sol = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Singular(e.to_string()))?;
    Ok(sol.iter().copied().collect())
}

impl Branch {
    pub fn modes(&self) -> usize {
        self.steps.first().map_or(0, |s| s.state.modes())
    }

    /// File name `branch_<kind>_<m>_<sign>.csv`; tension branches carry `na`.
    pub fn file_name(&self) -> String {
        branch_file_name(self.point.kind, self.point.m, self.point.sign)
    }

    pub fn asymptotics(&self, norm_index: f64) -> Result<Asymptotics> {
        branch_asymptotics(self, norm_index)
    }

    /// Residual of every step re-evaluated on a grid `factor` times finer.
    pub fn certify(&self, factor: usize) -> Result<Vec<f64>> {
        let n = self.modes();
        let m = self.point.m;
        let grid = Grid::new(Grid::for_modes(m, n).len() * factor.max(1))?;
        let f = SteadyFunctional::new(grid);
        self.steps
            .par_iter()
            .map(|st| {
                let params = self.point.kind.with_value(&self.point.params, st.param_value)?;
                Ok(f.residual(&params, &st.state)?.y_norm)
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e: std::io::Error| Error::Parse(e.to_string());
        let n = self.modes();
        let p = &self.point;
        writeln!(out, "# format={FORMAT_VERSION}").map_err(io)?;
        writeln!(
            out,
            "# point kind={} m={} sign={} c={:.16e} sigma={:.16e} gamma={:.16e} direction={}",
            p.kind,
            p.m,
            p.sign.map_or("na", Sign::name),
            p.params.c,
            p.params.sigma,
            p.params.gamma,
            self.direction
        )
        .map_err(io)?;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["s".to_string(), "param".into(), "residual".into(), "newton_iters".into()];
        header.extend((1..=n).map(|i| format!("eta_{i}")));
        header.extend((1..=n).map(|i| format!("psi_{i}")));
        w.write_record(&header).map_err(|e| Error::Parse(e.to_string()))?;
        for st in &self.steps {
            let mut row = vec![
                format!("{:.16e}", st.s),
                format!("{:.16e}", st.param_value),
                format!("{:.16e}", st.residual_norm),
                st.newton_iters.to_string(),
            ];
            row.extend(st.state.to_coefficients().iter().map(|v| format!("{v:.16e}")));
            w.write_record(&row).map_err(|e| Error::Parse(e.to_string()))?;
        }
        w.flush().map_err(io)?;
        Ok(())
    }

    pub fn save(&self, dir: &Path) -> Result<std::path::PathBuf> {
        let path = dir.join(self.file_name());
        let file = std::fs::File::create(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.write_csv(std::io::BufWriter::new(file))?;
        Ok(path)
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Branch> {
        let text = std::io::read_to_string(input).map_err(|e| Error::Parse(e.to_string()))?;
        let mut lines = text.lines();
        match lines.next() {
            Some(l) if l.trim() == format!("# format={FORMAT_VERSION}") => {}
            other => return Err(Error::Parse(format!("expected '# format={FORMAT_VERSION}', found {other:?}"))),
        }
        let meta = lines
            .next()
            .and_then(|l| l.strip_prefix("# point"))
            .ok_or_else(|| Error::Parse("missing '# point' metadata line".into()))?;
        let field = |key: &str| -> Result<&str> {
            meta.split_whitespace()
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| Error::Parse(format!("metadata lacks '{key}'")))
        };
        let num = |key: &str| -> Result<f64> {
            field(key)?.parse().map_err(|_| Error::Parse(format!("bad value for '{key}'")))
        };
        let kind: BifurcationKind = field("kind")?.parse()?;
        let m: usize = field("m")?.parse().map_err(|_| Error::Parse("bad foldness".into()))?;
        let sign = match field("sign")? {
            "na" => None,
            s => Some(s.parse::<Sign>()?),
        };
        let direction: i32 = field("direction")?.parse().map_err(|_| Error::Parse("bad direction".into()))?;
        let (c, sigma, gamma) = (num("c")?, num("sigma")?, num("gamma")?);
        let bif = match (kind, sign) {
            (BifurcationKind::Speed, Some(sign)) => Bifurcation::Speed { m, sigma, gamma, sign },
            (BifurcationKind::Tension, _) => Bifurcation::Tension { m, c, gamma },
            (BifurcationKind::Vorticity, Some(sign)) => Bifurcation::Vorticity { m, sigma, sign },
            _ => return Err(Error::Parse("sign missing for a two-sided threshold".into())),
        };
        let point = bif.locate()?;

        let body: String = lines.collect::<Vec<_>>().join("\n");
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(body.as_bytes());
        let headers = reader.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
        if headers.len() < 6 || (headers.len() - 4) % 2 != 0 || &headers[0] != "s" {
            return Err(Error::Parse("unexpected branch header".into()));
        }
        let mut steps = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let value = |i: usize| -> Result<f64> {
                record[i]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number '{}'", &record[i])))
            };
            let coeffs = (4..record.len()).map(value).collect::<Result<Vec<f64>>>()?;
            let state = SheetState::from_coefficients(m, &coeffs)?;
            steps.push(BranchStep {
                s: value(0)?,
                param_value: value(1)?,
                residual_norm: value(2)?,
                newton_iters: record[3].trim().parse().map_err(|_| Error::Parse("bad iteration count".into()))?,
                tail_ratio: tail_ratio(&state),
                state,
            });
        }
        Ok(Branch { point, steps, direction })
    }

    pub fn load(path: &Path) -> Result<Branch> {
        let file = std::fs::File::open(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

pub fn branch_file_name(kind: BifurcationKind, m: usize, sign: Option<Sign>) -> String {
    format!("branch_{}_{}_{}.csv", kind, m, sign.map_or("na", Sign::name))
}

/// Extrapolated `p₀`, tangency defect and power-law fit of a branch.
pub fn branch_asymptotics(branch: &Branch, norm_index: f64) -> Result<Asymptotics> {
    if branch.steps.len() < 3 {
        return Err(Error::InvalidArgument("asymptotics need at least 3 steps".into()));
    }
    let s: Vec<f64> = branch.steps.iter().map(|st| st.s).collect();
    let p: Vec<f64> = branch.steps.iter().map(|st| st.param_value).collect();
    let rows: Vec<Vec<f64>> = s.iter().map(|&si| vec![1.0, si, si * si]).collect();
    let fit = least_squares(&rows, &p)?;
    let p0 = fit[0];

    let x0 = branch.point.kernel_state(branch.modes());
    let mut tangent_defect: f64 = 0.0;
    for st in &branch.steps {
        let defect = st.state.combine(&x0, -st.s)?.x_norm(norm_index) / (st.s * st.s);
        tangent_defect = tangent_defect.max(defect);
    }

    let pts: Vec<(f64, f64)> = s
        .iter()
        .zip(&p)
        .filter(|(si, pi)| **si != 0.0 && (*pi - p0).abs() > 0.0)
        .map(|(si, pi)| (si.abs().ln(), (pi - p0).abs().ln()))
        .collect();
    let power_exponent = if pts.len() >= 2 {
        let rows: Vec<Vec<f64>> = pts.iter().map(|(x, _)| vec![1.0, *x]).collect();
        let ys: Vec<f64> = pts.iter().map(|(_, y)| *y).collect();
        Some(least_squares(&rows, &ys)?[1])
    } else {
        None
    };
    Ok(Asymptotics {
        p0_extrapolated: p0,
        linear_coefficient: fit[1],
        quadratic_fit: fit[2],
        tangent_defect,
        power_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn speed_point() -> BifurcationPoint {
        Bifurcation::Speed {
            m: 2,
            sigma: 1.0,
            gamma: 0.0,
            sign: Sign::Plus,
        }
        .locate()
        .unwrap()
    }

    #[test]
    fn zero_step_is_rejected() {
        let opts = ContinuationOptions::default();
        assert!(BranchTracer::new(speed_point(), 0.0, opts.clone()).is_err());
        assert!(trace_branch(&speed_point(), 1e-3, 0, &opts).is_err());
        assert!(trace_branch(&speed_point(), 1e-2, 10, &opts).is_err());
    }

    #[test]
    fn synthetic_tangent_branch_has_zero_defect() {
        let point = speed_point();
        let steps = (1..=4)
            .map(|k| {
                let s = k as f64 * 1e-3;
                let x0 = point.kernel_state(8);
                BranchStep {
                    s,
                    param_value: point.value() + 0.3 * s * s,
                    state: x0.scaled(s),
                    residual_norm: 0.0,
                    newton_iters: 0,
                    tail_ratio: 0.0,
                }
            })
            .collect();
        let branch = Branch {
            point: point.clone(),
            steps,
            direction: 1,
        };
        let a = branch.asymptotics(2.0).unwrap();
        assert_eq!(a.tangent_defect, 0.0);
        assert!((a.p0_extrapolated - point.value()).abs() < 1e-12);
        assert!((a.quadratic_fit - 0.3).abs() < 1e-6);
        assert!((a.power_exponent.unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn csv_round_trip() {
        let point = speed_point();
        let x0 = point.kernel_state(3);
        let branch = Branch {
            point,
            steps: vec![BranchStep {
                s: 1e-3,
                param_value: 0.8660254,
                state: x0.scaled(1e-3),
                residual_norm: 1e-13,
                newton_iters: 3,
                tail_ratio: 0.0,
            }],
            direction: 1,
        };
        let mut buf = Vec::new();
        branch.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# format=1\n# point kind=speed m=2 sign=plus"));
        assert!(text.contains("s,param,residual,newton_iters,eta_1,eta_2,eta_3,psi_1,psi_2,psi_3"));
        let back = Branch::read_csv(&buf[..]).unwrap();
        assert_eq!(back.steps[0].state, branch.steps[0].state);
        assert_eq!(back.steps[0].param_value, branch.steps[0].param_value);
        assert_eq!(back.file_name(), "branch_speed_2_plus.csv");
    }
}
