//! Parity-restricted `m`-fold trigonometric series on collocation grids.
//!
//! A profile that is invariant under rotation by `2π/m` only carries the
//! wavenumbers `k = n·m`, `n ≥ 1`. Even profiles are cosine series, odd
//! profiles are sine series, and the zero mode is never stored: the mean of
//! every represented function is zero by construction.
//!
//! Wavenumber weights in [`EvenSeries::sobolev_norm`] and friends use the
//! absolute wavenumber `n·m`, so norms of the same curve agree whatever fold
//! index is used to describe it.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Parity of a real series about `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Equispaced collocation grid on `[0, 2π)` together with its half-offset
/// companion grid `y_k = (2k + 1)π / Q`.
///
/// Principal-value integrals evaluated at a primary node `x_j` use the offset
/// nodes, which sit symmetrically around `x_j` and never meet it.
#[derive(Clone)]
pub struct Grid {
    q: usize,
    nodes: Vec<f64>,
    offset: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("q", &self.q).finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Grid {
    /// Grid with `q` nodes; `q` must be even and at least 4.
    pub fn new(q: usize) -> Result<Self> {
        if q < 4 || q % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "grid size must be even and >= 4, got {q}"
            )));
        }
        let h = 2.0 * PI / q as f64;
        let nodes = (0..q).map(|j| j as f64 * h).collect();
        let offset = (0..q).map(|k| (2 * k + 1) as f64 * PI / q as f64).collect();
        let fft = FftPlanner::new().plan_fft_forward(q);
        Ok(Self {
            q,
            nodes,
            offset,
            fft,
        })
    }

    /// Default grid for `n` fold-modes of an `m`-fold profile: at least 256
    /// nodes and at least `4·m·n`, rounded up to a multiple of `2m` so that
    /// rotation by `2π/m` maps nodes onto nodes.
    pub fn for_modes(m: usize, n: usize) -> Self {
        let m = m.max(1);
        let want = (4 * m * n).max(256);
        let step = 2 * m;
        let q = want.div_ceil(step) * step;
        Self::new(q).expect("grid size is even and large")
    }

    /// Checks the oversampling requirement `Q >= 4·m·N`.
    pub fn check_resolution(&self, m: usize, n: usize) -> Result<()> {
        if self.q < 4 * m * n {
            return Err(Error::InvalidArgument(format!(
                "grid of {} nodes cannot resolve {n} modes of a {m}-fold profile (need >= {})",
                self.q,
                4 * m * n
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.q
    }

    pub fn is_empty(&self) -> bool {
        self.q == 0
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.q as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn offset_nodes(&self) -> &[f64] {
        &self.offset
    }

    /// The grid with twice as many nodes. Its even-indexed nodes coincide with
    /// the nodes of `self`.
    pub fn refined(&self) -> Grid {
        Grid::new(2 * self.q).expect("doubling keeps the size even")
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }

    pub fn sample_offset(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.offset.iter().map(|&y| f(y)).collect()
    }

    /// Discrete cosine/sine spectrum of samples taken at the primary nodes.
    pub fn spectrum(&self, values: &[f64]) -> Result<Spectrum> {
        if values.len() != self.q {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                self.q,
                values.len()
            )));
        }
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fft.process(&mut buf);
        let q = self.q;
        let half = q / 2;
        let scale = 2.0 / q as f64;
        let mut cos = vec![0.0; half + 1];
        let mut sin = vec![0.0; half + 1];
        cos[0] = buf[0].re / q as f64;
        for k in 1..half {
            cos[k] = scale * buf[k].re;
            sin[k] = -scale * buf[k].im;
        }
        cos[half] = buf[half].re / q as f64;
        Ok(Spectrum { cos, sin })
    }
}

/// Sum `Σ_n c_n cos(n m x) + s_n sin(n m x)` by complex rotation.
fn trig_sum(cos: &[f64], sin: &[f64], m: usize, x: f64) -> f64 {
    let (s1, c1) = (m as f64 * x).sin_cos();
    let step = Complex64::new(c1, s1);
    let mut rot = step;
    let mut acc = 0.0;
    let n = cos.len().max(sin.len());
    for i in 0..n {
        if let Some(a) = cos.get(i) {
            acc += a * rot.re;
        }
        if let Some(b) = sin.get(i) {
            acc += b * rot.im;
        }
        rot *= step;
    }
    acc
}

fn japanese(k: f64) -> f64 {
    k.max(1.0)
}

fn weighted_norm(m: usize, s: f64, coeffs: impl Iterator<Item = (usize, f64)>) -> f64 {
    coeffs
        .map(|(n, c)| japanese((n * m) as f64).powf(2.0 * s) * c * c)
        .sum::<f64>()
        .sqrt()
}

fn check_coeffs(m: usize, coeffs: &[f64]) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("foldness must be positive".into()));
    }
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("series needs at least one mode".into()));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    Ok(())
}

/// `f(x) = Σ_{n=1}^{N} a_n cos(n m x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenSeries {
    m: usize,
    coeffs: Vec<f64>,
}

/// `f(x) = Σ_{n=1}^{N} b_n sin(n m x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddSeries {
    m: usize,
    coeffs: Vec<f64>,
}

macro_rules! parity_series_common {
    ($ty:ident) => {
        impl $ty {
            pub fn new(m: usize, coeffs: Vec<f64>) -> Result<Self> {
                check_coeffs(m, &coeffs)?;
                Ok(Self { m, coeffs })
            }

            pub fn zeros(m: usize, n: usize) -> Self {
                Self::new(m, vec![0.0; n.max(1)]).expect("zero series is valid")
            }

            /// Series whose only non-zero coefficient is `amplitude` on fold-mode `mode` (1-based).
            pub fn single_mode(m: usize, n: usize, mode: usize, amplitude: f64) -> Result<Self> {
                if mode == 0 || mode > n {
                    return Err(Error::InvalidArgument(format!(
                        "mode {mode} outside 1..={n}"
                    )));
                }
                let mut coeffs = vec![0.0; n];
                coeffs[mode - 1] = amplitude;
                Self::new(m, coeffs)
            }

            pub fn m(&self) -> usize {
                self.m
            }

            /// Number of stored fold-modes `N`.
            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn coeffs(&self) -> &[f64] {
                &self.coeffs
            }

            /// Coefficient of fold-mode `n` (1-based); zero beyond the stored length.
            pub fn coeff(&self, n: usize) -> f64 {
                if n == 0 {
                    return 0.0;
                }
                self.coeffs.get(n - 1).copied().unwrap_or(0.0)
            }

            pub fn evaluate(&self, grid: &Grid) -> Vec<f64> {
                grid.nodes().iter().map(|&x| self.value_at(x)).collect()
            }

            pub fn evaluate_offset(&self, grid: &Grid) -> Vec<f64> {
                grid.offset_nodes().iter().map(|&x| self.value_at(x)).collect()
            }

            /// `(Σ ⟨n m⟩^{2s} c_n²)^{1/2}` with `⟨k⟩ = max(1, k)`.
            pub fn sobolev_norm(&self, s: f64) -> f64 {
                weighted_norm(self.m, s, self.coeffs.iter().enumerate().map(|(i, &c)| (i + 1, c)))
            }

            pub fn scaled(&self, factor: f64) -> Self {
                Self {
                    m: self.m,
                    coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
                }
            }

            pub fn max_abs_coeff(&self) -> f64 {
                self.coeffs.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()))
            }
        }
    };
}

parity_series_common!(EvenSeries);
parity_series_common!(OddSeries);

impl EvenSeries {
    pub fn value_at(&self, x: f64) -> f64 {
        trig_sum(&self.coeffs, &[], self.m, x)
    }

    /// `d/dx cos(nmx) = -nm sin(nmx)`.
    pub fn derivative(&self) -> OddSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| -(((i + 1) * self.m) as f64) * a)
            .collect();
        OddSeries { m: self.m, coeffs }
    }

    /// Periodic Hilbert transform, `cos(nmx) ↦ sin(nmx)`.
    pub fn hilbert(&self) -> OddSeries {
        OddSeries {
            m: self.m,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `|D| = ∂_x 𝓗`, which multiplies mode `nm` by `nm`.
    pub fn abs_derivative(&self) -> EvenSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| ((i + 1) * self.m) as f64 * a)
            .collect();
        EvenSeries { m: self.m, coeffs }
    }

    pub fn to_full(&self) -> FullSeries {
        FullSeries {
            m: self.m,
            cos: self.coeffs.clone(),
            sin: vec![0.0; self.coeffs.len()],
        }
    }
}

impl OddSeries {
    pub fn value_at(&self, x: f64) -> f64 {
        trig_sum(&[], &self.coeffs, self.m, x)
    }

    /// `d/dx sin(nmx) = nm cos(nmx)`.
    pub fn derivative(&self) -> EvenSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| ((i + 1) * self.m) as f64 * b)
            .collect();
        EvenSeries { m: self.m, coeffs }
    }

    /// Periodic Hilbert transform, `sin(nmx) ↦ -cos(nmx)`.
    pub fn hilbert(&self) -> EvenSeries {
        EvenSeries {
            m: self.m,
            coeffs: self.coeffs.iter().map(|b| -b).collect(),
        }
    }

    pub fn abs_derivative(&self) -> OddSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| ((i + 1) * self.m) as f64 * b)
            .collect();
        OddSeries { m: self.m, coeffs }
    }

    pub fn to_full(&self) -> FullSeries {
        FullSeries {
            m: self.m,
            cos: vec![0.0; self.coeffs.len()],
            sin: self.coeffs.clone(),
        }
    }
}

/// Zero-mean `m`-fold series with both cosine and sine parts,
/// `f(x) = Σ_{n=1}^{N} a_n cos(n m x) + b_n sin(n m x)`.
///
/// Time evolution does not preserve parity (a translating even profile picks
/// up an odd part), so trajectories live in this space.
#[derive(Clone, Debug, PartialEq)]
pub struct FullSeries {
    m: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl FullSeries {
    pub fn new(m: usize, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        check_coeffs(m, &cos)?;
        check_coeffs(m, &sin)?;
        if cos.len() != sin.len() {
            return Err(Error::InvalidArgument(format!(
                "cosine part has {} modes, sine part {}",
                cos.len(),
                sin.len()
            )));
        }
        Ok(Self { m, cos, sin })
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        let n = n.max(1);
        Self::new(m, vec![0.0; n], vec![0.0; n]).expect("zero series is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.cos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cos.is_empty()
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn value_at(&self, x: f64) -> f64 {
        trig_sum(&self.cos, &self.sin, self.m, x)
    }

    pub fn evaluate(&self, grid: &Grid) -> Vec<f64> {
        grid.nodes().iter().map(|&x| self.value_at(x)).collect()
    }

    pub fn evaluate_offset(&self, grid: &Grid) -> Vec<f64> {
        grid.offset_nodes().iter().map(|&x| self.value_at(x)).collect()
    }

    pub fn derivative(&self) -> FullSeries {
        let k = |i: usize| ((i + 1) * self.m) as f64;
        FullSeries {
            m: self.m,
            cos: self.sin.iter().enumerate().map(|(i, b)| k(i) * b).collect(),
            sin: self.cos.iter().enumerate().map(|(i, a)| -k(i) * a).collect(),
        }
    }

    pub fn hilbert(&self) -> FullSeries {
        FullSeries {
            m: self.m,
            cos: self.sin.iter().map(|b| -b).collect(),
            sin: self.cos.clone(),
        }
    }

    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let pairs = self
            .cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(i, (a, b))| (i + 1, a.hypot(*b)));
        weighted_norm(self.m, s, pairs)
    }

    /// The profile `x ↦ f(x + shift)`.
    pub fn translated(&self, shift: f64) -> FullSeries {
        let mut cos = Vec::with_capacity(self.len());
        let mut sin = Vec::with_capacity(self.len());
        for (i, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, c) = (((i + 1) * self.m) as f64 * shift).sin_cos();
            cos.push(a * c + b * s);
            sin.push(b * c - a * s);
        }
        FullSeries { m: self.m, cos, sin }
    }

    pub fn even_part(&self) -> EvenSeries {
        EvenSeries {
            m: self.m,
            coeffs: self.cos.clone(),
        }
    }

    pub fn odd_part(&self) -> OddSeries {
        OddSeries {
            m: self.m,
            coeffs: self.sin.clone(),
        }
    }

    pub fn add(&self, other: &FullSeries) -> Result<FullSeries> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &FullSeries) -> Result<FullSeries> {
        self.combine(other, -1.0)
    }

    /// `self + factor·other`.
    pub fn combine(&self, other: &FullSeries, factor: f64) -> Result<FullSeries> {
        if self.m != other.m || self.len() != other.len() {
            return Err(Error::InvalidArgument(
                "series differ in foldness or length".into(),
            ));
        }
        Ok(FullSeries {
            m: self.m,
            cos: self.cos.iter().zip(&other.cos).map(|(a, b)| a + factor * b).collect(),
            sin: self.sin.iter().zip(&other.sin).map(|(a, b)| a + factor * b).collect(),
        })
    }

    pub fn scaled(&self, factor: f64) -> FullSeries {
        FullSeries {
            m: self.m,
            cos: self.cos.iter().map(|a| a * factor).collect(),
            sin: self.sin.iter().map(|b| b * factor).collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.cos
            .iter()
            .chain(&self.sin)
            .fold(0.0_f64, |acc, c| acc.max(c.abs()))
    }
}

/// Cosine/sine coefficients of grid samples for every wavenumber `0..=Q/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

/// Where the energy (grid mean of `f²`) of a projected signal went.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AliasReport {
    pub total: f64,
    pub retained: f64,
    /// Energy of the zero mode. Callers remove the mean explicitly before
    /// projecting, so it is reported but not counted as leakage.
    pub mean: f64,
    /// Right parity and foldness, but beyond the retained `N` modes.
    pub discarded: f64,
    pub wrong_parity: f64,
    pub wrong_fold: f64,
}

impl AliasReport {
    pub fn leaked(&self) -> f64 {
        self.discarded + self.wrong_parity + self.wrong_fold
    }

    pub fn check(&self, policy: &AliasPolicy) -> Result<()> {
        let leaked = if policy.count_discarded {
            self.leaked()
        } else {
            self.wrong_parity + self.wrong_fold
        };
        if leaked > policy.relative * self.total + policy.absolute {
            return Err(Error::Alias {
                leaked,
                total: self.total,
                discarded: self.discarded,
                wrong_parity: self.wrong_parity,
                wrong_fold: self.wrong_fold,
            });
        }
        Ok(())
    }
}

/// Tolerated leakage during projection: `leaked <= relative·total + absolute`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AliasPolicy {
    pub relative: f64,
    pub absolute: f64,
    /// Whether energy beyond the retained modes counts as leakage.
    pub count_discarded: bool,
}

impl Default for AliasPolicy {
    fn default() -> Self {
        Self {
            relative: 1e-10,
            absolute: 1e-26,
            count_discarded: true,
        }
    }
}

impl AliasPolicy {
    /// Never raises; the report is still produced.
    pub fn permissive() -> Self {
        Self {
            relative: f64::INFINITY,
            absolute: f64::INFINITY,
            count_discarded: true,
        }
    }

    /// Only wrong parity or foldness raises. Energy above the retained modes
    /// is the ordinary truncation of a Galerkin projection and is reported
    /// without failing.
    pub fn galerkin() -> Self {
        Self {
            count_discarded: false,
            ..Self::default()
        }
    }
}

impl Spectrum {
    pub fn q(&self) -> usize {
        2 * (self.cos.len() - 1)
    }

    pub fn mean(&self) -> f64 {
        self.cos[0]
    }

    /// Cosine coefficient of wavenumber `k`.
    pub fn cos_coeff(&self, k: usize) -> f64 {
        self.cos.get(k).copied().unwrap_or(0.0)
    }

    pub fn sin_coeff(&self, k: usize) -> f64 {
        self.sin.get(k).copied().unwrap_or(0.0)
    }

    fn mode_energy(&self, k: usize) -> (f64, f64) {
        let half = self.cos.len() - 1;
        if k == 0 || k == half {
            (self.cos[k] * self.cos[k], 0.0)
        } else {
            (0.5 * self.cos[k] * self.cos[k], 0.5 * self.sin[k] * self.sin[k])
        }
    }

    pub fn energy(&self) -> f64 {
        (0..self.cos.len())
            .map(|k| {
                let (c, s) = self.mode_energy(k);
                c + s
            })
            .sum()
    }

    /// Projects onto fold-modes `1..=n` of an `m`-fold series. `parity = None`
    /// keeps both the cosine and the sine parts.
    pub fn project(
        &self,
        m: usize,
        n: usize,
        parity: Option<Parity>,
    ) -> Result<(Vec<f64>, Vec<f64>, AliasReport)> {
        let half = self.cos.len() - 1;
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("foldness and mode count must be positive".into()));
        }
        if n * m >= half {
            return Err(Error::InvalidArgument(format!(
                "{n} modes of a {m}-fold series need more than {} grid nodes",
                2 * half
            )));
        }
        let mut cos = vec![0.0; n];
        let mut sin = vec![0.0; n];
        let mut report = AliasReport::default();
        for k in 0..=half {
            let (ec, es) = self.mode_energy(k);
            report.total += ec + es;
            if k == 0 {
                report.mean += ec;
                continue;
            }
            if k % m != 0 {
                report.wrong_fold += ec + es;
                continue;
            }
            let fold_mode = k / m;
            let (keep_cos, keep_sin) = match parity {
                Some(Parity::Even) => (true, false),
                Some(Parity::Odd) => (false, true),
                None => (true, true),
            };
            if !keep_cos {
                report.wrong_parity += ec;
            }
            if !keep_sin {
                report.wrong_parity += es;
            }
            let kept = if keep_cos { ec } else { 0.0 } + if keep_sin { es } else { 0.0 };
            if fold_mode <= n {
                report.retained += kept;
                if keep_cos {
                    cos[fold_mode - 1] = self.cos[k];
                }
                if keep_sin {
                    sin[fold_mode - 1] = self.sin[k];
                }
            } else {
                report.discarded += kept;
            }
        }
        Ok((cos, sin, report))
    }
}

/// A parity-restricted series of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Series {
    Even(EvenSeries),
    Odd(OddSeries),
}

impl Series {
    pub fn parity(&self) -> Parity {
        match self {
            Series::Even(_) => Parity::Even,
            Series::Odd(_) => Parity::Odd,
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        match self {
            Series::Even(s) => s.coeffs(),
            Series::Odd(s) => s.coeffs(),
        }
    }

    pub fn evaluate(&self, grid: &Grid) -> Vec<f64> {
        match self {
            Series::Even(s) => s.evaluate(grid),
            Series::Odd(s) => s.evaluate(grid),
        }
    }

    pub fn derivative(&self) -> Series {
        match self {
            Series::Even(s) => Series::Odd(s.derivative()),
            Series::Odd(s) => Series::Even(s.derivative()),
        }
    }

    pub fn hilbert(&self) -> Series {
        match self {
            Series::Even(s) => Series::Odd(s.hilbert()),
            Series::Odd(s) => Series::Even(s.hilbert()),
        }
    }

    pub fn sobolev_norm(&self, s: f64) -> f64 {
        match self {
            Series::Even(e) => e.sobolev_norm(s),
            Series::Odd(o) => o.sobolev_norm(s),
        }
    }
}

/// Discrete projection of primary-grid samples onto the first `n` modes of the
/// given parity and foldness. Leakage beyond `policy` is an [`Error::Alias`].
pub fn analyze(
    grid: &Grid,
    values: &[f64],
    parity: Parity,
    m: usize,
    n: usize,
    policy: &AliasPolicy,
) -> Result<(Series, AliasReport)> {
    let (cos, sin, report) = grid.spectrum(values)?.project(m, n, Some(parity))?;
    report.check(policy)?;
    let series = match parity {
        Parity::Even => Series::Even(EvenSeries::new(m, cos)?),
        Parity::Odd => Series::Odd(OddSeries::new(m, sin)?),
    };
    Ok((series, report))
}

pub fn analyze_even(
    grid: &Grid,
    values: &[f64],
    m: usize,
    n: usize,
    policy: &AliasPolicy,
) -> Result<(EvenSeries, AliasReport)> {
    let (cos, _, report) = grid.spectrum(values)?.project(m, n, Some(Parity::Even))?;
    report.check(policy)?;
    Ok((EvenSeries::new(m, cos)?, report))
}

pub fn analyze_odd(
    grid: &Grid,
    values: &[f64],
    m: usize,
    n: usize,
    policy: &AliasPolicy,
) -> Result<(OddSeries, AliasReport)> {
    let (_, sin, report) = grid.spectrum(values)?.project(m, n, Some(Parity::Odd))?;
    report.check(policy)?;
    Ok((OddSeries::new(m, sin)?, report))
}

pub fn analyze_full(
    grid: &Grid,
    values: &[f64],
    m: usize,
    n: usize,
    policy: &AliasPolicy,
) -> Result<(FullSeries, AliasReport)> {
    let (cos, sin, report) = grid.spectrum(values)?.project(m, n, None)?;
    report.check(policy)?;
    Ok((FullSeries::new(m, cos, sin)?, report))
}
