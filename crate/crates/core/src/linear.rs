//! The linearization of the steady map at the circle.
//!
//! At `η = ψ = 0` the derivative is a Fourier multiplier: the pair
//! `(a cos(kx), b sin(kx))` is sent to `(r1 sin(kx), r2 cos(kx))` with
//! `(r1, r2) = M_k (a, b)` and
//!
//! ```text
//! M_k = [ −(c+γ/2)k              k/2      ]
//!       [ σ − γ² + γ²k/2 − σk²   (c+γ/2)k ]
//! ```

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Vector2};

use crate::contour::SheetState;
use crate::error::{Error, Result};
use crate::fourier::{EvenSeries, OddSeries};
use crate::functional::ParamPoint;

/// Distance to the nearest positive integer below which a collision is declared.
pub const COLLISION_TOLERANCE: f64 = 1e-10;
/// Distance below which a non-colliding point is flagged as close to one.
pub const COLLISION_WARNING: f64 = 1e-6;

/// Which parameter crosses the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BifurcationKind {
    Speed,
    Tension,
    Vorticity,
}

impl BifurcationKind {
    pub const ALL: [BifurcationKind; 3] = [Self::Speed, Self::Tension, Self::Vorticity];

    pub fn name(self) -> &'static str {
        match self {
            Self::Speed => "speed",
            Self::Tension => "tension",
            Self::Vorticity => "vorticity",
        }
    }

    /// The bifurcation parameter of `params`.
    pub fn value(self, params: &ParamPoint) -> f64 {
        match self {
            Self::Speed => params.c,
            Self::Tension => params.sigma,
            Self::Vorticity => params.gamma,
        }
    }

    /// `params` with the bifurcation parameter replaced by `value`.
    pub fn with_value(self, params: &ParamPoint, value: f64) -> Result<ParamPoint> {
        let ParamPoint { c, sigma, gamma } = *params;
        match self {
            Self::Speed => ParamPoint::new(value, sigma, gamma),
            Self::Tension => ParamPoint::new(c, value, gamma),
            Self::Vorticity => ParamPoint::new(c, sigma, value),
        }
    }

    /// `∂_p M_k` for the bifurcation parameter `p`.
    pub fn block_derivative(self, k: usize, params: &ParamPoint) -> Matrix2<f64> {
        let k = k as f64;
        match self {
            Self::Speed => Matrix2::new(-k, 0.0, 0.0, k),
            Self::Tension => Matrix2::new(0.0, 0.0, 1.0 - k * k, 0.0),
            Self::Vorticity => {
                let g = params.gamma;
                Matrix2::new(-0.5 * k, 0.0, g * (k - 2.0), 0.5 * k)
            }
        }
    }
}

impl fmt::Display for BifurcationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BifurcationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "speed" | "c" => Ok(Self::Speed),
            "tension" | "sigma" => Ok(Self::Tension),
            "vorticity" | "gamma" => Ok(Self::Vorticity),
            other => Err(Error::Parse(format!("unknown bifurcation kind '{other}'"))),
        }
    }
}

/// Branch label for the two-valued thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Plus => "plus",
            Self::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "p" => Ok(Self::Plus),
            "-" | "minus" | "m" => Ok(Self::Minus),
            other => Err(Error::Parse(format!("unknown sign '{other}'"))),
        }
    }
}

/// `M_n` at absolute wavenumber `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearBlock {
    pub n: usize,
    pub entries: Matrix2<f64>,
}

impl LinearBlock {
    pub fn det(&self) -> f64 {
        self.entries.determinant()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    pub fn apply(&self, a: f64, b: f64) -> (f64, f64) {
        let r = self.entries * Vector2::new(a, b);
        (r[0], r[1])
    }
}

pub fn block(n: usize, params: &ParamPoint) -> LinearBlock {
    let ParamPoint { c, sigma, gamma } = *params;
    let k = n as f64;
    let drift = (c + 0.5 * gamma) * k;
    let restoring = sigma - gamma * gamma + 0.5 * gamma * gamma * k - sigma * k * k;
    LinearBlock {
        n,
        entries: Matrix2::new(-drift, 0.5 * k, restoring, drift),
    }
}

/// Closed-form `det M_n = −(c+γ/2)²n² + (n/4)(2σn² − γ²n + 2(γ²−σ))`.
pub fn det_block(n: usize, params: &ParamPoint) -> f64 {
    let ParamPoint { c, sigma, gamma } = *params;
    let k = n as f64;
    let g2 = gamma * gamma;
    -(c + 0.5 * gamma).powi(2) * k * k + 0.25 * k * (2.0 * sigma * k * k - g2 * k + 2.0 * (g2 - sigma))
}

/// Modewise action of the linearized operator.
pub fn apply_linear(params: &ParamPoint, state: &SheetState) -> (OddSeries, EvenSeries) {
    let m = state.m();
    let n = state.modes();
    let mut r1 = vec![0.0; n];
    let mut r2 = vec![0.0; n];
    for j in 0..n {
        let (x, y) = block((j + 1) * m, params).apply(state.eta().coeffs()[j], state.psi().coeffs()[j]);
        r1[j] = x;
        r2[j] = y;
    }
    (
        OddSeries::new(m, r1).expect("state coefficients are finite"),
        EvenSeries::new(m, r2).expect("state coefficients are finite"),
    )
}

/// Block-diagonal matrix of the linearization on `n` modes, in the packed
/// ordering of [`SheetState::to_coefficients`].
pub fn assembled_jacobian(params: &ParamPoint, m: usize, n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let b = block((i + 1) * m, params).entries;
        j[(i, i)] = b[(0, 0)];
        j[(i, n + i)] = b[(0, 1)];
        j[(n + i, i)] = b[(1, 0)];
        j[(n + i, n + i)] = b[(1, 1)];
    }
    j
}

/// `∂_p` of [`assembled_jacobian`].
pub fn assembled_parameter_derivative(kind: BifurcationKind, params: &ParamPoint, m: usize, n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let b = kind.block_derivative((i + 1) * m, params);
        j[(i, i)] = b[(0, 0)];
        j[(i, n + i)] = b[(0, 1)];
        j[(n + i, i)] = b[(1, 0)];
        j[(n + i, n + i)] = b[(1, 1)];
    }
    j
}

/// Singular values of [`assembled_jacobian`], ascending.
pub fn singular_values(params: &ParamPoint, m: usize, n: usize) -> Vec<f64> {
    let mut sv: Vec<f64> = assembled_jacobian(params, m, n)
        .singular_values()
        .iter()
        .copied()
        .collect();
    sv.sort_by(f64::total_cmp);
    sv
}

/// Membership of `(m, σ, γ)` in the sets where the speed thresholds are real.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Admissibility {
    pub in_s1: bool,
    pub in_s2: bool,
    pub m_minus: Option<f64>,
    pub m_plus: Option<f64>,
}

impl Admissibility {
    pub fn admissible(&self) -> bool {
        self.in_s1 || self.in_s2
    }
}

pub fn admissibility(m: usize, sigma: f64, gamma: f64) -> Result<Admissibility> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let g2 = gamma * gamma;
    let root3 = 3f64.sqrt();
    let in_s1 = 4.0 * sigma * (2.0 - root3) < g2 && g2 < 4.0 * sigma * (2.0 + root3);
    if in_s1 {
        return Ok(Admissibility {
            in_s1,
            in_s2: false,
            m_minus: None,
            m_plus: None,
        });
    }
    let disc = ((g2 - 8.0 * sigma).powi(2) - 48.0 * sigma * sigma).max(0.0).sqrt();
    let m_minus = (g2 - disc) / (4.0 * sigma);
    let m_plus = (g2 + disc) / (4.0 * sigma);
    let n = m as f64;
    Ok(Admissibility {
        in_s1,
        in_s2: m >= 1 && (n < m_minus || n > m_plus),
        m_minus: Some(m_minus),
        m_plus: Some(m_plus),
    })
}

fn speed_radicand(m: usize, sigma: f64, gamma: f64) -> f64 {
    let n = m as f64;
    let g2 = gamma * gamma;
    2.0 * sigma * n - g2 + 2.0 * (g2 - sigma) / n
}

/// `c_m^± = −γ/2 ± ½√(2σm − γ² + 2(γ²−σ)/m)`; `None` when the root is not real.
pub fn threshold_c(m: usize, sigma: f64, gamma: f64, sign: Sign) -> Result<Option<f64>> {
    if m == 0 || !(sigma > 0.0) {
        return Err(Error::InvalidArgument("threshold_c needs m >= 1 and sigma > 0".into()));
    }
    let rad = speed_radicand(m, sigma, gamma);
    if rad < 0.0 {
        return Ok(None);
    }
    Ok(Some(-0.5 * gamma + sign.factor() * 0.5 * rad.sqrt()))
}

fn tension_coefficients(c: f64, gamma: f64) -> (f64, f64) {
    let alpha = (2.0 * c + gamma).powi(2) + gamma * gamma;
    let beta = 2.0 * gamma * gamma;
    (alpha, beta)
}

/// Both closed forms of the tension threshold:
/// `(αm − β)/(2(m²−1))` and `(m(2c+γ)² + (m−2)γ²)/(2(m²−1))`.
pub fn threshold_sigma_forms(m: usize, c: f64, gamma: f64) -> Result<(f64, f64)> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("tension threshold needs m >= 2, got {m}")));
    }
    let n = m as f64;
    let (alpha, beta) = tension_coefficients(c, gamma);
    let denom = 2.0 * (n * n - 1.0);
    let first = (alpha * n - beta) / denom;
    let second = (n * (2.0 * c + gamma).powi(2) + (n - 2.0) * gamma * gamma) / denom;
    Ok((first, second))
}

/// `σ_m(c, γ)`; `None` when `m ≤ N(c,γ) = 2γ²/((2c+γ)²+γ²)`, where the
/// threshold would not be positive.
pub fn threshold_sigma(m: usize, c: f64, gamma: f64) -> Result<Option<f64>> {
    let (value, _) = threshold_sigma_forms(m, c, gamma)?;
    let (alpha, beta) = tension_coefficients(c, gamma);
    if alpha == 0.0 || m as f64 <= beta / alpha || value <= 0.0 {
        return Ok(None);
    }
    Ok(Some(value))
}

/// `γ_m^± = ±√(σ(m+1))`.
pub fn threshold_gamma(m: usize, sigma: f64, sign: Sign) -> Result<f64> {
    if m < 2 || !(sigma > 0.0) {
        return Err(Error::InvalidArgument("threshold_gamma needs m >= 2 and sigma > 0".into()));
    }
    Ok(sign.factor() * (sigma * (m as f64 + 1.0)).sqrt())
}

/// Outcome of the test that no other multiple `k·m` shares the threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionCheck {
    pub ok: bool,
    /// The second root `k₂` of the collision equation, in units of `m`.
    pub offending_k: f64,
    /// Distance from `k₂` to the nearest positive integer.
    pub distance: f64,
    /// Set when `ok` holds but `distance` is below [`COLLISION_WARNING`].
    pub near_collision: bool,
}

impl CollisionCheck {
    fn from_root(k: f64) -> Self {
        let nearest = k.round().max(1.0);
        let distance = (k - nearest).abs();
        let ok = distance > COLLISION_TOLERANCE;
        Self {
            ok,
            offending_k: k,
            distance,
            near_collision: ok && distance < COLLISION_WARNING,
        }
    }
}

/// Second root of the collision equation for `kind` at foldness `m`.
///
/// For the speed `k₂ = (γ²−σ)/(σm²)`. For the tension
/// `k₂ = (βm − α)/(m(αm − β))` with `α = (2c+γ)² + γ²`, `β = 2γ²`.
/// Vorticity thresholds increase strictly with `m`, so the only other root is
/// the wavenumber one, `k = 1/m`.
pub fn collision_check(kind: BifurcationKind, m: usize, params: &ParamPoint) -> CollisionCheck {
    let n = m as f64;
    let ParamPoint { c, sigma, gamma } = *params;
    match kind {
        BifurcationKind::Speed => CollisionCheck::from_root((gamma * gamma - sigma) / (sigma * n * n)),
        BifurcationKind::Tension => {
            let (alpha, beta) = tension_coefficients(c, gamma);
            CollisionCheck::from_root((beta * n - alpha) / (n * (alpha * n - beta)))
        }
        BifurcationKind::Vorticity => {
            let mut check = CollisionCheck::from_root(1.0 / n);
            check.ok = true;
            check.near_collision = false;
            check
        }
    }
}

/// Parameters fixed along a bifurcation from the circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bifurcation {
    /// Speed crosses `c_m^±(σ, γ)`.
    Speed { m: usize, sigma: f64, gamma: f64, sign: Sign },
    /// Tension crosses `σ_m(c, γ)`.
    Tension { m: usize, c: f64, gamma: f64 },
    /// Vorticity crosses `γ_m^±(σ)` at zero speed.
    Vorticity { m: usize, sigma: f64, sign: Sign },
}

/// A located bifurcation point with its kernel data.
#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationPoint {
    pub kind: BifurcationKind,
    pub m: usize,
    pub sign: Option<Sign>,
    pub params: ParamPoint,
    /// `(a, b)` with `x₀ = (a cos(mx), b sin(mx))`.
    pub kernel: (f64, f64),
    /// `(a, b)` with `y₀ = (a sin(mx), b cos(mx))`.
    pub cokernel: (f64, f64),
    /// Closed-form `⟨∂_p ℒ x₀, y₀⟩`.
    pub pairing: f64,
    pub collision: CollisionCheck,
    pub admissible: bool,
    pub reason: String,
}

impl Bifurcation {
    pub fn kind(&self) -> BifurcationKind {
        match self {
            Self::Speed { .. } => BifurcationKind::Speed,
            Self::Tension { .. } => BifurcationKind::Tension,
            Self::Vorticity { .. } => BifurcationKind::Vorticity,
        }
    }

    pub fn m(&self) -> usize {
        match *self {
            Self::Speed { m, .. } | Self::Tension { m, .. } | Self::Vorticity { m, .. } => m,
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match *self {
            Self::Speed { sign, .. } | Self::Vorticity { sign, .. } => Some(sign),
            Self::Tension { .. } => None,
        }
    }

    /// Locates the threshold and evaluates kernel, cokernel and pairing.
    ///
    /// Fails with [`Error::Inadmissible`] only when no real threshold exists;
    /// a point that exists but violates the transversality or collision
    /// conditions is returned with `admissible == false`.
    pub fn locate(&self) -> Result<BifurcationPoint> {
        let m = self.m();
        if m == 0 {
            return Err(Error::InvalidArgument("foldness must be at least 1".into()));
        }
        let kind = self.kind();
        let n = m as f64;
        let mut reasons = Vec::new();
        let (params, kernel, cokernel, pairing) = match *self {
            Self::Speed { sigma, gamma, sign, .. } => {
                let adm = admissibility(m, sigma, gamma)?;
                let c = threshold_c(m, sigma, gamma, sign)?.ok_or_else(|| {
                    Error::Inadmissible(format!("speed threshold not real for m={m}, sigma={sigma}, gamma={gamma}"))
                })?;
                if !adm.admissible() {
                    reasons.push(format!("(m, sigma, gamma) = ({m}, {sigma}, {gamma}) lies outside S1 and S2"));
                }
                let r = sign.factor() * speed_radicand(m, sigma, gamma).max(0.0).sqrt();
                (ParamPoint::new(c, sigma, gamma)?, (1.0, r), (-r, 1.0), 2.0 * n * r)
            }
            Self::Tension { c, gamma, .. } => {
                let sigma = threshold_sigma(m, c, gamma)?.ok_or_else(|| {
                    Error::Inadmissible(format!("tension threshold not positive for m={m}, c={c}, gamma={gamma}"))
                })?;
                let q = 2.0 * c + gamma;
                (ParamPoint::new(c, sigma, gamma)?, (1.0, q), (-q, 1.0), 1.0 - n * n)
            }
            Self::Vorticity { sigma, sign, .. } => {
                if m < 2 {
                    return Err(Error::Inadmissible("vorticity bifurcation needs m >= 2".into()));
                }
                let gamma = threshold_gamma(m, sigma, sign)?;
                (ParamPoint::new(0.0, sigma, gamma)?, (1.0, gamma), (-gamma, 1.0), 2.0 * gamma * (n - 1.0))
            }
        };
        let collision = collision_check(kind, m, &params);
        if !collision.ok {
            reasons.push(format!(
                "spectral collision: k2 = {} is a positive integer",
                collision.offending_k
            ));
        }
        if pairing.abs() <= 1e-12 {
            reasons.push("transversality pairing vanishes".into());
        }
        let admissible = reasons.is_empty();
        let reason = if admissible {
            if collision.near_collision {
                format!("admissible (k2 = {} within {COLLISION_WARNING:e} of an integer)", collision.offending_k)
            } else {
                "admissible".to_string()
            }
        } else {
            reasons.join("; ")
        };
        Ok(BifurcationPoint {
            kind,
            m,
            sign: self.sign(),
            params,
            kernel,
            cokernel,
            pairing,
            collision,
            admissible,
            reason,
        })
    }
}

impl BifurcationPoint {
    /// Bifurcation parameter value at the threshold.
    pub fn value(&self) -> f64 {
        self.kind.value(&self.params)
    }

    pub fn block(&self) -> LinearBlock {
        block(self.m, &self.params)
    }

    /// `x₀` as a state with `n` modes.
    pub fn kernel_state(&self, n: usize) -> SheetState {
        let mut packed = vec![0.0; 2 * n];
        packed[0] = self.kernel.0;
        packed[n] = self.kernel.1;
        SheetState::from_coefficients(self.m, &packed).expect("packed length is even")
    }

    /// `y₀` packed as `[r1_1..r1_N, r2_1..r2_N]`.
    pub fn cokernel_vector(&self, n: usize) -> Vec<f64> {
        let mut packed = vec![0.0; 2 * n];
        packed[0] = self.cokernel.0;
        packed[n] = self.cokernel.1;
        packed
    }

    /// Checks `M_m x₀ = 0` and `M_mᵀ y₀ = 0` and returns `(x₀, y₀, pairing)`.
    pub fn kernel_vectors(&self) -> Result<((f64, f64), (f64, f64), f64)> {
        if !self.admissible {
            return Err(Error::Inadmissible(self.reason.clone()));
        }
        let b = self.block().entries;
        let x = Vector2::new(self.kernel.0, self.kernel.1);
        let y = Vector2::new(self.cokernel.0, self.cokernel.1);
        let scale = b.norm().max(1.0) * x.norm().max(y.norm());
        let kernel_defect = (b * x).norm() / scale;
        let cokernel_defect = (b.transpose() * y).norm() / scale;
        if kernel_defect > 1e-12 || cokernel_defect > 1e-12 {
            return Err(Error::Singular(format!(
                "kernel defect {kernel_defect:.3e}, cokernel defect {cokernel_defect:.3e}"
            )));
        }
        Ok((self.kernel, self.cokernel, self.pairing))
    }

    /// `⟨∂_p M_m x₀, y₀⟩` by a centered difference of the analytic block in
    /// the bifurcation parameter. The block is quadratic in each parameter, so
    /// the difference is exact up to rounding.
    pub fn pairing_fd(&self, h: f64) -> Result<f64> {
        let p = self.value();
        let plus = block(self.m, &self.kind.with_value(&self.params, p + h)?).entries;
        let minus = block(self.m, &self.kind.with_value(&self.params, p - h)?).entries;
        let d = (plus - minus) / (2.0 * h);
        let x = Vector2::new(self.kernel.0, self.kernel.1);
        let y = Vector2::new(self.cokernel.0, self.cokernel.1);
        Ok((d * x).dot(&y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: f64, s: f64, g: f64) -> ParamPoint {
        ParamPoint::new(c, s, g).unwrap()
    }

    #[test]
    fn block_examples() {
        let b = block(2, &p(0.0, 1.0, 0.0));
        assert_eq!(b.entries, Matrix2::new(0.0, 1.0, -3.0, 0.0));
        assert_eq!(b.trace(), 0.0);
        assert!((det_block(3, &p(0.0, 1.0, 0.0)) - 12.0).abs() < 1e-14);
        let c = 0.75f64.sqrt();
        assert!(det_block(2, &p(c, 1.0, 0.0)).abs() < 1e-14);
        let q = p(0.4, 1.3, -0.9);
        assert!((det_block(1, &q) + 0.4 * (0.4 - 0.9)).abs() < 1e-15);
    }

    #[test]
    fn admissibility_examples() {
        let a = admissibility(2, 1.0, 0.0).unwrap();
        assert!(a.in_s2 && !a.in_s1);
        assert!((a.m_minus.unwrap() + 1.0).abs() < 1e-15);
        assert!((a.m_plus.unwrap() - 1.0).abs() < 1e-15);
        assert!(admissibility(2, 1.0, 8f64.sqrt()).unwrap().in_s1);
        assert!(!admissibility(1, 1.0, 0.0).unwrap().admissible());
    }

    #[test]
    fn thresholds() {
        let root3 = 3f64.sqrt();
        assert!((threshold_c(2, 1.0, 0.0, Sign::Plus).unwrap().unwrap() - root3 / 2.0).abs() < 1e-15);
        assert!((threshold_c(2, 1.0, 0.0, Sign::Minus).unwrap().unwrap() + root3 / 2.0).abs() < 1e-15);
        assert_eq!(threshold_c(1, 0.01, 0.1, Sign::Plus).unwrap().map(|_| ()), Some(()));
        assert_eq!(threshold_c(10, 0.01, 3.0, Sign::Plus).unwrap(), None);
        assert!((threshold_sigma(2, 1.0, 1.0).unwrap().unwrap() - 3.0).abs() < 1e-14);
        assert!((threshold_sigma(2, 1.0, 0.0).unwrap().unwrap() - 4.0 / 3.0).abs() < 1e-14);
        assert!(threshold_sigma(1, 0.0, 1.0).is_err());
        assert_eq!(threshold_sigma(2, -0.5, 1.0).unwrap(), None);
        assert!((threshold_gamma(2, 1.0, Sign::Plus).unwrap() - root3).abs() < 1e-15);
        assert!((threshold_gamma(3, 2.0, Sign::Minus).unwrap() + 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn collisions() {
        let s = collision_check(BifurcationKind::Speed, 2, &p(0.0, 1.0, 0.0));
        assert!(s.ok && (s.offending_k + 0.25).abs() < 1e-15);
        let t = collision_check(BifurcationKind::Tension, 2, &p(1.0, 3.0, 1.0));
        assert!(t.ok && (t.offending_k + 1.0 / 6.0).abs() < 1e-15);
        // γ² = σ(1 + 2m²) puts k₂ = 2 for the speed.
        let g = (1.0f64 + 2.0 * 4.0).sqrt();
        assert!(!collision_check(BifurcationKind::Speed, 2, &p(0.0, 1.0, g)).ok);
    }

    #[test]
    fn kernel_examples() {
        let root3 = 3f64.sqrt();
        let speed = Bifurcation::Speed { m: 2, sigma: 1.0, gamma: 0.0, sign: Sign::Plus }.locate().unwrap();
        let (x, y, pairing) = speed.kernel_vectors().unwrap();
        assert!((x.1 - root3).abs() < 1e-15 && (y.0 + root3).abs() < 1e-15);
        assert!((pairing - 4.0 * root3).abs() < 1e-14);
        let tension = Bifurcation::Tension { m: 2, c: 1.0, gamma: 1.0 }.locate().unwrap();
        assert_eq!(tension.kernel, (1.0, 3.0));
        assert_eq!(tension.pairing, -3.0);
        let vort = Bifurcation::Vorticity { m: 2, sigma: 1.0, sign: Sign::Plus }.locate().unwrap();
        assert!((vort.pairing - 2.0 * root3).abs() < 1e-14);
        for point in [speed, tension, vort] {
            let fd = point.pairing_fd(1e-3).unwrap();
            assert!((fd - point.pairing).abs() <= 1e-8 * point.pairing.abs(), "{point:?} {fd}");
        }
    }
}
