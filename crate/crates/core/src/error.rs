use thiserror::Error;

/// Errors raised by the spectral, contour and continuation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `1 + 2 eta` is not positive somewhere, so the radius is not real.
    #[error("domain error: {0}")]
    Domain(String),

    /// Energy leaked out of the retained modes during a projection.
    #[error(
        "aliasing: leaked energy {leaked:.3e} of total {total:.3e} \
         (discarded {discarded:.3e}, wrong parity {wrong_parity:.3e}, wrong foldness {wrong_fold:.3e})"
    )]
    Alias {
        leaked: f64,
        total: f64,
        discarded: f64,
        wrong_parity: f64,
        wrong_fold: f64,
    },

    #[error("quadrature: doubled-grid defect {defect:.3e} exceeds {tolerance:.3e}")]
    Quadrature { defect: f64, tolerance: f64 },

    #[error("point at distance {distance:.3e} from the interface, minimum is {minimum:.3e}")]
    TooClose { distance: f64, minimum: f64 },

    #[error("inadmissible bifurcation point: {0}")]
    Inadmissible(String),

    #[error("newton iteration diverged at s = {amplitude:.6e}: residual {residual:.3e} after {iterations} iterations")]
    NewtonDivergence {
        amplitude: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("predictor residual {residual:.3e} at s = {amplitude:.3e} exceeds safeguard {limit:.3e}")]
    StepTooLarge {
        amplitude: f64,
        residual: f64,
        limit: f64,
    },

    #[error("tail energy ratio {ratio:.3e} exceeds {limit:.3e}")]
    Truncation { ratio: f64, limit: f64 },

    #[error("blow-up at t = {time:.6e}: coefficient magnitude {magnitude:.3e}")]
    Blowup { time: f64, magnitude: f64 },

    #[error("unstable time step: dt * max frequency = {product:.3e} exceeds {bound:.3e}")]
    UnstableStep { product: f64, bound: f64 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
