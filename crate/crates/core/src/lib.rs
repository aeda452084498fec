//! Rotating vortex sheets with surface tension: spectral toolkit, contour
//! integrals, the steady map, its linearization about the circle, branch
//! continuation and time evolution.

pub mod continuation;
pub mod contour;
pub mod error;
pub mod evolution;
pub mod fourier;
pub mod functional;
pub mod linear;

pub use contour::{Interface, SheetState};
pub use error::{Error, Result};
pub use fourier::{AliasPolicy, AliasReport, EvenSeries, FullSeries, Grid, OddSeries, Parity};
pub use functional::{ParamPoint, Residual, SteadyFunctional};
pub use linear::{Bifurcation, BifurcationKind, BifurcationPoint, Sign};
pub use continuation::{trace_branch, Branch, BranchStep, BranchTracer, ContinuationOptions};
pub use evolution::{EvolutionConfig, Evolver, FlowState, Scheme};

// The book's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fourier.md")]
    mod fourier {}
    #[doc = include_str!("../../../book/src/contour.md")]
    mod contour {}
    #[doc = include_str!("../../../book/src/steady-map.md")]
    mod steady_map {}
    #[doc = include_str!("../../../book/src/linear-theory.md")]
    mod linear_theory {}
    #[doc = include_str!("../../../book/src/continuation.md")]
    mod continuation {}
    #[doc = include_str!("../../../book/src/evolution.md")]
    mod evolution {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
