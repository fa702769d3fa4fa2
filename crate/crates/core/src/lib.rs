//! Obstructions to the frame property of Gabor systems generated by cardinal
//! B-splines.
//!
//! The crate enumerates the point set `P = {(1/μ, μ - k/r)}` and the
//! hyperbolic segments around each point, checks their geometry against the
//! Janssen tie in exact rational arithmetic, and produces machine-checkable
//! non-frame certificates: an explicit torus point `(x₀, 0)` together with
//! `q - p + 1` independent kernel vectors of the Zibulski–Zeevi matrix there.
//!
//! Modules, bottom-up:
//!
//! * [`rational`], [`circle`]: exact arithmetic and closed arcs of `R/Z`.
//! * [`bspline`]: `N_n` as exact piecewise polynomials, periodizations.
//! * [`zak`]: Zak transform, Zibulski–Zeevi matrices, singular values.
//! * [`sets`]: the obstruction sets, tie tiles and gap bounds.
//! * [`certify`]: witness points, kernel vectors and certificate records.
//! * [`output`], [`verify`]: CSV/SVG emitters and the property-suite runner.
//! * [`cli`]: argument parsing and commands behind the `gabor-obs` binary.

pub mod bspline;
pub mod certify;
pub mod cli;
pub mod circle;
pub mod error;
pub mod output;
pub mod rational;
pub mod sets;
pub mod verify;
pub mod zak;

pub use bspline::{build_bspline, PiecewisePolynomial};
pub use certify::{build_certificate, certify_nonframe, Certificate, CertifyOutcome};
pub use circle::CircleIntervalSet;
pub use error::{Error, Result};
pub use rational::{parse_rational, Rational};
pub use sets::{enum_p, segment_h, ObstructionParams};
pub use zak::{zz_matrix, LatticeParams, ZZMatrix, ZZPoint};
