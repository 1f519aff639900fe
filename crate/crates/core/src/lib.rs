//! Generalized Dirichlet polynomials over Beurling prime systems, composition
//! symbols `ψ(s) = c0·s + φ(s)`, Nevanlinna-type counting functions, polytorus
//! averages and numerical checks of the integral identities linking them.
//!
//! ```
//! use dhl::{Complex64, Frequency, GDSeries, GeneratorSystem};
//!
//! let g = GeneratorSystem::new(2, &[std::f64::consts::PI]).unwrap();
//! let f = GDSeries::from_terms(&g, [
//!     (Frequency::one(), Complex64::new(1.0, 0.0)),
//!     (Frequency::generator(0), Complex64::new(1.0, 0.0)),
//! ]).unwrap();
//! assert!((f.evaluate(Complex64::new(1.0, 0.0)).re - 1.5).abs() < 1e-15);
//! assert_eq!(f.norm_sq(), 2.0);
//! ```

pub mod cli;
pub mod compose;
pub mod counting;
pub mod diagnostics;
pub mod error;
pub mod generators;
pub mod io;
pub mod polytorus;
pub mod quadrature;
pub mod series;
pub mod symbol;
pub mod verify;

pub use num_complex::Complex64;

pub use compose::{compose, compose_formal, ComposeOptions, Composition};
pub use counting::{
    count_roots_rectangle, counting_function, counting_function_truncated, locate_preimages, CountingReport,
    Preimage, SearchRectangle,
};
pub use error::{Error, Result};
pub use generators::GeneratorSystem;
pub use polytorus::{
    bohr_lift, ergodic_time_average, mc_average_counting, sample_character, BohrLift, Character, MCEstimate,
};
pub use series::{Frequency, GDSeries};
pub use symbol::{range_infimum, validate_symbol, Grid, Membership, RangeReport, Symbol};
