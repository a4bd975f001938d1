//! Weakly zero-divisor graphs `WΓ(Z_n)` and their Laplacian spectra.
//!
//! - [`numtheory`]: factorization, totient, proper divisors, primes dividing `n` once.
//! - [`graphcore`]: `WΓ(Z_n)` from the definition and from its divisor-class
//!   structure, the zero-divisor graph `Γ(Z_n)`, generalized joins, export.
//! - [`spectra`]: closed-form spectra, both the generic generalized-join
//!   formula and its specialization to `WΓ(Z_n)`.
//! - [`oracle`]: explicit Laplacians, a Jacobi eigensolver, exact
//!   characteristic polynomials, and per-`n` verification reports.
//! - [`joinfile`]: the JSON input format for join computations.
//!
//! ```
//! use wzd_core::spectra::wzd_spectrum_closed_form;
//!
//! let s = wzd_spectrum_closed_form(18).unwrap();
//! assert_eq!(s.entries().collect::<Vec<_>>(), vec![(0, 1), (5, 5), (11, 5)]);
//! ```

pub mod error;
pub mod graphcore;
pub mod joinfile;
pub mod numtheory;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use graphcore::{ClassKind, DivisorClassPartition, ExportFormat, Graph};
pub use joinfile::JoinInput;
pub use oracle::{VerificationReport, VerifyOptions};
pub use spectra::{ExactSpectrum, FloatSpectrum, SpectrumMultiset, WeightedHostGraph};
