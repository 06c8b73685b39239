//! Aperiodic ambiguity functions of unimodular sequence sets over delay-Doppler
//! low-ambiguity zones (LAZ), the weighted-Frobenius family of lower bounds on
//! their peak sidelobe level, and Chu sequence sets that approach those bounds.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs; IO, FFT-backed Doppler rows, parallel sweeps and the
//! command line live in the companion `aflaz` crate.
//!
//! Module map:
//!
//! - [`sequence`]: unimodular [`Sequence`], [`SequenceSet`] and the [`LazSpec`] rectangle.
//! - [`af`]: discrete aperiodic AF, |AF|² surfaces over a LAZ and the θ statistics.
//! - [`bounds`]: weight vectors, quadratic forms and every closed-form lower bound.
//! - [`chu`]: Chu sequences, their closed-form AAF and the achievability results.
//! - [`oracle`]: brute-force checks (explicit U matrix, Frobenius identities,
//!   exhaustive small-alphabet search).

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod af;
pub mod bounds;
pub mod chu;
pub mod error;
pub mod oracle;
pub mod sequence;

pub use num_complex::Complex64;

pub use af::{
    af_surface, af_surface_with, aperiodic_af, theta_report, theta_report_with, AfSurface,
    DirectDoppler, DopplerEngine, ThetaReport, Witness,
};
pub use error::{Error, Result};
pub use sequence::{LazSpec, Sequence, SequenceSet};
