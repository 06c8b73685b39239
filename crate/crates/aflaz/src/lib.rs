//! Std companion to `aflaz-core`: sequence and surface CSV formats, an FFT
//! Doppler engine, rayon-parallel scans, the randomized verification suite,
//! and the experiment reproductions driven by the `aflaz` binary.

pub mod error;
pub mod fft;
pub mod io;
pub mod par;
pub mod report;
pub mod repro;
pub mod verify;

pub use error::{CliError, Result};
pub use fft::FftDoppler;
