//! Exact construction and verification of multiple discrete Appell
//! polynomial families, with multiple Charlier polynomials as the central
//! example.

pub mod appell;
pub mod charlier;
pub mod cli;
pub mod error;
pub mod family;
pub mod index;
pub mod io;
pub mod ortho;
pub mod poly;
pub mod rational;
pub mod sample;
pub mod series;

pub use appell::{AppellFamily, AppellSeed};
pub use charlier::{charlier_explicit, charlier_family, charlier_genfunc, CharlierParams, Witness};
pub use error::{Error, Result};
pub use family::Family;
pub use index::MultiIndex;
pub use poly::{ff_basis, Bivariate, FFPoly, Step, DEFAULT_DEGREE_CAP};
pub use rational::Rational;
pub use series::MultiSeries;
