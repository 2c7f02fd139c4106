//! Exact-arithmetic wavelet sets on the real line.
//!
//! Frequencies are measured in units of `π`, so the Littlewood–Paley set is
//! `[-2,-1) ∪ [1,2)`. Every quantity that can be exact is a [`Rational`].

pub mod cli;
pub mod error;
pub mod frequency;
pub mod gallery;
pub mod homotopy;
pub mod interval;
pub mod rational;
pub mod scb;
pub mod unit_map;

pub use error::{Error, Result};
pub use frequency::{littlewood_paley, metric_d, verify_wavelet_set, FreqSet, TilingCertificate};
pub use interval::{Interval, IntervalSet};
pub use rational::Rational;
pub use unit_map::{
    agreement_set, disagreement_set, induced_isomorphism, wavelet_set_from_isomorphism, AffinePiece,
    Classification, PartialMap, PiecewiseMap,
};
